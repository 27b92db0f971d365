//! Decision procedures built on top of the embedding and rational-form
//! machinery: existence of isotropic vectors, maximal even overlattices,
//! hyperbolic-plane splitting, embeddings into `U^3` and `U^2`, the
//! Kummer-dominance and Shioda–Inose criteria, similarity scales, the
//! degree-two quotient construction inside `Lambda0`, the fixed sandwich
//! embedding of a sublattice of `U^3` into `Lambda0`, and the 2-length
//! obstruction for doubled quotients.
//!
//! Every positive verdict carries a certificate that can be re-checked
//! independently of the search that produced it; `unknown` verdicts arise
//! only from bounded searches and always name the exhausted bound.  All
//! searches enumerate candidates in a fixed lexicographic order, so results
//! are deterministic across runs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::embedding::{embed, module_basis, SublatticeEmbedding};
use crate::error::LatticeError;
use crate::forms::{self, ScaleCertificate};
use crate::lattice::{FiniteQuadraticModule, Lattice};
use crate::mat::{QMat, ZMat};
use crate::num_util;

type Int = BigInt;
type Rat = BigRational;

/// Outcome of a decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No => write!(f, "no"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Evidence attached to a positive verdict.  Each variant can be re-checked
/// by the matching `check_*_certificate` function without re-running the
/// search that found it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// An explicit isometric embedding witnessing a `yes`.
    Embedding(SublatticeEmbedding),
    /// A primitive vector of norm zero.
    IsotropicVector(Vec<Int>),
    /// A squarefree scale making two forms rationally equivalent.
    Scale(ScaleCertificate),
    /// Rank and 2-length data witnessing the doubled-quotient obstruction.
    Obstruction { rank: usize, two_length: usize },
}

/// A verdict together with a short machine-readable reason, an optional
/// certificate, and any warnings about how the input was interpreted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub reason: String,
    pub certificate: Option<Certificate>,
    pub warnings: Vec<String>,
}

impl Decision {
    pub fn yes(reason: impl Into<String>, certificate: Certificate) -> Decision {
        Decision {
            verdict: Verdict::Yes,
            reason: reason.into(),
            certificate: Some(certificate),
            warnings: Vec::new(),
        }
    }

    pub fn no(reason: impl Into<String>) -> Decision {
        Decision { verdict: Verdict::No, reason: reason.into(), certificate: None, warnings: Vec::new() }
    }

    pub fn unknown(reason: impl Into<String>) -> Decision {
        Decision { verdict: Verdict::Unknown, reason: reason.into(), certificate: None, warnings: Vec::new() }
    }
}

/// Budget for bounded searches.  The height bound limits the sup-norm of
/// coordinate vectors (and matrix entries) that a search will consider.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    height_bound: u32,
}

impl SearchBudget {
    /// A budget with the given positive height bound.
    pub fn new(height_bound: u32) -> Result<SearchBudget, LatticeError> {
        if height_bound == 0 {
            return Err(LatticeError::ZeroArgument("height_bound".into()));
        }
        Ok(SearchBudget { height_bound })
    }

    pub fn height_bound(&self) -> u32 {
        self.height_bound
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { height_bound: 10 }
    }
}

/// Result of a bounded search for an isotropic vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotropicSearch {
    /// A primitive norm-zero vector, the lexicographically first one on the
    /// smallest sup-norm shell that contains any.
    Found(Vec<Int>),
    /// No isotropic vector exists at any height; the tag says whether the
    /// signature or a local obstruction proves it.
    ProvablyNone(&'static str),
    /// Isotropic vectors exist but none within the budget.
    Exhausted,
}

// ---------------------------------------------------------------------------
// Isotropic vector search
// ---------------------------------------------------------------------------

/// The Gram matrix as an `i64` table when that is safe for shell search up
/// to height 1024 (entries below 2^31 keep every norm within `i64`).
fn small_gram(l: &Lattice) -> Option<Vec<Vec<i64>>> {
    if !l.is_integral() || l.rank() > 16 {
        return None;
    }
    let limit = Int::from(1i64 << 31);
    let mut g = vec![vec![0i64; l.rank()]; l.rank()];
    for i in 0..l.rank() {
        for (j, cell) in g[i].iter_mut().enumerate() {
            let e = l.gram().row(i)[j].to_integer();
            if e.abs() > limit {
                return None;
            }
            *cell = i64::try_from(&e).ok()?;
        }
    }
    Some(g)
}

/// Advance `x` through `[-h, h]^r` in ascending lexicographic order.
/// Returns false once the odometer wraps.
fn advance_box(x: &mut [i64], h: i64) -> bool {
    for i in (0..x.len()).rev() {
        if x[i] < h {
            x[i] += 1;
            for later in x.iter_mut().skip(i + 1) {
                *later = -h;
            }
            return true;
        }
    }
    false
}

/// Candidate filter for shell search: sup-norm exactly `h`, first nonzero
/// coordinate positive (one vector per +/- pair), primitive.
fn shell_candidate(x: &[i64], h: i64) -> bool {
    let mut max = 0i64;
    let mut first_nonzero = 0i64;
    let mut g = 0i64;
    for &c in x {
        max = max.max(c.abs());
        if first_nonzero == 0 {
            first_nonzero = c;
        }
        g = num::integer::gcd(g, c);
    }
    max == h && first_nonzero > 0 && g == 1
}

fn norm_i64(g: &[Vec<i64>], x: &[i64]) -> i64 {
    let mut total = 0i64;
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        let mut row = 0i64;
        for (j, &xj) in x.iter().enumerate() {
            row += g[i][j] * xj;
        }
        total += xi * row;
    }
    total
}

fn shell_search_small(g: &[Vec<i64>], h: i64) -> Option<Vec<Int>> {
    let r = g.len();
    let mut x = vec![-h; r];
    loop {
        if shell_candidate(&x, h) && norm_i64(g, &x) == 0 {
            return Some(x.iter().map(|&c| Int::from(c)).collect());
        }
        if !advance_box(&mut x, h) {
            return None;
        }
    }
}

fn shell_search_exact(l: &Lattice, h: i64) -> Option<Vec<Int>> {
    let r = l.rank();
    let mut x = vec![-h; r];
    loop {
        if shell_candidate(&x, h) {
            let v: Vec<Rat> = x.iter().map(|&c| Rat::from(Int::from(c))).collect();
            if l.norm(&v).is_zero() {
                return Some(x.iter().map(|&c| Int::from(c)).collect());
            }
        }
        if !advance_box(&mut x, h) {
            return None;
        }
    }
}

fn shell_search(l: &Lattice, small: &Option<Vec<Vec<i64>>>, h: i64) -> Option<Vec<Int>> {
    match small {
        Some(g) if h <= 1024 => shell_search_small(g, h),
        _ => shell_search_exact(l, h),
    }
}

/// Search sup-norm shells of increasing height for a primitive isotropic
/// vector.  The rational invariants decide `ProvablyNone` up front, so
/// `Exhausted` genuinely means a vector exists beyond the budget.
pub fn find_isotropic(l: &Lattice, budget: &SearchBudget) -> IsotropicSearch {
    if !forms::is_isotropic(l) {
        let (p, q) = l.signature();
        let tag = if p == 0 || q == 0 {
            "anisotropic-by-signature"
        } else {
            "anisotropic-by-local-obstruction"
        };
        return IsotropicSearch::ProvablyNone(tag);
    }
    let small = small_gram(l);
    for h in 1..=i64::from(budget.height_bound()) {
        if let Some(v) = shell_search(l, &small, h) {
            return IsotropicSearch::Found(v);
        }
    }
    IsotropicSearch::Exhausted
}

/// Solve `a x^2 + b x + c = 0` over the integers, ascending.  The bounds in
/// the callers keep every intermediate below `2^113`, well inside `i128`.
fn quadratic_roots_i128(a: i128, b: i128, c: i128) -> Vec<i128> {
    debug_assert!(a != 0);
    let disc = b * b - 4 * a * c;
    if disc < 0 {
        return Vec::new();
    }
    let s = (disc as u128).isqrt() as i128;
    if s * s != disc {
        return Vec::new();
    }
    let mut roots = Vec::new();
    for num in [-b - s, -b + s] {
        if num % (2 * a) == 0 {
            roots.push(num / (2 * a));
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Scan prefixes `y` of sup-norm in `(lo, hi]` in lexicographic order and
/// complete each to a null vector by solving for the last coordinate.  The
/// prefix box is small even when the solved coordinate is large, which is
/// what makes this usable where plain box search is not.
fn prefix_solve_small(g: &[Vec<i64>], lo: i64, hi: i64) -> Option<Vec<Int>> {
    let r = g.len();
    let a = g[r - 1][r - 1] as i128;
    debug_assert!(a != 0, "a zero diagonal is handled before the scan");
    let mut y = vec![-hi; r - 1];
    loop {
        let sup = y.iter().map(|c| c.abs()).max().unwrap_or(0);
        let first_nonzero = y.iter().find(|&&c| c != 0).copied().unwrap_or(0);
        if sup > lo && sup <= hi && first_nonzero > 0 {
            let mut b = 0i128;
            let mut c = 0i128;
            for i in 0..r - 1 {
                if y[i] == 0 {
                    continue;
                }
                b += 2 * g[r - 1][i] as i128 * y[i] as i128;
                for j in 0..r - 1 {
                    c += g[i][j] as i128 * y[i] as i128 * y[j] as i128;
                }
            }
            if let Some(&x) = quadratic_roots_i128(a, b, c).first() {
                let mut v: Vec<Int> = y.iter().map(|&c| Int::from(c)).collect();
                v.push(Int::from(x));
                let mut d = Int::zero();
                for c in &v {
                    d = num::integer::gcd(d, c.clone());
                }
                return Some(v.iter().map(|c| c / &d).collect());
            }
        }
        if !advance_box(&mut y, hi) {
            return None;
        }
    }
}

/// Exact-arithmetic twin of `prefix_solve_small` for grams too large for the
/// `i128` bound analysis.
fn prefix_solve_exact(g: &[Vec<Int>], lo: i64, hi: i64) -> Option<Vec<Int>> {
    let r = g.len();
    let a = &g[r - 1][r - 1];
    debug_assert!(!a.is_zero(), "a zero diagonal is handled before the scan");
    let two_a = Int::from(2) * a;
    let mut y = vec![-hi; r - 1];
    loop {
        let sup = y.iter().map(|c| c.abs()).max().unwrap_or(0);
        let first_nonzero = y.iter().find(|&&c| c != 0).copied().unwrap_or(0);
        if sup > lo && sup <= hi && first_nonzero > 0 {
            let mut b = Int::zero();
            let mut c = Int::zero();
            for i in 0..r - 1 {
                if y[i] == 0 {
                    continue;
                }
                b += Int::from(2) * &g[r - 1][i] * y[i];
                for j in 0..r - 1 {
                    c += &g[i][j] * y[i] * y[j];
                }
            }
            let disc = &b * &b - Int::from(4) * a * &c;
            if !disc.is_negative() {
                let s = disc.sqrt();
                if &s * &s == disc {
                    for num in [-&b - &s, -&b + &s] {
                        if (&num % &two_a).is_zero() {
                            let mut v: Vec<Int> = y.iter().map(|&c| Int::from(c)).collect();
                            v.push(num / &two_a);
                            let mut d = Int::zero();
                            for c in &v {
                                d = num::integer::gcd(d, c.clone());
                            }
                            return Some(v.iter().map(|c| c / &d).collect());
                        }
                    }
                }
            }
        }
        if !advance_box(&mut y, hi) {
            return None;
        }
    }
}

/// Unbounded variant for callers that have already proved isotropy.  A basis
/// vector with a zero diagonal is returned directly; otherwise prefixes of
/// doubling size are completed by the quadratic formula.  The safety cap only
/// guards against a broken invariant upstream.
fn isotropic_vector_certain(l: &Lattice) -> Vec<Int> {
    debug_assert!(forms::is_isotropic(l));
    let r = l.rank();
    for i in 0..r {
        if l.gram().row(i)[i].is_zero() {
            let mut v = vec![Int::zero(); r];
            v[i] = Int::one();
            return v;
        }
    }
    // rank 1 without a zero diagonal is anisotropic, contradicting the caller
    debug_assert!(r >= 2);
    let small = small_gram(l);
    let exact: Option<Vec<Vec<Int>>> = if small.is_none() {
        // clearing denominators does not move the null vectors
        let mut rows = Vec::with_capacity(r);
        let mut den = Int::one();
        for i in 0..r {
            for e in l.gram().row(i) {
                den = num::integer::lcm(den, e.denom().clone());
            }
        }
        for i in 0..r {
            rows.push(
                l.gram().row(i).iter().map(|e| (e * Rat::from(den.clone())).to_integer()).collect(),
            );
        }
        Some(rows)
    } else {
        None
    };
    let mut lo = 0i64;
    let mut hi = 1i64;
    while hi <= (1 << 40) {
        let hit = match (&small, &exact) {
            (Some(g), _) if hi <= (1 << 20) => prefix_solve_small(g, lo, hi),
            (Some(g), _) => {
                let big: Vec<Vec<Int>> =
                    g.iter().map(|row| row.iter().map(|&e| Int::from(e)).collect()).collect();
                prefix_solve_exact(&big, lo, hi)
            }
            (None, Some(g)) => prefix_solve_exact(g, lo, hi),
            (None, None) => unreachable!(),
        };
        if let Some(v) = hit {
            debug_assert!(l.norm(&v.iter().map(|c| Rat::from(c.clone())).collect::<Vec<_>>()).is_zero());
            return v;
        }
        lo = hi;
        hi *= 2;
    }
    unreachable!("an isotropic lattice of this size has a null vector far below the safety cap")
}

// ---------------------------------------------------------------------------
// Maximal even overlattice
// ---------------------------------------------------------------------------

/// Does the representative `sum c_i g_i` of a discriminant-group element
/// have even integral norm?  `pair` is the Gram matrix of the generators.
fn tuple_norm_is_even(c: &[Int], pair: &QMat) -> bool {
    let mut total = Rat::zero();
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            total += Rat::from(ci * cj) * &pair.row(i)[j];
        }
    }
    total.is_integer() && (total.to_integer() % Int::from(2)).is_zero()
}

/// Cheap existence test: a nonzero isotropic element of the discriminant
/// group exists iff one of prime order exists, and an order-`p` element can
/// only exist when `p^2` divides the group order.  The `p`-torsion subgroup
/// is tiny compared to the full group, so this avoids a full scan whenever
/// the lattice is already maximal.
fn prime_order_isotropic_exists(disc: &FiniteQuadraticModule, pair: &QMat) -> bool {
    let k = disc.invariant_factors.len();
    if k == 0 {
        return false;
    }
    let order: Int = disc.invariant_factors.iter().product();
    for p in num_util::prime_support(&order) {
        if !(&order % (&p * &p)).is_zero() {
            continue;
        }
        let idx: Vec<usize> = (0..k).filter(|&i| (&disc.invariant_factors[i] % &p).is_zero()).collect();
        let pi = i64::try_from(&p).expect("torsion prime fits i64");
        let mut a = vec![0i64; idx.len()];
        while advance_box(&mut a, pi - 1) {
            if a.iter().all(|&c| c < 0) {
                continue; // only the range [0, p) matters
            }
            let mut c = vec![Int::zero(); k];
            let mut nonzero = false;
            for (pos, &i) in idx.iter().enumerate() {
                if a[pos] <= 0 {
                    continue;
                }
                c[i] = Int::from(a[pos]) * (&disc.invariant_factors[i] / &p);
                nonzero = true;
            }
            if nonzero && tuple_norm_is_even(&c, pair) {
                return true;
            }
        }
    }
    false
}

/// The lexicographically first nonzero tuple `(c_1..c_k)` with
/// `0 <= c_i < d_i` whose representative has even norm, returned in the
/// coordinates of the current lattice.
fn first_even_isotropic(disc: &FiniteQuadraticModule, current: &Lattice) -> Option<Vec<Rat>> {
    let k = disc.invariant_factors.len();
    if k == 0 {
        return None;
    }
    let pair = disc.generators.gram_with(current.gram());
    if !prime_order_isotropic_exists(disc, &pair) {
        return None;
    }
    let mut c = vec![Int::zero(); k];
    loop {
        // advance the odometer; the all-zero start is skipped by advancing
        // before the first test
        let mut advanced = false;
        for i in (0..k).rev() {
            c[i] += Int::one();
            if c[i] < disc.invariant_factors[i] {
                advanced = true;
                break;
            }
            c[i] = Int::zero();
        }
        if !advanced {
            unreachable!("the existence prefilter guarantees an isotropic tuple");
        }
        if tuple_norm_is_even(&c, &pair) {
            let mut combo = vec![Rat::zero(); current.rank()];
            for (i, ci) in c.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (j, slot) in combo.iter_mut().enumerate() {
                    *slot += Rat::from(ci.clone()) * &disc.generators.row(i)[j];
                }
            }
            return Some(combo);
        }
    }
}

/// Grow an even lattice to a maximal even overlattice inside its rational
/// span.  Each step adjoins the representative of the lexicographically
/// first isotropic element of the discriminant group, which divides the
/// determinant by a square; the result is independent of nothing but that
/// fixed choice, so repeated runs agree.  The returned embedding has the
/// input as ambient and the overlattice as (rational-coordinate) rows.
pub fn maximal_even_overlattice(l: &Lattice) -> Result<SublatticeEmbedding, LatticeError> {
    if !l.is_even() {
        return Err(LatticeError::NotEven);
    }
    let mut rows = QMat::identity(l.rank());
    loop {
        let current = Lattice::new(rows.gram_with(l.gram()))?;
        let disc = current.discriminant_group()?;
        let Some(new_vec) = first_even_isotropic(&disc, &current) else {
            return embed(l, rows);
        };
        let in_ambient = QMat::from_rows(vec![new_vec]).mul(&rows);
        rows = module_basis(&rows.stack(&in_ambient));
    }
}

// ---------------------------------------------------------------------------
// Hyperbolic-plane splitting
// ---------------------------------------------------------------------------

/// A split `L = U ⊕ complement` produced from a primitive isotropic vector
/// of divisor one: `isotropic` and `partner` span the hyperbolic plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicSplit {
    pub isotropic: Vec<Int>,
    pub partner: Vec<Int>,
    pub complement: SublatticeEmbedding,
}

fn rat_coords(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|c| Rat::from(c.clone())).collect()
}

/// Integral pairings of `v` with the basis of `l`.
fn basis_pairings(l: &Lattice, v: &[Int]) -> Vec<Int> {
    let row = QMat::from_rows(vec![rat_coords(v)]).mul(l.gram());
    row.row(0)
        .iter()
        .map(|x| {
            debug_assert!(x.is_integer());
            x.to_integer()
        })
        .collect()
}

/// Split a hyperbolic plane off an even lattice at a primitive isotropic
/// vector `v` whose pairings with the lattice generate all of the integers
/// (divisor one).  The partner `w` is isotropic with `(v, w) = 1`, and the
/// complement is the exact orthogonal complement of the plane.
pub fn split_hyperbolic(l: &Lattice, v: &[Int]) -> Result<HyperbolicSplit, LatticeError> {
    if !l.is_even() {
        return Err(LatticeError::NotEven);
    }
    let r = l.rank();
    if v.len() != r {
        return Err(LatticeError::DimensionMismatch(format!(
            "vector has length {} but the lattice has rank {r}",
            v.len()
        )));
    }
    if v.iter().all(|c| c.is_zero()) {
        return Err(LatticeError::ZeroArgument("isotropic vector".into()));
    }
    let content = v.iter().fold(Int::zero(), |acc, c| acc.gcd(c));
    if !content.is_one() {
        return Err(LatticeError::NotPrimitive);
    }
    if !l.norm(&rat_coords(v)).is_zero() {
        return Err(LatticeError::NotIsotropic);
    }

    let pair = basis_pairings(l, v);
    // accumulate w0 with (v, w0) = gcd of the pairings via extended gcds
    let mut div = Int::zero();
    let mut w0 = vec![Int::zero(); r];
    for (j, pj) in pair.iter().enumerate() {
        if pj.is_zero() {
            continue;
        }
        let eg = div.extended_gcd(pj);
        for c in w0.iter_mut() {
            *c *= &eg.x;
        }
        w0[j] += &eg.y;
        div = eg.gcd;
    }
    if !div.is_one() {
        return Err(LatticeError::BadDivisor(div.to_string()));
    }

    // make the partner isotropic: w = w0 - (norm(w0)/2) v keeps (v, w) = 1
    let half_norm = l.norm(&rat_coords(&w0)).to_integer() / Int::from(2);
    let w: Vec<Int> = w0.iter().zip(v.iter()).map(|(a, b)| a - &half_norm * b).collect();
    debug_assert!(l.norm(&rat_coords(&w)).is_zero());

    // the projection x - (x,w)v - (x,v)w is the identity on the complement
    // and kills the plane, so projecting the basis generates the complement
    let wpair = basis_pairings(l, &w);
    let mut proj_rows: Vec<Vec<Int>> = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = vec![Int::zero(); r];
        row[i] = Int::one();
        for j in 0..r {
            row[j] -= &wpair[i] * &v[j] + &pair[i] * &w[j];
        }
        proj_rows.push(row);
    }
    let comp_rows = module_basis(&ZMat::from_rows(proj_rows).to_q());
    let complement = embed(l, comp_rows)?;

    #[cfg(debug_assertions)]
    {
        let mut basis = vec![v.to_vec(), w.clone()];
        for i in 0..complement.rank() {
            let row: Vec<Int> = complement.coords().row(i).iter().map(|x| x.to_integer()).collect();
            basis.push(row);
        }
        debug_assert!(ZMat::from_rows(basis).is_unimodular());
    }

    Ok(HyperbolicSplit { isotropic: v.to_vec(), partner: w, complement })
}

// ---------------------------------------------------------------------------
// Embedding into hyperbolic lattices
// ---------------------------------------------------------------------------

/// Rows embedding an even Gram matrix of rank `r` into `U^k` (`r <= k`),
/// using one hyperbolic pair per basis vector: row `i` is `e_{offset+i}`
/// plus an integral combination of `f_{offset+j}` for `j <= i`.  Because the
/// rows restrict to an identity on the `e` coordinates the image is always
/// primitive.
fn triangular_rows(gram: &QMat, offset: usize, k: usize) -> ZMat {
    let r = gram.rows;
    debug_assert!(offset + r <= k);
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = vec![Int::zero(); 2 * k];
        row[2 * (offset + i)] = Int::one();
        for j in 0..=i {
            let a = gram.row(i)[j].to_integer();
            row[2 * (offset + j) + 1] = if j == i { a / Int::from(2) } else { a };
        }
        rows.push(row);
    }
    ZMat::from_rows(rows)
}

fn unit_int(len: usize, i: usize) -> Vec<Int> {
    let mut row = vec![Int::zero(); len];
    row[i] = Int::one();
    row
}

/// Row vector times integer matrix.
fn vec_times(v: &[Int], m: &ZMat) -> Vec<Int> {
    let mut out = vec![Int::zero(); m.cols];
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot += vi * &m.row(i)[j];
        }
    }
    out
}

/// Construct an explicit isometric embedding of an even lattice `t` into
/// `U^k`, assuming the rational obstruction test has already passed.  Ranks
/// up to `k` embed by the triangular construction; larger ranks go through
/// the maximal even overlattice, split off `rank - k` hyperbolic planes
/// (always possible there), and embed the remaining complement triangularly.
fn construct_hyperbolic_embedding(t: &Lattice, k: usize) -> Result<SublatticeEmbedding, LatticeError> {
    let ambient = Lattice::hyperbolic(k);
    let r = t.rank();
    if r <= k {
        let emb = embed(&ambient, triangular_rows(t.gram(), 0, k).to_q())?;
        debug_assert_eq!(*emb.sub_gram(), *t.gram());
        return Ok(emb);
    }

    let over = maximal_even_overlattice(t)?;
    let o_lat = over.lattice()?;
    let splits = r - k;

    // Split hyperbolic planes off the overlattice one at a time, tracking
    // everything in overlattice coordinates.
    let mut pair_rows: Vec<Vec<Int>> = Vec::with_capacity(2 * splits);
    let mut cur_rows = ZMat::identity(r);
    let mut cur = o_lat;
    for _ in 0..splits {
        let v = isotropic_vector_certain(&cur);
        let split = split_hyperbolic(&cur, &v)?;
        pair_rows.push(vec_times(&v, &cur_rows));
        pair_rows.push(vec_times(&split.partner, &cur_rows));
        let comp = split
            .complement
            .coords()
            .to_z()
            .expect("complement rows of an integral split are integral");
        cur_rows = comp.mul(&cur_rows);
        cur = split.complement.lattice()?;
    }
    debug_assert_eq!(cur.rank(), 2 * k - r);

    // Change of basis of the overlattice adapted to the splitting.
    let mut m_rows = pair_rows;
    for i in 0..cur_rows.rows {
        m_rows.push(cur_rows.row_vec(i));
    }
    let m = ZMat::from_rows(m_rows);
    debug_assert!(m.is_unimodular());

    // Images in U^k: each split pair onto one hyperbolic plane, the final
    // complement triangularly into the remaining planes.
    let mut e_rows: Vec<Vec<Int>> = Vec::with_capacity(r);
    for s in 0..splits {
        e_rows.push(unit_int(2 * k, 2 * s));
        e_rows.push(unit_int(2 * k, 2 * s + 1));
    }
    let tri = triangular_rows(cur.gram(), splits, k);
    for i in 0..tri.rows {
        e_rows.push(tri.row_vec(i));
    }
    let e_basis = ZMat::from_rows(e_rows);

    let m_inv = m.to_q().inverse().expect("unimodular change of basis");
    let o_in_ambient = m_inv.mul(&e_basis.to_q());
    let t_in_o = over
        .coords()
        .inverse()
        .expect("overlattice coordinates are invertible")
        .to_z()
        .expect("the input sits integrally inside its overlattice");
    let emb = embed(&ambient, t_in_o.to_q().mul(&o_in_ambient))?;
    debug_assert_eq!(*emb.sub_gram(), *t.gram());
    Ok(emb)
}

/// Decide whether an even lattice embeds isometrically into `U^k`, with an
/// explicit embedding as certificate on `yes`.  The rational obstruction
/// test is decisive, so this never returns `unknown`.
fn hyperbolic_embedding_decision(t: &Lattice, k: usize) -> Result<Decision, LatticeError> {
    if !t.is_even() {
        return Err(LatticeError::NotEven);
    }
    let r = t.rank();
    if r > 2 * k {
        return Ok(Decision::no("rank-exceeds-ambient"));
    }
    let (pos, neg) = t.signature();
    if pos > k || neg > k {
        return Ok(Decision::no("signature-does-not-fit"));
    }
    if let Some(tag) = forms::hyperbolic_embedding_obstruction(t, k) {
        // At rank 2k-2 the local obstruction is equivalent to anisotropy,
        // which is the more informative name for it.
        let reason = if r == 2 * k - 2 && !forms::is_isotropic(t) {
            format!("anisotropic-rank-{r}")
        } else {
            tag.to_string()
        };
        return Ok(Decision::no(reason));
    }
    let emb = construct_hyperbolic_embedding(t, k)?;
    let reason = if r <= k { format!("rank-le-{k}-direct") } else { "overlattice-split".to_string() };
    Ok(Decision::yes(reason, Certificate::Embedding(emb)))
}

/// Does the even lattice embed isometrically into `U^3`?
pub fn embed_in_u3(t: &Lattice) -> Result<Decision, LatticeError> {
    hyperbolic_embedding_decision(t, 3)
}

fn dominance(t: &Lattice, k: usize) -> Result<Decision, LatticeError> {
    let mut decision = hyperbolic_embedding_decision(t, k)?;
    let (pos, neg) = t.signature();
    if pos != 2 {
        decision.warnings.push(format!(
            "signature ({pos},{neg}) is not the (2,{}) shape of a transcendental lattice; the verdict concerns the lattice embedding only",
            t.rank().saturating_sub(2)
        ));
    }
    Ok(decision)
}

/// Kummer-dominance criterion: a K3 surface with transcendental lattice `t`
/// dominates some Kummer surface iff `t` embeds into `U^3`.  Inputs whose
/// signature is not `(2, rank-2)` are still decided as lattices, with a
/// warning.
pub fn kummer_dominance(t: &Lattice) -> Result<Decision, LatticeError> {
    dominance(t, 3)
}

/// Product-Kummer refinement: dominating the Kummer surface of a product of
/// elliptic curves is equivalent to embedding into `U^2`.
pub fn product_kummer_dominance(t: &Lattice) -> Result<Decision, LatticeError> {
    dominance(t, 2)
}

// ---------------------------------------------------------------------------
// Bounded enumeration helpers
// ---------------------------------------------------------------------------

fn qmat_to_small(m: &QMat) -> Option<Vec<Vec<i64>>> {
    let mut out = vec![vec![0i64; m.cols]; m.rows];
    for i in 0..m.rows {
        for (j, cell) in out[i].iter_mut().enumerate() {
            let e = &m.row(i)[j];
            if !e.is_integer() {
                return None;
            }
            *cell = i64::try_from(&e.to_integer()).ok()?;
        }
    }
    Some(out)
}

/// Determinant by fraction-free (Bareiss) elimination.  Intermediate values
/// are minors of the input, so for a `k x k` matrix with entries bounded by
/// `b` everything stays below `k! * b^k`; callers keep that inside `i128`.
fn det_bareiss_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for i in 0..k - 1 {
        if m[i][i] == 0 {
            let Some(p) = (i + 1..k).find(|&r| m[r][i] != 0) else {
                return 0;
            };
            m.swap(i, p);
            sign = -sign;
        }
        for r in i + 1..k {
            for c in i + 1..k {
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
            }
            m[r][i] = 0;
        }
        prev = m[i][i];
    }
    sign * m[k - 1][k - 1]
}

/// Is the gcd of all `k x k` minors of a `k x n` integer matrix equal to
/// one?  That gcd is the product of the invariant factors, so the answer is
/// "is the row span a primitive sublattice" (and, for square matrices, "is
/// this unimodular").  Small sizes run in `i128`; larger ones fall back to
/// exact Smith form.
fn maximal_minor_gcd_is_one(rows: &[Vec<i64>]) -> bool {
    let k = rows.len();
    if k == 0 {
        return true;
    }
    let n = rows[0].len();
    if k > n {
        return false;
    }
    if n > 10 {
        let big: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&c| Int::from(c)).collect()).collect();
        let divisors = ZMat::from_rows(big).elementary_divisors();
        return divisors.len() == k && divisors.iter().all(|f| f.is_one());
    }
    let mut g: i128 = 0;
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let minor: Vec<Vec<i128>> =
            rows.iter().map(|r| cols.iter().map(|&c| i128::from(r[c])).collect()).collect();
        g = num::integer::gcd(g, det_bareiss_i128(minor));
        if g == 1 {
            return true;
        }
        // advance to the next k-subset of columns in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if cols[i] < n - (k - i) {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

struct GramSearch<'a> {
    ambient: &'a [Vec<i64>],
    target: &'a [Vec<i64>],
    by_norm: &'a BTreeMap<i64, Vec<Vec<i64>>>,
    rows: Vec<Vec<i64>>,
    // ambient * row^T for each chosen row, so pairings are dot products
    images: Vec<Vec<i64>>,
}

impl GramSearch<'_> {
    fn ambient_image(&self, x: &[i64]) -> Vec<i64> {
        let n = self.ambient.len();
        let mut out = vec![0i64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = 0i64;
            for (j, &xj) in x.iter().enumerate() {
                acc += self.ambient[i][j] * xj;
            }
            *slot = acc;
        }
        out
    }

    fn dfs(&mut self, depth: usize, keep: &mut dyn FnMut(&[Vec<i64>]) -> bool) -> Option<ZMat> {
        let r = self.target.len();
        if depth == r {
            if !keep(&self.rows) {
                return None;
            }
            let rows: Vec<Vec<Int>> =
                self.rows.iter().map(|row| row.iter().map(|&c| Int::from(c)).collect()).collect();
            return Some(ZMat::from_rows(rows));
        }
        let wanted = self.target[depth][depth];
        let candidates = self.by_norm.get(&wanted)?;
        'next: for cand in candidates {
            for (j, image) in self.images.iter().enumerate() {
                let dot: i64 = cand.iter().zip(image.iter()).map(|(&a, &b)| a * b).sum();
                if dot != self.target[depth][j] {
                    continue 'next;
                }
            }
            self.rows.push(cand.clone());
            self.images.push(self.ambient_image(cand));
            if let Some(found) = self.dfs(depth + 1, keep) {
                return Some(found);
            }
            self.rows.pop();
            self.images.pop();
        }
        None
    }
}

/// Search for an integral matrix `X` with `X * ambient * X^T = target` and
/// entries bounded by `bound`, returning the first candidate (in row-wise
/// lexicographic order) accepted by `keep`.  Returns `None` when the search
/// space is exhausted or too large to scan; callers must treat `None` as
/// "nothing found within the bound", never as a proof of nonexistence.
fn bounded_gram_search(
    target: &QMat,
    ambient: &QMat,
    bound: i64,
    keep: &mut dyn FnMut(&[Vec<i64>]) -> bool,
) -> Option<ZMat> {
    if bound < 1 || bound > 1024 || ambient.rows > 16 || target.rows > ambient.rows {
        return None;
    }
    let tg = qmat_to_small(target)?;
    let ag = qmat_to_small(ambient)?;
    if ag.iter().flatten().any(|e| e.abs() > (1 << 31)) || tg.iter().flatten().any(|e| e.abs() > (1 << 62)) {
        return None;
    }
    let n = ag.len();
    let width = (2 * bound + 1) as f64;
    if width.powi(n as i32) > 2.0e8 {
        return None;
    }

    // one box scan collects candidate rows for every needed diagonal norm
    let needed: BTreeSet<i64> = (0..tg.len()).map(|i| tg[i][i]).collect();
    let mut by_norm: BTreeMap<i64, Vec<Vec<i64>>> = needed.iter().map(|&v| (v, Vec::new())).collect();
    let mut x = vec![-bound; n];
    loop {
        // the zero vector can never be a row: the target is non-degenerate
        if x.iter().any(|&c| c != 0) {
            let norm = norm_i64(&ag, &x);
            if let Some(bucket) = by_norm.get_mut(&norm) {
                bucket.push(x.clone());
            }
        }
        if !advance_box(&mut x, bound) {
            break;
        }
    }

    let mut search =
        GramSearch { ambient: &ag, target: &tg, by_norm: &by_norm, rows: Vec::new(), images: Vec::new() };
    search.dfs(0, keep)
}

/// First isometry from `candidate` onto `target` with entries bounded by
/// `bound`, as a unimodular change of basis, if the search finds one.
fn bounded_isometry(target: &Lattice, candidate: &Lattice, bound: i64) -> Option<ZMat> {
    if target.rank() != candidate.rank() {
        return None;
    }
    bounded_gram_search(target.gram(), candidate.gram(), bound, &mut maximal_minor_gcd_is_one)
}

/// First primitive isometric embedding of `t` into `U^3` with coordinates
/// bounded by `bound`.
fn bounded_primitive_embedding(t: &Lattice, bound: i64) -> Option<SublatticeEmbedding> {
    let ambient = Lattice::hyperbolic(3);
    let found = bounded_gram_search(t.gram(), ambient.gram(), bound, &mut maximal_minor_gcd_is_one)?;
    let emb = embed(&ambient, found.to_q()).ok()?;
    debug_assert!(emb.is_primitive().unwrap_or(false));
    Some(emb)
}

/// Shioda–Inose criterion: does `t` admit a *primitive* embedding into
/// `U^3`?  A `no` from the rational gate is final.  On the positive side the
/// constructed embedding is often already primitive; if not, the primitive
/// closure is compared (decisive when its fingerprint differs) and finally a
/// bounded direct enumeration runs.  Exhausting the budget yields `unknown`.
pub fn shioda_inose(t: &Lattice, budget: &SearchBudget) -> Result<Decision, LatticeError> {
    let gate = embed_in_u3(t)?;
    if gate.verdict == Verdict::No {
        return Ok(Decision::no(gate.reason));
    }
    let Some(Certificate::Embedding(emb)) = gate.certificate else {
        unreachable!("a yes verdict from embed_in_u3 always carries its embedding")
    };
    if t.rank() <= 3 {
        // the triangular construction is primitive by design
        debug_assert!(emb.is_primitive()?);
        return Ok(Decision::yes("rank-le-3-direct", Certificate::Embedding(emb)));
    }
    if emb.is_primitive()? {
        return Ok(Decision::yes("primitive-image", Certificate::Embedding(emb)));
    }

    // The primitive closure of the image is a candidate only when it is
    // isometric to the input; a fingerprint mismatch rules it out at once.
    let closure = emb.primitive_closure()?;
    let closure_lat = closure.lattice()?;
    if same_fingerprint(t, &closure_lat) {
        if let Some(p) = bounded_isometry(t, &closure_lat, i64::from(budget.height_bound())) {
            let re = embed(emb.ambient(), p.to_q().mul(closure.coords()))?;
            debug_assert!(re.is_primitive()?);
            return Ok(Decision::yes("primitive-closure", Certificate::Embedding(re)));
        }
    }

    if let Some(found) = bounded_primitive_embedding(t, i64::from(budget.height_bound())) {
        return Ok(Decision::yes("primitive-by-enumeration", Certificate::Embedding(found)));
    }
    Ok(Decision::unknown(format!("exhausted-height-{}", budget.height_bound())))
}

// ---------------------------------------------------------------------------
// Similarity scale
// ---------------------------------------------------------------------------

/// Is there a positive squarefree `n` making `q1` rationally equivalent to
/// `q2` scaled by `n`?  Wraps the invariant-level search with a decision and
/// a checkable certificate.
pub fn isogeny_scale(q1: &Lattice, q2: &Lattice) -> Decision {
    match forms::similar_scale(q1, q2) {
        Some(cert) => Decision::yes("similarity-scale-found", Certificate::Scale(cert)),
        None => {
            if q1.rank() != q2.rank() || q1.signature() != q2.signature() {
                Decision::no("shape-mismatch")
            } else {
                Decision::no("no-squarefree-scale")
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Degree-two quotient inside Lambda0
// ---------------------------------------------------------------------------

/// Output of the quotient construction: the quotient lattice (the doubled
/// intersection with `Lambda1`), the intersection itself, and the two
/// containments that sandwich the input between the intersection and half
/// of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NikulinQuotient {
    /// The intersection of the rational span with `Lambda1`, carrying the
    /// form multiplied by two: an even integral lattice.
    pub quotient: Lattice,
    /// The intersection as a sublattice of `Lambda0` with rational
    /// coordinates.
    pub intersection: SublatticeEmbedding,
    /// The input lies inside the intersection (always true; recorded so the
    /// chain can be re-checked from the output alone).
    pub scaled_input_contained: bool,
    /// Twice the intersection lies back inside the input (always true).
    pub doubled_quotient_contained: bool,
}

/// Quotient construction for a primitive, integrally-presented sublattice
/// `s` of `Lambda0`: intersect its rational span with `Lambda1` (the dual of
/// `Lambda0`) and double the form.  The two containment flags witness
/// `s ⊆ intersection` and `2 * intersection ⊆ s`.
pub fn nikulin_quotient(s: &SublatticeEmbedding) -> Result<NikulinQuotient, LatticeError> {
    if *s.ambient().gram() != *Lattice::lambda0().gram() {
        return Err(LatticeError::AmbientMismatch);
    }
    if !s.is_integral_coords() {
        return Err(LatticeError::NotIntegral);
    }
    if !s.is_primitive()? {
        return Err(LatticeError::NotPrimitive);
    }
    let intersection = s.intersect_with_scaled_dual(&Rat::one())?;
    let two = Rat::from(Int::from(2));
    let quotient_gram = intersection.sub_gram().scale(&two);
    debug_assert!(quotient_gram.is_integral());
    let quotient = Lattice::new(quotient_gram)?;
    debug_assert!(quotient.is_even());
    let scaled_input_contained = intersection.contains(s);
    let doubled = embed(s.ambient(), intersection.coords().scale(&two))?;
    let doubled_quotient_contained = s.contains(&doubled);
    Ok(NikulinQuotient { quotient, intersection, scaled_input_contained, doubled_quotient_contained })
}

// ---------------------------------------------------------------------------
// Sandwich embedding
// ---------------------------------------------------------------------------

/// Push a primitive sublattice `t` of `U^3` through the fixed `U(2)^3`
/// witness inside `Lambda0`.  The image is a primitive sublattice of
/// `Lambda0` carrying the form of `t` doubled, and it equals the
/// intersection of its rational span with `2 * Lambda1` — the sandwich that
/// makes the quotient construction invert this map.
pub fn sandwich_embedding(t: &SublatticeEmbedding) -> Result<SublatticeEmbedding, LatticeError> {
    if *t.ambient().gram() != *Lattice::hyperbolic(3).gram() {
        return Err(LatticeError::AmbientMismatch);
    }
    let coords = t.coords().to_z().ok_or(LatticeError::NotIntegral)?;
    if !t.is_primitive()? {
        return Err(LatticeError::NotPrimitive);
    }
    let image_rows = coords.mul(&crate::witness::sandwich_basis());
    let image = embed(&Lattice::lambda0(), image_rows.to_q())?;
    debug_assert_eq!(*image.sub_gram(), t.sub_gram().scale(&Rat::from(Int::from(2))));
    debug_assert!(image.is_primitive()?);
    Ok(image)
}

// ---------------------------------------------------------------------------
// Doubled-quotient obstruction
// ---------------------------------------------------------------------------

/// The 2-length obstruction: if every pairing of `m` is even and the
/// 2-length of its discriminant group exceeds `6 - rank`, then `m` cannot be
/// the transcendental lattice of any double-quotient partner — `yes` means
/// the obstruction applies.  Anything else is `unknown`: the test is a
/// sufficient criterion only.
pub fn double_quotient_obstruction(m: &Lattice) -> Result<Decision, LatticeError> {
    if !m.is_even() {
        return Err(LatticeError::NotEven);
    }
    let all_even = (0..m.rank()).all(|i| {
        m.gram().row(i).iter().all(|e| e.is_integer() && (e.to_integer() % Int::from(2)).is_zero())
    });
    if !all_even {
        return Ok(Decision::unknown("pairings-not-all-even"));
    }
    let rank = m.rank();
    let two_length = m.discriminant_group()?.p_length(&Int::from(2));
    if (two_length as i64) > 6 - rank as i64 {
        Ok(Decision::yes("2-length-obstruction", Certificate::Obstruction { rank, two_length }))
    } else {
        Ok(Decision::unknown("2-length-within-bound"))
    }
}

// ---------------------------------------------------------------------------
// Fingerprints and certificate checkers
// ---------------------------------------------------------------------------

/// Cheap isometry screen: integral invariants (rank, determinant, signature,
/// discriminant-group shape) plus rational equivalence.  Agreement does not
/// prove the lattices isometric, but disagreement refutes it.
pub fn same_fingerprint(a: &Lattice, b: &Lattice) -> bool {
    a.fingerprint() == b.fingerprint() && forms::equivalent(a, b)
}

/// Re-check an embedding certificate: right ambient, right rank, integral
/// coordinates, Gram matrix reproduced exactly, and (when demanded)
/// primitivity.
pub fn check_embedding_certificate(
    claimed: &Lattice,
    ambient: &Lattice,
    emb: &SublatticeEmbedding,
    require_primitive: bool,
) -> Result<(), String> {
    if *emb.ambient().gram() != *ambient.gram() {
        return Err("certificate ambient Gram differs from the expected ambient".into());
    }
    if emb.rank() != claimed.rank() {
        return Err(format!("certificate rank {} differs from input rank {}", emb.rank(), claimed.rank()));
    }
    if !emb.coords().is_integral() {
        return Err("certificate coordinates are not integral".into());
    }
    if emb.coords().gram_with(ambient.gram()) != *claimed.gram() {
        return Err("certificate rows do not reproduce the input Gram matrix".into());
    }
    if require_primitive {
        match emb.is_primitive() {
            Ok(true) => {}
            Ok(false) => return Err("certificate image is not primitive".into()),
            Err(e) => return Err(format!("primitivity check failed: {e}")),
        }
    }
    Ok(())
}

/// Re-check an isotropic-vector certificate: right length, nonzero,
/// primitive, and of norm zero.
pub fn check_isotropic_certificate(l: &Lattice, v: &[Int]) -> Result<(), String> {
    if v.len() != l.rank() {
        return Err(format!("certificate vector has length {} but the lattice has rank {}", v.len(), l.rank()));
    }
    if v.iter().all(|c| c.is_zero()) {
        return Err("certificate vector is zero".into());
    }
    let content = v.iter().fold(Int::zero(), |acc, c| acc.gcd(c));
    if !content.is_one() {
        return Err("certificate vector is not primitive".into());
    }
    if !l.norm(&rat_coords(v)).is_zero() {
        return Err("certificate vector has nonzero norm".into());
    }
    Ok(())
}

/// Re-check a similarity-scale certificate: the scale is positive and
/// squarefree, and both recorded invariant sets recompute and agree.
pub fn check_scale_certificate(q1: &Lattice, q2: &Lattice, cert: &ScaleCertificate) -> Result<(), String> {
    if cert.n <= Int::zero() {
        return Err("scale is not positive".into());
    }
    if num_util::squarefree_part(&cert.n) != cert.n {
        return Err("scale is not squarefree".into());
    }
    if forms::invariants(q1) != cert.source {
        return Err("recorded source invariants do not match the first form".into());
    }
    let scaled = q2.scale(&Rat::from(cert.n.clone())).map_err(|e| e.to_string())?;
    if forms::invariants(&scaled) != cert.target_scaled {
        return Err("recorded scaled invariants do not match the second form".into());
    }
    if cert.source != cert.target_scaled {
        return Err("the two invariant sets differ, so the scale does not make the forms equivalent".into());
    }
    Ok(())
}

/// Re-check an obstruction certificate: the recorded rank and 2-length
/// recompute from the lattice, all pairings are even, and the 2-length
/// really exceeds `6 - rank`.
pub fn check_obstruction_certificate(m: &Lattice, rank: usize, two_length: usize) -> Result<(), String> {
    if m.rank() != rank {
        return Err(format!("recorded rank {rank} differs from the lattice rank {}", m.rank()));
    }
    let all_even = (0..m.rank()).all(|i| {
        m.gram().row(i).iter().all(|e| e.is_integer() && (e.to_integer() % Int::from(2)).is_zero())
    });
    if !all_even {
        return Err("not all pairings are even, so the obstruction does not apply".into());
    }
    let disc = m.discriminant_group().map_err(|e| e.to_string())?;
    let actual = disc.p_length(&Int::from(2));
    if actual != two_length {
        return Err(format!("recorded 2-length {two_length} differs from the recomputed value {actual}"));
    }
    if (two_length as i64) <= 6 - rank as i64 {
        return Err("the 2-length does not exceed 6 - rank, so there is no obstruction".into());
    }
    Ok(())
}
