//! Rational invariants of nondegenerate quadratic forms.
//!
//! Everything here works with a form up to equivalence over the rationals:
//! diagonalization, Hilbert symbols, the complete invariant tuple
//! (rank, determinant class, signature, Hasse symbols), isotropy and Witt
//! index via the Hasse–Minkowski local–global principle, embeddings into
//! sums of hyperbolic planes, and similarity up to a squarefree scale.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::LatticeError;
use crate::lattice::Lattice;
use crate::mat::QMat;
use crate::num_util::{
    is_prime, legendre, prime_support, square_class, squarefree_part, unit_mod, val_unit,
};

type Int = BigInt;
type Rat = BigRational;

/// A place of the rationals: a finite prime or the archimedean place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(Int),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "infinity"),
        }
    }
}

/// Hilbert symbol `(a, b)` at a place of the rationals.
///
/// Returns `+1` or `-1`. Finite places use the explicit valuation/unit
/// formulas (with the separate `p = 2` rule); the archimedean place returns
/// `-1` exactly when both arguments are negative.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: &Place) -> Result<i8, LatticeError> {
    if a.is_zero() {
        return Err(LatticeError::ZeroArgument("a".into()));
    }
    if b.is_zero() {
        return Err(LatticeError::ZeroArgument("b".into()));
    }
    let a = square_class(a);
    let b = square_class(b);
    match place {
        Place::Infinity => Ok(hilbert_inf(&a, &b)),
        Place::Prime(p) => {
            if !is_prime(p) {
                Err(LatticeError::NotPrime(p.to_string()))
            } else {
                Ok(hilbert_zz(&a, &b, p))
            }
        }
    }
}

fn hilbert_inf(a: &Int, b: &Int) -> i8 {
    if a.is_negative() && b.is_negative() {
        -1
    } else {
        1
    }
}

/// Hilbert symbol of two nonzero squarefree integers at a finite prime.
fn hilbert_zz(a: &Int, b: &Int, p: &Int) -> i8 {
    debug_assert!(!a.is_zero() && !b.is_zero());
    let (va, ua) = val_unit(&Rat::from(a.clone()), p);
    let (vb, ub) = val_unit(&Rat::from(b.clone()), p);
    let alpha = va.rem_euclid(2);
    let beta = vb.rem_euclid(2);
    if *p == Int::from(2) {
        let u = unit_mod(&ua, &Int::from(8));
        let w = unit_mod(&ub, &Int::from(8));
        let exponent = two_eps(&u) * two_eps(&w) + alpha * two_omega(&w) + beta * two_omega(&u);
        parity_sign(exponent)
    } else {
        let mut sign = 1i8;
        if alpha == 1 && beta == 1 && ((p - Int::one()) / Int::from(2)).is_odd() {
            sign = -sign;
        }
        if beta == 1 {
            sign *= legendre(&unit_mod(&ua, p), p) as i8;
        }
        if alpha == 1 {
            sign *= legendre(&unit_mod(&ub, p), p) as i8;
        }
        sign
    }
}

/// `(u - 1) / 2 mod 2` for an odd residue `u` mod 8.
fn two_eps(u: &Int) -> i64 {
    if u.mod_floor(&Int::from(4)) == Int::from(3) {
        1
    } else {
        0
    }
}

/// `(u^2 - 1) / 8 mod 2` for an odd residue `u` mod 8.
fn two_omega(u: &Int) -> i64 {
    let r = u.mod_floor(&Int::from(8));
    if r == Int::from(3) || r == Int::from(5) {
        1
    } else {
        0
    }
}

fn parity_sign(e: i64) -> i8 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Rational congruence diagonalization of a lattice's Gram matrix.
///
/// Returns the diagonal entries together with the change-of-basis witness
/// `r`: the rows of `r` form a basis in which the form is diagonal, so that
/// `r · G · rᵀ` is the diagonal matrix of the returned entries.
pub fn diagonalize(q: &Lattice) -> (Vec<Rat>, QMat) {
    let (diag, r) = q
        .gram()
        .congruence_diagonalize()
        .expect("lattice grams are square and symmetric");
    (diag, r)
}

/// Complete rational-equivalence data of a nondegenerate form.
///
/// `eps_minus` records the finite places where the product of pairwise
/// Hilbert symbols of a diagonalization is `-1`; together with rank,
/// determinant class, and signature this classifies the form over the
/// rationals, so derived equality is rational equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RationalClass {
    pub rank: usize,
    pub det: Int,
    pub sig: (usize, usize),
    pub eps_minus: BTreeSet<Int>,
}

impl RationalClass {
    pub fn of(q: &Lattice) -> RationalClass {
        let (diag, _) = diagonalize(q);
        let classes: Vec<Int> = diag.iter().map(square_class).collect();
        Self::from_diag_classes(&classes)
    }

    /// Build the class data from the square classes of a diagonalization.
    pub fn from_diag_classes(classes: &[Int]) -> RationalClass {
        debug_assert!(classes.iter().all(|c| !c.is_zero()));
        let rank = classes.len();
        let mut det = Int::one();
        let mut neg = 0usize;
        let mut candidates: BTreeSet<Int> = BTreeSet::new();
        candidates.insert(Int::from(2));
        for c in classes {
            det *= c;
            if c.is_negative() {
                neg += 1;
            }
            for p in prime_support(c) {
                candidates.insert(p);
            }
        }
        let det = squarefree_part(&det);
        let mut eps_minus = BTreeSet::new();
        for p in &candidates {
            if eps_from_classes(classes, p) == -1 {
                eps_minus.insert(p.clone());
            }
        }
        RationalClass {
            rank,
            det,
            sig: (rank - neg, neg),
            eps_minus,
        }
    }

    pub fn eps_at_prime(&self, p: &Int) -> i8 {
        if self.eps_minus.contains(p) {
            -1
        } else {
            1
        }
    }

    /// Finite places where any local invariant of the form can be nontrivial.
    pub fn support(&self) -> BTreeSet<Int> {
        let mut s = self.eps_minus.clone();
        s.insert(Int::from(2));
        for p in prime_support(&self.det) {
            s.insert(p);
        }
        s
    }

    /// Class data of `W` where `self ≅ U ⊥ W` over the rationals.
    ///
    /// Only meaningful when the form is isotropic (so a hyperbolic plane
    /// really does split off).
    pub fn split_hyperbolic(&self) -> RationalClass {
        debug_assert!(self.rank >= 2 && self.sig.0 >= 1 && self.sig.1 >= 1);
        let minus_one = Int::from(-1);
        let minus_det = -self.det.clone();
        let mut eps_minus = BTreeSet::new();
        for p in self.support() {
            let e = self.eps_at_prime(&p) * hilbert_zz(&minus_one, &minus_det, &p);
            if e == -1 {
                eps_minus.insert(p);
            }
        }
        RationalClass {
            rank: self.rank - 2,
            det: squarefree_part(&minus_det),
            sig: (self.sig.0 - 1, self.sig.1 - 1),
            eps_minus,
        }
    }

    /// Hasse–Minkowski decision for the existence of a nonzero null vector.
    pub fn is_isotropic(&self) -> bool {
        let (pos, neg) = self.sig;
        let minus_one = Int::from(-1);
        match self.rank {
            0 | 1 => false,
            2 => self.det == minus_one,
            3 => {
                // Locally isotropic at p iff the Hasse product equals
                // (-1, -det)_p; at infinity iff indefinite.
                pos >= 1
                    && neg >= 1
                    && self.support().iter().all(|p| {
                        hilbert_zz(&minus_one, &(-self.det.clone()), p) == self.eps_at_prime(p)
                    })
            }
            4 => {
                // Locally isotropic at p iff det is not a square in Q_p, or
                // the Hasse product equals (-1, -1)_p.
                pos >= 1
                    && neg >= 1
                    && self.support().iter().all(|p| {
                        !is_square_in_qp(&self.det, p)
                            || self.eps_at_prime(p) == hilbert_zz(&minus_one, &minus_one, p)
                    })
            }
            _ => pos >= 1 && neg >= 1,
        }
    }

    pub fn witt_index(&self) -> usize {
        let mut current = self.clone();
        let mut index = 0;
        while current.is_isotropic() {
            current = current.split_hyperbolic();
            index += 1;
        }
        index
    }
}

/// Whether a squarefree integer is a square in the p-adic field.
fn is_square_in_qp(d: &Int, p: &Int) -> bool {
    debug_assert!(!d.is_zero());
    if *p == Int::from(2) {
        d.is_odd() && d.mod_floor(&Int::from(8)).is_one()
    } else {
        !(d % p).is_zero() && legendre(d, p) == 1
    }
}

/// Product of pairwise Hilbert symbols of a diagonalization at `p`.
fn eps_from_classes(classes: &[Int], p: &Int) -> i8 {
    let mut sign = 1i8;
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            sign *= hilbert_zz(&classes[i], &classes[j], p);
        }
    }
    sign
}

/// Complete rational invariants of a nondegenerate form.
///
/// `hasse` lists, in increasing order, the finite primes where the Hasse
/// symbol (in the Clifford-algebra normalization, which is what the rest of
/// the crate and the CLI report) is `-1`; at all other finite places it is
/// `+1`, and at the archimedean place it is determined by the signature and
/// determinant so that the product over all places is `+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormInvariants {
    pub rank: usize,
    pub det_class: Int,
    pub sig: (usize, usize),
    pub hasse: Vec<Int>,
}

impl FormInvariants {
    fn from_class(class: &RationalClass) -> FormInvariants {
        let correction = clifford_correction(class.rank, &class.det);
        let mut hasse = Vec::new();
        for p in class.support() {
            let mut symbol = class.eps_at_prime(&p);
            if let Some(t) = &correction {
                symbol *= hilbert_zz(&Int::from(-1), t, &p);
            }
            if symbol == -1 {
                hasse.push(p);
            }
        }
        let inv = FormInvariants {
            rank: class.rank,
            det_class: class.det.clone(),
            sig: class.sig,
            hasse,
        };
        debug_assert_eq!(inv.det_class.is_negative(), class.sig.1 % 2 == 1);
        inv
    }

    /// Hasse symbol at a place (`+1` or `-1`).
    pub fn hasse_at(&self, place: &Place) -> i8 {
        match place {
            Place::Prime(p) => {
                if self.hasse.contains(p) {
                    -1
                } else {
                    1
                }
            }
            Place::Infinity => {
                let q = self.sig.1;
                let mut symbol = parity_sign((q * q.saturating_sub(1) / 2) as i64);
                if let Some(t) = clifford_correction(self.rank, &self.det_class) {
                    symbol *= hilbert_inf(&Int::from(-1), &t);
                }
                symbol
            }
        }
    }
}

impl fmt::Display for FormInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hasse: Vec<String> = self.hasse.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "rank={} det_class={} sig=({},{}) hasse=[{}]",
            self.rank,
            self.det_class,
            self.sig.0,
            self.sig.1,
            hasse.join(",")
        )
    }
}

/// Second argument of the Hilbert-symbol factor converting the pairwise
/// Hasse product into the Clifford-algebra normalization; `None` when the
/// two normalizations agree (rank 1 or 2 mod 8).
fn clifford_correction(rank: usize, det: &Int) -> Option<Int> {
    match rank % 8 {
        1 | 2 => None,
        3 | 4 => Some(-det.clone()),
        5 | 6 => Some(Int::from(-1)),
        _ => Some(det.clone()),
    }
}

/// Rational invariants of a lattice's quadratic form.
pub fn invariants(q: &Lattice) -> FormInvariants {
    FormInvariants::from_class(&RationalClass::of(q))
}

/// Whether two forms are equivalent over the rationals.
pub fn equivalent(q1: &Lattice, q2: &Lattice) -> bool {
    RationalClass::of(q1) == RationalClass::of(q2)
}

/// Whether the form has a nonzero rational null vector.
pub fn is_isotropic(q: &Lattice) -> bool {
    RationalClass::of(q).is_isotropic()
}

/// Number of hyperbolic planes that split off over the rationals.
pub fn witt_index(q: &Lattice) -> usize {
    RationalClass::of(q).witt_index()
}

/// Whether the form embeds into a sum of `k` hyperbolic planes over the
/// rationals, i.e. whether some quadratic space `W` satisfies
/// `Q ⊥ W ≅ U^k ⊗ Q`.
pub fn embeds_in_hyperbolic(q: &Lattice, k: usize) -> bool {
    hyperbolic_embedding_obstruction(q, k).is_none()
}

/// The obstruction tag explaining why `embeds_in_hyperbolic` fails, or
/// `None` when the embedding exists.
///
/// The complement `W` has all invariants forced by the orthogonal-sum
/// formulas; the decision checks that the forced invariants are realizable
/// at the boundary ranks (0, 1, 2), where they might not be. Rank-2
/// realizability is confirmed by exhibiting an explicit diagonal witness.
pub fn hyperbolic_embedding_obstruction(q: &Lattice, k: usize) -> Option<&'static str> {
    let class = RationalClass::of(q);
    if class.rank > 2 * k {
        return Some("rank-exceeds-ambient");
    }
    if class.sig.0 > k || class.sig.1 > k {
        return Some("signature-does-not-fit");
    }
    let m = 2 * k - class.rank;
    if m >= 3 {
        // Rank >= 3 with consistent signature realizes every determinant
        // class and every finite set of Hasse places.
        return None;
    }

    let minus_one = Int::from(-1);
    let det_w = squarefree_part(&(minus_one.pow(k as u32) * &class.det));
    let sig_w = (k - class.sig.0, k - class.sig.1);
    debug_assert_eq!(det_w.is_negative(), sig_w.1 % 2 == 1);

    // eps_p(U^k) = (-1,-1)_p^(k(k-1)/2); solve the orthogonal-sum formula
    // eps(U^k) = eps(Q) * eps(W) * (det Q, det W)_p for eps(W).
    let hyper_exp = (k * k.saturating_sub(1) / 2) as i64;
    let mut eps_w: BTreeSet<Int> = BTreeSet::new();
    let mut places = class.support();
    for p in prime_support(&det_w) {
        places.insert(p);
    }
    for p in places {
        let eps_hyper = if hyper_exp % 2 == 0 {
            1
        } else {
            hilbert_zz(&minus_one, &minus_one, &p)
        };
        let symbol =
            eps_hyper * class.eps_at_prime(&p) * hilbert_zz(&class.det, &det_w, &p);
        if symbol == -1 {
            eps_w.insert(p);
        }
    }

    match m {
        0 => {
            if det_w.is_one() && eps_w.is_empty() {
                None
            } else {
                Some("rank-boundary-class-mismatch")
            }
        }
        1 => {
            // A unary form has trivial Hasse symbol everywhere.
            if eps_w.is_empty() {
                None
            } else {
                Some("unary-complement-hasse-obstruction")
            }
        }
        _ => {
            // A binary form with determinant class d has Hasse symbol
            // (a, -d)_p for its first diagonal entry a, which is forced to
            // +1 wherever -d is a p-adic square.
            let minus_det_w = -det_w.clone();
            if eps_w.iter().any(|p| is_square_in_qp(&minus_det_w, p)) {
                return Some("binary-complement-obstruction");
            }
            let target = RationalClass {
                rank: 2,
                det: det_w.clone(),
                sig: sig_w,
                eps_minus: eps_w,
            };
            find_binary_witness(&target);
            None
        }
    }
}

/// Exhibit a diagonal binary form `⟨a, det·a⟩` with the prescribed class
/// data, so that every positive rank-2 realizability answer is backed by an
/// explicit witness. Panics if no witness exists below a generous bound,
/// which would mean the realizability analysis above is wrong.
fn find_binary_witness(target: &RationalClass) -> Vec<Int> {
    let signs: &[i64] = match target.sig {
        (2, 0) => &[1],
        (0, 2) => &[-1],
        _ => &[1, -1],
    };
    for magnitude in 1i64..=1_000_000 {
        let sf = squarefree_part(&Int::from(magnitude));
        if sf != Int::from(magnitude) {
            continue;
        }
        for sign in signs {
            let a = Int::from(sign * magnitude);
            let b = squarefree_part(&(&target.det * &a));
            let candidate = RationalClass::from_diag_classes(&[a.clone(), b.clone()]);
            if candidate == *target {
                return vec![a, b];
            }
        }
    }
    unreachable!("realizable binary class must have a small diagonal witness");
}

/// Certificate that one form is equivalent to a squarefree scaling of
/// another: `invariants(scale(Q2, n))` equals `invariants(Q1)` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleCertificate {
    pub n: Int,
    pub source: FormInvariants,
    pub target_scaled: FormInvariants,
}

/// Least positive squarefree `n` making `Q1` equivalent to `scale(Q2, n)`,
/// searched over squarefree products of the primes visible in the two
/// forms (the primes of `2·det(Q1)·det(Q2)` together with the primes of the
/// diagonal square classes of both forms).
pub fn similar_scale(q1: &Lattice, q2: &Lattice) -> Option<ScaleCertificate> {
    if q1.rank() != q2.rank() {
        return None;
    }
    if q1.signature() != q2.signature() {
        return None;
    }
    let class1 = RationalClass::of(q1);
    let (diag1, _) = diagonalize(q1);
    let (diag2, _) = diagonalize(q2);
    let classes2: Vec<Int> = diag2.iter().map(square_class).collect();

    let mut primes: BTreeSet<Int> = BTreeSet::new();
    primes.insert(Int::from(2));
    for d in [q1.det(), q2.det()] {
        for p in prime_support(&(d.numer() * d.denom())) {
            primes.insert(p);
        }
    }
    for c in diag1.iter().chain(diag2.iter()).map(|e| square_class(e)) {
        for p in prime_support(&c) {
            primes.insert(p);
        }
    }

    let primes: Vec<Int> = primes.into_iter().collect();
    assert!(
        primes.len() < 32,
        "scale search over {} primes is not feasible",
        primes.len()
    );
    let mut candidates: BTreeSet<Int> = BTreeSet::new();
    for mask in 0u32..(1u32 << primes.len()) {
        let mut n = Int::one();
        for (i, p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                n *= p;
            }
        }
        candidates.insert(n);
    }

    for n in candidates {
        let scaled: Vec<Int> = classes2
            .iter()
            .map(|c| squarefree_part(&(c * &n)))
            .collect();
        if RationalClass::from_diag_classes(&scaled) == class1 {
            let rat_n = Rat::from(n.clone());
            let scaled_lattice = q2
                .scale(&rat_n)
                .expect("candidate scales are positive");
            let certificate = ScaleCertificate {
                n,
                source: invariants(q1),
                target_scaled: invariants(&scaled_lattice),
            };
            debug_assert_eq!(certificate.source, certificate.target_scaled);
            return Some(certificate);
        }
    }
    None
}
