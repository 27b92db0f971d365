//! Lattices presented by symmetric nondegenerate rational Gram matrices,
//! the named lattices used throughout the crate, duals, and discriminant
//! groups with their torsion bilinear/quadratic values.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::LatticeError;
use crate::mat::QMat;

/// A lattice of finite rank given by its Gram matrix with respect to some
/// basis. The matrix must be symmetric and nondegenerate; rationals are
/// allowed so duals and rescalings stay inside the type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: QMat,
}

/// The lattices addressable by name on the command line and in input files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedLattice {
    /// Hyperbolic plane `[[0,1],[1,0]]`.
    U,
    /// Rank-8 negative definite even unimodular lattice.
    E8,
    /// `E8` with the form doubled.
    E8Doubled,
    /// `E8(2) + U + U + U`, rank 14, signature (3, 11).
    Lambda0,
    /// The dual of `Lambda0` in its natural half-integral presentation.
    Lambda1,
    /// Three orthogonal copies of the doubled hyperbolic plane.
    U2Cubed,
}

pub const NAMED_LATTICE_NAMES: [&str; 6] = ["U", "E8", "E8(2)", "Lambda0", "Lambda1", "U(2)^3"];

impl NamedLattice {
    pub fn parse(name: &str) -> Option<NamedLattice> {
        match name {
            "U" => Some(NamedLattice::U),
            "E8" => Some(NamedLattice::E8),
            "E8(2)" => Some(NamedLattice::E8Doubled),
            "Lambda0" => Some(NamedLattice::Lambda0),
            "Lambda1" => Some(NamedLattice::Lambda1),
            "U(2)^3" => Some(NamedLattice::U2Cubed),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NamedLattice::U => "U",
            NamedLattice::E8 => "E8",
            NamedLattice::E8Doubled => "E8(2)",
            NamedLattice::Lambda0 => "Lambda0",
            NamedLattice::Lambda1 => "Lambda1",
            NamedLattice::U2Cubed => "U(2)^3",
        }
    }

    pub fn lattice(&self) -> Lattice {
        match self {
            NamedLattice::U => Lattice::hyperbolic_plane(),
            NamedLattice::E8 => Lattice::e8(),
            NamedLattice::E8Doubled => Lattice::e8()
                .scale(&BigRational::from(BigInt::from(2)))
                .expect("scaling by 2"),
            NamedLattice::Lambda0 => Lattice::lambda0(),
            NamedLattice::Lambda1 => Lattice::lambda1(),
            NamedLattice::U2Cubed => {
                let u2 = Lattice::hyperbolic_plane()
                    .scale(&BigRational::from(BigInt::from(2)))
                    .expect("scaling by 2");
                u2.direct_sum(&u2).direct_sum(&u2)
            }
        }
    }
}

/// Look up a lattice by its canonical name.
pub fn make_named(name: &str) -> Result<Lattice, LatticeError> {
    NamedLattice::parse(name)
        .map(|n| n.lattice())
        .ok_or_else(|| LatticeError::UnknownName(name.to_string()))
}

impl Lattice {
    /// Validates symmetry, squareness and nondegeneracy. Rank 0 is allowed.
    pub fn new(gram: QMat) -> Result<Lattice, LatticeError> {
        if gram.rows != gram.cols {
            return Err(LatticeError::NotSquare);
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if gram.rows > 0 && gram.det().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Lattice { gram })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Lattice, LatticeError> {
        Lattice::new(QMat::from_i64(rows))
    }

    /// Rank-n lattice with a diagonal Gram matrix.
    pub fn diagonal(entries: &[i64]) -> Result<Lattice, LatticeError> {
        let n = entries.len();
        let mut g = QMat::zero(n, n);
        for (i, &e) in entries.iter().enumerate() {
            g[(i, i)] = BigRational::from(BigInt::from(e));
        }
        Lattice::new(g)
    }

    pub fn hyperbolic_plane() -> Lattice {
        Lattice::from_i64(&[&[0, 1], &[1, 0]]).expect("U is nondegenerate")
    }

    /// `U + ... + U`, k copies.
    pub fn hyperbolic(k: usize) -> Lattice {
        let mut l = Lattice::new(QMat::zero(0, 0)).expect("rank 0");
        for _ in 0..k {
            l = l.direct_sum(&Lattice::hyperbolic_plane());
        }
        l
    }

    /// Negative definite even unimodular lattice of rank 8: diagonal -2,
    /// off-diagonal +1 along the edges of the usual rank-8 diagram
    /// (chain 1-2-3-4-5-6-7 with node 8 attached at 3, 1-indexed).
    pub fn e8() -> Lattice {
        let mut g = QMat::zero(8, 8);
        for i in 0..8 {
            g[(i, i)] = BigRational::from(BigInt::from(-2));
        }
        let edges = [(1, 2), (2, 3), (3, 8), (3, 4), (4, 5), (5, 6), (6, 7)];
        for (a, b) in edges {
            let (i, j) = (a - 1, b - 1);
            g[(i, j)] = BigRational::from(BigInt::from(1));
            g[(j, i)] = BigRational::from(BigInt::from(1));
        }
        Lattice::new(g).expect("E8 is nondegenerate")
    }

    /// `E8(2) + U + U + U` in the basis `v1..v8, e1, f1, e2, f2, e3, f3`.
    pub fn lambda0() -> Lattice {
        let e8_2 = NamedLattice::E8Doubled.lattice();
        e8_2.direct_sum(&Lattice::hyperbolic(3))
    }

    /// Dual of `lambda0` in its natural presentation: the first eight basis
    /// vectors are halved, giving Gram block `(1/4) E8(2)`, and the
    /// hyperbolic part is self-dual.
    pub fn lambda1() -> Lattice {
        let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
        let e8_2 = NamedLattice::E8Doubled.lattice();
        let dual_block = Lattice::new(e8_2.gram.scale(&quarter)).expect("nondegenerate");
        dual_block.direct_sum(&Lattice::hyperbolic(3))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn det(&self) -> BigRational {
        self.gram.det()
    }

    /// Signature (positive count, negative count) via exact congruence
    /// diagonalization; nondegeneracy means the counts sum to the rank.
    pub fn signature(&self) -> (usize, usize) {
        let (d, _) = self
            .gram
            .congruence_diagonalize()
            .expect("gram is symmetric");
        let pos = d.iter().filter(|x| x.is_positive()).count();
        let neg = d.iter().filter(|x| x.is_negative()).count();
        debug_assert_eq!(pos + neg, self.rank());
        (pos, neg)
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    /// Integral with even diagonal.
    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.rank()).all(|i| self.gram[(i, i)].to_integer().is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_integral() && self.det().to_integer().abs().is_one()
    }

    /// Same basis, form multiplied by a positive rational.
    pub fn scale(&self, s: &BigRational) -> Result<Lattice, LatticeError> {
        if !s.is_positive() {
            return Err(LatticeError::NonPositiveScale);
        }
        Lattice::new(self.gram.scale(s))
    }

    /// Orthogonal direct sum (block diagonal Gram).
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (n, m) = (self.rank(), other.rank());
        let mut g = QMat::zero(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[(n + i, n + j)] = other.gram[(i, j)].clone();
            }
        }
        Lattice::new(g).expect("direct sum of nondegenerate lattices")
    }

    /// The dual lattice in its dual basis; its Gram matrix is the inverse of
    /// this one. Expressed in the original basis the dual basis vectors are
    /// the rows of the inverse Gram matrix (see `dual_basis_rows`).
    pub fn dual(&self) -> Lattice {
        let inv = self.gram.inverse().expect("nondegenerate");
        Lattice::new(inv).expect("inverse of symmetric is symmetric")
    }

    /// Coordinates of the dual basis vectors with respect to this lattice's
    /// basis: row i pairs to 1 with basis vector i and to 0 with the others.
    pub fn dual_basis_rows(&self) -> QMat {
        self.gram.inverse().expect("nondegenerate")
    }

    /// Pairing of two coordinate vectors under the Gram matrix.
    pub fn inner(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.rank());
        assert_eq!(y.len(), self.rank());
        let mut acc = BigRational::zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..y.len() {
                if y[j].is_zero() {
                    continue;
                }
                acc += &x[i] * &self.gram[(i, j)] * &y[j];
            }
        }
        acc
    }

    pub fn norm(&self, x: &[BigRational]) -> BigRational {
        self.inner(x, x)
    }

    /// Discriminant group `L*/L` of an integral lattice, with generators in
    /// the coordinates of `L`, the torsion bilinear form with values in
    /// `[0, 1)`, and the torsion quadratic form with values in `[0, 2)` when
    /// the lattice is even (in `[0, 1)` otherwise, where only the mod-1
    /// class is well defined).
    pub fn discriminant_group(&self) -> Result<FiniteQuadraticModule, LatticeError> {
        if !self.is_integral() {
            return Err(LatticeError::NotIntegral);
        }
        let g = self.gram.to_z().expect("integral");
        let sm = g.smith();
        let n = self.rank();
        let mut factors = Vec::new();
        let mut gens: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..n {
            let d = sm.s[(i, i)].clone();
            debug_assert!(!d.is_zero(), "nondegenerate gram has full-rank smith form");
            if d.is_one() {
                continue;
            }
            let row: Vec<BigRational> = sm
                .u
                .row(i)
                .iter()
                .map(|x| BigRational::new(x.clone(), d.clone()))
                .collect();
            factors.push(d);
            gens.push(row);
        }
        let order = factors.iter().fold(BigInt::one(), |a, b| a * b);
        let k = factors.len();
        let gen_mat = if k == 0 {
            QMat::zero(0, n)
        } else {
            QMat::from_rows(gens)
        };
        let even = self.is_even();
        let mut bilinear = QMat::zero(k, k);
        let mut quadratic = Vec::with_capacity(k);
        for i in 0..k {
            for j in 0..k {
                let v = self.inner(gen_mat.row(i), gen_mat.row(j));
                bilinear[(i, j)] = rat_mod(&v, 1);
            }
            let q = self.norm(gen_mat.row(i));
            quadratic.push(if even { rat_mod(&q, 2) } else { rat_mod(&q, 1) });
        }
        Ok(FiniteQuadraticModule {
            invariant_factors: factors,
            generators: gen_mat,
            bilinear,
            quadratic,
            order,
        })
    }

    /// Fingerprint of easily computed isometry invariants, used to compare
    /// lattices up to isometry in tests and reports: rank, determinant,
    /// signature, parity, and discriminant invariant factors (for integral
    /// lattices).
    pub fn fingerprint(&self) -> String {
        let (p, n) = self.signature();
        let disc = if self.is_integral() {
            let f = self
                .discriminant_group()
                .expect("integral")
                .invariant_factors;
            let parts: Vec<String> = f.iter().map(|d| d.to_string()).collect();
            format!("[{}]", parts.join(","))
        } else {
            "-".to_string()
        };
        format!(
            "rank={} det={} sig=({},{}) even={} disc={}",
            self.rank(),
            self.det(),
            p,
            n,
            self.is_even(),
            disc
        )
    }
}

/// Reduce a rational into `[0, m)` for a small positive integer modulus.
pub(crate) fn rat_mod(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from(BigInt::from(m));
    let q = (x / &m).floor();
    x - q * m
}

/// A finite abelian group with a `Q/Z`-valued symmetric pairing and a
/// `Q/2Z`-valued quadratic form, presented by generators of coprime-power
/// cyclic orders given by the invariant factor chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuadraticModule {
    /// Cyclic orders `d_1 | d_2 | ...`, all > 1.
    pub invariant_factors: Vec<BigInt>,
    /// Row i generates the cyclic factor of order `invariant_factors[i]`,
    /// written in the coordinates of the underlying lattice.
    pub generators: QMat,
    /// Pairing values of the generators, reduced into `[0, 1)`.
    pub bilinear: QMat,
    /// Norm values of the generators, reduced into `[0, 2)` (even case).
    pub quadratic: Vec<BigRational>,
    pub order: BigInt,
}

impl FiniteQuadraticModule {
    /// Minimal number of generators of the p-primary part: the count of
    /// invariant factors divisible by p.
    pub fn p_length(&self, p: &BigInt) -> usize {
        self.invariant_factors
            .iter()
            .filter(|d| (*d % p).is_zero())
            .count()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}
