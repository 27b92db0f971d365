//! Sublattices carried with explicit coordinates inside a fixed ambient
//! lattice: primitivity, saturation, orthogonal complements and projections,
//! finite quotient groups, and intersection with scaled duals of the rank-14
//! ambient lattice.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::LatticeError;
use crate::lattice::Lattice;
use crate::mat::{QMat, ZMat};

/// A lattice realized by coordinate row vectors inside an ambient lattice.
/// Rows are linearly independent; rational rows are permitted (they arise
/// from duals and dual-intersections), integral rows mean the object is an
/// honest sublattice of the ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeEmbedding {
    ambient: Lattice,
    coords: QMat,
    sub_gram: QMat,
}

/// Result of orthogonally projecting a sublattice onto a block summand.
#[derive(Debug, Clone)]
pub struct ProjectionOutcome {
    /// The image lattice inside the summand, with a basis extracted from the
    /// projected generators.
    pub image: SublatticeEmbedding,
    /// Whether the projection preserved the rank.
    pub injective: bool,
}

/// Construct an embedding after validating independence and dimensions.
pub fn embed(ambient: &Lattice, rows: QMat) -> Result<SublatticeEmbedding, LatticeError> {
    if rows.cols != ambient.rank() {
        return Err(LatticeError::DimensionMismatch(format!(
            "rows have {} columns, ambient has rank {}",
            rows.cols,
            ambient.rank()
        )));
    }
    if rows.rank() != rows.rows {
        return Err(LatticeError::DependentRows);
    }
    let sub_gram = rows.gram_with(ambient.gram());
    Ok(SublatticeEmbedding {
        ambient: ambient.clone(),
        coords: rows,
        sub_gram,
    })
}

/// Convenience constructor from small integer rows.
pub fn embed_i64(ambient: &Lattice, rows: &[&[i64]]) -> Result<SublatticeEmbedding, LatticeError> {
    embed(ambient, QMat::from_i64(rows))
}

/// The whole ambient lattice as a sublattice of itself.
pub fn identity_embedding(ambient: &Lattice) -> SublatticeEmbedding {
    embed(ambient, QMat::identity(ambient.rank())).expect("identity rows are independent")
}

impl Lattice {
    /// The dual lattice presented inside `self ⊗ Q`: its basis rows are the
    /// rows of the inverse Gram matrix, pairing integrally with this lattice.
    pub fn dual_embedding(&self) -> SublatticeEmbedding {
        embed(self, self.dual_basis_rows()).expect("dual basis is independent")
    }
}

impl SublatticeEmbedding {
    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn coords(&self) -> &QMat {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.rows
    }

    /// Raw Gram matrix of the coordinate rows; may be degenerate (e.g. the
    /// image of a projection, or an isotropic line).
    pub fn sub_gram(&self) -> &QMat {
        &self.sub_gram
    }

    /// The abstract lattice carried by this embedding; errors when the
    /// induced form is degenerate.
    pub fn lattice(&self) -> Result<Lattice, LatticeError> {
        Lattice::new(self.sub_gram.clone())
    }

    pub fn is_integral_coords(&self) -> bool {
        self.coords.is_integral()
    }

    fn integral_coords(&self) -> Result<ZMat, LatticeError> {
        self.coords.to_z().ok_or(LatticeError::NotIntegral)
    }

    /// A sublattice is primitive when the ambient quotient by it is
    /// torsion-free, equivalently when the Smith form of its coordinate
    /// matrix has all invariant factors equal to 1.
    pub fn is_primitive(&self) -> Result<bool, LatticeError> {
        let c = self.integral_coords()?;
        Ok(c.invariant_factors().is_empty())
    }

    /// Saturation: the smallest primitive sublattice of the ambient
    /// containing this one, `span_Q(S) ∩ ambient`.
    pub fn primitive_closure(&self) -> Result<SublatticeEmbedding, LatticeError> {
        let c = self.integral_coords()?;
        let e = c.smith_ext();
        let k = self.rank();
        // c = u_inv * s * v_inv; the rational row span meets the integer
        // lattice exactly in the span of the first k rows of v_inv.
        let rows: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                e.v_inv
                    .row(i)
                    .iter()
                    .map(|x| BigRational::from(x.clone()))
                    .collect()
            })
            .collect();
        let mat = if k == 0 {
            QMat::zero(0, self.ambient.rank())
        } else {
            QMat::from_rows(rows)
        };
        embed(&self.ambient, mat)
    }

    /// `{ x ∈ ambient : (x, s) = 0 for all s in this sublattice }`, returned
    /// with an integral primitive basis.
    pub fn orthogonal_complement(&self) -> SublatticeEmbedding {
        // Solve x * (G * C^T) = 0 over Q, then saturate.
        let pairing = self.ambient.gram().mul(&self.coords.transpose());
        let kernel = pairing.left_kernel();
        if kernel.rows == 0 {
            return embed(&self.ambient, QMat::zero(0, self.ambient.rank()))
                .expect("empty row set");
        }
        let (_, z) = kernel.clear_denominators();
        let integral = embed(&self.ambient, z.to_q()).expect("kernel rows independent");
        integral
            .primitive_closure()
            .expect("integral coords saturate")
    }

    /// Orthogonal projection onto the block summand spanned by the ambient
    /// basis vectors listed in `indices`. Requires the ambient Gram to be
    /// block diagonal across the cut; in an orthogonal splitting the
    /// projection simply restricts coordinates.
    pub fn orthogonal_projection(
        &self,
        indices: &[usize],
    ) -> Result<ProjectionOutcome, LatticeError> {
        let n = self.ambient.rank();
        let mut inside = vec![false; n];
        for &i in indices {
            if i >= n {
                return Err(LatticeError::DimensionMismatch(format!(
                    "summand index {i} out of range for rank {n}"
                )));
            }
            if inside[i] {
                return Err(LatticeError::DimensionMismatch(format!(
                    "summand index {i} repeated"
                )));
            }
            inside[i] = true;
        }
        let g = self.ambient.gram();
        for i in 0..n {
            for j in 0..n {
                if inside[i] && !inside[j] && !g[(i, j)].is_zero() {
                    return Err(LatticeError::NotASummandCut);
                }
            }
        }
        // Summand lattice in the order the indices were given.
        let mut sub_g = QMat::zero(indices.len(), indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                sub_g[(a, b)] = g[(i, j)].clone();
            }
        }
        let summand = Lattice::new(sub_g)?;
        // Projected generators: restrict each row to the summand coordinates.
        let mut proj = QMat::zero(self.rank(), indices.len());
        for r in 0..self.rank() {
            for (a, &i) in indices.iter().enumerate() {
                proj[(r, a)] = self.coords[(r, i)].clone();
            }
        }
        // Extract a basis of the generated module (generators may be
        // dependent after projection).
        let basis = module_basis(&proj);
        let injective = basis.rows == self.rank();
        let image = embed(&summand, basis)?;
        Ok(ProjectionOutcome { image, injective })
    }

    /// Invariant factors (> 1) of `super / self` for a full-rank containment
    /// of equal-rank embeddings in the same ambient lattice.
    pub fn quotient_group(&self, super_: &SublatticeEmbedding) -> Result<Vec<BigInt>, LatticeError> {
        if self.ambient != super_.ambient {
            return Err(LatticeError::AmbientMismatch);
        }
        if self.rank() != super_.rank() {
            return Err(LatticeError::RankMismatch);
        }
        // Express our rows in the super-basis: X * super.coords = self.coords.
        let mut x_rows = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let y = super_
                .coords
                .solve_left(self.coords.row(i))
                .ok_or(LatticeError::NotSublattice)?;
            x_rows.push(y);
        }
        let x = if x_rows.is_empty() {
            QMat::zero(0, 0)
        } else {
            QMat::from_rows(x_rows)
        };
        let xz = x.to_z().ok_or(LatticeError::NotSublattice)?;
        Ok(xz.invariant_factors())
    }

    /// True when `other`'s rows all lie in the integer row span of this
    /// embedding (both in the same ambient coordinates).
    pub fn contains(&self, other: &SublatticeEmbedding) -> bool {
        other
            .coords
            .to_rows()
            .iter()
            .all(|row| self.contains_vector(row))
    }

    /// Membership of an ambient-coordinate vector in the integer row span.
    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        match self.coords.solve_left(v) {
            Some(y) => {
                let ym = QMat::from_rows(vec![y.clone()]);
                ym.mul(&self.coords).row_vec(0) == v && y.iter().all(|c| c.is_integer())
            }
            None => false,
        }
    }

    /// Equality of the generated modules (not of the chosen bases).
    pub fn span_equals(&self, other: &SublatticeEmbedding) -> bool {
        self.ambient == other.ambient
            && span_canonical(&self.coords) == span_canonical(&other.coords)
    }

    /// Intersect `span_Q(self)` with `k · dual(ambient)` — the vectors of the
    /// rational span whose pairings with every ambient basis vector lie in
    /// `k·Z`. The ambient must be the rank-14 lattice `Lambda0`; its dual is
    /// `Lambda1` and the scaled copies `k·Lambda1` are exactly what the
    /// quotient construction needs.
    pub fn intersect_with_scaled_dual(
        &self,
        k: &BigRational,
    ) -> Result<SublatticeEmbedding, LatticeError> {
        if self.ambient.gram() != Lattice::lambda0().gram() {
            return Err(LatticeError::AmbientMismatch);
        }
        if !k.is_positive() {
            return Err(LatticeError::NonPositiveScale);
        }
        self.intersect_scaled_dual_unchecked(k)
    }

    /// Same computation without pinning the ambient; used internally where
    /// the ambient is under the caller's control.
    pub(crate) fn intersect_scaled_dual_unchecked(
        &self,
        k: &BigRational,
    ) -> Result<SublatticeEmbedding, LatticeError> {
        // x = t·C lies in k·(dual ambient) iff t·(C·G/k) is integral.
        let a = self
            .coords
            .mul(self.ambient.gram())
            .scale(&(BigRational::one() / k));
        let (den, b) = a.clear_denominators();
        let e = b.smith_ext();
        let r = self.rank();
        // t·B ∈ den·Z^n  ⟺  t ∈ span of rows (den/d_i)·U_i.
        let mut rows = Vec::with_capacity(r);
        for i in 0..r {
            let d = e.s[(i, i)].clone();
            debug_assert!(!d.is_zero(), "full row rank");
            let factor = BigRational::new(den.clone(), d);
            let t_row: Vec<BigRational> = e
                .u
                .row(i)
                .iter()
                .map(|x| BigRational::from(x.clone()) * &factor)
                .collect();
            // Ambient coordinates: t · C.
            let t_mat = QMat::from_rows(vec![t_row]);
            rows.push(t_mat.mul(&self.coords).row_vec(0));
        }
        let mat = if r == 0 {
            QMat::zero(0, self.ambient.rank())
        } else {
            QMat::from_rows(rows)
        };
        embed(&self.ambient, mat)
    }
}

/// Basis of the module generated by possibly dependent rational rows: clear
/// denominators, take the Hermite form, scale back.
pub(crate) fn module_basis(rows: &QMat) -> QMat {
    if rows.rows == 0 {
        return rows.clone();
    }
    let (den, z) = rows.clear_denominators();
    let h = z.hermite();
    let inv_den = BigRational::new(BigInt::one(), den);
    h.to_q().scale(&inv_den)
}

/// Canonical form identifying the Z-module generated by rational rows: the
/// module's minimal denominator (the lcm of entry denominators of any
/// generating set) together with the Hermite form after clearing it.
pub(crate) fn span_canonical(rows: &QMat) -> (BigInt, ZMat) {
    let (den, z) = rows.clear_denominators();
    (den, z.hermite())
}
