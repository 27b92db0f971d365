//! Pinned integral vectors inside the rank-14 lattice `Lambda0`, together
//! with machine checks of every property claimed for them.
//!
//! Two families are recorded.  The first is a sextuple spanning a copy of
//! `U(2)^3` that is primitive in `Lambda0` and contained in `2*Lambda1`;
//! after the base change `m_i -> l_i + m_i` its Gram matrix is exactly twice
//! the standard `U^3` Gram matrix, which is what makes the sandwich
//! construction in [`crate::criteria::sandwich_embedding`] a fixed, explicit
//! isometry rather than a search.  The second is a quadruple spanning a
//! primitive sublattice with Gram `U(4) + <8> + <-8>` whose quotient lattice
//! carries a 2-length obstruction; it demonstrates that the quotient
//! construction is genuinely one-directional.
//!
//! Every check is an exact computation; nothing here is trusted from the
//! construction of the constants themselves.

use num::{BigInt, BigRational, One, Zero};

use crate::criteria::{self, Certificate, Verdict};
use crate::embedding::embed;
use crate::error::LatticeError;
use crate::lattice::Lattice;
use crate::mat::{QMat, ZMat};

type Int = BigInt;
type Rat = BigRational;

// Coordinates follow the `Lambda0` basis order: the eight `E8(2)` generators
// v1..v8 first, then the three hyperbolic pairs e1,f1,e2,f2,e3,f3.
const L1: [i64; 14] = [0, 0, 0, 0, -1, 0, 1, 0, 2, 2, 0, 0, 0, 0];
const M1: [i64; 14] = [0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0];
const L2: [i64; 14] = [1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 2, 2, 0, 0];
const M2: [i64; 14] = [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0];
const L3: [i64; 14] = [0, 0, 0, 0, 0, 0, 1, 1, 2, 0, 2, 0, 2, 2];
const M3: [i64; 14] = [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0];

const W1: [i64; 14] = [0, 0, 1, 0, 0, 0, 1, 0, 2, -2, 4, 2, 0, 0];
const W2: [i64; 14] = [0, -1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 2, -2, -2];
const W3: [i64; 14] = [1, 0, -1, 0, 0, 0, 0, 0, 4, 2, 0, 0, 0, 0];
const W4: [i64; 14] = [0, 0, 0, 1, 0, 0, 0, 1, 2, 0, 0, 0, 0, 0];

fn int_row(a: &[i64; 14]) -> Vec<Int> {
    a.iter().map(|&c| Int::from(c)).collect()
}

fn sum_row(a: &[i64; 14], b: &[i64; 14]) -> Vec<Int> {
    a.iter().zip(b.iter()).map(|(&x, &y)| Int::from(x + y)).collect()
}

/// The six vectors `l1, m1, l2, m2, l3, m3` as rows, in `Lambda0`
/// coordinates.  Consecutive pairs have Gram `[[0,2],[2,-4]]` and distinct
/// pairs are orthogonal.
pub fn sandwich_pairs() -> ZMat {
    ZMat::from_rows(vec![
        int_row(&L1),
        int_row(&M1),
        int_row(&L2),
        int_row(&M2),
        int_row(&L3),
        int_row(&M3),
    ])
}

/// The base-changed rows `l1, l1+m1, l2, l2+m2, l3, l3+m3`.  Their Gram
/// matrix is exactly twice the standard `U^3` Gram matrix, so composing an
/// integral coordinate matrix with these rows doubles a form while moving it
/// from `U^3` into `Lambda0`.
pub fn sandwich_basis() -> ZMat {
    ZMat::from_rows(vec![
        int_row(&L1),
        sum_row(&L1, &M1),
        int_row(&L2),
        sum_row(&L2, &M2),
        int_row(&L3),
        sum_row(&L3, &M3),
    ])
}

/// The four vectors `w1..w4` spanning the asymmetry example, in `Lambda0`
/// coordinates.  Their Gram matrix is `U(4) + <8> + <-8>`.
pub fn asymmetry_basis() -> ZMat {
    ZMat::from_rows(vec![int_row(&W1), int_row(&W2), int_row(&W3), int_row(&W4)])
}

/// One verified claim: a human-readable label and whether the exact
/// computation confirmed it.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub pass: bool,
}

/// A bundle of checks about one pinned construction.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn new(title: &'static str) -> VerificationReport {
        VerificationReport { title, checks: Vec::new() }
    }

    fn push(&mut self, label: &str, pass: bool) {
        self.checks.push(Check { label: label.to_string(), pass });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Unit row of length 14 with a single 1 at `i`.
fn unit14(i: usize) -> Vec<Int> {
    let mut row = vec![Int::from(0); 14];
    row[i] = Int::one();
    row
}

/// Verify every claim about the `U(2)^3` sandwich witness: pairwise Gram
/// blocks, orthogonality, primitivity, extendability to a basis of
/// `Lambda0`, the doubled-`U^3` Gram after base change, and containment in
/// `2*Lambda1`.
pub fn verify_sandwich_witness() -> Result<VerificationReport, LatticeError> {
    let mut report = VerificationReport::new("sandwich witness in Lambda0");
    let l0 = Lattice::lambda0();
    let pairs = sandwich_pairs();

    let gram = pairs.to_q().gram_with(l0.gram());
    let expected_pairs = QMat::from_i64(&[
        &[0, 2, 0, 0, 0, 0],
        &[2, -4, 0, 0, 0, 0],
        &[0, 0, 0, 2, 0, 0],
        &[0, 0, 2, -4, 0, 0],
        &[0, 0, 0, 0, 0, 2],
        &[0, 0, 0, 0, 2, -4],
    ]);
    report.push(
        "each pair (l_i, m_i) has Gram [[0,2],[2,-4]] and distinct pairs are orthogonal",
        gram == expected_pairs,
    );

    let span = embed(&l0, pairs.to_q())?;
    report.push("the six vectors span a primitive sublattice of Lambda0", span.is_primitive()?);

    // Extend by v3, v5 and the six hyperbolic generators; the 14x14 change
    // of basis must be unimodular.
    let mut ext_rows: Vec<Vec<Int>> = (0..6).map(|i| pairs.row_vec(i)).collect();
    for i in [2usize, 4, 8, 9, 10, 11, 12, 13] {
        ext_rows.push(unit14(i));
    }
    let ext = ZMat::from_rows(ext_rows);
    report.push(
        "adding v3, v5 and the hyperbolic generators extends them to a basis of Lambda0",
        ext.is_unimodular(),
    );

    let doubled = sandwich_basis().to_q().gram_with(l0.gram());
    let u3_doubled = Lattice::hyperbolic(3).gram().scale(&Rat::from(Int::from(2)));
    report.push(
        "after the base change m_i -> l_i + m_i the Gram matrix is exactly 2 * U^3",
        doubled == u3_doubled,
    );

    // x lies in 2*Lambda1 = 2*(dual of Lambda0) iff x pairs evenly with
    // every basis vector of Lambda0.
    let pairings = pairs.to_q().mul(l0.gram());
    let all_even = (0..6).all(|i| {
        pairings.row(i).iter().all(|e| {
            e.is_integer() && (e.to_integer() % Int::from(2)).is_zero()
        })
    });
    report.push("every vector pairs evenly with Lambda0, so the span lies in 2 * Lambda1", all_even);

    Ok(report)
}

/// Verify every claim about the quotient-asymmetry example: the Gram matrix
/// of the quadruple, primitivity, the exact half-lattice intersection with
/// `Lambda1`, the fingerprint of the quotient lattice, and the 2-length
/// obstruction carried by that quotient.
pub fn verify_quotient_asymmetry() -> Result<VerificationReport, LatticeError> {
    let mut report = VerificationReport::new("quotient asymmetry example");
    let l0 = Lattice::lambda0();
    let w = asymmetry_basis();
    let span = embed(&l0, w.to_q())?;

    let expected = Lattice::from_i64(&[
        &[0, 4, 0, 0],
        &[4, 0, 0, 0],
        &[0, 0, 8, 0],
        &[0, 0, 0, -8],
    ])?;
    report.push("the four vectors have Gram U(4) + <8> + <-8>", *span.sub_gram() == *expected.gram());
    report.push("the span is primitive in Lambda0", span.is_primitive()?);

    let intersection = span.intersect_with_scaled_dual(&Rat::one())?;
    let half = embed(&l0, w.to_q().scale(&Rat::new(Int::one(), Int::from(2))))?;
    report.push(
        "intersecting the rational span with Lambda1 gives exactly half the original basis",
        intersection.span_equals(&half),
    );

    let quotient_model = Lattice::from_i64(&[
        &[0, 2, 0, 0],
        &[2, 0, 0, 0],
        &[0, 0, 4, 0],
        &[0, 0, 0, -4],
    ])?;
    let nq = criteria::nikulin_quotient(&span)?;
    report.push(
        "the quotient lattice matches U(2) + <4> + <-4> in fingerprint and rational class",
        criteria::same_fingerprint(&nq.quotient, &quotient_model),
    );
    report.push(
        "the quotient chain containments hold on both sides",
        nq.scaled_input_contained && nq.doubled_quotient_contained,
    );

    let decision = criteria::double_quotient_obstruction(&quotient_model)?;
    let cert_ok = matches!(
        decision.certificate,
        Some(Certificate::Obstruction { rank: 4, two_length: 4 })
    );
    report.push(
        "the quotient lattice carries the 2-length obstruction (rank 4, 2-length 4 > 2)",
        decision.verdict == Verdict::Yes && cert_ok,
    );

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_witness_checks_all_pass() {
        let report = verify_sandwich_witness().unwrap();
        for check in &report.checks {
            assert!(check.pass, "failed: {}", check.label);
        }
        assert_eq!(report.checks.len(), 5);
    }

    #[test]
    fn asymmetry_checks_all_pass() {
        let report = verify_quotient_asymmetry().unwrap();
        for check in &report.checks {
            assert!(check.pass, "failed: {}", check.label);
        }
        assert_eq!(report.checks.len(), 6);
    }

    #[test]
    fn sandwich_basis_is_the_claimed_base_change() {
        // The base change only adds l_i to m_i; spans must agree.
        let l0 = Lattice::lambda0();
        let a = embed(&l0, sandwich_pairs().to_q()).unwrap();
        let b = embed(&l0, sandwich_basis().to_q()).unwrap();
        assert!(a.span_equals(&b));
        assert!(a.contains(&b) && b.contains(&a));
    }
}
