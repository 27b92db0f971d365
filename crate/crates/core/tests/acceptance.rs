//! The acceptance gate: eight end-to-end checks, each printing one
//! `criterion N (...): PASS` or `FAIL` line.  Run with
//! `cargo test --test acceptance -- --nocapture` to see every line.
//!
//! Each criterion pits a decision procedure against an independent route to
//! the same answer — a pinned hand-checked example, a brute-force search, a
//! certificate re-check, or an exhaustive scan — so a silent regression in
//! either route surfaces as a disagreement here.

use std::time::{Duration, Instant};

use num::{BigInt, BigRational};
use rand::Rng;

use k3lattice::corpus;
use k3lattice::criteria::{self, Certificate, Verdict};
use k3lattice::forms::{self, hilbert_symbol, Place};
use k3lattice::lattice::Lattice;
use k3lattice::num_util;
use k3lattice::witness;

type Int = BigInt;
type Rat = BigRational;

fn report(number: u8, name: &str, outcome: Result<(), String>) {
    match &outcome {
        Ok(()) => println!("criterion {number} ({name}): PASS"),
        Err(why) => println!("criterion {number} ({name}): FAIL - {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {number} ({name}): {why}");
    }
}

fn gram_string(l: &Lattice) -> String {
    let g = l.gram();
    let rows: Vec<String> = (0..g.rows)
        .map(|i| {
            let cells: Vec<String> = g.row(i).iter().map(|e| e.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

// ---------------------------------------------------------------------------
// 1. The pinned witness vectors verify, quickly.
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_pinned_witness_verification() {
    let start = Instant::now();
    let outcome = (|| {
        let reports = [
            witness::verify_sandwich_witness().map_err(|e| e.to_string())?,
            witness::verify_quotient_asymmetry().map_err(|e| e.to_string())?,
        ];
        for r in &reports {
            for check in &r.checks {
                if !check.pass {
                    return Err(format!("{}: check failed: {}", r.title, check.label));
                }
            }
        }
        let elapsed = start.elapsed();
        if elapsed >= Duration::from_secs(5) {
            return Err(format!("verification took {elapsed:?}, budget is 5 seconds"));
        }
        Ok(())
    })();
    report(1, "pinned witness vectors verify in under five seconds", outcome);
}

// ---------------------------------------------------------------------------
// 2. Hilbert symbols satisfy the product formula and bimultiplicativity.
// ---------------------------------------------------------------------------

fn support_places(values: &[&Int]) -> Vec<Place> {
    let mut prod = Int::from(2);
    for v in values {
        prod *= *v;
    }
    let mut places = vec![Place::Infinity];
    places.extend(num_util::prime_support(&prod).into_iter().map(Place::Prime));
    places
}

#[test]
fn criterion_2_hilbert_symbol_laws() {
    let outcome = (|| {
        let mut rng = corpus::rng(9002);
        let draw = |rng: &mut rand_chacha::ChaCha8Rng| loop {
            let v = rng.gen_range(-100i64..=100);
            if v != 0 {
                return Int::from(v);
            }
        };
        for case in 0..200 {
            let a = draw(&mut rng);
            let b = draw(&mut rng);
            let ra = Rat::from(a.clone());
            let rb = Rat::from(b.clone());
            let mut product = 1i8;
            for place in support_places(&[&a, &b]) {
                product *= hilbert_symbol(&ra, &rb, &place).map_err(|e| e.to_string())?;
            }
            if product != 1 {
                return Err(format!("case {case}: product over all places is {product} for a={a}, b={b}"));
            }
            // off the support every symbol is trivial (101 and 103 exceed |a|, |b|)
            for p in [101i64, 103] {
                let sym = hilbert_symbol(&ra, &rb, &Place::Prime(Int::from(p))).map_err(|e| e.to_string())?;
                if sym != 1 {
                    return Err(format!("case {case}: symbol at unramified prime {p} is {sym} for a={a}, b={b}"));
                }
            }
        }
        for case in 0..100 {
            let a1 = draw(&mut rng);
            let a2 = draw(&mut rng);
            let b = draw(&mut rng);
            let r1 = Rat::from(a1.clone());
            let r2 = Rat::from(a2.clone());
            let r12 = Rat::from(&a1 * &a2);
            let rb = Rat::from(b.clone());
            for place in support_places(&[&a1, &a2, &b]) {
                let lhs = hilbert_symbol(&r12, &rb, &place).map_err(|e| e.to_string())?;
                let rhs = hilbert_symbol(&r1, &rb, &place).map_err(|e| e.to_string())?
                    * hilbert_symbol(&r2, &rb, &place).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!(
                        "case {case}: bimultiplicativity fails at place {place} for a1={a1}, a2={a2}, b={b}"
                    ));
                }
            }
        }
        Ok(())
    })();
    report(2, "hilbert symbols obey the product formula and bimultiplicativity", outcome);
}

// ---------------------------------------------------------------------------
// 3. Rational isotropy agrees with a brute-force coordinate search.
// ---------------------------------------------------------------------------

/// Independent route: scan the whole box `[-bound, bound]^rank` for a
/// nonzero norm-zero vector, sharing no code with the rational test.
fn brute_isotropic(l: &Lattice, bound: i64) -> Option<Vec<i64>> {
    let r = l.rank();
    let g: Vec<Vec<i64>> = (0..r)
        .map(|i| l.gram().row(i).iter().map(|e| i64::try_from(&e.to_integer()).expect("small entry")).collect())
        .collect();
    let mut x = vec![-bound; r];
    loop {
        // each +/- pair is represented by the vector whose first nonzero
        // coordinate is positive
        if x.iter().find(|&&c| c != 0).is_some_and(|&f| f > 0) {
            let norm: i64 =
                (0..r).map(|i| x[i] * (0..r).map(|j| g[i][j] * x[j]).sum::<i64>()).sum();
            if norm == 0 {
                return Some(x);
            }
        }
        let mut i = r;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if x[i] < bound {
                x[i] += 1;
                for later in x.iter_mut().skip(i + 1) {
                    *later = -bound;
                }
                break;
            }
        }
    }
}

#[test]
fn criterion_3_isotropy_agrees_with_brute_force() {
    let start = Instant::now();
    let outcome = (|| {
        let mut rng = corpus::rng(9003);
        for case in 0..200 {
            let rank = 2 + case % 4;
            let l = corpus::random_even_form(&mut rng, rank);
            let expected = forms::is_isotropic(&l);
            let (p, q) = l.signature();
            if p == 0 || q == 0 {
                // definite forms have no nonzero null vectors at any height
                if expected {
                    return Err(format!("case {case}: definite form declared isotropic: {}", gram_string(&l)));
                }
                continue;
            }
            match (expected, brute_isotropic(&l, 30)) {
                (true, Some(_)) | (false, None) => {}
                (true, None) => {
                    return Err(format!(
                        "case {case}: declared isotropic but no null vector with coordinates up to 30: {}",
                        gram_string(&l)
                    ));
                }
                (false, Some(v)) => {
                    return Err(format!(
                        "case {case}: declared anisotropic but {v:?} has norm zero: {}",
                        gram_string(&l)
                    ));
                }
            }
        }
        let elapsed = start.elapsed();
        if elapsed >= Duration::from_secs(60) {
            return Err(format!("comparison took {elapsed:?}, budget is 60 seconds"));
        }
        Ok(())
    })();
    report(3, "rational isotropy agrees with brute-force box search", outcome);
}

// ---------------------------------------------------------------------------
// 4. The quotient chain holds on random primitive sublattices.
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_quotient_chain_on_random_sublattices() {
    let outcome = (|| {
        let mut rng = corpus::rng(9004);
        let l0 = Lattice::lambda0();
        for case in 0..50 {
            let rank = 1 + case % 5;
            let s = corpus::random_primitive_sublattice(&mut rng, &l0, rank);
            let nq = criteria::nikulin_quotient(&s).map_err(|e| format!("case {case}: {e}"))?;
            if !nq.scaled_input_contained {
                return Err(format!("case {case}: the input does not lie inside the intersection"));
            }
            if !nq.doubled_quotient_contained {
                return Err(format!("case {case}: twice the intersection does not lie inside the input"));
            }
            if nq.quotient.rank() != rank {
                return Err(format!("case {case}: quotient rank {} != input rank {rank}", nq.quotient.rank()));
            }
            if !nq.quotient.is_integral() || !nq.quotient.is_even() {
                return Err(format!("case {case}: quotient form is not even integral: {}", gram_string(&nq.quotient)));
            }
        }
        Ok(())
    })();
    report(4, "doubled intersections give even integral quotients on random sublattices", outcome);
}

// ---------------------------------------------------------------------------
// 5. The sandwich embedding and the quotient invert each other.
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_sandwich_round_trip() {
    let outcome = (|| {
        let mut rng = corpus::rng(9005);
        let u3 = Lattice::hyperbolic(3);
        let two = Rat::from(Int::from(2));
        for case in 0..20 {
            let rank = 1 + case % 5;
            let t = corpus::random_primitive_sublattice(&mut rng, &u3, rank);
            let image = criteria::sandwich_embedding(&t).map_err(|e| format!("case {case}: {e}"))?;
            if *image.sub_gram() != t.sub_gram().scale(&two) {
                return Err(format!("case {case}: the image does not carry the doubled form"));
            }
            if !image.is_primitive().map_err(|e| format!("case {case}: {e}"))? {
                return Err(format!("case {case}: the image is not primitive"));
            }
            // membership in twice the dual lattice: every pairing with the
            // ambient basis must be an even integer
            let pairings = image.coords().mul(image.ambient().gram());
            for i in 0..pairings.rows {
                for entry in pairings.row(i) {
                    if !entry.is_integer() || (entry.to_integer() % 2) != Int::from(0) {
                        return Err(format!("case {case}: the image leaves twice the dual lattice"));
                    }
                }
            }
            let nq = criteria::nikulin_quotient(&image).map_err(|e| format!("case {case}: {e}"))?;
            if !nq.scaled_input_contained || !nq.doubled_quotient_contained {
                return Err(format!("case {case}: the quotient chain fails on the image"));
            }
            let t_lat = t.lattice().map_err(|e| format!("case {case}: {e}"))?;
            if !criteria::same_fingerprint(&nq.quotient, &t_lat) {
                return Err(format!(
                    "case {case}: round trip changed the lattice: input {} vs quotient {}",
                    gram_string(&t_lat),
                    gram_string(&nq.quotient)
                ));
            }
        }
        Ok(())
    })();
    report(5, "the quotient construction inverts the sandwich embedding", outcome);
}

// ---------------------------------------------------------------------------
// 6. Embedding verdicts match the rational criterion; certificates check.
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_embedding_certificates_and_verdicts() {
    let outcome = (|| {
        let mut rng = corpus::rng(9006);
        let u3 = Lattice::hyperbolic(3);
        for case in 0..100 {
            let rank = 1 + case % 7;
            let t = corpus::random_even_form(&mut rng, rank);
            let d = criteria::embed_in_u3(&t).map_err(|e| format!("case {case}: {e}"))?;
            let expected = forms::embeds_in_hyperbolic(&t, 3);
            if (d.verdict == Verdict::Yes) != expected {
                return Err(format!(
                    "case {case}: construction says {} but the rational test says {expected}: {}",
                    d.verdict,
                    gram_string(&t)
                ));
            }
            match d.verdict {
                Verdict::Yes => {
                    let Some(Certificate::Embedding(emb)) = &d.certificate else {
                        return Err(format!("case {case}: yes verdict without an embedding certificate"));
                    };
                    criteria::check_embedding_certificate(&t, &u3, emb, false)
                        .map_err(|e| format!("case {case}: certificate rejected: {e}"))?;
                }
                Verdict::No => {
                    if d.certificate.is_some() || d.reason.is_empty() {
                        return Err(format!("case {case}: malformed no decision"));
                    }
                }
                Verdict::Unknown => {
                    return Err(format!("case {case}: the embedding decision must never be unknown"));
                }
            }
        }
        Ok(())
    })();
    report(6, "embedding verdicts match the rational criterion with checkable certificates", outcome);
}

// ---------------------------------------------------------------------------
// 7. The restricted similarity-scale search agrees with exhaustion.
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_similarity_scale_versus_exhaustive_search() {
    let outcome = (|| {
        let mut rng = corpus::rng(9007);
        let scales = [2i64, 3, 5, 6, 7, 10, 13, 15];
        for case in 0..100 {
            let rank = 1 + case % 4;
            let q1 = corpus::random_even_form(&mut rng, rank);
            let q2 = match case % 3 {
                0 => {
                    let m = Rat::from(Int::from(scales[(case / 3) % scales.len()]));
                    let scaled = q1.scale(&m).map_err(|e| e.to_string())?;
                    let p = corpus::random_unimodular(&mut rng, rank, 2 * rank);
                    Lattice::new(p.to_q().gram_with(scaled.gram())).map_err(|e| e.to_string())?
                }
                1 => {
                    let p = corpus::random_unimodular(&mut rng, rank, 2 * rank);
                    Lattice::new(p.to_q().gram_with(q1.gram())).map_err(|e| e.to_string())?
                }
                _ => corpus::random_even_form(&mut rng, rank),
            };

            // independent route: try every squarefree scale up to 50
            let mut exhaustive = None;
            for n in 1..=50i64 {
                let big = Int::from(n);
                if num_util::squarefree_part(&big) != big {
                    continue;
                }
                let scaled = q2.scale(&Rat::from(big.clone())).map_err(|e| e.to_string())?;
                if forms::equivalent(&q1, &scaled) {
                    exhaustive = Some(big);
                    break;
                }
            }

            let restricted = forms::similar_scale(&q1, &q2);
            match (&restricted, &exhaustive) {
                (Some(cert), Some(n)) => {
                    if &cert.n != n {
                        return Err(format!(
                            "case {case}: restricted search found n={} but the least scale is n={n} for {} vs {}",
                            cert.n,
                            gram_string(&q1),
                            gram_string(&q2)
                        ));
                    }
                    criteria::check_scale_certificate(&q1, &q2, cert)
                        .map_err(|e| format!("case {case}: certificate rejected: {e}"))?;
                }
                (Some(cert), None) => {
                    if cert.n <= Int::from(50) {
                        return Err(format!(
                            "case {case}: exhaustion missed the claimed scale n={} for {} vs {}",
                            cert.n,
                            gram_string(&q1),
                            gram_string(&q2)
                        ));
                    }
                    criteria::check_scale_certificate(&q1, &q2, cert)
                        .map_err(|e| format!("case {case}: certificate rejected: {e}"))?;
                }
                (None, Some(n)) => {
                    return Err(format!(
                        "case {case}: restricted search found nothing but n={n} works for {} vs {}",
                        gram_string(&q1),
                        gram_string(&q2)
                    ));
                }
                (None, None) => {}
            }
        }
        Ok(())
    })();
    report(7, "the restricted similarity-scale search agrees with exhaustive scanning", outcome);
}

// ---------------------------------------------------------------------------
// 8. The pinned anisotropic form, and low ranks always dominate.
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_pinned_form_and_low_rank_dominance() {
    let outcome = (|| {
        let d = Lattice::diagonal(&[2, -4, -6, 12]).map_err(|e| e.to_string())?;
        if forms::is_isotropic(&d) {
            return Err("diag(2,-4,-6,12) must be anisotropic".into());
        }
        let inv = forms::invariants(&d);
        if inv.hasse != vec![Int::from(2), Int::from(3)] {
            return Err(format!("diag(2,-4,-6,12) hasse set is {:?}, expected [2, 3]", inv.hasse));
        }
        let dec = criteria::kummer_dominance(&d).map_err(|e| e.to_string())?;
        if dec.verdict != Verdict::No {
            return Err(format!("diag(2,-4,-6,12) dominance verdict is {}, expected no", dec.verdict));
        }

        // every even form of rank at most three fits inside U^3
        let mut rng = corpus::rng(9008);
        let u3 = Lattice::hyperbolic(3);
        for case in 0..60 {
            let rank = 1 + case % 3;
            let t = corpus::random_even_form(&mut rng, rank);
            let dec = criteria::kummer_dominance(&t).map_err(|e| format!("case {case}: {e}"))?;
            if dec.verdict != Verdict::Yes {
                return Err(format!(
                    "case {case}: rank-{rank} form unexpectedly fails to dominate: {} ({})",
                    gram_string(&t),
                    dec.reason
                ));
            }
            let Some(Certificate::Embedding(emb)) = &dec.certificate else {
                return Err(format!("case {case}: yes verdict without an embedding certificate"));
            };
            criteria::check_embedding_certificate(&t, &u3, emb, false)
                .map_err(|e| format!("case {case}: certificate rejected: {e}"))?;
        }
        Ok(())
    })();
    report(8, "the pinned rank-four form is obstructed while every low-rank form embeds", outcome);
}
