//! Deterministic generators for test corpora: random even forms, random
//! primitive sublattices of a fixed ambient lattice, and random unimodular
//! basis changes.  Every generator draws from a caller-supplied RNG, so a
//! fixed seed reproduces the exact same corpus on every run; tests and
//! benchmarks should seed via [`rng`].
//!
//! These helpers panic on malformed requests (zero rank, rank larger than
//! the ambient) instead of returning errors: they exist to build corpora in
//! tests and benchmarks, where a panic is the right failure mode.

use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{embed, SublatticeEmbedding};
use crate::lattice::Lattice;
use crate::mat::{QMat, ZMat};

type Int = BigInt;

/// Retry cap for rejection sampling; hitting it means a generator's
/// acceptance condition is broken, not that we were unlucky.
const MAX_REDRAWS: usize = 10_000;

/// A reproducible RNG for corpus generation.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A matrix with independent uniform entries in `[-bound, bound]`.
pub fn random_zmat(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> ZMat {
    let data: Vec<Vec<Int>> = (0..rows)
        .map(|_| (0..cols).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect())
        .collect();
    ZMat::from_rows(data)
}

/// A random non-degenerate even symmetric form: off-diagonal entries
/// uniform in `[-12, 12]`, diagonal entries even in the same range.
/// Degenerate draws are rejected.
pub fn random_even_form(rng: &mut impl Rng, rank: usize) -> Lattice {
    assert!(rank >= 1, "a form needs at least one variable");
    for _ in 0..MAX_REDRAWS {
        let mut g = vec![vec![Int::zero(); rank]; rank];
        for i in 0..rank {
            g[i][i] = Int::from(2 * rng.gen_range(-6i64..=6));
            for j in 0..i {
                let e = Int::from(rng.gen_range(-12i64..=12));
                g[i][j] = e.clone();
                g[j][i] = e;
            }
        }
        let m = ZMat::from_rows(g).to_q();
        if let Ok(l) = Lattice::new(m) {
            return l;
        }
    }
    unreachable!("random symmetric matrices are almost never degenerate")
}

/// A random unimodular matrix built from `steps` elementary row operations
/// (swap, negate, add/subtract another row) applied to the identity.  Small
/// step counts keep the entries small.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> ZMat {
    assert!(n >= 1, "a basis change needs at least one row");
    let mut rows: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                rows.swap(i, j);
            }
            1 => {
                let i = rng.gen_range(0..n);
                for e in rows[i].iter_mut() {
                    *e = -e.clone();
                }
            }
            _ => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i != j {
                    let sign = if rng.gen_bool(0.5) { Int::one() } else { -Int::one() };
                    let source = rows[j].clone();
                    for (e, s) in rows[i].iter_mut().zip(source.iter()) {
                        *e += &sign * s;
                    }
                }
            }
        }
    }
    let m = ZMat::from_rows(rows);
    debug_assert!(m.is_unimodular());
    m
}

/// A random primitive sublattice of `ambient` of the given rank whose
/// induced form is non-degenerate: random small integral rows, saturated to
/// their primitive closure.  Dependent or degenerate draws are rejected.
pub fn random_primitive_sublattice(
    rng: &mut impl Rng,
    ambient: &Lattice,
    rank: usize,
) -> SublatticeEmbedding {
    assert!(rank >= 1, "a sublattice needs at least one generator");
    assert!(rank <= ambient.rank(), "rank exceeds the ambient rank");
    for _ in 0..MAX_REDRAWS {
        let rows = random_zmat(rng, rank, ambient.rank(), 3).to_q();
        let Ok(raw) = embed(ambient, rows) else {
            continue; // dependent rows
        };
        let closed = raw.primitive_closure().expect("saturation of an integral span succeeds");
        if sub_gram_is_degenerate(closed.sub_gram()) {
            continue;
        }
        debug_assert!(closed.is_primitive().unwrap_or(false));
        return closed;
    }
    unreachable!("small random spans are almost never dependent or degenerate")
}

fn sub_gram_is_degenerate(g: &QMat) -> bool {
    g.det().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_same_seed_reproduces_the_same_draws() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..5 {
            assert_eq!(
                random_even_form(&mut a, 3).gram(),
                random_even_form(&mut b, 3).gram()
            );
        }
        assert_ne!(
            random_even_form(&mut rng(1), 3).gram(),
            random_even_form(&mut rng(2), 3).gram()
        );
    }

    #[test]
    fn even_forms_are_even_and_nondegenerate() {
        let mut r = rng(11);
        for rank in 1..=5 {
            for _ in 0..10 {
                let l = random_even_form(&mut r, rank);
                assert!(l.is_even());
                assert!(!l.gram().det().is_zero());
            }
        }
    }

    #[test]
    fn unimodular_draws_are_unimodular() {
        let mut r = rng(23);
        for n in 1..=6 {
            for _ in 0..10 {
                assert!(random_unimodular(&mut r, n, 2 * n).is_unimodular());
            }
        }
    }

    #[test]
    fn primitive_sublattices_are_primitive_with_nondegenerate_forms() {
        let mut r = rng(31);
        let ambient = Lattice::lambda0();
        for rank in 1..=5 {
            let s = random_primitive_sublattice(&mut r, &ambient, rank);
            assert_eq!(s.rank(), rank);
            assert!(s.is_primitive().unwrap());
            assert!(!s.sub_gram().det().is_zero());
        }
    }
}
