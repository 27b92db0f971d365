//! Benchmarks for the hot exact-arithmetic kernels: Smith normal form,
//! isotropy decisions, the embedding construction, and the quotient chain.
//!
//! Sample sizes are kept small; these kernels run milliseconds to tens of
//! milliseconds and the interesting signal is regression by integer blowup,
//! not nanosecond noise.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use k3lattice::corpus;
use k3lattice::criteria;
use k3lattice::embedding::embed;
use k3lattice::forms;
use k3lattice::lattice::Lattice;

fn bench_smith(c: &mut Criterion) {
    let mut rng = corpus::rng(71);
    let mats: Vec<_> = (0..16).map(|_| corpus::random_zmat(&mut rng, 8, 8, 40)).collect();
    let mut idx = 0usize;
    c.bench_function("smith_8x8_entries_40", |b| {
        b.iter_batched(
            || {
                let m = mats[idx % mats.len()].clone();
                idx += 1;
                m
            },
            |m| m.smith(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_isotropy(c: &mut Criterion) {
    let mut rng = corpus::rng(73);
    let forms_pool: Vec<_> = (0..32).map(|i| corpus::random_even_form(&mut rng, 2 + i % 4)).collect();
    c.bench_function("is_isotropic_rank_2_to_5", |b| {
        b.iter(|| {
            let mut yes = 0usize;
            for q in &forms_pool {
                if forms::is_isotropic(q) {
                    yes += 1;
                }
            }
            yes
        })
    });
}

fn bench_embed_u3(c: &mut Criterion) {
    let mut rng = corpus::rng(79);
    let pool: Vec<_> = (0..12).map(|i| corpus::random_even_form(&mut rng, 1 + i % 4)).collect();
    c.bench_function("embed_u3_rank_1_to_4", |b| {
        b.iter(|| {
            let mut yes = 0usize;
            for t in &pool {
                if criteria::embed_in_u3(t).expect("even input").verdict == criteria::Verdict::Yes {
                    yes += 1;
                }
            }
            yes
        })
    });
}

fn bench_quotient_chain(c: &mut Criterion) {
    let t = embed(
        &Lattice::hyperbolic(3),
        k3lattice::mat::QMat::from_i64(&[
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 2, 0, 0],
            &[0, 0, 1, 1, 0, 0],
        ]),
    )
    .expect("independent rows");
    c.bench_function("sandwich_then_quotient_rank_3", |b| {
        b.iter(|| {
            let image = criteria::sandwich_embedding(&t).expect("primitive input");
            criteria::nikulin_quotient(&image).expect("valid image").quotient.rank()
        })
    });
}

fn configured() -> Criterion {
    Criterion::default().sample_size(20)
}

criterion_group! {
    name = kernels;
    config = configured();
    targets = bench_smith, bench_isotropy, bench_embed_u3, bench_quotient_chain
}
criterion_main!(kernels);
