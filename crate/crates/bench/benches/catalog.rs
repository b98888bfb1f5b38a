use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use equichain::catalog::{check_catalog, entry, Options};
use equichain::cellmodel::barycentric_subdivide;
use equichain::equivariant::verify_smith_exactness;
use equichain::filtered::{canonical_filtration, spectral_sequence};
use equichain::splitting::{find_split_with, SplitOptions, SplitProblem};

fn check_all(c: &mut Criterion) {
    c.bench_function("check-all/catalog", |b| b.iter(|| check_catalog(black_box(&Options::default())).unwrap()));
}

fn smith(c: &mut Criterion) {
    let doc = entry("torus-swap").unwrap().document().unwrap();
    let fd = &doc.filtrations[0].data;
    c.bench_function("smith/torus", |b| b.iter(|| verify_smith_exactness(black_box(fd), -1).unwrap()));
}

fn split(c: &mut Criterion) {
    let doc = entry("torus-swap").unwrap().document().unwrap();
    let act = &doc.actions[0].action;
    let sd = barycentric_subdivide(act.complex().clone());
    let p = SplitProblem::new(sd.transport_action(act).unwrap()).unwrap();
    let heuristic = SplitOptions { exhaustive: false, ..SplitOptions::default() };
    c.bench_function("split/subdivided-torus", |b| b.iter(|| find_split_with(black_box(&p), &heuristic).unwrap()));
}

fn spectral(c: &mut Criterion) {
    let doc = entry("torus-swap").unwrap().document().unwrap();
    let sd = barycentric_subdivide(doc.complexes[0].complex.clone());
    let fc = canonical_filtration(&sd.complex().chain_complex());
    c.bench_function("spectral/subdivided-torus", |b| b.iter(|| spectral_sequence(black_box(&fc))));
}

criterion_group!(benches, check_all, smith, split, spectral);
criterion_main!(benches);
