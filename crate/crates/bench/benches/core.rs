use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use subpat_core::bases::minimal_perms_containing;
use subpat_core::genum::{generate, Enumerator};
use subpat_core::polygeo::{convexity_degree, is_parallelogram};
use subpat_core::{contains, find_embedding, named, BinaryMatrix, GroundSet, Permutation};

fn containment(c: &mut Criterion) {
    let host: Permutation = "52163847".parse().unwrap();
    let host = host.to_matrix();
    let hit = named::matrix(named::M_H);
    let miss: BinaryMatrix = "1000/0100/0010/0001".parse().unwrap();
    c.bench_function("contains/perm8 hit", |b| b.iter(|| contains(black_box(&host), black_box(&hit))));
    c.bench_function("contains/perm8 miss", |b| b.iter(|| contains(black_box(&host), black_box(&miss))));
    c.bench_function("find_embedding/perm8", |b| b.iter(|| find_embedding(black_box(&host), black_box(&hit))));
    let polys = generate(GroundSet::Polyominoes, 8);
    let l = named::matrix("10/11");
    c.bench_function("contains/all rank-8 polyominoes", |b| {
        b.iter(|| polys.iter().filter(|p| contains(p, black_box(&l))).count())
    });
}

fn generation(c: &mut Criterion) {
    let mut g = c.benchmark_group("generation");
    g.sample_size(10);
    g.bench_function("polyominoes rank 8", |b| b.iter(|| generate(GroundSet::Polyominoes, black_box(8)).len()));
    g.bench_function("permutations size 7", |b| b.iter(|| generate(GroundSet::Permutations, black_box(7)).len()));
    let convex = Enumerator::avoiding(GroundSet::Polyominoes, &named::matrices(&[named::H, named::V]));
    g.bench_function("convex polyominoes rank 10", |b| b.iter(|| convex.par_count_rank(black_box(10), |_| true)));
    let f = Enumerator::avoiding(GroundSet::Permutations, &[named::matrix(named::M_F)]);
    g.bench_function("Av(M_F) size 9", |b| b.iter(|| f.par_count_rank(black_box(9), |_| true)));
    g.finish();
}

fn geometry(c: &mut Criterion) {
    let polys = generate(GroundSet::Polyominoes, 8);
    c.bench_function("parallelogram/all rank-8", |b| b.iter(|| polys.iter().filter(|p| is_parallelogram(p)).count()));
    c.bench_function("convexity_degree/all rank-8", |b| {
        b.iter(|| polys.iter().filter_map(convexity_degree).max())
    });
    let mh = named::matrix(named::M_H);
    c.bench_function("minimal_perms_containing/M_H", |b| b.iter(|| minimal_perms_containing(black_box(&mh)).map(|v| v.len())));
}

criterion_group!(benches, containment, generation, geometry);
criterion_main!(benches);
