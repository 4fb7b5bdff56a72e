use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use range_arith::field::inner_product;
use range_arith::group::msm;
use range_arith::mle::{chi_vector, mle_eval};
use range_arith::{FieldElement, GeneratorSet, IpaProof, MleTable, RangeProof, Transcript};
use range_arith_bench::{random_scalars, random_values};

fn field(c: &mut Criterion) {
    let v = random_scalars(2, 1);
    c.bench_function("field/mul", |b| b.iter(|| black_box(v[0]) * black_box(v[1])));
    c.bench_function("field/invert", |b| b.iter(|| black_box(v[0]).invert()));
}

fn commitments(c: &mut Criterion) {
    let gens = GeneratorSet::derive(b"bench", 4096).unwrap();
    let mut group = c.benchmark_group("msm");
    for n in [256usize, 1024, 4096] {
        let s = random_scalars(n, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| msm(&s, &gens.g[..n]))
        });
    }
    group.finish();
}

fn mle(c: &mut Criterion) {
    let mut group = c.benchmark_group("mle_eval");
    for v in [8usize, 12] {
        let tbl = MleTable::new(random_scalars(1 << v, 2)).unwrap();
        let z = random_scalars(v, 3);
        group.bench_with_input(BenchmarkId::new("fold", v), &v, |b, _| b.iter(|| mle_eval(&tbl, &z)));
        group.bench_with_input(BenchmarkId::new("chi", v), &v, |b, _| {
            b.iter(|| inner_product(tbl.evals(), &chi_vector(&z)))
        });
    }
    group.finish();
}

fn ipa(c: &mut Criterion) {
    let gens = GeneratorSet::derive(b"bench", 1024).unwrap();
    let mut group = c.benchmark_group("ipa");
    group.sample_size(10);
    for n in [64usize, 1024] {
        let a = random_scalars(n, 4);
        let bv = random_scalars(n, 5);
        let p = IpaProof::statement(&gens.g, &gens.h, &a, &bv);
        let ip = inner_product(&a, &bv);
        let prove = |tr: &mut Transcript| IpaProof::prove(&gens.g, &gens.h, &gens.u, &p, &ip, a.clone(), bv.clone(), tr);
        let proof = prove(&mut Transcript::new(b"b")).unwrap();
        group.bench_with_input(BenchmarkId::new("prove", n), &n, |b, _| {
            b.iter(|| prove(&mut Transcript::new(b"b")).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("verify", n), &n, |b, &n| {
            b.iter(|| proof.verify(&gens.g, &gens.h, &gens.u, &p, &ip, n, &mut Transcript::new(b"b")).unwrap())
        });
    }
    group.finish();
}

fn range(c: &mut Criterion) {
    let gens = GeneratorSet::derive(b"bench", 2048).unwrap();
    let mut group = c.benchmark_group("range_proof");
    group.sample_size(10);
    for (m, bits) in [(16usize, 8u32), (256, 8)] {
        let values: Vec<_> = random_values(m, bits, 6).into_iter().map(FieldElement::from_u64).collect();
        let p = gens.commit(&values).unwrap();
        let proof = RangeProof::prove(&gens, &values, bits, &p, &mut Transcript::new(b"r")).unwrap();
        let id = format!("{m}x{bits}");
        group.bench_function(BenchmarkId::new("prove", &id), |b| {
            b.iter(|| RangeProof::prove(&gens, &values, bits, &p, &mut Transcript::new(b"r")).unwrap())
        });
        group.bench_function(BenchmarkId::new("verify", &id), |b| {
            b.iter(|| proof.verify(&gens, &p, m, bits, &mut Transcript::new(b"r")).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, field, commitments, mle, ipa, range);
criterion_main!(benches);
