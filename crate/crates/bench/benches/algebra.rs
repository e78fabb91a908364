use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vtl_core::presentation::{check_all, relation_instances, Family};
use vtl_core::rep::{DiagramRep, MatrixRep};
use vtl_core::sample::random_element;
use vtl_core::{rep_element, Matching, QuadScalar, RepConfig, RhoParams};

fn compose(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    c.bench_function("compose n=8", |b| {
        b.iter_batched(
            || (Matching::random(8, &mut rng), Matching::random(8, &mut rng)),
            |(x, y)| black_box(x.compose(&y).unwrap()),
            BatchSize::SmallInput,
        )
    });
}

fn multiply(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let lambda = QuadScalar::from_int(3);
    let x = random_element(4, 8, &mut rng);
    let y = random_element(4, 8, &mut rng);
    c.bench_function("element multiply n=4, 8x8 terms", |b| b.iter(|| black_box(x.multiply(&y, &lambda).unwrap())));
}

fn rep_map(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = random_element(3, 4, &mut rng);
    let cfg = RepConfig::new(3, 2).unwrap();
    c.bench_function("rep_element n=3 d=2", |b| b.iter(|| black_box(rep_element(&x, &cfg).unwrap())));
}

fn verify(c: &mut Criterion) {
    let lambda = QuadScalar::from_int(3);
    let params = RhoParams::braid_plus(lambda.clone()).unwrap().with_c(QuadScalar::one()).unwrap();
    let diagrams = DiagramRep::new(4, lambda).unwrap();
    let mut instances = Vec::new();
    for f in [Family::Tlr, Family::Vcr, Family::Vev, Family::Vtl, Family::Ff1, Family::Wtl1] {
        instances.extend(relation_instances(f, 4, &params).unwrap());
    }
    c.bench_function("verify wtl diagram n=4", |b| {
        b.iter(|| black_box(check_all(&instances, &diagrams, &params).unwrap()))
    });

    let p2 = RhoParams::rational(1, -1, 0, 2);
    let matrices = MatrixRep::new(RepConfig::new(3, 2).unwrap()).unwrap();
    let mut instances = Vec::new();
    for f in [Family::Tlr, Family::Vcr, Family::Brauer, Family::Fu22] {
        instances.extend(relation_instances(f, 3, &p2).unwrap());
    }
    c.bench_function("verify brauer+fu22 matrix n=3 d=2", |b| {
        b.iter(|| black_box(check_all(&instances, &matrices, &p2).unwrap()))
    });
}

criterion_group!(benches, compose, multiply, rep_map, verify);
criterion_main!(benches);
