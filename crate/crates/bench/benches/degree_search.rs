use criterion::{criterion_group, criterion_main, Criterion};

use slabel_core::degree_search::{
    min_cover_degree_anchored, transposition_01, worst_case_degree,
};
use slabel_core::field::{Field, FieldElement};

fn bench_worst_case(c: &mut Criterion) {
    let field = Field::of_order(5).unwrap();
    c.bench_function("worst_case_degree/k5", |b| {
        b.iter(|| worst_case_degree(&field, false, u64::MAX).unwrap().0)
    });
}

fn bench_anchored_prime(c: &mut Criterion) {
    let field = Field::of_order(13).unwrap();
    let perm = transposition_01(13);
    c.bench_function("anchored_degree/p13", |b| {
        b.iter(|| {
            min_cover_degree_anchored(&field, &perm, FieldElement(0), FieldElement(0))
                .unwrap()
                .degree
        })
    });
}

criterion_group!(benches, bench_worst_case, bench_anchored_prime);
criterion_main!(benches);
