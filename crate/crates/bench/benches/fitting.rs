use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use egl::datasets::builtin;
use egl::estimation::{fit, FitOptions};
use egl::Family;

fn fits(c: &mut Criterion) {
    let bladder = builtin("bladder").unwrap();
    let options = FitOptions::default();
    let mut group = c.benchmark_group("fit_bladder");
    group.sample_size(10);
    for family in [Family::Egl, Family::Ngld, Family::Lindley] {
        group.bench_function(family.tag(), |b| {
            b.iter(|| fit(family, black_box(bladder.values()), &options))
        });
    }
    group.finish();
}

criterion_group!(benches, fits);
criterion_main!(benches);
