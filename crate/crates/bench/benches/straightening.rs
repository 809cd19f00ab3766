use criterion::{black_box, criterion_group, criterion_main, Criterion};

use factorcat::fib::{straighten, unstraighten};
use factorcat::Budget;
use factorcat_bench::constant_over_grid;

fn grothendieck(c: &mut Criterion) {
    let x = constant_over_grid(1, 1, 1);
    c.bench_function("unstraighten const [1] over [1]x[1]", |bench| {
        bench.iter(|| unstraighten(black_box(&x)).unwrap())
    });
    let u = unstraighten(&x).unwrap();
    c.bench_function("straighten const [1] over [1]x[1]", |bench| {
        bench.iter(|| {
            straighten(
                black_box(&u.total),
                &x.base,
                &u.projection,
                &Budget::default(),
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, grothendieck);
criterion_main!(benches);
