use criterion::{black_box, criterion_group, criterion_main, Criterion};

use factorcat::bridge::{ardc, dclr, segal_chain_check, unit_iso};
use factorcat::dblcat::count_dbl_functors;
use factorcat::fincat::{enumerate_functors, poset_category};
use factorcat::ofs::enumerate_ofs;
use factorcat::Budget;
use factorcat_bench::grid_category;

fn functors(c: &mut Criterion) {
    let (a, b) = (poset_category(2), grid_category(1, 2));
    c.bench_function("functors [2] -> [1]x[2]", |bench| {
        bench.iter(|| enumerate_functors(black_box(&a), black_box(&b), &Budget::default()).unwrap())
    });
    let c11 = grid_category(1, 1);
    c.bench_function("systems on [1]x[1]", |bench| {
        bench.iter(|| enumerate_ofs(black_box(&c11), &Budget::default()).unwrap())
    });
}

fn doubles(c: &mut Criterion) {
    let fs = factorcat_bench::grid_system(2, 2);
    c.bench_function("dclr [2]x[2]", |bench| bench.iter(|| dclr(black_box(&fs))));
    c.bench_function("unit iso [2]x[2]", |bench| {
        bench.iter(|| unit_iso(black_box(&fs)).unwrap())
    });
    let d = dclr(&factorcat_bench::grid_system(1, 1));
    let source = ardc(&poset_category(2));
    c.bench_function("double functors ardc[2] -> dclr [1]x[1]", |bench| {
        bench.iter(|| {
            count_dbl_functors(black_box(&source), black_box(&d), &Budget::default()).unwrap()
        })
    });
    c.bench_function("segal n=3 on dclr [1]x[1]", |bench| {
        bench.iter(|| segal_chain_check(black_box(&d), 3, &Budget::default()).unwrap())
    });
}

criterion_group!(benches, functors, doubles);
criterion_main!(benches);
