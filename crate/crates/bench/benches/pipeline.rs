use altsub_bench::{complex, rule};
use altsub_core::layout::{tutte_layout, Shape};
use altsub_core::tiling::subdivide_n;
use altsub_core::{build_rule, initial_tiling, maps_isomorphic, replacement_evolve, subdivide, Seed};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn rule_derivation(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_rule");
    for name in ["trefoil", "borromean", "knot8_b"] {
        let cx = complex(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &cx, |b, cx| b.iter(|| build_rule(black_box(cx)).unwrap()));
    }
    g.finish();
}

fn subdivision(c: &mut Criterion) {
    let mut g = c.benchmark_group("subdivide");
    for name in ["hopf", "borromean", "knot7_a"] {
        let r = rule(name);
        let t = subdivide_n(&r, &initial_tiling(&r, Seed::Sphere).unwrap(), 2).unwrap();
        g.bench_with_input(BenchmarkId::new(name, "stage2to3"), &t, |b, t| b.iter(|| subdivide(&r, black_box(t)).unwrap()));
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("replacement_evolve");
    for name in ["hopf", "borromean"] {
        let cx = complex(name);
        g.bench_with_input(BenchmarkId::new(name, 3), &cx, |b, cx| b.iter(|| replacement_evolve(black_box(cx), 3).unwrap()));
    }
    g.finish();
}

fn layout(c: &mut Criterion) {
    let mut g = c.benchmark_group("tutte_layout");
    g.sample_size(20);
    for (name, depth) in [("hopf", 6), ("trefoil", 4)] {
        let r = rule(name);
        let t = subdivide_n(&r, &initial_tiling(&r, Seed::Tile { tile_type: 0 }).unwrap(), depth).unwrap();
        g.bench_with_input(BenchmarkId::new(name, t.map.vertex_count()), &t, |b, t| {
            b.iter(|| tutte_layout(black_box(t), None, Shape::Polygon).unwrap())
        });
    }
    g.finish();
}

fn isomorphism(c: &mut Criterion) {
    let r = rule("trefoil");
    let t = subdivide_n(&r, &initial_tiling(&r, Seed::Sphere).unwrap(), 3).unwrap();
    let u = t.clone();
    c.bench_function("maps_isomorphic/trefoil_stage3", |b| b.iter(|| maps_isomorphic(black_box(&t), black_box(&u))));
}

criterion_group!(benches, rule_derivation, subdivision, oracle, layout, isomorphism);
criterion_main!(benches);
