use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use heckoid_core::cancel::min_pieces;
use heckoid_core::verify::{verify_connection, SweepOptions};
use heckoid_core::{build_context, cs_of_slope, u_word, Slope};

fn slope(s: &str) -> Slope {
    s.parse().unwrap()
}

fn context(c: &mut Criterion) {
    c.bench_function("build_context 12/29 n=3", |b| {
        b.iter(|| build_context(black_box(slope("12/29")), 3).unwrap())
    });
}

fn run_sequences(c: &mut Criterion) {
    let s = slope("377/987");
    c.bench_function("cs_of_slope 377/987", |b| b.iter(|| cs_of_slope(black_box(s)).unwrap()));
}

fn pieces(c: &mut Criterion) {
    let ctx = build_context(slope("5/12"), 3).unwrap();
    let w = u_word(slope("13/31")).unwrap();
    c.bench_function("min_pieces u_13/31 in 5/12 n=3", |b| {
        b.iter(|| min_pieces(black_box(w.letters()), &ctx.symmetrized).unwrap())
    });
}

fn sweep(c: &mut Criterion) {
    let ctx = build_context(slope("2/5"), 2).unwrap();
    let mut g = c.benchmark_group("connection sweep 2/5 n=2");
    g.sample_size(10);
    for max_den in [50, 100] {
        g.bench_function(format!("max_den={max_den}"), |b| {
            b.iter(|| verify_connection(&ctx, SweepOptions::new(max_den)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, context, run_sequences, pieces, sweep);
criterion_main!(benches);
