use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tachikawa::derived::poincare_truncation;
use tachikawa::detect::{dual_ext_window, loewy3_diagnostic};
use tachikawa::harness::{run_sweep, Checks, GeneratorSpec};
use tachikawa::series::table_verdicts;
use tachikawa::{quotient_algebra_from_text, AModule, Fp};
use tachikawa_bench::{algebra, ALGEBRAS};

fn quotients(c: &mut Criterion) {
    let f = Fp::new(2).unwrap();
    c.bench_function("quotient/x^3,y^3,z^3,xyz", |b| {
        b.iter(|| quotient_algebra_from_text(f, "x^3, y^3, z^3, x*y*z", None).unwrap())
    });
}

fn resolutions(c: &mut Criterion) {
    let mut g = c.benchmark_group("betti_k_to_8");
    for &(name, p, ideal) in ALGEBRAS {
        let a = algebra(p, ideal);
        let k = AModule::residue_field(&a);
        g.bench_with_input(BenchmarkId::from_parameter(name), &k, |b, k| b.iter(|| poincare_truncation(k, 8).unwrap()));
    }
    g.finish();
}

fn ext_windows(c: &mut Criterion) {
    let mut g = c.benchmark_group("ext_d_a_to_6");
    for &(name, p, ideal) in ALGEBRAS {
        let a = algebra(p, ideal);
        g.bench_with_input(BenchmarkId::from_parameter(name), &a, |b, a| b.iter(|| dual_ext_window(a, 6).unwrap()));
    }
    g.finish();
}

fn diagnostics(c: &mut Criterion) {
    let a = algebra(3, "x^2, x*y, y^2");
    c.bench_function("loewy3/m^2=0,e=2", |b| b.iter(|| loewy3_diagnostic(&a).unwrap()));
    c.bench_function("series/table_10", |b| b.iter(|| table_verdicts(10).unwrap()));
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    let spec = GeneratorSpec::monomial(2, 2, 6);
    g.bench_function("monomial_n2_cap6_b4", |b| {
        b.iter(|| run_sweep(&spec, &Checks::default(), 4, &mut std::io::sink()).unwrap())
    });
    let spec = GeneratorSpec::loewy3(3, 3, 20, 7);
    g.bench_function("loewy3_n3_20_b2", |b| {
        b.iter(|| run_sweep(&spec, &Checks::default(), 2, &mut std::io::sink()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, quotients, resolutions, ext_windows, diagnostics, sweeps);
criterion_main!(benches);
