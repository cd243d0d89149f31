//! Hot-path benchmarks: the Jacobi eigensolver, one RK4 Burgers trajectory,
//! and a full empirical gramian at a mid-sweep resolution.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unobs_core::{
    empirical_gramian, rk4_integrate, sym_eig, BurgersModel, HeatModel, Mat, SymMatrix,
    WaveModel,
};

fn random_sym(dim: usize, seed: u64) -> SymMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Mat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = rng.gen_range(-1.0..1.0);
        }
    }
    SymMatrix::new(m).unwrap()
}

fn bench_sym_eig(c: &mut Criterion) {
    let m10 = random_sym(10, 1);
    c.bench_function("sym_eig 10x10", |b| b.iter(|| sym_eig(black_box(&m10)).unwrap()));
    let heat = HeatModel::benchmark(8).unwrap().gramian_closed_form();
    c.bench_function("sym_eig heat 8x8", |b| b.iter(|| sym_eig(black_box(&heat)).unwrap()));
}

fn bench_rk4_burgers(c: &mut Criterion) {
    let model = BurgersModel::benchmark(40).unwrap();
    let u0 = model.nominal_u0();
    let dt = model.stable_dt(&u0);
    let times = model.sensor_times();
    c.bench_function("rk4 burgers n=40 trajectory", |b| {
        b.iter(|| {
            rk4_integrate(
                |_, u| model.rhs(u),
                black_box(&u0),
                0.0,
                model.horizon,
                dt,
                &times,
            )
            .unwrap()
        })
    });
}

fn bench_empirical_gramian(c: &mut Criterion) {
    let model = BurgersModel::benchmark(40).unwrap();
    let basis = model.estimation_basis().unwrap();
    let u0 = model.nominal_u0();
    c.bench_function("empirical gramian burgers n=40", |b| {
        b.iter(|| empirical_gramian(&model, black_box(&u0), &basis, 0.1).unwrap())
    });
}

fn bench_wave_modal(c: &mut Criterion) {
    let model = WaveModel::benchmark(80, 80).unwrap();
    c.bench_function("wave ratio n=80", |b| {
        b.iter(|| model.observability_ratio().unwrap())
    });
}

criterion_group!(
    benches,
    bench_sym_eig,
    bench_rk4_burgers,
    bench_empirical_gramian,
    bench_wave_modal
);
criterion_main!(benches);
