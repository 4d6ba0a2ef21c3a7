use std::hint::black_box;
use std::sync::Arc;

use cavity_sta::energy::energy_parts;
use cavity_sta::{
    make_reference, AdiabaticGrid, AdiabaticMoore, EffectiveOptions, EffectiveTrajectory, EnergyQuadrature, ExactMoore,
    Family, Mirror, ReferenceGeometry, Side, TrajectoryPair, Which,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn contraction(tau: f64) -> TrajectoryPair {
    let geom = ReferenceGeometry { l0: 0.0, lf: Some(0.3), r0: 1.0, eps: 0.3 };
    make_reference(Family::Contraction, geom, tau).unwrap()
}

fn exact(c: &mut Criterion) {
    let pair = contraction(1.2);
    let solver = ExactMoore::from_pair(&pair).unwrap();
    c.bench_function("exact G jet, 3 round trips", |b| b.iter(|| solver.solve_g(black_box(6.0)).unwrap()));
    let slow = ExactMoore::from_pair(&contraction(40.0)).unwrap();
    c.bench_function("exact G jet, slow motion", |b| b.iter(|| slow.solve_g(black_box(40.0)).unwrap()));
}

fn adiabatic(c: &mut Criterion) {
    let pair = contraction(1.2);
    c.bench_function("adiabatic build", |b| {
        b.iter(|| AdiabaticMoore::build(black_box(&pair), AdiabaticGrid::default()).unwrap())
    });
    let am = AdiabaticMoore::build(&pair, AdiabaticGrid::default()).unwrap();
    c.bench_function("adiabatic G jet", |b| b.iter(|| am.eval_moore_jet(Which::G, black_box(0.7)).unwrap()));
}

fn effective(c: &mut Criterion) {
    let am = Arc::new(AdiabaticMoore::build(&contraction(1.2), AdiabaticGrid::default()).unwrap());
    let opts = EffectiveOptions { max_halvings: 0, ..EffectiveOptions::default() };
    c.bench_function("effective trajectory", |b| {
        b.iter(|| EffectiveTrajectory::solve(am.clone(), Side::Right, opts).unwrap())
    });
}

fn energy(c: &mut Criterion) {
    let pair = contraction(1.2);
    let solver = ExactMoore::from_pair(&pair).unwrap();
    let t = 1.5;
    let bounds = (pair.left.position(t), pair.right.position(t));
    c.bench_function("cavity energy", |b| {
        b.iter(|| energy_parts(&solver, bounds, black_box(t), EnergyQuadrature::default()).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = exact, adiabatic, effective, energy
}
criterion_main!(benches);
