use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quartic_core::census::degree_two_divisor;
use quartic_core::field::standard;
use quartic_core::pairing;
use quartic_core::{CuspCoordinates, Field, TorsionModel};

fn classes() -> Vec<CuspCoordinates> {
    // a spread of classes, effective and not
    CuspCoordinates::all().step_by(97).collect()
}

fn h0<F: Field>(c: &mut Criterion, name: &str, model: &TorsionModel<F>) {
    let ds: Vec<_> = classes().iter().map(|k| degree_two_divisor(model, k)).collect();
    c.bench_function(name, |b| {
        b.iter(|| ds.iter().map(|d| model.rr().h0(black_box(d)).unwrap()).sum::<usize>())
    });
}

/// `decompose` memoizes, so the two uncached steps are timed instead.
fn decompose<F: Field>(c: &mut Criterion, name: &str, model: &TorsionModel<F>, n: usize) {
    let ds: Vec<_> = classes().iter().take(n).map(|k| model.cusp_divisor(k)).collect();
    c.bench_function(name, |b| {
        b.iter(|| {
            for d in &ds {
                let v = model.propose(black_box(d)).unwrap().expect("cusp classes are proposed");
                assert!(model.represents(d, &v).unwrap());
            }
        })
    });
}

fn benches(c: &mut Criterion) {
    let shadow = TorsionModel::fermat(&standard::shadow_f73()).unwrap();
    let exact = TorsionModel::fermat(&standard::q_delta()).unwrap();
    h0(c, "h0 degree-2 classes f73", &shadow);
    h0(c, "h0 degree-2 classes exact", &exact);
    decompose(c, "decompose cusp classes f73", &shadow, usize::MAX);
    decompose(c, "decompose cusp classes exact", &exact, 3);
    let witnesses = shadow.basis_witnesses().unwrap();
    c.bench_function("pairing matrix f73", |b| b.iter(|| pairing::pairing_matrix(shadow.curve(), black_box(witnesses)).unwrap()));
}

criterion_group! {
    name = group;
    config = Criterion::default().sample_size(10);
    targets = benches
}
criterion_main!(group);
