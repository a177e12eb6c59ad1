use std::collections::BTreeMap;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use superalg::algebra::{extract_q5_constants, q5_spec};
use superalg::exactnum::{int, sym};
use superalg::ladder::{derive_realization, derive_structure_function};
use superalg::repcheck::{check_both, family_rep_data};
use superalg::schrodinger::{q5_levels, NumericOptions};
use superalg::spectrum::{analyze, SpectrumOptions};
use superalg::weylop::build_q5;

fn exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact");
    g.sample_size(10);
    g.bench_function("build_q5_commutators", |b| {
        b.iter(|| {
            let ops = build_q5();
            black_box(ops.a.commutator(&ops.l).commutator(&ops.l))
        })
    });
    g.bench_function("extract_constants", |b| b.iter(|| black_box(extract_q5_constants().unwrap())));

    let spec = q5_spec();
    g.bench_function("structure_function", |b| {
        b.iter(|| black_box(derive_structure_function(&spec, &derive_realization(&spec).unwrap(), &spec.k).unwrap()))
    });

    let sf = derive_structure_function(&spec, &derive_realization(&spec).unwrap(), &spec.k).unwrap();
    let options = SpectrumOptions { values: BTreeMap::from([(sym("h"), int(1)), (sym("a"), int(1))]), p_max: 50 };
    g.bench_function("catalog_p50", |b| b.iter(|| black_box(analyze(&sf, &options).unwrap())));

    let cat = analyze(&sf, &options).unwrap();
    let fam = cat.unitary_families()[0];
    g.bench_function("repcheck_p8", |b| {
        b.iter(|| black_box(check_both(&family_rep_data(&spec, &sf, &cat, fam, 8).unwrap())))
    });
    g.finish();
}

fn numeric(c: &mut Criterion) {
    let mut g = c.benchmark_group("numeric");
    g.sample_size(10);
    let opts = NumericOptions::default();
    g.bench_function("q5_levels", |b| b.iter(|| black_box(q5_levels(&opts).unwrap())));
    g.finish();
}

criterion_group!(benches, exact, numeric);
criterion_main!(benches);
