use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superalg::algebra::q5_spec;
use superalg::exactnum::{int, rat, sym, Rational};
use superalg::ladder::{derive_realization, derive_structure_function, StructureFunction};
use superalg::repcheck::{check_both, family_rep_data, random_case1, rep_data, symmetric_float, triangular_exact, verify_relations, RepError};
use superalg::spectrum::{analyze, Catalog, SpectrumOptions};

fn q5() -> StructureFunction {
    let spec = q5_spec();
    derive_structure_function(&spec, &derive_realization(&spec).unwrap(), &spec.k).unwrap()
}

fn catalog(sf: &StructureFunction, h: Rational, a: Rational, p_max: u32) -> Catalog {
    let values = BTreeMap::from([(sym("h"), h), (sym("a"), a)]);
    analyze(sf, &SpectrumOptions { values, p_max }).unwrap()
}

fn family_with_energy(cat: &Catalog, p: u32, e: Rational) -> usize {
    cat.families.iter().position(|f| f.energy_at(p) == Some(e.clone())).unwrap()
}

#[test]
fn top_family_p2() {
    let sf = q5();
    let cat = catalog(&sf, int(1), int(1), 2);
    let fam = &cat.families[family_with_energy(&cat, 2, rat(5, 2))];
    let data = family_rep_data(&q5_spec(), &sf, &cat, fam, 2).unwrap();
    assert_eq!(data.phi, vec![int(0), int(64), int(120), int(0)]);
    assert_eq!(data.k, int(-128));
    let m = triangular_exact(&data);
    assert_eq!((&m.b_dagger * &m.b).diagonal(), vec![int(0), int(64), int(120)]);
    assert_eq!((&m.b * &m.b_dagger).diagonal(), vec![int(64), int(120), int(0)]);
    assert!(m.b.pow(3).is_zero());
    // A = A(n + u) on the diagonal
    assert_eq!(m.a.diagonal(), data.a_diag);
    let report = verify_relations(&m, &data);
    assert!(report.passed(), "{report:?}");
    // [A,C] = (h^4/a^4) B at h = a = 1
    assert!((&m.a.commutator(&m.c) - &m.b_gen).is_zero());
    let f = verify_relations(&symmetric_float(&data).unwrap(), &data);
    assert!(f.passed(), "{f:?}");
}

#[test]
fn perturbed_phi_is_detected() {
    let sf = q5();
    let cat = catalog(&sf, int(1), int(1), 2);
    let fam = &cat.families[family_with_energy(&cat, 2, rat(5, 2))];
    let data = family_rep_data(&q5_spec(), &sf, &cat, fam, 2).unwrap().perturbed(1, &int(1));
    let report = verify_relations(&triangular_exact(&data), &data);
    assert!(report.failures().contains(&"[B,C]"), "{report:?}");
}

#[test]
fn one_dimensional() {
    let sf = q5();
    let cat = catalog(&sf, int(1), int(1), 0);
    let fam = &cat.families[family_with_energy(&cat, 0, rat(3, 2))];
    let data = family_rep_data(&q5_spec(), &sf, &cat, fam, 0).unwrap();
    let m = triangular_exact(&data);
    assert!(m.b.is_zero() && m.b_dagger.is_zero());
    assert_eq!(m.a.diagonal(), vec![data.a_diag[0].clone()]);
    assert!(verify_relations(&m, &data).passed());
}

#[test]
fn non_truncating_energy_is_rejected() {
    let sf = q5();
    let mut values = BTreeMap::from([(sym("h"), int(1)), (sym("a"), int(1)), (sym("E"), int(3))]);
    // u4 = -E + 5/2, but E = 3 is not (p+3)/2 for p = 2
    let err = rep_data(&q5_spec(), &sf, &values, &rat(-1, 2), 2).unwrap_err();
    assert!(matches!(err, RepError::NotTruncated { p: 2, .. }), "{err}");
    values.insert(sym("E"), rat(5, 2));
    assert!(matches!(rep_data(&q5_spec(), &sf, &values, &int(7), 2), Err(RepError::NoLowestWeight(_))));
}

#[test]
fn unitary_families_random_parameters() {
    let t = Instant::now();
    let sf = q5();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let h = rat(rng.gen_range(1..=9), rng.gen_range(1..=9));
        let a = rat(rng.gen_range(1..=9), rng.gen_range(1..=9));
        let cat = catalog(&sf, h, a, 8);
        let unitary = cat.unitary_families();
        assert_eq!(unitary.len(), 2);
        for fam in unitary {
            for p in 0..=8 {
                let data = family_rep_data(&q5_spec(), &sf, &cat, fam, p).unwrap();
                let (exact, float) = check_both(&data);
                assert!(exact.passed(), "{exact:?}");
                let float = float.unwrap();
                worst = worst.max(float.max_residual());
                assert!(float.passed(), "{float:?}");
            }
        }
    }
    eprintln!("worst float residual {worst:e}, {:?}", t.elapsed());
}

#[test]
fn random_case1_representations() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..20 {
        let p = 1 + i % 4;
        let fx = random_case1(&mut rng, p).unwrap();
        assert!(fx.sf.degree() <= 10);
        let values = BTreeMap::new();
        let data = rep_data(&fx.spec, &fx.sf, &values, &fx.u, p).unwrap();
        let report = verify_relations(&triangular_exact(&data), &data);
        assert!(report.passed(), "{report:?}");
    }
    eprintln!("20 random Case 1 fixtures in {:?}", t.elapsed());
}
