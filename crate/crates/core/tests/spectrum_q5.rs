use std::collections::BTreeMap;

use superalg::algebra::q5_spec;
use superalg::exactnum::{int, rat, sym, MultiPoly, Rational, Symbol};
use superalg::ladder::{derive_realization, derive_structure_function};
use superalg::reference::{self, compare_families, implied_family_phi, phi_deltas, FAMILIES, UNITARY};
use superalg::spectrum::{enumerate_catalog, u_branches, Catalog, SpectrumOptions};

fn values(h: Rational, a: Rational) -> BTreeMap<Symbol, Rational> {
    BTreeMap::from([(sym("h"), h), (sym("a"), a)])
}

fn catalog(h: Rational, a: Rational, p_max: u32) -> Catalog {
    enumerate_catalog(&q5_spec(), &SpectrumOptions { values: values(h, a), p_max }).unwrap()
}

#[test]
fn branches_match_published() {
    for (h, a) in [(int(1), int(1)), (rat(2, 3), rat(5, 4))] {
        let cat = catalog(h.clone(), a.clone(), 3);
        assert!(cat.branches.unresolved.is_none());
        let mut got: Vec<MultiPoly> = cat.branches.branches.iter().map(|b| b.u.clone()).collect();
        let mut want: Vec<MultiPoly> = reference::U_BRANCHES.iter().map(|t| reference::specialize(t, &values(h.clone(), a.clone())).unwrap()).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }
}

#[test]
fn double_root_at_unit_energy() {
    let cat = catalog(int(1), int(1), 1);
    let at_one = cat.phi.substitute(sym("E"), &MultiPoly::int(1));
    let search = u_branches(&at_one);
    let three_halves = search.branches.iter().find(|b| b.u == MultiPoly::constant(rat(3, 2))).unwrap();
    assert_eq!(three_halves.multiplicity, 2);
}

#[test]
fn families_match_published_forms() {
    for (h, a) in [(int(1), int(1)), (rat(2, 3), rat(5, 4))] {
        let cat = catalog(h.clone(), a.clone(), 5);
        assert_eq!(cat.families.len(), 6);
        for cmp in compare_families(&cat).unwrap() {
            let i = cmp.matched.expect("energy reproduced");
            let derived = &cat.families[i];
            // the derived family always agrees with the printed general form
            let implied = implied_family_phi(&cmp.published, &cat.values).unwrap();
            let ratio = (&h * &h).recip();
            assert_eq!(implied.scale(&ratio), derived.phi);
            if cmp.published.energy == "-h^2*p/(2*a^2)" {
                // printed (p-2-x) where the general form gives (p+2-x)
                assert_eq!(cmp.printed_only_roots, vec![reference::specialize("p-2", &cat.values).unwrap()]);
                assert_eq!(cmp.derived_only_roots, vec![reference::specialize("p+2", &cat.values).unwrap()]);
            } else {
                assert!(cmp.roots_agree(), "{cmp:?}");
                assert_eq!(cmp.prefactor_ratio, Some(&h * &h));
            }
        }
    }
}

#[test]
fn unitarity_verdicts() {
    let cat = catalog(int(1), int(1), 50);
    let cmps = compare_families(&cat).unwrap();
    let fam = |k: usize| &cat.families[cmps[k].matched.unwrap()];
    for k in UNITARY {
        assert!(fam(k).unitary_for_all_p());
        assert_eq!(fam(k).unitarity.len(), 50);
    }
    // energies p/2 and -p/2: fail for 2 <= p <= 50
    for k in [0, 2] {
        assert!((2..=50).all(|p| !fam(k).unitarity[&p].pass));
    }
    assert_eq!(fam(0).exceptions(), vec![1]);
    assert_eq!(fam(0).unitarity[&3].first_failure, Some(2));
    assert!(!fam(2).unitarity[&1].pass);
    for k in [3, 4] {
        assert!((1..=50).all(|p| !fam(k).unitarity[&p].pass));
    }
    assert_eq!(fam(4).unitarity[&7].first_failure, Some(1));
    assert_eq!(cat.unitary_families().len(), 2);
    // p = 0 of the top family: a single state at 3/2
    assert_eq!(fam(5).energy_at(0), Some(rat(3, 2)));
    let vals: Vec<Rational> = (1..=4).map(|x| fam(5).phi_at(4).eval(&int(x))).collect();
    assert_eq!(vals, vec![int(128), int(360), int(576), int(560)]);
}

#[test]
fn printed_phi_deltas() {
    let spec = q5_spec();
    let sf = derive_structure_function(&spec, &derive_realization(&spec).unwrap(), &spec.k).unwrap();
    let deltas = phi_deltas(&sf).unwrap();
    let items: Vec<&str> = deltas.iter().map(|d| d.item.as_str()).collect();
    assert_eq!(items, ["expanded form, coefficient of nu^0", "expanded form, coefficient of nu^4", "factored form, coefficient of nu^0", "factored form, coefficient of nu^1", "factored form, coefficient of nu^2", "factored form, coefficient of nu^3", "factored form, coefficient of nu^4"]);
    assert_eq!(deltas[0].derived, "(4*E^4*a^8 - 12*E^3*a^6*h^2 + 11*E*a^2*h^6 + 15/4*h^8)/(a^4*h^2)");
    assert_eq!(FAMILIES.len(), 6);
}

#[test]
fn non_polynomial_branch_is_left_unresolved() {
    // u^2 = E^3 has no solution u(E) polynomial in E
    let (u, e, x) = (MultiPoly::var(sym("u")), MultiPoly::var(sym("E")), MultiPoly::var(sym("x")));
    let phi = &(&(&u * &u) - &e.pow(3)) + &(&x * &u);
    let search = u_branches(&phi);
    assert!(search.branches.is_empty());
    assert_eq!(search.unresolved, Some(&(&u * &u) - &e.pow(3)));
}
