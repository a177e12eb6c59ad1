use proptest::prelude::*;

use superalg::exactnum::{interpolate, isolate_real_roots, parse_expr, rat, rational_roots, sym, MultiPoly, Monomial, NFunc, PolyFraction, QPoly, Rational, SymbolTable, UPoly};
use superalg::ladder::{LadderExpr, PhiPoly};
use superalg::weylop::{x_sym, y_sym, DiffOp};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    let names = ["x", "y", "h"];
    prop::collection::vec((small_rat(), 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(move |terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(c, i, j, k)| {
            (Monomial::from_pairs([(sym(names[0]), i), (sym(names[1]), j), (sym(names[2]), k)]), c)
        }))
    })
}

fn diffop() -> impl Strategy<Value = DiffOp> {
    let names = ["x", "y"];
    prop::collection::vec((0u32..2, 0u32..2, small_rat(), 0u32..2, 0u32..2), 1..4).prop_map(move |terms| {
        DiffOp::from_terms(terms.into_iter().map(|(i, j, c, ex, ey)| {
            let m = Monomial::from_pairs([(sym(names[0]), ex), (sym(names[1]), ey)]);
            ((i, j), PolyFraction::from(MultiPoly::term(c, m)))
        }))
    })
}

fn upoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(small_rat(), 1..3).prop_map(|cs| UPoly::from_rationals(&cs))
}

fn ladder() -> impl Strategy<Value = LadderExpr> {
    prop::collection::vec((-1i64..=1, upoly()), 1..3).prop_map(|terms| {
        terms.into_iter().fold(LadderExpr::zero(), |acc, (k, f)| {
            let t = match k {
                -1 => &LadderExpr::func(NFunc::poly(f)) * &LadderExpr::b(),
                1 => &LadderExpr::func(NFunc::poly(f)) * &LadderExpr::b_dagger(),
                _ => LadderExpr::func(NFunc::poly(f)),
            };
            &acc + &t
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn display_parses_back(a in poly(), b in poly()) {
        let table = SymbolTable::open();
        for p in [a.clone(), &a * &b - b.clone()] {
            let f = PolyFraction::from(p);
            prop_assert_eq!(parse_expr(&f.to_string(), &table).unwrap(), f);
        }
    }

    #[test]
    fn interpolation_recovers_polynomials(cs in prop::collection::vec(small_rat(), 1..5), start in -3i64..3) {
        let p = QPoly::new(cs);
        let pts: Vec<_> = (0..6).map(|i| { let x = rat(start + i, 1); (x.clone(), p.eval(&x)) }).collect();
        prop_assert_eq!(interpolate(&pts, 4).unwrap(), p);
    }

    #[test]
    fn root_isolation_counts_and_brackets(roots in prop::collection::vec(small_rat(), 1..5)) {
        let p = roots.iter().fold(QPoly::constant(rat(1, 1)), |acc, r| &acc * &QPoly::linear_root(r));
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let isolated = isolate_real_roots(&p, None, None);
        prop_assert_eq!(isolated.len(), distinct.len());
        for (iv, r) in isolated.iter().zip(&distinct) {
            prop_assert!(&iv.lo <= r && r <= &iv.hi);
            prop_assert_eq!(iv.multiplicity as usize, roots.iter().filter(|x| *x == r).count());
        }
        let exact: Vec<Rational> = rational_roots(&p).into_iter().map(|(r, _)| r).collect();
        prop_assert_eq!(exact, distinct);
    }

    #[test]
    fn irrational_roots_are_bracketed(n in 2i64..40) {
        prop_assume!((1..7).all(|k| k * k != n));
        let p = QPoly::new(vec![rat(-n, 1), rat(0, 1), rat(1, 1)]);
        let isolated = isolate_real_roots(&p, None, Some(rat(1, 1_000_000)));
        prop_assert_eq!(isolated.len(), 2);
        let sqrt = (n as f64).sqrt();
        prop_assert!((isolated[1].approx() - sqrt).abs() < 1e-6);
        prop_assert!(rational_roots(&p).is_empty());
    }

    #[test]
    fn differential_operators_associate(a in diffop(), b in diffop(), c in diffop()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn commutators_satisfy_jacobi(a in diffop(), b in diffop(), c in diffop()) {
        let j = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a))) + &c.commutator(&a.commutator(&b));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn ladder_composition_associates(a in ladder(), b in ladder(), c in ladder()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        let j = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a))) + &c.commutator(&a.commutator(&b));
        prop_assert!(j.is_zero());
    }
}

#[test]
fn canonical_commutation() {
    let x = DiffOp::scalar(PolyFraction::var(x_sym()));
    let y = DiffOp::scalar(PolyFraction::var(y_sym()));
    assert_eq!(DiffOp::dx().commutator(&x), DiffOp::identity());
    assert!(DiffOp::dx().commutator(&y).is_zero());
}

#[test]
fn lowering_after_raising_is_phi_of_next_level() {
    let n = LadderExpr::b().compose(&LadderExpr::b_dagger());
    assert_eq!(n.offset(0), PhiPoly::phi(1));
}
