use std::time::Instant;

use superalg::exactnum::{parse_expr, PolyFraction, SymbolTable};
use superalg::weylop::{build_q5, express_in_basis, q5_atoms, DiffOp};

fn f(s: &str) -> PolyFraction {
    parse_expr(s, &SymbolTable::open()).unwrap()
}

#[test]
fn hamiltonian_commutes_with_integrals() {
    let t = Instant::now();
    let q = build_q5();
    assert!(q.h.commutator(&q.a).is_zero());
    assert!(q.h.commutator(&q.b).is_zero());
    eprintln!("integrals: {:?}", t.elapsed());
}

#[test]
fn opposite_angular_momentum_sign_breaks_the_integral() {
    let q = build_q5();
    let flipped = &q.b - &q.l.anticommutator(&DiffOp::px().compose(&DiffOp::px())).scale(&f("2"));
    assert!(!q.h.commutator(&flipped).is_zero());
}

#[test]
fn cubic_algebra_relations() {
    let t = Instant::now();
    let q = build_q5();
    let atoms = q5_atoms();
    let c = q.a.commutator(&q.b);
    let ac = q.a.commutator(&c);
    assert_eq!(express_in_basis(&ac, std::slice::from_ref(&q.b), &atoms).unwrap(), vec![f("h^4/a^4")]);
    eprintln!("[A,C]: {:?}", t.elapsed());
    let bc = q.b.commutator(&c);
    eprintln!("[B,C] built: {:?}", t.elapsed());
    let a2 = q.a.compose(&q.a);
    let h2 = q.h.compose(&q.h);
    let basis = vec![
        a2.compose(&q.a),
        a2.compose(&q.h),
        h2.compose(&q.h),
        a2.clone(),
        q.h.compose(&q.a),
        h2,
        q.a.clone(),
        q.h.clone(),
        DiffOp::identity(),
    ];
    eprintln!("basis built: {:?}", t.elapsed());
    let got = express_in_basis(&bc, &basis, &atoms).unwrap();
    let want: Vec<_> = [
        "-32*h^2", "-48*h^2", "16*h^2", "48*h^4/a^2", "32*h^4/a^2", "-16*h^4/a^2", "8*h^6/a^4", "-4*h^6/a^4",
        "-12*h^8/a^6",
    ]
    .iter()
    .map(|s| f(s))
    .collect();
    assert_eq!(got, want);
    eprintln!("[B,C] solved: {:?}", t.elapsed());
}

#[test]
fn operator_level_constants_and_casimir() {
    let t = Instant::now();
    let ex = superalg::algebra::extract_q5_constants().unwrap();
    eprintln!("extraction: {:?}", t.elapsed());
    assert_eq!(ex.spec, superalg::algebra::q5_spec());
}
