use crate::exactnum::{parse_expr, Atom, MultiPoly, PolyFraction, SymbolTable};

use super::{a_sym, x_sym, DiffOp};

/// The pole factors `x - a` and `x + a` of the Q5 potential.
pub fn q5_atoms() -> Vec<Atom> {
    let a = MultiPoly::var(a_sym());
    vec![Atom::linear(x_sym(), a.clone()), Atom::linear(x_sym(), -a)]
}

fn expr(text: &str) -> PolyFraction {
    parse_expr(text, &SymbolTable::open().with_atoms(q5_atoms())).expect("well-formed built-in expression")
}

/// Hamiltonian and integrals of the Q5 system, with angular momentum
/// `L = x Py - y Px`.
#[derive(Clone, Debug)]
pub struct Q5Operators {
    pub h: DiffOp,
    pub a: DiffOp,
    pub b: DiffOp,
    pub l: DiffOp,
}

pub fn build_q5() -> Q5Operators {
    let (px, py) = (DiffOp::px(), DiffOp::py());
    let px2 = px.compose(&px);
    let py2 = py.compose(&py);
    let half = PolyFraction::from(crate::exactnum::rat(1, 2));

    let barrier = "1/(x - a)^2 + 1/(x + a)^2";
    let vh = expr(&format!("h^2*((x^2 + y^2)/(8*a^4) + {barrier})"));
    let va = expr(&format!("h^2*((x^2 - y^2)/(8*a^4) + {barrier})"));
    let h = &(&px2 + &py2).scale(&half) + &DiffOp::scalar(vh);
    let a = &(&px2 - &py2).scale(&half) + &DiffOp::scalar(va);

    let x = DiffOp::scalar(expr("x"));
    let y = DiffOp::scalar(expr("y"));
    let l = &x.compose(&py) - &y.compose(&px);

    let fx = expr("h^2*y*((4*a^2 - x^2)/(4*a^4) - 6*(x^2 + a^2)/((x - a)^2*(x + a)^2))");
    let fy = expr(
        "h^2*x*((x^2 - 4*a^2)/(4*a^4) - 2/((x - a)*(x + a)) + 4*(x^2 + a^2)/((x - a)^2*(x + a)^2))",
    );
    let b = &(&l.anticommutator(&px2) + &DiffOp::scalar(fx).anticommutator(&px))
        + &DiffOp::scalar(fy).anticommutator(&py);
    Q5Operators { h, a, b, l }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::exactnum::{int, sym};

    #[test]
    fn potential_at_origin() {
        let q = build_q5();
        let v = q.h.coeff(0, 0);
        let at: BTreeMap<_, _> = [(sym("x"), int(0)), (sym("y"), int(0))].into();
        assert_eq!(v.eval_partial(&at).unwrap(), expr("2*h^2/a^2"));
    }

    #[test]
    fn parity_of_hamiltonian() {
        let q = build_q5();
        assert_eq!(q.h.reflect(true, false), q.h);
        assert_eq!(q.h.reflect(false, true), q.h);
        assert!(q.b.order() == 3);
    }
}
