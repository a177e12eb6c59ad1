//! Exact arithmetic kernel: rationals, sparse multivariate polynomials,
//! fractions over declared denominator atoms, rational functions in the
//! number operator, root isolation, interpolation and expression parsing.

pub mod frac;
pub mod linsolve;
pub mod nfunc;
pub mod parse;
pub mod poly;
pub mod qpoly;
pub mod rational;
pub mod symbol;

pub use frac::{Atom, PolyFraction};
pub use linsolve::{solve_linear, LinSolveError};
pub use nfunc::{NFunc, UPoly};
pub use parse::{parse_expr, SymbolTable};
pub use poly::{Monomial, MultiPoly};
pub use qpoly::{interpolate, isolate_real_roots, rational_roots, QPoly, RootInterval};
pub use rational::{int, rat, Rational};
pub use symbol::{sym, Symbol};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("symbol `{symbol}` has no assigned value")]
    UnassignedSymbol { symbol: String },
    #[error("pole: denominator factor {atom} vanishes")]
    Pole { atom: String },
    #[error("denominator `{expr}` is not a product of declared atoms")]
    NonMonomialDenominator { expr: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{name}` at offset {offset}")]
    UnknownSymbol { name: String, offset: usize },
    #[error("degree bound {bound} exceeded: data is not fitted by a polynomial of that degree")]
    DegreeBoundExceeded { bound: usize },
    #[error("{0}")]
    Invalid(String),
}
