//! Recursive-descent parser for the config expression grammar:
//!
//! ```text
//! expr   = ["+"|"-"] term {("+"|"-") term}
//! term   = factor {("*"|"/") factor}
//! factor = base ["^" uint]
//! base   = rational | symbol | "(" expr ")" | "-" factor
//! ```
//!
//! `h` stands for the reduced Planck constant.

use num_bigint::BigInt;

use super::frac::{Atom, PolyFraction};
use super::poly::MultiPoly;
use super::rational::Rational;
use super::symbol::Symbol;
use super::ExactError;

/// Which names may appear, and which non-symbol atoms may divide.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    symbols: Option<Vec<Symbol>>,
    atoms: Vec<Atom>,
}

impl SymbolTable {
    /// Accepts any identifier.
    pub fn open() -> SymbolTable {
        SymbolTable::default()
    }

    pub fn with_symbols(names: &[&str]) -> SymbolTable {
        SymbolTable { symbols: Some(names.iter().map(|n| Symbol::new(n)).collect()), atoms: Vec::new() }
    }

    pub fn with_atoms(mut self, atoms: Vec<Atom>) -> SymbolTable {
        self.atoms = atoms;
        self
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    fn lookup(&self, name: &str) -> Option<Symbol> {
        match &self.symbols {
            None => Some(Symbol::new(name)),
            Some(list) => list.iter().copied().find(|s| s.name() == name),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExactError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            it.next();
        } else {
            return Err(ExactError::Syntax { offset: pos, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    table: &'a SymbolTable,
}

impl Parser<'_> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn error(&self, message: &str) -> ExactError {
        ExactError::Syntax { offset: self.offset(), message: message.to_string() }
    }

    fn expr(&mut self) -> Result<PolyFraction, ExactError> {
        let mut acc = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PolyFraction, ExactError> {
        let mut acc = self.factor()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let at = self.offset();
            let rhs = self.factor()?;
            acc = if op == '*' {
                &acc * &rhs
            } else {
                acc.try_div(&rhs, self.table.atoms()).map_err(|e| match e {
                    ExactError::DivisionByZero => ExactError::Syntax { offset: at, message: "division by zero".into() },
                    other => other,
                })?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyFraction, ExactError> {
        let base = self.base()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some((_, Tok::Int(n))) => {
                    let e: u32 = n.try_into().map_err(|_| self.error("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.error("expected unsigned integer exponent")),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<PolyFraction, ExactError> {
        let Some((off, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(PolyFraction::from(Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                let s = self.table.lookup(&name).ok_or(ExactError::UnknownSymbol { name, offset: off })?;
                Ok(PolyFraction::from(MultiPoly::var(s)))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Tok::Op(c) => Err(self.error(&format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `text` into a canonical fraction.
pub fn parse_expr(text: &str, table: &SymbolTable) -> Result<PolyFraction, ExactError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), table };
    let value = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;
    use crate::exactnum::symbol::sym;

    #[test]
    fn coefficient_literals() {
        let t = SymbolTable::open();
        let e = parse_expr("-32*h^2", &t).unwrap();
        let h = MultiPoly::var(sym("h"));
        assert_eq!(e, PolyFraction::from(h.pow(2).scale(&int(-32))));
        let d = parse_expr("h^4/a^4", &t).unwrap();
        assert_eq!(d.to_string(), "h^4/a^4");
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let t = SymbolTable::open();
        assert!(matches!(parse_expr("2*", &t), Err(ExactError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("h^", &t), Err(ExactError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("(a", &t), Err(ExactError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("a $ b", &t), Err(ExactError::Syntax { offset: 2, .. })));
    }

    #[test]
    fn unknown_symbols_and_bad_denominators() {
        let t = SymbolTable::with_symbols(&["E", "h", "a"]);
        assert!(matches!(parse_expr("E + q", &t), Err(ExactError::UnknownSymbol { offset: 4, .. })));
        assert!(matches!(
            parse_expr("1/(h + a)", &t),
            Err(ExactError::NonMonomialDenominator { .. })
        ));
        let x = sym("x");
        let with_atoms = SymbolTable::open().with_atoms(vec![Atom::linear(x, MultiPoly::var(sym("a")))]);
        let f = parse_expr("1/(x - a)^2", &with_atoms).unwrap();
        assert_eq!(parse_expr(&f.to_string(), &with_atoms).unwrap(), f);
    }

    #[test]
    fn precedence_and_round_trip() {
        let t = SymbolTable::open();
        let e = parse_expr("-(E + 1/2)^2 * 3/2 - a*b/c", &t).unwrap();
        let again = parse_expr(&e.to_string(), &t).unwrap();
        assert_eq!(e, again);
        assert_eq!(parse_expr("2^3 - 2*3", &t).unwrap(), PolyFraction::int(2));
    }
}
