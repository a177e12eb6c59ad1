use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// An interned variable name.
///
/// Symbols are compared by name, so two symbols created from the same text
/// are always equal regardless of where they were interned. The imaginary
/// unit is the distinguished symbol [`Symbol::imag`].
#[derive(Clone, Copy)]
pub struct Symbol(&'static str);

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static POOL: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    POOL.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        let mut pool = interner().lock().expect("symbol interner poisoned");
        if let Some(s) = pool.get(name) {
            return Symbol(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        pool.insert(leaked);
        Symbol(leaked)
    }

    pub fn name(self) -> &'static str {
        self.0
    }

    /// The imaginary unit, reduced eagerly by `i^2 = -1`.
    pub fn imag() -> Symbol {
        Symbol::new("i")
    }

    pub fn is_imag(self) -> bool {
        self.0 == "i"
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0) || self.0 == other.0
    }
}

impl Eq for Symbol {}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(other.0)
    }
}

impl std::hash::Hash for Symbol {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Shorthand for [`Symbol::new`].
pub fn sym(name: &str) -> Symbol {
    Symbol::new(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = sym("alpha");
        let b = Symbol::new(&String::from("alpha"));
        assert_eq!(a, b);
        assert!(std::ptr::eq(a.name(), b.name()));
        assert!(sym("E") < sym("a"));
        assert!(Symbol::imag().is_imag());
    }
}
