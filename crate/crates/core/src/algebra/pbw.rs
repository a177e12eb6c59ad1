//! Normal ordering in the cubic algebra on the ordered basis `A < B < C`.

use std::collections::{BTreeMap, HashMap};

use crate::exactnum::PolyFraction;

use super::CubicAlgebraSpec;

pub const A: u8 = 0;
pub const B: u8 = 1;
pub const C: u8 = 2;

pub type Word = Vec<u8>;

/// Linear combination of words.
pub type Elem = BTreeMap<Word, PolyFraction>;

pub fn add_into(acc: &mut Elem, w: Word, c: PolyFraction) {
    if c.is_zero() {
        return;
    }
    match acc.entry(w) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Rewriting engine; `XY -> YX + corr(X, Y)` for `X > Y`.
pub struct Pbw {
    ba: Elem,
    ca: Elem,
    cb: Elem,
    cache: HashMap<Word, Elem>,
}

impl Pbw {
    pub fn new(spec: &CubicAlgebraSpec) -> Pbw {
        let neg = |c: &PolyFraction| -c;
        let one = PolyFraction::one();
        let mut ba = Elem::new();
        add_into(&mut ba, vec![C], -&one);
        // CA = AC - [A, C]
        let mut ca = Elem::new();
        add_into(&mut ca, vec![A, A], neg(&spec.alpha));
        add_into(&mut ca, vec![A, B], neg(&spec.beta));
        add_into(&mut ca, vec![B, A], neg(&spec.beta));
        add_into(&mut ca, vec![A], neg(&spec.gamma));
        add_into(&mut ca, vec![B], neg(&spec.delta));
        add_into(&mut ca, vec![], neg(&spec.epsilon));
        // CB = BC - [B, C]
        let mut cb = Elem::new();
        add_into(&mut cb, vec![A, A, A], neg(&spec.mu));
        add_into(&mut cb, vec![A, A], neg(&spec.nu));
        add_into(&mut cb, vec![B, B], spec.beta.clone());
        add_into(&mut cb, vec![A, B], spec.alpha.clone());
        add_into(&mut cb, vec![B, A], spec.alpha.clone());
        add_into(&mut cb, vec![A], neg(&spec.xi));
        add_into(&mut cb, vec![B], spec.gamma.clone());
        add_into(&mut cb, vec![], neg(&spec.zeta));
        Pbw { ba, ca, cb, cache: HashMap::new() }
    }

    /// Normal form of a single word.
    pub fn normal_form(&mut self, w: &[u8]) -> Elem {
        if let Some(e) = self.cache.get(w) {
            return e.clone();
        }
        let Some(p) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            let mut e = Elem::new();
            e.insert(w.to_vec(), PolyFraction::one());
            return e;
        };
        let mut swapped = w.to_vec();
        swapped.swap(p, p + 1);
        let mut out = self.normal_form(&swapped);
        let corr = match (w[p], w[p + 1]) {
            (B, A) => self.ba.clone(),
            (C, A) => self.ca.clone(),
            (C, B) => self.cb.clone(),
            _ => unreachable!("descent pairs are BA, CA, CB"),
        };
        for (cw, c) in corr {
            let mut nw = w[..p].to_vec();
            nw.extend_from_slice(&cw);
            nw.extend_from_slice(&w[p + 2..]);
            for (rw, rc) in self.normal_form(&nw) {
                add_into(&mut out, rw, &c * &rc);
            }
        }
        self.cache.insert(w.to_vec(), out.clone());
        out
    }

    pub fn normalize(&mut self, e: &Elem) -> Elem {
        let mut out = Elem::new();
        for (w, c) in e {
            for (rw, rc) in self.normal_form(w) {
                add_into(&mut out, rw, c * &rc);
            }
        }
        out
    }

    pub fn mul(&mut self, x: &Elem, y: &Elem) -> Elem {
        let mut raw = Elem::new();
        for (wx, cx) in x {
            for (wy, cy) in y {
                let mut w = wx.clone();
                w.extend_from_slice(wy);
                add_into(&mut raw, w, cx * cy);
            }
        }
        self.normalize(&raw)
    }

    pub fn commutator(&mut self, x: &Elem, y: &Elem) -> Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        let mut out = xy;
        for (w, c) in yx {
            add_into(&mut out, w, -c);
        }
        out
    }
}

pub fn letter(l: u8) -> Elem {
    let mut e = Elem::new();
    e.insert(vec![l], PolyFraction::one());
    e
}
