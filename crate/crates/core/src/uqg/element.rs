use std::cmp::{Ordering, Reverse};
use std::fmt;

use rustc_hash::FxHashMap;

use super::free::{render_kvec, FreeElement, GenSymbol, KVec, SymWord, K0};
use super::rewriting::Word;
use crate::scalar::Scalar;

/// Basis monomial `F_f · K^k · E_e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalMonomial {
    pub f: Word,
    pub k: KVec,
    pub e: Word,
}

impl NormalMonomial {
    pub fn new(f: Word, k: KVec, e: Word) -> Self {
        NormalMonomial { f, k, e }
    }

    pub fn one() -> Self {
        Self::new(Word::new(), K0, Word::new())
    }

    pub fn is_one(&self) -> bool {
        self.f.is_empty() && self.e.is_empty() && self.k == K0
    }

    pub fn degree(&self) -> usize {
        self.f.len() + self.e.len()
    }

    pub fn to_symbols(&self) -> SymWord {
        let mut w = SymWord::new();
        w.extend(self.f.iter().map(|&x| GenSymbol::F(x)));
        if self.k != K0 {
            w.push(GenSymbol::K(self.k));
        }
        w.extend(self.e.iter().map(|&x| GenSymbol::E(x)));
        w
    }

    fn display_order(&self, o: &Self) -> Ordering {
        (Reverse(self.degree()), Reverse(&self.f), Reverse(&self.e), Reverse(self.k))
            .cmp(&(Reverse(o.degree()), Reverse(&o.f), Reverse(&o.e), Reverse(o.k)))
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.f.iter().map(|x| format!("F{}", x + 1)).collect();
        if self.k != K0 {
            parts.push(render_kvec(&self.k));
        }
        parts.extend(self.e.iter().map(|x| format!("E{}", x + 1)));
        if parts.is_empty() {
            out.write_str("1")
        } else {
            out.write_str(&parts.join("*"))
        }
    }
}

pub(crate) fn add_mono(acc: &mut FxHashMap<NormalMonomial, Scalar>, m: NormalMonomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match acc.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// An element of `U_q(g)` in normal form.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Element {
    terms: FxHashMap<NormalMonomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::monomial(NormalMonomial::one(), c)
    }

    pub fn monomial(m: NormalMonomial, c: Scalar) -> Self {
        let mut t = FxHashMap::default();
        if !c.is_zero() {
            t.insert(m, c);
        }
        Element { terms: t }
    }

    pub(crate) fn from_map(terms: FxHashMap<NormalMonomial, Scalar>) -> Self {
        Element { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&NormalMonomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NormalMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &NormalMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: NormalMonomial, c: Scalar) {
        add_mono(&mut self.terms, m, c);
    }

    pub fn add(&self, o: &Element) -> Element {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn add_assign(&mut self, o: &Element) {
        for (m, c) in &o.terms {
            add_mono(&mut self.terms, m.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Element) -> Element {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Element {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        let mut r = Element::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Terms in display order.
    pub fn sorted_terms(&self) -> Vec<(&NormalMonomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_order(b.0));
        v
    }

    pub fn to_free(&self) -> FreeElement {
        let mut r = FreeElement::zero();
        for (m, c) in &self.terms {
            r.add_term(m.to_symbols(), c.clone());
        }
        r
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<(String, Scalar)> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                let s = if m.is_one() { String::new() } else { m.to_string() };
                (s, c.clone())
            })
            .collect();
        f.write_str(&super::render::render_terms(&rows))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
