//! Free algebra on generator symbols.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::rootdata::MAX_RANK;
use crate::scalar::Scalar;

/// Exponent vector of a K-monomial `Π K_i^{k_i}`.
pub type KVec = [i16; MAX_RANK];

pub const K0: KVec = [0; MAX_RANK];

pub fn kvec_unit(i: usize, e: i16) -> KVec {
    let mut k = K0;
    k[i] = e;
    k
}

pub fn kvec_add(a: &KVec, b: &KVec) -> KVec {
    let mut k = *a;
    for i in 0..MAX_RANK {
        k[i] += b[i];
    }
    k
}

pub fn kvec_neg(a: &KVec) -> KVec {
    let mut k = *a;
    for x in k.iter_mut() {
        *x = -*x;
    }
    k
}

/// A generator symbol. `K` carries a whole exponent vector, so `K_i`,
/// `K_i^{-1}` and torus elements such as `K_i K_j^{-1}` are single letters.
/// `B` is a coideal generator whose meaning depends on the active case.
/// Nodes are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenSymbol {
    F(u8),
    K(KVec),
    E(u8),
    B(u8),
}

impl GenSymbol {
    pub fn k(i: usize) -> Self {
        GenSymbol::K(kvec_unit(i, 1))
    }

    pub fn kinv(i: usize) -> Self {
        GenSymbol::K(kvec_unit(i, -1))
    }
}

pub fn render_kvec(k: &KVec) -> String {
    let mut parts = Vec::new();
    for (i, &e) in k.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("K{}", i + 1)),
            e => parts.push(format!("K{}^{}", i + 1, e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSymbol::E(i) => write!(f, "E{}", i + 1),
            GenSymbol::F(i) => write!(f, "F{}", i + 1),
            GenSymbol::B(i) => write!(f, "B{}", i + 1),
            GenSymbol::K(k) => {
                if *k == K0 {
                    f.write_str("1")
                } else {
                    f.write_str(&render_kvec(k))
                }
            }
        }
    }
}

pub type SymWord = SmallVec<[GenSymbol; 6]>;

/// Finite linear combination of words in generator symbols, with adjacent
/// K-letters merged.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<SymWord, Scalar>,
}

fn push_sym(w: &mut SymWord, s: GenSymbol) {
    if let GenSymbol::K(k) = s {
        if let Some(GenSymbol::K(prev)) = w.last_mut() {
            *prev = kvec_add(prev, &k);
            if *prev == K0 {
                w.pop();
            }
            return;
        }
        if k == K0 {
            return;
        }
    }
    w.push(s);
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(SymWord::new(), c);
        }
        FreeElement { terms: t }
    }

    pub fn sym(s: GenSymbol) -> Self {
        Self::word(&[s], Scalar::one())
    }

    pub fn e(i: usize) -> Self {
        Self::sym(GenSymbol::E(i as u8))
    }

    pub fn f(i: usize) -> Self {
        Self::sym(GenSymbol::F(i as u8))
    }

    pub fn b(i: usize) -> Self {
        Self::sym(GenSymbol::B(i as u8))
    }

    pub fn k(k: KVec) -> Self {
        Self::sym(GenSymbol::K(k))
    }

    pub fn word(w: &[GenSymbol], c: Scalar) -> Self {
        let mut out = SymWord::new();
        for &s in w {
            push_sym(&mut out, s);
        }
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(out, c);
        }
        FreeElement { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: SymWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    pub fn add(&self, o: &FreeElement) -> FreeElement {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &FreeElement) -> FreeElement {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> FreeElement {
        if c.is_zero() {
            return Self::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, o: &FreeElement) -> FreeElement {
        let mut r = FreeElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                for &s in w2 {
                    push_sym(&mut w, s);
                }
                r.add_term(w, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> FreeElement {
        let mut acc = FreeElement::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[a, b]_c = ab - c ba`.
    pub fn qcomm(a: &FreeElement, b: &FreeElement, c: &Scalar) -> FreeElement {
        a.mul(b).sub(&b.mul(a).scale(c))
    }

    /// `[a, b]_q = ab - q ba`.
    pub fn qcomm_q(a: &FreeElement, b: &FreeElement) -> FreeElement {
        Self::qcomm(a, b, &Scalar::q_pow(1))
    }

    /// Symbols occurring in the element.
    pub fn symbols(&self) -> Vec<GenSymbol> {
        let mut v: Vec<GenSymbol> = self.terms.keys().flat_map(|w| w.iter().copied()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Replace every symbol by an element of the free algebra.
    pub fn substitute(&self, img: &mut dyn FnMut(GenSymbol) -> FreeElement) -> FreeElement {
        let mut r = FreeElement::zero();
        for (w, c) in &self.terms {
            let mut t = FreeElement::scalar(c.clone());
            for &s in w {
                t = t.mul(&img(s));
            }
            r = r.add(&t);
        }
        r
    }

    /// Apply a map on individual coefficients.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> FreeElement {
        let mut r = FreeElement::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c));
        }
        r
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<(String, Scalar)> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| {
                let m: Vec<String> = w.iter().map(|s| s.to_string()).collect();
                (m.join("*"), c.clone())
            })
            .collect();
        f.write_str(&super::render::render_terms(&rows))
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
