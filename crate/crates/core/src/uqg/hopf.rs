//! Coproduct, antipode, counit and adjoint action.
//!
//! `Δ(E_i) = E_i⊗1 + K_i⊗E_i`, `Δ(F_i) = F_i⊗K_i^{-1} + 1⊗F_i`,
//! `Δ(K_i) = K_i⊗K_i`, `S(E_i) = -K_i^{-1}E_i`, `S(F_i) = -F_iK_i`.

use std::fmt;

use rustc_hash::FxHashMap;

use super::element::{Element, NormalMonomial};
use super::free::{kvec_neg, kvec_unit, KVec, K0};
use super::rewriting::Word;
use super::Uq;
use crate::error::{Error, Result};
use crate::scalar::{q_factorial, Scalar};

/// Element of `U_q(g) ⊗ U_q(g)`, both legs in normal form.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: FxHashMap<(NormalMonomial, NormalMonomial), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::pure(&Element::one(), &Element::one())
    }

    /// `a ⊗ b`.
    pub fn pure(a: &Element, b: &Element) -> Self {
        let mut t = TensorElement::zero();
        for (m1, c1) in a.iter() {
            for (m2, c2) in b.iter() {
                t.add_term(m1.clone(), m2.clone(), c1 * c2);
            }
        }
        t
    }

    pub fn add_term(&mut self, a: NormalMonomial, b: NormalMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry((a, b)) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(NormalMonomial, NormalMonomial), &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        for ((a, b), c) in &o.terms {
            r.add_term(a.clone(), b.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        for ((a, b), c) in &o.terms {
            r.add_term(a.clone(), b.clone(), c.neg());
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut r = TensorElement::zero();
        for ((a, b), x) in &self.terms {
            r.add_term(a.clone(), b.clone(), x * c);
        }
        r
    }

    pub fn mul(&self, uq: &Uq, o: &TensorElement) -> TensorElement {
        let mut r = TensorElement::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                let mut left = FxHashMap::default();
                uq.mul_mono_into(&mut left, a1, a2, &Scalar::one());
                let mut right = FxHashMap::default();
                uq.mul_mono_into(&mut right, b1, b2, &Scalar::one());
                let c = c1 * c2;
                for (l, cl) in &left {
                    let clc = &c * cl;
                    for (rr, cr) in &right {
                        r.add_term(l.clone(), rr.clone(), &clc * cr);
                    }
                }
            }
        }
        r
    }

    /// `Σ f(a) ⊗ g(b)`, used for maps such as `ε ⊗ id`.
    pub fn map_legs(&self, f: impl Fn(&NormalMonomial) -> Element, g: impl Fn(&NormalMonomial) -> Element) -> TensorElement {
        let mut r = TensorElement::zero();
        for ((a, b), c) in &self.terms {
            r = r.add(&TensorElement::pure(&f(a), &g(b)).scale(c));
        }
        r
    }

    /// `m(f ⊗ g)`: multiply the legs after applying a map to each.
    pub fn contract(&self, uq: &Uq, f: impl Fn(&NormalMonomial) -> Element, g: impl Fn(&NormalMonomial) -> Element) -> Element {
        let mut out = Element::zero();
        for ((a, b), c) in &self.terms {
            out.add_assign(&uq.mul(&f(a), &g(b)).scale(c));
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows: Vec<(String, Scalar)> = self
            .terms
            .iter()
            .map(|((a, b), c)| (format!("{a} ⊗ {b}"), c.clone()))
            .collect();
        rows.sort_by(|x, y| x.0.cmp(&y.0));
        f.write_str(&super::render::render_terms(&rows))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn mono(f: &[u8], k: KVec, e: &[u8]) -> NormalMonomial {
    NormalMonomial::new(Word::from_slice(f), k, Word::from_slice(e))
}

impl Uq {
    fn coproduct_e(&self, i: usize) -> TensorElement {
        let mut t = TensorElement::zero();
        t.add_term(mono(&[], K0, &[i as u8]), NormalMonomial::one(), Scalar::one());
        t.add_term(mono(&[], kvec_unit(i, 1), &[]), mono(&[], K0, &[i as u8]), Scalar::one());
        t
    }

    fn coproduct_f(&self, i: usize) -> TensorElement {
        let mut t = TensorElement::zero();
        t.add_term(mono(&[i as u8], K0, &[]), mono(&[], kvec_unit(i, -1), &[]), Scalar::one());
        t.add_term(NormalMonomial::one(), mono(&[i as u8], K0, &[]), Scalar::one());
        t
    }

    fn coproduct_monomial(&self, m: &NormalMonomial) -> TensorElement {
        let mut t = TensorElement::zero();
        t.add_term(mono(&[], m.k, &[]), mono(&[], m.k, &[]), Scalar::one());
        for &x in m.f.iter().rev() {
            t = self.coproduct_f(x as usize).mul(self, &t);
        }
        for &x in m.e.iter() {
            t = t.mul(self, &self.coproduct_e(x as usize));
        }
        t
    }

    /// `Δ(x)`, extended multiplicatively from the generators.
    pub fn coproduct(&self, x: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for (m, c) in x.iter() {
            out = out.add(&self.coproduct_monomial(m).scale(c));
        }
        out
    }

    fn antipode_monomial(&self, m: &NormalMonomial) -> Element {
        // S is an anti-homomorphism: S(f K e) = S(e) K^{-1} S(f) with reversed words
        let mut out = Element::one();
        for &x in m.e.iter().rev() {
            let s = self.mul(&self.ki(x as usize, -1), &self.e(x as usize)).neg();
            out = self.mul(&out, &s);
        }
        out = self.mul(&out, &self.k(kvec_neg(&m.k)));
        for &x in m.f.iter().rev() {
            let s = self.mul(&self.f(x as usize), &self.ki(x as usize, 1)).neg();
            out = self.mul(&out, &s);
        }
        out
    }

    pub fn antipode(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.iter() {
            out.add_assign(&self.antipode_monomial(m).scale(c));
        }
        out
    }

    pub fn counit(&self, x: &Element) -> Scalar {
        let mut s = Scalar::zero();
        for (m, c) in x.iter() {
            if m.f.is_empty() && m.e.is_empty() {
                s = &s + c;
            }
        }
        s
    }

    fn ad_e(&self, a: usize, u: &Element) -> Element {
        let e = self.e(a);
        let left = self.mul(&e, u);
        let conj = self.mul(&self.mul(&self.ki(a, 1), u), &self.ki(a, -1));
        left.sub(&self.mul(&conj, &e))
    }

    fn ad_f(&self, a: usize, u: &Element) -> Element {
        let f = self.f(a);
        let k = self.ki(a, 1);
        let left = self.mul(&self.mul(&f, u), &k);
        left.sub(&self.mul(&self.mul(u, &f), &k))
    }

    fn ad_k(&self, k: &KVec, u: &Element) -> Element {
        self.mul(&self.mul(&self.k(*k), u), &self.k(kvec_neg(k)))
    }

    /// `ad(x)(u) = Σ x_(1) u S(x_(2))`.
    pub fn adjoint(&self, x: &Element, u: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.iter() {
            let mut v = u.clone();
            for &a in m.e.iter().rev() {
                v = self.ad_e(a as usize, &v);
            }
            if m.k != K0 {
                v = self.ad_k(&m.k, &v);
            }
            for &a in m.f.iter().rev() {
                v = self.ad_f(a as usize, &v);
            }
            out.add_assign(&v.scale(c));
        }
        out
    }

    /// `E_i^{(n)}` or `F_i^{(n)}`.
    pub fn divided_power(&self, kind: char, i: usize, n: i64) -> Result<Element> {
        if n < 0 {
            return Err(Error::NegativeArgument {
                kind: "divided power",
                value: n,
            });
        }
        self.datum().check_node(i)?;
        let g = match kind {
            'E' => self.e(i),
            'F' => self.f(i),
            _ => return Err(Error::Unsupported(format!("divided power of {kind}"))),
        };
        let fact = q_factorial(n, self.datum().d(i))?;
        Ok(self.pow(&g, n as u32).scale(&fact.inverse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;

    fn gens(u: &Uq) -> Vec<Element> {
        let mut v = Vec::new();
        for i in 0..u.rank() {
            v.push(u.e(i));
            v.push(u.f(i));
            v.push(u.ki(i, 1));
            v.push(u.ki(i, -1));
        }
        v
    }

    #[test]
    fn antipode_and_counit_axioms() {
        let u = Uq::new(&RootDatum::new('B', 2).unwrap()).unwrap();
        let one = |m: &NormalMonomial| Element::monomial(m.clone(), Scalar::one());
        for x in gens(&u) {
            let d = u.coproduct(&x);
            let eps = Element::scalar(u.counit(&x));
            assert_eq!(d.contract(&u, |m| u.antipode(&one(m)), one), eps);
            assert_eq!(d.contract(&u, one, |m| u.antipode(&one(m))), eps);
            let left = d.contract(&u, |m| Element::scalar(u.counit(&one(m))), one);
            assert_eq!(left, x);
        }
    }

    #[test]
    fn coproduct_is_multiplicative() {
        let u = Uq::new(&RootDatum::new('A', 2).unwrap()).unwrap();
        let g = gens(&u);
        for a in &g {
            for b in &g {
                let lhs = u.coproduct(&u.mul(a, b));
                let rhs = u.coproduct(a).mul(&u, &u.coproduct(b));
                assert_eq!(lhs, rhs, "{a} {b}");
            }
        }
    }

    #[test]
    fn divided_power_and_adjoint() {
        let u = Uq::new(&RootDatum::new('A', 1).unwrap()).unwrap();
        let e2 = u.divided_power('E', 0, 2).unwrap();
        assert_eq!(u.mul(&e2, &Element::scalar(crate::scalar::q_int(2, 1))), u.pow(&u.e(0), 2));
        assert!(u.divided_power('E', 0, -1).is_err());
        // ad(E)(E) = E^2 - K E K^{-1} E = (1 - q^2) E^2
        let ad = u.adjoint(&u.e(0), &u.e(0));
        assert_eq!(ad, u.pow(&u.e(0), 2).scale(&(&Scalar::one() - &Scalar::q_pow(2))));
    }
}
