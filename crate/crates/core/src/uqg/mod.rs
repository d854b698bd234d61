//! The quantized enveloping algebra `U_q(g)` and its normal forms.
//!
//! Elements are written in the PBW-type basis `F-word · K^μ · E-word`
//! with both words irreducible for the completed Serre system.

mod element;
mod free;
mod hilbert;
pub mod hopf;
pub mod parse;
mod render;
pub mod rewriting;

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use parking_lot::{Mutex, RwLock};
use rustc_hash::FxHashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, MAX_RANK};
use crate::scalar::{q_diff, Scalar};

pub use element::{Element, NormalMonomial};
pub use free::{kvec_add, kvec_neg, kvec_unit, render_kvec, FreeElement, GenSymbol, KVec, SymWord, K0};
pub use parse::parse_expression;
pub use render::render_terms;
pub use rewriting::{cached_systems, completed_system, set_cache_dir, Certificate, RewritingSystem, Word, DEFAULT_DEGREE_CAP};

type Terms = Vec<(NormalMonomial, Scalar)>;

pub(crate) struct UqInner {
    rd: RootDatum,
    sys: Arc<RewritingSystem>,
    pair: [[i32; MAX_RANK]; MAX_RANK],
    qdiff_inv: Vec<Scalar>,
    straighten: RwLock<FxHashMap<(Word, Word), Arc<Terms>>>,
}

/// Handle on `U_q(g)` for one root datum. Cheap to clone; caches are shared.
#[derive(Clone)]
pub struct Uq(Arc<UqInner>);

fn uq_registry() -> &'static Mutex<FxHashMap<(String, usize), Uq>> {
    static R: OnceLock<Mutex<FxHashMap<(String, usize), Uq>>> = OnceLock::new();
    R.get_or_init(|| Mutex::new(FxHashMap::default()))
}

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);

/// Degree cap used by [`Uq::new`].
pub fn set_default_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, AtomicOrdering::Relaxed);
}

pub fn default_degree_cap() -> usize {
    DEGREE_CAP.load(AtomicOrdering::Relaxed)
}

impl Uq {
    pub fn new(rd: &RootDatum) -> Result<Uq> {
        Self::with_cap(rd, default_degree_cap())
    }

    pub fn with_cap(rd: &RootDatum, cap: usize) -> Result<Uq> {
        let key = (rd.name(), cap);
        if let Some(u) = uq_registry().lock().get(&key) {
            return Ok(u.clone());
        }
        let sys = completed_system(rd, cap)?;
        let n = rd.rank();
        let mut pair = [[0; MAX_RANK]; MAX_RANK];
        for (i, row) in pair.iter_mut().enumerate().take(n) {
            for (j, x) in row.iter_mut().enumerate().take(n) {
                *x = rd.pairing(i, j);
            }
        }
        let qdiff_inv = (0..n).map(|i| q_diff(rd.d(i)).inverse().expect("nonzero")).collect();
        let u = Uq(Arc::new(UqInner {
            rd: rd.clone(),
            sys,
            pair,
            qdiff_inv,
            straighten: RwLock::new(FxHashMap::default()),
        }));
        uq_registry().lock().insert(key, u.clone());
        Ok(u)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.0.rd
    }

    pub fn rank(&self) -> usize {
        self.0.rd.rank()
    }

    pub fn system(&self) -> &Arc<RewritingSystem> {
        &self.0.sys
    }

    /// `(μ, wt)` for a K-exponent vector and a block word: `Σ_ij μ_i (α_i, α_j) w_j`.
    fn pair_kw(&self, k: &KVec, w: &[u8]) -> i32 {
        let mut s = 0;
        for &x in w {
            for (i, &ki) in k.iter().enumerate() {
                if ki != 0 {
                    s += ki as i32 * self.0.pair[i][x as usize];
                }
            }
        }
        s
    }

    fn pair_node_weight(&self, a: usize, w: &[u8]) -> i32 {
        w.iter().map(|&x| self.0.pair[a][x as usize]).sum()
    }

    /// `e · f` rewritten as `Σ c f' K^κ e'` for irreducible block words.
    fn straighten(&self, e: &[u8], f: &[u8]) -> Arc<Terms> {
        if e.is_empty() || f.is_empty() {
            return Arc::new(vec![(
                NormalMonomial::new(Word::from_slice(f), K0, Word::from_slice(e)),
                Scalar::one(),
            )]);
        }
        let key = (Word::from_slice(e), Word::from_slice(f));
        if let Some(r) = self.0.straighten.read().get(&key) {
            return r.clone();
        }
        let sys = &self.0.sys;
        let a = *e.last().unwrap();
        let e0 = &e[..e.len() - 1];
        // E_a · f
        let mut x: FxHashMap<NormalMonomial, Scalar> = FxHashMap::default();
        x.insert(
            NormalMonomial::new(Word::from_slice(f), K0, Word::from_slice(&[a])),
            Scalar::one(),
        );
        for t in 0..f.len() {
            if f[t] != a {
                continue;
            }
            let pre = &f[..t];
            let post = &f[t + 1..];
            let n = self.pair_node_weight(a as usize, post);
            let inv = &self.0.qdiff_inv[a as usize];
            let cp = inv.mul_v_pow(-2 * n);
            let cm = inv.mul_v_pow(2 * n).neg();
            for (g, cg) in sys.mul_word(pre, post) {
                element::add_mono(
                    &mut x,
                    NormalMonomial::new(g.clone(), kvec_unit(a as usize, 1), Word::new()),
                    &cg * &cp,
                );
                element::add_mono(&mut x, NormalMonomial::new(g, kvec_unit(a as usize, -1), Word::new()), &cg * &cm);
            }
        }
        let res: Terms = if e0.is_empty() {
            x.into_iter().collect()
        } else {
            let mut acc: FxHashMap<NormalMonomial, Scalar> = FxHashMap::default();
            for (m, c) in x {
                let inner = self.straighten(e0, &m.f);
                for (m2, c2) in inner.iter() {
                    let qe = -self.pair_kw(&m.k, &m2.e);
                    let coef = (&c * c2).mul_v_pow(2 * qe);
                    let k = kvec_add(&m2.k, &m.k);
                    for (h, ch) in sys.mul_word(&m2.e, &m.e) {
                        element::add_mono(&mut acc, NormalMonomial::new(m2.f.clone(), k, h), &coef * &ch);
                    }
                }
            }
            acc.into_iter().collect()
        };
        let res = Arc::new(res);
        self.0.straighten.write().insert(key, res.clone());
        res
    }

    /// Product of two basis monomials, accumulated into `acc` with factor `c`.
    pub(crate) fn mul_mono_into(
        &self,
        acc: &mut FxHashMap<NormalMonomial, Scalar>,
        m1: &NormalMonomial,
        m2: &NormalMonomial,
        c: &Scalar,
    ) {
        let sys = &self.0.sys;
        let s = self.straighten(&m1.e, &m2.f);
        for (mid, cm) in s.iter() {
            let qe = -self.pair_kw(&m1.k, &mid.f) - self.pair_kw(&m2.k, &mid.e);
            let coef = (c * cm).mul_v_pow(2 * qe);
            let k = kvec_add(&kvec_add(&m1.k, &mid.k), &m2.k);
            let ff = sys.mul_word(&m1.f, &mid.f);
            let ee = sys.mul_word(&mid.e, &m2.e);
            for (g, cg) in &ff {
                let cfg = &coef * cg;
                for (h, ch) in &ee {
                    element::add_mono(acc, NormalMonomial::new(g.clone(), k, h.clone()), &cfg * ch);
                }
            }
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.mul_checked(a, b, None).expect("no budget")
    }

    /// Product, polling the budget every few thousand monomial pairs.
    pub fn mul_checked(&self, a: &Element, b: &Element, budget: Option<&Budget>) -> Result<Element> {
        let mut acc: FxHashMap<NormalMonomial, Scalar> = FxHashMap::default();
        let mut count = 0usize;
        for (m1, c1) in a.iter() {
            for (m2, c2) in b.iter() {
                self.mul_mono_into(&mut acc, m1, m2, &(c1 * c2));
                count += 1;
                if count.is_multiple_of(4096) {
                    if let Some(bg) = budget {
                        bg.check(acc.len())?;
                    }
                }
            }
        }
        if let Some(bg) = budget {
            bg.check(acc.len())?;
        }
        Ok(Element::from_map(acc))
    }

    pub fn pow(&self, a: &Element, n: u32) -> Element {
        let mut acc = Element::one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn e(&self, i: usize) -> Element {
        Element::monomial(NormalMonomial::new(Word::new(), K0, Word::from_slice(&[i as u8])), Scalar::one())
    }

    pub fn f(&self, i: usize) -> Element {
        Element::monomial(NormalMonomial::new(Word::from_slice(&[i as u8]), K0, Word::new()), Scalar::one())
    }

    pub fn k(&self, k: KVec) -> Element {
        Element::monomial(NormalMonomial::new(Word::new(), k, Word::new()), Scalar::one())
    }

    pub fn ki(&self, i: usize, e: i16) -> Element {
        self.k(kvec_unit(i, e))
    }

    /// Value of a generator symbol that is not a coideal generator.
    pub fn symbol(&self, s: GenSymbol) -> Result<Element> {
        let n = self.rank();
        match s {
            GenSymbol::E(i) if (i as usize) < n => Ok(self.e(i as usize)),
            GenSymbol::F(i) if (i as usize) < n => Ok(self.f(i as usize)),
            GenSymbol::K(k) => {
                if k[n..].iter().any(|&x| x != 0) {
                    return Err(Error::NodeOutOfRange { node: n + 1, rank: n });
                }
                Ok(self.k(k))
            }
            GenSymbol::B(i) => Err(Error::UndefinedImage(format!("B{} has no value in U_q", i + 1))),
            GenSymbol::E(i) | GenSymbol::F(i) => Err(Error::NodeOutOfRange {
                node: i as usize + 1,
                rank: n,
            }),
        }
    }

    /// Evaluate a free element, substituting `value(s)` for each symbol.
    /// Words sharing a prefix reuse the partial product.
    pub fn eval(
        &self,
        x: &FreeElement,
        value: &mut dyn FnMut(GenSymbol) -> Result<Arc<Element>>,
        budget: Option<&Budget>,
    ) -> Result<Element> {
        let mut out: FxHashMap<NormalMonomial, Scalar> = FxHashMap::default();
        let mut stack: Vec<(GenSymbol, Element)> = Vec::new();
        for (w, c) in x.terms() {
            let common = stack.iter().zip(w.iter()).take_while(|(a, b)| a.0 == **b).count();
            stack.truncate(common);
            for d in common..w.len() {
                let v = value(w[d])?;
                let p = match stack.last() {
                    None => (*v).clone(),
                    Some((_, prev)) => self.mul_checked(prev, &v, budget)?,
                };
                stack.push((w[d], p));
            }
            match stack.last() {
                None => element::add_mono(&mut out, NormalMonomial::one(), c.clone()),
                Some((_, p)) => {
                    for (m, cm) in p.iter() {
                        element::add_mono(&mut out, m.clone(), c * cm);
                    }
                }
            }
            if let Some(bg) = budget {
                bg.check(out.len())?;
            }
        }
        Ok(Element::from_map(out))
    }

    /// Normal form of a free element in `E`, `F`, `K` symbols.
    pub fn normal_form(&self, x: &FreeElement) -> Result<Element> {
        self.eval(x, &mut |s| self.symbol(s).map(Arc::new), None)
    }

    pub fn equal(&self, a: &FreeElement, b: &FreeElement) -> Result<bool> {
        Ok(self.normal_form(&a.sub(b))?.is_zero())
    }

    /// Number of cached straightening entries.
    pub fn cache_len(&self) -> usize {
        self.0.straighten.read().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uq(t: char, n: usize) -> Uq {
        Uq::new(&RootDatum::new(t, n).unwrap()).unwrap()
    }

    #[test]
    fn a1_commutator() {
        let u = uq('A', 1);
        let x = FreeElement::e(0).mul(&FreeElement::f(0));
        let v = u.normal_form(&x).unwrap();
        assert_eq!(v.to_string(), "F1*E1 + (K1 - K1^-1)/(q - q^-1)");
        let y = FreeElement::e(0).mul(&FreeElement::sym(GenSymbol::k(0)));
        assert_eq!(u.normal_form(&y).unwrap().to_string(), "q^-2*K1*E1");
    }

    #[test]
    fn a2_serre_normal_form() {
        let u = uq('A', 2);
        let x = FreeElement::word(&[GenSymbol::E(1), GenSymbol::E(0), GenSymbol::E(0)], Scalar::one());
        let v = u.normal_form(&x).unwrap();
        assert_eq!(v.to_string(), "(q + q^-1)*E1*E2*E1 - E1*E1*E2");
    }

    #[test]
    fn k_inverse_cancels() {
        let u = uq('B', 2);
        let x = FreeElement::sym(GenSymbol::k(1)).mul(&FreeElement::sym(GenSymbol::kinv(1)));
        assert!(u.normal_form(&x).unwrap().is_one());
    }
}
