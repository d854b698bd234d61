//! Lusztig automorphisms `T_i^{±1}` and evaluation of composed maps.
//!
//! A map is stored as formal images of generator symbols. Compositions
//! `φ_1 ∘ … ∘ φ_k` are evaluated level by level: the value of a symbol at
//! level `j` is its formal `φ_j`-image with each symbol replaced by its
//! value at level `j - 1`. Every intermediate is in normal form.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::report::{Outcome, Report};
use crate::rootdata::{RootDatum, MAX_RANK};
use crate::scalar::{q_factorial, Scalar};
use crate::uqg::{kvec_unit, Element, FreeElement, GenSymbol, KVec, Uq, K0};

/// Which K-monomials a map is defined on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KDomain {
    All,
    /// Only `K_i` with `i` in the list may occur.
    Nodes(Vec<usize>),
    /// Products of `K_i K_{τ(i)}^{-1}`: vectors with `μ_{τ(i)} = -μ_i`.
    AntiInvariant(Vec<usize>),
}

impl KDomain {
    pub fn contains(&self, k: &KVec) -> bool {
        match self {
            KDomain::All => true,
            KDomain::Nodes(ns) => k.iter().enumerate().all(|(i, &x)| x == 0 || ns.contains(&i)),
            KDomain::AntiInvariant(tau) => (0..tau.len()).all(|i| k[i] == -k[tau[i]]) && k[tau.len()..].iter().all(|&x| x == 0),
        }
    }
}

/// Formal images of generators under an algebra map.
#[derive(Clone, Debug)]
pub struct GeneratorImages {
    pub label: String,
    rank: usize,
    images: FxHashMap<GenSymbol, FreeElement>,
    /// `K^μ ↦ K^{Mμ}`.
    kmat: [[i16; MAX_RANK]; MAX_RANK],
    kdomain: KDomain,
}

impl GeneratorImages {
    /// The identity map on the given symbols and all K.
    pub fn identity(label: impl Into<String>, rank: usize) -> Self {
        let mut kmat = [[0; MAX_RANK]; MAX_RANK];
        for (i, row) in kmat.iter_mut().enumerate() {
            row[i] = 1;
        }
        GeneratorImages {
            label: label.into(),
            rank,
            images: FxHashMap::default(),
            kmat,
            kdomain: KDomain::All,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn set(&mut self, s: GenSymbol, img: FreeElement) {
        self.images.insert(s, img);
    }

    /// Set `K^μ ↦ K^{Mμ}` from a matrix with `M[i][j]` the exponent of
    /// `K_i` in the image of `K_j`.
    pub fn set_kmat(&mut self, m: [[i16; MAX_RANK]; MAX_RANK]) {
        self.kmat = m;
    }

    pub fn kmat(&self) -> &[[i16; MAX_RANK]; MAX_RANK] {
        &self.kmat
    }

    pub fn set_kdomain(&mut self, d: KDomain) {
        self.kdomain = d;
    }

    pub fn kdomain(&self) -> &KDomain {
        &self.kdomain
    }

    pub fn defines(&self, s: GenSymbol) -> bool {
        match s {
            GenSymbol::K(k) => self.kdomain.contains(&k),
            s => self.images.contains_key(&s),
        }
    }

    pub fn map_k(&self, k: &KVec) -> KVec {
        let mut out = K0;
        for (i, o) in out.iter_mut().enumerate().take(self.rank) {
            *o = (0..self.rank).map(|j| self.kmat[i][j] * k[j]).sum();
        }
        out
    }

    /// Formal image of a symbol, if the map defines it.
    pub fn image(&self, s: GenSymbol) -> Option<FreeElement> {
        match s {
            GenSymbol::K(k) if self.kdomain.contains(&k) => Some(FreeElement::k(self.map_k(&k))),
            GenSymbol::K(_) => None,
            s => self.images.get(&s).cloned(),
        }
    }

    /// Symbols with explicit images, sorted.
    pub fn symbols(&self) -> Vec<GenSymbol> {
        let mut v: Vec<GenSymbol> = self.images.keys().copied().collect();
        v.sort();
        v
    }
}

fn kmat_product(a: &[[i16; MAX_RANK]; MAX_RANK], b: &[[i16; MAX_RANK]; MAX_RANK], n: usize) -> [[i16; MAX_RANK]; MAX_RANK] {
    let mut c = [[0; MAX_RANK]; MAX_RANK];
    for i in 0..n {
        for j in 0..n {
            c[i][j] = (0..n).map(|l| a[i][l] * b[l][j]).sum();
        }
    }
    c
}

/// Definitions of coideal generators `B_i` as elements of `U_q(g)`.
pub type BDefs = FxHashMap<u8, FreeElement>;

/// Evaluator for `maps[0] ∘ maps[1] ∘ … ∘ maps[k-1]`.
pub struct Composite<'a> {
    uq: Uq,
    maps: Vec<&'a GeneratorImages>,
    defs: Option<&'a BDefs>,
    memo: Vec<FxHashMap<GenSymbol, Arc<Element>>>,
    budget: Option<Budget>,
    max_terms: usize,
}

impl<'a> Composite<'a> {
    pub fn new(uq: &Uq, maps: Vec<&'a GeneratorImages>, defs: Option<&'a BDefs>, budget: Option<&Budget>) -> Self {
        let levels = maps.len() + 1;
        Composite {
            uq: uq.clone(),
            maps,
            defs,
            memo: vec![FxHashMap::default(); levels],
            budget: budget.cloned(),
            max_terms: 0,
        }
    }

    /// Largest element built so far.
    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    fn definition(&self, i: u8) -> Result<FreeElement> {
        self.defs
            .and_then(|d| d.get(&i))
            .cloned()
            .ok_or_else(|| Error::UndefinedImage(format!("B{} is not defined in this context", i + 1)))
    }

    /// Value under `maps[0] ∘ … ∘ maps[level - 1]`.
    fn value(&mut self, level: usize, s: GenSymbol) -> Result<Arc<Element>> {
        if let Some(v) = self.memo[level].get(&s) {
            return Ok(v.clone());
        }
        let uq = self.uq.clone();
        let budget = self.budget.clone();
        let v = if level == 0 {
            match s {
                GenSymbol::B(i) => {
                    let d = self.definition(i)?;
                    uq.eval(&d, &mut |t| self.value(0, t), budget.as_ref())?
                }
                s => uq.symbol(s)?,
            }
        } else {
            let map = self.maps[level - 1];
            match map.image(s) {
                Some(img) => uq.eval(&img, &mut |t| self.value(level - 1, t), budget.as_ref())?,
                None => match s {
                    GenSymbol::B(i) => {
                        let d = self.definition(i)?;
                        uq.eval(&d, &mut |t| self.value(level, t), budget.as_ref())?
                    }
                    s => return Err(Error::UndefinedImage(format!("{s} under {}", map.label))),
                },
            }
        };
        self.max_terms = self.max_terms.max(v.len());
        let v = Arc::new(v);
        self.memo[level].insert(s, v.clone());
        Ok(v)
    }

    /// Image of a single symbol under the whole composition.
    pub fn symbol(&mut self, s: GenSymbol) -> Result<Arc<Element>> {
        let k = self.maps.len();
        self.value(k, s)
    }

    /// Image of an element of the free algebra under the whole composition.
    pub fn apply(&mut self, x: &FreeElement) -> Result<Element> {
        let uq = self.uq.clone();
        let budget = self.budget.clone();
        let k = self.maps.len();
        let r = uq.eval(x, &mut |t| self.value(k, t), budget.as_ref())?;
        self.max_terms = self.max_terms.max(r.len());
        Ok(r)
    }
}

/// Direction of a Lusztig automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

fn divided(sym: GenSymbol, n: i32, d: u32) -> FreeElement {
    let fact = q_factorial(n as i64, d).expect("nonnegative").inverse().expect("nonzero");
    FreeElement::sym(sym).pow(n as u32).scale(&fact)
}

/// `T_i` or `T_i^{-1}` on `E_j, F_j, K_j`. Nodes are 0-based.
pub fn lusztig_images(rd: &RootDatum, i: usize, dir: Direction) -> Result<GeneratorImages> {
    rd.check_node(i)?;
    let n = rd.rank();
    let di = rd.d(i);
    let name = match dir {
        Direction::Forward => format!("T{}", i + 1),
        Direction::Inverse => format!("T{}^-1", i + 1),
    };
    let mut g = GeneratorImages::identity(name, n);
    let ei = GenSymbol::E(i as u8);
    let fi = GenSymbol::F(i as u8);
    let ki = FreeElement::sym(GenSymbol::k(i));
    let kinv = FreeElement::sym(GenSymbol::kinv(i));
    let minus = Scalar::from_int(-1);
    match dir {
        Direction::Inverse => {
            g.set(ei, kinv.mul(&FreeElement::sym(fi)).scale(&minus));
            g.set(fi, FreeElement::sym(ei).mul(&ki).scale(&minus));
        }
        Direction::Forward => {
            g.set(ei, FreeElement::sym(fi).mul(&ki).scale(&minus));
            g.set(fi, kinv.mul(&FreeElement::sym(ei)).scale(&minus));
        }
    }
    let mut kmat = [[0i16; MAX_RANK]; MAX_RANK];
    for (a, row) in kmat.iter_mut().enumerate() {
        row[a] = 1;
    }
    for j in 0..n {
        kmat[i][j] -= rd.a(i, j) as i16;
    }
    g.set_kmat(kmat);
    for j in (0..n).filter(|&j| j != i) {
        let r = -rd.a(i, j);
        let ej = FreeElement::e(j);
        let fj = FreeElement::f(j);
        let mut ex = FreeElement::zero();
        let mut fx = FreeElement::zero();
        for s in 0..=r {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let cm = Scalar::from_int(sign).mul_v_pow(-2 * s * di as i32);
            let cp = Scalar::from_int(sign).mul_v_pow(2 * s * di as i32);
            let e_s = divided(ei, s, di);
            let e_r = divided(ei, r - s, di);
            let f_s = divided(fi, s, di);
            let f_r = divided(fi, r - s, di);
            match dir {
                Direction::Inverse => {
                    ex = ex.add(&e_s.mul(&ej).mul(&e_r).scale(&cm));
                    fx = fx.add(&f_r.mul(&fj).mul(&f_s).scale(&cp));
                }
                Direction::Forward => {
                    ex = ex.add(&e_r.mul(&ej).mul(&e_s).scale(&cm));
                    fx = fx.add(&f_s.mul(&fj).mul(&f_r).scale(&cp));
                }
            }
        }
        g.set(GenSymbol::E(j as u8), ex);
        g.set(GenSymbol::F(j as u8), fx);
    }
    Ok(g)
}

/// Generators `E_j, F_j, K_j` of `U_q(g)` as symbols.
pub fn uq_generators(n: usize) -> Vec<GenSymbol> {
    let mut v = Vec::new();
    for j in 0..n {
        v.push(GenSymbol::E(j as u8));
        v.push(GenSymbol::F(j as u8));
        v.push(GenSymbol::k(j));
    }
    v
}

/// Materialize the composition `maps[0] ∘ … ∘ maps[k-1]` of maps defined
/// on all of `U_q(g)` as a new set of images.
pub fn compose(uq: &Uq, label: impl Into<String>, maps: &[&GeneratorImages], budget: Option<&Budget>) -> Result<GeneratorImages> {
    let n = uq.rank();
    let mut out = GeneratorImages::identity(label, n);
    let mut kmat = *out.kmat();
    for m in maps {
        kmat = kmat_product(&kmat, m.kmat(), n);
    }
    out.set_kmat(kmat);
    let mut c = Composite::new(uq, maps.to_vec(), None, budget);
    for j in 0..n {
        for s in [GenSymbol::E(j as u8), GenSymbol::F(j as u8)] {
            out.set(s, c.symbol(s)?.to_free());
        }
    }
    Ok(out)
}

/// `T_{w_X} = T_1 T_3 ⋯ T_{2m-1}` on `A_{2m-1}`.
pub fn t_wx(uq: &Uq, m: usize) -> Result<GeneratorImages> {
    let rd = uq.datum();
    if rd.label() != 'A' || rd.rank() != 2 * m - 1 {
        return Err(Error::ContextMismatch(format!("T_wX for m = {m} needs A{}, got {rd}", 2 * m - 1)));
    }
    let ts: Vec<GeneratorImages> = (0..m).map(|k| lusztig_images(rd, 2 * k, Direction::Forward)).collect::<Result<_>>()?;
    let refs: Vec<&GeneratorImages> = ts.iter().collect();
    compose(uq, "T_wX", &refs, None)
}

/// `T_i T_j T_i ⋯` with `len` factors, as a list of maps.
fn alternating(ts: &[GeneratorImages], i: usize, j: usize, len: u32) -> Vec<&GeneratorImages> {
    (0..len).map(|t| if t % 2 == 0 { &ts[i] } else { &ts[j] }).collect()
}

/// `T_i ∘ T_i^{-1} = T_i^{-1} ∘ T_i = id` and the braid relations among
/// the `T_i`, on every generator.
pub fn verify_t_properties(uq: &Uq, budget: Option<&Budget>) -> Result<Report> {
    let rd = uq.datum().clone();
    let n = rd.rank();
    let suite = format!("lusztig-{rd}");
    let fw: Vec<GeneratorImages> = (0..n).map(|i| lusztig_images(&rd, i, Direction::Forward)).collect::<Result<_>>()?;
    let inv: Vec<GeneratorImages> = (0..n).map(|i| lusztig_images(&rd, i, Direction::Inverse)).collect::<Result<_>>()?;
    let mut rep = Report::new();
    for i in 0..n {
        for (order, maps) in [("T∘T^-1", vec![&fw[i], &inv[i]]), ("T^-1∘T", vec![&inv[i], &fw[i]])] {
            for g in uq_generators(n) {
                let maps = maps.clone();
                rep.record(&suite, "inverse", format!("{order}/i={}/{g}", i + 1), || {
                    let mut c = Composite::new(uq, maps, None, budget);
                    let v = c.symbol(g)?;
                    let d = v.sub(&uq.symbol(g)?);
                    Ok(Outcome {
                        residual: d,
                        max_terms: c.max_terms(),
                    })
                });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let m = rd.m(i, j);
            for g in uq_generators(n) {
                rep.record(&suite, "braid", format!("m={m}/i={},j={}/{g}", i + 1, j + 1), || {
                    let mut a = Composite::new(uq, alternating(&fw, i, j, m), None, budget);
                    let mut b = Composite::new(uq, alternating(&fw, j, i, m), None, budget);
                    let d = a.symbol(g)?.sub(&*b.symbol(g)?);
                    Ok(Outcome {
                        residual: d,
                        max_terms: a.max_terms().max(b.max_terms()),
                    })
                });
            }
        }
    }
    Ok(rep)
}

/// `K_i` raised to `e`, as a free element.
pub fn k_power(i: usize, e: i16) -> FreeElement {
    FreeElement::k(kvec_unit(i, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(t: char, n: usize) -> (RootDatum, Uq) {
        let rd = RootDatum::new(t, n).unwrap();
        let uq = Uq::new(&rd).unwrap();
        (rd, uq)
    }

    #[test]
    fn inverse_on_f_and_k() {
        let (rd, uq) = setup('A', 2);
        let t = lusztig_images(&rd, 0, Direction::Inverse).unwrap();
        let mut c = Composite::new(&uq, vec![&t], None, None);
        assert_eq!(c.symbol(GenSymbol::F(0)).unwrap().to_string(), "-q^-2*K1*E1");
        assert_eq!(c.symbol(GenSymbol::k(1)).unwrap().to_string(), "K1*K2");
        assert_eq!(c.symbol(GenSymbol::E(1)).unwrap().to_string(), "E2*E1 - q^-1*E1*E2");
    }

    #[test]
    fn fixes_orthogonal_nodes() {
        let (rd, uq) = setup('A', 3);
        let t = lusztig_images(&rd, 0, Direction::Forward).unwrap();
        let mut c = Composite::new(&uq, vec![&t], None, None);
        for g in [GenSymbol::E(2), GenSymbol::F(2), GenSymbol::k(2)] {
            assert_eq!(*c.symbol(g).unwrap(), uq.symbol(g).unwrap());
        }
    }

    #[test]
    fn a2_properties() {
        let (_, uq) = setup('A', 2);
        let rep = verify_t_properties(&uq, None).unwrap();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn kdomain_membership() {
        let d = KDomain::AntiInvariant(vec![2, 1, 0]);
        let mut k = K0;
        k[0] = 1;
        k[2] = -1;
        assert!(d.contains(&k));
        k[1] = 1;
        assert!(!d.contains(&k));
        assert!(KDomain::Nodes(vec![0, 2]).contains(&kvec_unit(2, -1)));
    }

    #[test]
    fn composition_order() {
        let (rd, uq) = setup('A', 2);
        let t1 = lusztig_images(&rd, 0, Direction::Forward).unwrap();
        let t2 = lusztig_images(&rd, 1, Direction::Forward).unwrap();
        let e2 = uq.symbol(GenSymbol::E(1)).unwrap();
        let mut c = Composite::new(&uq, vec![&t1, &t2], None, None);
        assert_eq!(*c.symbol(GenSymbol::E(0)).unwrap(), e2);
        let mut c = Composite::new(&uq, vec![&t2, &t1], None, None);
        assert_ne!(*c.symbol(GenSymbol::E(0)).unwrap(), e2);
    }
}
