//! Word problem in spherical Artin braid groups through the left-greedy
//! normal form. Simple elements are Weyl group elements acting on simple
//! roots by integer matrices.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::report::Report;
use crate::rootdata::{CaseSpec, RootDatum, Variant};

/// An element `w` of the Weyl group, stored as the columns `w(α_j)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoxeterElement {
    rank: usize,
    cols: Vec<Vec<i32>>,
}

impl CoxeterElement {
    pub fn identity(rank: usize) -> Self {
        let cols = (0..rank)
            .map(|j| {
                let mut c = vec![0; rank];
                c[j] = 1;
                c
            })
            .collect();
        CoxeterElement { rank, cols }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `w(β)` for `β` in simple-root coordinates.
    pub fn apply(&self, beta: &[i32]) -> Vec<i32> {
        let mut out = vec![0; self.rank];
        for (j, &b) in beta.iter().enumerate() {
            if b != 0 {
                for (o, c) in out.iter_mut().zip(&self.cols[j]) {
                    *o += b * c;
                }
            }
        }
        out
    }
}

fn is_negative(v: &[i32]) -> bool {
    v.iter().all(|&x| x <= 0) && v.iter().any(|&x| x < 0)
}

/// Weyl group of a root datum with the data needed for Garside factors.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rd: RootDatum,
    gens: Vec<CoxeterElement>,
    longest: CoxeterElement,
}

impl WeylGroup {
    pub fn new(rd: &RootDatum) -> Self {
        let n = rd.rank();
        let gens: Vec<CoxeterElement> = (0..n)
            .map(|i| CoxeterElement {
                rank: n,
                cols: (0..n)
                    .map(|j| {
                        let mut c = vec![0; n];
                        c[j] = 1;
                        rd.reflect(i, &c)
                    })
                    .collect(),
            })
            .collect();
        let mut g = WeylGroup {
            rd: rd.clone(),
            gens,
            longest: CoxeterElement::identity(n),
        };
        let mut w = CoxeterElement::identity(n);
        while let Some(i) = (0..n).find(|&i| !g.is_right_descent(&w, i)) {
            w = g.mul(&w, &g.gens[i]);
        }
        g.longest = w;
        g
    }

    pub fn datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn rank(&self) -> usize {
        self.rd.rank()
    }

    pub fn s(&self, i: usize) -> &CoxeterElement {
        &self.gens[i]
    }

    pub fn longest(&self) -> &CoxeterElement {
        &self.longest
    }

    fn check(&self, w: &CoxeterElement) -> Result<()> {
        if w.rank != self.rank() {
            return Err(Error::ContextMismatch(format!("element of rank {} in W({})", w.rank, self.rd)));
        }
        Ok(())
    }

    pub fn mul(&self, a: &CoxeterElement, b: &CoxeterElement) -> CoxeterElement {
        CoxeterElement {
            rank: a.rank,
            cols: b.cols.iter().map(|c| a.apply(c)).collect(),
        }
    }

    pub fn mul_checked(&self, a: &CoxeterElement, b: &CoxeterElement) -> Result<CoxeterElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn from_word(&self, word: &[usize]) -> Result<CoxeterElement> {
        let mut w = CoxeterElement::identity(self.rank());
        for &i in word {
            self.rd.check_node(i)?;
            w = self.mul(&w, &self.gens[i]);
        }
        Ok(w)
    }

    /// `w(α_i) < 0`.
    pub fn is_right_descent(&self, w: &CoxeterElement, i: usize) -> bool {
        is_negative(&w.cols[i])
    }

    pub fn right_descents(&self, w: &CoxeterElement) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_right_descent(w, i)).collect()
    }

    /// `w^{-1}(α_i) < 0`.
    pub fn left_descents(&self, w: &CoxeterElement) -> Vec<usize> {
        self.right_descents(&self.inverse(w))
    }

    /// A reduced word, 0-based nodes.
    pub fn reduced_word(&self, w: &CoxeterElement) -> Vec<usize> {
        let mut w = w.clone();
        let mut rev = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| self.is_right_descent(&w, i)) {
            w = self.mul(&w, &self.gens[i]);
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    pub fn inverse(&self, w: &CoxeterElement) -> CoxeterElement {
        let mut word = self.reduced_word(w);
        word.reverse();
        self.from_word(&word).expect("nodes in range")
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &CoxeterElement) -> usize {
        self.rd.positive_roots().iter().filter(|b| is_negative(&w.apply(b))).count()
    }

    /// `w_0 w w_0`.
    fn conj_longest(&self, w: &CoxeterElement) -> CoxeterElement {
        self.mul(&self.mul(&self.longest, w), &self.longest)
    }
}

/// A word in the generators `s_i^{±1}`, 0-based nodes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BraidWord {
    pub letters: Vec<(usize, bool)>,
}

impl BraidWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn positive(nodes: &[usize]) -> Self {
        BraidWord {
            letters: nodes.iter().map(|&i| (i, true)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, o: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        BraidWord { letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|&(i, p)| (i, !p)).collect(),
        }
    }

    /// Apply a permutation of the nodes letter by letter.
    pub fn map_nodes(&self, f: impl Fn(usize) -> usize) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().map(|&(i, p)| (f(i), p)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        (0..k).fold(BraidWord::new(), |acc, _| acc.concat(self))
    }

    /// Parse words like `"s1 s2 s1^-1"`. Exponents `^k` with any nonzero
    /// integer `k` are expanded; `*` and `·` work as separators.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let bytes: Vec<(usize, char)> = text.char_indices().collect();
        let mut p = 0;
        let err = |offset: usize, message: &str| Error::Parse {
            offset,
            message: message.to_string(),
        };
        while p < bytes.len() {
            let (off, ch) = bytes[p];
            if ch.is_whitespace() || ch == '*' || ch == '·' {
                p += 1;
                continue;
            }
            if ch != 's' {
                return Err(err(off, "expected generator s<i>"));
            }
            p += 1;
            let start = p;
            while p < bytes.len() && bytes[p].1.is_ascii_digit() {
                p += 1;
            }
            if start == p {
                return Err(err(off, "missing node number"));
            }
            let num: String = bytes[start..p].iter().map(|x| x.1).collect();
            let node: usize = num.parse().map_err(|_| err(off, "bad node number"))?;
            if node == 0 {
                return Err(err(off, "nodes are numbered from 1"));
            }
            let mut exp: i64 = 1;
            if p < bytes.len() && bytes[p].1 == '^' {
                p += 1;
                let es = p;
                if p < bytes.len() && (bytes[p].1 == '-' || bytes[p].1 == '+') {
                    p += 1;
                }
                while p < bytes.len() && bytes[p].1.is_ascii_digit() {
                    p += 1;
                }
                let s: String = bytes[es..p].iter().map(|x| x.1).collect();
                let eoff = bytes.get(es).map_or(text.len(), |x| x.0);
                exp = s.parse().map_err(|_| err(eoff, "bad exponent"))?;
                if exp == 0 {
                    return Err(err(eoff, "zero exponent"));
                }
            }
            for _ in 0..exp.unsigned_abs() {
                letters.push((node - 1, exp > 0));
            }
        }
        Ok(BraidWord { letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, &(i, pos)) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{}", i + 1)?;
            if !pos {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// `Δ^infimum · x_1 ⋯ x_k` with left-weighted simple factors `x_t ≠ 1, Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GarsideNormalForm {
    pub infimum: i64,
    pub factors: Vec<CoxeterElement>,
}

impl GarsideNormalForm {
    /// Render with each factor as its reduced word.
    pub fn render(&self, w: &WeylGroup) -> String {
        let mut s = format!("D^{}", self.infimum);
        for x in &self.factors {
            let word: Vec<String> = w.reduced_word(x).iter().map(|i| format!("s{}", i + 1)).collect();
            s.push_str(&format!(" ({})", word.join(" ")));
        }
        s
    }

    /// Back to a braid word.
    pub fn to_word(&self, w: &WeylGroup) -> BraidWord {
        let delta = BraidWord::positive(&w.reduced_word(w.longest()));
        let mut out = if self.infimum >= 0 {
            delta.pow(self.infimum as usize)
        } else {
            delta.inverse().pow(self.infimum.unsigned_abs() as usize)
        };
        for x in &self.factors {
            out = out.concat(&BraidWord::positive(&w.reduced_word(x)));
        }
        out
    }
}

impl WeylGroup {
    /// Restore left-weightedness of a factor list.
    fn normalize(&self, factors: &mut Vec<CoxeterElement>, infimum: &mut i64) {
        let mut changed = true;
        while changed {
            changed = false;
            for t in (0..factors.len().saturating_sub(1)).rev() {
                loop {
                    let (a, b) = (&factors[t], &factors[t + 1]);
                    let binv = self.inverse(b);
                    let Some(i) = (0..self.rank()).find(|&i| self.is_right_descent(&binv, i) && !self.is_right_descent(a, i)) else {
                        break;
                    };
                    let s = &self.gens[i];
                    factors[t] = self.mul(&factors[t], s);
                    factors[t + 1] = self.mul(s, &factors[t + 1]);
                    changed = true;
                }
            }
        }
        factors.retain(|x| !x.is_identity());
        while factors.first().is_some_and(|x| *x == self.longest) {
            factors.remove(0);
            *infimum += 1;
        }
    }

    pub fn normal_form(&self, word: &BraidWord) -> Result<GarsideNormalForm> {
        let mut inf = 0i64;
        let mut factors: Vec<CoxeterElement> = Vec::new();
        for &(i, pos) in &word.letters {
            self.rd.check_node(i)?;
            if pos {
                factors.push(self.gens[i].clone());
            } else {
                // x s_i^{-1} = Δ^{-1} φ(x) (w_0 s_i)
                inf -= 1;
                for x in factors.iter_mut() {
                    *x = self.conj_longest(x);
                }
                factors.push(self.mul(&self.longest, &self.gens[i]));
            }
            self.normalize(&mut factors, &mut inf);
        }
        Ok(GarsideNormalForm { infimum: inf, factors })
    }

    pub fn braid_equal(&self, a: &BraidWord, b: &BraidWord) -> Result<bool> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }

    /// Image of a braid word in the Weyl group.
    pub fn coxeter_image(&self, word: &BraidWord) -> Result<CoxeterElement> {
        self.from_word(&word.letters.iter().map(|x| x.0).collect::<Vec<_>>())
    }
}

/// `i_{Σ,θ}(s_i)` as a positive braid word.
pub fn embedding_word(case: &CaseSpec, i: usize) -> Result<BraidWord> {
    Ok(BraidWord::positive(&case.i_sigma_theta(i)?))
}

/// Braid relations of `Br(Σ,θ)` for the images `i_{Σ,θ}(s_i)` and their
/// membership in `Br(g,θ)`.
pub fn verify_embedding(case: &CaseSpec) -> Result<Report> {
    let w = WeylGroup::new(case.ambient());
    let sd = case.sigma_datum();
    let r = sd.rank();
    let suite = format!("garside-{}", case.id());
    let imgs: Vec<BraidWord> = (0..r).map(|i| embedding_word(case, i)).collect::<Result<_>>()?;
    let mut rep = Report::new();
    for i in 0..r {
        for j in i + 1..r {
            let m = sd.m(i, j) as usize;
            let alt = |x: usize, y: usize| (0..m).fold(BraidWord::new(), |acc, k| acc.concat(if k % 2 == 0 { &imgs[x] } else { &imgs[y] }));
            let (lhs, rhs) = (alt(i, j), alt(j, i));
            rep.record_bool(&suite, "braid", format!("m={m}/i={},j={}", i + 1, j + 1), || {
                let (a, b) = (w.normal_form(&lhs)?, w.normal_form(&rhs)?);
                Ok(if a == b {
                    Ok(())
                } else {
                    Err(format!("{} != {}", a.render(&w), b.render(&w)))
                })
            });
        }
    }
    for (i, img) in imgs.iter().enumerate() {
        let label = format!("i={}/{img}", i + 1);
        match case.variant() {
            Variant::I(..) => {
                rep.record_bool(&suite, "membership", label, || Ok(Ok(())));
            }
            Variant::III(_) => {
                let wx = BraidWord::positive(&case.w_x());
                rep.record_bool(&suite, "membership", label, || {
                    let (a, b) = (img.concat(&wx), wx.concat(img));
                    Ok(if w.braid_equal(&a, &b)? {
                        Ok(())
                    } else {
                        Err("does not commute with w_X".into())
                    })
                });
            }
            _ => {
                rep.record_bool(&suite, "membership", label, || {
                    let t = img.map_nodes(|k| case.tau_of(k));
                    Ok(if w.braid_equal(&t, img)? {
                        Ok(())
                    } else {
                        Err(format!("τ(b) = {t} differs"))
                    })
                });
            }
        }
    }
    Ok(rep)
}

fn random_word(rng: &mut StdRng, rank: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    BraidWord {
        letters: (0..len).map(|_| (rng.gen_range(0..rank), rng.gen_bool(0.7))).collect(),
    }
}

/// Two words equal in the braid group, built from shared letters, the two
/// sides of a braid relation, and cancelling pairs on one side only.
fn related_pair(rng: &mut StdRng, rd: &RootDatum, max_len: usize) -> (BraidWord, BraidWord) {
    let n = rd.rank();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    while a.len().max(b.len()) < max_len {
        let i = rng.gen_range(0..n);
        let pos = rng.gen_bool(0.7);
        match rng.gen_range(0..3) {
            0 => {
                a.push((i, pos));
                b.push((i, pos));
            }
            1 => {
                let j = rng.gen_range(0..n);
                if i == j {
                    continue;
                }
                let m = rd.m(i, j) as usize;
                let side = |x: usize, y: usize| (0..m).map(move |k| (if k % 2 == 0 { x } else { y }, pos));
                a.extend(side(i, j));
                b.extend(side(j, i));
            }
            _ => {
                a.push((i, pos));
                a.push((i, !pos));
            }
        }
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut a, &mut b);
        }
    }
    (BraidWord { letters: a }, BraidWord { letters: b })
}

/// Cross-check `braid_equal` against Weyl group images on random pairs.
/// Every other pair is related by braid moves and must compare equal.
pub fn soundness_check(rd: &RootDatum, pairs: usize, max_len: usize, seed: u64) -> Result<Report> {
    let w = WeylGroup::new(rd);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut equal = 0;
    for k in 0..pairs {
        let related = k % 2 == 1;
        let (a, b) = if related {
            related_pair(&mut rng, rd, max_len)
        } else {
            (random_word(&mut rng, rd.rank(), max_len), random_word(&mut rng, rd.rank(), max_len))
        };
        let eq = w.braid_equal(&a, &b)?;
        equal += usize::from(eq);
        if eq && w.coxeter_image(&a)? != w.coxeter_image(&b)? {
            bad.push(format!("equal braids with different Weyl images: {a} , {b}"));
        }
        if related && !eq {
            bad.push(format!("related words compare unequal: {a} , {b}"));
        }
    }
    let mut rep = Report::new();
    rep.record_bool(&format!("garside-{rd}"), "soundness", format!("{pairs} pairs, {equal} equal"), || {
        Ok(if bad.is_empty() { Ok(()) } else { Err(bad.join("; ")) })
    });
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> WeylGroup {
        WeylGroup::new(&RootDatum::new('A', 2).unwrap())
    }

    #[test]
    fn coxeter_basics() {
        let w = a2();
        assert!(w.mul(w.s(0), w.s(0)).is_identity());
        let x = w.from_word(&[0, 1, 0]).unwrap();
        assert_eq!(w.length(&x), 3);
        assert_eq!(x, *w.longest());
        let y = w.from_word(&[0, 1]).unwrap();
        assert_eq!(w.left_descents(&y), vec![0]);
        assert_eq!(w.right_descents(&y), vec![1]);
    }

    #[test]
    fn normal_forms() {
        let w = a2();
        let nf = w.normal_form(&BraidWord::parse("s1 s2 s1").unwrap()).unwrap();
        assert_eq!((nf.infimum, nf.factors.len()), (1, 0));
        let nf = w.normal_form(&BraidWord::new()).unwrap();
        assert_eq!((nf.infimum, nf.factors.len()), (0, 0));
        let nf = w.normal_form(&BraidWord::parse("s1 s1").unwrap()).unwrap();
        assert_eq!(nf.infimum, 0);
        assert_eq!(nf.factors, vec![w.s(0).clone(), w.s(0).clone()]);
    }

    #[test]
    fn equality() {
        let w = a2();
        let p = |s: &str| BraidWord::parse(s).unwrap();
        assert!(w.braid_equal(&p("s1 s2 s1"), &p("s2 s1 s2")).unwrap());
        assert!(!w.braid_equal(&p("s1 s2"), &p("s2 s1")).unwrap());
        assert!(w.braid_equal(&p("s1 s1^-1"), &p("")).unwrap());
        assert!(w.braid_equal(&p("s2^-1 s1 s2"), &p("s1 s2 s1^-1")).unwrap());
        let a3 = WeylGroup::new(&RootDatum::new('A', 3).unwrap());
        assert!(a3.braid_equal(&p("s1 s3"), &p("s3 s1")).unwrap());
    }

    #[test]
    fn idempotent() {
        let w = WeylGroup::new(&RootDatum::new('B', 3).unwrap());
        let x = BraidWord::parse("s1 s2^-1 s3 s3 s2 s1^-1 s3^-2").unwrap();
        let nf = w.normal_form(&x).unwrap();
        assert_eq!(w.normal_form(&nf.to_word(&w)).unwrap(), nf);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(BraidWord::parse("s1 t2"), Err(Error::Parse { offset: 3, .. })));
        assert!(BraidWord::parse("s0").is_err());
        assert_eq!(BraidWord::parse("s2^-2").unwrap().to_string(), "s2^-1 s2^-1");
    }
}
