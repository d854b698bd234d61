//! Noncommutative completion of the quantum Serre relations.
//!
//! Both `U^+` and `U^-` are presented by the same Serre relations in their
//! letters, so one completed system serves the E block and the F block.
//! Words are ordered degree-lexicographically with ascending node index.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use parking_lot::{Mutex, RwLock};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use smallvec::SmallVec;

use super::hilbert::{kostant, pbw_dims_by_degree, Avoider};
use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::scalar::{q_binomial, Scalar};

pub type Word = SmallVec<[u8; 16]>;

pub const DEFAULT_DEGREE_CAP: usize = 16;

pub fn deglex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// `lhs -> Σ c w`, every `w` smaller than `lhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Vec<(Word, Scalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Overlaps whose two reductions were computed and compared.
    pub overlaps_resolved: usize,
    /// Irreducible-word counts match the PBW dimensions through this degree.
    pub degree_checked: usize,
    pub confluent: bool,
}

pub struct RewritingSystem {
    datum: String,
    cap: usize,
    red: Reducer,
    certificate: Certificate,
}

/// Quantum Serre relators `Σ_s (-1)^s [1-a_ij; s]_i x_i^{1-a_ij-s} x_j x_i^s`, `i != j`.
pub fn serre_relators(rd: &RootDatum) -> Vec<Vec<(Word, Scalar)>> {
    let n = rd.rank();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let a = rd.a(i, j);
            if a == 0 && j < i {
                continue;
            }
            let top = (1 - a) as i64;
            let mut rel = Vec::new();
            for s in 0..=top {
                let mut c = q_binomial(top, s, rd.d(i)).expect("nonnegative");
                if s % 2 == 1 {
                    c = c.neg();
                }
                let mut w = Word::new();
                w.extend(std::iter::repeat_n(i as u8, (top - s) as usize));
                w.push(j as u8);
                w.extend(std::iter::repeat_n(i as u8, s as usize));
                rel.push((w, c));
            }
            out.push(rel);
        }
    }
    out
}

pub(crate) fn add_into(acc: &mut FxHashMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match acc.entry(w) {
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

type Terms = Vec<(Word, Scalar)>;

/// Rules plus a memo of `u·x` normal forms for irreducible `u`.
/// Left-hand sides never contain one another, so a rule can only match
/// `u·x` as a suffix.
struct Reducer {
    rules: Vec<Rule>,
    index: FxHashMap<Word, usize>,
    max_len: usize,
    cache: RwLock<FxHashMap<(Word, u8), Arc<Terms>>>,
}

impl Reducer {
    fn new() -> Self {
        Reducer {
            rules: Vec::new(),
            index: FxHashMap::default(),
            max_len: 0,
            cache: RwLock::new(FxHashMap::default()),
        }
    }

    fn from_rules(mut rules: Vec<Rule>) -> Self {
        rules.sort_by(|a, b| deglex(&a.lhs, &b.lhs));
        let mut r = Reducer::new();
        for rule in rules {
            r.push_rule(rule);
        }
        r
    }

    fn push_rule(&mut self, rule: Rule) {
        let d = rule.lhs.len();
        self.cache.write().retain(|k, _| k.0.len() + 1 < d);
        self.max_len = self.max_len.max(d);
        self.index.insert(rule.lhs.clone(), self.rules.len());
        self.rules.push(rule);
    }

    fn contains_lhs(&self, w: &[u8]) -> bool {
        for start in 0..w.len() {
            for len in 2..=self.max_len.min(w.len() - start) {
                if self.index.contains_key(&w[start..start + len]) {
                    return true;
                }
            }
        }
        false
    }

    fn mul_letter(&self, u: &[u8], x: u8) -> Arc<Terms> {
        let key = (Word::from_slice(u), x);
        if let Some(r) = self.cache.read().get(&key) {
            return r.clone();
        }
        let mut w = key.0.clone();
        w.push(x);
        let mut found = None;
        for len in 2..=self.max_len.min(w.len()) {
            if let Some(&r) = self.index.get(&w[w.len() - len..]) {
                found = Some((w.len() - len, r));
                break;
            }
        }
        let res = match found {
            None => vec![(w, Scalar::one())],
            Some((start, r)) => {
                let a = &w[..start];
                let mut acc: FxHashMap<Word, Scalar> = FxHashMap::default();
                for (t, c) in &self.rules[r].rhs {
                    for (y, cy) in self.mul_word(a, t) {
                        add_into(&mut acc, y, c * &cy);
                    }
                }
                let mut v: Terms = acc.into_iter().collect();
                v.sort_by(|a, b| deglex(&b.0, &a.0));
                v
            }
        };
        let res = Arc::new(res);
        self.cache.write().insert(key, res.clone());
        res
    }

    fn mul_word(&self, u: &[u8], t: &[u8]) -> Terms {
        let mut cur: Terms = vec![(Word::from_slice(u), Scalar::one())];
        for &x in t {
            if cur.len() == 1 {
                let (w, c) = &cur[0];
                let r = self.mul_letter(w, x);
                cur = if c.is_one() {
                    (*r).clone()
                } else {
                    r.iter().map(|(y, cy)| (y.clone(), c * cy)).collect()
                };
                continue;
            }
            let mut acc: FxHashMap<Word, Scalar> = FxHashMap::default();
            for (w, c) in &cur {
                for (y, cy) in self.mul_letter(w, x).iter() {
                    add_into(&mut acc, y.clone(), c * cy);
                }
            }
            cur = acc.into_iter().collect();
        }
        cur
    }

    fn reduce<'a>(&self, terms: impl IntoIterator<Item = (&'a [u8], Scalar)>) -> FxHashMap<Word, Scalar> {
        let mut acc: FxHashMap<Word, Scalar> = FxHashMap::default();
        for (w, c) in terms {
            for (y, cy) in self.mul_word(&[], w) {
                add_into(&mut acc, y, &c * &cy);
            }
        }
        acc
    }

    /// Overlaps `a·o·b` of `lhs_i = a·o` and `lhs_j = o·b` of total length `d`.
    fn overlaps_of_len(&self, d: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, ri) in self.rules.iter().enumerate() {
            let l1 = &ri.lhs;
            if l1.len() >= d {
                continue;
            }
            for (j, rj) in self.rules.iter().enumerate() {
                let l2 = &rj.lhs;
                if l1.len() + l2.len() <= d {
                    continue;
                }
                let k = l1.len() + l2.len() - d;
                if k < l1.len().min(l2.len()) && l1[l1.len() - k..] == l2[..k] {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    fn ambiguity(&self, i: usize, j: usize, k: usize) -> Word {
        let mut amb = self.rules[i].lhs.clone();
        amb.extend_from_slice(&self.rules[j].lhs[k..]);
        amb
    }

    /// The two one-step reductions of an overlap, subtracted and fully reduced.
    fn resolve(&self, i: usize, j: usize, k: usize) -> FxHashMap<Word, Scalar> {
        let (r1, r2) = (&self.rules[i], &self.rules[j]);
        let a = &r1.lhs[..r1.lhs.len() - k];
        let b = &r2.lhs[k..];
        let mut words: Vec<(Word, Scalar)> = Vec::new();
        for (t, c) in &r1.rhs {
            let mut w = t.clone();
            w.extend_from_slice(b);
            words.push((w, c.clone()));
        }
        for (t, c) in &r2.rhs {
            let mut w = Word::from_slice(a);
            w.extend_from_slice(t);
            words.push((w, c.neg()));
        }
        self.reduce(words.iter().map(|(w, c)| (&w[..], c.clone())))
    }

    fn avoider(&self, rank: usize) -> Avoider {
        let pats: Vec<&[u8]> = self.rules.iter().map(|r| &r.lhs[..]).collect();
        Avoider::new(rank, &pats)
    }

    /// Compare irreducible-word counts with the PBW dimensions through
    /// degree `2L - 1`.
    fn certify(&self, rd: &RootDatum, resolved: usize) -> Certificate {
        let top = (2 * self.max_len).saturating_sub(1).max(1);
        let ok = self.avoider(rd.rank()).count_by_degree(top) == pbw_dims_by_degree(rd, top);
        Certificate {
            overlaps_resolved: resolved,
            degree_checked: top,
            confluent: ok,
        }
    }

    /// Resolve every overlap of length at most `max_len` explicitly.
    /// Returns the number of overlaps and the first one that fails.
    fn check_overlaps(&self, max_len: usize) -> (usize, Option<Word>) {
        let mut n = 0;
        for d in 3..=max_len.min((2 * self.max_len).saturating_sub(1)) {
            for (i, j, k) in self.overlaps_of_len(d) {
                n += 1;
                if !self.resolve(i, j, k).is_empty() {
                    return (n, Some(self.ambiguity(i, j, k)));
                }
            }
        }
        (n, None)
    }
}

fn monic_rule(p: FxHashMap<Word, Scalar>) -> Rule {
    let mut v: Terms = p.into_iter().collect();
    v.sort_by(|a, b| deglex(&b.0, &a.0));
    let (lead, lc) = v.remove(0);
    let inv = lc.inverse().expect("nonzero");
    Rule {
        lhs: lead,
        rhs: v.into_iter().map(|(w, c)| (w, (&c * &inv).neg())).collect(),
    }
}

fn render_word(w: &[u8]) -> String {
    w.iter().map(|x| format!("x{}", x + 1)).collect::<Vec<_>>().join("*")
}

impl RewritingSystem {
    /// Complete the Serre relations of `rd`, allowing new rules up to
    /// degree `cap`. The relations are homogeneous, so the completion runs
    /// degree by degree and every overlap is resolved exactly once.
    pub fn complete(rd: &RootDatum, cap: usize) -> Result<Self> {
        let relators = serre_relators(rd);
        let top = relators.iter().map(|r| r[0].0.len()).max().unwrap_or(0);
        let mut red = Reducer::new();
        let mut resolved = 0;
        let mut kostant_memo: FxHashMap<Vec<u32>, u128> = FxHashMap::default();
        let mut d = 2;
        while d <= top || d < 2 * red.max_len {
            for rel in relators.iter().filter(|r| r[0].0.len() == d) {
                let p = red.reduce(rel.iter().map(|(w, c)| (&w[..], c.clone())));
                if !p.is_empty() {
                    red.push_rule(monic_rule(p));
                }
            }
            let dims = pbw_dims_by_degree(rd, d);
            let mut avoid = red.avoider(rd.rank());
            if avoid.count_by_degree(d)[d] == dims[d] {
                d += 1;
                continue;
            }
            // only weights with too many irreducible words can hide a relation
            let mut settled: FxHashSet<Vec<u32>> = FxHashSet::default();
            for (i, j, k) in red.overlaps_of_len(d) {
                let amb = red.ambiguity(i, j, k);
                let mut mu = vec![0u32; rd.rank()];
                for &x in amb.iter() {
                    mu[x as usize] += 1;
                }
                if settled.contains(&mu) {
                    continue;
                }
                let expected = *kostant_memo.entry(mu.clone()).or_insert_with(|| kostant(rd, &mu));
                if avoid.count_weight(&mu) == expected {
                    settled.insert(mu);
                    continue;
                }
                resolved += 1;
                let p = red.resolve(i, j, k);
                if p.is_empty() {
                    continue;
                }
                if d > cap {
                    return Err(Error::DegreeCapExceeded {
                        datum: rd.name(),
                        block: 'E',
                        cap,
                        overlap: render_word(&amb),
                    });
                }
                red.push_rule(monic_rule(p));
                avoid = red.avoider(rd.rank());
            }
            if avoid.count_by_degree(d)[d] != dims[d] {
                return Err(Error::Unsupported(format!(
                    "completion for {} left extra irreducible words in degree {d}",
                    rd.name()
                )));
            }
            d += 1;
        }
        // bring every right-hand side into normal form
        let mut rules = std::mem::take(&mut red.rules);
        for r in rules.iter_mut() {
            let p = red.reduce(r.rhs.iter().map(|(w, c)| (&w[..], c.clone())));
            let mut v: Terms = p.into_iter().collect();
            v.sort_by(|a, b| deglex(&b.0, &a.0));
            r.rhs = v;
        }
        let red = Reducer::from_rules(rules);
        let cert = red.certify(rd, resolved);
        if !cert.confluent {
            return Err(Error::Unsupported(format!("completion for {} failed its certificate", rd.name())));
        }
        Ok(Self::from_reducer(rd.name(), cap, red, cert))
    }

    fn from_reducer(datum: String, cap: usize, red: Reducer, cert: Certificate) -> Self {
        RewritingSystem {
            datum,
            cap,
            red,
            certificate: cert,
        }
    }

    pub fn datum(&self) -> &str {
        &self.datum
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn rules(&self) -> &[Rule] {
        &self.red.rules
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// Recompute the word-count certificate of the stored rules.
    pub fn recertify(&self, rd: &RootDatum) -> Certificate {
        self.red.certify(rd, self.certificate.overlaps_resolved)
    }

    /// Explicitly resolve every overlap up to length `max_len`; returns the
    /// number checked and the first ambiguity that does not resolve.
    pub fn check_overlaps(&self, max_len: usize) -> (usize, Option<Word>) {
        self.red.check_overlaps(max_len)
    }

    pub fn is_irreducible(&self, w: &[u8]) -> bool {
        !self.red.contains_lhs(w)
    }

    /// Normal form of an arbitrary combination of words.
    pub fn reduce_poly(&self, terms: &[(Word, Scalar)]) -> Vec<(Word, Scalar)> {
        let mut v: Terms = self
            .red
            .reduce(terms.iter().map(|(w, c)| (&w[..], c.clone())))
            .into_iter()
            .collect();
        v.sort_by(|a, b| deglex(&b.0, &a.0));
        v
    }

    /// Normal form of `u·x` for an irreducible word `u`.
    pub fn mul_letter(&self, u: &[u8], x: u8) -> Arc<Vec<(Word, Scalar)>> {
        self.red.mul_letter(u, x)
    }

    /// Normal form of `u·t` for an irreducible word `u` and any word `t`.
    pub fn mul_word(&self, u: &[u8], t: &[u8]) -> Vec<(Word, Scalar)> {
        self.red.mul_word(u, t)
    }

    pub fn cache_len(&self) -> usize {
        self.red.cache.read().len()
    }

    pub fn clear_cache(&self) {
        self.red.cache.write().clear();
    }
}

#[derive(Serialize, Deserialize)]
struct StoredScalar {
    num: Vec<String>,
    den: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct StoredRule {
    lhs: Vec<u8>,
    rhs: Vec<(Vec<u8>, StoredScalar)>,
}

#[derive(Serialize, Deserialize)]
struct StoredSystem {
    datum: String,
    cap: usize,
    hash: String,
    rules: Vec<StoredRule>,
    certificate: Certificate,
}

fn store_scalar(c: &Scalar) -> StoredScalar {
    let f = |p: crate::scalar::IntPoly| p.coefficients().iter().map(|x| x.to_string()).collect();
    StoredScalar {
        num: f(c.numerator()),
        den: f(c.denominator()),
    }
}

fn load_scalar(s: &StoredScalar) -> Option<Scalar> {
    let f = |v: &[String]| -> Option<crate::scalar::IntPoly> {
        let c: Option<Vec<num_bigint::BigInt>> = v.iter().map(|x| x.parse().ok()).collect();
        Some(crate::scalar::IntPoly::from_big_coeffs(0, c?))
    };
    Scalar::from_fraction(f(&s.num)?, f(&s.den)?).ok()
}

fn content_hash(rd: &RootDatum, cap: usize) -> String {
    let mut h = Sha256::new();
    h.update(rd.name().as_bytes());
    h.update(cap.to_le_bytes());
    for rel in serre_relators(rd) {
        for (w, c) in rel {
            h.update(&w[..]);
            h.update(c.to_string().as_bytes());
        }
        h.update(b";");
    }
    hex::encode(h.finalize())
}

fn cache_file(dir: &Path, rd: &RootDatum, cap: usize, hash: &str) -> PathBuf {
    dir.join(format!("{}-EF-cap{}-{}.json", rd.name(), cap, &hash[..16]))
}

fn load_from_disk(dir: &Path, rd: &RootDatum, cap: usize) -> Option<RewritingSystem> {
    let hash = content_hash(rd, cap);
    let text = std::fs::read_to_string(cache_file(dir, rd, cap, &hash)).ok()?;
    let stored: StoredSystem = serde_json::from_str(&text).ok()?;
    if stored.hash != hash || stored.datum != rd.name() || stored.cap != cap {
        return None;
    }
    let mut rules = Vec::new();
    for r in &stored.rules {
        let rhs: Option<Vec<(Word, Scalar)>> = r
            .rhs
            .iter()
            .map(|(w, c)| Some((Word::from_slice(w), load_scalar(c)?)))
            .collect();
        rules.push(Rule {
            lhs: Word::from_slice(&r.lhs),
            rhs: rhs?,
        });
    }
    let red = Reducer::from_rules(rules);
    if red.rules.iter().any(|r| red.contains_lhs(&r.lhs[1..]) || red.contains_lhs(&r.lhs[..r.lhs.len() - 1])) {
        return None;
    }
    // the relators must reduce to zero and every overlap must resolve
    for rel in serre_relators(rd) {
        if !red.reduce(rel.iter().map(|(w, c)| (&w[..], c.clone()))).is_empty() {
            return None;
        }
    }
    let cert = red.certify(rd, stored.certificate.overlaps_resolved);
    if !cert.confluent {
        return None;
    }
    Some(RewritingSystem::from_reducer(rd.name(), cap, red, cert))
}

fn save_to_disk(dir: &Path, rd: &RootDatum, sys: &RewritingSystem) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let hash = content_hash(rd, sys.cap);
    let stored = StoredSystem {
        datum: rd.name(),
        cap: sys.cap,
        hash: hash.clone(),
        rules: sys
            .rules()
            .iter()
            .map(|r| StoredRule {
                lhs: r.lhs.to_vec(),
                rhs: r.rhs.iter().map(|(w, c)| (w.to_vec(), store_scalar(c))).collect(),
            })
            .collect(),
        certificate: sys.certificate.clone(),
    };
    let text = serde_json::to_string(&stored).map_err(|e| Error::Io(e.to_string()))?;
    let path = cache_file(dir, rd, sys.cap, &hash);
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(tmp, path)?;
    Ok(())
}

type SystemKey = (String, usize);

fn registry() -> &'static Mutex<FxHashMap<SystemKey, Arc<RewritingSystem>>> {
    static R: OnceLock<Mutex<FxHashMap<SystemKey, Arc<RewritingSystem>>>> = OnceLock::new();
    R.get_or_init(|| Mutex::new(FxHashMap::default()))
}

fn cache_dir_slot() -> &'static RwLock<Option<PathBuf>> {
    static D: OnceLock<RwLock<Option<PathBuf>>> = OnceLock::new();
    D.get_or_init(|| RwLock::new(None))
}

/// Directory used to persist completed systems.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir_slot().write() = dir;
}

/// Completed system for `rd`, from memory, disk, or a fresh completion.
pub fn completed_system(rd: &RootDatum, cap: usize) -> Result<Arc<RewritingSystem>> {
    let key = (rd.name(), cap);
    let mut reg = registry().lock();
    if let Some(s) = reg.get(&key) {
        return Ok(s.clone());
    }
    let dir = cache_dir_slot().read().clone();
    let sys = match dir.as_deref().and_then(|d| load_from_disk(d, rd, cap)) {
        Some(s) => s,
        None => {
            let s = RewritingSystem::complete(rd, cap)?;
            if let Some(d) = &dir {
                let _ = save_to_disk(d, rd, &s);
            }
            s
        }
    };
    let sys = Arc::new(sys);
    reg.insert(key, sys.clone());
    Ok(sys)
}

/// Systems completed so far in this process.
pub fn cached_systems() -> Vec<Arc<RewritingSystem>> {
    let reg = registry().lock();
    let keys: BTreeSet<&SystemKey> = reg.keys().collect();
    keys.into_iter().map(|k| reg[k].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_leading_words() {
        let rd = RootDatum::new('A', 2).unwrap();
        let sys = RewritingSystem::complete(&rd, 16).unwrap();
        let lhs: Vec<Vec<u8>> = sys.rules().iter().map(|r| r.lhs.to_vec()).collect();
        assert!(lhs.contains(&vec![1, 0, 0]));
        assert!(lhs.contains(&vec![1, 1, 0]));
        assert!(sys.certificate().confluent);
    }

    #[test]
    fn explicit_overlaps_agree_with_counts() {
        for (t, n) in [('B', 2), ('G', 2), ('A', 3)] {
            let rd = RootDatum::new(t, n).unwrap();
            let sys = RewritingSystem::complete(&rd, 16).unwrap();
            let (n, bad) = sys.check_overlaps(usize::MAX);
            assert!(n > 0 && bad.is_none(), "{}", rd.name());
        }
    }

    #[test]
    fn a1_has_no_rules() {
        let rd = RootDatum::new('A', 1).unwrap();
        let sys = RewritingSystem::complete(&rd, 16).unwrap();
        assert!(sys.rules().is_empty());
    }

    #[test]
    fn tiny_cap_reports_overlap() {
        let rd = RootDatum::new('B', 3).unwrap();
        let err = RewritingSystem::complete(&rd, 5).err().unwrap();
        assert!(matches!(err, Error::DegreeCapExceeded { .. }));
    }
}
