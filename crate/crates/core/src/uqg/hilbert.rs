//! Word counting for completion certificates.
//!
//! The irreducible words of a rule set always span `U^+`, so in each weight
//! their number is at least the Kostant partition number. Equality in every
//! weight up to degree `2L - 1` (with `L` the longest left-hand side) means
//! no overlap can produce a new relation, which is local confluence.

use rustc_hash::FxHashMap;

use crate::rootdata::RootDatum;

/// Aho-Corasick automaton over the rule left-hand sides.
pub(crate) struct Avoider {
    next: Vec<Vec<u32>>,
    dead: Vec<bool>,
}

impl Avoider {
    pub fn new(rank: usize, patterns: &[&[u8]]) -> Self {
        let mut next: Vec<Vec<u32>> = vec![vec![u32::MAX; rank]];
        let mut dead = vec![false];
        for p in patterns {
            let mut s = 0usize;
            for &x in p.iter() {
                if next[s][x as usize] == u32::MAX {
                    next.push(vec![u32::MAX; rank]);
                    dead.push(false);
                    next[s][x as usize] = (next.len() - 1) as u32;
                }
                s = next[s][x as usize] as usize;
            }
            dead[s] = true;
        }
        let mut fail = vec![0usize; next.len()];
        let mut queue = std::collections::VecDeque::new();
        for x in 0..rank {
            let t = next[0][x];
            if t == u32::MAX {
                next[0][x] = 0;
            } else {
                fail[t as usize] = 0;
                queue.push_back(t as usize);
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for x in 0..rank {
                let t = next[s][x];
                if t == u32::MAX {
                    next[s][x] = next[fail[s]][x];
                } else {
                    fail[t as usize] = next[fail[s]][x] as usize;
                    queue.push_back(t as usize);
                }
            }
        }
        Avoider { next, dead }
    }

    /// Number of words of each length `0..=max` containing no pattern.
    pub fn count_by_degree(&self, max: usize) -> Vec<u128> {
        let n = self.next.len();
        let mut cur = vec![0u128; n];
        cur[0] = 1;
        let mut out = vec![1u128];
        for _ in 0..max {
            let mut nxt = vec![0u128; n];
            for (s, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &t in &self.next[s] {
                    if !self.dead[t as usize] {
                        nxt[t as usize] += c;
                    }
                }
            }
            out.push(nxt.iter().sum());
            cur = nxt;
        }
        out
    }

    /// Number of pattern-free words of weight exactly `mu`.
    pub fn count_weight(&self, mu: &[u32]) -> u128 {
        let strides = strides(mu);
        let n = self.next.len();
        // layer by degree so each sub-weight is finished before it is extended
        let total: u32 = mu.iter().sum();
        let mut layer: FxHashMap<usize, Vec<u128>> = FxHashMap::default();
        let mut start = vec![0u128; n];
        start[0] = 1;
        layer.insert(0, start);
        for _ in 0..total {
            let mut nl: FxHashMap<usize, Vec<u128>> = FxHashMap::default();
            for (idx, counts) in &layer {
                let nu = decode(*idx, mu);
                for x in 0..mu.len() {
                    if nu[x] >= mu[x] {
                        continue;
                    }
                    let nidx = idx + strides[x];
                    let slot = nl.entry(nidx).or_insert_with(|| vec![0u128; n]);
                    for (s, &c) in counts.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let t = self.next[s][x] as usize;
                        if !self.dead[t] {
                            slot[t] += c;
                        }
                    }
                }
            }
            layer = nl;
        }
        layer.values().map(|v| v.iter().sum::<u128>()).sum()
    }
}

fn strides(mu: &[u32]) -> Vec<usize> {
    let mut s = Vec::with_capacity(mu.len());
    let mut acc = 1usize;
    for &m in mu {
        s.push(acc);
        acc *= m as usize + 1;
    }
    s
}

fn decode(mut idx: usize, mu: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(mu.len());
    for &m in mu {
        let r = m as usize + 1;
        out.push((idx % r) as u32);
        idx /= r;
    }
    out
}

/// Coefficients of `Π_{β>0} 1/(1 - t^{ht β})` up to degree `max`.
pub(crate) fn pbw_dims_by_degree(rd: &RootDatum, max: usize) -> Vec<u128> {
    let mut p = vec![0u128; max + 1];
    p[0] = 1;
    for beta in rd.positive_roots() {
        let h: i32 = beta.iter().sum();
        let h = h as usize;
        for d in h..=max {
            p[d] += p[d - h];
        }
    }
    p
}

/// Kostant partition number of `mu`.
pub(crate) fn kostant(rd: &RootDatum, mu: &[u32]) -> u128 {
    let st = strides(mu);
    let size: usize = mu.iter().map(|&m| m as usize + 1).product();
    let mut p = vec![0u128; size];
    p[0] = 1;
    for beta in rd.positive_roots() {
        if beta.iter().zip(mu).any(|(&b, &m)| b as u32 > m) {
            continue;
        }
        let off: usize = beta.iter().zip(&st).map(|(&b, &s)| b as usize * s).sum();
        // ascending sweep gives unbounded multiplicity
        for idx in 0..size {
            let nu = decode(idx, mu);
            if nu.iter().zip(beta).all(|(&n, &b)| n >= b as u32) {
                p[idx] += p[idx - off];
            }
        }
    }
    p[size - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_patterns_counts_all_words() {
        let a = Avoider::new(2, &[]);
        assert_eq!(a.count_by_degree(3), vec![1, 2, 4, 8]);
        assert_eq!(a.count_weight(&[2, 1]), 3);
    }

    #[test]
    fn avoid_ba() {
        let a = Avoider::new(2, &[&[1, 0]]);
        assert_eq!(a.count_by_degree(3), vec![1, 2, 3, 4]);
        assert_eq!(a.count_weight(&[2, 1]), 1);
    }

    #[test]
    fn a2_partitions() {
        let rd = RootDatum::new('A', 2).unwrap();
        assert_eq!(kostant(&rd, &[1, 1]), 2);
        assert_eq!(kostant(&rd, &[2, 2]), 3);
        assert_eq!(pbw_dims_by_degree(&rd, 2), vec![1, 2, 4]);
    }
}
