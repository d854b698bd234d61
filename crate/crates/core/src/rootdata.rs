//! Cartan data of finite type, diagram automorphisms and the symmetric pair
//! cases handled by the library.
//!
//! Nodes follow the Bourbaki numbering. Internally nodes are 0-based; every
//! public label and case identifier uses 1-based node names.
//!
//! | type | short nodes | long nodes | d |
//! |------|-------------|------------|---|
//! | A, D, E | all | - | 1 |
//! | B_n | n | 1..n-1 | (2,..,2,1) |
//! | C_n | 1..n-1 | n | (1,..,1,2) |
//! | F_4 | 3,4 | 1,2 | (2,2,1,1) |
//! | G_2 | 1 | 2 | (1,3) |

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    label: char,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    d: Vec<u32>,
    m: Vec<Vec<u32>>,
    tau: Option<Vec<usize>>,
    positive_roots: Vec<Vec<i32>>,
}

fn edge(c: &mut [Vec<i32>], i: usize, j: usize) {
    c[i][j] = -1;
    c[j][i] = -1;
}

impl RootDatum {
    pub fn new(label: char, rank: usize) -> Result<Self> {
        let label = label.to_ascii_uppercase();
        let bad = Error::InvalidType { label, rank };
        let valid = match label {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !valid || rank > MAX_RANK {
            return Err(bad);
        }
        let n = rank;
        let mut c = vec![vec![0i32; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut d = vec![1u32; n];
        match label {
            'A' => {
                for i in 1..n {
                    edge(&mut c, i - 1, i);
                }
            }
            'B' => {
                for i in 1..n {
                    edge(&mut c, i - 1, i);
                }
                c[n - 1][n - 2] = -2;
                d = vec![2; n];
                d[n - 1] = 1;
            }
            'C' => {
                for i in 1..n {
                    edge(&mut c, i - 1, i);
                }
                c[n - 2][n - 1] = -2;
                d[n - 1] = 2;
            }
            'D' => {
                for i in 1..n - 1 {
                    edge(&mut c, i - 1, i);
                }
                edge(&mut c, n - 3, n - 1);
            }
            'E' => {
                edge(&mut c, 0, 2);
                edge(&mut c, 1, 3);
                for i in 3..n {
                    edge(&mut c, i - 1, i);
                }
            }
            'F' => {
                edge(&mut c, 0, 1);
                edge(&mut c, 1, 2);
                edge(&mut c, 2, 3);
                c[2][1] = -2;
                d = vec![2, 2, 1, 1];
            }
            'G' => {
                c[0][1] = -3;
                c[1][0] = -1;
                d = vec![1, 3];
            }
            _ => unreachable!(),
        }
        let mut m = vec![vec![1u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m[i][j] = match c[i][j] * c[j][i] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        _ => unreachable!(),
                    };
                }
            }
        }
        let mut rd = RootDatum {
            label,
            rank,
            cartan: c,
            d,
            m,
            tau: None,
            positive_roots: Vec::new(),
        };
        rd.positive_roots = rd.compute_positive_roots();
        Ok(rd)
    }

    /// Parse labels such as "B3" or "g2".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let label = chars.next().ok_or_else(|| Error::Config("empty type".into()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Config(format!("bad type {s}")))?;
        Self::new(label, rank)
    }

    /// Attach a diagram automorphism (0-based permutation).
    pub fn with_tau(mut self, tau: Vec<usize>) -> Result<Self> {
        let n = self.rank;
        let ok = tau.len() == n
            && (0..n).all(|i| tau[i] < n && tau[tau[i]] == i)
            && (0..n).all(|i| (0..n).all(|j| self.cartan[tau[i]][tau[j]] == self.cartan[i][j]));
        if !ok {
            return Err(Error::Config(format!("{tau:?} is not a diagram involution of {self}")));
        }
        self.tau = Some(tau);
        Ok(self)
    }

    pub fn label(&self) -> char {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }

    /// `a_ij`, 0-based.
    pub fn a(&self, i: usize, j: usize) -> i32 {
        self.cartan[i][j]
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// `d_i` with `(α_i, α_i) = 2 d_i`.
    pub fn d(&self, i: usize) -> u32 {
        self.d[i]
    }

    /// `(α_i, α_j) = d_i a_ij`.
    pub fn pairing(&self, i: usize, j: usize) -> i32 {
        self.d[i] as i32 * self.cartan[i][j]
    }

    pub fn m(&self, i: usize, j: usize) -> u32 {
        self.m[i][j]
    }

    pub fn tau(&self) -> Option<&[usize]> {
        self.tau.as_deref()
    }

    /// `τ(i)`, the identity when no automorphism is attached.
    pub fn tau_of(&self, i: usize) -> usize {
        self.tau.as_ref().map_or(i, |t| t[i])
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    /// `<β, α_i^∨> = Σ_j β_j a_ij`.
    pub fn coroot_pairing(&self, beta: &[i32], i: usize) -> i32 {
        (0..self.rank).map(|j| beta[j] * self.cartan[i][j]).sum()
    }

    /// `s_i(β)` in simple-root coordinates.
    pub fn reflect(&self, i: usize, beta: &[i32]) -> Vec<i32> {
        let c = self.coroot_pairing(beta, i);
        let mut out = beta.to_vec();
        out[i] -= c;
        out
    }

    fn compute_positive_roots(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut roots: Vec<Vec<i32>> = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        let mut k = 0;
        while k < roots.len() {
            for i in 0..n {
                let r = self.reflect(i, &roots[k]);
                if r.iter().all(|&x| x >= 0) && !roots.contains(&r) {
                    roots.push(r);
                }
            }
            k += 1;
        }
        roots.sort_by_key(|r| (r.iter().sum::<i32>(), r.clone()));
        roots
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i >= self.rank {
            return Err(Error::NodeOutOfRange {
                node: i + 1,
                rank: self.rank,
            });
        }
        Ok(())
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.rank)
    }
}

/// The symmetric pair cases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `θ = ω` on the given type.
    I(char, usize),
    /// Type `A_n` with the index-reversing diagram automorphism.
    IIA(usize),
    /// Type `D_{n+1}` with the swap of the last two nodes.
    IID(usize),
    IIE,
    /// Type `A_{2m-1}`, `X = {1, 3, ..., 2m-1}`.
    III(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSpec {
    variant: Variant,
    ambient: RootDatum,
}

/// Case identifiers of the standard suites.
pub const SUITE_CASES: [&str; 7] = ["I-B3", "I-C3", "I-G2", "II-A7", "II-A6", "II-D5", "III-A7"];

impl CaseSpec {
    pub fn new(variant: Variant) -> Result<Self> {
        let ambient = match &variant {
            Variant::I(l, r) => RootDatum::new(*l, *r)?,
            Variant::IIA(n) => {
                if *n < 2 {
                    return Err(Error::Config("IIA requires n >= 2".into()));
                }
                let n = *n;
                RootDatum::new('A', n)?.with_tau((0..n).map(|i| n - 1 - i).collect())?
            }
            Variant::IID(n) => {
                if *n < 3 {
                    return Err(Error::Config("IID requires type D_{n+1} with n >= 3".into()));
                }
                let n = *n;
                let mut t: Vec<usize> = (0..=n).collect();
                t.swap(n - 1, n);
                RootDatum::new('D', n + 1)?.with_tau(t)?
            }
            Variant::IIE => RootDatum::new('E', 6)?.with_tau(vec![5, 1, 4, 3, 2, 0])?,
            Variant::III(m) => {
                if *m < 2 {
                    return Err(Error::Config("III requires m >= 2".into()));
                }
                RootDatum::new('A', 2 * m - 1)?
            }
        };
        Ok(CaseSpec { variant, ambient })
    }

    /// Parse identifiers like "I-B3", "II-A7", "II-D5", "II-E6", "III-A7".
    pub fn parse(id: &str) -> Result<Self> {
        let bad = || Error::UnknownCase(id.to_string());
        let (kind, ty) = id.trim().split_once('-').ok_or_else(bad)?;
        let rd = RootDatum::parse(ty).map_err(|_| bad())?;
        let variant = match (kind, rd.label()) {
            ("I", l) => Variant::I(l, rd.rank()),
            ("II", 'A') => Variant::IIA(rd.rank()),
            ("II", 'D') => Variant::IID(rd.rank() - 1),
            ("II", 'E') if rd.rank() == 6 => Variant::IIE,
            ("III", 'A') if rd.rank() % 2 == 1 => Variant::III(rd.rank().div_ceil(2)),
            _ => return Err(bad()),
        };
        Self::new(variant)
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    pub fn ambient(&self) -> &RootDatum {
        &self.ambient
    }

    pub fn id(&self) -> String {
        let kind = match self.variant {
            Variant::I(..) => "I",
            Variant::IIA(_) | Variant::IID(_) | Variant::IIE => "II",
            Variant::III(_) => "III",
        };
        format!("{kind}-{}", self.ambient.name())
    }

    /// Type and rank of the restricted braid group.
    pub fn sigma_braid_type(&self) -> (char, usize) {
        match self.variant {
            Variant::I(l, r) => (l, r),
            Variant::IIA(n) => ('B', n.div_ceil(2)),
            Variant::IID(n) => ('B', n),
            Variant::IIE => ('F', 4),
            Variant::III(m) => ('A', m - 1),
        }
    }

    pub fn sigma_datum(&self) -> RootDatum {
        let (l, r) = self.sigma_braid_type();
        if r == 1 && l == 'B' {
            return RootDatum::new('A', 1).expect("A1");
        }
        RootDatum::new(l, r).expect("sigma types are valid")
    }

    pub fn sigma_rank(&self) -> usize {
        self.sigma_braid_type().1
    }

    /// `i_{Σ,θ}(s_i)` as a word of 0-based ambient nodes; `i` is 0-based.
    pub fn i_sigma_theta(&self, i: usize) -> Result<Vec<usize>> {
        let r = self.sigma_rank();
        if i >= r {
            return Err(Error::NodeOutOfRange { node: i + 1, rank: r });
        }
        Ok(match self.variant {
            Variant::I(..) => vec![i],
            Variant::IIA(n) => {
                let tau = n - 1 - i;
                if i + 1 < r {
                    vec![i, tau]
                } else if n % 2 == 1 {
                    vec![i]
                } else {
                    vec![i, i + 1, i]
                }
            }
            Variant::IID(n) => {
                if i + 1 < n {
                    vec![i]
                } else {
                    vec![n - 1, n]
                }
            }
            Variant::IIE => match i {
                0 => vec![0, 5],
                1 => vec![2, 4],
                2 => vec![3],
                _ => vec![1],
            },
            Variant::III(_) => {
                let c = 2 * i + 1;
                vec![c, c - 1, c + 1, c]
            }
        })
    }

    /// Nodes of `X` for case III (0-based odd nodes in 1-based numbering).
    pub fn w_x(&self) -> Vec<usize> {
        match self.variant {
            Variant::III(m) => (0..m).map(|k| 2 * k).collect(),
            _ => Vec::new(),
        }
    }

    /// `τ(i)` on ambient nodes (identity outside case II).
    pub fn tau_of(&self, i: usize) -> usize {
        self.ambient.tau_of(i)
    }

    pub fn is_case_ii(&self) -> bool {
        matches!(self.variant, Variant::IIA(_) | Variant::IID(_) | Variant::IIE)
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizable_and_orders() {
        for (l, r) in [('A', 3), ('B', 3), ('C', 3), ('D', 5), ('E', 6), ('F', 4), ('G', 2), ('A', 7)] {
            let rd = RootDatum::new(l, r).unwrap();
            for i in 0..r {
                for j in 0..r {
                    assert_eq!(rd.pairing(i, j), rd.pairing(j, i), "{rd} {i} {j}");
                }
            }
        }
        let g2 = RootDatum::new('G', 2).unwrap();
        assert_eq!((g2.a(0, 1), g2.a(1, 0)), (-3, -1));
        assert_eq!(g2.m(0, 1), 6);
        let b3 = RootDatum::new('B', 3).unwrap();
        assert_eq!((b3.m(0, 1), b3.m(1, 2), b3.m(0, 2)), (3, 4, 2));
        assert_eq!(b3.a(2, 1), -2);
        let a1 = RootDatum::new('A', 1).unwrap();
        assert_eq!(a1.positive_roots().len(), 1);
    }

    #[test]
    fn root_counts() {
        for (l, r, n) in [('A', 7, 28), ('B', 3, 9), ('C', 3, 9), ('D', 5, 20), ('E', 6, 36), ('F', 4, 24), ('G', 2, 6)] {
            assert_eq!(RootDatum::new(l, r).unwrap().positive_roots().len(), n);
        }
    }

    #[test]
    fn sigma_types() {
        assert_eq!(CaseSpec::parse("II-A7").unwrap().sigma_braid_type(), ('B', 4));
        assert_eq!(CaseSpec::parse("III-A7").unwrap().sigma_braid_type(), ('A', 3));
        assert_eq!(CaseSpec::parse("II-E6").unwrap().sigma_braid_type(), ('F', 4));
        assert_eq!(CaseSpec::parse("II-D5").unwrap().sigma_braid_type(), ('B', 4));
        assert_eq!(CaseSpec::parse("II-A6").unwrap().sigma_braid_type(), ('B', 3));
    }

    #[test]
    fn embedding_words() {
        let e6 = CaseSpec::parse("II-E6").unwrap();
        assert_eq!(e6.i_sigma_theta(0).unwrap(), vec![0, 5]);
        let a6 = CaseSpec::parse("II-A6").unwrap();
        assert_eq!(a6.i_sigma_theta(2).unwrap(), vec![2, 3, 2]);
        let iii = CaseSpec::parse("III-A7").unwrap();
        assert_eq!(iii.i_sigma_theta(1).unwrap(), vec![3, 2, 4, 3]);
        assert!(iii.i_sigma_theta(3).is_err());
    }

    #[test]
    fn ids_round_trip() {
        for id in SUITE_CASES {
            assert_eq!(CaseSpec::parse(id).unwrap().id(), id);
        }
        assert!(CaseSpec::parse("I-Q3").is_err());
    }
}
