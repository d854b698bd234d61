//! Exact matrix realizations of the classical Lie algebras and the
//! classical braid group actions `Ad(s_i)` on them.
//!
//! Conventions for the natural representations (1-based indices,
//! `p(k) = N + 1 - k`, `E(a, b)` elementary matrices):
//!
//! | type      | N      | invariant form               | `e_i`, `i < n`              | `e_n`                        |
//! |-----------|--------|------------------------------|-----------------------------|------------------------------|
//! | `A_n`     | n + 1  | none                         | `E(i, i+1)`                 | `E(n, n+1)`                  |
//! | `B_n`     | 2n + 1 | antidiagonal, symmetric      | `E(i, i+1) - E(p(i+1), p(i))` | `E(n, n+1) - E(n+1, n+2)`  |
//! | `C_n`     | 2n     | antidiagonal, `+1` then `-1` | `E(i, i+1) - E(p(i+1), p(i))` | `E(n, n+1)`                |
//! | `D_n`     | 2n     | antidiagonal, symmetric      | `E(i, i+1) - E(p(i+1), p(i))` | `E(n-1, n+1) - E(n, n+2)`  |
//!
//! `f_i = e_i^t`, except `f_n = 2 e_n^t` in type `B`, and `h_i = [e_i, f_i]`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::braidact::{tau_images, TauDir};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::rootdata::{CaseSpec, RootDatum, Variant};
use crate::uqg::{FreeElement, GenSymbol};

type Q = BigRational;

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A square matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    a: Vec<Q>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, a: vec![Q::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.a[i * n + i] = Q::one();
        }
        m
    }

    /// `c · E(r, s)` with 1-based indices.
    pub fn unit(n: usize, r: usize, s: usize, c: i64) -> Self {
        let mut m = Self::zero(n);
        m.a[(r - 1) * n + (s - 1)] = qi(c);
        m
    }

    /// Build from integer rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "square matrix");
            for (s, &x) in row.iter().enumerate() {
                m.a[r * n + s] = qi(x);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(r, s)`.
    pub fn get(&self, r: usize, s: usize) -> &Q {
        &self.a[r * self.n + s]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Q {
        (0..self.n).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix {
            n: self.n,
            a: self.a.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&qi(-1))
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let n = self.n;
        let mut m = Self::zero(n);
        for r in 0..n {
            for k in 0..n {
                let x = &self.a[r * n + k];
                if x.is_zero() {
                    continue;
                }
                for s in 0..n {
                    let y = &o.a[k * n + s];
                    if !y.is_zero() {
                        m.a[r * n + s] += x * y;
                    }
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut m = Self::zero(n);
        for r in 0..n {
            for s in 0..n {
                m.a[s * n + r] = self.a[r * n + s].clone();
            }
        }
        m
    }

    /// `[x, y] = xy - yx`.
    pub fn bracket(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    /// `exp(x)` for nilpotent `x`, as a finite sum.
    pub fn exp_nilpotent(&self) -> Result<Matrix> {
        let mut acc = Self::identity(self.n);
        let mut term = Self::identity(self.n);
        for k in 1..=self.n {
            term = term.mul(self).scale(&Q::new(BigInt::one(), BigInt::from(k)));
            if term.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&term);
        }
        if term.mul(self).is_zero() {
            Ok(acc)
        } else {
            Err(Error::Unsupported("exponential of a non-nilpotent matrix".into()))
        }
    }

    fn entries(&self) -> &[Q] {
        &self.a
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for r in 0..self.n {
            for s in 0..self.n {
                let x = self.get(r, s);
                if x.is_zero() {
                    continue;
                }
                if !first {
                    f.write_str(if x.is_negative() { " - " } else { " + " })?;
                } else if x.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
                let a = x.abs();
                if !a.is_one() {
                    write!(f, "{a}·")?;
                }
                write!(f, "E{},{}", r + 1, s + 1)?;
            }
        }
        Ok(())
    }
}

/// Row-reduced span of matrices, used to extract bases.
#[derive(Clone, Debug, Default)]
struct Span {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Span {
    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        v
    }

    /// Add `v` if independent; returns whether it was.
    fn insert(&mut self, v: &[Q]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Linear span of iterated brackets of `gens`, as a basis.
fn lie_closure(gens: &[Matrix]) -> Vec<Matrix> {
    let mut span = Span::default();
    let mut basis = Vec::new();
    for g in gens {
        if span.insert(g.entries()) {
            basis.push(g.clone());
        }
    }
    let mut k = 0;
    while k < basis.len() {
        let x = basis[k].clone();
        for g in gens {
            let y = g.bracket(&x);
            if span.insert(y.entries()) {
                basis.push(y);
            }
        }
        k += 1;
    }
    basis
}

/// `x ↦ sign · A · x' · A^{-1}` with `x' = x` or `x^t`.
#[derive(Clone, Debug)]
pub struct MatrixMap {
    sign: i64,
    transpose: bool,
    a: Matrix,
    a_inv: Matrix,
}

impl MatrixMap {
    pub fn apply(&self, x: &Matrix) -> Matrix {
        let y = if self.transpose { x.transpose() } else { x.clone() };
        let z = self.a.mul(&y).mul(&self.a_inv);
        if self.sign < 0 {
            z.neg()
        } else {
            z
        }
    }
}

/// A conjugation `y ↦ g y g^{-1}`.
#[derive(Clone, Debug)]
pub struct Conjugation {
    pub g: Matrix,
    pub g_inv: Matrix,
}

impl Conjugation {
    pub fn identity(n: usize) -> Self {
        Conjugation {
            g: Matrix::identity(n),
            g_inv: Matrix::identity(n),
        }
    }

    pub fn apply(&self, y: &Matrix) -> Matrix {
        self.g.mul(y).mul(&self.g_inv)
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &Conjugation) -> Conjugation {
        Conjugation {
            g: self.g.mul(&other.g),
            g_inv: other.g_inv.mul(&self.g_inv),
        }
    }

    pub fn inverse(&self) -> Conjugation {
        Conjugation {
            g: self.g_inv.clone(),
            g_inv: self.g.clone(),
        }
    }
}

/// Chevalley generators of a classical Lie algebra together with an
/// involution `θ` and the fixed-point subalgebra `k`.
#[derive(Clone, Debug)]
pub struct Realization {
    case: CaseSpec,
    e: Vec<Matrix>,
    f: Vec<Matrix>,
    h: Vec<Matrix>,
    theta: MatrixMap,
    s: Option<Matrix>,
    g_basis: Vec<Matrix>,
    k_basis: Vec<Matrix>,
    k_span: Span,
    braid: Vec<Conjugation>,
}

fn classical_generators(rd: &RootDatum) -> Result<(usize, Vec<Matrix>, Vec<Matrix>)> {
    let n = rd.rank();
    let unsupported = || Error::Unsupported(format!("no classical realization for {rd}"));
    let big_n = match rd.label() {
        'A' => n + 1,
        'B' => 2 * n + 1,
        'C' | 'D' => 2 * n,
        _ => return Err(unsupported()),
    };
    let p = |k: usize| big_n + 1 - k;
    let mut es = Vec::new();
    let mut fs = Vec::new();
    for i in 1..=n {
        let pair = |r: usize, s: usize| Matrix::unit(big_n, r, s, 1).sub(&Matrix::unit(big_n, p(s), p(r), 1));
        let (ei, fscale) = match rd.label() {
            'A' => (Matrix::unit(big_n, i, i + 1, 1), 1),
            'B' if i == n => (pair(n, n + 1), 2),
            'C' if i == n => (Matrix::unit(big_n, n, n + 1, 1), 1),
            'D' if i == n => (pair(n - 1, n + 1), 1),
            _ => (pair(i, i + 1), 1),
        };
        fs.push(ei.transpose().scale(&qi(fscale)));
        es.push(ei);
    }
    Ok((big_n, es, fs))
}

/// Diagonal `D` with `f_i = D e_i^t D^{-1}` for all `i`.
fn omega_diagonal(big_n: usize, es: &[Matrix], fs: &[Matrix]) -> Result<Matrix> {
    let mut d: Vec<Option<Q>> = vec![None; big_n];
    d[0] = Some(Q::one());
    let mut changed = true;
    while changed {
        changed = false;
        for (e, f) in es.iter().zip(fs) {
            for r in 0..big_n {
                for s in 0..big_n {
                    let x = e.get(r, s);
                    if x.is_zero() {
                        continue;
                    }
                    // f[s][r] = d_s / d_r · e[r][s]
                    let ratio = f.get(s, r) / x;
                    match (&d[r], &d[s]) {
                        (Some(dr), None) => {
                            d[s] = Some(dr * &ratio);
                            changed = true;
                        }
                        (None, Some(ds)) => {
                            d[r] = Some(ds / &ratio);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let mut m = Matrix::zero(big_n);
    for (i, x) in d.into_iter().enumerate() {
        m.a[i * big_n + i] = x.ok_or_else(|| Error::Unsupported("disconnected realization".into()))?;
    }
    Ok(m)
}

fn diag_inverse(m: &Matrix) -> Matrix {
    let n = m.size();
    let mut r = Matrix::zero(n);
    for i in 0..n {
        r.a[i * n + i] = m.get(i, i).recip();
    }
    r
}

impl Realization {
    /// Classical realization for one of the supported cases.
    pub fn new(case: &CaseSpec) -> Result<Self> {
        let rd = case.ambient();
        let (big_n, e, f) = match case.variant() {
            Variant::IIE => return Err(Error::Unsupported("classical realization of case IIE".into())),
            _ => classical_generators(rd)?,
        };
        let h: Vec<Matrix> = e.iter().zip(&f).map(|(x, y)| x.bracket(y)).collect();
        let theta = match case.variant() {
            Variant::I(..) => {
                let d = omega_diagonal(big_n, &e, &f)?;
                MatrixMap {
                    sign: -1,
                    transpose: true,
                    a_inv: diag_inverse(&d),
                    a: d,
                }
            }
            Variant::IIA(_) => {
                // alternating antidiagonal J
                let mut j = Matrix::zero(big_n);
                for k in 1..=big_n {
                    j.a[(k - 1) * big_n + (big_n - k)] = qi(if k % 2 == 0 { 1 } else { -1 });
                }
                let j_inv = j.transpose();
                MatrixMap {
                    sign: 1,
                    transpose: false,
                    a: j,
                    a_inv: j_inv,
                }
            }
            Variant::IID(n) => {
                // swap of the two middle basis vectors
                let mut p = Matrix::identity(big_n);
                let (u, w) = (*n, n + 1);
                p.a[u * big_n + u] = Q::zero();
                p.a[w * big_n + w] = Q::zero();
                p.a[u * big_n + w] = Q::one();
                p.a[w * big_n + u] = Q::one();
                MatrixMap {
                    sign: -1,
                    transpose: true,
                    a_inv: p.clone(),
                    a: p,
                }
            }
            Variant::III(_) => {
                let s = s_matrix(big_n);
                MatrixMap {
                    sign: -1,
                    transpose: true,
                    a_inv: s.transpose(),
                    a: s,
                }
            }
            Variant::IIE => unreachable!(),
        };
        let s = matches!(case.variant(), Variant::III(_)).then(|| theta.a.clone());
        let mut gens = e.clone();
        gens.extend(f.iter().cloned());
        let g_basis = lie_closure(&gens);
        let mut k_span = Span::default();
        let mut k_basis = Vec::new();
        for x in &g_basis {
            let y = x.add(&theta.apply(x));
            if k_span.insert(y.entries()) {
                k_basis.push(y);
            }
        }
        let braid = e
            .iter()
            .zip(&f)
            .map(|(x, y)| {
                let ex = x.exp_nilpotent()?;
                let emf = y.neg().exp_nilpotent()?;
                let emx = x.neg().exp_nilpotent()?;
                let ef = y.exp_nilpotent()?;
                Ok(Conjugation {
                    g: ex.mul(&emf).mul(&ex),
                    g_inv: emx.mul(&ef).mul(&emx),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let r = Realization {
            case: case.clone(),
            e,
            f,
            h,
            theta,
            s,
            g_basis,
            k_basis,
            k_span,
            braid,
        };
        r.check_invariants()?;
        Ok(r)
    }

    fn check_invariants(&self) -> Result<()> {
        let rd = self.case.ambient();
        let n = rd.rank();
        let bad = |m: String| Err(Error::Unsupported(format!("realization of {}: {m}", self.case.id())));
        for i in 0..n {
            for j in 0..n {
                let ef = self.e[i].bracket(&self.f[j]);
                let want = if i == j { self.h[i].clone() } else { Matrix::zero(self.dim()) };
                if ef != want {
                    return bad(format!("[e{}, f{}]", i + 1, j + 1));
                }
                let a = qi(rd.a(i, j) as i64);
                if self.h[i].bracket(&self.e[j]) != self.e[j].scale(&a) {
                    return bad(format!("[h{}, e{}]", i + 1, j + 1));
                }
                if self.h[i].bracket(&self.f[j]) != self.f[j].scale(&(-a)) {
                    return bad(format!("[h{}, f{}]", i + 1, j + 1));
                }
            }
            if self.label() == 'A' && !self.h[i].trace().is_zero() {
                return bad(format!("tr h{}", i + 1));
            }
        }
        for x in self.e.iter().chain(&self.f) {
            if self.theta.apply(&self.theta.apply(x)) != *x {
                return bad("θ² ≠ id".into());
            }
        }
        if self.g_basis.len() != expected_dim(rd) {
            return bad(format!("dim g = {}", self.g_basis.len()));
        }
        if self.braid.iter().any(|c| c.g.mul(&c.g_inv) != Matrix::identity(self.dim())) {
            return bad("g g^{-1} ≠ 1".into());
        }
        Ok(())
    }

    fn label(&self) -> char {
        self.case.ambient().label()
    }

    pub fn case(&self) -> &CaseSpec {
        &self.case
    }

    /// Size of the matrices.
    pub fn dim(&self) -> usize {
        self.e[0].size()
    }

    /// `e_i`, 1-based.
    pub fn e(&self, i: usize) -> &Matrix {
        &self.e[i - 1]
    }

    pub fn f(&self, i: usize) -> &Matrix {
        &self.f[i - 1]
    }

    pub fn h(&self, i: usize) -> &Matrix {
        &self.h[i - 1]
    }

    pub fn theta(&self, x: &Matrix) -> Matrix {
        self.theta.apply(x)
    }

    /// The matrix `S` of case III.
    pub fn s_matrix(&self) -> Option<&Matrix> {
        self.s.as_ref()
    }

    pub fn g_basis(&self) -> &[Matrix] {
        &self.g_basis
    }

    pub fn k_basis(&self) -> &[Matrix] {
        &self.k_basis
    }

    /// Whether `x` is fixed by `θ`.
    pub fn in_k(&self, x: &Matrix) -> bool {
        self.k_span.contains(x.entries())
    }

    /// `Ad(s_i)` as a conjugation, `i` 1-based.
    pub fn ad_braid(&self, i: usize) -> &Conjugation {
        &self.braid[i - 1]
    }

    /// `Ad(s_{w_1} ⋯ s_{w_k})` for a 0-based word.
    pub fn ad_word(&self, word: &[usize]) -> Conjugation {
        word.iter()
            .fold(Conjugation::identity(self.dim()), |acc, &i| acc.then_after(&self.braid[i]))
    }

    /// `b_j` of case III: `f_j` for odd `j`, `f_j + θ(f_j)` for even `j`.
    pub fn b(&self, j: usize) -> Matrix {
        if j % 2 == 1 {
            self.f(j).clone()
        } else {
            self.f(j).add(&self.theta(self.f(j)))
        }
    }

    /// Images of the `U_q` generator symbols at `q = 1`: `K ↦ 1`,
    /// `B_j ↦ b_j`.
    fn symbol_matrix(&self, s: &GenSymbol) -> Matrix {
        match s {
            GenSymbol::E(i) => self.e[*i as usize].clone(),
            GenSymbol::F(i) => self.f[*i as usize].clone(),
            GenSymbol::K(_) => Matrix::identity(self.dim()),
            GenSymbol::B(i) => self.b(*i as usize + 1),
        }
    }

    /// Specialize a free-algebra expression at `v = 1`.
    pub fn specialize(&self, x: &FreeElement) -> Result<Matrix> {
        let mut acc = Matrix::zero(self.dim());
        for (w, c) in x.terms() {
            let c = c.at_one()?;
            if c.is_zero() {
                continue;
            }
            let m = w
                .iter()
                .fold(Matrix::identity(self.dim()), |acc, s| acc.mul(&self.symbol_matrix(s)));
            acc = acc.add(&m.scale(&c));
        }
        Ok(acc)
    }
}

fn expected_dim(rd: &RootDatum) -> usize {
    let n = rd.rank();
    match rd.label() {
        'A' => n * (n + 2),
        'B' | 'C' => n * (2 * n + 1),
        'D' => n * (2 * n - 1),
        _ => 0,
    }
}

/// Block diagonal `diag(J, …, J)` with `J = [[0, 1], [-1, 0]]`.
fn s_matrix(big_n: usize) -> Matrix {
    let mut s = Matrix::zero(big_n);
    for k in (0..big_n).step_by(2) {
        s.a[k * big_n + k + 1] = Q::one();
        s.a[(k + 1) * big_n + k] = qi(-1);
    }
    s
}

fn compare(lhs: &Matrix, rhs: &Matrix) -> std::result::Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("residual {}", lhs.sub(rhs)))
    }
}

/// Check that two conjugations agree on every element of `basis`.
fn same_action(a: &Conjugation, b: &Conjugation, basis: &[Matrix]) -> std::result::Result<(), String> {
    for x in basis {
        compare(&a.apply(x), &b.apply(x))?;
    }
    Ok(())
}

/// The classical claims for one case.
pub fn verify_classical(case: &CaseSpec) -> Result<Report> {
    let r = Realization::new(case)?;
    let suite = format!("classical-{}", case.id());
    let rd = case.ambient();
    let n = rd.rank();
    let mut rep = Report::new();

    // θ on generators
    for i in 1..=n {
        let (ei, fi) = (r.e(i), r.f(i));
        let (want_e, want_f, want_h) = match case.variant() {
            Variant::III(_) => {
                let wx = r.ad_word(&case.w_x());
                (wx.apply(&fi.neg()), wx.apply(&ei.neg()), wx.apply(&r.h(i).neg()))
            }
            _ => {
                let t = case.tau_of(i - 1) + 1;
                (r.f(t).neg(), r.e(t).neg(), r.h(t).neg())
            }
        };
        let label = match case.variant() {
            Variant::III(_) => "-Ad(S)(x^t) = Ad(w_X)ω(x)",
            Variant::I(..) => "θ = ω",
            _ => "θ = τω",
        };
        rep.record_bool(&suite, "theta", format!("i={i}/{label}"), || {
            Ok(compare(&r.theta(ei), &want_e)
                .and_then(|_| compare(&r.theta(fi), &want_f))
                .and_then(|_| compare(&r.theta(r.h(i)), &want_h)))
        });
    }

    // θ ∘ Ad(s_i) = Ad(twist(s_i)) ∘ θ on g
    for i in 0..n {
        let (lhs_map, twisted) = match case.variant() {
            Variant::III(_) => {
                let wx = case.w_x();
                let mut w = wx.clone();
                w.push(i);
                let c = r.ad_word(&w).then_after(&r.ad_word(&wx).inverse());
                (r.ad_word(&[i]), c)
            }
            _ => (r.ad_word(&[i]), r.ad_word(&[case.tau_of(i)])),
        };
        rep.record_bool(&suite, "twist", format!("s{}", i + 1), || {
            for x in r.g_basis() {
                if let Err(m) = compare(&r.theta(&lhs_map.apply(x)), &twisted.apply(&r.theta(x))) {
                    return Ok(Err(m));
                }
            }
            Ok(Ok(()))
        });
    }

    // images of i_{Σ,θ} commute with θ
    let sd = case.sigma_datum();
    let sr = sd.rank();
    let imgs: Vec<Conjugation> = (0..sr).map(|k| Ok(r.ad_word(&case.i_sigma_theta(k)?))).collect::<Result<_>>()?;
    for (k, a) in imgs.iter().enumerate() {
        let word = case.i_sigma_theta(k)?;
        let w: Vec<String> = word.iter().map(|x| format!("s{}", x + 1)).collect();
        rep.record_bool(&suite, "lemma", format!("k={}/{}", k + 1, w.join(" ")), || {
            for x in r.g_basis() {
                if let Err(m) = compare(&a.apply(&r.theta(x)), &r.theta(&a.apply(x))) {
                    return Ok(Err(m));
                }
            }
            for x in r.k_basis() {
                if !r.in_k(&a.apply(x)) {
                    return Ok(Err(format!("Ad({}) leaves k", w.join(" "))));
                }
            }
            Ok(Ok(()))
        });
    }

    // braid relations of Br(Σ) on k
    for k in 0..sr {
        for l in k + 1..sr {
            let m = sd.m(k, l) as usize;
            let alt = |x: usize, y: usize| {
                (0..m).fold(Conjugation::identity(r.dim()), |acc, t| acc.then_after(&imgs[if t % 2 == 0 { x } else { y }]))
            };
            let (lhs, rhs) = (alt(k, l), alt(l, k));
            rep.record_bool(&suite, "braid", format!("m={m}/k={},l={}", k + 1, l + 1), || {
                Ok(same_action(&lhs, &rhs, r.k_basis()))
            });
        }
    }

    // Lie automorphism on random pairs of k
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (k, a) in imgs.iter().enumerate() {
        rep.record_bool(&suite, "automorphism", format!("k={}", k + 1), || {
            let kb = r.k_basis();
            for _ in 0..8 {
                let x = &kb[rng.gen_range(0..kb.len())];
                let y = &kb[rng.gen_range(0..kb.len())];
                if let Err(m) = compare(&a.apply(&x.bracket(y)), &a.apply(x).bracket(&a.apply(y))) {
                    return Ok(Err(m));
                }
            }
            Ok(Ok(()))
        });
    }

    if let Variant::III(mm) = case.variant() {
        verify_case3_classical(&r, *mm, &suite, &mut rep)?;
    }
    Ok(rep)
}

/// Right-hand side of the classical formula for `Ad(s_{2i}s_{2i-1}s_{2i+1}s_{2i})(b_j)`.
pub fn adbj_rhs(r: &Realization, i: usize, j: usize) -> Matrix {
    let b = |k: usize| r.b(k);
    if j + 2 == 2 * i {
        b(j).bracket(&b(2 * i - 1)).bracket(&b(2 * i))
    } else if j + 1 == 2 * i {
        b(2 * i + 1)
    } else if j == 2 * i + 1 {
        b(2 * i - 1)
    } else if j == 2 * i + 2 {
        b(j).bracket(&b(2 * i + 1)).bracket(&b(2 * i))
    } else {
        b(j)
    }
}

fn branch_name(i: usize, j: usize) -> &'static str {
    match j as i64 - 2 * i as i64 {
        -2 => "j=2i-2",
        -1 => "j=2i-1",
        0 => "j=2i",
        1 => "j=2i+1",
        2 => "j=2i+2",
        _ => "|j-2i|>2",
    }
}

fn verify_case3_classical(r: &Realization, m: usize, suite: &str, rep: &mut Report) -> Result<()> {
    let top = 2 * m - 1;
    for i in 1..m {
        let w = r.ad_word(&[2 * i - 1, 2 * i - 2, 2 * i, 2 * i - 1]);
        for j in 1..=top {
            rep.record_bool(suite, "adbj", format!("i={i},j={j}/{}", branch_name(i, j)), || {
                Ok(compare(&w.apply(&r.b(j)), &adbj_rhs(r, i, j)))
            });
        }
    }
    for j in (1..=top).step_by(2) {
        let a = r.ad_braid(j);
        let a2 = a.then_after(a);
        for nb in [j.wrapping_sub(1), j + 1] {
            if nb == 0 || nb > top {
                continue;
            }
            rep.record_bool(suite, "order4", format!("Ad(s{j}^2)(b{nb}) = -b{nb}"), || {
                Ok(compare(&a2.apply(&r.b(nb)), &r.b(nb).neg()))
            });
        }
        let a4 = a2.then_after(&a2);
        rep.record_bool(suite, "order4", format!("Ad(s{j})^4 = id on k"), || {
            for x in r.k_basis() {
                if !r.in_k(&a.apply(x)) {
                    return Ok(Err(format!("Ad(s{j}) leaves k")));
                }
            }
            Ok(same_action(&a4, &Conjugation::identity(r.dim()), r.k_basis()))
        });
    }
    let mut gens: Vec<Matrix> = Vec::new();
    for j in (1..=top).step_by(2) {
        gens.extend([r.e(j).clone(), r.f(j).clone(), r.h(j).clone()]);
    }
    for j in (2..top).step_by(2) {
        gens.push(r.b(j));
    }
    rep.record_bool(suite, "generators", "e_i, f_i, h_i (i odd), b_2j generate k", || {
        if gens.iter().any(|x| !r.in_k(x)) {
            return Ok(Err("generator outside k".into()));
        }
        let d = lie_closure(&gens).len();
        let want = r.k_basis().len();
        Ok(if d == want && want == m * (2 * m + 1) {
            Ok(())
        } else {
            Err(format!("span {d}, dim k {want}"))
        })
    });
    Ok(())
}

/// Specialize `τ_i(B_j)` (and `τ_i^-(B_j)`) at `q = 1`, `K = 1` and compare
/// with `Ad(s_{2i}s_{2i-1}s_{2i+1}s_{2i})^{±1}(b_j)`.
pub fn verify_q1_degeneration(m: usize) -> Result<Report> {
    let case = CaseSpec::new(Variant::III(m))?;
    let r = Realization::new(&case)?;
    let suite = format!("q1-{}", case.id());
    let mut rep = Report::new();
    for i in 1..m {
        let w = r.ad_word(&[2 * i - 1, 2 * i - 2, 2 * i, 2 * i - 1]);
        for (dir, ad) in [(TauDir::Tau, w.clone()), (TauDir::TauMinus, w.inverse())] {
            let t = tau_images(&case, i - 1, dir)?;
            let name = if dir == TauDir::Tau { "tau" } else { "tau^-" };
            for j in 1..2 * m {
                let img = t
                    .images
                    .image(GenSymbol::B(j as u8 - 1))
                    .ok_or_else(|| Error::UndefinedImage(format!("B{j}")))?;
                let check = if dir == TauDir::Tau { "q1" } else { "q1-inverse" };
                rep.record_bool(&suite, check, format!("{name}{i}(B{j})/{}", branch_name(i, j)), || {
                    let lhs = r.specialize(&img)?;
                    Ok(compare(&lhs, &ad.apply(&r.b(j))))
                });
            }
        }
    }
    Ok(rep)
}

/// Classical suite: every supported case and the `q → 1` limits.
pub fn classical_suite() -> Result<Report> {
    let mut rep = Report::new();
    for id in ["I-A2", "I-A3", "I-B3", "I-C3", "II-A6", "II-A7", "II-D5", "III-A3", "III-A5", "III-A7"] {
        rep.extend(verify_classical(&CaseSpec::parse(id)?)?);
    }
    for m in [2, 3, 4] {
        rep.extend(verify_q1_degeneration(m)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_braid_generator() {
        let r = Realization::new(&CaseSpec::parse("I-A1").unwrap()).unwrap();
        assert_eq!(r.ad_braid(1).g, Matrix::from_rows(&[vec![0, 1], vec![-1, 0]]));
        assert_eq!(r.ad_braid(1).apply(r.h(1)), r.h(1).neg());
        assert_eq!(r.ad_braid(1).apply(r.e(1)), r.f(1).neg());
    }

    #[test]
    fn k_dimensions() {
        // so_n for case I on sl_n, sp_2m for case III
        for (id, d) in [("I-A2", 3), ("I-A3", 6), ("III-A3", 10), ("III-A7", 36)] {
            let r = Realization::new(&CaseSpec::parse(id).unwrap()).unwrap();
            assert_eq!(r.k_basis().len(), d, "{id}");
        }
    }

    #[test]
    fn all_types_construct() {
        for id in ["I-B3", "I-C3", "I-D4", "II-A7", "II-A6", "II-D5"] {
            Realization::new(&CaseSpec::parse(id).unwrap()).unwrap();
        }
        assert!(matches!(Realization::new(&CaseSpec::parse("II-E6").unwrap()), Err(Error::Unsupported(_))));
        assert!(matches!(Realization::new(&CaseSpec::parse("I-G2").unwrap()), Err(Error::Unsupported(_))));
    }
}
