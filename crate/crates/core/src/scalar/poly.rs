//! Dense univariate integer polynomials in `v`.
//!
//! Coefficients live in `i64` while they fit and are promoted to `BigInt`
//! on overflow. A polynomial is stored as `v^shift * (c0 + c1 v + ...)` with
//! `c0 != 0`, so powers of `v` are split off for free.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

pub trait Coef: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Exact quotient; `None` on overflow. Caller guarantees divisibility.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn divides(&self, o: &Self) -> bool;
    fn gcd(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_one(&self) -> bool;
}

impl Coef for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(x: i64) -> Self {
        x
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        self.checked_div(*o)
    }
    fn divides(&self, o: &Self) -> bool {
        // self | o
        if *self == 0 {
            return *o == 0;
        }
        match o.checked_rem(*self) {
            Some(r) => r == 0,
            None => true, // i64::MIN % -1
        }
    }
    fn gcd(&self, o: &Self) -> Option<Self> {
        if *self == i64::MIN || *o == i64::MIN {
            return None;
        }
        Some(Integer::gcd(self, o))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn divides(&self, o: &Self) -> bool {
        if Zero::is_zero(self) {
            return Zero::is_zero(o);
        }
        Zero::is_zero(&(o % self))
    }
    fn gcd(&self, o: &Self) -> Option<Self> {
        Some(Integer::gcd(self, o))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

type Coeffs<C> = SmallVec<[C; 4]>;

/// `v^shift * Σ c[k] v^k` with `c[0] != 0` and `c.last() != 0` (or `c` empty for zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dense<C> {
    shift: u32,
    c: Coeffs<C>,
}

impl<C: Coef> Dense<C> {
    fn zero() -> Self {
        Dense {
            shift: 0,
            c: SmallVec::new(),
        }
    }

    fn from_parts(shift: u32, mut c: Coeffs<C>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        if c.is_empty() {
            return Self::zero();
        }
        let lead_zeros = c.iter().take_while(|x| x.is_zero()).count();
        if lead_zeros > 0 {
            c.drain(..lead_zeros);
        }
        Dense {
            shift: shift + lead_zeros as u32,
            c,
        }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.shift as usize + self.c.len() - 1
    }

    fn lead(&self) -> &C {
        self.c.last().expect("nonzero polynomial")
    }

    fn add_sub(&self, o: &Self, subtract: bool) -> Option<Self> {
        if o.is_zero() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return if subtract { o.neg() } else { Some(o.clone()) };
        }
        let s = self.shift.min(o.shift);
        let end = (self.shift as usize + self.c.len()).max(o.shift as usize + o.c.len());
        let mut out: Coeffs<C> = SmallVec::with_capacity(end - s as usize);
        out.resize(end - s as usize, C::zero());
        for (k, x) in self.c.iter().enumerate() {
            out[self.shift as usize - s as usize + k] = x.clone();
        }
        let off = o.shift as usize - s as usize;
        for (k, x) in o.c.iter().enumerate() {
            let slot = &mut out[off + k];
            *slot = if subtract { slot.sub(x)? } else { slot.add(x)? };
        }
        Some(Self::from_parts(s, out))
    }

    fn neg(&self) -> Option<Self> {
        let mut c = SmallVec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(x.neg()?);
        }
        Some(Dense { shift: self.shift, c })
    }

    fn mul(&self, o: &Self) -> Option<Self> {
        if self.is_zero() || o.is_zero() {
            return Some(Self::zero());
        }
        let mut out: Coeffs<C> = SmallVec::with_capacity(self.c.len() + o.c.len() - 1);
        out.resize(self.c.len() + o.c.len() - 1, C::zero());
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                let p = a.mul(b)?;
                out[i + j] = out[i + j].add(&p)?;
            }
        }
        Some(Dense {
            shift: self.shift + o.shift,
            c: out,
        })
    }

    fn scale(&self, k: &C) -> Option<Self> {
        if k.is_zero() {
            return Some(Self::zero());
        }
        let mut c = SmallVec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(x.mul(k)?);
        }
        Some(Dense { shift: self.shift, c })
    }

    fn div_scalar(&self, k: &C) -> Option<Self> {
        let mut c = SmallVec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(x.div_exact(k)?);
        }
        Some(Dense { shift: self.shift, c })
    }

    fn content(&self) -> Option<C> {
        let mut g = C::zero();
        for x in &self.c {
            g = g.gcd(x)?;
            if g.is_one() {
                break;
            }
        }
        Some(g)
    }

    fn primitive(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut g = self.content()?;
        if self.lead().is_neg() {
            g = g.neg()?;
        }
        if g.is_one() {
            return Some(self.clone());
        }
        self.div_scalar(&g)
    }

    /// Unshifted coefficients (exponents relative to `v^0` of the v-free part).
    fn core(&self) -> Dense<C> {
        Dense {
            shift: 0,
            c: self.c.clone(),
        }
    }

    /// Pseudo-remainder of `a` by `b` (both unshifted, nonzero).
    fn prem(a: &Self, b: &Self) -> Option<Self> {
        let db = b.c.len() - 1;
        let lb = b.lead().clone();
        let mut r: Vec<C> = a.c.to_vec();
        let mut dr = r.len() as isize - 1;
        while dr >= db as isize && !r.is_empty() {
            let lr = r[dr as usize].clone();
            if lr.is_zero() {
                r.pop();
                dr -= 1;
                continue;
            }
            // r = lb * r - lr * v^(dr-db) * b
            for x in r.iter_mut() {
                *x = x.mul(&lb)?;
            }
            let off = dr as usize - db;
            for (k, bk) in b.c.iter().enumerate() {
                let t = lr.mul(bk)?;
                r[off + k] = r[off + k].sub(&t)?;
            }
            r.pop();
            dr -= 1;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
                dr -= 1;
            }
        }
        Some(Self::from_parts(0, r.into_iter().collect()))
    }

    /// gcd in Z[v], normalized to positive leading coefficient.
    fn gcd(&self, o: &Self) -> Option<Self> {
        if self.is_zero() {
            return o.abs_norm();
        }
        if o.is_zero() {
            return self.abs_norm();
        }
        let shift = self.shift.min(o.shift);
        let ca = self.content()?;
        let cb = o.content()?;
        let cg = ca.gcd(&cb)?;
        let mut a = self.core().primitive()?;
        let mut b = o.core().primitive()?;
        if a.c.len() < b.c.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while b.c.len() > 1 {
            let r = Self::prem(&a, &b)?;
            a = b;
            if r.is_zero() {
                b = Self::zero();
                break;
            }
            b = r.primitive()?;
        }
        let core = if b.is_zero() {
            a
        } else {
            // b is a nonzero constant: v-free parts are coprime
            Dense {
                shift: 0,
                c: SmallVec::from_elem(C::from_i64(1), 1),
            }
        };
        let core = core.primitive()?;
        let mut res = core.scale(&cg)?;
        res.shift = shift;
        Some(res)
    }

    fn abs_norm(&self) -> Option<Self> {
        if !self.is_zero() && self.lead().is_neg() {
            self.neg()
        } else {
            Some(self.clone())
        }
    }

    /// Exact division `self / d`; caller guarantees `d | self`.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.c.len() == 1 {
            let mut q = self.div_scalar(&d.c[0])?;
            q.shift -= d.shift;
            return Some(q);
        }
        let dd = d.c.len() - 1;
        let ld = d.lead().clone();
        let mut r: Vec<C> = self.c.to_vec();
        let nq = r.len() - dd;
        let mut q: Vec<C> = vec![C::zero(); nq];
        for k in (0..nq).rev() {
            let lr = r[k + dd].clone();
            if lr.is_zero() {
                continue;
            }
            let qk = lr.div_exact(&ld)?;
            for (j, dj) in d.c.iter().enumerate() {
                let t = qk.mul(dj)?;
                r[k + j] = r[k + j].sub(&t)?;
            }
            q[k] = qk;
        }
        Some(Self::from_parts(self.shift - d.shift, q.into_iter().collect()))
    }

    /// `Some(Some(q))` if `d | self` over Z[v], `Some(None)` if not, `None` on overflow.
    fn try_div(&self, d: &Self) -> Option<Option<Self>> {
        if self.is_zero() {
            return Some(Some(Self::zero()));
        }
        if d.shift > self.shift || d.c.len() > self.c.len() {
            return Some(None);
        }
        let dd = d.c.len() - 1;
        let ld = d.lead().clone();
        let mut r: Vec<C> = self.c.to_vec();
        let nq = r.len() - dd;
        let mut q: Vec<C> = vec![C::zero(); nq];
        for k in (0..nq).rev() {
            let lr = r[k + dd].clone();
            if lr.is_zero() {
                continue;
            }
            if !ld.divides(&lr) {
                return Some(None);
            }
            let qk = lr.div_exact(&ld)?;
            for (j, dj) in d.c.iter().enumerate() {
                let t = qk.mul(dj)?;
                r[k + j] = r[k + j].sub(&t)?;
            }
            q[k] = qk;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return Some(None);
        }
        Some(Some(Self::from_parts(
            self.shift - d.shift,
            q.into_iter().collect(),
        )))
    }

    fn to_big(&self) -> Dense<BigInt> {
        Dense {
            shift: self.shift,
            c: self.c.iter().map(|x| x.to_big()).collect(),
        }
    }
}

impl Dense<BigInt> {
    fn shrink(self) -> IntPoly {
        let mut small: Coeffs<i64> = SmallVec::with_capacity(self.c.len());
        for x in &self.c {
            match x.to_i64() {
                Some(y) => small.push(y),
                None => return IntPoly::Big(Box::new(self)),
            }
        }
        IntPoly::Small(Dense {
            shift: self.shift,
            c: small,
        })
    }
}

/// Integer polynomial in `v`. The representation is canonical: equal
/// polynomials compare structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum IntPoly {
    #[doc(hidden)]
    Small(Dense<i64>),
    #[doc(hidden)]
    Big(Box<Dense<BigInt>>),
}

macro_rules! lift_binary {
    ($name:ident, $op:expr) => {
        pub fn $name(&self, o: &IntPoly) -> IntPoly {
            if let (IntPoly::Small(a), IntPoly::Small(b)) = (self, o) {
                if let Some(r) = $op(a, b) {
                    return IntPoly::Small(r);
                }
            }
            let (a, b) = (self.big(), o.big());
            $op(&a, &b).expect("bigint arithmetic is total").shrink()
        }
    };
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::Small(Dense::zero())
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^k`.
    pub fn monomial(c: i64, k: u32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        IntPoly::Small(Dense {
            shift: k,
            c: SmallVec::from_elem(c, 1),
        })
    }

    /// From coefficients in ascending powers of `v`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        IntPoly::Small(Dense::from_parts(0, coeffs.iter().copied().collect()))
    }

    pub fn from_big_coeffs(shift: u32, coeffs: Vec<BigInt>) -> Self {
        Dense::from_parts(shift, coeffs.into_iter().collect()).shrink()
    }

    fn big(&self) -> Dense<BigInt> {
        match self {
            IntPoly::Small(d) => d.to_big(),
            IntPoly::Big(d) => (**d).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            IntPoly::Small(d) => d.is_zero(),
            IntPoly::Big(d) => d.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, IntPoly::Small(d) if d.shift == 0 && d.c.len() == 1 && d.c[0] == 1)
    }

    /// True for `c * v^k`.
    pub fn is_monomial(&self) -> bool {
        match self {
            IntPoly::Small(d) => d.c.len() == 1,
            IntPoly::Big(d) => d.c.len() == 1,
        }
    }

    /// True for `± v^k`.
    pub fn is_unit_monomial(&self) -> bool {
        matches!(self, IntPoly::Small(d) if d.c.len() == 1 && (d.c[0] == 1 || d.c[0] == -1))
    }

    /// Power of `v` dividing the polynomial.
    pub fn valuation(&self) -> u32 {
        match self {
            IntPoly::Small(d) => d.shift,
            IntPoly::Big(d) => d.shift,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            IntPoly::Small(d) => d.degree(),
            IntPoly::Big(d) => d.degree(),
        })
    }

    pub fn lead_is_negative(&self) -> bool {
        match self {
            IntPoly::Small(d) => !d.is_zero() && d.lead().is_neg(),
            IntPoly::Big(d) => !d.is_zero() && d.lead().is_neg(),
        }
    }

    /// Coefficients from `v^0` upwards (including the zero low part).
    pub fn coefficients(&self) -> Vec<BigInt> {
        let d = self.big();
        let mut out = vec![<BigInt as Zero>::zero(); d.shift as usize];
        out.extend(d.c.iter().cloned());
        out
    }

    /// Nonzero terms as `(exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> Vec<(u32, BigInt)> {
        let d = self.big();
        d.c.iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| (d.shift + k as u32, c.clone()))
            .collect()
    }

    lift_binary!(add, |a: &Dense<_>, b: &Dense<_>| a.add_sub(b, false));
    lift_binary!(sub, |a: &Dense<_>, b: &Dense<_>| a.add_sub(b, true));
    lift_binary!(mul, |a: &Dense<_>, b: &Dense<_>| a.mul(b));
    lift_binary!(gcd, |a: &Dense<_>, b: &Dense<_>| a.gcd(b));
    lift_binary!(div_exact, |a: &Dense<_>, b: &Dense<_>| a.div_exact(b));

    /// Quotient if `d` divides `self` in Z[v].
    pub fn try_div(&self, d: &IntPoly) -> Option<IntPoly> {
        if let (IntPoly::Small(a), IntPoly::Small(b)) = (self, d) {
            if let Some(r) = a.try_div(b) {
                return r.map(IntPoly::Small);
            }
        }
        self.big()
            .try_div(&d.big())
            .expect("bigint arithmetic is total")
            .map(Dense::shrink)
    }

    pub fn neg(&self) -> IntPoly {
        if let IntPoly::Small(a) = self {
            if let Some(r) = a.neg() {
                return IntPoly::Small(r);
            }
        }
        self.big().neg().expect("total").shrink()
    }

    /// Multiply by `v^k`.
    pub fn shift_up(&self, k: u32) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut r = self.clone();
        match &mut r {
            IntPoly::Small(d) => d.shift += k,
            IntPoly::Big(d) => d.shift += k,
        }
        r
    }

    /// Divide by `v^k`; requires `k <= valuation`.
    pub fn shift_down(&self, k: u32) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut r = self.clone();
        match &mut r {
            IntPoly::Small(d) => d.shift -= k,
            IntPoly::Big(d) => d.shift -= k,
        }
        r
    }

    pub fn scale_int(&self, k: i64) -> IntPoly {
        if let IntPoly::Small(a) = self {
            if let Some(r) = a.scale(&k) {
                return IntPoly::Small(r);
            }
        }
        self.big().scale(&BigInt::from(k)).expect("total").shrink()
    }

    /// Integer content with the sign of the leading coefficient.
    pub fn content(&self) -> BigInt {
        let d = self.big();
        d.content().expect("total")
    }

    pub fn eval(&self, point: &BigRational) -> BigRational {
        let d = self.big();
        let mut acc = BigRational::zero();
        for c in d.c.iter().rev() {
            acc = acc * point + BigRational::from_integer(c.clone());
        }
        let mut p = BigRational::one();
        for _ in 0..d.shift {
            p *= point;
        }
        acc * p
    }

    /// Render in descending powers of `var`, exponents multiplied by `scale_div`
    /// denominators already applied by the caller.
    pub(crate) fn render_with(&self, var: &str, exp_map: impl Fn(i64) -> i64, offset: i64) -> String {
        let mut terms = self.terms();
        terms.reverse();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in terms.iter().enumerate() {
            let exp = exp_map(*e as i64 + offset);
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match exp {
                0 => String::new(),
                1 => var.to_string(),
                k => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if One::is_one(&mag) {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with("v", |e| e, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c)
    }

    #[test]
    fn shift_is_split_off() {
        let a = p(&[0, 0, 3, 1]);
        assert_eq!(a.valuation(), 2);
        assert_eq!(a.degree(), Some(3));
        assert_eq!(a.to_string(), "v^3 + 3*v^2");
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (v^2-1)(v^2+1) and (v^2-1)^2
        let a = p(&[-1, 0, 0, 0, 1]);
        let b = p(&[1, 0, -2, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 0, 1]));
        let c = p(&[0, 0, 2, 4]);
        assert_eq!(c.gcd(&p(&[0, 6])), p(&[0, 2]));
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        let big = IntPoly::monomial(i64::MAX, 0);
        let sq = big.mul(&big);
        assert!(matches!(sq, IntPoly::Big(_)));
        let back = sq.div_exact(&big);
        assert_eq!(back, big);
        assert!(matches!(back, IntPoly::Small(_)));
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 0, 0, 1]);
        assert_eq!(a.div_exact(&p(&[1, 0, 1])), p(&[-1, 0, 1]));
    }
}
