//! Cyclotomic polynomials and cyclotomic factor extraction.

use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use rustc_hash::FxHashMap;

use super::poly::IntPoly;

fn table() -> &'static RwLock<FxHashMap<u32, Arc<IntPoly>>> {
    static T: OnceLock<RwLock<FxHashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(FxHashMap::default()))
}

/// Φ_k(v).
pub fn phi(k: u32) -> Arc<IntPoly> {
    assert!(k >= 1);
    if let Some(p) = table().read().get(&k) {
        return p.clone();
    }
    // v^k - 1 divided by Φ_d for the proper divisors d of k
    let mut coeffs = vec![0i64; k as usize + 1];
    coeffs[0] = -1;
    coeffs[k as usize] = 1;
    let mut p = IntPoly::from_coeffs(&coeffs);
    for d in 1..k {
        if k.is_multiple_of(d) {
            p = p.div_exact(&phi(d));
        }
    }
    let p = Arc::new(p);
    table().write().insert(k, p.clone());
    p
}

pub fn totient(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn reciprocal(p: &IntPoly) -> IntPoly {
    let mut c = p.coefficients();
    c.reverse();
    IntPoly::from_big_coeffs(0, c)
}

/// Multiplicity of Φ_k in `p`, dividing it out.
pub fn strip(p: &mut IntPoly, k: u32, max: u32) -> u32 {
    let f = phi(k);
    let mut e = 0;
    while e < max {
        match p.try_div(&f) {
            Some(q) => {
                *p = q;
                e += 1;
            }
            None => break,
        }
    }
    e
}

/// Writes a nonzero polynomial with zero valuation as `Π Φ_k^{e_k} * rest`.
/// Returned factors are sorted by `k`.
pub fn factor_out(p: &IntPoly) -> (Vec<(u32, u32)>, IntPoly) {
    let mut rest = p.clone();
    let mut out = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return (out, rest);
    }
    // cyclotomic factors divide the gcd with the reciprocal polynomial
    let g = rest.gcd(&reciprocal(&rest));
    let bound = g.degree().unwrap_or(0) as u32;
    if bound == 0 {
        return (out, rest);
    }
    let kmax = 2 * bound * bound + 2;
    for k in 1..=kmax {
        if totient(k) > bound {
            continue;
        }
        let e = strip(&mut rest, k, u32::MAX);
        if e > 0 {
            out.push((k, e));
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    (out, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*phi(1), IntPoly::from_coeffs(&[-1, 1]));
        assert_eq!(*phi(4), IntPoly::from_coeffs(&[1, 0, 1]));
        assert_eq!(*phi(6), IntPoly::from_coeffs(&[1, -1, 1]));
        assert_eq!(phi(12).degree(), Some(4));
    }

    #[test]
    fn factor_v4_minus_1() {
        let p = IntPoly::from_coeffs(&[-1, 0, 0, 0, 1]);
        let (f, rest) = factor_out(&p);
        assert_eq!(f, vec![(1, 1), (2, 1), (4, 1)]);
        assert!(rest.is_one());
        let q = IntPoly::from_coeffs(&[3, 1, 0, 1]);
        let (f, rest) = factor_out(&q.mul(&p));
        assert_eq!(f.len(), 3);
        assert_eq!(rest, q);
    }
}
