//! Structural property checks of the engine itself: normal forms,
//! completion certificates, Hopf axioms and scalar canonical forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::report::Report;
use crate::rootdata::RootDatum;
use crate::scalar::{q_int, Scalar};
use crate::uqg::{cached_systems, kvec_unit, Element, FreeElement, GenSymbol, NormalMonomial, Uq};

fn random_word(rng: &mut StdRng, n: usize, len: usize) -> FreeElement {
    let syms: Vec<GenSymbol> = (0..len)
        .map(|_| {
            let i = rng.gen_range(0..n);
            match rng.gen_range(0..4) {
                0 => GenSymbol::E(i as u8),
                1 => GenSymbol::F(i as u8),
                2 => GenSymbol::K(kvec_unit(i, 1)),
                _ => GenSymbol::K(kvec_unit(i, -1)),
            }
        })
        .collect();
    FreeElement::word(&syms, Scalar::one())
}

/// `nf(nf(x)) = nf(x)` and every normal monomial is irreducible.
pub fn verify_idempotence(uq: &Uq, samples: usize, seed: u64) -> Result<Report> {
    let suite = format!("properties-{}", uq.datum());
    let mut rng = StdRng::seed_from_u64(seed);
    let mut rep = Report::new();
    let n = uq.rank();
    let sys = uq.system().clone();
    rep.record_bool(&suite, "idempotence", format!("{samples} random words"), || {
        for _ in 0..samples {
            let len = rng.gen_range(1..=6);
            let x = random_word(&mut rng, n, len);
            let a = uq.normal_form(&x)?;
            let b = uq.normal_form(&a.to_free())?;
            if a != b {
                return Ok(Err(format!("nf not idempotent on {x}")));
            }
            for (m, _) in a.iter() {
                if !sys.is_irreducible(&m.e) {
                    return Ok(Err(format!("reducible E-word in {m}")));
                }
                if !sys.is_irreducible(&m.f) {
                    return Ok(Err(format!("reducible F-word in {m}")));
                }
            }
        }
        Ok(Ok(()))
    });
    Ok(rep)
}

/// Recompute the certificate of every completed system in this process.
pub fn verify_certificates(explicit_overlap_len: usize) -> Result<Report> {
    let mut rep = Report::new();
    for sys in cached_systems() {
        let rd = RootDatum::parse(sys.datum())?;
        let suite = format!("properties-{rd}");
        rep.record_bool(&suite, "certificate", format!("cap={}", sys.cap()), || {
            let stored = sys.certificate().clone();
            let again = sys.recertify(&rd);
            Ok(if !stored.confluent {
                Err("stored certificate is not confluent".into())
            } else if again != stored {
                Err(format!("recomputed {again:?} differs from stored {stored:?}"))
            } else {
                Ok(())
            })
        });
        if rd.rank() <= 3 {
            rep.record_bool(&suite, "certificate", format!("explicit overlaps ≤ {explicit_overlap_len}"), || {
                let (_, bad) = sys.check_overlaps(explicit_overlap_len);
                Ok(match bad {
                    None => Ok(()),
                    Some(w) => Err(format!("ambiguity {w:?} does not resolve")),
                })
            });
        }
    }
    Ok(rep)
}

fn generators(uq: &Uq) -> Vec<Element> {
    let mut v = Vec::new();
    for i in 0..uq.rank() {
        v.extend([uq.e(i), uq.f(i), uq.ki(i, 1), uq.ki(i, -1)]);
    }
    v
}

/// Counit, antipode and multiplicativity axioms on generators.
pub fn verify_hopf(uq: &Uq) -> Result<Report> {
    let suite = format!("properties-{}", uq.datum());
    let mut rep = Report::new();
    let one = |m: &NormalMonomial| Element::monomial(m.clone(), Scalar::one());
    let gens = generators(uq);
    for x in &gens {
        rep.record_bool(&suite, "hopf", format!("axioms/{x}"), || {
            let d = uq.coproduct(x);
            let eps = Element::scalar(uq.counit(x));
            if d.contract(uq, |m| uq.antipode(&one(m)), one) != eps {
                return Ok(Err("m(S⊗id)Δ ≠ ε".into()));
            }
            if d.contract(uq, one, |m| uq.antipode(&one(m))) != eps {
                return Ok(Err("m(id⊗S)Δ ≠ ε".into()));
            }
            if d.contract(uq, |m| Element::scalar(uq.counit(&one(m))), one) != *x {
                return Ok(Err("(ε⊗id)Δ ≠ id".into()));
            }
            if d.contract(uq, one, |m| Element::scalar(uq.counit(&one(m)))) != *x {
                return Ok(Err("(id⊗ε)Δ ≠ id".into()));
            }
            Ok(Ok(()))
        });
    }
    rep.record_bool(&suite, "hopf", "Δ(ab) = Δ(a)Δ(b) on generator pairs", || {
        for a in &gens {
            for b in &gens {
                let lhs = uq.coproduct(&uq.mul(a, b));
                let rhs = uq.coproduct(a).mul(uq, &uq.coproduct(b));
                if lhs != rhs {
                    return Ok(Err(format!("a = {a}, b = {b}")));
                }
            }
        }
        Ok(Ok(()))
    });
    Ok(rep)
}

fn random_scalar(rng: &mut StdRng) -> Scalar {
    let mut s = Scalar::from_int(rng.gen_range(-3..=3));
    for _ in 0..rng.gen_range(1..=3) {
        let t = Scalar::monomial(rng.gen_range(-4..=4), rng.gen_range(-6..=6));
        let t = if rng.gen_bool(0.5) {
            t.checked_div(&q_int(rng.gen_range(1..=4), rng.gen_range(1..=3))).expect("nonzero")
        } else {
            t
        };
        s = &s + &t;
    }
    s
}

/// Equal values built along different routes have identical stored forms.
pub fn verify_scalar_canonical(samples: usize, seed: u64) -> Result<Report> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut rep = Report::new();
    let points: Vec<BigRational> = [(2, 3), (5, 2), (-7, 4)]
        .iter()
        .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
        .collect();
    rep.record_bool("properties-scalar", "scalar", format!("{samples} random triples"), || {
        for _ in 0..samples {
            let (a, b, c) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
            let lhs = &(&a + &b) * &c;
            let rhs = &(&a * &c) + &(&b * &c);
            if lhs != rhs {
                return Ok(Err(format!("distributivity: {lhs} vs {rhs}")));
            }
            if !b.is_zero() && a.checked_div(&b)?.checked_mul(&b) != a {
                return Ok(Err(format!("(a/b)·b ≠ a for a = {a}, b = {b}")));
            }
            if !(&a + &a.neg()).is_zero() {
                return Ok(Err(format!("a + (-a) ≠ 0 for {a}")));
            }
            // distinct stored forms must be distinct values
            if a != b {
                let differs = points
                    .iter()
                    .any(|p| matches!((a.evaluate_at(p), b.evaluate_at(p)), (Ok(x), Ok(y)) if x != y));
                if !differs {
                    return Ok(Err(format!("{a} and {b} agree at every sample point")));
                }
            }
        }
        Ok(Ok(()))
    });
    Ok(rep)
}

/// Every property check on the given types.
pub fn property_suite(types: &[&str]) -> Result<Report> {
    let mut rep = Report::new();
    for (k, t) in types.iter().enumerate() {
        let rd = RootDatum::parse(t)?;
        let uq = Uq::new(&rd)?;
        rep.extend(verify_idempotence(&uq, 60, 17 + k as u64)?);
        if rd.rank() <= 3 {
            rep.extend(verify_hopf(&uq)?);
        }
    }
    rep.extend(verify_certificates(8)?);
    rep.extend(verify_scalar_canonical(300, 99)?);
    Ok(rep)
}
