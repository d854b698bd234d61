use coideal::braidact::{epsilon, tau_images, CaseContext, TauDir};
use coideal::lusztig::{lusztig_images, Direction};
use coideal::report::Status;
use coideal::suites::{mutation_suite, run_suite, SuiteConfig};
use coideal::uqg::{kvec_add, kvec_unit, parse_expression};
use coideal::{CaseSpec, FreeElement, GenSymbol, RootDatum, Uq};

fn uq(t: &str) -> Uq {
    Uq::new(&RootDatum::parse(t).unwrap()).unwrap()
}

fn p(s: &str) -> FreeElement {
    parse_expression(s, None).unwrap()
}

fn ctx(id: &str) -> CaseContext {
    CaseContext::new(&CaseSpec::parse(id).unwrap()).unwrap()
}

#[test]
fn lusztig_generator_images() {
    let a2 = uq("A2");
    let t = lusztig_images(a2.datum(), 0, Direction::Inverse).unwrap();
    let f1 = t.image(GenSymbol::F(0)).unwrap();
    assert!(a2.equal(&f1, &p("-E1*K1")).unwrap());
    let k2 = t.image(GenSymbol::K(kvec_unit(1, 1))).unwrap();
    assert_eq!(k2, FreeElement::k(kvec_add(&kvec_unit(1, 1), &kvec_unit(0, 1))));
    // the s = 0 term of the sum is E_2 E_1
    let e2 = t.image(GenSymbol::E(1)).unwrap();
    assert!(a2.equal(&e2, &p("E2*E1 - q^-1*E1*E2")).unwrap());
}

#[test]
fn tau_minus_in_b3() {
    let c = CaseSpec::parse("I-B3").unwrap();
    let t = tau_images(&c, 0, TauDir::TauMinus).unwrap();
    // q_1 = q^2 since node 1 is long in B3
    assert_eq!(t.images.image(GenSymbol::B(1)).unwrap(), p("B1*B2 - q^2*B2*B1"));
}

#[test]
fn e6_tau_one_on_b6() {
    let c = CaseSpec::parse("II-E6").unwrap();
    let t = tau_images(&c, 0, TauDir::Tau).unwrap();
    assert_eq!(t.images.image(GenSymbol::B(5)).unwrap(), p("q*K1*K6^-1*B1"));
}

#[test]
fn case3_swaps_odd_generators() {
    let c = CaseSpec::parse("III-A7").unwrap();
    let t = tau_images(&c, 0, TauDir::TauMinus).unwrap();
    assert_eq!(t.images.image(GenSymbol::B(2)).unwrap(), p("B1"));
    assert_eq!(t.images.image(GenSymbol::E(0)).unwrap(), p("E3"));
    assert_eq!(t.images.image(GenSymbol::B(6)).unwrap(), p("B7"));
}

#[test]
fn coideal_generators() {
    let b3 = ctx("I-B3");
    assert_eq!(b3.gens.b_def(0).unwrap(), &p("F1 - K1^-1*E1"));
    let a7 = ctx("II-A7");
    assert_eq!(a7.case.tau_of(2), 4);
    assert!(a7.uq.equal(a7.gens.b_def(2).unwrap(), &p("F3 - K3^-1*E5")).unwrap());
    let c3 = ctx("III-A7");
    let ad = c3.uq.adjoint(&c3.uq.mul(&c3.uq.e(0), &c3.uq.e(2)), &c3.uq.e(1));
    let b2 = p("F2").sub(&p("K2^-1").mul(&ad.to_free()));
    assert!(c3.uq.equal(c3.gens.b_def(1).unwrap(), &b2).unwrap());
}

#[test]
fn case3_odd_commutator() {
    let c = ctx("III-A7");
    let r = c.value(&p("E1*B1 - B1*E1 - (K1 - K1^-1)/(q - q^-1)")).unwrap();
    assert!(r.is_zero(), "{r}");
}

#[test]
fn epsilon_minus_one_in_a2() {
    let c = ctx("I-A2");
    let t = lusztig_images(c.uq.datum(), 0, Direction::Inverse).unwrap();
    let tm = tau_images(&c.case, 0, TauDir::TauMinus).unwrap();
    let (lhs, _) = c.compose_on(vec![&t], &FreeElement::b(1), None).unwrap();
    let (rhs, _) = c.compose_on(vec![&tm.images], &FreeElement::b(1), None).unwrap();
    let eps = c.uq.normal_form(&epsilon(c.uq.datum(), 1, 2)).unwrap();
    assert_eq!(lhs.sub(&rhs), eps);
    assert_eq!(eps, c.uq.normal_form(&p("-(q - q^-1)*F2*K1^-1*E1")).unwrap());
}

#[test]
fn tau_inverse_in_b3_and_torus_fixed() {
    let c = ctx("I-B3");
    let rep = c.verify_inverse(1, None).unwrap();
    assert!(rep.rows.len() >= 6 && rep.all_passed(), "{rep}");
}

#[test]
fn mutations_are_detected() {
    let rep = mutation_suite().unwrap();
    assert_eq!(rep.rows.len(), 8);
    assert!(rep.all_passed(), "{rep}");
}

#[test]
fn suite_filters() {
    let mut cfg = SuiteConfig::new("III-A7");
    cfg.checks = Some(vec!["smash".into()]);
    let rep = run_suite(&cfg, &mut |_, _| {}).unwrap();
    assert!(!rep.rows.is_empty());
    assert!(rep.rows.iter().all(|r| r.check == "smash" && r.status == Status::Pass));
}

#[test]
fn g2_long_checks_are_gated() {
    let rep = run_suite(&SuiteConfig::new("I-G2"), &mut |_, _| {}).unwrap();
    let gated: Vec<_> = rep.rows.iter().filter(|r| r.status == Status::Skipped).collect();
    assert!(gated.iter().any(|r| r.check == "braid") && gated.iter().any(|r| r.check == "order"));
    assert_eq!(rep.count(Status::Fail), 0, "{rep}");
    assert_eq!(coideal::suites::exit_code(&rep, false), 0);
}
