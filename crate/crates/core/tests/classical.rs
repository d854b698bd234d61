use coideal::braidact::{tau_images, TauDir};
use coideal::chevalley::{verify_classical, verify_q1_degeneration, Matrix, Realization};
use coideal::{CaseSpec, GenSymbol};

fn real(id: &str) -> Realization {
    Realization::new(&CaseSpec::parse(id).unwrap()).unwrap()
}

#[test]
fn chevalley_relations() {
    let r = real("I-A2");
    assert_eq!(r.theta(r.e(1)), r.f(1).neg());
    assert!(r.e(1).bracket(r.f(2)).is_zero());
    assert_eq!(r.e(1).bracket(r.f(1)), *r.h(1));
}

#[test]
fn sl2_reflection() {
    let r = real("I-A1");
    let s = r.ad_braid(1);
    assert_eq!(s.apply(r.h(1)), r.h(1).neg());
    assert_eq!(s.apply(r.e(1)), r.f(1).neg());
}

#[test]
fn square_of_reflection_in_sl4() {
    // s_1^2 = diag(-1, -1, 1, 1) and f_2 = E_{3,2}
    let r = real("I-A3");
    let sq = r.ad_word(&[0, 0]);
    assert_eq!(*r.f(2), Matrix::unit(4, 3, 2, 1));
    assert_eq!(sq.apply(r.f(2)), r.f(2).neg());
}

#[test]
fn braid_relation_on_basis() {
    let r = real("I-A3");
    let (a, b) = (r.ad_word(&[0, 1, 0]), r.ad_word(&[1, 0, 1]));
    for x in r.g_basis() {
        assert_eq!(a.apply(x), b.apply(x));
    }
}

#[test]
fn case3_generators_in_k() {
    let r = real("III-A3");
    let s = r.s_matrix().unwrap();
    let f2 = r.f(2);
    let inv = {
        // S^2 = -1
        s.neg()
    };
    assert_eq!(r.theta(f2), s.mul(&f2.transpose()).mul(&inv).neg());
    assert!(r.in_k(&r.b(2)));
    assert!(!r.in_k(r.f(2)));
}

#[test]
fn adbj_examples() {
    let r = real("III-A7");
    let w = r.ad_word(&[1, 0, 2, 1]);
    assert_eq!(w.apply(&r.b(1)), r.b(3));
    assert_eq!(w.apply(&r.b(6)), r.b(6));
    assert_eq!(r.ad_word(&[3, 2, 4, 3]).apply(&r.b(4)), r.b(4));
}

#[test]
fn q_one_limits_of_tau() {
    let c = CaseSpec::parse("III-A7").unwrap();
    let r = Realization::new(&c).unwrap();
    let wd = c.i_sigma_theta(1).unwrap();
    let w = r.ad_word(&wd);
    for j in 1..=7 {
        let t = tau_images(&c, 1, TauDir::Tau).unwrap();
        let img = t.images.image(GenSymbol::B(j as u8 - 1)).unwrap();
        assert_eq!(r.specialize(&img).unwrap(), w.apply(&r.b(j)), "j = {j}");
    }
    for m in [2, 4] {
        let rep = verify_q1_degeneration(m).unwrap();
        assert!(rep.all_passed(), "{rep}");
    }
}

#[test]
fn classical_cases() {
    for id in ["I-B3", "I-C3", "II-A6", "II-D5", "III-A5"] {
        let rep = verify_classical(&CaseSpec::parse(id).unwrap()).unwrap();
        assert!(rep.all_passed(), "{id}\n{rep}");
    }
}
