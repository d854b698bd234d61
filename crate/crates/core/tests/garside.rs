use coideal::garside::{embedding_word, soundness_check, verify_embedding, BraidWord, WeylGroup};
use coideal::{CaseSpec, RootDatum};

fn weyl(t: &str) -> WeylGroup {
    WeylGroup::new(&RootDatum::parse(t).unwrap())
}

fn w(s: &str) -> BraidWord {
    BraidWord::parse(s).unwrap()
}

#[test]
fn coxeter_elements() {
    let a2 = weyl("A2");
    let s1 = a2.s(0).clone();
    assert!(a2.mul(&s1, &s1).is_identity());
    let x = a2.from_word(&[0, 1, 0]).unwrap();
    assert_eq!(a2.length(&x), 3);
    assert_eq!(&x, a2.longest());
    assert_eq!(a2.left_descents(&a2.from_word(&[0, 1]).unwrap()), vec![0]);
}

#[test]
fn garside_normal_forms() {
    let a2 = weyl("A2");
    let d = a2.normal_form(&w("s1 s2 s1")).unwrap();
    assert_eq!((d.infimum, d.factors.len()), (1, 0));
    let e = a2.normal_form(&BraidWord::new()).unwrap();
    assert_eq!((e.infimum, e.factors.len()), (0, 0));
    let sq = a2.normal_form(&w("s1 s1")).unwrap();
    assert_eq!(sq.render(&a2), "D^0 (s1) (s1)");
    assert!(a2.braid_equal(&sq.to_word(&a2), &w("s1^2")).unwrap());
}

#[test]
fn word_problem() {
    let a2 = weyl("A2");
    assert!(a2.braid_equal(&w("s1 s2 s1"), &w("s2 s1 s2")).unwrap());
    assert!(!a2.braid_equal(&w("s1 s2"), &w("s2 s1")).unwrap());
    // same Coxeter image, different braids
    assert!(!a2.braid_equal(&w("s1 s1"), &BraidWord::new()).unwrap());
    assert!(a2.braid_equal(&w("s1 s1^-1 s2"), &w("s2")).unwrap());
    let a3 = weyl("A3");
    assert!(a3.braid_equal(&w("s1 s3"), &w("s3 s1")).unwrap());
}

#[test]
fn embedded_braid_relations() {
    // F4 relation m_23 = 4 for the E6 images
    let e6 = CaseSpec::parse("II-E6").unwrap();
    let wg = WeylGroup::new(e6.ambient());
    let (a, b) = (embedding_word(&e6, 1).unwrap(), embedding_word(&e6, 2).unwrap());
    assert!(wg.braid_equal(&a.concat(&b).pow(2), &b.concat(&a).pow(2)).unwrap());
    // w_X commutes with i(s_1) in Br(A7)
    let c3 = CaseSpec::parse("III-A7").unwrap();
    let wg = WeylGroup::new(c3.ambient());
    let wx = BraidWord::positive(&c3.w_x());
    let x = embedding_word(&c3, 0).unwrap();
    assert!(wg.braid_equal(&x.concat(&wx), &wx.concat(&x)).unwrap());
    // B4 relation m_34 = 4 for II-A7
    let a7 = CaseSpec::parse("II-A7").unwrap();
    let wg = WeylGroup::new(a7.ambient());
    let (a, b) = (embedding_word(&a7, 2).unwrap(), embedding_word(&a7, 3).unwrap());
    assert!(wg.braid_equal(&a.concat(&b).pow(2), &b.concat(&a).pow(2)).unwrap());
}

#[test]
fn embeddings_of_all_cases() {
    for id in ["I-B3", "I-G2", "II-A7", "II-A6", "II-D5", "II-E6", "III-A7"] {
        let rep = verify_embedding(&CaseSpec::parse(id).unwrap()).unwrap();
        assert!(!rep.rows.is_empty() && rep.all_passed(), "{id}\n{rep}");
    }
}

#[test]
fn soundness_against_coxeter_images() {
    let rep = soundness_check(&RootDatum::parse("B3").unwrap(), 200, 10, 3).unwrap();
    assert!(rep.all_passed(), "{rep}");
}
