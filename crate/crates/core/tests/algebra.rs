use coideal::uqg::parse_expression;
use coideal::{q_binomial, q_int, CaseSpec, Error, FreeElement, RootDatum, Scalar, Uq};
use num_bigint::BigInt;
use num_rational::BigRational;

fn uq(t: &str) -> Uq {
    Uq::new(&RootDatum::parse(t).unwrap()).unwrap()
}

fn nf(u: &Uq, s: &str) -> coideal::Element {
    u.normal_form(&parse_expression(s, Some(u.datum())).unwrap()).unwrap()
}

#[test]
fn scalar_field_basics() {
    let v = Scalar::v_pow(1);
    assert_eq!(&v * &v, Scalar::q_pow(1));
    // [2] = q + q^-1 = v^2 + v^-2
    assert_eq!(q_int(2, 1), Scalar::laurent(&[(2, 1), (-2, 1)]));
    assert_eq!(q_int(1, 1), Scalar::one());
    let three = Scalar::laurent(&[(4, 1), (0, 1), (-4, 1)]);
    assert_eq!(q_binomial(3, 2, 1).unwrap(), three);
    // (v^2 - 1)/(v - 1) + 1 = v + 2
    let a = Scalar::laurent(&[(2, 1), (0, -1)]).checked_div(&Scalar::laurent(&[(1, 1), (0, -1)])).unwrap();
    assert_eq!(&a + &Scalar::one(), Scalar::laurent(&[(1, 1), (0, 2)]));
}

#[test]
fn scalar_specialization() {
    let two = BigRational::from_integer(BigInt::from(2));
    assert_eq!(q_int(2, 1).at_one().unwrap(), two);
    let d = &Scalar::q_pow(1) - &Scalar::q_pow(-1);
    assert!((&d * &d).at_one().unwrap() == BigRational::from_integer(BigInt::from(0)));
    assert!(Scalar::one().checked_div(&d).unwrap().at_one().is_err());
}

#[test]
fn root_data() {
    let b3 = RootDatum::parse("B3").unwrap();
    assert_eq!((b3.m(0, 1), b3.m(1, 2), b3.m(0, 2)), (3, 4, 2));
    let g2 = RootDatum::parse("G2").unwrap();
    assert_eq!((g2.d(0), g2.d(1)), (1, 3));
    assert_eq!(g2.d(0) as i32 * g2.a(0, 1), g2.d(1) as i32 * g2.a(1, 0));
    assert_eq!(g2.m(0, 1), 6);
    assert_eq!(RootDatum::parse("A1").unwrap().positive_roots().len(), 1);
}

#[test]
fn restricted_types_and_embeddings() {
    assert_eq!(CaseSpec::parse("II-A7").unwrap().sigma_braid_type(), ('B', 4));
    assert_eq!(CaseSpec::parse("III-A7").unwrap().sigma_braid_type(), ('A', 3));
    assert_eq!(CaseSpec::parse("II-E6").unwrap().sigma_braid_type(), ('F', 4));
    assert_eq!(CaseSpec::parse("II-E6").unwrap().i_sigma_theta(0).unwrap(), vec![0, 5]);
    // s_{2i} s_{2i-1} s_{2i+1} s_{2i} for i = 2, 0-based nodes
    assert_eq!(CaseSpec::parse("III-A7").unwrap().i_sigma_theta(1).unwrap(), vec![3, 2, 4, 3]);
    // s_r s_{r+1} s_r for n = 2r = 6
    assert_eq!(CaseSpec::parse("II-A6").unwrap().i_sigma_theta(2).unwrap(), vec![2, 3, 2]);
    assert!(CaseSpec::parse("IV-A3").is_err());
}

#[test]
fn normal_forms() {
    let a1 = uq("A1");
    assert_eq!(nf(&a1, "E1*F1").to_string(), "F1*E1 + (K1 - K1^-1)/(q - q^-1)");
    assert_eq!(nf(&a1, "E1*K1"), nf(&a1, "q^-2*K1*E1"));
    assert!(nf(&a1, "K1*K1^-1 - 1").is_zero());
    let a2 = uq("A2");
    assert!(nf(&a2, "E1^2*E2 - [2]*E1*E2*E1 + E2*E1^2").is_zero());
    assert!(nf(&a2, "F1^2*F2 - [2]*F1*F2*F1 + F2*F1^2").is_zero());
    assert_eq!(nf(&a2, "E2*E1*E1"), nf(&a2, "[2]*E1*E2*E1 - E1*E1*E2"));
    assert!(!a2.equal(&FreeElement::e(0), &FreeElement::e(1)).unwrap());
}

#[test]
fn normal_form_is_reduced() {
    let a2 = uq("A2");
    let x = nf(&a2, "E2*E1*E1 + F2*F2*F1*K2*E2*E1*E1");
    let sys = a2.system();
    for (m, _) in x.iter() {
        assert!(sys.is_irreducible(&m.e) && sys.is_irreducible(&m.f), "{m}");
    }
}

#[test]
fn hopf_structure() {
    let a1 = uq("A1");
    let k = a1.ki(0, 1);
    let d = a1.coproduct(&k);
    assert_eq!(d, coideal::uqg::hopf::TensorElement::pure(&k, &k));
    let b = nf(&a1, "F1 - K1^-1*E1");
    let expect = coideal::uqg::hopf::TensorElement::pure(&b, &a1.ki(0, -1)).add(&coideal::uqg::hopf::TensorElement::pure(&coideal::Element::one(), &b));
    assert_eq!(a1.coproduct(&b), expect);
    // ad(K1)(u) = K1 u K1^-1
    let u = nf(&uq("A1"), "E1*F1*E1");
    assert_eq!(a1.adjoint(&k, &u), a1.mul(&a1.mul(&k, &u), &a1.ki(0, -1)));
}

#[test]
fn divided_powers() {
    let a1 = uq("A1");
    assert!(a1.divided_power('E', 0, 0).unwrap().is_one());
    let e2 = a1.divided_power('E', 0, 2).unwrap();
    assert_eq!(e2, nf(&a1, "E1^2/[2]"));
    let f3 = a1.divided_power('F', 0, 3).unwrap();
    assert_eq!(f3, nf(&a1, "F1^3/([3]*[2])"));
}

#[test]
fn parser_errors() {
    match parse_expression("E1*(F1", None) {
        Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
        other => panic!("{other:?}"),
    }
    let x = parse_expression("q*[2]_1", None).unwrap();
    assert_eq!(x, FreeElement::scalar(&Scalar::q_pow(1) * &q_int(2, 1)));
}
