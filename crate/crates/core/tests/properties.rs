use coideal::uqg::kvec_unit;
use coideal::{FreeElement, GenSymbol, RootDatum, Scalar, Uq};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-6i32..=6, -4i64..=4), 0..4).prop_map(|t| Scalar::laurent(&t))
}

fn symbol(n: u8) -> impl Strategy<Value = GenSymbol> {
    (0..n, 0..4u8).prop_map(|(i, k)| match k {
        0 => GenSymbol::E(i),
        1 => GenSymbol::F(i),
        2 => GenSymbol::K(kvec_unit(i as usize, 1)),
        _ => GenSymbol::K(kvec_unit(i as usize, -1)),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(a.checked_div(&b).unwrap().checked_mul(&b), a.clone());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn b2_normal_form_is_idempotent_and_multiplicative(
        x in prop::collection::vec(symbol(2), 0..5),
        y in prop::collection::vec(symbol(2), 0..5),
    ) {
        let uq = Uq::new(&RootDatum::parse("B2").unwrap()).unwrap();
        let fx = FreeElement::word(&x, Scalar::one());
        let fy = FreeElement::word(&y, Scalar::one());
        let nx = uq.normal_form(&fx).unwrap();
        prop_assert_eq!(uq.normal_form(&nx.to_free()).unwrap(), nx.clone());
        let ny = uq.normal_form(&fy).unwrap();
        prop_assert_eq!(uq.normal_form(&fx.mul(&fy)).unwrap(), uq.mul(&nx, &ny));
    }
}
