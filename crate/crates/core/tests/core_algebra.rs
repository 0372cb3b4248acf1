use lattice_opoly::scalar::rational;
use lattice_opoly::{GaussianRational, Poly};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9, prop::bool::ANY).prop_map(|(a, b, c, d, complex)| {
        let im = if complex { rational(c, d) } else { rational(0, 1) };
        GaussianRational::new(rational(a, b), im)
    })
}

fn nonzero_scalar() -> impl Strategy<Value = GaussianRational> {
    scalar().prop_filter("nonzero", |z| !z.is_zero())
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar(), 0..=max_len).prop_map(Poly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn text_form_round_trips(z in scalar()) {
        let text = z.to_string();
        prop_assert_eq!(GaussianRational::parse(&text).unwrap(), z.clone());
        let json = serde_json::to_string(&z).unwrap();
        prop_assert_eq!(serde_json::from_str::<GaussianRational>(&json).unwrap(), z);
    }

    #[test]
    fn translation_inverts(p in poly(9), beta in scalar()) {
        prop_assert_eq!(p.translate(&beta).translate(&-&beta), p.clone());
        prop_assert_eq!(p.translate(&beta).degree(), p.degree());
    }

    #[test]
    fn scaling_inverts(p in poly(9), alpha in nonzero_scalar()) {
        let inv = alpha.inv().unwrap();
        prop_assert_eq!(p.scale_arg(&alpha).scale_arg(&inv), p.clone());
        prop_assert_eq!(p.scale_arg(&alpha).degree(), p.degree());
    }

    #[test]
    fn operators_are_multiplicative(p in poly(6), q in poly(6), beta in scalar(), alpha in nonzero_scalar()) {
        let product = p.mul(&q);
        prop_assert_eq!(product.translate(&beta), p.translate(&beta).mul(&q.translate(&beta)));
        prop_assert_eq!(product.scale_arg(&alpha), p.scale_arg(&alpha).mul(&q.scale_arg(&alpha)));
        if !p.is_zero() && !q.is_zero() {
            prop_assert_eq!(product.degree(), Some(p.degree().unwrap() + q.degree().unwrap()));
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(6), q in poly(6), z in scalar()) {
        prop_assert_eq!(p.mul(&q).eval(&z), &p.eval(&z) * &q.eval(&z));
        prop_assert_eq!(p.add(&q).eval(&z), &p.eval(&z) + &q.eval(&z));
    }

    #[test]
    fn division_with_remainder(p in poly(8), d in poly(4)) {
        prop_assume!(!d.is_zero());
        let (quotient, remainder) = p.div_rem(&d).unwrap();
        prop_assert_eq!(quotient.mul(&d).add(&remainder), p);
        prop_assert!(remainder.degree().is_none_or(|r| r < d.degree().unwrap()));
    }

    #[test]
    fn gcd_divides_both(p in poly(4), q in poly(4), r in poly(3)) {
        let (a, b) = (p.mul(&r), q.mul(&r));
        let g = a.gcd(&b);
        if !g.is_zero() {
            prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
            prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
            if !r.is_zero() {
                prop_assert!(g.div_rem(&r.monic()).unwrap().1.is_zero());
            }
        }
    }

    #[test]
    fn json_round_trips(p in poly(8)) {
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(Poly::from_json(&text).unwrap(), p);
    }
}

#[test]
fn translation_examples() {
    let q = |n, d| GaussianRational::from_ratio(n, d);
    assert_eq!(Poly::var().translate(&q(1, 1)), Poly::from_ints(&[-1, 1]));
    assert_eq!(Poly::from_ints(&[0, 0, 1]).translate(&q(-1, 1)), Poly::from_ints(&[1, 2, 1]));
    let lhs = Poly::from_ints(&[0, 1]).mul(&Poly::from_ints(&[1, 1])).translate(&q(1, 1));
    assert_eq!(lhs, Poly::from_ints(&[-1, 1]).mul(&Poly::var()));
}

#[test]
fn scaling_examples() {
    assert_eq!(Poly::from_ints(&[0, 0, 1]).scale_arg(&GaussianRational::from_int(2)), Poly::from_ints(&[0, 0, 4]));
    let gamma = GaussianRational::from_ratio(5, 3);
    let p = Poly::from_coeffs(vec![-&gamma, GaussianRational::zero(), GaussianRational::one()]);
    let expected = Poly::from_coeffs(vec![-&gamma, GaussianRational::zero(), GaussianRational::from_int(-1)]);
    assert_eq!(p.scale_arg(&GaussianRational::i()), expected);
}

#[test]
fn zero_polynomial_has_no_degree() {
    assert_eq!(Poly::from_ints(&[0, 0, 0]).degree(), None);
    assert_eq!(Poly::from_ints(&[0, 0, 0]).coeffs().len(), 0);
    assert_eq!(serde_json::to_string(&Poly::zero()).unwrap(), "[]");
}

#[test]
fn rejects_malformed_json() {
    for bad in ["[1, 2]", "[\"1/0\"]", "{\"a\": 1}", "[\"x\"]", ""] {
        assert!(Poly::from_json(bad).is_err(), "{bad}");
    }
}
