//! Randomized structural invariants: field axioms for the scalars, algebra
//! laws for the bracket, linearity of the twisted constructions.

use proptest::prelude::*;

use hvhom_core::{
    act, bracket, bracket_basis, hom_bracket, shear_endo, AlgElement, Family, Generator, ModuleVec,
    Scalar, Sign,
};

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=12, -20i64..=20, 1i64..=12).prop_map(|(rn, rd, im_n, im_d)| {
        let re = Scalar::from_ratio(rn, rd);
        let im = Scalar::from_ratio(im_n, im_d).mul(&Scalar::i());
        re.add(&im)
    })
}

fn arb_generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (-10i64..=10).prop_map(Generator::L),
        (-10i64..=10).prop_map(Generator::I),
        Just(Generator::CL),
        Just(Generator::CLI),
        Just(Generator::CI),
    ]
}

fn arb_element() -> impl Strategy<Value = AlgElement> {
    proptest::collection::vec((arb_generator(), arb_scalar()), 0..5).prop_map(|terms| {
        terms.into_iter().fold(AlgElement::zero(), |acc, (g, c)| {
            acc.add(&AlgElement::term(g, c))
        })
    })
}

fn arb_module_vec() -> impl Strategy<Value = ModuleVec> {
    proptest::collection::vec(((-8i64..=8), arb_scalar()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(ModuleVec::zero(), |acc, (t, c)| {
            acc.add(&ModuleVec::single(t, c))
        })
    })
}

proptest! {
    #[test]
    fn scalar_field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.add(&x.neg()), Scalar::zero());
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inv().unwrap()), Scalar::one());
        }
    }

    #[test]
    fn scalar_pow_is_additive(x in arb_scalar(), m in -6i64..=6, n in -6i64..=6) {
        prop_assume!(!x.is_zero());
        let lhs = x.pow_int(m + n).unwrap();
        let rhs = x.pow_int(m).unwrap().mul(&x.pow_int(n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_text_round_trips(x in arb_scalar()) {
        let text = x.to_string();
        prop_assert_eq!(Scalar::parse(&text).unwrap(), x);
    }

    #[test]
    fn bracket_is_antisymmetric_and_bilinear(
        g in arb_generator(),
        h in arb_generator(),
        x in arb_element(),
        y in arb_element(),
        z in arb_element(),
        s in arb_scalar(),
    ) {
        prop_assert_eq!(bracket_basis(g, h), bracket_basis(h, g).neg());
        let lhs = bracket(&x.add(&y.scale(&s)), &z);
        let rhs = bracket(&x, &z).add(&bracket(&y, &z).scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn elements_never_store_zero_coefficients(x in arb_element(), y in arb_element(), s in arb_scalar()) {
        for e in [x.add(&y), x.sub(&y), x.scale(&s), bracket(&x, &y)] {
            for (_, c) in e.iter() {
                prop_assert!(!c.is_zero());
            }
        }
    }

    #[test]
    fn hom_bracket_is_bilinear(x in arb_element(), y in arb_element(), z in arb_element(), s in arb_scalar()) {
        let endo = shear_endo(Scalar::from_ratio(-1, 2));
        let lhs = hom_bracket(&endo, &x.add(&y.scale(&s)), &z);
        let rhs = hom_bracket(&endo, &x, &z).add(&hom_bracket(&endo, &y, &z).scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_bilinear(x in arb_element(), y in arb_element(), v in arb_module_vec(), s in arb_scalar()) {
        let fam = Family::Abf {
            alpha: Scalar::from_ratio(1, 3),
            beta: Scalar::from_ratio(1, 5),
            f: Scalar::from_int(2),
        };
        let lhs = act(&fam, &x.add(&y.scale(&s)), &v, Sign::Fixed);
        let rhs = act(&fam, &x, &v, Sign::Fixed).add(&act(&fam, &y, &v, Sign::Fixed).scale(&s));
        prop_assert_eq!(lhs, rhs);
        for (_, c) in act(&fam, &x, &v, Sign::Fixed).iter() {
            prop_assert!(!c.is_zero());
        }
    }
}
