//! Grammar round trip: printing any element or module vector in canonical
//! form and re-evaluating the text reproduces the value exactly.

use proptest::prelude::*;

use hvhom_cli::expr::{eval_expr, parse_expr, Value};
use hvhom_core::{AlgElement, Generator, ModuleVec, Scalar};

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=9, -30i64..=30, 1i64..=9).prop_map(|(rn, rd, im_n, im_d)| {
        Scalar::from_ratio(rn, rd).add(&Scalar::from_ratio(im_n, im_d).mul(&Scalar::i()))
    })
}

fn arb_generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (-12i64..=12).prop_map(Generator::L),
        (-12i64..=12).prop_map(Generator::I),
        Just(Generator::CL),
        Just(Generator::CLI),
        Just(Generator::CI),
    ]
}

proptest! {
    #[test]
    fn algebra_elements_round_trip(terms in proptest::collection::vec((arb_generator(), arb_scalar()), 0..6)) {
        let element = terms
            .into_iter()
            .fold(AlgElement::zero(), |acc, (g, c)| acc.add(&AlgElement::term(g, c)));
        let text = element.to_string();
        let value = eval_expr(&parse_expr(&text).unwrap()).unwrap();
        match value {
            Value::Algebra(parsed) => prop_assert_eq!(parsed, element),
            Value::Scalar(s) => {
                prop_assert!(s.is_zero() && element.is_zero(), "text {} gave scalar {}", text, s)
            }
            other => prop_assert!(false, "unexpected sort for {}: {}", text, other),
        }
    }

    #[test]
    fn module_vectors_round_trip(terms in proptest::collection::vec(((-12i64..=12), arb_scalar()), 0..5)) {
        let vector = terms
            .into_iter()
            .fold(ModuleVec::zero(), |acc, (t, c)| acc.add(&ModuleVec::single(t, c)));
        let text = vector.to_string();
        let value = eval_expr(&parse_expr(&text).unwrap()).unwrap();
        match value {
            Value::Module(parsed) => prop_assert_eq!(parsed, vector),
            Value::Scalar(s) => {
                prop_assert!(s.is_zero() && vector.is_zero(), "text {} gave scalar {}", text, s)
            }
            other => prop_assert!(false, "unexpected sort for {}: {}", text, other),
        }
    }

    /// Printing is idempotent: print(eval(parse(canonical))) = canonical.
    #[test]
    fn printing_is_idempotent(terms in proptest::collection::vec((arb_generator(), arb_scalar()), 0..6)) {
        let element = terms
            .into_iter()
            .fold(AlgElement::zero(), |acc, (g, c)| acc.add(&AlgElement::term(g, c)));
        let text = element.to_string();
        let value = eval_expr(&parse_expr(&text).unwrap()).unwrap();
        prop_assert_eq!(value.to_string(), text);
    }
}
