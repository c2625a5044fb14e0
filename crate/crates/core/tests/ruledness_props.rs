mod common;

use common::{entries, nonzero};
use proptest::prelude::*;
use qforms_core::exactnum::int;
use qforms_core::pfister::pfister;
use qforms_core::qform::{is_equivalent, tensor};
use qforms_core::ruledness::{binary_divisibility_search, classify_ruledness, sphere_quadric_ruledness, DivisorCandidates, Ruledness, RULE_ISOTROPIC};
use qforms_core::{Field, QuadraticForm};


proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn divisibility_round_trip(b in nonzero(10), tau in entries(9, 1..=4)) {
        let binary = pfister(Field::Q, &[int(b)]).unwrap().form;
        let q = tensor(&binary, &QuadraticForm::diagonal_ints(Field::Q, &tau).unwrap()).unwrap();
        let cert = binary_divisibility_search(&q, &DivisorCandidates::Forced).unwrap();
        prop_assert!(cert.is_some(), "no certificate for b = {}, tau = {:?}", b, tau);
        let cert = cert.unwrap();
        prop_assert!(cert.verified);
        prop_assert!(is_equivalent(&q, &cert.form(Field::Q).unwrap()).unwrap());
    }

    #[test]
    fn verdict_consistency(e in entries(9, 2..=9)) {
        let q = QuadraticForm::diagonal_ints(Field::Q, &e).unwrap();
        let v = classify_ruledness(&q).unwrap();
        prop_assert!(!v.trace.is_empty());
        match v.verdict {
            Ruledness::NotRuled => prop_assert_eq!(v.i1.as_ref().and_then(|r| r.value), Some(1)),
            Ruledness::Ruled => prop_assert!(v.certificate.as_ref().is_some_and(|c| c.is_valid()) || v.trace[0].rule == RULE_ISOTROPIC),
            Ruledness::Undetermined => {}
        }
    }
}

#[test]
fn spheres_up_to_32() {
    for n in 1..=32usize {
        let v = sphere_quadric_ruledness(n).unwrap();
        let expected = if n.is_power_of_two() { Ruledness::NotRuled } else { Ruledness::Ruled };
        assert_eq!(v.verdict, expected, "n = {n}");
    }
}
