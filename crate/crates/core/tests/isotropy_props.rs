mod common;

use common::{change_basis, entries, nonzero, unipotent_pair};
use proptest::prelude::*;
use qforms_core::isotropy::{constructive_witt_index, first_witt_index, is_isotropic, isotropic_witness, witt_decompose, WitnessSearch};
use qforms_core::oracle::diagonal_witness;
use qforms_core::qform::{direct_sum, hyperbolic, is_equivalent};
use qforms_core::{Field, QuadraticForm};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_soundness(e in entries(20, 3..=5)) {
        let q = QuadraticForm::diagonal_ints(Field::Q, &e).unwrap();
        let iso = is_isotropic(&q).unwrap();
        if let Some(w) = isotropic_witness(&q, 12) {
            prop_assert!(iso);
            let v: Vec<_> = w.iter().map(|x| qforms_core::Rational::from_integer(x.clone())).collect();
            prop_assert!(num_traits::Zero::is_zero(&q.evaluate(&v)));
        }
        if !iso {
            prop_assert_eq!(diagonal_witness(&e, 100), None);
        }
    }

    #[test]
    fn constructive_never_exceeds(e in entries(9, 2..=5)) {
        let q = QuadraticForm::diagonal_ints(Field::Q, &e).unwrap();
        let w = witt_decompose(&q).unwrap();
        let c = constructive_witt_index(&q, &WitnessSearch::exhaustive(15)).unwrap();
        prop_assert!(c.planes <= w.witt_index);
        // Small diagonal forms have small witnesses.
        prop_assert_eq!(c.planes, w.witt_index);
    }

    #[test]
    fn reconstruction(m in 0usize..=3, kernel in prop::sample::select(vec![vec![1i64, 1, 1, 7], vec![1, 1, 1], vec![1, 1], vec![1], vec![2, 3, 6]]),
                      c in nonzero(7), (u, l) in unipotent_pair(10)) {
        let k = QuadraticForm::diagonal_ints(Field::Q, &kernel.iter().map(|x| x * c).collect::<Vec<_>>()).unwrap();
        let split = if m == 0 { k.clone() } else { direct_sum(&hyperbolic(Field::Q, m).unwrap(), &k).unwrap() };
        let q = change_basis(&split, &u, &l);
        let w = witt_decompose(&q).unwrap();
        prop_assert_eq!(w.witt_index, m);
        prop_assert_eq!(&w.anisotropic_invariants, &k.invariants().unwrap());
        prop_assert!(is_equivalent(&q, &split).unwrap());
    }

    #[test]
    fn first_witt_index_bounded(e in entries(15, 2..=9)) {
        let q = QuadraticForm::diagonal_ints(Field::Q, &e).unwrap();
        if is_isotropic(&q).unwrap() {
            return Ok(());
        }
        let r = first_witt_index(&q).unwrap();
        if let Some(v) = r.value {
            prop_assert!(v >= 1 && v <= e.len() / 2);
            prop_assert!(!r.justification.is_empty());
        }
    }
}

#[test]
fn real_pfister_forms_split_half() {
    for (dim, expect) in [(2, 1), (4, 2), (8, 4)] {
        let q = QuadraticForm::diagonal_ints(Field::R, &vec![1; dim]).unwrap();
        assert_eq!(first_witt_index(&q).unwrap().value, Some(expect));
    }
}

#[test]
fn real_sum_of_squares_table() {
    for m in 2..=17usize {
        let q = QuadraticForm::diagonal_ints(Field::R, &vec![1; m]).unwrap();
        let expected = m - m.next_power_of_two() / 2;
        assert_eq!(first_witt_index(&q).unwrap().value, Some(expected), "m = {m}");
    }
}
