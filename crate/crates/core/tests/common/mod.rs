#![allow(dead_code)]

use proptest::prelude::*;
use qforms_core::exactnum::int;
use qforms_core::poly::{assignment, var_names, Polynomial};
use qforms_core::QuadraticForm;

/// Nonzero integers in [-r, r].
pub fn nonzero(r: i64) -> impl Strategy<Value = i64> {
    (-r..=r).prop_filter("nonzero", |v| *v != 0)
}

pub fn entries(r: i64, dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    dims.prop_flat_map(move |n| prop::collection::vec(nonzero(r), n))
}

/// Upper and lower unipotent factors, so the change of basis is invertible.
pub fn unipotent_pair(n: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    let k = n * n.saturating_sub(1) / 2;
    (prop::collection::vec(-2i64..=2, k), prop::collection::vec(-2i64..=2, k))
}

pub fn change_basis(q: &QuadraticForm, upper: &[i64], lower: &[i64]) -> QuadraticForm {
    let n = q.dim();
    let vars = var_names("x", n);
    let apply = |p: Polynomial, m: &[i64], up: bool| {
        let mut k = 0;
        let mut images = Vec::new();
        for i in 0..n {
            let mut img = Polynomial::var(&vars[i]);
            for j in 0..n {
                if (up && j > i) || (!up && j < i) {
                    img = &img + &Polynomial::var(&vars[j]).scale(&int(m[k % m.len().max(1)]));
                    k += 1;
                }
            }
            images.push(img);
        }
        p.substitute_partial(&assignment(&vars, &images))
    };
    let mut p = q.to_polynomial(&vars);
    if n > 1 {
        p = apply(p, upper, true);
        p = apply(p, lower, false);
    }
    QuadraticForm::from_polynomial(q.field(), &p, &vars).unwrap()
}
