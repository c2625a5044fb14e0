//! Small exact linear algebra over ℚ: reduced row echelon form and kernels.

use num_traits::{One, Zero};

use crate::exactnum::Rational;

/// Reduces `rows` in place; returns the pivot column of each nonzero row.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..ncols {
                    let v = &rows[r][k] * &f;
                    rows[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of { v : rows·v = 0 }, one vector per free column, each with a 1 in
/// its free column.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let pivots = if m.is_empty() { vec![] } else { rref(&mut m) };
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rref(&mut trial).len() > basis.len() {
            basis.push(v.clone());
            chosen.push(i);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn kernel_of_single_row() {
        let k = kernel(&[vec![int(0), int(1), int(0)]], 3);
        assert_eq!(k, vec![vec![int(1), int(0), int(0)], vec![int(0), int(0), int(1)]]);
        let k = kernel(&[vec![int(1), int(2)]], 2);
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
        assert_eq!(kernel(&[], 2).len(), 2);
    }

    #[test]
    fn independence() {
        let v = vec![vec![int(1), int(1)], vec![int(2), int(2)], vec![int(0), int(1)]];
        assert_eq!(independent_subset(&v), vec![0, 2]);
    }
}
