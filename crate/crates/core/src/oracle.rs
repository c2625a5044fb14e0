//! Independent brute-force checks used to cross-validate the closed-form
//! local computations and the isotropy decision.

use std::collections::HashMap;

/// (a, b)_p for nonzero squarefree integers, decided by searching for a
/// primitive solution of a·x² + b·y² = z² modulo p^k, with k large enough
/// that Hensel lifting applies. `p = 0` denotes the real place.
pub fn hilbert_symbol_search(a: i64, b: i64, p: u64) -> i8 {
    assert!(a != 0 && b != 0);
    if p == 0 {
        return if a < 0 && b < 0 { -1 } else { 1 };
    }
    let p = p as i128;
    // Every primitive solution has gradient valuation at most v_p(2) + 1.
    let delta_max = if p == 2 { 2 } else { 1 };
    let k = 2 * delta_max + 1;
    let m = p.pow(k);
    let (a, b) = (a as i128, b as i128);
    let f = |x: i128, y: i128, z: i128| (a * x * x + b * y * y - z * z).rem_euclid(m);
    let val = |n: i128| -> u32 {
        if n % m == 0 {
            return k;
        }
        let mut n = n;
        let mut v = 0;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        v
    };
    let lifts = |x: i128, y: i128, z: i128| {
        let d = val(2 * a * x).min(val(2 * b * y)).min(val(2 * z));
        2 * d < k && f(x, y, z) % p.pow(2 * d + 1) == 0
    };
    // Primitive vectors up to scaling: the first unit coordinate is 1.
    for u in 0..m {
        for w in 0..m {
            if lifts(1, u, w) {
                return 1;
            }
            if u % p == 0 && lifts(u, 1, w) {
                return 1;
            }
            if u % p == 0 && w % p == 0 && lifts(u, w, 1) {
                return 1;
            }
        }
    }
    -1
}

/// Smallest-height search for a nonzero integer vector with Σ a_i x_i² = 0,
/// |x_i| ≤ height, by meeting in the middle on the two halves of the
/// coordinates. Only nonnegative coordinates are needed for diagonal forms.
pub fn diagonal_witness(entries: &[i64], height: u64) -> Option<Vec<i64>> {
    let n = entries.len();
    if n == 0 {
        return None;
    }
    if entries.iter().all(|&a| a > 0) || entries.iter().all(|&a| a < 0) {
        return None;
    }
    if let Some(i) = entries.iter().position(|&a| a == 0) {
        let mut v = vec![0; n];
        v[i] = 1;
        return Some(v);
    }
    let h = height as i64;
    let split = n / 2;
    let (left, right) = entries.split_at(split);
    let mut table: HashMap<i128, Vec<i64>> = HashMap::new();
    for_each_vector(left.len(), h, &mut |v| {
        let s = value(left, v);
        let nonzero = v.iter().any(|&c| c != 0);
        match table.get(&s) {
            Some(old) if old.iter().any(|&c| c != 0) || !nonzero => {}
            _ => {
                table.insert(s, v.to_vec());
            }
        }
        true
    });
    let mut found = None;
    for_each_vector(right.len(), h, &mut |v| {
        let s = value(right, v);
        if let Some(l) = table.get(&-s) {
            if l.iter().chain(v.iter()).any(|&c| c != 0) {
                let mut w = l.clone();
                w.extend_from_slice(v);
                found = Some(w);
                return false;
            }
        }
        true
    });
    found
}

fn value(entries: &[i64], v: &[i64]) -> i128 {
    entries.iter().zip(v).map(|(&a, &x)| a as i128 * x as i128 * x as i128).sum()
}

/// Calls `f` on every vector in [0, h]^len until it returns false.
fn for_each_vector(len: usize, h: i64, f: &mut dyn FnMut(&[i64]) -> bool) {
    let mut v = vec![0i64; len];
    loop {
        if !f(&v) {
            return;
        }
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            if v[i] < h {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_symbols() {
        assert_eq!(hilbert_symbol_search(-1, -1, 2), -1);
        assert_eq!(hilbert_symbol_search(-1, -1, 3), 1);
        assert_eq!(hilbert_symbol_search(-1, -1, 0), -1);
        assert_eq!(hilbert_symbol_search(2, 3, 3), -1);
        assert_eq!(hilbert_symbol_search(2, 5, 5), -1);
        assert_eq!(hilbert_symbol_search(3, 7, 2), -1);
        assert_eq!(hilbert_symbol_search(5, 7, 2), 1);
    }

    #[test]
    fn witnesses() {
        let w = diagonal_witness(&[1, 1, -2], 100).unwrap();
        assert_eq!(value(&[1, 1, -2], &w), 0);
        assert_eq!(diagonal_witness(&[1, 1, 1, 7], 30), None);
        assert_eq!(diagonal_witness(&[1, 1, -3], 100), None);
        assert!(diagonal_witness(&[1, 1, 1, 1, -7], 10).is_some());
    }
}
