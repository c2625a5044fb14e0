//! Self-check suites: exact symbolic identities, and agreement of the
//! invariant-level engines with brute-force oracles on seeded samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autgroup::{ga_family, specialize, twist, AffineQuadric};
use crate::error::Result;
use crate::exactnum::{hilbert_symbol, int, Place, SquareClass};
use crate::isotropy::{is_isotropic, witt_decompose};
use crate::oracle::{diagonal_witness, hilbert_symbol_search};
use crate::pfister::{associator, cayley_dickson_multiply, hopf_map};
use crate::poly::{parse_polynomial_infer, var_names, PolyMap, Polynomial};
use crate::qform::{Field, QuadraticForm};
use crate::ruledness::ahmad_ohm_map;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> SuiteCheck {
    SuiteCheck { name: name.into(), passed, detail: detail.into() }
}

fn from_result(name: String, r: Result<(bool, String)>) -> SuiteCheck {
    match r {
        Ok((passed, detail)) => check(name, passed, detail),
        Err(e) => check(name, false, format!("error: {e}")),
    }
}

fn symbols(prefix: &str, n: usize) -> Vec<Polynomial> {
    (1..=n).map(|i| Polynomial::var(&format!("{prefix}{i}"))).collect()
}

pub fn identities() -> Vec<SuiteCheck> {
    let mut out = composition_identities();
    out.extend(associator_checks());
    out.extend(hopf_identities());
    out.extend(ahmad_ohm_identities(3));
    out.extend(classical_family_checks());
    out.extend(random_family_checks(7, 50));
    out
}

/// N(xy) = N(x)N(y) with symbolic parameters.
pub fn composition_identities() -> Vec<SuiteCheck> {
    (1..=3)
        .map(|fold| {
            let dim = 1 << fold;
            let r = cayley_dickson_multiply(&symbols("a", fold), &var_names("x", dim), &var_names("y", dim));
            from_result(format!("composition_fold{fold}"), r.map(|m| (true, format!("{} components, N(xy) - N(x)N(y) = 0", m.len()))))
        })
        .collect()
}

pub fn associator_checks() -> Vec<SuiteCheck> {
    (1..=3)
        .map(|fold| {
            let dim = 1 << fold;
            let assoc = associator(&symbols("a", fold), &var_names("x", dim), &var_names("y", dim), &var_names("z", dim));
            let zero = assoc.iter().all(|c| c.is_zero());
            let expected_zero = fold < 3;
            check(format!("associator_fold{fold}"), zero == expected_zero, if zero { "associative" } else { "not associative" })
        })
        .collect()
}

pub fn hopf_identities() -> Vec<SuiteCheck> {
    (1..=3)
        .map(|fold| from_result(format!("hopf_fold{fold}"), hopf_map(fold).map(|h| (h.certificate.is_zero(), format!("certificate has {} terms", h.certificate.num_terms())))))
        .collect()
}

/// Every fold ≤ 3, every P₁ dimension, r up to `max_r`.
pub fn ahmad_ohm_identities(max_r: usize) -> Vec<SuiteCheck> {
    let mut out = Vec::new();
    for fold in 1..=3 {
        let params = symbols("a", fold);
        for p1 in 1..=(1 << fold) {
            for r in 1..=max_r {
                let r_ = ahmad_ohm_map(&params, p1, &symbols("b", r));
                out.push(from_result(format!("ahmad_ohm_fold{fold}_p{p1}_r{r}"), r_.map(|c| (c.is_valid(), format!("{} map components", c.map.len())))));
            }
        }
    }
    out
}

fn compose(outer: &PolyMap, inner: &PolyMap, vars: &[String]) -> Vec<Polynomial> {
    let a = crate::poly::assignment(vars, inner.components());
    outer.components().iter().map(|c| c.substitute_partial(&a)).collect()
}

/// The family on x₁x₂ + x₃² - 1 and its twists by constants and by x₂.
pub fn classical_family_checks() -> Vec<SuiteCheck> {
    let run = || -> Result<Vec<SuiteCheck>> {
        let f = parse_polynomial_infer("x1*x2 + x3^2 - 1")?;
        let x = AffineQuadric::new(Field::Q, &f, None)?;
        let fam = ga_family(&x, 10)?;
        let mut out = vec![check("classical_family", fam.checks.all(), format!("{:?}", fam.checks))];
        let id: Vec<Polynomial> = x.variables.iter().map(|v| Polynomial::var(v)).collect();
        for g in ["0", "1", "-3", "1/2", "x2", "x2^2 - 2*x2"] {
            let gp = parse_polynomial_infer(g)?;
            let tw = twist(&x, &fam, &gp)?;
            let image = &tw.map.pull_back(&f, &x.variables)? - &f;
            let round = compose(&tw.map, &tw.inverse, &x.variables);
            let ok = image.is_zero() && tw.multiplier.is_zero() && round == id;
            out.push(check(format!("classical_twist[{g}]"), ok, format!("components: {}", tw.map.components().iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; "))));
        }
        let by_x2 = twist(&x, &fam, &Polynomial::var("x2"))?;
        let max_deg = by_x2.map.components().iter().filter_map(|c| c.degree()).max();
        let constant = specialize(&fam, &Polynomial::one())?;
        out.push(check("classical_twist_degree", max_deg == Some(3) && by_x2.map != constant, format!("twist by x2 has degree {max_deg:?}")));
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![check("classical_family", false, format!("error: {e}"))])
}

/// Random diagonal affine quadrics Σ a_i x_i² + c over Q (dims 3–6, entries in
/// [-10, 10]) whose quadratic part has an isotropic vector of height ≤ 100.
pub fn random_family_checks(seed: u64, count: usize) -> Vec<SuiteCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=6);
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-10..=10)).collect();
        let c: i64 = rng.gen_range(-10..=10);
        if a.iter().all(|&v| v == 0) || diagonal_witness(&a, 100).is_none() {
            continue;
        }
        let vars = var_names("x", n);
        let mut f = Polynomial::from_int(c);
        for (ai, v) in a.iter().zip(&vars) {
            let xv = Polynomial::var(v);
            f = &f + &(&xv * &xv).scale(&int(*ai));
        }
        let name = format!("family[{f}]");
        let r = AffineQuadric::new(Field::Q, &f, Some(&vars)).and_then(|x| ga_family(&x, 100)).map(|fam| (fam.checks.all(), format!("{:?}: {:?}", fam.case, fam.checks)));
        out.push(from_result(name, r));
    }
    out
}

pub fn oracle(seed: u64) -> Vec<SuiteCheck> {
    let mut out = vec![hilbert_agreement(&[0, 2, 3, 5, 7, 11])];
    out.push(isotropy_agreement(seed, 200));
    out.push(witt_recovery(seed, 100));
    out
}

fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    (2..).take_while(|d| d * d <= n).all(|d| n % (d * d) != 0)
}

/// Closed-form Hilbert symbols against exhaustive local solubility for all
/// squarefree a, b in [-15, 15].
pub fn hilbert_agreement(primes: &[u64]) -> SuiteCheck {
    let vals: Vec<i64> = (-15..=15).filter(|&v| v != 0 && is_squarefree(v)).collect();
    let mut mismatches = Vec::new();
    let mut total = 0;
    for &p in primes {
        let place = if p == 0 { Place::Real } else { Place::prime(p).expect("prime") };
        for &a in &vals {
            for &b in &vals {
                total += 1;
                let closed = hilbert_symbol(&SquareClass::of_int(a).unwrap(), &SquareClass::of_int(b).unwrap(), &place);
                if closed != hilbert_symbol_search(a, b, p) {
                    mismatches.push(format!("({a},{b})_{p}"));
                }
            }
        }
    }
    check("hilbert_symbol_oracle", mismatches.is_empty(), format!("{} of {total} disagree {}", mismatches.len(), mismatches.join(" ")))
}

/// Invariant-level isotropy against height-100 brute force on random
/// diagonal forms (dims 3–5, nonzero entries in [-20, 20]).
pub fn isotropy_agreement(seed: u64, count: usize) -> SuiteCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let (mut iso, mut aniso) = (0, 0);
    for _ in 0..count {
        let n = rng.gen_range(3..=5);
        let a: Vec<i64> = (0..n).map(|_| loop {
            let v = rng.gen_range(-20..=20);
            if v != 0 {
                break v;
            }
        }).collect();
        let q = QuadraticForm::diagonal_ints(Field::Q, &a).expect("nonzero entries");
        let decided = match is_isotropic(&q) {
            Ok(b) => b,
            Err(e) => {
                bad.push(format!("{a:?}: {e}"));
                continue;
            }
        };
        let witness = diagonal_witness(&a, 100);
        if decided {
            iso += 1;
        } else {
            aniso += 1;
        }
        let consistent = match &witness {
            Some(w) => decided && a.iter().zip(w).map(|(&x, &y)| x as i128 * y as i128 * y as i128).sum::<i128>() == 0,
            None => true,
        };
        if !consistent {
            bad.push(format!("{a:?}"));
        }
    }
    check("isotropy_oracle", bad.is_empty(), format!("{iso} isotropic, {aniso} anisotropic, {} inconsistent {}", bad.len(), bad.join(" ")))
}

/// Random change of basis: x_i ↦ x_i + Σ_{j>i} m_ij x_j (unipotent, so invertible).
fn mix(q: &QuadraticForm, rng: &mut ChaCha8Rng) -> QuadraticForm {
    let n = q.dim();
    let vars = var_names("x", n);
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut p = Polynomial::var(&vars[i]);
            for v in vars.iter().skip(i + 1) {
                let m: i64 = rng.gen_range(-2..=2);
                if m != 0 {
                    p = &p + &Polynomial::var(v).scale(&int(m));
                }
            }
            p
        })
        .collect();
    let poly = q.to_polynomial(&vars).substitute_partial(&crate::poly::assignment(&vars, &images));
    QuadraticForm::from_polynomial(q.field(), &poly, &vars).expect("same variables")
}

/// m hyperbolic planes ⊥ a known anisotropic form, mixed by a random basis
/// change; the computed Witt index must be m.
pub fn witt_recovery(seed: u64, count: usize) -> SuiteCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5157);
    let mut bad = Vec::new();
    for k in 0..count {
        let m = rng.gen_range(0..=3usize);
        let (field, mut entries): (Field, Vec<i64>) = if k % 2 == 0 {
            let len = rng.gen_range(1..=4);
            (Field::R, (0..len).map(|_| rng.gen_range(1..=9)).collect())
        } else {
            let c = [1i64, 2, 3, 5, 6, 7][rng.gen_range(0..6)] * if rng.gen_bool(0.5) { 1 } else { -1 };
            let kernels: [&[i64]; 4] = [&[1, 1, 1, 7], &[1, 1, 1], &[1, 1], &[1]];
            (Field::Q, kernels[rng.gen_range(0..4)].iter().map(|v| v * c).collect())
        };
        for _ in 0..m {
            let u: i64 = rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 };
            entries.extend([u, -u]);
        }
        let q = mix(&QuadraticForm::diagonal_ints(field, &entries).expect("nonzero"), &mut rng);
        match witt_decompose(&q) {
            Ok(w) if w.witt_index == m && w.radical_dimension == 0 => {}
            Ok(w) => bad.push(format!("{entries:?} over {}: got {}", field.label(), w.witt_index)),
            Err(e) => bad.push(format!("{entries:?}: {e}")),
        }
    }
    check("witt_recovery", bad.is_empty(), format!("{} of {count} wrong {}", bad.len(), bad.join(" ")))
}
