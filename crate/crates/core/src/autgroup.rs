//! Automorphisms of affine quadrics f = 0: additive one-parameter families
//! for isotropic quadrics, invariant functions and twisted families, and
//! verdicts on the automorphism group.
//!
//! The homogenization is Q̃(z, h) = q(z) + h·L(z) + c·h², so Q̃(z, 1) = f(z)
//! for f = q + L + c. W = {h = 0} carries the quadratic part q.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Rational};
use crate::isotropy::{first_witt_index, is_isotropic, search_witness, to_rational_vector, FirstWittIndexResult, WitnessOutcome, WitnessSearch};
use crate::linalg::kernel;
use crate::oracle::diagonal_witness;
use crate::poly::{assignment, PolyMap, Polynomial};
use crate::qform::{Field, QuadraticForm};
use crate::trace::{ser_rationals, TraceStep};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineQuadric {
    pub f: Polynomial,
    pub field: Field,
    pub variables: Vec<String>,
    /// Degree-2 part of f on W.
    pub q: QuadraticForm,
    #[serde(serialize_with = "ser_rationals")]
    pub linear: Vec<Rational>,
    #[serde(serialize_with = "crate::trace::ser_rational")]
    pub constant: Rational,
    pub homogenizing_variable: String,
    /// Q̃ on V = W ⊕ ⟨e_h⟩, homogenizing coordinate last.
    pub homogenization: QuadraticForm,
}

fn fresh_name(base: &str, taken: &[String]) -> String {
    if !taken.iter().any(|v| v == base) {
        return base.to_string();
    }
    (0..).map(|i| format!("{base}{i}")).find(|c| !taken.contains(c)).expect("unbounded")
}

impl AffineQuadric {
    /// `variables` defaults to the variables of f in natural order.
    pub fn new(field: Field, f: &Polynomial, variables: Option<&[String]>) -> Result<Self> {
        let variables: Vec<String> = match variables {
            Some(v) => v.to_vec(),
            None => f.variables().to_vec(),
        };
        if let Some(v) = f.variables().iter().find(|v| !variables.contains(v)) {
            return Err(Error::UnknownVariable(v.clone()));
        }
        if f.degree() != Some(2) {
            return Err(Error::InvalidForm(format!("`{f}` does not have degree exactly 2")));
        }
        let n = variables.len();
        let q = QuadraticForm::from_polynomial(field, &f.homogeneous_part(2), &variables)?;
        let linear: Vec<Rational> = variables.iter().map(|v| field.reduce(&f.coefficient(&[(v.as_str(), 1)]))).collect::<Result<_>>()?;
        let constant = field.reduce(&f.coefficient(&[]))?;
        let h = fresh_name("h", &variables);
        let mut coeffs: BTreeMap<(usize, usize), Rational> = q.coefficients().clone();
        for (i, l) in linear.iter().enumerate() {
            coeffs.insert((i, n), l.clone());
        }
        coeffs.insert((n, n), constant.clone());
        let homogenization = QuadraticForm::new(field, n + 1, coeffs)?;
        Ok(AffineQuadric { f: f.clone(), field, variables, q, linear, constant, homogenizing_variable: h, homogenization })
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyCase {
    Radical,
    SiegelTransvection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismFamily {
    pub case: FamilyCase,
    /// Components in the quadric variables plus `parameter`.
    pub map: PolyMap,
    pub parameter: String,
    pub variables: Vec<String>,
    /// Isotropic vector in W.
    #[serde(serialize_with = "ser_rationals")]
    pub x: Vec<Rational>,
    /// Second vector of the transvection (empty in the radical case).
    #[serde(serialize_with = "ser_rationals")]
    pub y: Vec<Rational>,
    /// Linear functional on V vanishing on x (empty in the transvection case).
    #[serde(serialize_with = "ser_rationals")]
    pub g: Vec<Rational>,
    pub checks: FamilyChecks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyChecks {
    /// f∘φ_t - f is the zero polynomial.
    pub preserves_f: bool,
    /// φ_0 is the identity.
    pub identity_at_zero: bool,
    /// φ_s∘φ_t = φ_{s+t}.
    pub group_law: bool,
}

impl FamilyChecks {
    pub fn all(&self) -> bool {
        self.preserves_f && self.identity_at_zero && self.group_law
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
}

/// Largest half-box the meet-in-the-middle fallback will enumerate.
const MEET_IN_MIDDLE_LIMIT: u128 = 20_000_000;

/// Isotropic vector of q from a witness of height ≤ `height_bound` for its
/// diagonalization, mapped back through the diagonalizing basis.
fn diagonal_witness_of(q: &QuadraticForm, height_bound: u64) -> Option<Vec<Rational>> {
    let d = q.diagonalize();
    let n = q.dim();
    if d.rank < n {
        return Some(d.basis[d.rank].clone());
    }
    let half = (height_bound as u128 + 1).checked_pow((n - n / 2) as u32)?;
    if half > MEET_IN_MIDDLE_LIMIT {
        return None;
    }
    let l = d.entries.iter().fold(num_bigint::BigInt::one(), |acc, e| num_integer::Integer::lcm(&acc, e.denom()));
    let ints: Vec<i64> = d
        .entries
        .iter()
        .map(|e| num_traits::ToPrimitive::to_i64(&(e * Rational::from_integer(l.clone())).to_integer()))
        .collect::<Option<_>>()?;
    let y = diagonal_witness(&ints, height_bound)?;
    let mut v = vec![Rational::zero(); n];
    for (yk, bk) in y.iter().zip(&d.basis) {
        for (vi, bi) in v.iter_mut().zip(bk) {
            *vi += bi * Rational::from_integer((*yk).into());
        }
    }
    Some(v)
}

fn linear_poly(coeffs: &[Rational], vars: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (c, v) in coeffs.iter().zip(vars) {
        if !c.is_zero() {
            acc = &acc + &v.scale(c);
        }
    }
    acc
}

/// The family φ_t(z) = z + t·g(z)·x when x lies in the radical of Q̃, or the
/// Siegel transvection z + t⟨z,x⟩y - t⟨z,y⟩x - t²q(y)⟨z,x⟩x otherwise, where
/// ⟨·,·⟩ is the polar form of Q̃. Both are restricted to the chart h = 1.
pub fn ga_family(x: &AffineQuadric, height_bound: u64) -> Result<AutomorphismFamily> {
    let n = x.dim();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    if !is_isotropic(&x.q)? {
        return Err(Error::AnisotropicPart);
    }
    let w = match search_witness(&x.q, &WitnessSearch::capped(height_bound, n)) {
        WitnessOutcome::Found(w) => to_rational_vector(&w),
        _ => diagonal_witness_of(&x.q, height_bound).ok_or(Error::WitnessNotFound(height_bound))?,
    };
    let qt = &x.homogenization;
    let mut xv = w.clone();
    xv.push(Rational::zero());
    let polar_x: Vec<Rational> = (0..=n).map(|i| qt.polar(&unit(n + 1, i), &xv)).collect();

    let t_name = fresh_name("t", &x.variables);
    let t = Polynomial::var(&t_name);
    let mut zvars: Vec<Polynomial> = x.variables.iter().map(|v| Polynomial::var(v)).collect();
    zvars.push(Polynomial::one());

    let (case, comps, y, g) = if polar_x.iter().all(|c| c.is_zero()) {
        // g: the first coordinate functional that vanishes on x; the
        // homogenizing coordinate always qualifies.
        let k = (0..=n).find(|&k| xv[k].is_zero()).expect("x lies in W");
        let g = unit(n + 1, k);
        let gz = linear_poly(&g, &zvars);
        let comps: Vec<Polynomial> = (0..n).map(|i| &zvars[i] + &(&t * &gz).scale(&w[i])).collect();
        (FamilyCase::Radical, comps, vec![], g)
    } else {
        let row: Vec<Rational> = polar_x[..n].to_vec();
        let basis = kernel(&[row], n);
        let y = basis
            .into_iter()
            .find(|b| {
                let rank_two = (0..n).any(|i| (0..n).any(|j| &b[i] * &w[j] != &b[j] * &w[i]));
                rank_two
            })
            .ok_or(Error::DimensionTooSmall(n))?;
        let mut yv = y.clone();
        yv.push(Rational::zero());
        let polar_y: Vec<Rational> = (0..=n).map(|i| qt.polar(&unit(n + 1, i), &yv)).collect();
        let zx = linear_poly(&polar_x, &zvars);
        let zy = linear_poly(&polar_y, &zvars);
        let qy = x.q.evaluate(&y);
        let tzx = &t * &zx;
        let tzy = &t * &zy;
        let ttzx = (&(&t * &t) * &zx).scale(&qy);
        let comps: Vec<Polynomial> = (0..n)
            .map(|i| {
                let a = tzx.scale(&y[i]);
                let b = tzy.scale(&w[i]);
                let c = ttzx.scale(&w[i]);
                &(&(&zvars[i] + &a) - &b) - &c
            })
            .collect();
        (FamilyCase::SiegelTransvection, comps, y, vec![])
    };
    let mut src = x.variables.clone();
    src.push(t_name.clone());
    let map = PolyMap::new(src, comps)?;
    let mut fam = AutomorphismFamily {
        case,
        map,
        parameter: t_name,
        variables: x.variables.clone(),
        x: w,
        y,
        g,
        checks: FamilyChecks { preserves_f: false, identity_at_zero: false, group_law: false },
    };
    fam.checks = check_family(x, &fam)?;
    Ok(fam)
}

/// The family with its parameter replaced by `value`, as a map in the quadric
/// variables and whatever `value` depends on.
pub fn specialize(fam: &AutomorphismFamily, value: &Polynomial) -> Result<PolyMap> {
    let mut src = fam.variables.clone();
    for v in value.variables() {
        if !src.contains(v) {
            src.push(v.clone());
        }
    }
    let a = assignment(std::slice::from_ref(&fam.parameter), std::slice::from_ref(value));
    let comps: Vec<Polynomial> = fam.map.components().iter().map(|c| c.substitute_partial(&a)).collect();
    PolyMap::new(src, comps)
}

fn apply(map_components: &[Polynomial], vars: &[String], p: &Polynomial) -> Polynomial {
    p.substitute_partial(&assignment(vars, map_components))
}

pub fn check_family(x: &AffineQuadric, fam: &AutomorphismFamily) -> Result<FamilyChecks> {
    let comps = fam.map.components();
    let preserves_f = (&apply(comps, &fam.variables, &x.f) - &x.f).is_zero();
    let at_zero = specialize(fam, &Polynomial::zero())?;
    let identity_at_zero = at_zero.components().iter().zip(&fam.variables).all(|(c, v)| c == &Polynomial::var(v));
    let mut taken = fam.variables.clone();
    taken.push(fam.parameter.clone());
    let s = fresh_name("s", &taken);
    let sp = Polynomial::var(&s);
    let phi_s = specialize(fam, &sp)?;
    let composed: Vec<Polynomial> = phi_s.components().iter().map(|c| apply(comps, &fam.variables, c)).collect();
    let sum = specialize(fam, &(&sp + &Polynomial::var(&fam.parameter)))?;
    let group_law = composed.iter().zip(sum.components()).all(|(a, b)| a == b);
    Ok(FamilyChecks { preserves_f, identity_at_zero, group_law })
}

/// Monomials of degree at most d in the given variables, lowest first.
fn monomials(vars: &[String], d: u32) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::one()];
    let mut layer = vec![(Polynomial::one(), 0usize)];
    for _ in 0..d {
        let mut next = Vec::new();
        for (m, start) in &layer {
            for (k, v) in vars.iter().enumerate().skip(*start) {
                next.push((m * &Polynomial::var(v), k));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

/// A basis of the polynomials h of degree ≤ d with h∘φ_t = h identically.
pub fn invariant_basis(fam: &AutomorphismFamily, d: u32) -> Result<Vec<Polynomial>> {
    let monos = monomials(&fam.variables, d);
    let diffs: Vec<Polynomial> = monos.iter().map(|m| &apply(fam.map.components(), &fam.variables, m) - m).collect();
    // One row per monomial of (z, t) occurring in some difference.
    let mut keys: Vec<Vec<(String, u32)>> = Vec::new();
    let mut entries: Vec<BTreeMap<usize, Rational>> = Vec::new();
    for (col, dp) in diffs.iter().enumerate() {
        for (mono, c) in dp.terms() {
            let key: Vec<(String, u32)> = mono.iter().map(|(v, e)| (v.to_string(), *e)).collect();
            let row = match keys.iter().position(|k| k == &key) {
                Some(r) => r,
                None => {
                    keys.push(key);
                    entries.push(BTreeMap::new());
                    keys.len() - 1
                }
            };
            entries[row].insert(col, c.clone());
        }
    }
    let rows: Vec<Vec<Rational>> = entries
        .iter()
        .map(|e| (0..monos.len()).map(|c| e.get(&c).cloned().unwrap_or_else(Rational::zero)).collect())
        .collect();
    let basis = kernel(&rows, monos.len());
    Ok(basis.iter().map(|v| linear_poly(v, &monos)).collect())
}

pub fn is_invariant(fam: &AutomorphismFamily, g: &Polynomial) -> bool {
    &apply(fam.map.components(), &fam.variables, g) == g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Twist {
    /// z ↦ φ_{g(z)}(z).
    pub map: PolyMap,
    /// f∘map - f = multiplier·f.
    pub multiplier: Polynomial,
    /// The twist by -g.
    pub inverse: PolyMap,
}

pub fn twist(x: &AffineQuadric, fam: &AutomorphismFamily, g: &Polynomial) -> Result<Twist> {
    if !is_invariant(fam, g) || g.variables().iter().any(|v| !fam.variables.contains(v)) {
        return Err(Error::NotInvariant);
    }
    let map = specialize(fam, g)?;
    let inverse = specialize(fam, &-g)?;
    let image = &apply(map.components(), &fam.variables, &x.f) - &x.f;
    let (multiplier, rem) = image.div_rem(&x.f)?;
    if !rem.is_zero() {
        return Err(Error::InvalidMap("twist does not preserve the quadric".into()));
    }
    Ok(Twist { map, multiplier, inverse })
}

/// True iff f∘candidate = u·f for a nonzero constant u.
pub fn check_automorphism(x: &AffineQuadric, candidate: &PolyMap) -> Result<bool> {
    if candidate.len() != x.dim() || candidate.denominator().is_some() {
        return Ok(false);
    }
    let image = apply(candidate.components(), &x.variables, &x.f);
    if image.is_zero() {
        return Ok(false);
    }
    let (u, rem) = image.div_rem(&x.f)?;
    Ok(rem.is_zero() && u.is_constant() && !u.is_zero())
}

// ---------------------------------------------------------------------------
// Verdicts

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    InfiniteDimensional,
    #[serde(rename = "PGO_W_in_V")]
    PgoWInV,
    #[serde(rename = "PGO_V")]
    PgoV,
    Unknown,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupVerdict {
    pub verdict: GroupKind,
    pub named_group: Option<String>,
    pub family: Option<AutomorphismFamily>,
    pub i1: Option<FirstWittIndexResult>,
    pub injectivity: Option<InjectivityWitness>,
    pub trace: Vec<TraceStep>,
}

/// Twists by the basis invariants of degree ≤ `degree` compared as
/// coefficient tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityWitness {
    pub degree: u32,
    pub invariants: Vec<String>,
    pub pairwise_distinct: bool,
}

pub const INJECTIVITY_DEGREE: u32 = 2;

pub fn injectivity_witness(fam: &AutomorphismFamily, degree: u32) -> Result<InjectivityWitness> {
    let basis = invariant_basis(fam, degree)?;
    let maps = basis.iter().map(|g| specialize(fam, g)).collect::<Result<Vec<_>>>()?;
    let pairwise_distinct = (0..maps.len()).all(|i| (i + 1..maps.len()).all(|j| maps[i].components() != maps[j].components()));
    Ok(InjectivityWitness { degree, invariants: basis.iter().map(|g| g.to_string()).collect(), pairwise_distinct })
}

fn verdict_from_form(q: &QuadraticForm, complement: bool, named: Option<String>) -> Result<GroupVerdict> {
    let n = q.dim();
    let mut trace = Vec::new();
    if is_isotropic(q)? {
        let verdict = if n >= 3 {
            trace.push(TraceStep::new("isotropic_infinite_dimensional", format!("q is isotropic of dimension {n} >= 3: additive families generate an infinite-dimensional group")));
            GroupKind::InfiniteDimensional
        } else {
            trace.push(TraceStep::new("unknown", format!("q is isotropic of dimension {n} < 3")));
            GroupKind::Unknown
        };
        return Ok(GroupVerdict { verdict, named_group: None, family: None, i1: None, injectivity: None, trace });
    }
    let i1 = match first_witt_index(q) {
        Ok(r) => r,
        Err(e @ (Error::UnsupportedField(_) | Error::DimensionTooSmall(_))) => {
            trace.push(TraceStep::new("undetermined", format!("first Witt index unavailable: {e}")));
            return Ok(GroupVerdict { verdict: GroupKind::Undetermined, named_group: None, family: None, i1: None, injectivity: None, trace });
        }
        Err(e) => return Err(e),
    };
    trace.push(TraceStep::new(
        "first_witt_index",
        match i1.value {
            Some(v) => format!("i1 = {v} by rule {}", i1.rule),
            None => format!("i1 undetermined ({})", i1.rule),
        },
    ));
    let (verdict, named_group) = match i1.value {
        Some(1) => {
            let (kind, text) = if complement {
                (GroupKind::PgoV, "anisotropic with i1 = 1: every automorphism of the complement is induced by PGO(V)")
            } else {
                (GroupKind::PgoWInV, "anisotropic with i1 = 1: every automorphism is induced by PGO(W in V)")
            };
            trace.push(TraceStep::new("linear_automorphisms", text));
            if let Some(name) = &named {
                trace.push(TraceStep::new("sphere", format!("the real sphere has automorphism group {name}")));
            }
            (kind, named)
        }
        Some(v) => {
            trace.push(TraceStep::new("unknown", format!("i1 = {v} > 1: not known whether all automorphisms are linear")));
            (GroupKind::Unknown, None)
        }
        None => (GroupKind::Undetermined, None),
    };
    Ok(GroupVerdict { verdict, named_group, family: None, i1: Some(i1), injectivity: None, trace })
}

/// Real ellipsoid: definite q, no linear part, constant of the opposite sign.
fn sphere_name(x: &AffineQuadric) -> Option<String> {
    if x.field != Field::R || x.linear.iter().any(|l| !l.is_zero()) || x.constant.is_zero() {
        return None;
    }
    let inv = x.q.invariants().ok()?;
    let n = x.dim();
    let definite_opposite = match inv.signature {
        Some((p, 0)) => p == n && x.constant.is_negative(),
        Some((0, m)) => m == n && x.constant.is_positive(),
        _ => false,
    };
    definite_opposite.then(|| format!("O({n})"))
}

pub fn group_verdict(x: &AffineQuadric, complement_mode: bool, height_bound: u64) -> Result<GroupVerdict> {
    let mut v = verdict_from_form(&x.q, complement_mode, if complement_mode { None } else { sphere_name(x) })?;
    if v.verdict == GroupKind::InfiniteDimensional && !complement_mode {
        match ga_family(x, height_bound) {
            Ok(fam) => {
                v.trace.push(TraceStep::new(
                    "ga_family",
                    format!("{:?} family through x = ({}) verified", fam.case, fam.x.iter().map(format_rational).collect::<Vec<_>>().join(", ")),
                ));
                let w = injectivity_witness(&fam, INJECTIVITY_DEGREE)?;
                v.trace.push(TraceStep::new(
                    "injectivity",
                    format!("{} twists by basis invariants of degree <= {} are pairwise {}", w.invariants.len(), w.degree, if w.pairwise_distinct { "distinct" } else { "not distinct" }),
                ));
                v.injectivity = Some(w);
                v.family = Some(fam);
            }
            Err(Error::WitnessNotFound(h)) => {
                v.trace.push(TraceStep::new("ga_family", format!("no isotropic vector found up to height {h}")));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(v)
}

/// Verdict for the complement of the projective quadric q = 0.
pub fn complement_group_verdict(q: &QuadraticForm) -> Result<GroupVerdict> {
    verdict_from_form(q, true, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial_infer;

    fn quadric(field: Field, s: &str) -> AffineQuadric {
        AffineQuadric::new(field, &parse_polynomial_infer(s).unwrap(), None).unwrap()
    }

    #[test]
    fn classical_family() {
        let x = quadric(Field::Q, "x1*x2 + x3^2 - 1");
        let fam = ga_family(&x, 10).unwrap();
        assert_eq!(fam.case, FamilyCase::SiegelTransvection);
        assert!(fam.checks.all());
        let c: Vec<String> = fam.map.components().iter().map(|c| c.to_string()).collect();
        assert_eq!(c, vec!["-t^2*x2 - 2*t*x3 + x1", "x2", "t*x2 + x3"]);
        let basis = invariant_basis(&fam, 1).unwrap();
        assert!(basis.contains(&Polynomial::var("x2")));
        assert_eq!(invariant_basis(&fam, 0).unwrap(), vec![Polynomial::one()]);
        let b2 = invariant_basis(&fam, 2).unwrap();
        assert!(b2.len() > basis.len());
        assert!(b2.contains(&parse_polynomial_infer("x2^2").unwrap()));
        let tw = twist(&x, &fam, &Polynomial::var("x2")).unwrap();
        assert!(tw.multiplier.is_zero());
        assert!(check_automorphism(&x, &tw.map).unwrap());
        assert_eq!(twist(&x, &fam, &Polynomial::var("x1")), Err(Error::NotInvariant));
    }

    #[test]
    fn errors() {
        let x = quadric(Field::R, "x1^2 + x2^2 + x3^2 - 1");
        assert_eq!(ga_family(&x, 5), Err(Error::AnisotropicPart));
        let x = quadric(Field::Q, "x1^2 - 1");
        assert_eq!(ga_family(&x, 5), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn radical_family() {
        let x = quadric(Field::Q, "x1^2 - x2^2 + x3");
        let fam = ga_family(&x, 5).unwrap();
        assert!(fam.checks.all());
        let vars: Vec<String> = ["x1", "x2", "x3"].iter().map(|v| v.to_string()).collect();
        let f = parse_polynomial_infer("x1^2 + x2^2 - 1").unwrap();
        let x = AffineQuadric::new(Field::Q, &f, Some(&vars)).unwrap();
        let fam = ga_family(&x, 5).unwrap();
        assert_eq!(fam.case, FamilyCase::Radical);
        assert!(fam.checks.all());
    }

    #[test]
    fn automorphism_checks() {
        let x = quadric(Field::Q, "x1^2 + x2^2 + x3^2 - 1");
        let vars = x.variables.clone();
        assert!(check_automorphism(&x, &PolyMap::identity(&vars)).unwrap());
        let perm = PolyMap::new(vars.clone(), vec![Polynomial::var("x2"), -Polynomial::var("x3"), Polynomial::var("x1")]).unwrap();
        assert!(check_automorphism(&x, &perm).unwrap());
        let shift = PolyMap::new(vars.clone(), vec![&Polynomial::var("x1") + &Polynomial::one(), Polynomial::var("x2"), Polynomial::var("x3")]).unwrap();
        assert!(!check_automorphism(&x, &shift).unwrap());
    }

    #[test]
    fn verdicts() {
        let s2 = quadric(Field::R, "x0^2 + x1^2 + x2^2 - 1");
        let v = group_verdict(&s2, false, 5).unwrap();
        assert_eq!((v.verdict, v.named_group.as_deref()), (GroupKind::PgoWInV, Some("O(3)")));
        let s3 = quadric(Field::R, "x0^2 + x1^2 + x2^2 + x3^2 - 1");
        assert_eq!(group_verdict(&s3, false, 5).unwrap().verdict, GroupKind::Unknown);
        let h = quadric(Field::Q, "x1*x2 + x3^2 - 1");
        let v = group_verdict(&h, false, 5).unwrap();
        assert_eq!(v.verdict, GroupKind::InfiniteDimensional);
        assert!(v.family.is_some());
        let q = QuadraticForm::diagonal_ints(Field::Q, &[1, 1, 1, 7]).unwrap();
        assert_eq!(complement_group_verdict(&q).unwrap().verdict, GroupKind::PgoV);
    }
}
