//! The multiplicative birational map onto b₁P ⊥ … ⊥ b_{r-1}P ⊥ ⟨b_r⟩,
//! divisibility of a form by a binary Pfister form, and ruledness verdicts for
//! anisotropic quadrics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{is_local_square, relevant_places, Rational, SquareClass};
use crate::isotropy::{first_witt_index, hyperbolic_hasse, is_isotropic, witt_decompose, FirstWittIndexResult};
use crate::pfister::{cd_product, pfister_norm};
use crate::poly::{PolyMap, Polynomial};
use crate::qform::{direct_sum, is_equivalent, scale, tensor, Field, QuadraticForm};
use crate::trace::TraceStep;

// ---------------------------------------------------------------------------
// The map

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalMapCertificate {
    pub fold: usize,
    pub p1_dim: usize,
    pub r: usize,
    /// Coordinates x1_0, …, x{r}_{p1_dim-1} of the source quadric.
    pub coordinates: Vec<String>,
    /// b₁P(x₁) + … + b_{r-1}P(x_{r-1}) + b_r·P₁(x_r).
    pub source: Polynomial,
    /// b₁P(y₁) + … + b_{r-1}P(y_{r-1}) + b_r·y_r².
    pub target: Polynomial,
    pub target_coordinates: Vec<String>,
    /// (x_r·x₁, …, x_r·x_{r-1}, P(x_r)).
    pub map: PolyMap,
    /// target∘map - P(x_r)·source; zero when the certificate is valid.
    pub identity: Polynomial,
    /// P₁ has dimension at least 2, so the source is ruled by this map.
    pub ruled: bool,
}

impl RationalMapCertificate {
    pub fn is_valid(&self) -> bool {
        self.identity.is_zero()
    }

    /// The source quadric as a form, when all parameters are numeric.
    pub fn source_form(&self, field: Field) -> Result<QuadraticForm> {
        QuadraticForm::from_polynomial(field, &self.source, &self.coordinates)
    }

    pub fn target_form(&self, field: Field) -> Result<QuadraticForm> {
        QuadraticForm::from_polynomial(field, &self.target, &self.target_coordinates)
    }
}

fn block_names(prefix: &str, i: usize, len: usize) -> Vec<String> {
    (0..len).map(|k| format!("{prefix}{i}_{k}")).collect()
}

/// Builds the map for P = ⟨⟨params⟩⟩ (fold ≤ 3), P₁ the span of the first
/// `p1_dim` coordinates, and scalars b₁..b_r. Parameters and scalars may be
/// symbolic.
pub fn ahmad_ohm_map(params: &[Polynomial], p1_dim: usize, scalars: &[Polynomial]) -> Result<RationalMapCertificate> {
    let fold = params.len();
    if fold == 0 || fold > 3 {
        return Err(Error::FoldOutOfRange(fold));
    }
    if params.iter().any(|a| a.is_zero()) {
        return Err(Error::ZeroParameter);
    }
    if scalars.iter().any(|b| b.is_zero()) {
        return Err(Error::ZeroScalar);
    }
    let dim = 1usize << fold;
    if p1_dim == 0 || p1_dim > dim {
        return Err(Error::InvalidMap(format!("subform dimension {p1_dim} outside 1..={dim}")));
    }
    let r = scalars.len();
    if r == 0 {
        return Err(Error::InvalidMap("at least one scalar is required".into()));
    }
    let vars = |names: &[String]| -> Vec<Polynomial> { names.iter().map(|v| Polynomial::var(v)).collect() };
    let mut coordinates = Vec::new();
    let mut blocks = Vec::new();
    for i in 1..r {
        let names = block_names("x", i, dim);
        blocks.push(vars(&names));
        coordinates.extend(names);
    }
    let last_names = block_names("x", r, p1_dim);
    let mut xr = vars(&last_names);
    xr.resize(dim, Polynomial::zero());
    coordinates.extend(last_names);

    let p_xr = pfister_norm(params, &xr);
    let mut source = scalars[r - 1].clone() * p_xr.clone();
    let mut components = Vec::new();
    let mut image_value = &(&scalars[r - 1] * &p_xr) * &p_xr;
    let mut target = Polynomial::zero();
    let mut target_coordinates = Vec::new();
    for (i, xi) in blocks.iter().enumerate() {
        source = &source + &(&scalars[i] * &pfister_norm(params, xi));
        let prod = cd_product(params, &xr, xi);
        image_value = &image_value + &(&scalars[i] * &pfister_norm(params, &prod));
        components.extend(prod);
        let ynames = block_names("y", i + 1, dim);
        target = &target + &(&scalars[i] * &pfister_norm(params, &vars(&ynames)));
        target_coordinates.extend(ynames);
    }
    components.push(p_xr.clone());
    let ylast = format!("y{r}");
    let yl = Polynomial::var(&ylast);
    target = &target + &(&scalars[r - 1] * &(&yl * &yl));
    target_coordinates.push(ylast);
    let identity = &image_value - &(&p_xr * &source);

    let mut src = coordinates.clone();
    for p in params.iter().chain(scalars) {
        for v in p.variables() {
            if !src.contains(v) {
                src.push(v.clone());
            }
        }
    }
    Ok(RationalMapCertificate {
        fold,
        p1_dim,
        r,
        coordinates,
        source,
        target,
        target_coordinates,
        map: PolyMap::new(src, components)?,
        identity,
        ruled: p1_dim >= 2,
    })
}

/// `ahmad_ohm_map` with numeric parameters and scalars.
pub fn ahmad_ohm_certificate(params: &[Rational], p1_dim: usize, scalars: &[Rational]) -> Result<RationalMapCertificate> {
    let p: Vec<Polynomial> = params.iter().cloned().map(Polynomial::constant).collect();
    let b: Vec<Polynomial> = scalars.iter().cloned().map(Polynomial::constant).collect();
    ahmad_ohm_map(&p, p1_dim, &b)
}

// ---------------------------------------------------------------------------
// Divisibility by a binary form

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorCandidates {
    /// b = disc(q) in dimension 2 mod 4; classes -a_i·a_j of the diagonal
    /// entries and small squarefree integers in dimension 0 mod 4.
    Forced,
    Classes(Vec<SquareClass>),
}

/// q ≅ ⟨⟨b⟩⟩ ⊗ τ with τ diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityCertificate {
    pub binary_class: SquareClass,
    pub cofactor: Vec<SquareClass>,
    pub verified: bool,
}

impl DivisibilityCertificate {
    pub fn form(&self, field: Field) -> Result<QuadraticForm> {
        let binary = QuadraticForm::diagonal(field, &[Rational::one(), -self.binary_class.to_rational()])?;
        let tau: Vec<Rational> = self.cofactor.iter().map(|c| c.to_rational()).collect();
        tensor(&binary, &QuadraticForm::diagonal(field, &tau)?)
    }

    pub fn cofactor_label(&self) -> String {
        let s: Vec<String> = self.cofactor.iter().map(|c| c.to_string()).collect();
        format!("<{}>", s.join(","))
    }
}

fn even_rank(q: &QuadraticForm) -> Result<usize> {
    let n = q.dim();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    Ok(n / 2)
}

/// Whether q becomes hyperbolic over k(√b), which is equivalent to q being
/// divisible by ⟨⟨b⟩⟩. Over ℚ this is decided place by place: wherever b is a
/// local square q must be locally hyperbolic; elsewhere the quadratic
/// extension kills the Clifford invariant.
pub fn divisibility_possible(q: &QuadraticForm, b: &SquareClass) -> Result<bool> {
    let m = even_rank(q)?;
    let inv = q.invariants()?;
    if inv.radical_dimension > 0 {
        return Ok(false);
    }
    match q.field() {
        Field::Fp(_) => Err(Error::UnsupportedField(q.field().label())),
        Field::R => {
            let (p, n) = inv.signature.expect("real signature");
            Ok(if b.is_negative() { p % 2 == 0 && n % 2 == 0 } else { p == n })
        }
        Field::Q => {
            if b.is_square() {
                return Ok(witt_decompose(q)?.witt_index == m);
            }
            let expected = if m % 2 == 0 { SquareClass::one() } else { b.clone() };
            if inv.disc != expected {
                return Ok(false);
            }
            let mut places: Vec<_> = inv.hasse.keys().cloned().collect();
            places.extend(relevant_places([b])?);
            places.sort();
            places.dedup();
            for v in &places {
                if !is_local_square(b, v) {
                    continue;
                }
                let ok = match v {
                    crate::exactnum::Place::Real => inv.signature == Some((m, m)),
                    _ => inv.hasse_at(v) == hyperbolic_hasse(m, v),
                };
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn small_squarefree(limit: i64) -> Vec<SquareClass> {
    let mut out = Vec::new();
    for n in 1..=limit {
        for s in [-n, n] {
            let c = SquareClass::of_int(s).expect("nonzero");
            if c.representative() == &BigInt::from(s) && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

fn divisor_candidates(q: &QuadraticForm, mode: &DivisorCandidates) -> Result<Vec<SquareClass>> {
    let mut out: Vec<SquareClass> = Vec::new();
    match mode {
        DivisorCandidates::Classes(c) => out.extend(c.iter().cloned()),
        DivisorCandidates::Forced => {
            if q.field() == Field::R {
                return Ok(vec![SquareClass::minus_one()]);
            }
            if q.dim() % 4 == 2 {
                out.push(q.invariants()?.disc);
            } else {
                let a = q.diagonal_classes()?;
                for i in 0..a.len() {
                    for j in i + 1..a.len() {
                        out.push(a[i].mul(&a[j])?.neg());
                    }
                }
                out.extend(small_squarefree(30));
            }
        }
    }
    let mut seen = Vec::new();
    for c in out {
        if !seen.contains(&c) {
            seen.push(c);
        }
    }
    Ok(seen)
}

/// Square classes of values of q: diagonal entries first, then values on
/// primitive vectors of support at most 2 and sup-norm at most `height`,
/// smallest representatives first.
fn represented_classes(q: &QuadraticForm, height: i64, limit: usize) -> Result<Vec<SquareClass>> {
    let field = q.field();
    let n = q.dim();
    let mut classes: Vec<SquareClass> = q.diagonal_classes()?;
    let mut x = vec![Rational::zero(); n];
    for i in 0..n {
        for j in i..n {
            for a in 0..=height {
                for c in -height..=height {
                    let (a, c) = if i == j { (a, 0) } else { (a, c) };
                    if a.gcd(&c) != 1 || (a == 0 && c <= 0) {
                        continue;
                    }
                    x[i] = Rational::from_integer(a.into());
                    if i != j {
                        x[j] = Rational::from_integer(c.into());
                    }
                    let v = q.evaluate(&x);
                    x[i] = Rational::zero();
                    x[j] = Rational::zero();
                    if !v.is_zero() {
                        classes.push(field.square_class(&v)?);
                    }
                }
            }
        }
    }
    let diag_count = q.diagonal_classes()?.len();
    let (first, rest) = classes.split_at_mut(diag_count);
    rest.sort_by(|a, b| {
        let (ra, rb) = (a.representative(), b.representative());
        ra.abs().cmp(&rb.abs()).then(rb.cmp(ra))
    });
    let mut out: Vec<SquareClass> = Vec::new();
    for c in first.iter().chain(rest.iter()) {
        if !out.contains(c) {
            out.push(c.clone());
        }
        if out.len() == limit {
            break;
        }
    }
    Ok(out)
}

const VALUE_HEIGHT: i64 = 10;
const VALUE_CLASSES: usize = 48;
const COFACTOR_BUDGET: usize = 4000;

/// Whether ⟨⟨b⟩⟩ ⊗ ⟨t_1..t_k⟩ is a subform of q.
fn contains_multiple(q: &QuadraticForm, b: &SquareClass, tau: &[SquareClass]) -> Result<bool> {
    let cert = DivisibilityCertificate { binary_class: b.clone(), cofactor: tau.to_vec(), verified: false };
    let psi = cert.form(q.field())?;
    let sum = direct_sum(q, &scale(&psi, &-Rational::one())?)?;
    Ok(witt_decompose(&sum)?.witt_index >= psi.dim())
}

fn find_cofactor(q: &QuadraticForm, b: &SquareClass, m: usize, values: &[SquareClass]) -> Result<Option<Vec<SquareClass>>> {
    fn dfs(
        q: &QuadraticForm,
        b: &SquareClass,
        m: usize,
        values: &[SquareClass],
        start: usize,
        chosen: &mut Vec<SquareClass>,
        budget: &mut usize,
    ) -> Result<bool> {
        if chosen.len() == m {
            return Ok(true);
        }
        for (k, t) in values.iter().enumerate().skip(start) {
            if *budget == 0 {
                return Ok(false);
            }
            *budget -= 1;
            chosen.push(t.clone());
            if contains_multiple(q, b, chosen)? && dfs(q, b, m, values, k, chosen, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    let mut chosen = Vec::new();
    let mut budget = COFACTOR_BUDGET;
    Ok(if dfs(q, b, m, values, 0, &mut chosen, &mut budget)? { Some(chosen) } else { None })
}

/// Searches for q ≅ ⟨⟨b⟩⟩ ⊗ τ. Candidates b that fail the local test are
/// skipped; τ is assembled one entry at a time from square classes of values
/// of q, keeping ⟨⟨b⟩⟩ ⊗ τ a subform of q. A result is returned only after an
/// equivalence check; `None` means nothing was found within the bounds.
pub fn binary_divisibility_search(q: &QuadraticForm, candidates: &DivisorCandidates) -> Result<Option<DivisibilityCertificate>> {
    let m = even_rank(q)?;
    if let Field::Fp(_) = q.field() {
        return Err(Error::UnsupportedField(q.field().label()));
    }
    let bs = divisor_candidates(q, candidates)?;
    let mut values: Option<Vec<SquareClass>> = None;
    for b in bs {
        if !divisibility_possible(q, &b)? {
            continue;
        }
        if values.is_none() {
            values = Some(match q.field() {
                Field::R => vec![SquareClass::one(), SquareClass::minus_one()],
                _ => represented_classes(q, VALUE_HEIGHT, VALUE_CLASSES)?,
            });
        }
        if let Some(tau) = find_cofactor(q, &b, m, values.as_ref().expect("set above"))? {
            let mut cert = DivisibilityCertificate { binary_class: b, cofactor: tau, verified: false };
            cert.verified = is_equivalent(q, &cert.form(q.field())?)?;
            if cert.verified {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Verdicts

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ruledness {
    Ruled,
    NotRuled,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuledVerdict {
    pub verdict: Ruledness,
    pub i1: Option<FirstWittIndexResult>,
    pub certificate: Option<RationalMapCertificate>,
    pub divisibility: Option<DivisibilityCertificate>,
    pub trace: Vec<TraceStep>,
}

pub const RULE_ISOTROPIC: &str = "isotropic_rational";
pub const RULE_KARPENKO: &str = "not_ruled_karpenko";
pub const RULE_OPEN_DIMENSION: &str = "open_dimension";

/// A numeric certificate for q, accepted only if its source form is
/// equivalent to q.
fn checked_certificate(q: &QuadraticForm, params: &[Rational], p1_dim: usize, scalars: &[Rational]) -> Result<Option<RationalMapCertificate>> {
    let cert = ahmad_ohm_certificate(params, p1_dim, scalars)?;
    if cert.is_valid() && cert.ruled && is_equivalent(q, &cert.source_form(q.field())?)? {
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

fn certificate_for(q: &QuadraticForm, i1: &FirstWittIndexResult) -> Result<Option<RationalMapCertificate>> {
    let field = q.field();
    let m = q.dim();
    let a = q.diagonalize().entries;
    let minus_one = -Rational::one();
    if field == Field::R {
        let n = m.next_power_of_two().trailing_zeros() as usize;
        if n < 2 || n > 4 {
            return Ok(None);
        }
        let p1 = m - (1 << (n - 1));
        let s = if a[0].is_negative() { minus_one.clone() } else { Rational::one() };
        return checked_certificate(q, &vec![minus_one; n - 1], p1, &[s.clone(), s]);
    }
    if let Some(d) = &i1.divisibility {
        let tau: Vec<Rational> = d.cofactor.iter().map(|c| c.to_rational()).collect();
        return checked_certificate(q, &[d.binary_class.to_rational()], 2, &tau);
    }
    match (m, i1.value) {
        (4, Some(2)) => checked_certificate(q, &[-(&a[0] * &a[1])], 2, &[a[0].clone(), a[2].clone()]),
        (7, Some(3)) => {
            let c = q.invariants()?.det.to_rational();
            checked_certificate(q, &[minus_one.clone(), minus_one], 3, &[c.clone(), c])
        }
        (8, Some(4)) => checked_certificate(q, &[minus_one.clone(), minus_one], 4, &[a[0].clone(), a[0].clone()]),
        (8, Some(2)) | (6, Some(2)) => {
            let cert = binary_divisibility_search(q, &DivisorCandidates::Forced)?;
            match cert {
                Some(d) => {
                    let tau: Vec<Rational> = d.cofactor.iter().map(|c| c.to_rational()).collect();
                    checked_certificate(q, &[d.binary_class.to_rational()], 2, &tau)
                }
                None => Ok(None),
            }
        }
        _ => Ok(None),
    }
}

pub fn classify_ruledness(q: &QuadraticForm) -> Result<RuledVerdict> {
    let field = q.field();
    if let Field::Fp(_) = field {
        return Err(Error::UnsupportedField(field.label()));
    }
    let dim = q.dim();
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    if is_isotropic(q)? {
        return Ok(RuledVerdict {
            verdict: Ruledness::Ruled,
            i1: None,
            certificate: None,
            divisibility: None,
            trace: vec![TraceStep::new(RULE_ISOTROPIC, "isotropic: rational, hence ruled")],
        });
    }
    let i1 = first_witt_index(q)?;
    let mut trace = vec![TraceStep::new("first_witt_index", match i1.value {
        Some(v) => format!("i1 = {v} by rule {}", i1.rule),
        None => format!("i1 undetermined ({})", i1.rule),
    })];
    let verdict = match i1.value {
        Some(1) => {
            trace.push(TraceStep::new(RULE_KARPENKO, "an anisotropic quadric with i1 = 1 is not ruled (Karpenko)"));
            Ruledness::NotRuled
        }
        Some(_) if field == Field::Q && dim >= 10 => {
            trace.push(TraceStep::new(RULE_OPEN_DIMENSION, format!("dimension {dim}: ruledness beyond dimension 9 is open")));
            Ruledness::Undetermined
        }
        Some(v) => {
            let rule = match (field, dim) {
                (Field::R, _) => "ruled_special_neighbor",
                (_, 4) => "ruled_dim4_pfister_similar",
                (_, 6) => "ruled_dim6_binary_divisible",
                (_, 7) => "ruled_dim7_special_neighbor",
                (_, 8) if v == 4 => "ruled_dim8_pfister_similar",
                _ => "ruled_dim8_binary_divisible",
            };
            trace.push(TraceStep::new(rule, format!("i1 = {v} > 1 in dimension {dim}: q is ruled")));
            Ruledness::Ruled
        }
        None => {
            if dim >= 10 {
                trace.push(TraceStep::new(RULE_OPEN_DIMENSION, format!("dimension {dim}: ruledness beyond dimension 9 is open")));
            }
            Ruledness::Undetermined
        }
    };
    let certificate = if verdict == Ruledness::Ruled { certificate_for(q, &i1)? } else { None };
    if let Some(c) = &certificate {
        trace.push(TraceStep::new(
            "multiplicative_map",
            format!("P of fold {}, P1 of dimension {}, r = {}: identity verified", c.fold, c.p1_dim, c.r),
        ));
    }
    let divisibility = i1.divisibility.clone();
    Ok(RuledVerdict { verdict, i1: Some(i1), certificate, divisibility, trace })
}

/// The real quadric x₀² + … + x_n² = 0: ruled iff n is not a power of 2.
pub fn sphere_quadric_ruledness(n: usize) -> Result<RuledVerdict> {
    if n == 0 {
        return Err(Error::DimensionTooSmall(1));
    }
    classify_ruledness(&QuadraticForm::diagonal(Field::R, &vec![Rational::one(); n + 1])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qd(e: &[i64]) -> QuadraticForm {
        QuadraticForm::diagonal_ints(Field::Q, e).unwrap()
    }

    fn sym(names: &[&str]) -> Vec<Polynomial> {
        names.iter().map(|n| Polynomial::var(n)).collect()
    }

    #[test]
    fn map_examples() {
        let c = ahmad_ohm_map(&[Polynomial::from_int(-1), Polynomial::from_int(-1)], 4, &[Polynomial::one()]).unwrap();
        assert!(c.is_valid());
        let c = ahmad_ohm_map(&sym(&["a"]), 2, &sym(&["b1", "b2"])).unwrap();
        assert!(c.is_valid() && c.ruled);
        let c = ahmad_ohm_map(&sym(&["a", "b"]), 3, &sym(&["c1", "c2"])).unwrap();
        assert!(c.is_valid());
        assert_eq!(ahmad_ohm_map(&sym(&["a"]), 3, &sym(&["b"])).unwrap_err(), Error::InvalidMap("subform dimension 3 outside 1..=2".into()));
        assert_eq!(ahmad_ohm_map(&sym(&["a", "b", "c", "d"]), 1, &sym(&["b"])).unwrap_err(), Error::FoldOutOfRange(4));
        assert_eq!(ahmad_ohm_map(&sym(&["a"]), 1, &[Polynomial::zero()]).unwrap_err(), Error::ZeroScalar);
    }

    #[test]
    fn divisibility_examples() {
        let c = binary_divisibility_search(&qd(&[1; 6]), &DivisorCandidates::Forced).unwrap().unwrap();
        assert_eq!(c.binary_class, SquareClass::minus_one());
        assert_eq!(c.cofactor, vec![SquareClass::one(); 3]);
        let c = binary_divisibility_search(&qd(&[1, -2, 3, -6]), &DivisorCandidates::Forced).unwrap().unwrap();
        assert_eq!(c.binary_class, SquareClass::of_int(2).unwrap());
        assert!(c.verified);
        assert_eq!(binary_divisibility_search(&qd(&[1, 1, 1]), &DivisorCandidates::Forced), Err(Error::OddDimension(3)));
        // disc -7 is a square in Q_2, where the Hasse symbol is +1 but three
        // hyperbolic planes have (-1,-1)_2 = -1.
        let q = qd(&[1, 1, 1, 1, 1, 7]);
        assert!(!divisibility_possible(&q, &q.invariants().unwrap().disc).unwrap());
        assert_eq!(binary_divisibility_search(&q, &DivisorCandidates::Forced).unwrap(), None);
    }

    #[test]
    fn golden_verdicts() {
        let v = |e: &[i64]| classify_ruledness(&qd(e)).unwrap();
        let r = v(&[1, 1, 1, 1]);
        assert_eq!(r.verdict, Ruledness::Ruled);
        assert!(r.certificate.is_some());
        assert_eq!(v(&[1, 1, 1, 7]).verdict, Ruledness::NotRuled);
        assert_eq!(v(&[1; 5]).verdict, Ruledness::NotRuled);
        let r = v(&[1; 6]);
        assert_eq!(r.verdict, Ruledness::Ruled);
        assert!(r.divisibility.is_some() && r.certificate.is_some());
        let r = v(&[1; 7]);
        assert_eq!(r.verdict, Ruledness::Ruled);
        assert!(r.certificate.is_some());
        assert_eq!(v(&[1; 9]).verdict, Ruledness::NotRuled);
        assert_eq!(v(&[1; 8]).verdict, Ruledness::Ruled);
        assert_eq!(v(&[1, -1, 1]).trace[0].rule, RULE_ISOTROPIC);
        assert_eq!(v(&[1; 12]).verdict, Ruledness::Undetermined);
    }

    #[test]
    fn spheres() {
        for n in 1..=32usize {
            let r = sphere_quadric_ruledness(n).unwrap();
            let expect = if n.is_power_of_two() { Ruledness::NotRuled } else { Ruledness::Ruled };
            assert_eq!(r.verdict, expect, "n = {n}");
            if expect == Ruledness::Ruled && n < 16 {
                assert!(r.certificate.is_some(), "n = {n}");
            }
        }
    }
}
