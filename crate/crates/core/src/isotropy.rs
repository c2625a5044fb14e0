//! Isotropy decisions, isotropic witnesses, Witt decomposition and the first
//! Witt index for the cases that are settled by known theorems.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{hilbert_symbol, is_local_square, Place, Rational, SquareClass};
use crate::linalg::independent_subset;
use crate::qform::{direct_sum, scale, Field, FormInvariants, QuadraticForm};
use crate::ruledness::{binary_divisibility_search, divisibility_possible, DivisibilityCertificate, DivisorCandidates};
use crate::trace::{ser_int_vecs, ser_ints, ser_rationals, TraceStep};

/// Candidate prefixes examined per dimension before a capped search gives up.
pub const CANDIDATES_PER_DIMENSION: u64 = 10_000;
pub const DEFAULT_HEIGHT_BOUND: u64 = 10;

// ---------------------------------------------------------------------------
// Invariant-level state

/// Invariants of a nondegenerate form, enough to decide isotropy and to strip
/// hyperbolic planes without an explicit basis.
#[derive(Debug, Clone)]
struct Kernel {
    field: Field,
    dim: usize,
    det: SquareClass,
    hasse: BTreeMap<Place, i8>,
    signature: Option<(usize, usize)>,
}

impl Kernel {
    fn of(inv: &FormInvariants) -> Kernel {
        Kernel {
            field: inv.field,
            dim: inv.rank(),
            det: inv.det.clone(),
            hasse: inv.hasse.clone(),
            signature: inv.signature,
        }
    }

    fn is_isotropic(&self) -> bool {
        let n = self.dim;
        if n < 2 {
            return false;
        }
        match self.field {
            Field::R => matches!(self.signature, Some((p, q)) if p > 0 && q > 0),
            Field::Fp(_) => n >= 3 || self.field.square_class(&(-self.det.to_rational())).is_ok_and(|c| c.is_square()),
            Field::Q => {
                if n == 2 {
                    return self.det.neg().is_square();
                }
                if !matches!(self.signature, Some((p, q)) if p > 0 && q > 0) {
                    return false;
                }
                self.hasse
                    .iter()
                    .filter(|(v, _)| **v != Place::Real)
                    .all(|(v, &eps)| locally_isotropic(n, &self.det, eps, v))
            }
        }
    }

    fn strip_hyperbolic_plane(&mut self) {
        self.dim -= 2;
        self.det = match self.field {
            Field::Fp(_) => self.field.square_class(&(-self.det.to_rational())).expect("nonzero"),
            _ => self.det.neg(),
        };
        if let Some((p, q)) = self.signature {
            self.signature = Some((p - 1, q - 1));
        }
        let m1 = SquareClass::minus_one();
        for (v, eps) in self.hasse.iter_mut() {
            *eps *= hilbert_symbol(&m1, &self.det, v);
        }
    }

    fn into_invariants(self) -> Result<FormInvariants> {
        let disc = signed_class(self.field, &self.det, self.dim)?;
        let hasse = if self.dim == 0 { self.hasse.into_keys().map(|v| (v, 1)).collect() } else { self.hasse };
        let hasse = FormInvariants::canonical_hasse(hasse, &self.det)?;
        Ok(FormInvariants {
            field: self.field,
            dimension: self.dim,
            radical_dimension: 0,
            det: self.det,
            disc,
            signature: self.signature,
            hasse,
        })
    }
}

fn signed_class(field: Field, det: &SquareClass, rank: usize) -> Result<SquareClass> {
    if (rank * rank.saturating_sub(1) / 2) % 2 == 0 {
        return Ok(det.clone());
    }
    match field {
        Field::Fp(_) => field.square_class(&(-det.to_rational())),
        _ => Ok(det.neg()),
    }
}

/// Isotropy over ℚ_p of a nondegenerate form of dimension n ≥ 3 with
/// determinant class d and Hasse symbol ε.
fn locally_isotropic(n: usize, d: &SquareClass, eps: i8, v: &Place) -> bool {
    let m1 = SquareClass::minus_one();
    match n {
        0 | 1 => false,
        2 => is_local_square(&d.neg(), v),
        3 => hilbert_symbol(&m1, &d.neg(), v) == eps,
        4 => !is_local_square(d, v) || eps == hilbert_symbol(&m1, &m1, v),
        _ => true,
    }
}

/// Hasse symbol of m hyperbolic planes at v.
pub fn hyperbolic_hasse(m: usize, v: &Place) -> i8 {
    let m1 = SquareClass::minus_one();
    if (m * m.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        hilbert_symbol(&m1, &m1, v)
    }
}

pub fn is_isotropic(q: &QuadraticForm) -> Result<bool> {
    let inv = q.invariants()?;
    if inv.radical_dimension > 0 {
        return Ok(true);
    }
    Ok(Kernel::of(&inv).is_isotropic())
}

// ---------------------------------------------------------------------------
// Witness search

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessSearch {
    pub height_bound: u64,
    /// Cap on examined candidate prefixes; `None` searches the whole box.
    pub max_candidates: Option<u64>,
}

impl WitnessSearch {
    pub fn exhaustive(height_bound: u64) -> Self {
        WitnessSearch { height_bound, max_candidates: None }
    }

    /// Height bound with the default cap of `CANDIDATES_PER_DIMENSION · dim`.
    pub fn capped(height_bound: u64, dim: usize) -> Self {
        WitnessSearch { height_bound, max_candidates: Some(CANDIDATES_PER_DIMENSION * dim as u64) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessOutcome {
    Found(#[serde(serialize_with = "ser_ints")] Vec<BigInt>),
    /// The whole height box was searched.
    Exhausted,
    /// The candidate cap was reached first.
    Truncated,
}

impl WitnessOutcome {
    pub fn found(self) -> Option<Vec<BigInt>> {
        match self {
            WitnessOutcome::Found(v) => Some(v),
            _ => None,
        }
    }
}

/// Primitive integer isotropic vector of sup-norm at most `height_bound`.
/// Searches shell by shell; within a shell the reported vector is the least
/// one in the order that compares the last coordinate first and ranks values
/// as 0, 1, -1, 2, -2, ….
pub fn isotropic_witness(q: &QuadraticForm, height_bound: u64) -> Option<Vec<BigInt>> {
    search_witness(q, &WitnessSearch::exhaustive(height_bound)).found()
}

pub fn search_witness(q: &QuadraticForm, opts: &WitnessSearch) -> WitnessOutcome {
    let n = q.dim();
    let h = opts.height_bound;
    if h == 0 {
        return WitnessOutcome::Exhausted;
    }
    match q.field() {
        Field::Fp(p) => search_mod_p(q, p, h, opts.max_candidates),
        Field::Q | Field::R => {
            if let Ok(inv) = q.invariants() {
                if let (0, Some((a, b))) = (inv.radical_dimension, inv.signature) {
                    if a == 0 || b == 0 {
                        return WitnessOutcome::Exhausted;
                    }
                }
            }
            let coeffs = integral_coefficients(q);
            let cmax = coeffs.iter().flatten().map(|c| c.magnitude().clone()).max().unwrap_or_default();
            let small = cmax.bits() < 40 && h < (1 << 12) && n < 64;
            if small {
                let c: Vec<Vec<i128>> = coeffs.iter().map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect()).collect();
                shell_search(&c, n, h as i64, opts.max_candidates)
            } else {
                shell_search(&coeffs, n, h as i64, opts.max_candidates)
            }
        }
    }
}

/// Upper-triangular integer coefficients of a positive multiple of q.
fn integral_coefficients(q: &QuadraticForm) -> Vec<Vec<BigInt>> {
    let n = q.dim();
    let l = q.coefficients().values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for ((i, j), c) in q.coefficients() {
        out[*i][*j] = (c * Rational::from_integer(l.clone())).to_integer();
    }
    out
}

fn rank_of(v: i64) -> u64 {
    match v.cmp(&0) {
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 2 * v as u64 - 1,
        std::cmp::Ordering::Less => 2 * v.unsigned_abs(),
    }
}

fn less_in_order(a: &[i64], b: &[i64]) -> bool {
    for i in (0..a.len()).rev() {
        let (ra, rb) = (rank_of(a[i]), rank_of(b[i]));
        if ra != rb {
            return ra < rb;
        }
    }
    false
}

fn primitive(v: &[i64]) -> Vec<BigInt> {
    let g = v.iter().fold(0i64, |g, x| g.gcd(x));
    v.iter().map(|x| BigInt::from(x / g.max(1))).collect()
}

/// Advances `x` through [-s, s]^len; false when wrapped around.
fn odometer(x: &mut [i64], s: i64) -> bool {
    for xi in x.iter_mut() {
        if *xi < s {
            *xi += 1;
            return true;
        }
        *xi = -s;
    }
    false
}

fn shell_search<T>(c: &[Vec<T>], n: usize, h: i64, cap: Option<u64>) -> WitnessOutcome
where
    T: Clone + Integer + Roots + Signed + From<i64>,
{
    let last = n - 1;
    let mut count = 0u64;
    for s in 1..=h {
        let mut best: Option<Vec<i64>> = None;
        let mut xp = vec![-s; last];
        loop {
            count += 1;
            if cap.is_some_and(|c| count > c) {
                return WitnessOutcome::Truncated;
            }
            let m = xp.iter().map(|x| x.abs()).max().unwrap_or(0);
            let a = c[last][last].clone();
            let mut b = T::zero();
            let mut cc = T::zero();
            for i in 0..last {
                let xi = T::from(xp[i]);
                b = b + c[i][last].clone() * xi.clone();
                for j in i..last {
                    cc = cc + c[i][j].clone() * xi.clone() * T::from(xp[j]);
                }
            }
            let mut consider = |t: i64| {
                if t.abs() > s || (m < s && t.abs() < s) || (m == 0 && t == 0) {
                    return;
                }
                let mut v = xp.clone();
                v.push(t);
                if best.as_ref().is_none_or(|bv| less_in_order(&v, bv)) {
                    best = Some(v);
                }
            };
            if !a.is_zero() {
                let disc = b.clone() * b.clone() - T::from(4) * a.clone() * cc.clone();
                if !disc.is_negative() {
                    let r = disc.sqrt();
                    if r.clone() * r.clone() == disc {
                        let two_a = T::from(2) * a.clone();
                        for num in [-b.clone() + r.clone(), -b.clone() - r] {
                            if num.is_multiple_of(&two_a) {
                                if let Some(t) = bounded_i64(&(num / two_a.clone()), s) {
                                    consider(t);
                                }
                            }
                        }
                    }
                }
            } else if !b.is_zero() {
                let num = -cc;
                if num.is_multiple_of(&b) {
                    if let Some(t) = bounded_i64(&(num / b), s) {
                        consider(t);
                    }
                }
            } else if cc.is_zero() {
                consider(0);
                consider(s);
            }
            if !odometer(&mut xp, s) {
                break;
            }
        }
        if let Some(v) = best {
            return WitnessOutcome::Found(primitive(&v));
        }
    }
    WitnessOutcome::Exhausted
}

fn bounded_i64<T: Integer + Signed + From<i64> + Clone>(t: &T, s: i64) -> Option<i64> {
    if t.abs() > T::from(s) {
        return None;
    }
    // |t| ≤ s fits; recover it by counting through the small range.
    let mut lo = -s;
    let mut hi = s;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if T::from(mid) < *t {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

fn search_mod_p(q: &QuadraticForm, p: u64, h: u64, cap: Option<u64>) -> WitnessOutcome {
    let n = q.dim();
    let pm = p as i128;
    let coeffs: Vec<((usize, usize), i128)> =
        q.coefficients().iter().map(|(k, c)| (*k, c.to_integer().to_i128().expect("residue fits"))).collect();
    let h = h.min((p - 1) / 2) as i64;
    let mut count = 0u64;
    for s in 1..=h {
        let mut best: Option<Vec<i64>> = None;
        let mut x = vec![-s; n];
        loop {
            if x.iter().any(|v| v.abs() == s) {
                count += 1;
                if cap.is_some_and(|c| count > c) {
                    return WitnessOutcome::Truncated;
                }
                let mut acc: i128 = 0;
                for ((i, j), c) in &coeffs {
                    acc = (acc + c * (x[*i] as i128) % pm * (x[*j] as i128)).rem_euclid(pm);
                }
                if acc == 0 && best.as_ref().is_none_or(|bv| less_in_order(&x, bv)) {
                    best = Some(x.clone());
                }
            }
            if !odometer(&mut x, s) {
                break;
            }
        }
        if let Some(v) = best {
            return WitnessOutcome::Found(primitive(&v));
        }
    }
    WitnessOutcome::Exhausted
}

pub fn to_rational_vector(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

// ---------------------------------------------------------------------------
// Witt decomposition

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WittDecomposition {
    pub witt_index: usize,
    pub anisotropic_invariants: FormInvariants,
    pub radical_dimension: usize,
}

pub fn witt_decompose(q: &QuadraticForm) -> Result<WittDecomposition> {
    let inv = q.invariants()?;
    let mut k = Kernel::of(&inv);
    let mut m = 0;
    while k.is_isotropic() {
        k.strip_hyperbolic_plane();
        m += 1;
    }
    Ok(WittDecomposition { witt_index: m, anisotropic_invariants: k.into_invariants()?, radical_dimension: inv.radical_dimension })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructiveSplitting {
    /// Hyperbolic planes split off explicitly.
    pub planes: usize,
    /// Isotropic vectors used, in the coordinates of each successive complement.
    #[serde(serialize_with = "ser_int_vecs")]
    pub witnesses: Vec<Vec<BigInt>>,
    /// Diagonal entries of the final complement.
    #[serde(serialize_with = "ser_rationals")]
    pub remainder: Vec<Rational>,
    /// Whether the last witness search covered its whole box.
    pub exhausted: bool,
}

/// Splits hyperbolic planes off the nondegenerate part one at a time, using
/// searched witnesses. Over ℚ each diagonal entry is first replaced by its
/// squarefree class representative.
pub fn constructive_witt_index(q: &QuadraticForm, opts: &WitnessSearch) -> Result<ConstructiveSplitting> {
    let field = q.field();
    let d = q.diagonalize();
    let mut entries: Vec<Rational> = d.entries[..d.rank]
        .iter()
        .map(|a| match field {
            Field::Q => field.square_class(a).map(|c| c.to_rational()),
            _ => Ok(a.clone()),
        })
        .collect::<Result<_>>()?;
    let mut planes = 0;
    let mut witnesses = Vec::new();
    loop {
        if entries.len() < 2 {
            return Ok(ConstructiveSplitting { planes, witnesses, remainder: entries, exhausted: true });
        }
        let cur = QuadraticForm::diagonal(field, &entries)?;
        let x = match search_witness(&cur, opts) {
            WitnessOutcome::Found(x) => x,
            other => {
                let exhausted = other == WitnessOutcome::Exhausted;
                return Ok(ConstructiveSplitting { planes, witnesses, remainder: entries, exhausted });
            }
        };
        let xr = to_rational_vector(&x);
        let n = entries.len();
        let unit = |i: usize| -> Vec<Rational> { (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect() };
        let j = (0..n).find(|&j| !cur.polar(&xr, &unit(j)).is_zero()).expect("nondegenerate");
        let e = unit(j);
        let c = field_div(field, &cur.evaluate(&e), &cur.polar(&xr, &e))?;
        let y: Vec<Rational> = (0..n).map(|k| field_red(field, &e[k] - &c * &xr[k])).collect();
        let pxy = cur.polar(&xr, &y);
        let comp: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let ei = unit(i);
                let a = field_div(field, &cur.polar(&ei, &y), &pxy).expect("nonzero");
                let b = field_div(field, &cur.polar(&ei, &xr), &pxy).expect("nonzero");
                (0..n).map(|k| field_red(field, &ei[k] - &a * &xr[k] - &b * &y[k])).collect()
            })
            .collect();
        let basis: Vec<Vec<Rational>> = independent_subset(&comp).into_iter().map(|i| comp[i].clone()).collect();
        witnesses.push(x);
        planes += 1;
        if basis.is_empty() {
            entries.clear();
            continue;
        }
        let sub = cur.restrict(&basis)?.diagonalize();
        entries = sub.entries[..sub.rank]
            .iter()
            .map(|a| match field {
                Field::Q => field.square_class(a).map(|c| c.to_rational()),
                _ => Ok(a.clone()),
            })
            .collect::<Result<_>>()?;
    }
}

fn field_red(field: Field, r: Rational) -> Rational {
    field.reduce(&r).expect("integral value reduces")
}

fn field_div(field: Field, a: &Rational, b: &Rational) -> Result<Rational> {
    match field {
        Field::Fp(_) => field.reduce(&(a * field.reduce(&(Rational::one() / b))?)),
        _ => Ok(a / b),
    }
}

// ---------------------------------------------------------------------------
// First Witt index

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstWittIndexResult {
    /// `None` when no implemented rule settles the value.
    #[serde(serialize_with = "ser_determination")]
    pub value: Option<usize>,
    pub rule: String,
    pub justification: Vec<TraceStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisibility: Option<DivisibilityCertificate>,
}

fn ser_determination<S: serde::Serializer>(v: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(n) => s.serialize_u64(*n as u64),
        None => s.serialize_str("Undetermined"),
    }
}

impl FirstWittIndexResult {
    fn settled(value: usize, rule: &str, steps: Vec<TraceStep>) -> Self {
        FirstWittIndexResult { value: Some(value), rule: rule.into(), justification: steps, divisibility: None }
    }

    fn open(rule: &str, steps: Vec<TraceStep>) -> Self {
        FirstWittIndexResult { value: None, rule: rule.into(), justification: steps, divisibility: None }
    }
}

pub const RULE_BINARY: &str = "binary";
pub const RULE_HOFFMANN: &str = "hoffmann_2a_plus_1";
pub const RULE_REAL_NEIGHBOR: &str = "real_special_neighbor";
pub const RULE_DIM4: &str = "dim4_discriminant";
pub const RULE_DIM6: &str = "dim6_binary_divisibility";
pub const RULE_DIM7: &str = "dim7_pure_subform";
pub const RULE_DIM8: &str = "dim8_pfister_or_divisible";
pub const RULE_OPEN: &str = "undetermined";

fn is_two_power_plus_one(m: usize) -> bool {
    m >= 2 && (m - 1).is_power_of_two()
}

/// m - 2^{n-1} where 2^{n-1} < m ≤ 2^n.
pub fn neighbor_first_witt_index(m: usize) -> usize {
    let top = m.next_power_of_two();
    m - top / 2
}

/// Whether all Hasse symbols agree with those of (dim/2) hyperbolic planes and
/// the discriminant is trivial: the form lies in I³ when dim = 8.
pub(crate) fn clifford_trivial(inv: &FormInvariants) -> bool {
    let m = inv.rank() / 2;
    inv.disc.is_square() && inv.hasse.iter().all(|(v, &e)| e == hyperbolic_hasse(m, v))
}

pub fn first_witt_index(q: &QuadraticForm) -> Result<FirstWittIndexResult> {
    let field = q.field();
    if let Field::Fp(p) = field {
        return Err(Error::UnsupportedField(format!("F{p}")));
    }
    let inv = q.invariants()?;
    let dim = q.dim();
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    if inv.radical_dimension > 0 || Kernel::of(&inv).is_isotropic() {
        return Err(Error::IsotropicInput);
    }
    if dim == 2 {
        return Ok(FirstWittIndexResult::settled(1, RULE_BINARY, vec![TraceStep::new(RULE_BINARY, "anisotropic binary form splits one plane over its own function field")]));
    }
    if is_two_power_plus_one(dim) {
        return Ok(FirstWittIndexResult::settled(
            1,
            RULE_HOFFMANN,
            vec![TraceStep::new(RULE_HOFFMANN, format!("dimension {dim} = 2^a + 1 forces i1 = 1 (Hoffmann)"))],
        ));
    }
    if field == Field::R {
        let v = neighbor_first_witt_index(dim);
        let half = dim.next_power_of_two() / 2;
        return Ok(FirstWittIndexResult::settled(
            v,
            RULE_REAL_NEIGHBOR,
            vec![
                TraceStep::new(RULE_REAL_NEIGHBOR, format!("definite form of dimension {dim} is a special neighbor of a {}-fold Pfister form", dim.next_power_of_two().trailing_zeros())),
                TraceStep::new("neighbor_first_witt_index", format!("dimension {half} + {v} gives i1 = {v}")),
            ],
        ));
    }
    match dim {
        4 => {
            if inv.disc.is_square() {
                Ok(FirstWittIndexResult::settled(2, RULE_DIM4, vec![TraceStep::new(RULE_DIM4, "discriminant is a square: similar to a 2-fold Pfister form")]))
            } else {
                Ok(FirstWittIndexResult::settled(1, RULE_DIM4, vec![TraceStep::new(RULE_DIM4, format!("discriminant {} is not a square", inv.disc))]))
            }
        }
        6 => {
            let b = inv.disc.clone();
            let mut steps = vec![TraceStep::new(RULE_DIM6, format!("determinant comparison forces the binary divisor <<{b}>>"))];
            if !divisibility_possible(q, &b)? {
                steps.push(TraceStep::new(RULE_DIM6, format!("q is not hyperbolic over Q(sqrt({b})) at some place: not divisible")));
                return Ok(FirstWittIndexResult::settled(1, RULE_DIM6, steps));
            }
            match binary_divisibility_search(q, &DivisorCandidates::Forced)? {
                Some(cert) => {
                    steps.push(TraceStep::new(RULE_DIM6, format!("divisible by <<{}>> with cofactor {}", cert.binary_class, cert.cofactor_label())));
                    let mut r = FirstWittIndexResult::settled(2, RULE_DIM6, steps);
                    r.divisibility = Some(cert);
                    Ok(r)
                }
                None => {
                    steps.push(TraceStep::new(RULE_OPEN, "local conditions allow divisibility but no cofactor was found within bounds"));
                    Ok(FirstWittIndexResult::open(RULE_DIM6, steps))
                }
            }
        }
        7 => {
            let c = inv.det.to_rational();
            let phi = direct_sum(&scale(q, &c)?, &QuadraticForm::diagonal(field, &[Rational::one()])?)?;
            let pinv = phi.invariants()?;
            let mut steps = vec![TraceStep::new(RULE_DIM7, format!("scale by det = {} and add <1>", inv.det))];
            if clifford_trivial(&pinv) {
                steps.push(TraceStep::new(RULE_DIM7, "the result lies in I^3: q is similar to the pure subform of a 3-fold Pfister form"));
                Ok(FirstWittIndexResult::settled(3, RULE_DIM7, steps))
            } else {
                steps.push(TraceStep::new(RULE_DIM7, "the result has a nontrivial Clifford invariant: not a Pfister neighbor, i1 = 1"));
                Ok(FirstWittIndexResult::settled(1, RULE_DIM7, steps))
            }
        }
        8 => {
            if !inv.disc.is_square() {
                return Ok(FirstWittIndexResult::settled(
                    1,
                    RULE_DIM8,
                    vec![TraceStep::new(RULE_DIM8, format!("discriminant {} is not a square: neither Pfister-similar nor divisible by a binary form", inv.disc))],
                ));
            }
            if clifford_trivial(&inv) {
                return Ok(FirstWittIndexResult::settled(4, RULE_DIM8, vec![TraceStep::new(RULE_DIM8, "trivial discriminant and Clifford invariant: similar to a 3-fold Pfister form")]));
            }
            let mut steps = vec![TraceStep::new(RULE_DIM8, "trivial discriminant, nontrivial Clifford invariant")];
            match binary_divisibility_search(q, &DivisorCandidates::Forced)? {
                Some(cert) => {
                    steps.push(TraceStep::new(RULE_DIM8, format!("divisible by <<{}>> with cofactor {}", cert.binary_class, cert.cofactor_label())));
                    let mut r = FirstWittIndexResult::settled(2, RULE_DIM8, steps);
                    r.divisibility = Some(cert);
                    Ok(r)
                }
                None => {
                    steps.push(TraceStep::new(RULE_OPEN, "no binary divisor certificate found within bounds"));
                    Ok(FirstWittIndexResult::open(RULE_DIM8, steps))
                }
            }
        }
        _ => Ok(FirstWittIndexResult::open(RULE_OPEN, vec![TraceStep::new(RULE_OPEN, format!("no implemented rule settles dimension {dim} over Q"))])),
    }
}
