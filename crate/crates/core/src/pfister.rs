//! Pfister forms, Cayley–Dickson multiplication, Pfister neighbors and Hopf
//! maps.
//!
//! Coordinate k of an n-fold Pfister form ⟨⟨a_1, …, a_n⟩⟩ carries the
//! coefficient Π (-a_{i+1}) over the set bits i of k, so the first parameter
//! varies fastest: ⟨⟨a, b⟩⟩ = ⟨1, -a, -b, ab⟩. The Cayley–Dickson product
//! uses the same indexing, with the parameter of the last doubling stage
//! attached to the top bit.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Rational};
use crate::isotropy::is_isotropic;
use crate::poly::{PolyMap, Polynomial};
use crate::qform::{direct_sum, is_equivalent, scale, Field, QuadraticForm};
use crate::trace::{ser_rational, ser_rationals, TraceStep};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PfisterForm {
    pub fold: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub params: Vec<Rational>,
    pub form: QuadraticForm,
}

/// Coefficient of coordinate k in ⟨⟨params⟩⟩, as a polynomial in symbolic
/// parameters.
pub fn pfister_coefficient(params: &[Polynomial], k: usize) -> Polynomial {
    let mut c = Polynomial::one();
    for (i, a) in params.iter().enumerate() {
        if k >> i & 1 == 1 {
            c = &c * &(-a);
        }
    }
    c
}

pub fn pfister_entries(params: &[Rational]) -> Vec<Rational> {
    (0..1usize << params.len())
        .map(|k| {
            params
                .iter()
                .enumerate()
                .filter(|(i, _)| k >> i & 1 == 1)
                .fold(Rational::one(), |acc, (_, a)| acc * -a)
        })
        .collect()
}

pub fn pfister(field: Field, params: &[Rational]) -> Result<PfisterForm> {
    if params.is_empty() || params.len() > 4 {
        return Err(Error::FoldOutOfRange(params.len()));
    }
    let reduced: Vec<Rational> = params.iter().map(|a| field.reduce(a)).collect::<Result<_>>()?;
    if reduced.iter().any(|a| a.is_zero()) {
        return Err(Error::ZeroParameter);
    }
    let form = QuadraticForm::diagonal(field, &pfister_entries(&reduced))?;
    Ok(PfisterForm { fold: params.len(), params: reduced, form })
}

/// The Pfister norm Σ c_k z_k² in the given coordinates.
pub fn pfister_norm(params: &[Polynomial], z: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (k, zk) in z.iter().enumerate() {
        acc = &acc + &(&pfister_coefficient(params, k) * &(zk * zk));
    }
    acc
}

fn conj(x: &[Polynomial]) -> Vec<Polynomial> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = conj(&x[..h]);
    out.extend(x[h..].iter().map(|v| -v));
    out
}

fn add(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// (u,v)(w,z) = (uw + γ·z̄v, zu + v·w̄), with γ = params[last].
pub fn cd_product(params: &[Polynomial], x: &[Polynomial], y: &[Polynomial]) -> Vec<Polynomial> {
    if params.is_empty() {
        return vec![&x[0] * &y[0]];
    }
    let (rest, gamma) = (&params[..params.len() - 1], &params[params.len() - 1]);
    let h = x.len() / 2;
    let (u, v) = x.split_at(h);
    let (w, z) = y.split_at(h);
    let uw = cd_product(rest, u, w);
    let zv: Vec<Polynomial> = cd_product(rest, &conj(z), v).iter().map(|c| gamma * c).collect();
    let zu = cd_product(rest, z, u);
    let vw = cd_product(rest, v, &conj(w));
    let mut out = add(&uw, &zv);
    out.extend(add(&zu, &vw));
    out
}

pub fn cd_conjugate(x: &[Polynomial]) -> Vec<Polynomial> {
    conj(x)
}

fn vars_of(names: &[String]) -> Vec<Polynomial> {
    names.iter().map(|v| Polynomial::var(v)).collect()
}

/// Bilinear multiplication of the composition algebra with norm ⟨⟨params⟩⟩,
/// as a polynomial map in the variables `x` and `y`. The multiplicativity
/// identity is checked before returning.
pub fn cayley_dickson_multiply(params: &[Polynomial], x: &[String], y: &[String]) -> Result<PolyMap> {
    let n = params.len();
    if n == 0 || n > 3 {
        return Err(Error::FoldOutOfRange(n));
    }
    if params.iter().any(|a| a.is_zero()) {
        return Err(Error::ZeroParameter);
    }
    let dim = 1 << n;
    if x.len() != dim || y.len() != dim {
        return Err(Error::InvalidMap(format!("fold {n} needs {dim} variables per factor")));
    }
    let (xv, yv) = (vars_of(x), vars_of(y));
    let prod = cd_product(params, &xv, &yv);
    let defect = &pfister_norm(params, &prod) - &(&pfister_norm(params, &xv) * &pfister_norm(params, &yv));
    if !defect.is_zero() {
        return Err(Error::InvalidMap("norm is not multiplicative".into()));
    }
    let mut src = x.to_vec();
    src.extend(y.iter().cloned());
    src.extend(params.iter().flat_map(|p| p.variables().to_vec()));
    src.sort();
    src.dedup();
    PolyMap::new(src, prod)
}

/// (xy)z - x(yz) for generic x, y, z.
pub fn associator(params: &[Polynomial], x: &[String], y: &[String], z: &[String]) -> Vec<Polynomial> {
    let (xv, yv, zv) = (vars_of(x), vars_of(y), vars_of(z));
    let left = cd_product(params, &cd_product(params, &xv, &yv), &zv);
    let right = cd_product(params, &xv, &cd_product(params, &yv, &zv));
    left.iter().zip(&right).map(|(a, b)| a - b).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopfMap {
    pub fold: usize,
    pub map: PolyMap,
    /// (N(x) - N(y))² + N(2x·ȳ) - (N(x) + N(y))²; zero when valid.
    pub certificate: Polynomial,
}

/// (x, y) ↦ (N(x) - N(y), 2·x·ȳ) over the algebra with all parameters -1:
/// S³→S², S⁷→S⁴, S¹⁵→S⁸ for folds 1, 2, 3.
pub fn hopf_map(fold: usize) -> Result<HopfMap> {
    if fold == 0 || fold > 3 {
        return Err(Error::FoldOutOfRange(fold));
    }
    let dim = 1 << fold;
    let params = vec![Polynomial::from_int(-1); fold];
    let x = crate::poly::var_names("x", dim);
    let y = crate::poly::var_names("y", dim);
    let (xv, yv) = (vars_of(&x), vars_of(&y));
    let (nx, ny) = (pfister_norm(&params, &xv), pfister_norm(&params, &yv));
    let two = Polynomial::from_int(2);
    let prod: Vec<Polynomial> = cd_product(&params, &xv, &conj(&yv)).iter().map(|c| &two * c).collect();
    let mut comps = vec![&nx - &ny];
    comps.extend(prod.iter().cloned());
    let diff = &nx - &ny;
    let sum = &nx + &ny;
    let certificate = &(&(&diff * &diff) + &pfister_norm(&params, &prod)) - &(&sum * &sum);
    let mut src = x;
    src.extend(y);
    Ok(HopfMap { fold, map: PolyMap::new(src, comps)?, certificate })
}

// ---------------------------------------------------------------------------
// Neighbors

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Answer {
    Yes,
    No,
    Undetermined,
}

/// q ≅ c'·(α ⊥ c·α') with α = ⟨⟨alpha⟩⟩ and α' its leading subform of
/// dimension `alpha_prime_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborBase {
    #[serde(serialize_with = "ser_rationals")]
    pub alpha: Vec<Rational>,
    pub alpha_prime_dim: usize,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub similarity: Rational,
    pub verified: bool,
}

impl NeighborBase {
    /// The form c'·(α ⊥ c·α').
    pub fn form(&self, field: Field) -> Result<QuadraticForm> {
        let a = pfister_entries(&self.alpha);
        let alpha = QuadraticForm::diagonal(field, &a)?;
        let full = if self.alpha_prime_dim == 0 {
            alpha
        } else {
            let ap: Vec<Rational> = a[..self.alpha_prime_dim].iter().map(|x| x * &self.c).collect();
            direct_sum(&alpha, &QuadraticForm::diagonal(field, &ap)?)?
        };
        scale(&full, &self.similarity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborReport {
    pub is_neighbor: Answer,
    pub is_special: Answer,
    pub fold: Option<usize>,
    pub base: Option<NeighborBase>,
    pub trace: Vec<TraceStep>,
}

impl NeighborReport {
    fn undetermined(trace: Vec<TraceStep>) -> Self {
        NeighborReport { is_neighbor: Answer::Undetermined, is_special: Answer::Undetermined, fold: None, base: None, trace }
    }
}

fn minus_ones(n: usize) -> Vec<Rational> {
    vec![-Rational::one(); n]
}

pub fn neighbor_analysis(q: &QuadraticForm) -> Result<NeighborReport> {
    let field = q.field();
    if let Field::Fp(p) = field {
        return Err(Error::UnsupportedField(format!("F{p}")));
    }
    if is_isotropic(q)? {
        return Err(Error::IsotropicInput);
    }
    let m = q.dim();
    let d = q.diagonalize();
    let a = &d.entries;
    let inv = q.invariants()?;
    if m < 2 {
        return Ok(NeighborReport::undetermined(vec![TraceStep::new("undetermined", "dimension 1")]));
    }
    let fold = m.next_power_of_two().trailing_zeros() as usize;
    let half = 1usize << (fold - 1);
    let (base, rule, detail) = match field {
        Field::R => (
            NeighborBase {
                alpha: minus_ones(fold - 1),
                alpha_prime_dim: m - half,
                c: Rational::one(),
                similarity: a[0].clone(),
                verified: false,
            },
            "real_sum_of_squares",
            format!("a definite form of dimension {m} is similar to a sum of squares, a special neighbor of the {fold}-fold Pfister form <<-1,...,-1>>"),
        ),
        Field::Q => match m {
            2 => (
                NeighborBase { alpha: vec![], alpha_prime_dim: 1, c: &a[0] * &a[1], similarity: a[0].clone(), verified: false },
                "binary",
                format!("<a1,a2> = a1<<{}>>", format_rational(&-(&a[0] * &a[1]))),
            ),
            3 => (
                NeighborBase {
                    alpha: vec![-(&a[0] * &a[1])],
                    alpha_prime_dim: 1,
                    c: &a[0] * &a[2],
                    similarity: a[0].clone(),
                    verified: false,
                },
                "ternary",
                "a ternary form is similar to a 2-fold Pfister form minus a line".to_string(),
            ),
            4 if inv.disc.is_square() => (
                NeighborBase {
                    alpha: vec![-(&a[0] * &a[1])],
                    alpha_prime_dim: 2,
                    c: &a[0] * &a[2],
                    similarity: a[0].clone(),
                    verified: false,
                },
                "dim4_pfister",
                "discriminant is a square: similar to a 2-fold Pfister form".to_string(),
            ),
            7 | 8 => {
                let c = if m == 7 { inv.det.to_rational() } else { a[0].clone() };
                let candidate = scale(&QuadraticForm::diagonal(field, &vec![Rational::one(); m])?, &c)?;
                if !is_equivalent(q, &candidate)? {
                    return Ok(NeighborReport::undetermined(vec![TraceStep::new(
                        "undetermined",
                        format!("dimension {m}: not similar to a form inside <<-1,-1,-1>>"),
                    )]));
                }
                (
                    NeighborBase {
                        alpha: minus_ones(2),
                        alpha_prime_dim: m - 4,
                        c: Rational::one(),
                        similarity: c.clone(),
                        verified: false,
                    },
                    if m == 7 { "dim7_pure_subform" } else { "dim8_pfister" },
                    format!("forced scalar {}: q is similar to {m} squares inside <<-1,-1,-1>>", format_rational(&c)),
                )
            }
            _ => {
                return Ok(NeighborReport::undetermined(vec![TraceStep::new(
                    "undetermined",
                    format!("no implemented neighbor rule for dimension {m} over Q"),
                )]))
            }
        },
        Field::Fp(_) => unreachable!(),
    };
    let mut base = base;
    base.verified = is_equivalent(q, &base.form(field)?)?;
    if !base.verified {
        return Ok(NeighborReport::undetermined(vec![TraceStep::new("undetermined", "candidate similarity failed to verify")]));
    }
    let trace = vec![
        TraceStep::new(rule, detail),
        TraceStep::new("special_neighbor", format!("q = c'(alpha + c alpha') with alpha a {}-fold Pfister form and dim alpha' = {}", fold - 1, m - half)),
    ];
    Ok(NeighborReport { is_neighbor: Answer::Yes, is_special: Answer::Yes, fold: Some(fold), base: Some(base), trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::poly::var_names;

    fn sym(names: &[&str]) -> Vec<Polynomial> {
        names.iter().map(|n| Polynomial::var(n)).collect()
    }

    #[test]
    fn pfister_examples() {
        let p = pfister(Field::Q, &[int(-1)]).unwrap();
        assert_eq!(p.form, QuadraticForm::diagonal_ints(Field::Q, &[1, 1]).unwrap());
        let p = pfister(Field::Q, &[int(-1), int(-1)]).unwrap();
        assert_eq!(p.form, QuadraticForm::diagonal_ints(Field::Q, &[1, 1, 1, 1]).unwrap());
        let p = pfister(Field::Q, &[int(2), int(3)]).unwrap();
        assert_eq!(p.form, QuadraticForm::diagonal_ints(Field::Q, &[1, -2, -3, 6]).unwrap());
        assert_eq!(pfister(Field::Q, &[int(0)]), Err(Error::ZeroParameter));
        assert_eq!(pfister(Field::Q, &vec![int(1); 5]), Err(Error::FoldOutOfRange(5)));
    }

    #[test]
    fn multiplicativity() {
        for (fold, names) in [(1, vec!["a"]), (2, vec!["a", "b"]), (3, vec!["a", "b", "c"])] {
            let dim = 1 << fold;
            let m = cayley_dickson_multiply(&sym(&names), &var_names("x", dim), &var_names("y", dim)).unwrap();
            assert_eq!(m.len(), dim);
        }
        let m = cayley_dickson_multiply(&sym(&["a"]), &var_names("x", 2), &var_names("y", 2)).unwrap();
        assert_eq!(m.components()[0].to_string(), "a*x1*y1 + x0*y0");
        assert_eq!(m.components()[1].to_string(), "x0*y1 + x1*y0");
    }

    #[test]
    fn octonions_are_not_associative() {
        let params = sym(&["a", "b", "c"]);
        let assoc = associator(&params, &var_names("x", 8), &var_names("y", 8), &var_names("z", 8));
        assert!(assoc.iter().any(|c| !c.is_zero()));
        let params = sym(&["a", "b"]);
        let assoc = associator(&params, &var_names("x", 4), &var_names("y", 4), &var_names("z", 4));
        assert!(assoc.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn hopf() {
        for fold in 1..=3 {
            let h = hopf_map(fold).unwrap();
            assert!(h.certificate.is_zero());
            assert_eq!(h.map.len(), (1 << fold) + 1);
        }
        assert_eq!(hopf_map(4).unwrap_err(), Error::FoldOutOfRange(4));
    }

    #[test]
    fn neighbors() {
        let r = neighbor_analysis(&QuadraticForm::diagonal_ints(Field::R, &[1; 10]).unwrap()).unwrap();
        assert_eq!((r.is_neighbor, r.is_special, r.fold), (Answer::Yes, Answer::Yes, Some(4)));
        let r = neighbor_analysis(&QuadraticForm::diagonal_ints(Field::Q, &[1, 1, 1, 1]).unwrap()).unwrap();
        assert_eq!((r.is_neighbor, r.fold), (Answer::Yes, Some(2)));
        let r = neighbor_analysis(&QuadraticForm::diagonal_ints(Field::Q, &[1, 1, 1, 7]).unwrap()).unwrap();
        assert_eq!(r.is_neighbor, Answer::Undetermined);
        for e in [&[2, 3][..], &[1, 2, 5], &[3, 5, 7, 105], &[1; 7], &[2; 8], &[-3; 7]] {
            let q = QuadraticForm::diagonal_ints(Field::Q, e).unwrap();
            let r = neighbor_analysis(&q).unwrap();
            assert_eq!(r.is_special, Answer::Yes, "{q}");
            assert!(r.base.unwrap().verified);
        }
        let r = neighbor_analysis(&QuadraticForm::diagonal_ints(Field::R, &[-1, -2, -5]).unwrap()).unwrap();
        assert!(r.base.unwrap().verified);
    }
}
