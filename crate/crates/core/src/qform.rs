//! Quadratic forms over ℚ, ℝ (with rational coefficients) and F_p, their
//! classical invariants, equivalence, and the sum/scale/tensor constructions.
//!
//! A form is stored by the literal coefficients of its polynomial,
//! q(x) = Σ_{i≤j} c_ij x_i x_j. The Gram matrix is B_ii = c_ii and
//! B_ij = c_ij / 2, which is lossless because the characteristic is never 2.
//!
//! Hasse invariants use the convention s_v(q) = Π_{i<j} (a_i, a_j)_v for a
//! diagonalization ⟨a_1, …, a_d⟩ of the nondegenerate part.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    hilbert_symbol, is_prime_u64, legendre, relevant_places, square_class_reduce, Place, Rational,
    SquareClass,
};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Q,
    R,
    /// Prime field of odd characteristic.
    Fp(u64),
}

impl Field {
    pub fn fp(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Fp(p))
    }

    /// Accepts `Q`, `R`, `F7`, `Fp7`, `Fp:7`.
    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim();
        match t {
            "Q" | "q" => Ok(Field::Q),
            "R" | "r" => Ok(Field::R),
            _ => {
                let rest = t
                    .strip_prefix("Fp:")
                    .or_else(|| t.strip_prefix("Fp"))
                    .or_else(|| t.strip_prefix('F'))
                    .ok_or_else(|| Error::InvalidField(t.to_string()))?;
                let p: u64 = rest.parse().map_err(|_| Error::InvalidField(t.to_string()))?;
                Field::fp(p)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Field::Q => "Q".into(),
            Field::R => "R".into(),
            Field::Fp(p) => format!("F{p}"),
        }
    }

    /// Canonical representative of a field element. Over F_p this is the
    /// residue in [0, p).
    pub fn reduce(&self, r: &Rational) -> Result<Rational> {
        match self {
            Field::Fp(p) => {
                let pb = BigInt::from(*p);
                let n = r.numer() % &pb;
                let d = r.denom() % &pb;
                if d.is_zero() {
                    return Err(Error::InvalidForm(format!("denominator of {r} vanishes mod {p}")));
                }
                let dinv = d.modpow(&BigInt::from(p - 2), &pb);
                let v = ((n * dinv) % &pb + &pb) % &pb;
                Ok(Rational::from_integer(v))
            }
            _ => Ok(r.clone()),
        }
    }

    fn div(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        match self {
            Field::Fp(_) => {
                let inv = self.reduce(&(Rational::one() / b))?;
                self.reduce(&(a * inv))
            }
            _ => Ok(a / b),
        }
    }

    fn red(&self, r: Rational) -> Rational {
        self.reduce(&r).expect("integral value reduces")
    }

    /// Square class of a nonzero element: squarefree integer over ℚ, sign
    /// over ℝ, and 1 or the least non-residue over F_p.
    pub fn square_class(&self, r: &Rational) -> Result<SquareClass> {
        if r.is_zero() {
            return Err(Error::ZeroInput);
        }
        match self {
            Field::Q => square_class_reduce(r),
            Field::R => Ok(if r.is_negative() { SquareClass::minus_one() } else { SquareClass::one() }),
            Field::Fp(p) => {
                let v = self.reduce(r)?;
                let pb = BigInt::from(*p);
                if legendre(v.numer(), &pb) == 1 {
                    Ok(SquareClass::one())
                } else {
                    Ok(least_nonresidue_class(*p))
                }
            }
        }
    }
}

fn least_nonresidue_class(p: u64) -> SquareClass {
    let pb = BigInt::from(p);
    let n = (2..p).find(|n| legendre(&BigInt::from(*n), &pb) == -1).expect("odd prime has a non-residue");
    SquareClass::of_int(n as i64).expect("nonzero")
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    field: Field,
    dim: usize,
    coeffs: BTreeMap<(usize, usize), Rational>,
}

impl QuadraticForm {
    pub fn new(field: Field, dim: usize, coeffs: BTreeMap<(usize, usize), Rational>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidForm("dimension must be at least 1".into()));
        }
        let mut clean = BTreeMap::new();
        for ((i, j), c) in coeffs {
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            if j >= dim {
                return Err(Error::InvalidForm(format!("index ({i},{j}) out of range for dimension {dim}")));
            }
            let c = field.reduce(&c)?;
            let entry = clean.entry((i, j)).or_insert_with(Rational::zero);
            *entry = field.reduce(&(&*entry + c))?;
        }
        clean.retain(|_, c| !c.is_zero());
        Ok(QuadraticForm { field, dim, coeffs: clean })
    }

    pub fn diagonal(field: Field, entries: &[Rational]) -> Result<Self> {
        let coeffs = entries.iter().enumerate().map(|(i, a)| ((i, i), a.clone())).collect();
        Self::new(field, entries.len(), coeffs)
    }

    pub fn diagonal_ints(field: Field, entries: &[i64]) -> Result<Self> {
        let e: Vec<Rational> = entries.iter().map(|a| Rational::from_integer((*a).into())).collect();
        Self::diagonal(field, &e)
    }

    /// Reads the degree-2 homogeneous polynomial `p` in the listed variables.
    pub fn from_polynomial(field: Field, p: &Polynomial, vars: &[String]) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (mono, c) in p.terms() {
            let deg: u32 = mono.iter().map(|(_, e)| e).sum();
            if deg != 2 {
                return Err(Error::InvalidForm(format!("`{p}` is not homogeneous of degree 2")));
            }
            let idx: Vec<usize> = mono
                .iter()
                .flat_map(|(v, e)| std::iter::repeat_n(*v, *e as usize))
                .map(|v| vars.iter().position(|w| w == v).ok_or_else(|| Error::UnknownVariable(v.to_string())))
                .collect::<Result<_>>()?;
            coeffs.insert((idx[0], idx[1]), c.clone());
        }
        Self::new(field, vars.len().max(1), coeffs)
    }

    pub fn to_polynomial(&self, vars: &[String]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for ((i, j), c) in &self.coeffs {
            let t = &Polynomial::var(&vars[*i]) * &Polynomial::var(&vars[*j]);
            acc = &acc + &t.scale(c);
        }
        acc
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.coeffs.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.coeffs
    }

    pub fn gram(&self) -> Vec<Vec<Rational>> {
        let two = Rational::from_integer(2.into());
        let mut g = vec![vec![Rational::zero(); self.dim]; self.dim];
        for ((i, j), c) in &self.coeffs {
            if i == j {
                g[*i][*i] = c.clone();
            } else {
                let h = self.field.div(c, &two).expect("2 is invertible");
                g[*i][*j] = h.clone();
                g[*j][*i] = h;
            }
        }
        g
    }

    fn from_gram(field: Field, g: &[Vec<Rational>]) -> Result<Self> {
        let n = g.len();
        let mut coeffs = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                let c = if i == j { g[i][i].clone() } else { &g[i][j] * Rational::from_integer(2.into()) };
                coeffs.insert((i, j), c);
            }
        }
        Self::new(field, n, coeffs)
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for ((i, j), c) in &self.coeffs {
            s += c * &x[*i] * &x[*j];
        }
        self.field.red(s)
    }

    /// The polar form q(u+v) - q(u) - q(v) = 2·B(u, v).
    pub fn polar(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for ((i, j), c) in &self.coeffs {
            if i == j {
                s += c * &u[*i] * &v[*i] * Rational::from_integer(2.into());
            } else {
                s += c * (&u[*i] * &v[*j] + &u[*j] * &v[*i]);
            }
        }
        self.field.red(s)
    }

    /// Diagonal entries if the form has no cross terms.
    pub fn diagonal_entries(&self) -> Option<Vec<Rational>> {
        if self.coeffs.keys().any(|(i, j)| i != j) {
            return None;
        }
        Some((0..self.dim).map(|i| self.coeff(i, i)).collect())
    }

    /// The form y ↦ q(Σ y_k b_k) on the span of `basis`.
    pub fn restrict(&self, basis: &[Vec<Rational>]) -> Result<QuadraticForm> {
        if basis.is_empty() {
            return Err(Error::InvalidForm("empty basis".into()));
        }
        let g = self.gram();
        let n = self.dim;
        let gb: Vec<Vec<Rational>> = basis
            .iter()
            .map(|b| (0..n).map(|i| self.field.red((0..n).map(|j| &g[i][j] * &b[j]).sum())).collect())
            .collect();
        let m = basis.len();
        let mut out = vec![vec![Rational::zero(); m]; m];
        for k in 0..m {
            for l in 0..m {
                out[k][l] = self.field.red((0..n).map(|i| &basis[k][i] * &gb[l][i]).sum());
            }
        }
        Self::from_gram(self.field, &out)
    }

    pub fn diagonalize(&self) -> Diagonalization {
        diagonalize(self)
    }

    pub fn invariants(&self) -> Result<FormInvariants> {
        let d = self.diagonalize();
        FormInvariants::from_diagonal(self.field, &d.entries[..d.rank], self.dim)
    }

    /// Nondegenerate diagonal part as square classes (same order as the
    /// diagonalization).
    pub fn diagonal_classes(&self) -> Result<Vec<SquareClass>> {
        let d = self.diagonalize();
        d.entries[..d.rank].iter().map(|a| self.field.square_class(a)).collect()
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = self.diagonal_entries() {
            let s: Vec<String> = d.iter().map(crate::exactnum::format_rational).collect();
            write!(f, "<{}> over {}", s.join(","), self.field)
        } else {
            let vars = crate::poly::var_names("x", self.dim);
            write!(f, "{} over {}", self.to_polynomial(&vars), self.field)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalization {
    /// Nonzero entries first, then `dim - rank` zeros for the radical.
    pub entries: Vec<Rational>,
    /// `basis[k]` is the k-th new basis vector: q(Σ y_k basis[k]) = Σ entries[k] y_k².
    pub basis: Vec<Vec<Rational>>,
    pub rank: usize,
}

fn diagonalize(q: &QuadraticForm) -> Diagonalization {
    let field = q.field;
    let n = q.dim;
    let mut g = q.gram();
    let mut basis: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();

    // b_i <- b_i + c·b_j, updating the Gram matrix by congruence.
    let add_multiple = |g: &mut Vec<Vec<Rational>>, basis: &mut Vec<Vec<Rational>>, i: usize, j: usize, c: &Rational| {
        for k in 0..n {
            let v = field.red(&basis[i][k] + c * &basis[j][k]);
            basis[i][k] = v;
        }
        for k in 0..n {
            let v = field.red(&g[i][k] + c * &g[j][k]);
            g[i][k] = v;
        }
        for k in 0..n {
            let v = field.red(&g[k][i] + c * &g[k][j]);
            g[k][i] = v;
        }
    };
    let swap = |g: &mut Vec<Vec<Rational>>, basis: &mut Vec<Vec<Rational>>, i: usize, j: usize| {
        if i == j {
            return;
        }
        basis.swap(i, j);
        g.swap(i, j);
        for row in g.iter_mut() {
            row.swap(i, j);
        }
    };

    let mut rank = n;
    for k in 0..n {
        // Once the remaining block is diagonal the order is kept; before that
        // the smallest pivot limits coefficient growth.
        let coupled = (k..n).any(|i| (i + 1..n).any(|j| !g[i][j].is_zero()));
        let height = |r: &Rational| r.numer().bits() + r.denom().bits();
        let pivot = if coupled {
            (k..n).filter(|&j| !g[j][j].is_zero()).min_by_key(|&j| (height(&g[j][j]), j))
        } else {
            (k..n).find(|&j| !g[j][j].is_zero())
        };
        if let Some(j) = pivot {
            swap(&mut g, &mut basis, k, j);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !g[i][j].is_zero())
        {
            // Hyperbolic pair: replace (b_i, b_j) by (b_i + b_j, b_i - b_j).
            swap(&mut g, &mut basis, k, i);
            add_multiple(&mut g, &mut basis, k, j, &Rational::one());
            let minus_two = Rational::from_integer((-2).into());
            for v in basis[j].iter_mut() {
                *v = field.red(&*v * &minus_two);
            }
            for v in g[j].iter_mut() {
                *v = field.red(&*v * &minus_two);
            }
            for row in g.iter_mut() {
                let v = field.red(&row[j] * &minus_two);
                row[j] = v;
            }
            add_multiple(&mut g, &mut basis, j, k, &Rational::one());
        } else {
            rank = k;
            break;
        }
        let pivot = g[k][k].clone();
        for l in k + 1..n {
            if g[k][l].is_zero() {
                continue;
            }
            let c = -field.div(&g[k][l], &pivot).expect("nonzero pivot");
            add_multiple(&mut g, &mut basis, l, k, &c);
        }
    }
    let entries = (0..n).map(|i| if i < rank { g[i][i].clone() } else { Rational::zero() }).collect();
    Diagonalization { entries, basis, rank }
}

fn sign_class_of_count(negatives: usize) -> i64 {
    if negatives % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub field: Field,
    pub dimension: usize,
    pub radical_dimension: usize,
    /// Square class of the determinant of the nondegenerate part.
    pub det: SquareClass,
    /// (-1)^{r(r-1)/2}·det with r the rank.
    pub disc: SquareClass,
    /// (positive, negative) counts over ℚ and ℝ.
    pub signature: Option<(usize, usize)>,
    /// Hasse symbols over ℚ at the relevant places; +1 elsewhere.
    pub hasse: BTreeMap<Place, i8>,
}

impl FormInvariants {
    pub fn rank(&self) -> usize {
        self.dimension - self.radical_dimension
    }

    pub fn hasse_at(&self, v: &Place) -> i8 {
        self.hasse.get(v).copied().unwrap_or(1)
    }

    pub(crate) fn from_diagonal(field: Field, nonzero: &[Rational], dim: usize) -> Result<Self> {
        let rank = nonzero.len();
        let classes: Vec<SquareClass> = nonzero.iter().map(|a| field.square_class(a)).collect::<Result<_>>()?;
        let det = match field {
            Field::Q => {
                let mut d = SquareClass::one();
                for c in &classes {
                    d = d.mul(c)?;
                }
                d
            }
            Field::R => {
                let neg = classes.iter().filter(|c| c.is_negative()).count();
                SquareClass::of_int(sign_class_of_count(neg))?
            }
            Field::Fp(_) => {
                let prod: Rational = nonzero.iter().fold(Rational::one(), |a, b| field.red(a * b));
                if rank == 0 {
                    SquareClass::one()
                } else {
                    field.square_class(&prod)?
                }
            }
        };
        let disc = Self::signed(field, &det, rank)?;
        let signature = match field {
            Field::Q | Field::R => {
                let neg = nonzero.iter().filter(|a| a.is_negative()).count();
                Some((rank - neg, neg))
            }
            Field::Fp(_) => None,
        };
        let hasse = match field {
            Field::Q => {
                let places = relevant_places(classes.iter())?;
                places.into_iter().map(|v| {
                    let s = hasse_of_classes(&classes, &v);
                    (v, s)
                }).collect()
            }
            _ => BTreeMap::new(),
        };
        let hasse = Self::canonical_hasse(hasse, &det)?;
        Ok(FormInvariants { field, dimension: dim, radical_dimension: dim - rank, det, disc, signature, hasse })
    }

    /// Keeps the real place, 2, the primes dividing det, and the places where
    /// the symbol is -1, so equal invariants compare equal.
    pub(crate) fn canonical_hasse(hasse: BTreeMap<Place, i8>, det: &SquareClass) -> Result<BTreeMap<Place, i8>> {
        if hasse.is_empty() {
            return Ok(hasse);
        }
        let det_primes = det.primes()?;
        Ok(hasse
            .into_iter()
            .filter(|(v, s)| match v {
                Place::Real => true,
                Place::Prime(p) => *s == -1 || *p == BigInt::from(2) || det_primes.contains(p),
            })
            .collect())
    }

    /// (-1)^{r(r-1)/2}·det as a square class of `field`.
    pub(crate) fn signed(field: Field, det: &SquareClass, rank: usize) -> Result<SquareClass> {
        if (rank * rank.saturating_sub(1) / 2) % 2 == 0 {
            return Ok(det.clone());
        }
        match field {
            Field::Fp(_) => field.square_class(&(-det.to_rational())),
            _ => Ok(det.neg()),
        }
    }
}

/// Π_{i<j} (a_i, a_j)_v
pub fn hasse_of_classes(classes: &[SquareClass], v: &Place) -> i8 {
    let mut s = 1i8;
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            s *= hilbert_symbol(&classes[i], &classes[j], v);
        }
    }
    s
}

pub fn is_equivalent(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<bool> {
    if q1.field != q2.field {
        return Err(Error::FieldMismatch);
    }
    let (a, b) = (q1.invariants()?, q2.invariants()?);
    if a.dimension != b.dimension || a.radical_dimension != b.radical_dimension {
        return Ok(false);
    }
    Ok(match q1.field {
        Field::R => a.signature == b.signature,
        Field::Fp(_) => a.det == b.det,
        Field::Q => {
            if a.det != b.det || a.signature != b.signature {
                return Ok(false);
            }
            let places: BTreeSet<&Place> = a.hasse.keys().chain(b.hasse.keys()).collect();
            places.into_iter().all(|v| a.hasse_at(v) == b.hasse_at(v))
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Composition {
    DirectSum,
    Scale(Rational),
    Tensor,
}

pub fn direct_sum(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<QuadraticForm> {
    if q1.field != q2.field {
        return Err(Error::FieldMismatch);
    }
    let shift = q1.dim;
    let mut coeffs = q1.coeffs.clone();
    for ((i, j), c) in &q2.coeffs {
        coeffs.insert((i + shift, j + shift), c.clone());
    }
    QuadraticForm::new(q1.field, q1.dim + q2.dim, coeffs)
}

pub fn scale(q: &QuadraticForm, c: &Rational) -> Result<QuadraticForm> {
    let c = q.field.reduce(c)?;
    if c.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let coeffs = q.coeffs.iter().map(|(k, v)| (*k, v * &c)).collect();
    QuadraticForm::new(q.field, q.dim, coeffs)
}

/// Tensor product; coordinate i of `q1` and j of `q2` become i + j·dim(q1),
/// so ⟨1,-a⟩ ⊗ ⟨1,-b⟩ = ⟨1,-a,-b,ab⟩.
pub fn tensor(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<QuadraticForm> {
    if q1.field != q2.field {
        return Err(Error::FieldMismatch);
    }
    let (g1, g2) = (q1.gram(), q2.gram());
    let (d1, d2) = (q1.dim, q2.dim);
    let n = d1 * d2;
    let mut g = vec![vec![Rational::zero(); n]; n];
    for j1 in 0..d2 {
        for i1 in 0..d1 {
            for j2 in 0..d2 {
                for i2 in 0..d1 {
                    g[i1 + j1 * d1][i2 + j2 * d1] = &g1[i1][i2] * &g2[j1][j2];
                }
            }
        }
    }
    QuadraticForm::from_gram(q1.field, &g)
}

pub fn compose_forms(kind: &Composition, q1: &QuadraticForm, q2: Option<&QuadraticForm>) -> Result<QuadraticForm> {
    let need = || q2.ok_or_else(|| Error::InvalidForm("second form required".into()));
    match kind {
        Composition::DirectSum => direct_sum(q1, need()?),
        Composition::Tensor => tensor(q1, need()?),
        Composition::Scale(c) => scale(q1, c),
    }
}

/// The hyperbolic form m·⟨1,-1⟩.
pub fn hyperbolic(field: Field, m: usize) -> Result<QuadraticForm> {
    let e: Vec<i64> = (0..2 * m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    QuadraticForm::diagonal_ints(field, &e)
}

/// JSON encoding of a form: either `{"field": .., "diagonal": ["1", "-2"]}`
/// or `{"field": .., "poly": "x1*x2 + x3^2", "vars": ["x1", "x2", "x3"]}`.
/// `vars` may be omitted, in which case the variables of `poly` are used in
/// natural order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub field: Field,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
}

impl FormSpec {
    pub fn to_form(&self) -> Result<QuadraticForm> {
        match (&self.diagonal, &self.poly) {
            (Some(d), None) => {
                let e: Vec<Rational> = d.iter().map(|s| crate::exactnum::parse_rational(s)).collect::<Result<_>>()?;
                QuadraticForm::diagonal(self.field, &e)
            }
            (None, Some(text)) => {
                let (p, vars) = match &self.vars {
                    Some(v) => (crate::poly::parse_polynomial(text, v)?, v.clone()),
                    None => {
                        let p = crate::poly::parse_polynomial_infer(text)?;
                        let v = p.variables().to_vec();
                        (p, v)
                    }
                };
                QuadraticForm::from_polynomial(self.field, &p, &vars)
            }
            _ => Err(Error::InvalidForm("exactly one of `diagonal` and `poly` is required".into())),
        }
    }

    pub fn of(q: &QuadraticForm) -> FormSpec {
        match q.diagonal_entries() {
            Some(d) => FormSpec {
                field: q.field,
                diagonal: Some(d.iter().map(crate::exactnum::format_rational).collect()),
                poly: None,
                vars: None,
            },
            None => {
                let vars = crate::poly::var_names("x", q.dim);
                FormSpec { field: q.field, diagonal: None, poly: Some(q.to_polynomial(&vars).to_string()), vars: Some(vars) }
            }
        }
    }
}

impl Serialize for QuadraticForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormSpec::of(self).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::poly::{assignment, var_names};

    fn qd(e: &[i64]) -> QuadraticForm {
        QuadraticForm::diagonal_ints(Field::Q, e).unwrap()
    }

    #[test]
    fn field_parsing() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Q);
        assert_eq!(Field::parse("F7").unwrap(), Field::Fp(7));
        assert_eq!(Field::parse("Fp:11").unwrap(), Field::Fp(11));
        assert!(Field::parse("F2").is_err());
        assert!(Field::parse("F9").is_err());
        assert!(Field::parse("C").is_err());
    }

    fn check_diagonalization(q: &QuadraticForm) {
        let d = q.diagonalize();
        let vars = var_names("x", q.dim());
        let yvars = var_names("y", q.dim());
        let lhs = q.to_polynomial(&vars);
        let images: Vec<Polynomial> = (0..q.dim())
            .map(|i| {
                (0..q.dim()).fold(Polynomial::zero(), |acc, k| {
                    &acc + &Polynomial::var(&yvars[k]).scale(&d.basis[k][i])
                })
            })
            .collect();
        let sub = lhs.substitute(&assignment(&vars, &images)).unwrap();
        let rhs = (0..q.dim()).fold(Polynomial::zero(), |acc, k| {
            &acc + &Polynomial::var(&yvars[k]).pow(2).scale(&d.entries[k])
        });
        let diff = &sub - &rhs;
        let field = q.field();
        assert!(diff.terms().all(|(_, c)| field.reduce(c).unwrap().is_zero()), "{q}: {sub} vs {rhs}");
    }

    #[test]
    fn diagonalize_hyperbolic_pair() {
        let q = QuadraticForm::new(Field::Q, 2, BTreeMap::from([((0, 1), int(2))])).unwrap();
        let d = q.diagonalize();
        assert_eq!(d.entries, vec![int(2), int(-2)]);
        assert_eq!(d.basis, vec![vec![int(1), int(1)], vec![int(1), int(-1)]]);
        check_diagonalization(&q);
    }

    #[test]
    fn diagonalize_examples() {
        let q = qd(&[1, 1, 1]);
        let d = q.diagonalize();
        assert_eq!(d.entries, vec![int(1); 3]);
        assert_eq!(d.basis, vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]]);

        let vars = var_names("x", 2);
        let p = crate::poly::parse_polynomial("(x0 + x1)^2", &vars).unwrap();
        let q = QuadraticForm::from_polynomial(Field::Q, &p, &vars).unwrap();
        let d = q.diagonalize();
        assert_eq!(d.rank, 1);
        assert_eq!(d.entries, vec![int(1), int(0)]);
        check_diagonalization(&q);

        let vars = var_names("x", 4);
        let p = crate::poly::parse_polynomial("x0*x1 + 3*x2*x3 - x1*x2 + 5*x3^2", &vars).unwrap();
        check_diagonalization(&QuadraticForm::from_polynomial(Field::Q, &p, &vars).unwrap());
        check_diagonalization(&QuadraticForm::from_polynomial(Field::Fp(7), &p, &vars).unwrap());
    }

    #[test]
    fn invariant_examples() {
        let i = qd(&[1, 1, 1, 1]).invariants().unwrap();
        assert_eq!((i.dimension, i.det.clone(), i.disc.clone(), i.signature), (4, SquareClass::one(), SquareClass::one(), Some((4, 0))));
        assert!(i.hasse.values().all(|s| *s == 1));

        let i = qd(&[1, -1]).invariants().unwrap();
        assert_eq!(i.det, SquareClass::minus_one());
        assert_eq!(i.disc, SquareClass::one());
        assert_eq!(i.signature, Some((1, 1)));

        let i = qd(&[1, 1, 1, 7]).invariants().unwrap();
        let seven = SquareClass::of_int(7).unwrap();
        assert_eq!((i.det.clone(), i.disc.clone(), i.signature), (seven.clone(), seven, Some((4, 0))));
    }

    #[test]
    fn fp_invariants() {
        let f = Field::Fp(7);
        let q = QuadraticForm::diagonal_ints(f, &[1, 3]).unwrap();
        // 3 is a non-residue mod 7; least non-residue is 3.
        assert_eq!(q.invariants().unwrap().det, SquareClass::of_int(3).unwrap());
        let q2 = QuadraticForm::diagonal_ints(f, &[2, 5]).unwrap();
        // 10 = 3 mod 7.
        assert!(is_equivalent(&q, &q2).unwrap());
        let q3 = QuadraticForm::diagonal_ints(f, &[1, 1]).unwrap();
        assert!(!is_equivalent(&q, &q3).unwrap());
        assert_eq!(QuadraticForm::diagonal_ints(f, &[8]).unwrap().coeff(0, 0), int(1));
    }

    #[test]
    fn equivalence_examples() {
        assert!(is_equivalent(&qd(&[1, -1]), &qd(&[2, -2])).unwrap());
        let r = |e: &[i64]| QuadraticForm::diagonal_ints(Field::R, e).unwrap();
        assert!(!is_equivalent(&r(&[1, 1]), &r(&[1, -1])).unwrap());
        let q = qd(&[3, 5, -7]);
        assert!(is_equivalent(&q, &q).unwrap());
        assert_eq!(is_equivalent(&q, &r(&[1])), Err(Error::FieldMismatch));
        // Same dim, det, signature; different Hasse at 3.
        assert!(!is_equivalent(&qd(&[1, 1]), &qd(&[3, 3])).unwrap());
        // x² + y² represents 2: ⟨1,1⟩ ≅ ⟨2,2⟩.
        assert!(is_equivalent(&qd(&[1, 1]), &qd(&[2, 2])).unwrap());
    }

    #[test]
    fn compositions() {
        let a = qd(&[1, -2]);
        let b = qd(&[1, -3]);
        let t = tensor(&a, &b).unwrap();
        assert_eq!(t.diagonal_entries().unwrap(), vec![int(1), int(-2), int(-3), int(6)]);
        assert_eq!(scale(&qd(&[1, 1]), &int(-1)).unwrap(), qd(&[-1, -1]));
        assert_eq!(direct_sum(&qd(&[1]), &qd(&[-1])).unwrap(), qd(&[1, -1]));
        assert_eq!(scale(&a, &int(0)), Err(Error::ZeroScalar));
        assert_eq!(
            compose_forms(&Composition::Tensor, &a, None),
            Err(Error::InvalidForm("second form required".into()))
        );
        assert_eq!(hyperbolic(Field::Q, 2).unwrap(), qd(&[1, -1, 1, -1]));
    }

    #[test]
    fn tensor_of_nondiagonal() {
        let h = QuadraticForm::new(Field::Q, 2, BTreeMap::from([((0, 1), int(1))])).unwrap();
        let t = tensor(&h, &qd(&[1, 1])).unwrap();
        // H ⊗ ⟨1,1⟩ = 2H
        assert!(is_equivalent(&t, &hyperbolic(Field::Q, 2).unwrap()).unwrap());
    }
}
