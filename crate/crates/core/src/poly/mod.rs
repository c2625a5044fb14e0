//! Exact multivariate polynomials over ℚ with named variables.
//!
//! Terms are stored with dense exponent vectors against a variable list kept
//! in natural order (`x2` before `x10`) and trimmed to the variables that
//! actually occur, so structural equality is polynomial equality. Terms are
//! ordered graded-lexicographically.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Rational};

pub use parse::{parse_polynomial, parse_polynomial_infer};

/// Exponent vector, compared graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Natural ordering on variable names: digit runs compare numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x, y) {
            ((true, x), (true, y)) => {
                let (xt, yt) = (x.trim_start_matches('0'), y.trim_start_matches('0'));
                xt.len().cmp(&yt.len()).then_with(|| xt.cmp(yt))
            }
            ((_, x), (_, y)) => x.cmp(y),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut v: Vec<String> = a.iter().chain(b).cloned().collect();
    v.sort_by(|x, y| natural_cmp(x, y));
    v.dedup();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(vec![]), c);
        }
        Polynomial { vars: vec![], terms }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        Polynomial { vars: vec![name.to_string()], terms }
    }

    /// Builds from (variable, exponent) lists; zero coefficients are dropped.
    pub fn from_terms<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<(&'a str, u32)>, Rational)>,
    {
        let mut acc = Polynomial::zero();
        for (mono, c) in terms {
            let mut t = Polynomial::constant(c);
            for (v, e) in mono {
                t = &t * &Polynomial::var(v).pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Variables that occur, in natural order.
    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact test; there is nothing to normalize beyond the canonical form.
    pub fn is_identically_zero(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Terms as (variable → exponent, coefficient), highest first.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(&str, u32)>, &Rational)> {
        self.terms.iter().rev().map(move |(m, c)| {
            let named = self
                .vars
                .iter()
                .zip(&m.0)
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| (v.as_str(), *e))
                .collect();
            (named, c)
        })
    }

    /// Coefficient of the monomial given as (variable, exponent) pairs.
    pub fn coefficient(&self, mono: &[(&str, u32)]) -> Rational {
        let mut exps = vec![0u32; self.vars.len()];
        for (v, e) in mono {
            if *e == 0 {
                continue;
            }
            match self.vars.iter().position(|x| x == v) {
                Some(i) => exps[i] += e,
                None => return Rational::zero(),
            }
        }
        self.terms.get(&Monomial(exps)).cloned().unwrap_or_else(Rational::zero)
    }

    /// The sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial { vars: self.vars.clone(), terms }.trimmed()
    }

    fn realigned(&self, vars: &[String]) -> BTreeMap<Monomial, Rational> {
        if self.vars == vars {
            return self.terms.clone();
        }
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset of variables"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; vars.len()];
                for (i, x) in m.0.iter().enumerate() {
                    e[idx[i]] = *x;
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn trimmed(mut self) -> Polynomial {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.iter().all(|u| *u) {
            return self;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, u)| **u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| {
                let e = m.0.iter().zip(&used).filter(|(_, u)| **u).map(|(e, _)| *e).collect();
                (Monomial(e), c)
            })
            .collect();
        Polynomial { vars, terms }
    }

    fn from_map(vars: Vec<String>, acc: HashMap<Monomial, Rational>) -> Polynomial {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { vars, terms }.trimmed()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replace variables by polynomials. Every occurring variable must be
    /// assigned.
    pub fn substitute(&self, assignment: &BTreeMap<String, Polynomial>) -> Result<Polynomial> {
        for v in &self.vars {
            if !assignment.contains_key(v) {
                return Err(Error::MissingAssignment(v.clone()));
            }
        }
        Ok(self.substitute_partial(assignment))
    }

    /// Like [`Polynomial::substitute`], leaving unassigned variables in place.
    pub fn substitute_partial(&self, assignment: &BTreeMap<String, Polynomial>) -> Polynomial {
        let images: Vec<Polynomial> = self
            .vars
            .iter()
            .map(|v| assignment.get(v).cloned().unwrap_or_else(|| Polynomial::var(v)))
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(), p.clone()]).collect();
        let mut acc = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                while powers[i].len() <= *e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][*e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in self.vars.iter().zip(&m.0) {
                let x = point.get(v).ok_or_else(|| Error::MissingAssignment(v.clone()))?;
                t *= num_traits::pow(x.clone(), *e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn rename(&self, renaming: &BTreeMap<String, String>) -> Polynomial {
        let assignment = renaming
            .iter()
            .map(|(a, b)| (a.clone(), Polynomial::var(b)))
            .collect();
        self.substitute_partial(&assignment)
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Division with remainder by a single polynomial under the graded
    /// lexicographic order. The remainder is zero exactly when `divisor`
    /// divides `self`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if divisor.is_zero() {
            return Err(Error::ZeroInput);
        }
        let vars = merge_vars(&self.vars, &divisor.vars);
        let d = Polynomial { vars: vars.clone(), terms: divisor.realigned(&vars) };
        let (lm, lc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut rest = Polynomial { vars: vars.clone(), terms: self.realigned(&vars) };
        let mut quot: HashMap<Monomial, Rational> = HashMap::new();
        let mut rem: HashMap<Monomial, Rational> = HashMap::new();
        while let Some((m, c)) = rest.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = m.div(&lm);
                let qc = &c / &lc;
                *quot.entry(qm.clone()).or_insert_with(Rational::zero) += &qc;
                for (dm, dc) in &d.terms {
                    let key = dm.mul(&qm);
                    let entry = rest.terms.entry(key.clone()).or_insert_with(Rational::zero);
                    *entry -= dc * &qc;
                    if entry.is_zero() {
                        rest.terms.remove(&key);
                    }
                }
            } else {
                rest.terms.remove(&m);
                rem.insert(m, c);
            }
        }
        Ok((
            Polynomial::from_map(vars.clone(), quot),
            Polynomial::from_map(vars, rem),
        ))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let vars = merge_vars(&self.vars, &rhs.vars);
        let mut terms = self.realigned(&vars);
        for (m, c) in rhs.realigned(&vars) {
            let entry = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&m);
            }
        }
        Polynomial { vars, terms }.trimmed()
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let vars = merge_vars(&self.vars, &rhs.vars);
        let a = self.realigned(&vars);
        let b = rhs.realigned(&vars);
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Polynomial::from_map(vars, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl std::ops::$tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let body: Vec<String> = mono
                .iter()
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if body.is_empty() {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                f.write_str(&body.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A tuple of polynomials in named source variables, with an optional common
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    components: Vec<Polynomial>,
    source_variables: Vec<String>,
    denominator: Option<Polynomial>,
}

impl PolyMap {
    pub fn new(source_variables: Vec<String>, components: Vec<Polynomial>) -> Result<Self> {
        for c in &components {
            if let Some(v) = c.variables().iter().find(|v| !source_variables.contains(v)) {
                return Err(Error::UnknownVariable(v.clone()));
            }
        }
        Ok(PolyMap { components, source_variables, denominator: None })
    }

    pub fn identity(vars: &[String]) -> Self {
        PolyMap {
            components: vars.iter().map(|v| Polynomial::var(v)).collect(),
            source_variables: vars.to_vec(),
            denominator: None,
        }
    }

    pub fn with_denominator(mut self, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidMap("denominator is identically zero".into()));
        }
        if let Some(v) = denominator.variables().iter().find(|v| !self.source_variables.contains(v)) {
            return Err(Error::UnknownVariable(v.clone()));
        }
        self.denominator = Some(denominator);
        Ok(self)
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn source_variables(&self) -> &[String] {
        &self.source_variables
    }

    pub fn denominator(&self) -> Option<&Polynomial> {
        self.denominator.as_ref()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `p ∘ self`, where `target_vars[i]` is sent to component `i`. With a
    /// denominator D this returns the cleared numerator D^deg(p)·p(N/D).
    pub fn pull_back(&self, p: &Polynomial, target_vars: &[String]) -> Result<Polynomial> {
        if target_vars.len() != self.components.len() {
            return Err(Error::InvalidMap(format!(
                "{} target variables for {} components",
                target_vars.len(),
                self.components.len()
            )));
        }
        let assignment: BTreeMap<String, Polynomial> =
            target_vars.iter().cloned().zip(self.components.iter().cloned()).collect();
        let Some(den) = &self.denominator else {
            return p.substitute(&assignment);
        };
        let deg = p.degree().unwrap_or(0);
        let mut acc = Polynomial::zero();
        for (mono, c) in p.terms() {
            let d: u32 = mono.iter().map(|(_, e)| e).sum();
            let single = Polynomial::from_terms([(mono, c.clone())]);
            let num = single.substitute(&assignment)?;
            acc = &acc + &(&num * &den.pow(deg - d));
        }
        Ok(acc)
    }

    /// `self ∘ inner`: substitute the components of `inner` for this map's
    /// source variables.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if self.denominator.is_some() || inner.denominator.is_some() {
            return Err(Error::InvalidMap("composition of rational maps".into()));
        }
        let components = self
            .components
            .iter()
            .map(|c| inner.pull_back(c, &self.source_variables))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(inner.source_variables.clone(), components)
    }

    /// Substitute polynomials for some source variables in every component,
    /// e.g. specializing a parameter.
    pub fn specialize(&self, assignment: &BTreeMap<String, Polynomial>, source_variables: Vec<String>) -> Result<PolyMap> {
        let components = self.components.iter().map(|c| c.substitute_partial(assignment)).collect();
        let mut m = PolyMap::new(source_variables, components)?;
        if let Some(d) = &self.denominator {
            m = m.with_denominator(d.substitute_partial(assignment))?;
        }
        Ok(m)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({}) -> ({})", self.source_variables.join(", "), parts.join(", "))?;
        if let Some(d) = &self.denominator {
            write!(f, " / ({d})")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl serde::Serialize for PolyMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PolyMap", 3)?;
        st.serialize_field("components", &self.components)?;
        st.serialize_field("denominator", &self.denominator)?;
        st.serialize_field("source_variables", &self.source_variables)?;
        st.end()
    }
}

/// `names[i] ↦ polys[i]`
pub fn assignment(names: &[String], polys: &[Polynomial]) -> BTreeMap<String, Polynomial> {
    names.iter().cloned().zip(polys.iter().cloned()).collect()
}

pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}
