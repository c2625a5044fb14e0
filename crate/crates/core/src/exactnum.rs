//! Exact integer and rational helpers: factorization, square classes of ℚ*,
//! and Hilbert symbols at every place of ℚ.

use std::fmt;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

/// Environment variable overriding the factorization bound.
pub const FACTOR_BOUND_ENV: &str = "QFORMS_FACTOR_BOUND";

const TRIAL_LIMIT: u64 = 1_000_000;

static FACTOR_BOUND: RwLock<Option<BigUint>> = RwLock::new(None);

/// Bound on the cofactor left after trial division. Defaults to 2^64, or the
/// value of `QFORMS_FACTOR_BOUND` when set.
pub fn factor_bound() -> BigUint {
    if let Some(b) = FACTOR_BOUND.read().expect("factor bound lock").as_ref() {
        return b.clone();
    }
    std::env::var(FACTOR_BOUND_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<BigUint>().ok())
        .unwrap_or_else(|| BigUint::one() << 64u32)
}

pub fn set_factor_bound(bound: BigUint) {
    *FACTOR_BOUND.write().expect("factor bound lock") = Some(bound);
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidForm(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// -1 or +1.
    pub sign: i8,
    /// Primes in strictly increasing order with positive exponents.
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }
}

pub fn factorize(n: &BigInt) -> Result<Factorization> {
    factorize_with_bound(n, &factor_bound())
}

/// Trial division to 10^6, then Pollard rho on what remains. The remaining
/// cofactor must not exceed `bound`.
pub fn factorize_with_bound(n: &BigInt, bound: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut primes: Vec<BigUint> = Vec::new();

    if let Some(small) = m.to_u64() {
        let mut out = Vec::new();
        factor_u64(small, &mut out);
        primes.extend(out.into_iter().map(BigUint::from));
    } else {
        let mut d = 2u64;
        while d <= TRIAL_LIMIT {
            let bd = BigUint::from(d);
            if &bd * &bd > m {
                break;
            }
            while (&m % &bd).is_zero() {
                m /= &bd;
                primes.push(bd.clone());
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if !m.is_one() {
            if &m > bound {
                return Err(Error::BoundExceeded {
                    value: m.to_string(),
                    bound: bound.to_string(),
                });
            }
            if let Some(small) = m.to_u64() {
                let mut out = Vec::new();
                factor_u64(small, &mut out);
                primes.extend(out.into_iter().map(BigUint::from));
            } else {
                factor_big(m, &mut primes);
            }
        }
    }

    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { sign, factors })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64(mut n: u64, out: &mut Vec<u64>) {
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        split_u64(n, out);
    }
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

/// Miller–Rabin with fixed bases; deterministic below 3.3·10^24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if !n.is_odd() {
        return false;
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for a in MR_BASES.iter().copied().chain([41]) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn factor_big(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        let mut v = Vec::new();
        split_u64(small, &mut v);
        out.extend(v.into_iter().map(BigUint::from));
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let mut c = BigUint::one();
    let d = loop {
        let f = |x: &BigUint| (x * x + &c) % &n;
        let (mut x, mut y) = (BigUint::from(2u32), BigUint::from(2u32));
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(&n);
        }
        if d != n {
            break d;
        }
        c += 1u32;
    };
    let other = &n / &d;
    factor_big(d, out);
    factor_big(other, out);
}

/// Representative of a class in ℚ*/ℚ*²: a squarefree nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn one() -> Self {
        SquareClass(BigInt::one())
    }

    pub fn minus_one() -> Self {
        SquareClass(BigInt::from(-1))
    }

    pub fn of_int(n: i64) -> Result<Self> {
        square_class_reduce(&int(n))
    }

    pub fn representative(&self) -> &BigInt {
        &self.0
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.0.clone())
    }

    pub fn is_square(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass> {
        let g = self.0.gcd(&other.0);
        let n = (&self.0 / &g) * (&other.0 / &g);
        // ab/g² is squarefree when a, b are.
        Ok(SquareClass(n))
    }

    pub fn neg(&self) -> SquareClass {
        SquareClass(-self.0.clone())
    }

    /// Primes dividing the representative.
    pub fn primes(&self) -> Result<Vec<BigInt>> {
        Ok(factorize(&self.0)?.factors.into_iter().map(|(p, _)| p).collect())
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<SquareClass> for String {
    fn from(c: SquareClass) -> String {
        c.0.to_string()
    }
}

impl TryFrom<String> for SquareClass {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        let n: BigInt = s
            .parse()
            .map_err(|_| Error::InvalidForm(format!("bad square class `{s}`")))?;
        square_class_reduce(&Rational::from_integer(n))
    }
}

fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let f = factorize(n)?;
    let mut acc = BigInt::from(f.sign);
    for (p, e) in f.factors {
        if e % 2 == 1 {
            acc *= p;
        }
    }
    Ok(acc)
}

pub fn square_class_reduce(r: &Rational) -> Result<SquareClass> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    let a = squarefree_part(r.numer())?;
    let b = squarefree_part(r.denom())?;
    let g = a.gcd(&b);
    Ok(SquareClass((&a / &g) * (&b / &g)))
}

/// A place of ℚ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Prime(BigInt),
}

impl Place {
    pub fn prime(p: u64) -> Result<Place> {
        if is_prime_u64(p) {
            Ok(Place::Prime(BigInt::from(p)))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn label(&self) -> String {
        match self {
            Place::Real => "inf".to_string(),
            Place::Prime(p) => p.to_string(),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Legendre symbol (a/p) for an odd prime p, with 0 when p | a.
pub fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let pu = p.magnitude();
    let r = a.mod_floor(p).magnitude().clone();
    if r.is_zero() {
        return 0;
    }
    let e = (pu - 1u32) >> 1u32;
    if r.modpow(&e, pu).is_one() {
        1
    } else {
        -1
    }
}

/// Splits a squarefree integer as p^α·u with α ∈ {0, 1}.
fn split_at(a: &BigInt, p: &BigInt) -> (u32, BigInt) {
    if (a % p).is_zero() {
        (1, a / p)
    } else {
        (0, a.clone())
    }
}

fn mod8(u: &BigInt) -> u32 {
    u.mod_floor(&BigInt::from(8)).to_u32().expect("residue mod 8")
}

/// (a, b)_v for square classes a, b.
pub fn hilbert_symbol(a: &SquareClass, b: &SquareClass, v: &Place) -> i8 {
    match v {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if p == &BigInt::from(2) => {
            let (alpha, u) = split_at(&a.0, p);
            let (beta, w) = split_at(&b.0, p);
            let eps = |x: &BigInt| if mod8(x) % 4 == 3 { 1u32 } else { 0 };
            let omega = |x: &BigInt| match mod8(x) {
                3 | 5 => 1u32,
                _ => 0,
            };
            let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_at(&a.0, p);
            let (beta, w) = split_at(&b.0, p);
            let mut s: i8 = 1;
            if alpha * beta == 1 && mod8(p) % 4 == 3 {
                s = -s;
            }
            if beta == 1 {
                s *= legendre(&u, p);
            }
            if alpha == 1 {
                s *= legendre(&w, p);
            }
            s
        }
    }
}

/// Whether the class is a square in the completion ℚ_v.
pub fn is_local_square(d: &SquareClass, v: &Place) -> bool {
    match v {
        Place::Real => !d.is_negative(),
        Place::Prime(p) if p == &BigInt::from(2) => mod8(&d.0) == 1,
        Place::Prime(p) => !(&d.0 % p).is_zero() && legendre(&d.0, p) == 1,
    }
}

/// The real place, 2, and every prime dividing one of the classes.
pub fn relevant_places<'a>(classes: impl IntoIterator<Item = &'a SquareClass>) -> Result<Vec<Place>> {
    let mut primes: Vec<BigInt> = vec![BigInt::from(2)];
    for c in classes {
        primes.extend(c.primes()?);
    }
    primes.sort();
    primes.dedup();
    let mut places = vec![Place::Real];
    places.extend(primes.into_iter().map(Place::Prime));
    Ok(places)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> SquareClass {
        SquareClass::of_int(n).unwrap()
    }

    #[test]
    fn factor_examples() {
        let f = factorize(&BigInt::from(12)).unwrap();
        assert_eq!(f.factors, vec![(BigInt::from(2), 2), (BigInt::from(3), 1)]);
        assert!(factorize(&BigInt::from(1)).unwrap().factors.is_empty());
        let f = factorize(&BigInt::from(-50)).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(BigInt::from(2), 1), (BigInt::from(5), 2)]);
        assert_eq!(factorize(&BigInt::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn factor_large_semiprime() {
        // 1000003 * 1000033, both past the trial division limit.
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.product(), n);
    }

    #[test]
    fn factor_bound_rejects() {
        let p = BigInt::from(1_000_003u64);
        let n = &p * &p * &p * &p;
        let err = factorize_with_bound(&n, &BigUint::from(1000u32)).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { .. }));
        // Above 2^64 but still factorable with the default bound after trial division.
        let m = BigInt::from(1u64 << 40) * BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        assert_eq!(factorize(&m).unwrap().product(), m);
    }

    #[test]
    fn square_class_examples() {
        assert_eq!(square_class_reduce(&rational(4, 9)).unwrap(), sc(1));
        assert_eq!(square_class_reduce(&int(-50)).unwrap().representative(), &BigInt::from(-2));
        assert_eq!(square_class_reduce(&rational(7, 3)).unwrap().representative(), &BigInt::from(21));
        assert_eq!(square_class_reduce(&int(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&sc(-1), &sc(-1), &Place::Real), -1);
        assert_eq!(hilbert_symbol(&sc(-1), &sc(-1), &Place::prime(2).unwrap()), -1);
        for v in [Place::Real, Place::prime(2).unwrap(), Place::prime(7).unwrap()] {
            for b in [-7, -1, 2, 3, 5, 6] {
                assert_eq!(hilbert_symbol(&sc(1), &sc(b), &v), 1);
            }
        }
        // (2, 3)_3 = (2/3) = -1; (5, 5)_5 = (-1/5) = 1; (3, 3)_3 = (-1/3) = -1
        assert_eq!(hilbert_symbol(&sc(2), &sc(3), &Place::prime(3).unwrap()), -1);
        assert_eq!(hilbert_symbol(&sc(5), &sc(5), &Place::prime(5).unwrap()), 1);
        assert_eq!(hilbert_symbol(&sc(3), &sc(3), &Place::prime(3).unwrap()), -1);
    }

    #[test]
    fn local_squares() {
        assert!(is_local_square(&sc(17), &Place::prime(2).unwrap()));
        assert!(!is_local_square(&sc(-1), &Place::prime(2).unwrap()));
        assert!(is_local_square(&sc(-1), &Place::prime(5).unwrap()));
        assert!(!is_local_square(&sc(-1), &Place::prime(3).unwrap()));
        assert!(!is_local_square(&sc(3), &Place::prime(3).unwrap()));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), rational(-3, 2));
        assert_eq!(format_rational(&rational(-3, 2)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
