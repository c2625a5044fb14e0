use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exactnum::{format_rational, Rational};

/// One named rule application in a verdict's justification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: String,
    pub detail: String,
}

impl TraceStep {
    pub fn new(rule: &str, detail: impl Into<String>) -> Self {
        TraceStep { rule: rule.to_string(), detail: detail.into() }
    }
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub(crate) fn ser_rationals<S: serde::Serializer>(r: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(format_rational))
}

pub(crate) fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_int_vecs<S: serde::Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}
