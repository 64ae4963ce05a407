//! Exact rationals and bi-infinite rational sequences that differ from a
//! default value at finitely many positions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero_or_one(q: &Rational) -> bool {
    q.is_zero() || q.is_one()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|e| format!("bad integer '{t}': {e}"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(format!("zero denominator in '{s}'"));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serde adapter that writes rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// A sequence `Z -> Q` equal to `default` outside a finite set of positions.
/// Exceptions equal to the default are never stored, so structural equality
/// is sequence equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinExSeq {
    default: Rational,
    exceptions: BTreeMap<i64, Rational>,
}

impl FinExSeq {
    pub fn new(default: Rational, exceptions: impl IntoIterator<Item = (i64, Rational)>) -> FinExSeq {
        let exceptions = exceptions.into_iter().filter(|(_, v)| *v != default).collect();
        FinExSeq { default, exceptions }
    }

    pub fn constant(c: Rational) -> FinExSeq {
        FinExSeq { default: c, exceptions: BTreeMap::new() }
    }

    pub fn zero() -> FinExSeq {
        FinExSeq::constant(Rational::zero())
    }

    pub fn one() -> FinExSeq {
        FinExSeq::constant(Rational::one())
    }

    /// The Kronecker sequence `e_i`.
    pub fn kronecker(i: i64) -> FinExSeq {
        FinExSeq::new(Rational::zero(), [(i, Rational::one())])
    }

    /// The 0/1 sequence equal to one exactly on `positions`.
    pub fn indicator(positions: impl IntoIterator<Item = i64>) -> FinExSeq {
        FinExSeq::new(Rational::zero(), positions.into_iter().map(|j| (j, Rational::one())))
    }

    /// The 0/1 sequence equal to zero exactly on `positions`.
    pub fn co_indicator(positions: impl IntoIterator<Item = i64>) -> FinExSeq {
        FinExSeq::new(Rational::one(), positions.into_iter().map(|j| (j, Rational::zero())))
    }

    pub fn default_value(&self) -> &Rational {
        &self.default
    }

    pub fn exceptions(&self) -> &BTreeMap<i64, Rational> {
        &self.exceptions
    }

    pub fn at(&self, j: i64) -> Rational {
        self.exceptions.get(&j).cloned().unwrap_or_else(|| self.default.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.default.is_zero() && self.exceptions.is_empty()
    }

    pub fn is_idempotent(&self) -> bool {
        is_zero_or_one(&self.default) && self.exceptions.values().all(is_zero_or_one)
    }

    /// Positions where the value is nonzero, when there are finitely many.
    pub fn finite_support(&self) -> Option<Vec<i64>> {
        if self.default.is_zero() {
            Some(self.exceptions.keys().copied().collect())
        } else {
            None
        }
    }

    /// Largest `|j|` over exception positions, or zero.
    pub fn radius(&self) -> i64 {
        self.exceptions.keys().map(|j| j.abs()).max().unwrap_or(0)
    }

    pub fn zip_with(&self, other: &FinExSeq, f: impl Fn(&Rational, &Rational) -> Rational) -> FinExSeq {
        let default = f(&self.default, &other.default);
        let positions = self.exceptions.keys().chain(other.exceptions.keys());
        let mut exceptions = BTreeMap::new();
        for &j in positions {
            if exceptions.contains_key(&j) {
                continue;
            }
            let v = f(&self.at(j), &other.at(j));
            exceptions.insert(j, v);
        }
        FinExSeq::new(default, exceptions)
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> FinExSeq {
        FinExSeq::new(f(&self.default), self.exceptions.iter().map(|(&j, v)| (j, f(v))))
    }

    pub fn scale(&self, c: &Rational) -> FinExSeq {
        self.map(|v| c * v)
    }

    /// `result(j) = self(j - n)`.
    pub fn shift(&self, n: i64) -> FinExSeq {
        FinExSeq {
            default: self.default.clone(),
            exceptions: self.exceptions.iter().map(|(&j, v)| (j + n, v.clone())).collect(),
        }
    }

    /// `result(j) = self(-j)`.
    pub fn reflect(&self) -> FinExSeq {
        FinExSeq {
            default: self.default.clone(),
            exceptions: self.exceptions.iter().map(|(&j, v)| (-j, v.clone())).collect(),
        }
    }

    /// Rotates the block of positions `start..start+len` by `n` steps
    /// (value at `start+i` moves to `start + (i+n) mod len`); other
    /// positions are fixed.
    pub fn cyclic_shift(&self, start: i64, len: i64, n: i64) -> FinExSeq {
        assert!(len > 0, "cyclic block must be non-empty");
        let mut out = BTreeMap::new();
        for (&j, v) in &self.exceptions {
            out.insert(j, v.clone());
        }
        for i in 0..len {
            out.remove(&(start + i));
        }
        for i in 0..len {
            let target = start + (i + n).rem_euclid(len);
            out.insert(target, self.at(start + i));
        }
        FinExSeq::new(self.default.clone(), out)
    }
}

impl fmt::Debug for FinExSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinExSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{{", format_rational(&self.default))?;
        for (k, (j, v)) in self.exceptions.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}:{}", format_rational(v))?;
        }
        write!(f, "}})")
    }
}

impl Add for &FinExSeq {
    type Output = FinExSeq;
    fn add(self, rhs: &FinExSeq) -> FinExSeq {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &FinExSeq {
    type Output = FinExSeq;
    fn sub(self, rhs: &FinExSeq) -> FinExSeq {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &FinExSeq {
    type Output = FinExSeq;
    fn mul(self, rhs: &FinExSeq) -> FinExSeq {
        self.zip_with(rhs, |a, b| a * b)
    }
}

impl Neg for &FinExSeq {
    type Output = FinExSeq;
    fn neg(self) -> FinExSeq {
        self.map(|v| -v)
    }
}

#[derive(Serialize, Deserialize)]
struct SeqRepr {
    default: String,
    #[serde(default)]
    exceptions: BTreeMap<String, String>,
}

impl Serialize for FinExSeq {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeqRepr {
            default: format_rational(&self.default),
            exceptions: self.exceptions.iter().map(|(j, v)| (j.to_string(), format_rational(v))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinExSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<FinExSeq, D::Error> {
        let repr = SeqRepr::deserialize(d)?;
        let default = parse_rational(&repr.default).map_err(D::Error::custom)?;
        let mut exceptions = Vec::new();
        for (k, v) in repr.exceptions {
            let j: i64 = k.trim().parse().map_err(|e| D::Error::custom(format!("bad position '{k}': {e}")))?;
            exceptions.push((j, parse_rational(&v).map_err(D::Error::custom)?));
        }
        Ok(FinExSeq::new(default, exceptions))
    }
}
