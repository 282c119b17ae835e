//! Finite integer linear combinations over a canonical basis.
//!
//! Each ring in this crate supplies a [`Basis`]: a set of canonical
//! monomials, the product of two of them expressed back in the basis, and
//! which of them span a copy of `Z/2`. [`Element`] does the bookkeeping.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::RingError;
use crate::expr;

pub trait Basis: Clone + Ord + fmt::Debug {
    /// The unit monomial.
    fn one() -> Self;

    /// Whether this basis element generates a `Z/2`; coefficients on it are
    /// reduced mod 2.
    fn is_two_torsion(&self) -> bool;

    /// The product of two canonical basis elements, as canonical terms.
    fn multiply(&self, other: &Self) -> Vec<(BigInt, Self)>;

    /// Generator names with exponents, in print order. Empty for the unit.
    fn factors(&self) -> Vec<(String, u32)>;

    /// The element named by a single generator, if the ring has one.
    fn generator(name: &str) -> Option<Element<Self>>;

    /// Field map of this basis element in the JSON term schema.
    fn to_json(&self) -> serde_json::Map<String, serde_json::Value>;

    fn from_json(fields: &serde_json::Map<String, serde_json::Value>) -> Result<Self, String>;
}

/// A linear combination with no zero coefficients; coefficients on
/// 2-torsion basis elements are always 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element<B: Basis> {
    terms: BTreeMap<B, BigInt>,
}

impl<B: Basis> Default for Element<B> {
    fn default() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }
}

fn normalize<B: Basis>(b: &B, c: BigInt) -> BigInt {
    if b.is_two_torsion() {
        c.mod_floor(&BigInt::from(2))
    } else {
        c
    }
}

impl<B: Basis> Element<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(B::one())
    }

    pub fn monomial(b: B) -> Self {
        Self::term(BigInt::one(), b)
    }

    pub fn term(c: impl Into<BigInt>, b: B) -> Self {
        let mut e = Self::zero();
        e.add_term(c.into(), b);
        e
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::term(c, B::one())
    }

    /// Adds `c·b` in place, keeping the representation canonical.
    pub fn add_term(&mut self, c: BigInt, b: B) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        let reduced = normalize(&b, std::mem::take(entry));
        if reduced.is_zero() {
            self.terms.remove(&b);
        } else {
            *self.terms.get_mut(&b).expect("entry present") = reduced;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&B, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &B) -> BigInt {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(c.clone(), b.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(-c.clone(), b.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(c * k, b.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                let cc = c1 * c2;
                for (k, b) in b1.multiply(b2) {
                    out.add_term(&cc * k, b);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Parses an expression, resolving generator names through the basis.
    pub fn parse(input: &str) -> Result<Self, RingError> {
        let mut out = Self::zero();
        for t in expr::parse_terms(input)? {
            let mut e = Self::from_int(t.coeff);
            for f in &t.factors {
                let g = B::generator(&f.name).ok_or_else(|| {
                    RingError::parse(f.position, format!("unknown generator '{}'", f.name))
                })?;
                e = e.mul(&g.pow(f.exp));
            }
            out = out.add(&e);
        }
        Ok(out)
    }
}

impl<B: Basis> FromStr for Element<B> {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, RingError> {
        Element::parse(s)
    }
}

fn render_factors(fs: &[(String, u32)]) -> String {
    fs.iter()
        .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl<B: Basis> fmt::Display for Element<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let fs = b.factors();
            if fs.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&render_factors(&fs))?;
            } else {
                write!(f, "{mag}*{}", render_factors(&fs))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn coeff_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

fn coeff_from_json(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("coefficient {n} is not an integer")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad coefficient '{s}'")),
        other => Err(format!("bad coefficient {other}")),
    }
}

/// Sorted list of `{"coeff": c, <basis fields>}` objects. Coefficients are
/// JSON integers, or decimal strings when they exceed 64 bits.
impl<B: Basis> Serialize for Element<B> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let list: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(b, c)| {
                let mut m = serde_json::Map::new();
                m.insert("coeff".into(), coeff_to_json(c));
                m.extend(b.to_json());
                serde_json::Value::Object(m)
            })
            .collect();
        list.serialize(s)
    }
}

impl<'de, B: Basis> Deserialize<'de> for Element<B> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let list = Vec::<serde_json::Map<String, serde_json::Value>>::deserialize(d)?;
        let mut out = Element::zero();
        for mut m in list {
            let c = m
                .remove("coeff")
                .ok_or_else(|| D::Error::custom("missing coeff"))?;
            let c = coeff_from_json(&c).map_err(D::Error::custom)?;
            let b = B::from_json(&m).map_err(D::Error::custom)?;
            out = out.add(&Element::monomial(b).scale(&c));
        }
        Ok(out)
    }
}

pub(crate) fn json_u32(
    fields: &serde_json::Map<String, serde_json::Value>,
    key: &str,
) -> Result<u32, String> {
    match fields.get(key) {
        None => Ok(0),
        Some(v) => v
            .as_u64()
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| format!("field '{key}' must be a non-negative integer")),
    }
}
