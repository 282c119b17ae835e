//! The region `p >= q` of `π★(HZ)` for the constant Mackey functor `Z`,
//! and the ring map from `π★(kℝ)` induced by the zeroth Postnikov section.
//!
//! Generated by `a` (degree `-σ`) and `u` (degree `2 - 2σ`) with the single
//! relation `2a = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{json_u32, Basis, Element};
use crate::error::RingError;
use crate::grading::{FinAbGroup, RODegree};
use crate::kr::KRElement;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HZMonomial {
    pub a_exp: u32,
    pub u_exp: u32,
}

pub type HZElement = Element<HZMonomial>;

impl HZMonomial {
    pub const fn new(a_exp: u32, u_exp: u32) -> Self {
        HZMonomial { a_exp, u_exp }
    }

    pub fn degree(&self) -> RODegree {
        let (a, u) = (i64::from(self.a_exp), i64::from(self.u_exp));
        RODegree::new(2 * u, -a - 2 * u)
    }
}

impl Basis for HZMonomial {
    fn one() -> Self {
        HZMonomial::default()
    }

    fn is_two_torsion(&self) -> bool {
        self.a_exp >= 1
    }

    fn multiply(&self, other: &Self) -> Vec<(BigInt, Self)> {
        vec![(
            BigInt::from(1),
            HZMonomial::new(self.a_exp + other.a_exp, self.u_exp + other.u_exp),
        )]
    }

    fn factors(&self) -> Vec<(String, u32)> {
        [("a", self.a_exp), ("u", self.u_exp)]
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .map(|(n, e)| (n.to_string(), e))
            .collect()
    }

    fn generator(name: &str) -> Option<HZElement> {
        match name {
            "a" => Some(HZElement::monomial(HZMonomial::new(1, 0))),
            "u" => Some(HZElement::monomial(HZMonomial::new(0, 1))),
            _ => None,
        }
    }

    fn to_json(&self) -> serde_json::Map<String, serde_json::Value> {
        let mut m = serde_json::Map::new();
        m.insert("a".into(), self.a_exp.into());
        m.insert("u".into(), self.u_exp.into());
        m
    }

    fn from_json(fields: &serde_json::Map<String, serde_json::Value>) -> Result<Self, String> {
        Ok(HZMonomial::new(json_u32(fields, "a")?, json_u32(fields, "u")?))
    }
}

pub fn hz_mul(x: &HZElement, y: &HZElement) -> HZElement {
    x.mul(y)
}

pub fn parse_hz(expr: &str) -> Result<HZElement, RingError> {
    HZElement::parse(expr)
}

/// Monomials `aⁱ uᶜ` of degree `d`: `p = 2c`, `q = -i - 2c`.
pub fn hz_basis_at(d: RODegree) -> Result<Vec<HZMonomial>, RingError> {
    if !d.in_region() {
        return Err(RingError::OutOfRegion(d));
    }
    let mut out = Vec::new();
    for c in 0..=d.p.max(-1) / 2 {
        for i in 0..=(d.p - d.q) {
            let m = HZMonomial::new(i as u32, c as u32);
            if m.degree() == d {
                out.push(m);
            }
        }
    }
    Ok(out)
}

pub fn hz_group_at(d: RODegree) -> Result<FinAbGroup, RingError> {
    let basis = hz_basis_at(d)?;
    let z2 = basis.iter().filter(|m| m.a_exp >= 1).count() as u64;
    Ok(FinAbGroup::new(basis.len() as u64 - z2, z2))
}

/// `a ↦ a`, `v̄ ↦ 0`, `w ↦ 2u`, `U ↦ u²`.
pub fn postnikov(x: &KRElement) -> HZElement {
    let mut out = HZElement::zero();
    for (m, c) in x.terms() {
        if m.v_exp >= 1 {
            continue;
        }
        let c = c * BigInt::from(2).pow(m.w_exp);
        out.add_term(c, HZMonomial::new(m.a_exp, m.w_exp + 2 * m.u_cap_exp));
    }
    out
}

/// Whether `x` lies in the image of [`postnikov`]. Monomial images are
/// distinct, so membership is decided term by term: `uᵏ` with `k` odd needs
/// an even coefficient, and `aⁱuᵏ` with `k` odd is never hit.
pub fn is_in_postnikov_image(x: &HZElement) -> bool {
    x.terms().all(|(m, c)| {
        if m.u_exp % 2 == 0 {
            true
        } else {
            m.a_exp == 0 && c.is_even()
        }
    })
}
