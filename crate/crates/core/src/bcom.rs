//! The rings `π*(ku ∧ ℂP∞₊)` and `π*(kℝ ∧ ℂP∞₊)` in the form used for
//! `B_com U` and `B_com O`.
//!
//! On the `ku` side the module is free over `Z[v]` on classes `yᵢ` with
//! `y(s)·y(t) = y(s + t + vst)` for `y(t) = Σ yᵢ tⁱ`. Over `kℝ` the classes
//! `ȳᵢ` obey the same law with `v̄` in place of `v`, and products of the
//! coefficients are taken in [`crate::kr`]. Index 0 is the unit; the
//! non-unital rings are spanned by indices `>= 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{json_u32, Basis, Element};
use crate::error::RingError;
use crate::expr::split_indexed;
use crate::grading::RODegree;
use crate::kr::{KRElement, KRMonomial};

/// The multinomial `i! / ((i-k)! (i-l)! (k+l-i)!)` for
/// `max(k, l) <= i <= k + l`.
pub fn multinomial(i: u32, k: u32, l: u32) -> BigInt {
    assert!(i >= k.max(l) && i <= k + l, "index {i} outside [max(k,l), k+l]");
    let fact = |n: u32| -> BigInt { (1..=n).map(BigInt::from).product() };
    fact(i) / (fact(i - k) * fact(i - l) * fact(k + l - i))
}

/// `vᵉ·yᵢ`. Ordered by `yᵢ` first so printed sums run up the index.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KuMonomial {
    pub y_index: u32,
    pub v_exp: u32,
}

pub type KuElement = Element<KuMonomial>;

impl KuMonomial {
    pub const fn new(y_index: u32, v_exp: u32) -> Self {
        KuMonomial { y_index, v_exp }
    }

    pub fn degree(&self) -> i64 {
        2 * i64::from(self.y_index) + 2 * i64::from(self.v_exp)
    }
}

impl Basis for KuMonomial {
    fn one() -> Self {
        KuMonomial::default()
    }

    fn is_two_torsion(&self) -> bool {
        false
    }

    fn multiply(&self, other: &Self) -> Vec<(BigInt, Self)> {
        let (k, l) = (self.y_index, other.y_index);
        (k.max(l)..=k + l)
            .map(|i| {
                (
                    multinomial(i, k, l),
                    KuMonomial::new(i, self.v_exp + other.v_exp + k + l - i),
                )
            })
            .collect()
    }

    fn factors(&self) -> Vec<(String, u32)> {
        let mut out = Vec::new();
        if self.v_exp > 0 {
            out.push(("v".to_string(), self.v_exp));
        }
        if self.y_index > 0 {
            out.push((format!("y{}", self.y_index), 1));
        }
        out
    }

    fn generator(name: &str) -> Option<KuElement> {
        match split_indexed(name) {
            ("v", None) => Some(KuElement::monomial(KuMonomial::new(0, 1))),
            ("y", Some(k)) => Some(KuElement::monomial(KuMonomial::new(k, 0))),
            _ => None,
        }
    }

    fn to_json(&self) -> serde_json::Map<String, serde_json::Value> {
        let mut m = serde_json::Map::new();
        m.insert("v".into(), self.v_exp.into());
        m.insert("y".into(), self.y_index.into());
        m
    }

    fn from_json(fields: &serde_json::Map<String, serde_json::Value>) -> Result<Self, String> {
        Ok(KuMonomial::new(json_u32(fields, "y")?, json_u32(fields, "v")?))
    }
}

/// `yₖ·yₗ` from the closed multinomial formula.
pub fn ku_y_product(k: u32, l: u32) -> KuElement {
    KuElement::monomial(KuMonomial::new(k, 0)).mul(&KuElement::monomial(KuMonomial::new(l, 0)))
}

pub fn ku_mul(x: &KuElement, y: &KuElement) -> KuElement {
    x.mul(y)
}

pub fn parse_ku(expr: &str) -> Result<KuElement, RingError> {
    KuElement::parse(expr)
}

/// Coefficient of `sᵏ tˡ` in `y(s + t + vst)`, expanded as a power series
/// truncated at total degree `order` in `s, t`.
///
/// Works by repeated multiplication of polynomials in `s, t, v`; it does not
/// use the multinomial formula, so it serves as an independent check of
/// [`ku_y_product`].
pub fn series_oracle(k: u32, l: u32, order: u32) -> Result<KuElement, RingError> {
    if k + l > order {
        return Err(RingError::OrderTooSmall { k, l, order });
    }
    // (s_exp, t_exp, v_exp) -> coefficient of the current power of (s + t + vst)
    let mut power: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
    power.insert((0, 0, 0), BigInt::one());
    let mut out = KuElement::zero();
    for i in 0..=order {
        for (&(s, t, v), c) in &power {
            if s == k && t == l {
                out.add_term(c.clone(), KuMonomial::new(i, v));
            }
        }
        let mut next: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
        for (&(s, t, v), c) in &power {
            for (ds, dt, dv) in [(1, 0, 0), (0, 1, 0), (1, 1, 1)] {
                let key = (s + ds, t + dt, v + dv);
                if key.0 + key.1 > order {
                    continue;
                }
                *next.entry(key).or_insert_with(BigInt::zero) += c;
            }
        }
        power = next;
    }
    Ok(out)
}

/// `α·ȳᵢ` with `α` a canonical `kℝ` monomial.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BcomMonomial {
    pub ybar: u32,
    pub kr: KRMonomial,
}

pub type BcomElement = Element<BcomMonomial>;

impl BcomMonomial {
    pub const fn new(kr: KRMonomial, ybar: u32) -> Self {
        BcomMonomial { ybar, kr }
    }

    /// `ȳᵢ` sits in degree `i + iσ`, so `α·ȳᵢ` has total degree
    /// `deg α + i + iσ`. Classes of `π*(B_com O)` have zero `σ`-part.
    pub fn degree(&self) -> RODegree {
        let i = i64::from(self.ybar);
        self.kr.degree() + RODegree::new(i, i)
    }
}

/// The product before any relation is applied: `(coefficient, raw kℝ
/// exponents, ȳ index)`.
fn raw_products(x: &BcomMonomial, y: &BcomMonomial) -> Vec<(BigInt, KRMonomial, u32)> {
    let (k, l) = (x.ybar, y.ybar);
    let base = x.kr.raw_mul(&y.kr);
    (k.max(l)..=k + l)
        .map(|i| {
            let mut m = base;
            m.v_exp += k + l - i;
            (multinomial(i, k, l), m, i)
        })
        .collect()
}

impl Basis for BcomMonomial {
    fn one() -> Self {
        BcomMonomial::default()
    }

    fn is_two_torsion(&self) -> bool {
        self.kr.is_two_torsion()
    }

    fn multiply(&self, other: &Self) -> Vec<(BigInt, Self)> {
        raw_products(self, other)
            .into_iter()
            .filter_map(|(c, m, i)| KRMonomial::reduce(c, m).map(|(c, m)| (c, BcomMonomial::new(m, i))))
            .collect()
    }

    fn factors(&self) -> Vec<(String, u32)> {
        let mut out = self.kr.factors();
        if self.ybar > 0 {
            out.push((format!("yb{}", self.ybar), 1));
        }
        out
    }

    fn generator(name: &str) -> Option<BcomElement> {
        if let ("yb", Some(k)) = split_indexed(name) {
            return Some(BcomElement::monomial(BcomMonomial::new(KRMonomial::default(), k)));
        }
        let g = KRMonomial::generator(name)?;
        Some(embed(&g, 0))
    }

    fn to_json(&self) -> serde_json::Map<String, serde_json::Value> {
        let mut m = self.kr.to_json();
        m.insert("yb".into(), self.ybar.into());
        m
    }

    fn from_json(fields: &serde_json::Map<String, serde_json::Value>) -> Result<Self, String> {
        Ok(BcomMonomial::new(KRMonomial::from_json(fields)?, json_u32(fields, "yb")?))
    }
}

/// `α·ȳᵢ` for an arbitrary `kℝ` element `α`.
pub fn embed(alpha: &KRElement, ybar: u32) -> BcomElement {
    let mut out = BcomElement::zero();
    for (m, c) in alpha.terms() {
        out.add_term(c.clone(), BcomMonomial::new(*m, ybar));
    }
    out
}

/// The coefficient of `ȳᵢ` in `x`.
pub fn ybar_coefficient(x: &BcomElement, ybar: u32) -> KRElement {
    let mut out = KRElement::zero();
    for (m, c) in x.terms() {
        if m.ybar == ybar {
            out.add_term(c.clone(), m.kr);
        }
    }
    out
}

/// `ȳₖ·ȳₗ`.
pub fn bcom_y_product(k: u32, l: u32) -> BcomElement {
    let g = |i| BcomElement::monomial(BcomMonomial::new(KRMonomial::default(), i));
    g(k).mul(&g(l))
}

pub fn bcom_mul(x: &BcomElement, y: &BcomElement) -> BcomElement {
    x.mul(y)
}

pub fn parse_bcom(expr: &str) -> Result<BcomElement, RingError> {
    BcomElement::parse(expr)
}

/// One term of [`bcom_expand`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedTerm {
    pub coeff: BigInt,
    pub kr: KRMonomial,
    pub ybar: u32,
}

/// The product `x·y` term by term with exact multinomial coefficients and
/// no relation applied, in the order produced by the sum over `i`.
pub fn bcom_expand(x: &BcomElement, y: &BcomElement) -> Vec<ExpandedTerm> {
    let mut out = Vec::new();
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            for (c, kr, ybar) in raw_products(mx, my) {
                out.push(ExpandedTerm {
                    coeff: c * cx * cy,
                    kr,
                    ybar,
                });
            }
        }
    }
    out
}

/// The ring map to `ku`: `a ↦ 0`, `v̄ ↦ v`, `w ↦ 2`, `U ↦ 1`, `ȳᵢ ↦ yᵢ`.
pub fn restrict_to_ku(x: &BcomElement) -> KuElement {
    let mut out = KuElement::zero();
    for (m, c) in x.terms() {
        if m.kr.a_exp >= 1 {
            continue;
        }
        let c = c * BigInt::from(2).pow(m.kr.w_exp);
        out.add_term(c, KuMonomial::new(m.ybar, m.kr.v_exp));
    }
    out
}

/// `Some(Some(d))` if every term has degree `d`, `Some(None)` for zero and
/// `None` if the element is not homogeneous.
pub fn homogeneous_degree(x: &BcomElement) -> Option<Option<RODegree>> {
    let mut deg = None;
    for (m, _) in x.terms() {
        match deg {
            None => deg = Some(m.degree()),
            Some(d) if d != m.degree() => return None,
            _ => {}
        }
    }
    Some(deg)
}
