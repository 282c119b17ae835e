//! The subring of `π★(kℝ)` in degrees `p + qσ` with `p >= q`.
//!
//! Generated by the Euler class `a` (degree `-σ`), `w` (`2 - 2σ`), `U`
//! (`4 - 4σ`) and the Bott class `v̄` (`1 + σ`), subject to
//! `2a = 0`, `aw = 0`, `a³v̄ = 0` and `w² = 4U`.
//!
//! A monomial `aⁱ wᵉ Uᶜ v̄ᵐ` is canonical when `e <= 1`, not both `i` and
//! `e` are positive, and not both `i >= 3` and `m >= 1`. Canonical
//! monomials with `i = 0` span copies of `Z`, those with `i >= 1` copies of
//! `Z/2`. The positive-degree classes of `π*(ko)` are `η = a v̄`,
//! `x = w v̄²` and `y = U v̄⁴`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{json_u32, Basis, Element};
use crate::error::RingError;
use crate::grading::{FinAbGroup, RODegree};

/// `aⁱ wᵉ Uᶜ v̄ᵐ`. Outside of [`KRMonomial::reduce`] every value handled by
/// the ring is canonical.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KRMonomial {
    pub a_exp: u32,
    pub w_exp: u32,
    pub u_cap_exp: u32,
    pub v_exp: u32,
}

pub type KRElement = Element<KRMonomial>;

impl KRMonomial {
    pub const fn new(a_exp: u32, w_exp: u32, u_cap_exp: u32, v_exp: u32) -> Self {
        KRMonomial {
            a_exp,
            w_exp,
            u_cap_exp,
            v_exp,
        }
    }

    pub fn degree(&self) -> RODegree {
        let (a, w, u, v) = (
            i64::from(self.a_exp),
            i64::from(self.w_exp),
            i64::from(self.u_cap_exp),
            i64::from(self.v_exp),
        );
        RODegree::new(v + 2 * w + 4 * u, v - a - 2 * w - 4 * u)
    }

    pub fn is_canonical(&self) -> bool {
        self.w_exp <= 1
            && !(self.a_exp >= 1 && self.w_exp >= 1)
            && !(self.a_exp >= 3 && self.v_exp >= 1)
    }

    /// Exponent-wise product, not reduced.
    pub fn raw_mul(&self, other: &Self) -> Self {
        KRMonomial::new(
            self.a_exp + other.a_exp,
            self.w_exp + other.w_exp,
            self.u_cap_exp + other.u_cap_exp,
            self.v_exp + other.v_exp,
        )
    }

    /// Rewrites `c·m` for an arbitrary exponent vector `m` into canonical
    /// form; `None` when the term vanishes.
    ///
    /// Order: kill `a·w`, rewrite `wʲ → 4^⌊j/2⌋ U^⌊j/2⌋ w^(j mod 2)`, kill
    /// `a³v̄`, reduce the coefficient mod 2 when `a` divides the monomial.
    pub fn reduce(coeff: BigInt, m: KRMonomial) -> Option<(BigInt, KRMonomial)> {
        let mut m = m;
        let mut c = coeff;
        if m.a_exp >= 1 && m.w_exp >= 1 {
            return None;
        }
        if m.w_exp >= 2 {
            let half = m.w_exp / 2;
            c *= BigInt::from(4).pow(half);
            m.u_cap_exp += half;
            m.w_exp %= 2;
        }
        if m.a_exp >= 3 && m.v_exp >= 1 {
            return None;
        }
        if m.a_exp >= 1 {
            c %= 2;
            if c < BigInt::from(0) {
                c = -c;
            }
        }
        if c == BigInt::from(0) {
            None
        } else {
            Some((c, m))
        }
    }
}

impl Basis for KRMonomial {
    fn one() -> Self {
        KRMonomial::default()
    }

    fn is_two_torsion(&self) -> bool {
        self.a_exp >= 1
    }

    fn multiply(&self, other: &Self) -> Vec<(BigInt, Self)> {
        KRMonomial::reduce(BigInt::from(1), self.raw_mul(other))
            .into_iter()
            .collect()
    }

    fn factors(&self) -> Vec<(String, u32)> {
        [
            ("a", self.a_exp),
            ("w", self.w_exp),
            ("U", self.u_cap_exp),
            ("vb", self.v_exp),
        ]
        .into_iter()
        .filter(|(_, e)| *e > 0)
        .map(|(n, e)| (n.to_string(), e))
        .collect()
    }

    fn generator(name: &str) -> Option<KRElement> {
        let m = match name {
            "a" => KRMonomial::new(1, 0, 0, 0),
            "w" => KRMonomial::new(0, 1, 0, 0),
            "U" => KRMonomial::new(0, 0, 1, 0),
            "vb" => KRMonomial::new(0, 0, 0, 1),
            _ => return None,
        };
        Some(KRElement::monomial(m))
    }

    fn to_json(&self) -> serde_json::Map<String, serde_json::Value> {
        let mut m = serde_json::Map::new();
        m.insert("a".into(), self.a_exp.into());
        m.insert("w".into(), self.w_exp.into());
        m.insert("U".into(), self.u_cap_exp.into());
        m.insert("vb".into(), self.v_exp.into());
        m
    }

    fn from_json(fields: &serde_json::Map<String, serde_json::Value>) -> Result<Self, String> {
        let m = KRMonomial::new(
            json_u32(fields, "a")?,
            json_u32(fields, "w")?,
            json_u32(fields, "U")?,
            json_u32(fields, "vb")?,
        );
        if m.is_canonical() {
            Ok(m)
        } else {
            Err(format!("monomial {m:?} is not canonical"))
        }
    }
}

pub fn a() -> KRElement {
    KRElement::monomial(KRMonomial::new(1, 0, 0, 0))
}

pub fn w() -> KRElement {
    KRElement::monomial(KRMonomial::new(0, 1, 0, 0))
}

pub fn u_cap() -> KRElement {
    KRElement::monomial(KRMonomial::new(0, 0, 1, 0))
}

pub fn vb() -> KRElement {
    KRElement::monomial(KRMonomial::new(0, 0, 0, 1))
}

/// `η = a v̄`, generating `π₁(ko)`.
pub fn eta() -> KRElement {
    a().mul(&vb())
}

/// `x = w v̄²`, generating `π₄(ko)`.
pub fn x() -> KRElement {
    w().mul(&vb().pow(2))
}

/// `y = U v̄⁴`, generating `π₈(ko)`.
pub fn y() -> KRElement {
    u_cap().mul(&vb().pow(4))
}

pub fn kr_mul(x: &KRElement, y: &KRElement) -> KRElement {
    x.mul(y)
}

pub fn parse_kr(expr: &str) -> Result<KRElement, RingError> {
    KRElement::parse(expr)
}

/// The canonical monomials of degree `d`.
///
/// Every monomial has `p = v + 2w + 4U` and `p - q = a + 4w + 8U`, so for
/// fixed `d` the search is over `v`, `w`, `U` with `a` determined.
pub fn kr_basis_at(d: RODegree) -> Result<Vec<KRMonomial>, RingError> {
    if !d.in_region() {
        return Err(RingError::OutOfRegion(d));
    }
    let mut out = Vec::new();
    if d.p < 0 {
        return Ok(out);
    }
    let p = d.p;
    for v in 0..=p {
        for w in 0..=1i64 {
            let rest = p - v - 2 * w;
            if rest < 0 || rest % 4 != 0 {
                continue;
            }
            let u = rest / 4;
            let a = v - 2 * w - 4 * u - d.q;
            if a < 0 {
                continue;
            }
            let m = KRMonomial::new(a as u32, w as u32, u as u32, v as u32);
            if m.is_canonical() {
                debug_assert_eq!(m.degree(), d);
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// The additive group `π_{p+qσ}(kℝ)` for `p >= q`, by counting canonical
/// monomials.
pub fn kr_group_at(d: RODegree) -> Result<FinAbGroup, RingError> {
    let basis = kr_basis_at(d)?;
    let z2 = basis.iter().filter(|m| m.a_exp >= 1).count() as u64;
    Ok(FinAbGroup::new(basis.len() as u64 - z2, z2))
}

/// `π_d(ko)`, read off the `q = 0` row. Zero in negative degrees.
pub fn ko_group(d: i64) -> FinAbGroup {
    if d < 0 {
        return FinAbGroup::ZERO;
    }
    kr_group_at(RODegree::new(d, 0)).expect("q = 0 <= p")
}

/// Whether every term of `x` has the same degree; the zero element counts
/// as homogeneous.
pub fn homogeneous_degree(x: &KRElement) -> Option<Option<RODegree>> {
    let mut degs = x.terms().map(|(m, _)| m.degree());
    let first = match degs.next() {
        None => return Some(None),
        Some(d) => d,
    };
    if degs.all(|d| d == first) {
        Some(Some(first))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> KRElement {
        parse_kr(s).unwrap()
    }

    #[test]
    fn defining_relations() {
        assert_eq!(w().mul(&w()), el("4*U"));
        assert!(a().mul(&w()).is_zero());
        assert!(a().pow(3).mul(&vb()).is_zero());
        assert!(a().scale(&BigInt::from(2)).is_zero());
    }

    #[test]
    fn ko_relations() {
        assert_eq!(x().mul(&x()), y().scale(&BigInt::from(4)));
        assert!(eta().pow(3).is_zero());
        assert!(eta().mul(&x()).is_zero());
        assert!(eta().scale(&BigInt::from(2)).is_zero());
        assert!(!eta().pow(2).is_zero());
    }

    #[test]
    fn unit_acts_trivially() {
        assert_eq!(KRElement::one().mul(&el("a*U")), el("a*U"));
    }

    #[test]
    fn parsing_reduces() {
        let m = el("a^2*U*vb");
        assert_eq!(m.len(), 1);
        assert_eq!(m.coefficient(&KRMonomial::new(2, 0, 1, 1)), BigInt::from(1));
        assert!(el("2*a").is_zero());
        assert_eq!(el("w^2").to_string(), "4*U");
        assert_eq!(el("3*a").to_string(), "a");
        assert_eq!(el("-a").to_string(), "a");
        assert_eq!(el("w - 3*U + 1").to_string(), "1 - 3*U + w");
        assert!(matches!(parse_kr("q"), Err(RingError::Parse { position: 0, .. })));
        assert!(matches!(parse_kr("a*u"), Err(RingError::Parse { position: 2, .. })));
    }

    #[test]
    fn groups_at_generators() {
        assert_eq!(kr_group_at(RODegree::new(0, -1)).unwrap(), FinAbGroup::Z2);
        assert_eq!(kr_group_at(RODegree::new(1, 1)).unwrap(), FinAbGroup::Z);
        assert_eq!(kr_group_at(RODegree::new(2, -2)).unwrap(), FinAbGroup::Z);
        assert_eq!(kr_group_at(RODegree::new(0, 0)).unwrap(), FinAbGroup::Z);
        assert_eq!(kr_group_at(RODegree::new(4, -4)).unwrap(), FinAbGroup::Z);
        assert_eq!(
            kr_group_at(RODegree::new(-1, 0)),
            Err(RingError::OutOfRegion(RODegree::new(-1, 0)))
        );
    }

    #[test]
    fn ko_examples() {
        assert_eq!(ko_group(1), FinAbGroup::Z2);
        assert_eq!(ko_group(4), FinAbGroup::Z);
        assert_eq!(ko_group(3), FinAbGroup::ZERO);
        assert_eq!(ko_group(-2), FinAbGroup::ZERO);
    }

    #[test]
    fn basis_monomials_have_the_requested_degree() {
        for p in -3..=14 {
            for q in -14..=p {
                let d = RODegree::new(p, q);
                for m in kr_basis_at(d).unwrap() {
                    assert_eq!(m.degree(), d);
                    assert!(m.is_canonical());
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let e = el("3*U*vb + a^2");
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"[{"coeff":3,"a":0,"w":0,"U":1,"vb":1},{"coeff":1,"a":2,"w":0,"U":0,"vb":0}]"#
        );
        let back: KRElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<KRElement>(r#"[{"coeff":1,"a":1,"w":1}]"#).is_err());
    }

    #[test]
    fn homogeneity() {
        assert_eq!(homogeneous_degree(&el("a*vb")), Some(Some(RODegree::new(1, 0))));
        assert_eq!(homogeneous_degree(&KRElement::zero()), Some(None));
        assert_eq!(homogeneous_degree(&el("a + vb")), None);
    }
}
