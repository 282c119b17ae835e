//! Bidegrees and finitely generated abelian groups with only 2-torsion.
//!
//! Every group computed in this crate has the shape `Z^r + (Z/2)^s`, either
//! on its own ([`FinAbGroup`]) or assembled over the integers
//! ([`GradedAbGroup`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, RangeInclusive};

use serde::{Deserialize, Serialize};

use crate::error::GradingError;

/// A degree `p + q·σ` in the RO(C2)-grading, `p` counting trivial and `q`
/// sign representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RODegree {
    pub p: i64,
    pub q: i64,
}

impl RODegree {
    pub const ZERO: RODegree = RODegree { p: 0, q: 0 };

    pub const fn new(p: i64, q: i64) -> Self {
        RODegree { p, q }
    }

    /// Whether the degree lies in the computed region `p >= q`.
    pub fn in_region(self) -> bool {
        self.p >= self.q
    }
}

impl Add for RODegree {
    type Output = RODegree;

    fn add(self, rhs: RODegree) -> RODegree {
        RODegree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl fmt::Display for RODegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p, self.q) {
            (p, 0) => write!(f, "{p}"),
            (0, q) => write!(f, "{q}σ"),
            (p, q) if q < 0 => write!(f, "{p}-{}σ", -q),
            (p, q) => write!(f, "{p}+{q}σ"),
        }
    }
}

/// The group `Z^free_rank + (Z/2)^z2_rank`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    pub free_rank: u64,
    pub z2_rank: u64,
}

impl FinAbGroup {
    pub const ZERO: FinAbGroup = FinAbGroup { free_rank: 0, z2_rank: 0 };
    pub const Z: FinAbGroup = FinAbGroup { free_rank: 1, z2_rank: 0 };
    pub const Z2: FinAbGroup = FinAbGroup { free_rank: 0, z2_rank: 1 };

    pub const fn new(free_rank: u64, z2_rank: u64) -> Self {
        FinAbGroup { free_rank, z2_rank }
    }

    /// Builds a group from its free rank and the orders of its cyclic torsion
    /// summands. Only order 2 is accepted.
    pub fn from_invariants(free_rank: u64, torsion_orders: &[u64]) -> Result<Self, GradingError> {
        for &order in torsion_orders {
            if order != 2 {
                return Err(GradingError::UnsupportedTorsion(order));
            }
        }
        Ok(FinAbGroup::new(free_rank, torsion_orders.len() as u64))
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.z2_rank == 0
    }

    /// Direct sum of `c` copies.
    pub fn times(self, c: u64) -> FinAbGroup {
        FinAbGroup::new(self.free_rank * c, self.z2_rank * c)
    }

    pub fn checked_times(self, c: u64) -> Option<FinAbGroup> {
        Some(FinAbGroup::new(
            self.free_rank.checked_mul(c)?,
            self.z2_rank.checked_mul(c)?,
        ))
    }

    pub fn checked_add(self, other: FinAbGroup) -> Option<FinAbGroup> {
        Some(FinAbGroup::new(
            self.free_rank.checked_add(other.free_rank)?,
            self.z2_rank.checked_add(other.z2_rank)?,
        ))
    }
}

impl Add for FinAbGroup {
    type Output = FinAbGroup;

    fn add(self, rhs: FinAbGroup) -> FinAbGroup {
        FinAbGroup::new(self.free_rank + rhs.free_rank, self.z2_rank + rhs.z2_rank)
    }
}

impl std::iter::Sum for FinAbGroup {
    fn sum<I: Iterator<Item = FinAbGroup>>(iter: I) -> FinAbGroup {
        iter.fold(FinAbGroup::ZERO, |acc, g| acc + g)
    }
}

/// Renders as `Z^r + (Z/2)^s`, omitting trivial factors; `0` for the
/// trivial group.
impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::with_capacity(2);
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        match self.z2_rank {
            0 => {}
            1 => parts.push("Z/2".to_string()),
            s => parts.push(format!("(Z/2)^{s}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// An integer-graded group, stored sparsely. Degrees carrying the zero
/// group are never present in the map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedAbGroup {
    support: BTreeMap<i64, FinAbGroup>,
}

impl GradedAbGroup {
    pub fn zero() -> Self {
        GradedAbGroup::default()
    }

    /// A single group concentrated in one degree.
    pub fn concentrated(degree: i64, group: FinAbGroup) -> Self {
        let mut g = GradedAbGroup::zero();
        g.insert(degree, group);
        g
    }

    /// Evaluates `f` on every degree of `window` and keeps the nonzero values.
    pub fn from_window<F>(window: RangeInclusive<i64>, mut f: F) -> Self
    where
        F: FnMut(i64) -> FinAbGroup,
    {
        let mut g = GradedAbGroup::zero();
        for d in window {
            g.insert(d, f(d));
        }
        g
    }

    fn insert(&mut self, degree: i64, group: FinAbGroup) {
        if group.is_zero() {
            self.support.remove(&degree);
        } else {
            self.support.insert(degree, group);
        }
    }

    /// The group in degree `d`; zero outside the stored support.
    pub fn at(&self, d: i64) -> FinAbGroup {
        self.support.get(&d).copied().unwrap_or(FinAbGroup::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, FinAbGroup)> + '_ {
        self.support.iter().map(|(&d, &g)| (d, g))
    }

    /// Restriction to the degrees of `window`.
    pub fn restrict(&self, window: RangeInclusive<i64>) -> GradedAbGroup {
        GradedAbGroup {
            support: self.support.range(window).map(|(&d, &g)| (d, g)).collect(),
        }
    }
}

/// Degreewise direct sum.
pub fn direct_sum<'a, I>(xs: I) -> GradedAbGroup
where
    I: IntoIterator<Item = &'a GradedAbGroup>,
{
    let mut out = BTreeMap::new();
    for g in xs {
        for (d, h) in g.iter() {
            let slot = out.entry(d).or_insert(FinAbGroup::ZERO);
            *slot = *slot + h;
        }
    }
    GradedAbGroup { support: out }
}

/// `shift(g, k)` in degree `d` is `g` in degree `d - k`.
pub fn shift(g: &GradedAbGroup, k: i64) -> GradedAbGroup {
    GradedAbGroup {
        support: g.support.iter().map(|(&d, &h)| (d + k, h)).collect(),
    }
}

/// Direct sum of `c` copies of `g`.
pub fn with_multiplicity(g: &GradedAbGroup, c: u64) -> GradedAbGroup {
    if c == 0 {
        return GradedAbGroup::zero();
    }
    GradedAbGroup {
        support: g.support.iter().map(|(&d, &h)| (d, h.times(c))).collect(),
    }
}
