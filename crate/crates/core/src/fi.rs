//! The homotopy groups `π_k` of `C_n(U)`, `Rep_n(U)`, `C_n(O)`, `Rep_n(O)`
//! as FI-modules in `n`, and exact representation-stability verdicts.
//!
//! Each functor is a sum of modules induced from `Σ_n`-modules `π_{k-nσ}` of
//! the coefficient theory, with `Σ_n` acting through the sign. Evaluated at
//! `m`, the summand for `n` contributes `C(m, n)` copies, so the sign twist
//! changes no rank and is kept only as metadata.
//!
//! Finiteness is decided from the shape of canonical monomials rather than
//! by sampling. A `kℝ` monomial in degree `k - nσ` is either free or
//! divisible by `v̄`, which forces `n <= k`, or of the form `aⁱwᵉUᶜ` with
//! `4c + 2e = k`, an unbounded tower that exists exactly when `4 | k`
//! (`e = 1` would meet `a` and vanish). For `HZ` the towers `aⁱuᶜ` exist
//! exactly for even `k`.

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::CalcError;
use crate::grading::{FinAbGroup, RODegree};
use crate::homotopy::{binomial, ku_group, too_large, SpaceFamily};
use crate::hz::hz_group_at;
use crate::kr::kr_group_at;

/// `(n, π_{k-nσ})`, serialized as a two-element array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summand {
    pub n: u32,
    pub group: FinAbGroup,
}

impl Serialize for Summand {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.n)?;
        t.serialize_element(&self.group)?;
        t.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FIDecomposition {
    pub family: SpaceFamily,
    pub k: u32,
    pub n_max: u32,
    /// Nonzero summands with `n <= n_max`, ascending in `n`.
    pub summands: Vec<Summand>,
    /// True when no summand with `n > n_max` is nonzero.
    pub complete: bool,
    /// `Σ_n` acts on each summand through the sign representation.
    pub sign_twisted: bool,
}

impl FIDecomposition {
    /// `⊕ₙ C(m, n)·summand(n)`, the value of the FI-module at `m`.
    pub fn evaluate(&self, m: u32) -> Result<FinAbGroup, CalcError> {
        if m > self.n_max && !self.complete {
            return Err(CalcError::InvalidParameter(format!(
                "decomposition computed up to n = {}, cannot evaluate at {m}",
                self.n_max
            )));
        }
        let mut acc = FinAbGroup::ZERO;
        for s in self.summands.iter().filter(|s| s.n <= m) {
            let c = binomial(u64::from(m), u64::from(s.n)).ok_or_else(too_large)?;
            acc = acc
                .checked_add(s.group.checked_times(c).ok_or_else(too_large)?)
                .ok_or_else(too_large)?;
        }
        Ok(acc)
    }
}

fn check_family(family: SpaceFamily) -> Result<(), CalcError> {
    match family {
        SpaceFamily::CnU | SpaceFamily::RepNU | SpaceFamily::CnO | SpaceFamily::RepNO => Ok(()),
        other => Err(CalcError::UnsupportedFamily(other.name().to_string())),
    }
}

/// The Σₙ-module `π_{k-nσ}` of the coefficient theory of `family`: `ku` and
/// non-equivariant `HZ` for the unitary families, `kℝ` and `HZ` for the
/// orthogonal ones.
pub fn coeff_group(family: SpaceFamily, k: u32, n: u32) -> Result<FinAbGroup, CalcError> {
    check_family(family)?;
    let (k, n) = (i64::from(k), i64::from(n));
    Ok(match family {
        SpaceFamily::CnU => ku_group(k - n),
        SpaceFamily::RepNU => {
            if k == n {
                FinAbGroup::Z
            } else {
                FinAbGroup::ZERO
            }
        }
        SpaceFamily::CnO => kr_group_at(RODegree::new(k, -n))?,
        _ => hz_group_at(RODegree::new(k, -n))?,
    })
}

/// An `n` beyond which every summand vanishes, or `None` when infinitely
/// many summands are nonzero.
pub fn summand_bound(family: SpaceFamily, k: u32) -> Result<Option<u32>, CalcError> {
    check_family(family)?;
    Ok(match family {
        SpaceFamily::CnO if k.is_multiple_of(4) => None,
        SpaceFamily::RepNO if k.is_multiple_of(2) => None,
        _ => Some(k),
    })
}

pub fn fi_decomposition(family: SpaceFamily, k: u32, n_max: u32) -> Result<FIDecomposition, CalcError> {
    let bound = summand_bound(family, k)?;
    let mut summands = Vec::new();
    for n in 1..=n_max {
        let group = coeff_group(family, k, n)?;
        if !group.is_zero() {
            summands.push(Summand { n, group });
        }
    }
    Ok(FIDecomposition {
        family,
        k,
        n_max,
        summands,
        complete: bound.is_some_and(|b| b <= n_max),
        sign_twisted: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    /// The largest `n` with a nonzero summand; `None` for the zero module
    /// and for unstable modules.
    pub stable_from: Option<u32>,
    /// All summands when stable; the first `k + 2` when not.
    pub summands: Vec<Summand>,
}

/// Representation stability of `n ↦ π_k(family_n)`: stable exactly when
/// only finitely many induced summands are nonzero.
pub fn is_rep_stable(family: SpaceFamily, k: u32) -> Result<StabilityVerdict, CalcError> {
    match summand_bound(family, k)? {
        Some(bound) => {
            let d = fi_decomposition(family, k, bound)?;
            Ok(StabilityVerdict {
                stable: true,
                stable_from: d.summands.last().map(|s| s.n),
                summands: d.summands,
            })
        }
        None => Ok(StabilityVerdict {
            stable: false,
            stable_from: None,
            summands: fi_decomposition(family, k, k + 2)?.summands,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::pi;

    const FAMILIES: [SpaceFamily; 4] = [
        SpaceFamily::CnU,
        SpaceFamily::RepNU,
        SpaceFamily::CnO,
        SpaceFamily::RepNO,
    ];

    #[test]
    fn unitary_summands() {
        let d = fi_decomposition(SpaceFamily::CnU, 6, 10).unwrap();
        let ns: Vec<u32> = d.summands.iter().map(|s| s.n).collect();
        assert_eq!(ns, vec![2, 4, 6]);
        assert!(d.summands.iter().all(|s| s.group == FinAbGroup::Z));
        assert!(d.complete);
        let d = fi_decomposition(SpaceFamily::RepNU, 5, 10).unwrap();
        assert_eq!(d.summands, vec![Summand { n: 5, group: FinAbGroup::Z }]);
    }

    #[test]
    fn orthogonal_tower() {
        let d = fi_decomposition(SpaceFamily::CnO, 4, 9).unwrap();
        assert!(!d.complete);
        assert!(d.summands.iter().any(|s| s.n == 4 && s.group.free_rank == 1));
        for n in 5..=9 {
            assert!(d.summands.iter().any(|s| s.n == n && s.group == FinAbGroup::Z2));
        }
    }

    #[test]
    fn verdicts() {
        let v = is_rep_stable(SpaceFamily::CnO, 6).unwrap();
        assert!(v.stable);
        assert_eq!(v.stable_from, Some(6));
        assert_eq!(is_rep_stable(SpaceFamily::CnO, 7).unwrap().stable_from, Some(5));
        assert!(!is_rep_stable(SpaceFamily::CnO, 8).unwrap().stable);
        let v = is_rep_stable(SpaceFamily::RepNO, 3).unwrap();
        assert!(v.stable && v.summands.is_empty() && v.stable_from.is_none());
        assert!(!is_rep_stable(SpaceFamily::RepNO, 2).unwrap().stable);
    }

    #[test]
    fn unsupported() {
        for f in [SpaceFamily::BcomO, SpaceFamily::BcomU, SpaceFamily::Spin] {
            assert!(matches!(
                is_rep_stable(f, 3),
                Err(CalcError::UnsupportedFamily(_))
            ));
        }
    }

    #[test]
    fn evaluation_matches_pi() {
        for family in FAMILIES {
            for k in 0..=12 {
                let d = fi_decomposition(family, k, 10).unwrap();
                for m in 1..=10 {
                    assert_eq!(d.evaluate(m).unwrap(), pi(family, k, m).unwrap(), "{family} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn cutoff_is_sound() {
        for family in FAMILIES {
            for k in 0..=16 {
                match summand_bound(family, k).unwrap() {
                    Some(b) => {
                        for n in b + 1..=k + 40 {
                            assert!(coeff_group(family, k, n).unwrap().is_zero(), "{family} k={k} n={n}");
                        }
                    }
                    None => {
                        for n in k + 1..=k + 40 {
                            assert!(!coeff_group(family, k, n).unwrap().is_zero(), "{family} k={k} n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn verdict_json() {
        let v = is_rep_stable(SpaceFamily::CnO, 2).unwrap();
        let s = serde_json::to_value(&v).unwrap();
        assert_eq!(s["stable"], true);
        assert_eq!(s["stable_from"], 2);
        assert_eq!(s["summands"][0][0], 2);
        assert_eq!(s["summands"][0][1]["free_rank"], 1);
        let s = serde_json::to_value(is_rep_stable(SpaceFamily::RepNO, 1).unwrap()).unwrap();
        assert!(s["stable_from"].is_null());
    }
}
