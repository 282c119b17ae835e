//! Homotopy groups of spaces of commuting matrices, representation spaces
//! and the classifying spaces `B_com U`, `B_com O`.
//!
//! Two independent routes are provided. The closed-form route uses the Bott
//! pattern of `π*(ko)`, the modules `A(k)` and the counting formulas. The
//! coefficient route sums `π_{k - jσ}` of `kℝ` or `HZ` obtained by
//! enumerating canonical monomials. [`pi`] takes the first,
//! [`pi_via_coefficients`] the second.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CalcError;
use crate::grading::{FinAbGroup, GradedAbGroup, RODegree};
use crate::hz::hz_group_at;
use crate::kr::kr_group_at;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceFamily {
    /// Commuting `n`-tuples in `U`.
    CnU,
    /// `Rep_n(U)`.
    RepNU,
    /// Commuting `n`-tuples in `O`.
    CnO,
    /// `Rep_n(O)`.
    RepNO,
    BcomU,
    BcomO,
    /// Commuting `n`-tuples in `Spin`.
    Spin,
}

impl SpaceFamily {
    pub const ALL: [SpaceFamily; 7] = [
        SpaceFamily::CnU,
        SpaceFamily::RepNU,
        SpaceFamily::CnO,
        SpaceFamily::RepNO,
        SpaceFamily::BcomU,
        SpaceFamily::BcomO,
        SpaceFamily::Spin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpaceFamily::CnU => "cnu",
            SpaceFamily::RepNU => "repu",
            SpaceFamily::CnO => "cno",
            SpaceFamily::RepNO => "repo",
            SpaceFamily::BcomU => "bcomu",
            SpaceFamily::BcomO => "bcomo",
            SpaceFamily::Spin => "spin",
        }
    }

    /// `B_com U` and `B_com O` do not depend on `n`.
    pub fn uses_n(self) -> bool {
        !matches!(self, SpaceFamily::BcomU | SpaceFamily::BcomO)
    }
}

impl fmt::Display for SpaceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceFamily {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self, CalcError> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "cnu" => SpaceFamily::CnU,
            "repu" | "repnu" => SpaceFamily::RepNU,
            "cno" => SpaceFamily::CnO,
            "repo" | "repno" => SpaceFamily::RepNO,
            "bcomu" => SpaceFamily::BcomU,
            "bcomo" => SpaceFamily::BcomO,
            "spin" => SpaceFamily::Spin,
            other => return Err(CalcError::InvalidParameter(format!("unknown space '{other}'"))),
        })
    }
}

pub(crate) fn too_large() -> CalcError {
    CalcError::InvalidParameter("ranks overflow 64 bits; n is too large".into())
}

/// `C(n, k)`, exact in 64 bits or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// `π_d(ko)`: `Z, Z/2, Z/2, 0, Z, 0, 0, 0` repeating from degree 0.
pub fn ko_bott(d: i64) -> FinAbGroup {
    if d < 0 {
        return FinAbGroup::ZERO;
    }
    match d % 8 {
        0 | 4 => FinAbGroup::Z,
        1 | 2 => FinAbGroup::Z2,
        _ => FinAbGroup::ZERO,
    }
}

/// `π_d(ku)`: `Z` in even non-negative degrees.
pub fn ku_group(d: i64) -> FinAbGroup {
    if d >= 0 && d % 2 == 0 {
        FinAbGroup::Z
    } else {
        FinAbGroup::ZERO
    }
}

/// The augmentation ideal `I` of `π*(ko)`.
pub fn augmentation_ideal(d: i64) -> FinAbGroup {
    if d >= 1 {
        ko_bott(d)
    } else {
        FinAbGroup::ZERO
    }
}

/// The ideal `J = (η², x, y)`: everything in `I` except `η` in degree 1.
pub fn ideal_j(d: i64) -> FinAbGroup {
    if d == 1 {
        FinAbGroup::ZERO
    } else {
        augmentation_ideal(d)
    }
}

/// The `π*(ko)`-module `A(k)` evaluated on a window of degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AkModule {
    pub k: u32,
    pub graded: GradedAbGroup,
}

/// `A(k)_d` from the four-case definition on `k mod 4`. `M[s]` is `M`
/// shifted up by `s`, so `M[s]_d = M_{d - s}`.
pub fn ak_formula_at(k: u32, d: i64) -> FinAbGroup {
    assert!(k >= 1, "A(k) is defined for k >= 1");
    let j = i64::from(k / 4);
    let towers = |count: i64| -> FinAbGroup {
        // Z/2[4i] for 0 <= i < count
        if d >= 0 && d % 4 == 0 && d / 4 < count {
            FinAbGroup::Z2
        } else {
            FinAbGroup::ZERO
        }
    };
    match k % 4 {
        0 => towers(j) + ko_bott(d - 4 * j),
        1 => towers(j) + augmentation_ideal(d - (4 * j - 1)),
        2 => towers(j) + ideal_j(d - (4 * j - 2)),
        _ => towers(j + 1) + ko_bott(d - (4 * j + 5)),
    }
}

pub fn ak_formula(k: u32, window: RangeInclusive<i64>) -> AkModule {
    AkModule {
        k,
        graded: GradedAbGroup::from_window(window, |d| ak_formula_at(k, d)),
    }
}

/// `A(k)_d` as `π_{d - kσ}(kℝ)`, by monomial enumeration.
pub fn ak_oracle_at(k: u32, d: i64) -> Result<FinAbGroup, CalcError> {
    Ok(kr_group_at(RODegree::new(d, -i64::from(k)))?)
}

pub fn ak_oracle(k: u32, window: RangeInclusive<i64>) -> Result<AkModule, CalcError> {
    let mut err = None;
    let graded = GradedAbGroup::from_window(window, |d| match ak_oracle_at(k, d) {
        Ok(g) => g,
        Err(e) => {
            err.get_or_insert(e);
            FinAbGroup::ZERO
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(AkModule { k, graded }),
    }
}

/// `Σ_{j=1..n} C(n, j)·f(j)` with overflow checks.
fn binomial_sum<F>(n: u32, mut f: F) -> Result<FinAbGroup, CalcError>
where
    F: FnMut(u32) -> Result<FinAbGroup, CalcError>,
{
    let mut acc = FinAbGroup::ZERO;
    for j in 1..=n {
        let g = f(j)?;
        if g.is_zero() {
            continue;
        }
        let c = binomial(u64::from(n), u64::from(j)).ok_or_else(too_large)?;
        acc = acc
            .checked_add(g.checked_times(c).ok_or_else(too_large)?)
            .ok_or_else(too_large)?;
    }
    Ok(acc)
}

fn check_n(space: SpaceFamily, n: u32) -> Result<(), CalcError> {
    if space.uses_n() && n < 1 {
        return Err(CalcError::InvalidParameter(format!(
            "n must be at least 1 for {space}"
        )));
    }
    Ok(())
}

fn two_pow_minus(n: u32, sub: u64) -> Result<u64, CalcError> {
    1u64.checked_shl(n)
        .filter(|_| n < 64)
        .and_then(|p| p.checked_sub(sub))
        .ok_or_else(too_large)
}

/// `π_k` of `space` at `n`, by the closed formulas. `n` is ignored for the
/// `B_com` families.
pub fn pi(space: SpaceFamily, k: u32, n: u32) -> Result<FinAbGroup, CalcError> {
    check_n(space, n)?;
    let k64 = i64::from(k);
    match space {
        SpaceFamily::CnU => binomial_sum(n, |j| Ok(ku_group(k64 - i64::from(j)))),
        SpaceFamily::RepNU => {
            if k == 0 {
                Ok(FinAbGroup::ZERO)
            } else {
                let c = binomial(u64::from(n), u64::from(k)).ok_or_else(too_large)?;
                Ok(FinAbGroup::new(c, 0))
            }
        }
        SpaceFamily::CnO => binomial_sum(n, |j| Ok(ak_formula_at(j, k64))),
        SpaceFamily::RepNO => {
            if k == 0 {
                Ok(FinAbGroup::new(0, two_pow_minus(n, 1)?))
            } else if k % 2 == 1 {
                Ok(FinAbGroup::ZERO)
            } else {
                let free = binomial(u64::from(n), u64::from(k)).ok_or_else(too_large)?;
                let mut tors = 0u64;
                for j in (k + 1)..=n {
                    let c = binomial(u64::from(n), u64::from(j)).ok_or_else(too_large)?;
                    tors = tors.checked_add(c).ok_or_else(too_large)?;
                }
                Ok(FinAbGroup::new(free, tors))
            }
        }
        SpaceFamily::BcomU => {
            if k.is_multiple_of(2) {
                Ok(FinAbGroup::new(u64::from(k / 2), 0))
            } else {
                Ok(FinAbGroup::ZERO)
            }
        }
        SpaceFamily::BcomO => Ok((1..=k).map(|j| ak_formula_at(j, k64 - i64::from(j))).sum()),
        SpaceFamily::Spin => match k {
            0 => {
                let c2 = binomial(u64::from(n), 2).ok_or_else(too_large)?;
                let sub = u64::from(n)
                    .checked_add(1)
                    .and_then(|s| s.checked_add(c2))
                    .ok_or_else(too_large)?;
                Ok(FinAbGroup::new(0, two_pow_minus(n, sub)?))
            }
            1 => Ok(FinAbGroup::ZERO),
            _ => pi(SpaceFamily::CnO, k, n),
        },
    }
}

/// `π_k` of `space` at `n`, summed from the coefficient groups of `kℝ`,
/// `HZ`, `ku` or `HZ` over the stable splitting. Independent of the
/// closed formulas used by [`pi`], except for `π₀` and `π₁` of `Spin`
/// which have no coefficient description and are taken from [`pi`].
pub fn pi_via_coefficients(space: SpaceFamily, k: u32, n: u32) -> Result<FinAbGroup, CalcError> {
    check_n(space, n)?;
    let k64 = i64::from(k);
    let sigma = |j: u32| RODegree::new(k64, -i64::from(j));
    match space {
        SpaceFamily::CnU => binomial_sum(n, |j| Ok(ku_group(k64 - i64::from(j)))),
        SpaceFamily::RepNU => binomial_sum(n, |j| {
            Ok(if k64 == i64::from(j) {
                FinAbGroup::Z
            } else {
                FinAbGroup::ZERO
            })
        }),
        SpaceFamily::CnO => binomial_sum(n, |j| Ok(kr_group_at(sigma(j))?)),
        SpaceFamily::RepNO => binomial_sum(n, |j| Ok(hz_group_at(sigma(j))?)),
        SpaceFamily::BcomU => Ok((1..=k / 2).map(|j| ku_group(k64 - 2 * i64::from(j))).sum()),
        SpaceFamily::BcomO => {
            let mut acc = FinAbGroup::ZERO;
            for j in 1..=k {
                let j = i64::from(j);
                acc = acc + kr_group_at(RODegree::new(k64 - j, -j))?;
            }
            Ok(acc)
        }
        SpaceFamily::Spin => match k {
            0 | 1 => pi(space, k, n),
            _ => pi_via_coefficients(SpaceFamily::CnO, k, n),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self, CalcError> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(TableFormat::Json),
            "csv" => Ok(TableFormat::Csv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            other => Err(CalcError::InvalidParameter(format!("unknown format '{other}'"))),
        }
    }
}

/// Rows are `k = 0..=k_max`; columns are `n = 1..=n_max`, or a single
/// column for the `B_com` families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopyTable {
    pub space: SpaceFamily,
    pub n_values: Vec<u32>,
    pub rows: Vec<(u32, Vec<FinAbGroup>)>,
}

impl HomotopyTable {
    pub fn cell(&self, k: u32, n: u32) -> Option<FinAbGroup> {
        let col = if self.space.uses_n() {
            self.n_values.iter().position(|&m| m == n)?
        } else {
            0
        };
        self.rows
            .iter()
            .find(|(kk, _)| *kk == k)
            .and_then(|(_, cells)| cells.get(col).copied())
    }

    fn headers(&self) -> Vec<String> {
        if self.space.uses_n() {
            self.n_values.iter().map(|n| format!("n={n}")).collect()
        } else {
            vec!["pi_k".to_string()]
        }
    }

    pub fn render(&self, format: TableFormat) -> String {
        let headers = self.headers();
        match format {
            TableFormat::Markdown => {
                let mut s = format!("| k | {} |\n", headers.join(" | "));
                s += &format!("|---|{}\n", "---|".repeat(headers.len()));
                for (k, cells) in &self.rows {
                    let cs: Vec<String> = cells.iter().map(|g| g.to_string()).collect();
                    s += &format!("| {k} | {} |\n", cs.join(" | "));
                }
                s
            }
            TableFormat::Csv => {
                let mut s = format!("k,{}\n", headers.join(","));
                for (k, cells) in &self.rows {
                    let cs: Vec<String> = cells.iter().map(|g| g.to_string()).collect();
                    s += &format!("{k},{}\n", cs.join(","));
                }
                s
            }
            TableFormat::Json => {
                let rows: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|(k, cells)| {
                        serde_json::json!({
                            "k": k,
                            "groups": cells.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let v = serde_json::json!({
                    "space": self.space.name(),
                    "columns": headers,
                    "rows": rows,
                });
                let mut s = serde_json::to_string_pretty(&v).expect("table serializes");
                s.push('\n');
                s
            }
        }
    }
}

pub fn homotopy_table(space: SpaceFamily, k_max: u32, n_max: u32) -> Result<HomotopyTable, CalcError> {
    let n_values: Vec<u32> = if space.uses_n() {
        (1..=n_max).collect()
    } else {
        vec![1]
    };
    let mut rows = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let cells = n_values
            .iter()
            .map(|&n| pi(space, k, n))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((k, cells));
    }
    Ok(HomotopyTable {
        space,
        n_values: if space.uses_n() { n_values } else { Vec::new() },
        rows,
    })
}

/// Renders the table of `π_k(space)` for `k <= k_max`, `n <= n_max`.
pub fn table(space: SpaceFamily, k_max: u32, n_max: u32, format: TableFormat) -> Result<String, CalcError> {
    Ok(homotopy_table(space, k_max, n_max)?.render(format))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(free: u64, z2: u64) -> FinAbGroup {
        FinAbGroup::new(free, z2)
    }

    fn c(n: u64, k: u64) -> u64 {
        binomial(n, k).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), Some(6));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(62, 31), Some(465428353255261088));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn ak_examples() {
        assert_eq!(ak_formula_at(1, 0), FinAbGroup::Z2);
        assert_eq!(ak_formula_at(4, 4), FinAbGroup::Z);
        assert_eq!(ak_formula_at(2, 2), FinAbGroup::Z);
        assert_eq!(ak_oracle_at(1, 3).unwrap(), FinAbGroup::Z);
        assert_eq!(ak_oracle_at(2, 1).unwrap(), FinAbGroup::ZERO);
        for k in 1..=8 {
            assert_eq!(ak_formula(k, 0..=30), ak_oracle(k, 0..=30).unwrap());
        }
    }

    #[test]
    fn ak_vanishes_in_negative_degrees() {
        for k in 1..=12 {
            for d in -6..0 {
                assert!(ak_formula_at(k, d).is_zero());
            }
        }
    }

    #[test]
    fn pi_examples() {
        for n in 1..=8u32 {
            let nn = u64::from(n);
            assert_eq!(pi(SpaceFamily::CnO, 0, n).unwrap(), g(0, (1 << n) - 1));
            assert_eq!(pi(SpaceFamily::CnO, 1, n).unwrap(), g(0, nn));
            assert_eq!(
                pi(SpaceFamily::CnO, 6, n).unwrap(),
                g(c(nn, 2) + c(nn, 6), c(nn, 3) + c(nn, 4))
            );
        }
        assert_eq!(pi(SpaceFamily::RepNO, 2, 3).unwrap(), g(3, 1));
        assert_eq!(pi(SpaceFamily::BcomU, 6, 1).unwrap(), g(3, 0));
        assert_eq!(pi(SpaceFamily::BcomU, 5, 1).unwrap(), FinAbGroup::ZERO);
        assert_eq!(pi(SpaceFamily::Spin, 0, 3).unwrap(), g(0, 1));
        assert_eq!(pi(SpaceFamily::Spin, 1, 3).unwrap(), FinAbGroup::ZERO);
        assert_eq!(pi(SpaceFamily::Spin, 5, 3).unwrap(), pi(SpaceFamily::CnO, 5, 3).unwrap());
        assert_eq!(pi(SpaceFamily::CnU, 2, 2).unwrap(), g(1, 0));
        assert_eq!(pi(SpaceFamily::RepNO, 3, 5).unwrap(), FinAbGroup::ZERO);
        assert_eq!(pi(SpaceFamily::RepNU, 0, 5).unwrap(), FinAbGroup::ZERO);
    }

    #[test]
    fn invalid_n() {
        assert!(matches!(
            pi(SpaceFamily::CnO, 3, 0),
            Err(CalcError::InvalidParameter(_))
        ));
        assert!(pi(SpaceFamily::BcomO, 3, 0).is_ok());
        assert!(matches!(
            pi(SpaceFamily::CnO, 0, 65),
            Err(CalcError::InvalidParameter(_))
        ));
    }

    #[test]
    fn bcom_low_degrees() {
        assert_eq!(pi(SpaceFamily::BcomO, 0, 1).unwrap(), FinAbGroup::ZERO);
        assert_eq!(pi(SpaceFamily::BcomO, 1, 1).unwrap(), FinAbGroup::Z2);
        assert_eq!(pi(SpaceFamily::BcomO, 2, 1).unwrap(), g(0, 2));
    }

    #[test]
    fn both_routes_agree() {
        for space in SpaceFamily::ALL {
            for k in 0..=14 {
                for n in 1..=7 {
                    assert_eq!(
                        pi(space, k, n).unwrap(),
                        pi_via_coefficients(space, k, n).unwrap(),
                        "{space} k={k} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn unitary_parity_formula() {
        for n in 1..=10u64 {
            for k in 0..=20u64 {
                let expected: u64 = if k % 2 == 0 {
                    (1..=k / 2).map(|j| c(n, 2 * j)).sum()
                } else {
                    (0..=(k - 1) / 2).map(|j| c(n, 2 * j + 1)).sum()
                };
                let got = pi(SpaceFamily::CnU, k as u32, n as u32).unwrap();
                assert_eq!(got, g(expected, 0), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn table_renderings() {
        let t = table(SpaceFamily::RepNU, 3, 3, TableFormat::Csv).unwrap();
        assert_eq!(t, "k,n=1,n=2,n=3\n0,0,0,0\n1,Z,Z^2,Z^3\n2,0,Z,Z^3\n3,0,0,Z\n");
        let t = table(SpaceFamily::BcomO, 2, 9, TableFormat::Markdown).unwrap();
        assert_eq!(t, "| k | pi_k |\n|---|---|\n| 0 | 0 |\n| 1 | Z/2 |\n| 2 | (Z/2)^2 |\n");
        let t = table(SpaceFamily::CnO, 1, 2, TableFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t).unwrap();
        assert_eq!(v["space"], "cno");
        assert_eq!(v["columns"][1], "n=2");
        assert_eq!(v["rows"][0]["groups"][1], "(Z/2)^3");
        assert_eq!(v["rows"][1]["k"], 1);
    }

    #[test]
    fn family_names_round_trip() {
        for s in SpaceFamily::ALL {
            assert_eq!(s.name().parse::<SpaceFamily>().unwrap(), s);
        }
        assert!("xyz".parse::<SpaceFamily>().is_err());
    }
}
