//! Browser bindings. Each export is a thin wrapper over a plain function
//! returning `Result<String, String>`, so the logic is testable natively.

use realk::hz::hz_group_at;
use realk::kr::kr_group_at;
use realk::{table, Basis, Element, RODegree, SpaceFamily, TableFormat};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Keeps a single request well under a frame budget.
const MAX_SPAN: i64 = 48;
const MAX_K: u32 = 40;
const MAX_N: u32 = 16;

fn to_js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Nonzero groups of `kr` or `hz` for `p_min <= p <= p_max`, `q_min <= q <= p`,
/// as `{"ring", "cells": [{"p", "q", "free_rank", "z2_rank"}]}`.
pub fn coefficient_chart_impl(ring: &str, p_min: i64, p_max: i64, q_min: i64) -> Result<String, String> {
    if p_max < p_min || p_max - p_min > MAX_SPAN || p_max - q_min > 2 * MAX_SPAN {
        return Err(format!("window too large or empty (span at most {MAX_SPAN})"));
    }
    let group_at = match ring {
        "kr" => kr_group_at,
        "hz" => hz_group_at,
        other => return Err(format!("unknown ring {other:?}, expected kr or hz")),
    };
    let mut cells = Vec::new();
    for p in p_min..=p_max {
        for q in q_min..=p {
            let g = group_at(RODegree::new(p, q)).map_err(|e| e.to_string())?;
            if !g.is_zero() {
                cells.push(json!({"p": p, "q": q, "free_rank": g.free_rank, "z2_rank": g.z2_rank}));
            }
        }
    }
    Ok(json!({"ring": ring, "cells": cells}).to_string())
}

pub fn homotopy_table_impl(space: &str, k_max: u32, n_max: u32) -> Result<String, String> {
    if k_max > MAX_K || n_max == 0 || n_max > MAX_N {
        return Err(format!("need k_max <= {MAX_K} and 1 <= n_max <= {MAX_N}"));
    }
    let space: SpaceFamily = space.parse().map_err(|e: realk::CalcError| e.to_string())?;
    table(space, k_max, n_max, TableFormat::Json).map_err(|e| e.to_string())
}

fn product<B: Basis>(x: &str, y: &str) -> Result<String, String> {
    let x = Element::<B>::parse(x).map_err(|e| format!("first factor: {e}"))?;
    let y = Element::<B>::parse(y).map_err(|e| format!("second factor: {e}"))?;
    Ok(x.mul(&y).to_string())
}

pub fn multiply_impl(ring: &str, x: &str, y: &str) -> Result<String, String> {
    match ring {
        "kr" => product::<realk::KRMonomial>(x, y),
        "hz" => product::<realk::HZMonomial>(x, y),
        "ku" => product::<realk::KuMonomial>(x, y),
        "bcom-kr" => product::<realk::BcomMonomial>(x, y),
        other => Err(format!("unknown ring {other:?}")),
    }
}

#[wasm_bindgen]
pub fn coefficient_chart(ring: &str, p_min: i32, p_max: i32, q_min: i32) -> Result<String, JsError> {
    to_js(coefficient_chart_impl(ring, p_min.into(), p_max.into(), q_min.into()))
}

#[wasm_bindgen]
pub fn homotopy_table(space: &str, k_max: u32, n_max: u32) -> Result<String, JsError> {
    to_js(homotopy_table_impl(space, k_max, n_max))
}

#[wasm_bindgen]
pub fn multiply(ring: &str, x: &str, y: &str) -> Result<String, JsError> {
    to_js(multiply_impl(ring, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart() {
        let v: serde_json::Value = serde_json::from_str(&coefficient_chart_impl("kr", 0, 4, -4).unwrap()).unwrap();
        let cells = v["cells"].as_array().unwrap();
        assert!(cells.iter().any(|c| c["p"] == 4 && c["q"] == -4 && c["free_rank"] == 1));
        assert!(coefficient_chart_impl("ko", 0, 1, 0).is_err());
        assert!(coefficient_chart_impl("kr", 0, 500, 0).is_err());
    }

    #[test]
    fn table_and_product() {
        let v: serde_json::Value = serde_json::from_str(&homotopy_table_impl("cno", 2, 3).unwrap()).unwrap();
        assert_eq!(v["rows"][0]["groups"][2], "(Z/2)^7");
        assert!(homotopy_table_impl("cno", 2, 99).is_err());
        assert_eq!(multiply_impl("bcom-kr", "a*U*yb5", "U*vb*yb3").unwrap(), "a*U^2*vb^2*yb7");
        assert!(multiply_impl("kr", "q", "w").unwrap_err().starts_with("first factor"));
    }
}
