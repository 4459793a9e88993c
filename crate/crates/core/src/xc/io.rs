//! The XC-structure JSON schema.
//!
//! ```json
//! {
//!   "algebra": "sw" | { inline algebra spec },
//!   "params": ["l", "m"],
//!   "constraints": ["l", "l^2-4"],
//!   "R": [["expr", …], …],          // coefficient of e_i (x) e_j
//!   "kappa": ["expr", …],
//!   "Rinv": …,                      // optional; solved when missing
//!   "kappaInv": …                   // optional; solved when missing
//! }
//! ```

use super::XCStructure;
use crate::algebra::{parse_coeff_vec, AlgebraError, AlgebraSpec, Element, Tensor};
use crate::scalar::{param_set, parse_scalar};
use crate::sweedler;
use serde::Deserialize;
use std::sync::Arc;

#[derive(Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Name(String),
    Inline(serde_json::Value),
}

#[derive(Deserialize)]
pub struct XcStructureFile {
    pub algebra: AlgebraRef,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub constraints: Vec<String>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<String>>,
    pub kappa: Vec<String>,
    #[serde(rename = "Rinv", default)]
    pub r_inv: Option<Vec<Vec<String>>>,
    #[serde(rename = "kappaInv", default)]
    pub kappa_inv: Option<Vec<String>>,
}

fn resolve_algebra(r: &AlgebraRef) -> Result<Arc<AlgebraSpec>, AlgebraError> {
    match r {
        AlgebraRef::Name(name) => match name.as_str() {
            "sw" | "SW" | "sweedler" => Ok(sweedler::sweedler_spec()),
            other => Err(AlgebraError::Json(format!(
                "unknown algebra name `{other}` (expected \"sw\" or an inline spec)"
            ))),
        },
        AlgebraRef::Inline(value) => AlgebraSpec::from_json(&value.to_string()),
    }
}

fn parse_order2(
    algebra: &Arc<AlgebraSpec>,
    rows: &[Vec<String>],
    params: &std::collections::BTreeSet<String>,
    what: &str,
) -> Result<Tensor, AlgebraError> {
    let n = algebra.dim();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::BadSpec(format!(
            "{what} must be a {n}x{n} array of scalar expressions"
        )));
    }
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            let c = parse_scalar(text, params).map_err(|source| AlgebraError::Expr {
                context: format!("{what}[{}][{}]", i + 1, j + 1),
                source,
            })?;
            entries.push((vec![i as u8, j as u8], c));
        }
    }
    Tensor::from_entries(algebra, 2, entries)
}

/// Which inverses had to be solved for because the file omitted them;
/// reports echo these back.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolvedInverses {
    pub r_inv: bool,
    pub kappa_inv: bool,
}

/// Parses a structure file, solving for any missing inverse. Whether the
/// stated (or solved) inverses actually invert is checked by the `invR` /
/// `invKappa` axioms, not here, so that a broken input file yields a
/// verification failure rather than a parse error.
pub fn read_xc_json(text: &str, name: &str) -> Result<(XCStructure, SolvedInverses), AlgebraError> {
    let file: XcStructureFile =
        serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
    let algebra = resolve_algebra(&file.algebra)?;
    let mut all_params = file.params.clone();
    for p in algebra.params() {
        if !all_params.contains(p) {
            all_params.push(p.clone());
        }
    }
    let params = param_set(&all_params);

    let r = parse_order2(&algebra, &file.r, &params, "R")?;
    let kappa = Element::new(&algebra, parse_coeff_vec(&file.kappa, &params, "kappa")?)?;
    // A singularity here must surface as an invR/invKappa failure, not a
    // parse error: fall back to zero, which can never pass those axioms.
    let mut solved = SolvedInverses::default();
    let r_inv = match &file.r_inv {
        Some(rows) => parse_order2(&algebra, rows, &params, "Rinv")?,
        None => {
            solved.r_inv = true;
            r.invert().unwrap_or_else(|_| Tensor::zero(&algebra, 2))
        }
    };
    let kappa_inv = match &file.kappa_inv {
        Some(coeffs) => Element::new(&algebra, parse_coeff_vec(coeffs, &params, "kappaInv")?)?,
        None => {
            solved.kappa_inv = true;
            kappa.invert().unwrap_or_else(|_| Element::zero(&algebra))
        }
    };
    let constraints = file
        .constraints
        .iter()
        .map(|c| {
            parse_scalar(c, &params).map_err(|source| AlgebraError::Expr {
                context: "constraints".into(),
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((
        XCStructure::with_inverses(
            name,
            &algebra,
            r,
            r_inv,
            kappa,
            kappa_inv,
            all_params,
            constraints,
        ),
        solved,
    ))
}
