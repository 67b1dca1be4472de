//! JSON documents for equations and transformations.
//!
//! Coefficients are strings (`"p/q"`, `"p/q+r/s*i"`, ...) listed in
//! descending `x`-power, one array per `z`-block.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::parse::parse_constant;
use super::{block_degree, parse_expression, SurfaceEquation, Transformation};
use crate::binary_forms::BinaryForm;
use crate::error::{Error, Result};
use crate::field::{Cx, Field, Gq};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationDocument {
    pub mode: String,
    pub q: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub normal_form: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformationDocument {
    pub a: [[String; 2]; 2],
    pub alpha: String,
    pub r: Vec<String>,
    pub beta: String,
}

/// Coefficients that can be written into a document.
pub trait DocumentCoeff: Field {
    const MODE: &'static str;
    fn to_text(&self) -> String;
}

impl DocumentCoeff for Gq {
    const MODE: &'static str = "exact";
    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl DocumentCoeff for Cx {
    const MODE: &'static str = "approx";
    fn to_text(&self) -> String {
        let digits = (self.precision() as f64 * std::f64::consts::LOG10_2).floor() as usize;
        self.to_decimal_string(digits.max(17))
    }
}

pub fn parse_coefficient(text: &str) -> Result<Gq> {
    parse_constant(text.trim())
}

/// Blocks `0..=5`, or only `0..=3` with `normal_form` set when `f` is in
/// normal form and `normal_form` is requested.
pub fn equation_to_document<K: DocumentCoeff>(f: &SurfaceEquation<K>, normal_form: bool) -> EquationDocument {
    let normal_form = normal_form && f.is_normal_form();
    let blocks = if normal_form { 0..=3 } else { 0..=5 };
    let q = blocks
        .map(|k| (k.to_string(), f.q(k).coeffs().iter().map(DocumentCoeff::to_text).collect()))
        .collect();
    EquationDocument { mode: K::MODE.to_string(), q, normal_form }
}

pub fn equation_from_document(doc: &EquationDocument) -> Result<SurfaceEquation<Gq>> {
    if doc.mode != "exact" && doc.mode != "approx" {
        return Err(Error::Document(format!("unknown mode '{}'", doc.mode)));
    }
    if let Some(key) = doc.q.keys().find(|k| !["0", "1", "2", "3", "4", "5"].contains(&k.as_str())) {
        return Err(Error::Document(format!("unknown block '{key}'")));
    }
    let mut q: [BinaryForm<Gq>; 6] = std::array::from_fn(|k| BinaryForm::zero(block_degree(k)));
    if doc.normal_form {
        q[5] = BinaryForm::one();
    }
    for k in 0..=5 {
        let Some(entries) = doc.q.get(&k.to_string()) else {
            if k <= 3 {
                return Err(Error::Document(format!("missing block '{k}'")));
            }
            continue;
        };
        let d = block_degree(k);
        if entries.len() != d + 1 {
            return Err(Error::Document(format!(
                "block '{k}' needs {} coefficients, got {}",
                d + 1,
                entries.len()
            )));
        }
        let coeffs = entries
            .iter()
            .map(|s| parse_coefficient(s).map_err(|e| Error::Document(format!("block '{k}': '{s}': {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let form = BinaryForm::new(coeffs);
        if doc.normal_form && k >= 4 && form != q[k] {
            return Err(Error::Document(format!("normal_form documents need the default block '{k}'")));
        }
        q[k] = form;
    }
    SurfaceEquation::new(q)
}

/// Reads either a JSON document (text starting with `{`) or an expression.
pub fn read_equation(text: &str) -> Result<SurfaceEquation<Gq>> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let doc: EquationDocument =
            serde_json::from_str(trimmed).map_err(|e| Error::Document(e.to_string()))?;
        equation_from_document(&doc)
    } else {
        parse_expression(trimmed)
    }
}

impl<K: DocumentCoeff> Transformation<K> {
    pub fn to_document(&self) -> TransformationDocument {
        TransformationDocument {
            a: std::array::from_fn(|i| std::array::from_fn(|j| self.a[i][j].to_text())),
            alpha: self.alpha.to_text(),
            r: self.r.coeffs().iter().map(DocumentCoeff::to_text).collect(),
            beta: self.beta.to_text(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_round_trip() {
        let f = parse_expression("z^5 + (1/2-3*i)*x^2*y^4*z^2 - 7/3*x*y^9").unwrap();
        let doc = equation_to_document(&f, true);
        assert!(doc.normal_form);
        assert_eq!(doc.q.len(), 4);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(read_equation(&text).unwrap(), f);
        let full = equation_to_document(&f, false);
        assert_eq!(full.q.len(), 6);
        assert_eq!(equation_from_document(&full).unwrap(), f);
    }

    #[test]
    fn absent_blocks_are_zero_without_the_flag() {
        let zeros = |n: usize| vec!["0".to_string(); n];
        let mut q = BTreeMap::new();
        for k in 0..=3 {
            q.insert(k.to_string(), zeros(block_degree(k) + 1));
        }
        q.get_mut("0").unwrap()[0] = "1".into();
        let doc = EquationDocument { mode: "exact".into(), q, normal_form: false };
        let f = equation_from_document(&doc).unwrap();
        assert!(f.leading().is_zero());
        let doc = EquationDocument { normal_form: true, ..doc };
        assert!(equation_from_document(&doc).unwrap().is_normal_form());
    }

    #[test]
    fn malformed_documents() {
        assert!(read_equation(r#"{"mode":"exact","q":{"0":["1"]}}"#).is_err());
        assert!(read_equation(r#"{"mode":"fuzzy","q":{}}"#).is_err());
        assert!(read_equation(r#"{"mode":"exact","q":{}, "extra": 1}"#).is_err());
        assert!(read_equation("{not json").is_err());
    }

    #[test]
    fn decimal_coefficients_are_exact() {
        assert_eq!(parse_coefficient("0.25").unwrap(), Gq::ratio(1, 4));
        assert_eq!(parse_coefficient(" -1.5+2*i ").unwrap(), Gq::new((-3).into(), 4.into()) / Gq::from(2));
    }
}
