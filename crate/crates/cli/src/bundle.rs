//! The bundle file format: a JSON document with exact scalars.
//!
//! Scalars are decimal integers or `"p/q"` strings; floats are rejected.
//! Indices are 1-based. Unknown top-level fields are rejected; `meta` is
//! free-form, with the conventional keys `vectors`, `extension_linmaps`,
//! `extension_metrics` and `expected` parsed when present.

use liegeo::affine::Connection;
use liegeo::algebra::LieAlgebra;
use liegeo::catalog::Bundle;
use liegeo::forms::AltForm;
use liegeo::matrix::{vec_is_zero, BilinearForm, Matrix};
use liegeo::scalar::Rat;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Str(String),
}

pub fn repr_to_rat(repr: &ScalarRepr, context: &str) -> Result<Rat, String> {
    match repr {
        ScalarRepr::Int(i) => Ok(Rat::from_integer((*i).into())),
        ScalarRepr::Str(s) => {
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s.trim(), "1"),
            };
            let n = BigInt::from_str(num).map_err(|_| format!("{}: bad numerator '{}'", context, s))?;
            let d = BigInt::from_str(den).map_err(|_| format!("{}: bad denominator '{}'", context, s))?;
            if d.is_zero() {
                return Err(format!("{}: zero denominator in '{}'", context, s));
            }
            Ok(Rat::new(n, d))
        }
    }
}

pub fn rat_to_repr(value: &Rat) -> ScalarRepr {
    use num_traits::ToPrimitive;
    if value.denom() == &BigInt::from(1) {
        if let Some(i) = value.numer().to_i64() {
            return ScalarRepr::Int(i);
        }
    }
    ScalarRepr::Str(value.to_string())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormDoc {
    pub degree: usize,
    pub coefficients: BTreeMap<String, ScalarRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDocument {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: BTreeMap<String, Vec<ScalarRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<Vec<Vec<Vec<ScalarRepr>>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, FormDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub linmaps: BTreeMap<String, Vec<Vec<ScalarRepr>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, Vec<Vec<ScalarRepr>>>,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub meta: serde_json::Map<String, serde_json::Value>,
}

impl BundleDocument {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("bundle parse error: {}", e))
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bundle serialization");
        s.push('\n');
        s
    }

    pub fn from_catalog(bundle: &Bundle) -> Self {
        let dim = bundle.algebra.dim();
        let mut brackets = BTreeMap::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = bundle.algebra.bracket_basis(i, j);
                if !vec_is_zero(&v) {
                    brackets.insert(
                        format!("{},{}", i + 1, j + 1),
                        v.iter().map(rat_to_repr).collect(),
                    );
                }
            }
        }
        let connection = bundle.connection.as_ref().map(|c| {
            (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| c.product_basis(i, j).iter().map(rat_to_repr).collect())
                        .collect()
                })
                .collect()
        });
        let forms = bundle
            .forms
            .iter()
            .map(|(name, f)| (name.clone(), form_to_doc(f)))
            .collect();
        let linmaps = bundle
            .linmaps
            .iter()
            .map(|(name, m)| (name.clone(), matrix_to_doc(m)))
            .collect();
        let metrics = bundle
            .metrics
            .iter()
            .map(|(name, g)| (name.clone(), matrix_to_doc(g.matrix())))
            .collect();
        let mut meta = serde_json::Map::new();
        if !bundle.vectors.is_empty() {
            let vectors: serde_json::Map<String, serde_json::Value> = bundle
                .vectors
                .iter()
                .map(|(name, v)| {
                    let items: Vec<serde_json::Value> = v
                        .iter()
                        .map(|x| serde_json::to_value(rat_to_repr(x)).unwrap())
                        .collect();
                    (name.clone(), serde_json::Value::Array(items))
                })
                .collect();
            meta.insert("vectors".into(), serde_json::Value::Object(vectors));
        }
        if !bundle.extension_linmaps.is_empty() {
            let maps: serde_json::Map<String, serde_json::Value> = bundle
                .extension_linmaps
                .iter()
                .map(|(name, m)| (name.clone(), serde_json::to_value(matrix_to_doc(m)).unwrap()))
                .collect();
            meta.insert("extension_linmaps".into(), serde_json::Value::Object(maps));
        }
        if !bundle.extension_metrics.is_empty() {
            let maps: serde_json::Map<String, serde_json::Value> = bundle
                .extension_metrics
                .iter()
                .map(|(name, g)| {
                    (name.clone(), serde_json::to_value(matrix_to_doc(g.matrix())).unwrap())
                })
                .collect();
            meta.insert("extension_metrics".into(), serde_json::Value::Object(maps));
        }
        if !bundle.expected.is_empty() {
            let expected: serde_json::Map<String, serde_json::Value> = bundle
                .expected
                .iter()
                .map(|(k, v)| (k.clone(), serde_json::Value::Bool(*v)))
                .collect();
            meta.insert("expected".into(), serde_json::Value::Object(expected));
        }
        BundleDocument {
            dim,
            basis: bundle.algebra.labels().to_vec(),
            brackets,
            connection,
            forms,
            linmaps,
            metrics,
            meta,
        }
    }

    pub fn to_catalog(&self, name: &str) -> Result<Bundle, String> {
        let dim = self.dim;
        if dim == 0 {
            return Err("dim must be a positive integer".into());
        }
        if self.basis.len() != dim {
            return Err(format!("basis has {} labels for dim {}", self.basis.len(), dim));
        }
        let labels: Vec<&str> = self.basis.iter().map(|s| s.as_str()).collect();
        let mut algebra = LieAlgebra::abelian(dim).with_labels(&labels);
        for (key, value) in &self.brackets {
            let (i, j) = parse_pair(key, dim)?;
            if value.len() != dim {
                return Err(format!("brackets['{}'] has {} entries for dim {}", key, value.len(), dim));
            }
            let coeffs: Vec<(usize, Rat)> = value
                .iter()
                .enumerate()
                .map(|(k, r)| repr_to_rat(r, &format!("brackets['{}'][{}]", key, k)).map(|v| (k, v)))
                .collect::<Result<_, _>>()?;
            let nonzero: Vec<(usize, Rat)> = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            algebra.set_bracket(i, j, &nonzero);
        }
        let connection = match &self.connection {
            None => None,
            Some(table) => {
                let gamma = parse_cube(table, dim)?;
                Some(Connection::from_table(gamma))
            }
        };
        let mut forms = BTreeMap::new();
        for (name, doc) in &self.forms {
            forms.insert(name.clone(), doc_to_form(doc, dim, name)?);
        }
        let mut linmaps = BTreeMap::new();
        for (name, rows) in &self.linmaps {
            linmaps.insert(name.clone(), doc_to_matrix(rows, Some(dim), name)?);
        }
        let mut metrics = BTreeMap::new();
        for (name, rows) in &self.metrics {
            let m = doc_to_matrix(rows, None, name)?;
            metrics.insert(
                name.clone(),
                BilinearForm::symmetric(m).map_err(|e| format!("metric {}: {}", name, e))?,
            );
        }
        let mut bundle = Bundle {
            name: name.to_string(),
            algebra,
            connection,
            forms,
            linmaps,
            metrics,
            vectors: BTreeMap::new(),
            extension_linmaps: BTreeMap::new(),
            extension_metrics: BTreeMap::new(),
            expected: BTreeMap::new(),
        };
        for (key, value) in &self.meta {
            match key.as_str() {
                "vectors" => {
                    let map = as_object(value, "meta.vectors")?;
                    for (vname, arr) in map {
                        let items: Vec<ScalarRepr> = serde_json::from_value(arr.clone())
                            .map_err(|e| format!("meta.vectors.{}: {}", vname, e))?;
                        if items.len() != dim {
                            return Err(format!("meta.vectors.{} has {} entries for dim {}", vname, items.len(), dim));
                        }
                        let v: Vec<Rat> = items
                            .iter()
                            .map(|r| repr_to_rat(r, &format!("meta.vectors.{}", vname)))
                            .collect::<Result<_, _>>()?;
                        bundle.vectors.insert(vname.clone(), v);
                    }
                }
                "extension_linmaps" => {
                    let map = as_object(value, "meta.extension_linmaps")?;
                    for (mname, rows) in map {
                        let rows: Vec<Vec<ScalarRepr>> = serde_json::from_value(rows.clone())
                            .map_err(|e| format!("meta.extension_linmaps.{}: {}", mname, e))?;
                        bundle
                            .extension_linmaps
                            .insert(mname.clone(), doc_to_matrix(&rows, Some(dim + 1), mname)?);
                    }
                }
                "extension_metrics" => {
                    let map = as_object(value, "meta.extension_metrics")?;
                    for (mname, rows) in map {
                        let rows: Vec<Vec<ScalarRepr>> = serde_json::from_value(rows.clone())
                            .map_err(|e| format!("meta.extension_metrics.{}: {}", mname, e))?;
                        let m = doc_to_matrix(&rows, Some(dim + 1), mname)?;
                        bundle.extension_metrics.insert(
                            mname.clone(),
                            BilinearForm::symmetric(m)
                                .map_err(|e| format!("meta.extension_metrics.{}: {}", mname, e))?,
                        );
                    }
                }
                "expected" => {
                    let map = as_object(value, "meta.expected")?;
                    for (k, v) in map {
                        let b = v
                            .as_bool()
                            .ok_or_else(|| format!("meta.expected.{} is not a boolean", k))?;
                        bundle.expected.insert(k.clone(), b);
                    }
                }
                _ => {} // free-form extras ride along untouched
            }
        }
        Ok(bundle)
    }
}

fn as_object<'a>(
    value: &'a serde_json::Value,
    what: &str,
) -> Result<&'a serde_json::Map<String, serde_json::Value>, String> {
    value.as_object().ok_or_else(|| format!("{} must be an object", what))
}

fn parse_pair(key: &str, dim: usize) -> Result<(usize, usize), String> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| format!("bracket key '{}' is not 'i,j'", key))?;
    let i: usize = a.trim().parse().map_err(|_| format!("bracket key '{}' is not 'i,j'", key))?;
    let j: usize = b.trim().parse().map_err(|_| format!("bracket key '{}' is not 'i,j'", key))?;
    if i == 0 || j == 0 || i > dim || j > dim {
        return Err(format!("bracket key '{}' out of range 1..={}", key, dim));
    }
    if i >= j {
        return Err(format!("bracket key '{}' must have i < j", key));
    }
    Ok((i - 1, j - 1))
}

fn parse_cube(table: &[Vec<Vec<ScalarRepr>>], dim: usize) -> Result<Vec<Vec<Vec<Rat>>>, String> {
    if table.len() != dim {
        return Err(format!("connection has {} rows for dim {}", table.len(), dim));
    }
    let mut out = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    for (i, plane) in table.iter().enumerate() {
        if plane.len() != dim {
            return Err(format!("connection[{}] has {} entries for dim {}", i + 1, plane.len(), dim));
        }
        for (j, entry) in plane.iter().enumerate() {
            if entry.len() != dim {
                return Err(format!(
                    "connection[{}][{}] has {} entries for dim {}",
                    i + 1,
                    j + 1,
                    entry.len(),
                    dim
                ));
            }
            for (k, r) in entry.iter().enumerate() {
                out[i][j][k] = repr_to_rat(r, &format!("connection[{}][{}][{}]", i + 1, j + 1, k + 1))?;
            }
        }
    }
    Ok(out)
}

fn doc_to_matrix(rows: &[Vec<ScalarRepr>], expect: Option<usize>, name: &str) -> Result<Matrix<Rat>, String> {
    let n = rows.len();
    if let Some(e) = expect {
        if n != e {
            return Err(format!("matrix {} has {} rows, expected {}", name, n, e));
        }
    }
    let mut m = Matrix::zeros(n, n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(format!("matrix {} row {} has {} entries for size {}", name, r + 1, row.len(), n));
        }
        for (c, repr) in row.iter().enumerate() {
            m.set(r, c, repr_to_rat(repr, &format!("matrix {}[{}][{}]", name, r + 1, c + 1))?);
        }
    }
    Ok(m)
}

fn matrix_to_doc(m: &Matrix<Rat>) -> Vec<Vec<ScalarRepr>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| rat_to_repr(m.get(r, c))).collect())
        .collect()
}

fn form_to_doc(f: &AltForm<Rat>) -> FormDoc {
    let coefficients = f
        .terms()
        .map(|(idx, v)| {
            let key: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            (key.join("<"), rat_to_repr(v))
        })
        .collect();
    FormDoc { degree: f.degree(), coefficients }
}

fn doc_to_form(doc: &FormDoc, dim: usize, name: &str) -> Result<AltForm<Rat>, String> {
    let mut f = AltForm::zero(dim, doc.degree);
    for (key, repr) in &doc.coefficients {
        let mut idx = Vec::new();
        if !key.is_empty() {
            for part in key.split('<') {
                let i: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| format!("form {}: bad index tuple '{}'", name, key))?;
                if i == 0 || i > dim {
                    return Err(format!("form {}: index {} out of range 1..={}", name, i, dim));
                }
                idx.push(i - 1);
            }
        }
        if idx.len() != doc.degree {
            return Err(format!("form {}: tuple '{}' has length {} for degree {}", name, key, idx.len(), doc.degree));
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("form {}: tuple '{}' is not strictly increasing", name, key));
        }
        f.add_term(&idx, repr_to_rat(repr, &format!("form {}['{}']", name, key))?);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use liegeo::catalog;

    #[test]
    fn catalog_bundles_round_trip_through_the_document() {
        for name in catalog::names() {
            let bundle = catalog::load_example(name).unwrap();
            let doc = BundleDocument::from_catalog(&bundle);
            let text = doc.to_json_string();
            let reparsed = BundleDocument::parse(&text).unwrap();
            let back = reparsed.to_catalog(name).unwrap();
            assert_eq!(back.algebra, bundle.algebra, "{} algebra", name);
            assert_eq!(back.connection, bundle.connection, "{} connection", name);
            assert_eq!(back.forms, bundle.forms, "{} forms", name);
            assert_eq!(back.linmaps, bundle.linmaps, "{} linmaps", name);
            assert_eq!(back.vectors, bundle.vectors, "{} vectors", name);
            assert_eq!(back.expected, bundle.expected, "{} expected", name);
            // and the re-export is byte-identical
            let again = BundleDocument::from_catalog(&back).to_json_string();
            assert_eq!(again, text, "{} export is not canonical", name);
        }
    }

    #[test]
    fn floats_are_rejected() {
        let text = r#"{"dim": 1, "basis": ["e1"], "brackets": {}, "linmaps": {"D": [[0.5]]}}"#;
        assert!(BundleDocument::parse(text).is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"dim": 1, "basis": ["e1"], "brackets": {}, "surprise": 1}"#;
        let err = BundleDocument::parse(text).unwrap_err();
        assert!(err.contains("surprise"), "{}", err);
    }

    #[test]
    fn rational_strings_parse_and_reduce() {
        let r = repr_to_rat(&ScalarRepr::Str("2/4".into()), "test").unwrap();
        assert_eq!(r, liegeo::rat(1, 2));
        assert!(repr_to_rat(&ScalarRepr::Str("1/0".into()), "test").is_err());
        assert!(repr_to_rat(&ScalarRepr::Str("x".into()), "test").is_err());
        assert_eq!(rat_to_repr(&liegeo::int(5)), ScalarRepr::Int(5));
        assert_eq!(rat_to_repr(&liegeo::rat(-1, 2)), ScalarRepr::Str("-1/2".into()));
    }
}
