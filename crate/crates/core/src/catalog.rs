//! Built-in example bundles with pinned coefficient tables and expected
//! verdicts, shared by the test suite and the command line.

use crate::affine::{check_lsa, check_projective, check_radiant, Connection};
use crate::algebra::LieAlgebra;
use crate::contact::{check_semicontact, check_semisasakian, SemiContactData};
use crate::forms::AltForm;
use crate::hessian::{check_hessian_cone, check_hessian_metric, ProjectiveHessianData};
use crate::invariants::structure_invariants;
use crate::matrix::{BilinearForm, Matrix};
use crate::report::{LieError, Result};
use crate::scalar::{int, rat, Rat};
use std::collections::BTreeMap;

/// One catalog entry: an algebra plus whatever named data its checks need,
/// and the map of expected verdicts the suite replays.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub name: String,
    pub algebra: LieAlgebra<Rat>,
    pub connection: Option<Connection<Rat>>,
    pub forms: BTreeMap<String, AltForm<Rat>>,
    pub linmaps: BTreeMap<String, Matrix<Rat>>,
    pub metrics: BTreeMap<String, BilinearForm<Rat>>,
    pub vectors: BTreeMap<String, Vec<Rat>>,
    /// Maps living on the one-generator extension `ℝ ⋉_D 𝔤`.
    pub extension_linmaps: BTreeMap<String, Matrix<Rat>>,
    pub extension_metrics: BTreeMap<String, BilinearForm<Rat>>,
    pub expected: BTreeMap<String, bool>,
}

impl Bundle {
    fn new(name: &str, algebra: LieAlgebra<Rat>) -> Self {
        Self {
            name: name.to_string(),
            algebra,
            connection: None,
            forms: BTreeMap::new(),
            linmaps: BTreeMap::new(),
            metrics: BTreeMap::new(),
            vectors: BTreeMap::new(),
            extension_linmaps: BTreeMap::new(),
            extension_metrics: BTreeMap::new(),
            expected: BTreeMap::new(),
        }
    }

    fn expect(mut self, pairs: &[(&str, bool)]) -> Self {
        for (k, v) in pairs {
            self.expected.insert(k.to_string(), *v);
        }
        self
    }
}

/// Canonical catalog names, in listing order.
pub fn names() -> Vec<&'static str> {
    vec![
        "abelian1",
        "abelian2",
        "abelian3",
        "abelian4",
        "h3",
        "affR",
        "e2",
        "su2",
        "sl2",
        "complex_lsa",
        "quaternion_lsa",
        "t2cone",
        "sasaki_h3",
    ]
}

/// Fetch a bundle by name. `abelian(n)` is accepted in both spellings.
pub fn load_example(name: &str) -> Result<Bundle> {
    let canonical = name.trim().replace("(", "").replace(")", "");
    match canonical.as_str() {
        "h3" => Ok(h3()),
        "affR" => Ok(aff_r()),
        "e2" => Ok(e2()),
        "su2" => Ok(su2()),
        "sl2" => Ok(sl2()),
        "complex_lsa" => Ok(complex_lsa()),
        "quaternion_lsa" => Ok(quaternion_lsa()),
        "t2cone" => Ok(t2cone()),
        "sasaki_h3" => Ok(sasaki_h3()),
        other => {
            if let Some(n) = other.strip_prefix("abelian").and_then(|s| s.parse::<usize>().ok()) {
                if (1..=8).contains(&n) {
                    return Ok(abelian(n));
                }
            }
            Err(LieError::UnknownExample {
                name: name.to_string(),
                available: names().iter().map(|s| s.to_string()).collect(),
            })
        }
    }
}

fn abelian(n: usize) -> Bundle {
    let mut b = Bundle::new(&format!("abelian{}", n), LieAlgebra::abelian(n));
    b.connection = Some(Connection::zero(n));
    b.metrics.insert("g".into(), BilinearForm::identity(n));
    b.expect(&[
        ("validate", true),
        ("lsa", true),
        ("hessian", true),
        ("solvable", true),
        ("nilpotent", true),
        ("unimodular", true),
        ("semisimple", false),
    ])
}

fn heisenberg_algebra() -> LieAlgebra<Rat> {
    let mut h = LieAlgebra::abelian(3);
    h.set_bracket(0, 1, &[(2, int(1))]);
    h
}

fn h3() -> Bundle {
    let algebra = heisenberg_algebra();
    let eta = AltForm::basis_covector(3, 2);
    let omega = eta.ce_d(&algebra).expect("degree 1 < 3");
    let mut b = Bundle::new("h3", algebra);
    b.linmaps.insert("D".into(), Matrix::zeros(3, 3));
    b.forms.insert("eta".into(), eta);
    b.forms.insert("omega".into(), omega);
    b.expect(&[
        ("validate", true),
        ("semicontact", true),
        ("solvable", true),
        ("nilpotent", true),
        ("unimodular", true),
        ("semisimple", false),
    ])
}

fn aff_r() -> Bundle {
    let mut algebra = LieAlgebra::abelian(2).with_labels(&["E", "X"]);
    algebra.set_bracket(0, 1, &[(1, int(1))]);
    let mut conn = Connection::zero(2);
    conn.set(0, 0, &[(0, int(1))]);
    conn.set(0, 1, &[(1, int(1))]);
    let mut b = Bundle::new("affR", algebra);
    b.connection = Some(conn);
    b.metrics.insert("g".into(), BilinearForm::identity(2));
    b.expect(&[
        ("validate", true),
        ("lsa", true),
        ("hessian", false),
        ("solvable", true),
        ("nilpotent", false),
        ("unimodular", false),
        ("semisimple", false),
    ])
}

fn e2() -> Bundle {
    let mut algebra = LieAlgebra::abelian(3);
    algebra.set_bracket(0, 1, &[(2, int(1))]);
    algebra.set_bracket(0, 2, &[(1, int(-1))]);
    Bundle::new("e2", algebra).expect(&[
        ("validate", true),
        ("solvable", true),
        ("nilpotent", false),
        ("unimodular", true),
        ("semisimple", false),
    ])
}

fn su2() -> Bundle {
    let mut algebra = LieAlgebra::abelian(3);
    algebra.set_bracket(0, 1, &[(2, int(1))]);
    algebra.set_bracket(1, 2, &[(0, int(1))]);
    algebra.set_bracket(2, 0, &[(1, int(1))]);
    Bundle::new("su2", algebra).expect(&[
        ("validate", true),
        ("semisimple", true),
        ("solvable", false),
        ("nilpotent", false),
        ("unimodular", true),
    ])
}

fn sl2() -> Bundle {
    let mut algebra = LieAlgebra::abelian(3).with_labels(&["h", "e", "f"]);
    algebra.set_bracket(0, 1, &[(1, int(2))]);
    algebra.set_bracket(0, 2, &[(2, int(-2))]);
    algebra.set_bracket(1, 2, &[(0, int(1))]);
    Bundle::new("sl2", algebra).expect(&[
        ("validate", true),
        ("semisimple", true),
        ("solvable", false),
        ("nilpotent", false),
        ("unimodular", true),
    ])
}

/// Multiplication of ℂ in cone order (i, 1): the unit last plays the role
/// of the dilation generator.
fn complex_lsa() -> Bundle {
    let algebra = LieAlgebra::abelian(2).with_labels(&["i", "1"]);
    let mut conn = Connection::zero(2);
    conn.set(0, 0, &[(1, int(-1))]);
    conn.set(0, 1, &[(0, int(1))]);
    conn.set(1, 0, &[(0, int(1))]);
    conn.set(1, 1, &[(1, int(1))]);
    let mut b = Bundle::new("complex_lsa", algebra);
    b.connection = Some(conn);
    b.metrics.insert("g_G".into(), BilinearForm::identity(1));
    b.vectors.insert("xi".into(), vec![int(0), int(1)]);
    b.expect(&[
        ("validate", true),
        ("lsa", true),
        ("radiant", true),
        ("projective", true),
        ("hessian_cone", true),
        ("solvable", true),
        ("nilpotent", true),
        ("unimodular", true),
        ("semisimple", false),
    ])
}

/// Multiplication of ℍ in cone order (i, j, k, 1).
fn quaternion_lsa() -> Bundle {
    let mut algebra = LieAlgebra::abelian(4).with_labels(&["i", "j", "k", "1"]);
    algebra.set_bracket(0, 1, &[(2, int(2))]);
    algebra.set_bracket(1, 2, &[(0, int(2))]);
    algebra.set_bracket(2, 0, &[(1, int(2))]);
    let mut conn = Connection::zero(4);
    for a in 0..4 {
        conn.set(3, a, &[(a, int(1))]);
        conn.set(a, 3, &[(a, int(1))]);
    }
    conn.set(0, 0, &[(3, int(-1))]);
    conn.set(1, 1, &[(3, int(-1))]);
    conn.set(2, 2, &[(3, int(-1))]);
    conn.set(0, 1, &[(2, int(1))]);
    conn.set(1, 0, &[(2, int(-1))]);
    conn.set(1, 2, &[(0, int(1))]);
    conn.set(2, 1, &[(0, int(-1))]);
    conn.set(2, 0, &[(1, int(1))]);
    conn.set(0, 2, &[(1, int(-1))]);
    let mut b = Bundle::new("quaternion_lsa", algebra);
    b.connection = Some(conn);
    b.metrics.insert("g_G".into(), BilinearForm::identity(3));
    b.vectors.insert("xi".into(), vec![int(0), int(0), int(0), int(1)]);
    b.expect(&[
        ("validate", true),
        ("lsa", true),
        ("radiant", true),
        ("projective", true),
        ("hessian_cone", true),
        ("solvable", false),
        ("nilpotent", false),
        ("unimodular", true),
        ("semisimple", false),
    ])
}

/// Upper-triangular `𝔱(2)` acting on the positive-definite 2×2 cone by
/// `s·x = s x sᵀ`; the table is the pullback of the flat structure of
/// `Sym(2)` through the orbit map `a ↦ a + aᵀ` (pinned here, re-derived
/// from the action formula in the tests), and the metric is
/// `g(a,b) = (3/2)·tr((a+aᵀ)(b+bᵀ))` — the log-det Hessian at the unit.
fn t2cone() -> Bundle {
    let mut algebra = LieAlgebra::abelian(3).with_labels(&["a1", "a2", "a3"]);
    algebra.set_bracket(0, 1, &[(1, int(1))]);
    algebra.set_bracket(1, 2, &[(1, int(1))]);
    let mut conn = Connection::zero(3);
    conn.set(0, 0, &[(0, int(2))]);
    conn.set(0, 1, &[(1, int(1))]);
    conn.set(1, 1, &[(0, int(1))]);
    conn.set(1, 2, &[(1, int(2))]);
    conn.set(2, 1, &[(1, int(1))]);
    conn.set(2, 2, &[(2, int(2))]);
    let mut b = Bundle::new("t2cone", algebra);
    b.connection = Some(conn);
    b.metrics.insert("g".into(), BilinearForm::diagonal(vec![int(6), int(3), int(6)]));
    b.vectors.insert("xi".into(), vec![rat(1, 2), int(0), rat(1, 2)]);
    b.expect(&[
        ("validate", true),
        ("lsa", true),
        ("radiant", true),
        ("hessian", true),
        ("solvable", true),
        ("nilpotent", false),
        ("unimodular", false),
        ("semisimple", false),
    ])
}

/// The classical contact structure on the Heisenberg algebra together with
/// the compatible complex structure on its one-generator extension.
fn sasaki_h3() -> Bundle {
    let mut b = h3();
    b.name = "sasaki_h3".into();
    let mut j = Matrix::zeros(4, 4);
    j.set(1, 0, int(-1));
    j.set(0, 1, int(1));
    j.set(3, 2, int(1));
    j.set(2, 3, int(-1));
    b.extension_linmaps.insert("J".into(), j);
    b.extension_metrics.insert("g_real".into(), BilinearForm::identity(4));
    b.expected.insert("semisasakian".to_string(), true);
    b
}

/// Recompute the verdict a bundle's expected map refers to.
pub fn replay_verdict(bundle: &Bundle, key: &str) -> Result<bool> {
    let alg = &bundle.algebra;
    let need_conn = || -> Result<&Connection<Rat>> {
        bundle.connection.as_ref().ok_or(LieError::Structure {
            what: format!("bundle {} has no connection", bundle.name),
        })
    };
    match key {
        "validate" => Ok(alg.validate().pass()),
        "lsa" => Ok(check_lsa(alg, need_conn()?)?.pass()),
        "radiant" => {
            let xi = bundle.vectors.get("xi").ok_or(LieError::Structure {
                what: "missing vector xi".into(),
            })?;
            Ok(check_radiant(alg, need_conn()?, xi)?.pass())
        }
        "projective" => {
            let g = alg.restrict(&(0..alg.dim() - 1).collect::<Vec<_>>())?;
            Ok(check_projective(&g, alg, need_conn()?)?.pass())
        }
        "hessian" => {
            let g = bundle.metrics.get("g").ok_or(LieError::Structure { what: "missing metric g".into() })?;
            Ok(check_hessian_metric(alg, need_conn()?, g)?.pass())
        }
        "hessian_cone" => {
            let g = bundle
                .metrics
                .get("g_G")
                .ok_or(LieError::Structure { what: "missing metric g_G".into() })?;
            let data = ProjectiveHessianData::from_hat(alg.clone(), need_conn()?.clone(), g.clone())?;
            Ok(check_hessian_cone(&data)?.pass())
        }
        "semicontact" => Ok(check_semicontact(&semicontact_of(bundle)?)?.pass()),
        "semisasakian" => {
            let j = bundle
                .extension_linmaps
                .get("J")
                .ok_or(LieError::Structure { what: "missing extension linmap J".into() })?;
            Ok(check_semisasakian(&semicontact_of(bundle)?, j)?.pass())
        }
        "solvable" => Ok(structure_invariants(alg)?.solvable),
        "nilpotent" => Ok(structure_invariants(alg)?.nilpotent),
        "unimodular" => Ok(structure_invariants(alg)?.unimodular),
        "semisimple" => Ok(structure_invariants(alg)?.semisimple),
        other => Err(LieError::Structure { what: format!("unknown expected-verdict key '{}'", other) }),
    }
}

/// Assemble the semi-contact data a bundle carries (D, omega, eta).
pub fn semicontact_of(bundle: &Bundle) -> Result<SemiContactData<Rat>> {
    let d = bundle
        .linmaps
        .get("D")
        .ok_or(LieError::Structure { what: "missing linmap D".into() })?;
    let omega = bundle
        .forms
        .get("omega")
        .ok_or(LieError::Structure { what: "missing form omega".into() })?;
    let eta = bundle
        .forms
        .get("eta")
        .ok_or(LieError::Structure { what: "missing form eta".into() })?;
    SemiContactData::new(bundle.algebra.clone(), d.clone(), omega.clone(), eta.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundle_validates_and_replays_its_expectations() {
        for name in names() {
            let bundle = load_example(name).unwrap();
            assert!(bundle.algebra.validate().pass(), "{} must validate", name);
            for (key, want) in &bundle.expected {
                let got = replay_verdict(&bundle, key).unwrap();
                assert_eq!(got, *want, "{}: verdict {} mismatch", name, key);
            }
        }
    }

    #[test]
    fn unknown_name_lists_available() {
        match load_example("nosuch") {
            Err(LieError::UnknownExample { available, .. }) => {
                assert!(available.contains(&"h3".to_string()));
            }
            other => panic!("expected lookup error, got {:?}", other.map(|b| b.name)),
        }
    }

    #[test]
    fn abelian_accepts_both_spellings() {
        assert_eq!(load_example("abelian3").unwrap().algebra.dim(), 3);
        assert_eq!(load_example("abelian(3)").unwrap().algebra.dim(), 3);
        assert!(load_example("abelian0").is_err());
        assert!(load_example("abelian9").is_err());
    }

    /// The pinned t2cone table agrees with the linear-action formula
    /// `X · Y = ρ⁻¹(X ρ(Y) + ρ(Y) Xᵀ)` for the orbit map `ρ(a) = a + aᵀ`.
    #[test]
    fn t2cone_table_rederives_from_the_action() {
        let two_by_two = |m: &Matrix<Rat>| -> [[Rat; 2]; 2] {
            [
                [m.get(0, 0).clone(), m.get(0, 1).clone()],
                [m.get(1, 0).clone(), m.get(1, 1).clone()],
            ]
        };
        let basis = [
            Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]]),
            Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]),
            Matrix::from_rows(vec![vec![int(0), int(0)], vec![int(0), int(1)]]),
        ];
        let rho = |a: &Matrix<Rat>| a.add(&a.transpose());
        // coordinates of a symmetric matrix in the basis ρ(a1), ρ(a2), ρ(a3)
        let rho_inv = |s: &Matrix<Rat>| -> Vec<Rat> {
            let m = two_by_two(s);
            vec![m[0][0].clone() / int(2), m[0][1].clone(), m[1][1].clone() / int(2)]
        };
        let bundle = t2cone();
        let conn = bundle.connection.unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let theta = basis[i].matmul(&rho(&basis[j])).add(&rho(&basis[j]).matmul(&basis[i].transpose()));
                assert_eq!(rho_inv(&theta), conn.product_basis(i, j), "table entry ({}, {})", i, j);
            }
        }
        // and the metric is (3/2)·tr(ρ(a)ρ(b))
        let g = bundle.metrics.get("g").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let tr = rho(&basis[i]).matmul(&rho(&basis[j])).trace();
                assert_eq!(*g.matrix().get(i, j), rat(3, 2) * tr);
            }
        }
    }
}
