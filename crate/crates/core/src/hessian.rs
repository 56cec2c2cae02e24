//! Hessian and Hessian-cone metrics, the associated Kähler structure on the
//! tangent algebra, the semidirect regrouping identity, and the pipeline
//! from projective Hessian input to verified semi-Sasakian output.
//!
//! Hessian-ness of a left-invariant metric over a flat left-symmetric table
//! is the Codazzi criterion: `T(X,Y,Z) = −g(XY, Z) − g(Y, XZ)` must be
//! symmetric in `(X,Y)`. On the cone `G × ℝ^{>0}` the invariant-frame
//! coefficients of the cone metric scale as `t²·const`, so the frame
//! derivative contributes `2ϑ_E(X)·ĝ(Y,Z)` and the criterion becomes
//! `T(X,Y,Z) = 2ϑ_E(X)ĝ(Y,Z) − ĝ(XY,Z) − ĝ(Y,XZ)` symmetric in `(X,Y)`.
//! The same weight-2 rule drives the scaling-frame closedness of the
//! associated Kähler form (see [`crate::contact::WeightedForm`]).

use crate::affine::{check_lsa, check_projective, Connection};
use crate::algebra::LieAlgebra;
use crate::complexstruct::rmap_complex_structure;
use crate::contact::{check_semisasakian, split_lcs, LcsData, SemiContactData, WeightedForm};
use crate::forms::AltForm;
use crate::matrix::{BilinearForm, Matrix};
use crate::report::{CheckReport, LieError, Result};
use crate::scalar::Scalar;

/// Input for the cone checks: a base algebra `𝔤`, a left-symmetric table on
/// `ĝ = 𝔤 × ℝE` (E the last generator), and a metric on `𝔤`.
#[derive(Clone, Debug)]
pub struct ProjectiveHessianData<T> {
    pub g_alg: LieAlgebra<T>,
    pub hat_alg: LieAlgebra<T>,
    pub conn_hat: Connection<T>,
    pub metric_g: BilinearForm<T>,
}

impl<T: Scalar> ProjectiveHessianData<T> {
    /// Build the extension `𝔤 × ℝE` with a central `E` appended.
    pub fn new(g_alg: LieAlgebra<T>, conn_hat: Connection<T>, metric_g: BilinearForm<T>) -> Result<Self> {
        let n = g_alg.dim();
        if conn_hat.dim() != n + 1 {
            return Err(LieError::Dimension {
                what: "cone connection".into(),
                expected: n + 1,
                found: conn_hat.dim(),
            });
        }
        if metric_g.dim() != n {
            return Err(LieError::Dimension { what: "base metric".into(), expected: n, found: metric_g.dim() });
        }
        let hat_alg = g_alg.direct_sum(&LieAlgebra::abelian(1).with_labels(&["E"]));
        Ok(Self { g_alg, hat_alg, conn_hat, metric_g })
    }

    /// Read the data off an extended algebra whose last generator is `E`.
    pub fn from_hat(hat_alg: LieAlgebra<T>, conn_hat: Connection<T>, metric_g: BilinearForm<T>) -> Result<Self> {
        let n1 = hat_alg.dim();
        if n1 == 0 {
            return Err(LieError::Dimension { what: "cone algebra".into(), expected: 1, found: 0 });
        }
        let g_alg = hat_alg.restrict(&(0..n1 - 1).collect::<Vec<_>>())?;
        if metric_g.dim() != n1 - 1 {
            return Err(LieError::Dimension { what: "base metric".into(), expected: n1 - 1, found: metric_g.dim() });
        }
        if conn_hat.dim() != n1 {
            return Err(LieError::Dimension { what: "cone connection".into(), expected: n1, found: conn_hat.dim() });
        }
        Ok(Self { g_alg, hat_alg, conn_hat, metric_g })
    }

    /// The cone metric at unit scale: `blockdiag(g_G, 1)`.
    pub fn cone_metric(&self) -> BilinearForm<T> {
        self.metric_g.block_diag(&BilinearForm::identity(1))
    }
}

/// `T(X,Y,Z) = −g(XY,Z) − g(Y,XZ)` symmetric in `(X,Y)`, on basis triples.
pub fn codazzi_report<T: Scalar>(conn: &Connection<T>, g: &BilinearForm<T>) -> CheckReport {
    let n = conn.dim();
    let t = |i: usize, j: usize, k: usize| -> T {
        let mut acc = T::zero();
        for m in 0..n {
            acc = acc - conn.coefficient(i, j, m).clone() * g.matrix().get(m, k).clone();
            acc = acc - conn.coefficient(i, k, m).clone() * g.matrix().get(j, m).clone();
        }
        acc
    };
    let mut report = CheckReport::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let lhs = t(i, j, k);
                let rhs = t(j, i, k);
                if lhs != rhs {
                    report.record("codazzi", &[i, j, k], lhs, rhs);
                }
            }
        }
    }
    report
}

fn require_lsa<T: Scalar>(algebra: &LieAlgebra<T>, conn: &Connection<T>) -> Result<()> {
    let lsa = check_lsa(algebra, conn)?;
    if !lsa.pass() {
        return Err(LieError::Rejected { op: "check_lsa", report: lsa });
    }
    Ok(())
}

fn require_positive_definite<T: Scalar>(g: &BilinearForm<T>) -> Result<()> {
    if !g.is_positive_definite() {
        let mut report = CheckReport::new();
        let m = g.matrix();
        for k in 1..=g.dim() {
            let minor = m.leading_principal_minor(k);
            if !minor.is_positive() {
                report.record("positive_definite", &[k - 1], minor, "> 0");
            }
        }
        return Err(LieError::Rejected { op: "positive_definite", report });
    }
    Ok(())
}

/// Hessian-ness of `g` over a flat left-symmetric table. Preconditions
/// (left-symmetry, positive definiteness) are rejected as errors, not
/// reported as Codazzi failures.
pub fn check_hessian_metric<T: Scalar>(
    algebra: &LieAlgebra<T>,
    conn: &Connection<T>,
    g: &BilinearForm<T>,
) -> Result<CheckReport> {
    require_lsa(algebra, conn)?;
    require_positive_definite(g)?;
    Ok(codazzi_report(conn, g))
}

/// The cone criterion: projective structure, positive definiteness of the
/// unit-scale cone metric, and the weight-corrected Codazzi symmetry.
pub fn check_hessian_cone<T: Scalar>(data: &ProjectiveHessianData<T>) -> Result<CheckReport> {
    let projective = check_projective(&data.g_alg, &data.hat_alg, &data.conn_hat)?;
    if !projective.pass() {
        return Err(LieError::Rejected { op: "check_projective", report: projective });
    }
    let ghat = data.cone_metric();
    let mut report = CheckReport::new();
    if !ghat.is_positive_definite() {
        for k in 1..=ghat.dim() {
            let minor = ghat.matrix().leading_principal_minor(k);
            if !minor.is_positive() {
                report.record("cone_positive_definite", &[k - 1], minor, "> 0");
                break;
            }
        }
    }
    let n1 = ghat.dim();
    let e_idx = n1 - 1;
    let conn = &data.conn_hat;
    let two = T::one() + T::one();
    let t = |i: usize, j: usize, k: usize| -> T {
        let mut acc = T::zero();
        if i == e_idx {
            acc = acc + two.clone() * ghat.matrix().get(j, k).clone();
        }
        for m in 0..n1 {
            acc = acc - conn.coefficient(i, j, m).clone() * ghat.matrix().get(m, k).clone();
            acc = acc - conn.coefficient(i, k, m).clone() * ghat.matrix().get(j, m).clone();
        }
        acc
    };
    for i in 0..n1 {
        for j in i + 1..n1 {
            for k in 0..n1 {
                let lhs = t(i, j, k);
                let rhs = t(j, i, k);
                if lhs != rhs {
                    report.record("cone_codazzi", &[i, j, k], lhs, rhs);
                }
            }
        }
    }
    Ok(report)
}

/// Kähler data on the tangent algebra `𝔤 ⋉ ℝⁿ`.
#[derive(Clone, Debug)]
pub struct KahlerData<T> {
    pub algebra: LieAlgebra<T>,
    pub j: Matrix<T>,
    pub g_real: BilinearForm<T>,
    pub omega: AltForm<T>,
    pub weight: i64,
    /// `dΩ = 0` (exactly equivalent to the Codazzi criterion on the input).
    pub closed: bool,
}

impl<T: Scalar> KahlerData<T> {
    /// Compatibility identities `Ω(X,Y) = g(JX,Y)` and `g(JX,JY) = g(X,Y)`.
    pub fn verify_compatibility(&self) -> CheckReport {
        let n = self.algebra.dim();
        let mut report = CheckReport::new();
        let gm = self.g_real.matrix();
        let jg = self.j.transpose().matmul(gm); // (JX)ᵀ g Y
        for a in 0..n {
            for b in 0..n {
                let omega_ab = self.omega.eval_basis(&[a, b]);
                if omega_ab != *jg.get(a, b) {
                    report.record("omega_vs_metric", &[a, b], omega_ab, jg.get(a, b));
                }
            }
        }
        let jgj = self.j.transpose().matmul(gm).matmul(&self.j);
        for a in 0..n {
            for b in 0..n {
                if jgj.get(a, b) != gm.get(a, b) {
                    report.record("metric_j_invariant", &[a, b], jgj.get(a, b), gm.get(a, b));
                }
            }
        }
        report
    }
}

/// The 2-form `Σ g[i][j] e^i ∧ f^j` on the doubled space.
pub fn kahler_form<T: Scalar>(g: &BilinearForm<T>) -> AltForm<T> {
    let n = g.dim();
    let mut omega = AltForm::zero(2 * n, 2);
    for i in 0..n {
        for j in 0..n {
            omega.add_term(&[i, n + j], g.matrix().get(i, j).clone());
        }
    }
    omega
}

/// The Kähler structure the tangent construction attaches to `(𝔤, ∇, g)`:
/// `g_real = blockdiag(g, g)`, `Ω(e_i, f_j) = g[i][j]`, swap `J`. The
/// closedness flag equals the Codazzi verdict; the two are re-derived
/// independently here and must agree.
pub fn kahler_from_hessian<T: Scalar>(
    algebra: &LieAlgebra<T>,
    conn: &Connection<T>,
    g: &BilinearForm<T>,
) -> Result<KahlerData<T>> {
    require_lsa(algebra, conn)?;
    require_positive_definite(g)?;
    let (tangent, j) = rmap_complex_structure(algebra, conn)?;
    let omega = kahler_form(g);
    // a top-degree form (one-dimensional base) is closed outright
    let closed = omega.degree() >= tangent.dim() || omega.ce_d(&tangent)?.is_zero();
    let codazzi = codazzi_report(conn, g).pass();
    if closed != codazzi {
        return Err(LieError::Structure {
            what: "closedness of the tangent form disagrees with the Codazzi criterion".into(),
        });
    }
    Ok(KahlerData {
        algebra: tangent,
        j: j.matrix().clone(),
        g_real: g.block_diag(g),
        omega,
        weight: 0,
        closed,
    })
}

/// The regrouping identity `(F×G) ⋉_{α×β} H = F ⋉ (G ⋉_β H)` on structure
/// constants, under the identity identification of `F ⊕ G ⊕ H`. Requires
/// the two actions to commute on `H`.
pub fn regroup_semidirect<T: Scalar>(
    f: &LieAlgebra<T>,
    g: &LieAlgebra<T>,
    h: &LieAlgebra<T>,
    alpha: &[Matrix<T>],
    beta: &[Matrix<T>],
) -> Result<CheckReport> {
    for (i, a) in alpha.iter().enumerate() {
        for (j, b) in beta.iter().enumerate() {
            if !a.commutator(b).is_zero() {
                return Err(LieError::Structure {
                    what: format!("actions do not commute on the module: witness pair ({}, {})", i + 1, j + 1),
                });
            }
        }
    }
    let fg = f.direct_sum(g);
    let mut parts_a: Vec<Matrix<T>> = alpha.to_vec();
    parts_a.extend(beta.to_vec());
    let one_step = fg.semidirect_product(h, &parts_a)?;

    let gh = g.semidirect_product(h, beta)?;
    let parts_b: Vec<Matrix<T>> = alpha
        .iter()
        .map(|a| Matrix::<T>::zeros(g.dim(), g.dim()).block_diag(a))
        .collect();
    let nested = f.semidirect_product(&gh, &parts_b)?;

    let mut report = CheckReport::new();
    let dim = one_step.dim();
    for i in 0..dim {
        for j in i + 1..dim {
            let lhs = one_step.bracket_basis(i, j);
            let rhs = nested.bracket_basis(i, j);
            if lhs != rhs {
                report.record(
                    "regroup",
                    &[i, j],
                    crate::matrix::fmt_vector(&lhs),
                    crate::matrix::fmt_vector(&rhs),
                );
            }
        }
    }
    Ok(report)
}

/// Verified output of the cone-to-contact pipeline.
#[derive(Clone, Debug)]
pub struct SemiSasakianBundle<T> {
    /// The semi-contact collection on the `2n+1`-dimensional ideal.
    pub data: SemiContactData<T>,
    /// Complex structure on `ℝ ⋉_D 𝔪` (generator adjoined last).
    pub j_ext: Matrix<T>,
    /// The compatible metric in the same frame.
    pub g_ext: BilinearForm<T>,
    /// The `2n+2`-dimensional tangent algebra in its native frame.
    pub tangent: LieAlgebra<T>,
    pub tangent_j: Matrix<T>,
    /// Exactly `blockdiag(ĝ, ĝ)` with `ĝ` the unit-scale cone metric.
    pub tangent_metric: BilinearForm<T>,
    pub cone_metric: BilinearForm<T>,
    /// The scaling-frame Kähler form (weight 2) on the tangent algebra.
    pub omega_weighted: WeightedForm<T>,
}

/// From a passing Hessian cone to verified semi-Sasakian data:
/// build the tangent algebra of the cone table, put the weight-2 Kähler
/// form on it, check closedness in the scaling frame, regroup so that the
/// dilation generator acts on the ideal `𝔪 = 𝔤 ⋉ ℝ^{n+1}`, and split along
/// the calibrated Euler element `E' = −E/2`.
pub fn semisasakian_from_projective_hessian<T: Scalar>(
    data: &ProjectiveHessianData<T>,
) -> Result<SemiSasakianBundle<T>> {
    let cone = check_hessian_cone(data)?;
    if !cone.pass() {
        return Err(LieError::Rejected { op: "check_hessian_cone", report: cone });
    }
    let n = data.g_alg.dim();
    let n1 = n + 1;
    let (tangent, jc) = rmap_complex_structure(&data.hat_alg, &data.conn_hat)?;
    let ghat = data.cone_metric();
    let tangent_metric = ghat.block_diag(&ghat);
    let omega0 = kahler_form(&ghat);

    // closedness in the scaling frame: dΩ₀ + 2 ϑ_E ∧ Ω₀ = 0 exactly
    let weighted = WeightedForm { form: omega0.clone(), weight: 2 };
    if !weighted.weighted_d(&tangent, n)?.is_zero() {
        return Err(LieError::Structure {
            what: "scaling-frame closedness failed on a passing cone".into(),
        });
    }

    // regrouping identity: (ℝE × 𝔤) ⋉ ℝ^{n+1} = ℝE ⋉ (𝔤 ⋉ ℝ^{n+1})
    let line = LieAlgebra::abelian(1).with_labels(&["E"]);
    let alpha = vec![data.conn_hat.nabla_basis(n)];
    let beta: Vec<Matrix<T>> = (0..n).map(|i| data.conn_hat.nabla_basis(i)).collect();
    let regroup = regroup_semidirect(&line, &data.g_alg, &LieAlgebra::abelian(n1), &alpha, &beta)?;
    if !regroup.pass() {
        return Err(LieError::Rejected { op: "regroup_semidirect", report: regroup });
    }

    // the Lee form of a weight-2 form is −2 ϑ_E; split along E' = −E/2
    let two = T::one() + T::one();
    let lee = AltForm::basis_covector(2 * n1, n).scale(&-two.clone());
    let lcs = LcsData::new(tangent.clone(), omega0.clone(), lee)?;
    let mut e_prime = vec![T::zero(); 2 * n1];
    e_prime[n] = -(T::one() / two);
    let contact = split_lcs(&lcs, &e_prime)?;

    // express J and the metric in the split frame (𝔪 …, E')
    let mut p = Matrix::<T>::zeros(2 * n1, 2 * n1);
    let m_idx: Vec<usize> = (0..n).chain(n + 1..2 * n1).collect();
    for (a, &i) in m_idx.iter().enumerate() {
        p.set(i, a, T::one());
    }
    for (r, v) in e_prime.iter().enumerate() {
        p.set(r, 2 * n1 - 1, v.clone());
    }
    let p_inv = p.inverse().expect("split frame is a basis");
    let j_ext = p_inv.matmul(jc.matrix()).matmul(&p);
    let g_ext = tangent_metric.pullback(&p)?;

    let verdict = check_semisasakian(&contact, &j_ext)?;
    if !verdict.pass() {
        return Err(LieError::Rejected { op: "check_semisasakian", report: verdict });
    }

    Ok(SemiSasakianBundle {
        data: contact,
        j_ext,
        g_ext,
        tangent,
        tangent_j: jc.matrix().clone(),
        tangent_metric,
        cone_metric: ghat,
        omega_weighted: weighted,
    })
}
