//! Contact-type data: semi-contact collections `(𝔤, D, ω, η)`, locally
//! conformally symplectic pairs `(Ω, ϑ)`, their equivalence through the
//! one-generator extension `ℝ ⋉_D 𝔤`, and the locally conformally Kähler /
//! semi-Sasakian checks on top.
//!
//! Sign calibration. With the differential convention of [`crate::forms`]
//! (`(dα)(X,Y) = −α([X,Y])`), the split of a 2-form on `ℝE ⊕ 𝔤` that makes
//! the correspondence exact is
//!
//! ```text
//! Ω = ω + SPLIT_SIGN · ϑ∧η,      η = SPLIT_SIGN · (ι_E Ω)|_𝔤,
//! ```
//!
//! with `SPLIT_SIGN = −1`, fixed once by the classical contact case on the
//! Heisenberg algebra (D = 0, ω = dη) and pinned by the round-trip tests.

use crate::algebra::LieAlgebra;
use crate::forms::AltForm;
use crate::matrix::{basis_vector, row_echelon_basis, vec_is_zero, Matrix};
use crate::report::{CheckReport, LieError, Result};
use crate::scalar::Scalar;

/// The calibrated sign in `Ω = ω + SPLIT_SIGN·ϑ∧η` and `η = SPLIT_SIGN·ι_EΩ`.
pub const SPLIT_SIGN: i64 = -1;

fn split_sign<T: Scalar>() -> T {
    -T::one()
}

/// `dα`, reading the differential of a top-degree form as zero (the checks
/// below meet that edge on two-dimensional algebras).
fn d_or_zero<T: Scalar>(form: &AltForm<T>, algebra: &LieAlgebra<T>) -> Result<AltForm<T>> {
    if form.degree() >= form.dim() {
        return Ok(AltForm::zero(form.dim(), form.degree() + 1));
    }
    form.ce_d(algebra)
}

/// `(𝔤, D, ω, η)` with `D` a derivation, `ω` a 2-form, `η` a 1-form.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiContactData<T> {
    pub algebra: LieAlgebra<T>,
    pub derivation: Matrix<T>,
    pub omega: AltForm<T>,
    pub eta: AltForm<T>,
}

impl<T: Scalar> SemiContactData<T> {
    pub fn new(
        algebra: LieAlgebra<T>,
        derivation: Matrix<T>,
        omega: AltForm<T>,
        eta: AltForm<T>,
    ) -> Result<Self> {
        let n = algebra.dim();
        if omega.dim() != n || eta.dim() != n {
            return Err(LieError::Dimension { what: "form over algebra".into(), expected: n, found: omega.dim() });
        }
        if omega.degree() != 2 || eta.degree() != 1 {
            return Err(LieError::Degree { what: "semi-contact data needs a 2-form and a 1-form".into() });
        }
        let der = algebra.is_derivation(&derivation)?;
        if !der.pass() {
            return Err(LieError::Rejected { op: "is_derivation", report: der });
        }
        Ok(Self { algebra, derivation, omega, eta })
    }
}

/// `(𝔥, Ω, ϑ)` with `Ω` a 2-form and `ϑ` a 1-form on an even-dimensional
/// algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct LcsData<T> {
    pub algebra: LieAlgebra<T>,
    pub omega: AltForm<T>,
    pub theta: AltForm<T>,
}

impl<T: Scalar> LcsData<T> {
    pub fn new(algebra: LieAlgebra<T>, omega: AltForm<T>, theta: AltForm<T>) -> Result<Self> {
        let n = algebra.dim();
        if omega.dim() != n || theta.dim() != n {
            return Err(LieError::Dimension { what: "form over algebra".into(), expected: n, found: omega.dim() });
        }
        if omega.degree() != 2 || theta.degree() != 1 {
            return Err(LieError::Degree { what: "lcs data needs a 2-form and a 1-form".into() });
        }
        Ok(Self { algebra, omega, theta })
    }
}

/// A form carried at unit scale together with its homogeneity weight along
/// the dilation factor. Its true differential picks up `w·ϑ_E ∧ ·` from the
/// scale dependence of the frame coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedForm<T> {
    pub form: AltForm<T>,
    pub weight: i64,
}

impl<T: Scalar> WeightedForm<T> {
    /// `d(t^w α₀)` evaluated at unit scale: `d α₀ + w·ϑ_E ∧ α₀`, with
    /// `ϑ_E` the dual of the scaling generator (basis index `scaling`).
    pub fn weighted_d(&self, algebra: &LieAlgebra<T>, scaling: usize) -> Result<AltForm<T>> {
        let d = self.form.ce_d(algebra)?;
        let theta_e = AltForm::basis_covector(self.form.dim(), scaling);
        let mut w = T::zero();
        let positive = self.weight >= 0;
        for _ in 0..self.weight.unsigned_abs() {
            w = w.clone() + T::one();
        }
        if !positive {
            w = -w;
        }
        Ok(d.add(&theta_e.wedge(&self.form).scale(&w)))
    }
}

/// The three semi-contact conditions, exactly:
/// `dω = 0`, `ω + D*ω − dη = 0`, and `η ∧ ωⁿ ≠ 0`.
pub fn check_semicontact<T: Scalar>(data: &SemiContactData<T>) -> Result<CheckReport> {
    let n2 = data.algebra.dim();
    if n2.is_multiple_of(2) {
        return Err(LieError::Dimension {
            what: "semi-contact algebra must be odd-dimensional".into(),
            expected: n2 + 1,
            found: n2,
        });
    }
    let n = (n2 - 1) / 2;
    let mut report = CheckReport::new();
    let d_omega = d_or_zero(&data.omega, &data.algebra)?;
    for (idx, v) in d_omega.terms() {
        report.record("d_omega", idx, v, "0");
    }
    let deformation = data
        .omega
        .add(&data.omega.pull_derivation(&data.derivation))
        .sub(&d_or_zero(&data.eta, &data.algebra)?);
    for (idx, v) in deformation.terms() {
        report.record("omega_deformation", idx, v, "0");
    }
    let volume = data.eta.wedge(&data.omega.wedge_pow(n));
    if volume.top_coefficient().is_zero() {
        report.record("nondegenerate", &[], "0", "eta ∧ omega^n ≠ 0");
    }
    Ok(report)
}

/// Raw construction of the lcs pair on `ℝ ⋉_D 𝔤` (E adjoined last):
/// `ϑ = E^*`, `Ω = ω + SPLIT_SIGN·ϑ∧η`. No precondition check.
pub fn lcs_of_semicontact_unchecked<T: Scalar>(data: &SemiContactData<T>) -> Result<LcsData<T>> {
    let extended = data.algebra.extend_by_derivation(&data.derivation)?;
    let n1 = extended.dim();
    let theta = AltForm::basis_covector(n1, n1 - 1);
    let omega = data
        .omega
        .extend(n1)
        .add(&theta.wedge(&data.eta.extend(n1)).scale(&split_sign::<T>()));
    LcsData::new(extended, omega, theta)
}

/// The lcs pair of a semi-contact collection; rejects failing input with
/// its report.
pub fn lcs_of_semicontact<T: Scalar>(data: &SemiContactData<T>) -> Result<LcsData<T>> {
    let report = check_semicontact(data)?;
    if !report.pass() {
        return Err(LieError::Rejected { op: "check_semicontact", report });
    }
    lcs_of_semicontact_unchecked(data)
}

/// The lcs conditions, exactly: `dϑ = 0`, `dΩ = ϑ∧Ω`, `Ω^{dim/2} ≠ 0`.
pub fn check_lcs<T: Scalar>(data: &LcsData<T>) -> Result<CheckReport> {
    let n2 = data.algebra.dim();
    if !n2.is_multiple_of(2) {
        return Err(LieError::Dimension {
            what: "lcs algebra must be even-dimensional".into(),
            expected: n2 + 1,
            found: n2,
        });
    }
    let mut report = CheckReport::new();
    let d_theta = data.theta.ce_d(&data.algebra)?;
    for (idx, v) in d_theta.terms() {
        report.record("d_theta", idx, v, "0");
    }
    let d_omega = d_or_zero(&data.omega, &data.algebra)?;
    let target = data.theta.wedge(&data.omega);
    for (idx, _) in d_omega.sub(&target).terms() {
        report.record("dOmega = theta∧Omega", idx, d_omega.coefficient(idx), target.coefficient(idx));
    }
    if data.omega.wedge_pow(n2 / 2).top_coefficient().is_zero() {
        report.record("nondegenerate", &[], "0", "Omega^(dim/2) ≠ 0");
    }
    Ok(report)
}

/// Split an lcs pair along a generator `E` with `ϑ(E) = 1`: the kernel of
/// `ϑ` must be an ideal; the result is `(ker ϑ, ad_E, Ω|, SPLIT_SIGN·ι_EΩ|)`.
/// When `ϑ` is dual to a basis vector the original basis is kept verbatim,
/// making the round trip with [`lcs_of_semicontact`] the identity.
pub fn split_lcs<T: Scalar>(data: &LcsData<T>, e: &[T]) -> Result<SemiContactData<T>> {
    let n2 = data.algebra.dim();
    if e.len() != n2 {
        return Err(LieError::Dimension { what: "splitting generator".into(), expected: n2, found: e.len() });
    }
    let theta_e = data.theta.eval_vectors(&[e]);
    if theta_e != T::one() {
        return Err(LieError::Structure { what: format!("theta(E) = {} ≠ 1", theta_e) });
    }
    // kernel basis: project each basis vector along E, keep the independent
    // ones in index order (basis vectors annihilated by ϑ stay verbatim)
    let mut kernel: Vec<Vec<T>> = Vec::new();
    for i in 0..n2 {
        let ei = basis_vector::<T>(n2, i);
        let ti = data.theta.eval_vectors(&[&ei]);
        let candidate: Vec<T> = (0..n2)
            .map(|r| ei[r].clone() - ti.clone() * e[r].clone())
            .collect();
        if vec_is_zero(&candidate) {
            continue;
        }
        let mut probe = kernel.clone();
        probe.push(candidate.clone());
        if row_echelon_basis(&probe).len() > row_echelon_basis(&kernel).len() {
            kernel.push(candidate);
        }
        if kernel.len() == n2 - 1 {
            break;
        }
    }
    if kernel.len() != n2 - 1 {
        return Err(LieError::Structure { what: "ker ϑ has unexpected dimension".into() });
    }
    // ideal check: ϑ kills every bracket with a kernel vector
    for i in 0..n2 {
        let ei = basis_vector::<T>(n2, i);
        for (a, v) in kernel.iter().enumerate() {
            let br = data.algebra.bracket(&ei, v);
            if !data.theta.eval_vectors(&[&br]).is_zero() {
                return Err(LieError::Structure {
                    what: format!("ker ϑ is not an ideal: bracket of e{} with kernel vector {} leaves it", i + 1, a + 1),
                });
            }
        }
    }
    // change of basis (kernel…, E)
    let mut p = Matrix::zeros(n2, n2);
    for (a, v) in kernel.iter().enumerate() {
        for r in 0..n2 {
            p.set(r, a, v[r].clone());
        }
    }
    for r in 0..n2 {
        p.set(r, n2 - 1, e[r].clone());
    }
    let inv = p
        .inverse()
        .ok_or_else(|| LieError::Structure { what: "kernel basis plus E is not a basis".into() })?;

    let small: Vec<usize> = (0..n2 - 1).collect();
    let mut base = vec![vec![vec![T::zero(); n2 - 1]; n2 - 1]; n2 - 1];
    for a in 0..n2 - 1 {
        for b in 0..n2 - 1 {
            let br = data.algebra.bracket(&kernel[a], &kernel[b]);
            let coords = inv.apply(&br);
            debug_assert!(coords[n2 - 1].is_zero());
            base[a][b].clone_from_slice(&coords[..n2 - 1]);
        }
    }
    // keep the original label when a kernel vector is a plain basis vector
    let labels = kernel
        .iter()
        .enumerate()
        .map(|(a, v)| {
            match (0..n2).find(|&i| *v == basis_vector::<T>(n2, i)) {
                Some(i) => data.algebra.labels()[i].clone(),
                None => format!("v{}", a + 1),
            }
        })
        .collect();
    let algebra = LieAlgebra::from_structure_constants(labels, base);

    let mut derivation = Matrix::zeros(n2 - 1, n2 - 1);
    for (b, v) in kernel.iter().enumerate() {
        let br = data.algebra.bracket(e, v);
        let coords = inv.apply(&br);
        for a in 0..n2 - 1 {
            derivation.set(a, b, coords[a].clone());
        }
    }

    let omega_pull = data.omega.pullback(&p).restrict(&small);
    let eta_full = data.omega.interior(e)?.scale(&split_sign::<T>());
    let eta_pull = eta_full.pullback(&p).restrict(&small);
    SemiContactData::new(algebra, derivation, omega_pull, eta_pull)
}

/// The metric a 2-form and a complex structure induce: `g(X,Y) = Ω(X, JY)`.
pub fn lck_metric<T: Scalar>(omega: &AltForm<T>, j: &Matrix<T>) -> Matrix<T> {
    let n = j.rows();
    Matrix::from_fn(n, n, |a, b| {
        let ea = basis_vector::<T>(n, a);
        let jb = j.col(b);
        omega.eval_vectors(&[&ea, &jb])
    })
}

/// lcs plus integrable `J` plus `Ω(·, J·)` symmetric positive definite
/// (positive definiteness decided exactly by Sylvester minors).
pub fn check_lck<T: Scalar>(data: &LcsData<T>, j: &Matrix<T>) -> Result<CheckReport> {
    let mut report = check_lcs(data)?;
    report.merge("", crate::complexstruct::check_complex_structure(&data.algebra, j)?);
    let g = lck_metric(&data.omega, j);
    let n = g.rows();
    for a in 0..n {
        for b in a + 1..n {
            if g.get(a, b) != g.get(b, a) {
                report.record("metric_symmetric", &[a, b], g.get(a, b), g.get(b, a));
            }
        }
    }
    if g.is_symmetric() && !g.is_positive_definite() {
        for k in 1..=n {
            let minor = g.leading_principal_minor(k);
            if !minor.is_positive() {
                report.record("metric_positive_definite", &[k - 1], minor, "> 0");
                break;
            }
        }
    }
    Ok(report)
}

/// Semi-Sasakian: the semi-contact conditions on `(𝔤, D, ω, η)` together
/// with lck of the associated pair on `ℝ ⋉_D 𝔤` for the given `J` there.
pub fn check_semisasakian<T: Scalar>(
    data: &SemiContactData<T>,
    j: &Matrix<T>,
) -> Result<CheckReport> {
    if j.rows() != data.algebra.dim() + 1 {
        return Err(LieError::Dimension {
            what: "J on the one-generator extension".into(),
            expected: data.algebra.dim() + 1,
            found: j.rows(),
        });
    }
    let mut report = check_semicontact(data)?;
    let lcs = lcs_of_semicontact_unchecked(data)?;
    report.merge("lck", check_lck(&lcs, j)?);
    Ok(report)
}
