//! Invariant flat torsion-free connections (left-symmetric products), the
//! associated étale affine representation, and the radiant / projective
//! structure checks.
//!
//! A connection is the table `Γ[i][j][k]`, read as `∇_{e_i} e_j = Σ_k
//! Γ[i][j][k] e_k`, equivalently a product `e_i · e_j`. Torsion-freeness is
//! `XY − YX = [X,Y]`; flatness is expressed as symmetry of the associator
//! `(X,Y,Z) = X(YZ) − (XY)Z` in its first two arguments, which for a
//! torsion-free table is the same as `[∇_X, ∇_Y] = ∇_{[X,Y]}` (both forms
//! are implemented and must agree).

use crate::algebra::LieAlgebra;
use crate::matrix::{basis_vector, fmt_vector, vec_is_zero, vec_sub, Matrix};
use crate::report::{CheckReport, LieError, Result};
use crate::scalar::{rat_to_f64, Rat, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Connection<T> {
    dim: usize,
    gamma: Vec<Vec<Vec<T>>>,
}

impl<T: Scalar> Connection<T> {
    pub fn zero(dim: usize) -> Self {
        Self { dim, gamma: vec![vec![vec![T::zero(); dim]; dim]; dim] }
    }

    pub fn from_table(gamma: Vec<Vec<Vec<T>>>) -> Self {
        let dim = gamma.len();
        assert!(gamma.iter().all(|p| p.len() == dim && p.iter().all(|q| q.len() == dim)));
        Self { dim, gamma }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> &T {
        &self.gamma[i][j][k]
    }

    pub fn set(&mut self, i: usize, j: usize, value: &[(usize, T)]) {
        self.gamma[i][j].fill(T::zero());
        for (k, v) in value {
            self.gamma[i][j][*k] = v.clone();
        }
    }

    /// `e_i · e_j` as a coordinate vector.
    pub fn product_basis(&self, i: usize, j: usize) -> Vec<T> {
        self.gamma[i][j].clone()
    }

    pub fn product(&self, x: &[T], y: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                for k in 0..self.dim {
                    out[k] =
                        out[k].clone() + x[i].clone() * y[j].clone() * self.gamma[i][j][k].clone();
                }
            }
        }
        out
    }

    /// The left-multiplication matrix `∇_{e_i}`: column `j` is `e_i · e_j`.
    pub fn nabla_basis(&self, i: usize) -> Matrix<T> {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.gamma[i][j][k].clone())
    }

    pub fn nabla(&self, x: &[T]) -> Matrix<T> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if !x[i].is_zero() {
                m = m.add(&self.nabla_basis(i).scale(&x[i]));
            }
        }
        m
    }

    /// The bracket a torsion-free table induces: `c[i][j] = Γ[i][j] − Γ[j][i]`.
    pub fn induced_bracket(&self) -> LieAlgebra<T> {
        let n = self.dim;
        let labels = (1..=n).map(|i| format!("e{}", i)).collect();
        let mut c = vec![vec![vec![T::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.gamma[i][j][k].clone() - self.gamma[j][i][k].clone();
                }
            }
        }
        LieAlgebra::from_structure_constants(labels, c)
    }
}

fn expect_dims<T: Scalar>(algebra: &LieAlgebra<T>, conn: &Connection<T>, what: &str) -> Result<()> {
    if algebra.dim() != conn.dim() {
        return Err(LieError::Dimension {
            what: what.into(),
            expected: algebra.dim(),
            found: conn.dim(),
        });
    }
    Ok(())
}

/// Torsion-freeness and left-symmetry of the product table.
pub fn check_lsa<T: Scalar>(algebra: &LieAlgebra<T>, conn: &Connection<T>) -> Result<CheckReport> {
    expect_dims(algebra, conn, "connection over algebra")?;
    let n = algebra.dim();
    let mut report = CheckReport::new();
    for i in 0..n {
        for j in i + 1..n {
            let torsion = vec_sub(
                &vec_sub(&conn.product_basis(i, j), &conn.product_basis(j, i)),
                &algebra.bracket_basis(i, j),
            );
            if !vec_is_zero(&torsion) {
                report.record("torsion", &[i, j], fmt_vector(&torsion), "0");
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let lhs = associator(conn, i, j, k);
                let rhs = associator(conn, j, i, k);
                if lhs != rhs {
                    report.record(
                        "left_symmetry",
                        &[i, j, k],
                        fmt_vector(&lhs),
                        fmt_vector(&rhs),
                    );
                }
            }
        }
    }
    Ok(report)
}

fn associator<T: Scalar>(conn: &Connection<T>, i: usize, j: usize, k: usize) -> Vec<T> {
    let n = conn.dim();
    let jk = conn.product_basis(j, k);
    let ij = conn.product_basis(i, j);
    vec_sub(&conn.product(&basis_vector(n, i), &jk), &conn.product(&ij, &basis_vector(n, k)))
}

/// Flatness stated directly: `[∇_{e_i}, ∇_{e_j}] = ∇_{[e_i,e_j]}`. For a
/// torsion-free table this agrees with the associator form in `check_lsa`.
pub fn check_flat<T: Scalar>(algebra: &LieAlgebra<T>, conn: &Connection<T>) -> Result<CheckReport> {
    expect_dims(algebra, conn, "connection over algebra")?;
    let n = algebra.dim();
    let mut report = CheckReport::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = conn.nabla_basis(i).commutator(&conn.nabla_basis(j));
            let rhs = conn.nabla(&algebra.bracket_basis(i, j));
            if lhs != rhs {
                report.record("flatness", &[i, j], "curvature", "0");
            }
        }
    }
    Ok(report)
}

/// One affine matrix per generator in the block form `[[∇_{e_i}, e_i], [0, 0]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineRep<T> {
    pub mats: Vec<Matrix<T>>,
}

impl<T: Scalar> AffineRep<T> {
    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    pub fn linear_part(&self, i: usize) -> Matrix<T> {
        let n = self.dim();
        let idx: Vec<usize> = (0..n).collect();
        self.mats[i].submatrix(&idx, &idx)
    }

    pub fn translation_part(&self, i: usize) -> Vec<T> {
        let n = self.dim();
        (0..n).map(|r| self.mats[i].get(r, n).clone()).collect()
    }
}

/// The affine representation attached to a left-symmetric table. Requires a
/// passing `check_lsa`; the homomorphism property is then verified on all
/// basis pairs as an internal consistency assertion.
pub fn etale_rep<T: Scalar>(algebra: &LieAlgebra<T>, conn: &Connection<T>) -> Result<AffineRep<T>> {
    let lsa = check_lsa(algebra, conn)?;
    if !lsa.pass() {
        return Err(LieError::Rejected { op: "check_lsa", report: lsa });
    }
    let n = algebra.dim();
    let mats: Vec<Matrix<T>> = (0..n)
        .map(|i| {
            Matrix::from_fn(n + 1, n + 1, |r, c| {
                if r < n && c < n {
                    conn.coefficient(i, c, r).clone()
                } else if r < n && c == n {
                    if r == i { T::one() } else { T::zero() }
                } else {
                    T::zero()
                }
            })
        })
        .collect();
    // homomorphism into the affine algebra, on all basis pairs
    for i in 0..n {
        for j in 0..n {
            let lhs = mats[i].commutator(&mats[j]);
            let bracket = algebra.bracket_basis(i, j);
            let mut rhs = Matrix::zeros(n + 1, n + 1);
            for (k, coeff) in bracket.iter().enumerate() {
                if !coeff.is_zero() {
                    rhs = rhs.add(&mats[k].scale(coeff));
                }
            }
            if lhs != rhs {
                return Err(LieError::Structure {
                    what: format!("affine representation is not a homomorphism at ({},{})", i + 1, j + 1),
                });
            }
        }
    }
    Ok(AffineRep { mats })
}

/// `exp(∇_X)`: exact truncated series when `∇_X` is nilpotent, otherwise a
/// scaled-squaring float evaluation good to about 1e-12.
#[derive(Clone, Debug)]
pub enum ExpLinearPart {
    Exact(Matrix<Rat>),
    Numeric(Matrix<f64>),
}

pub fn exp_linear_part(conn: &Connection<Rat>, x: &[Rat]) -> ExpLinearPart {
    let n = conn.dim();
    let nx = conn.nabla(x);
    // nilpotency detection: some power up to n+1 vanishes
    let mut p = Matrix::<Rat>::identity(n);
    let mut nilpotent = false;
    for _ in 0..=n {
        p = p.matmul(&nx);
        if p.is_zero() {
            nilpotent = true;
            break;
        }
    }
    if nilpotent {
        let mut acc = Matrix::<Rat>::identity(n);
        let mut term = Matrix::<Rat>::identity(n);
        let mut k = 1i64;
        loop {
            term = term.matmul(&nx).scale(&crate::scalar::rat(1, k));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
            k += 1;
        }
        ExpLinearPart::Exact(acc)
    } else {
        let fx = Matrix::from_fn(n, n, |r, c| rat_to_f64(nx.get(r, c)));
        ExpLinearPart::Numeric(expm(&fx))
    }
}

/// Matrix exponential by scaling and squaring with a truncated series;
/// adequate for the small well-scaled matrices that occur here (|error|
/// around 1e-15 relative for norms up to ~10).
pub fn expm(m: &Matrix<f64>) -> Matrix<f64> {
    let n = m.rows();
    let norm: f64 = (0..n)
        .map(|r| m.row(r).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut s = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > 0.25 && s < 40 {
        scaled_norm /= 2.0;
        s += 1;
    }
    let scale = (1u64 << s) as f64;
    let a = m.scale(&(1.0 / scale));
    let mut acc = Matrix::<f64>::identity(n);
    let mut term = Matrix::<f64>::identity(n);
    for k in 1..=24u64 {
        term = term.matmul(&a).scale(&(1.0 / k as f64));
        acc = acc.add(&term);
    }
    for _ in 0..s {
        acc = acc.matmul(&acc);
    }
    acc
}

/// Radiance of a vector `ξ`: `∇_{e_i} ξ = e_i` for every basis element.
pub fn check_radiant<T: Scalar>(
    algebra: &LieAlgebra<T>,
    conn: &Connection<T>,
    xi: &[T],
) -> Result<CheckReport> {
    expect_dims(algebra, conn, "connection over algebra")?;
    if xi.len() != algebra.dim() {
        return Err(LieError::Dimension {
            what: "radiant vector".into(),
            expected: algebra.dim(),
            found: xi.len(),
        });
    }
    let n = algebra.dim();
    let mut report = CheckReport::new();
    for i in 0..n {
        let got = conn.product(&basis_vector(n, i), xi);
        let want = basis_vector::<T>(n, i);
        if got != want {
            report.record("radiant", &[i], fmt_vector(&got), fmt_vector(&want));
        }
    }
    Ok(report)
}

/// Projective structure on `𝔤 × ℝE` (E the last generator of `hat`):
/// the hat algebra must be the direct product of `g` with a central `E`,
/// the table must be left-symmetric, and `∇_X E = ∇_E X = X` for `X ∈ 𝔤`
/// together with `∇_E E = E`. All violations are collected in one report.
pub fn check_projective<T: Scalar>(
    g: &LieAlgebra<T>,
    hat: &LieAlgebra<T>,
    conn_hat: &Connection<T>,
) -> Result<CheckReport> {
    let n = g.dim();
    if hat.dim() != n + 1 {
        return Err(LieError::Dimension {
            what: "extended algebra".into(),
            expected: n + 1,
            found: hat.dim(),
        });
    }
    expect_dims(hat, conn_hat, "connection over extended algebra")?;
    let mut report = CheckReport::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut sub = hat.bracket_basis(i, j);
            let tail = sub.split_off(n);
            if sub != g.bracket_basis(i, j) || !vec_is_zero(&tail) {
                report.record("product_bracket", &[i, j], fmt_vector(&hat.bracket_basis(i, j)), "bracket of the base algebra");
            }
        }
    }
    for i in 0..n {
        if !vec_is_zero(&hat.bracket_basis(n, i)) {
            report.record("central_factor", &[i], fmt_vector(&hat.bracket_basis(n, i)), "0");
        }
    }
    report.merge("lsa", check_lsa(hat, conn_hat)?);
    for i in 0..n {
        let want = basis_vector::<T>(n + 1, i);
        let xe = conn_hat.product_basis(i, n);
        if xe != want {
            report.record("nabla_x_e", &[i], fmt_vector(&xe), fmt_vector(&want));
        }
        let ex = conn_hat.product_basis(n, i);
        if ex != want {
            report.record("nabla_e_x", &[i], fmt_vector(&ex), fmt_vector(&want));
        }
    }
    let ee = conn_hat.product_basis(n, n);
    let want = basis_vector::<T>(n + 1, n);
    if ee != want {
        report.record("nabla_e_e", &[n], fmt_vector(&ee), fmt_vector(&want));
    }
    Ok(report)
}
