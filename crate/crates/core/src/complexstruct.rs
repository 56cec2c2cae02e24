//! Almost complex structures on even-dimensional algebras: the tangent
//! (r-map) construction from a left-symmetric table and the Nijenhuis
//! integrability check.

use crate::affine::{check_lsa, Connection};
use crate::algebra::LieAlgebra;
use crate::matrix::{basis_vector, vec_is_zero, vec_sub, Matrix};
use crate::report::{CheckReport, LieError, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructure<T> {
    j: Matrix<T>,
}

impl<T: Scalar> ComplexStructure<T> {
    /// Wrap a candidate; requires `J² = −Id` exactly.
    pub fn new(j: Matrix<T>) -> Result<Self> {
        if !j.is_square() {
            return Err(LieError::Dimension { what: "complex structure".into(), expected: j.rows(), found: j.cols() });
        }
        let n = j.rows();
        if j.matmul(&j) != Matrix::identity(n).neg() {
            return Err(LieError::Structure { what: "J² ≠ −Id".into() });
        }
        Ok(Self { j })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.j
    }
}

/// The tangent-algebra complex structure of a left-symmetric table:
/// `𝔤_∇ = 𝔤 ⋉ ℝⁿ` through the left-multiplication parts, with `J` swapping
/// the horizontal and vertical blocks (`J e_i = f_i`, `J f_i = −e_i`).
pub fn rmap_complex_structure<T: Scalar>(
    algebra: &LieAlgebra<T>,
    conn: &Connection<T>,
) -> Result<(LieAlgebra<T>, ComplexStructure<T>)> {
    let lsa = check_lsa(algebra, conn)?;
    if !lsa.pass() {
        return Err(LieError::Rejected { op: "check_lsa", report: lsa });
    }
    let n = algebra.dim();
    let parts: Vec<Matrix<T>> = (0..n).map(|i| conn.nabla_basis(i)).collect();
    let tangent = algebra.semidirect_abelian(&parts)?;
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j.set(n + i, i, T::one());
        j.set(i, n + i, -T::one());
    }
    Ok((tangent, ComplexStructure::new(j)?))
}

/// Nijenhuis tensor `N(X,Y) = [JX,JY] − J[JX,Y] − J[X,JY] − [X,Y]`
/// (no normalizing factor; only vanishing matters).
pub fn nijenhuis<T: Scalar>(
    algebra: &LieAlgebra<T>,
    j: &Matrix<T>,
    x: &[T],
    y: &[T],
) -> Vec<T> {
    let jx = j.apply(x);
    let jy = j.apply(y);
    let mut n = algebra.bracket(&jx, &jy);
    n = vec_sub(&n, &j.apply(&algebra.bracket(&jx, y)));
    n = vec_sub(&n, &j.apply(&algebra.bracket(x, &jy)));
    n = vec_sub(&n, &algebra.bracket(x, y));
    n
}

/// `J² = −Id` plus vanishing of the Nijenhuis tensor on all basis pairs.
pub fn check_complex_structure<T: Scalar>(
    algebra: &LieAlgebra<T>,
    j: &Matrix<T>,
) -> Result<CheckReport> {
    let n = algebra.dim();
    if !n.is_multiple_of(2) {
        return Err(LieError::Dimension { what: "complex structure needs even dimension".into(), expected: n + 1, found: n });
    }
    if j.rows() != n || j.cols() != n {
        return Err(LieError::Dimension { what: "complex structure".into(), expected: n, found: j.rows() });
    }
    let mut report = CheckReport::new();
    let jj = j.matmul(j);
    let minus_id = Matrix::<T>::identity(n).neg();
    for r in 0..n {
        for c in 0..n {
            if jj.get(r, c) != minus_id.get(r, c) {
                report.record("j_squared", &[r, c], jj.get(r, c), minus_id.get(r, c));
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let nij = nijenhuis(algebra, j, &basis_vector(n, a), &basis_vector(n, b));
            if !vec_is_zero(&nij) {
                for (m, coeff) in nij.iter().enumerate() {
                    if !coeff.is_zero() {
                        report.record("nijenhuis", &[a, b, m], coeff, "0");
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    fn complex_table() -> (LieAlgebra<Rat>, Connection<Rat>) {
        let algebra = LieAlgebra::abelian(2);
        let mut conn = Connection::zero(2);
        conn.set(0, 0, &[(0, int(1))]);
        conn.set(0, 1, &[(1, int(1))]);
        conn.set(1, 0, &[(1, int(1))]);
        conn.set(1, 1, &[(0, int(-1))]);
        (algebra, conn)
    }

    #[test]
    fn standard_j_on_abelian_is_integrable() {
        let (flat, j) = rmap_complex_structure(&LieAlgebra::<Rat>::abelian(2), &Connection::zero(2)).unwrap();
        assert_eq!(flat.dim(), 4);
        assert!(flat.validate().pass());
        assert!(check_complex_structure(&flat, j.matrix()).unwrap().pass());
    }

    #[test]
    fn tangent_structure_of_complex_table_is_integrable() {
        let (a, c) = complex_table();
        let (tangent, j) = rmap_complex_structure(&a, &c).unwrap();
        assert_eq!(tangent.dim(), 4);
        assert!(tangent.validate().pass());
        assert!(check_complex_structure(&tangent, j.matrix()).unwrap().pass());
    }

    #[test]
    fn swap_j_on_heisenberg_sum_fails_with_witness() {
        // h3 ⊕ ℝ with J e1 = e3, J e2 = e4: N(e1, e2) = −e3
        let mut a = LieAlgebra::<Rat>::abelian(4);
        a.set_bracket(0, 1, &[(2, int(1))]);
        let mut j = Matrix::zeros(4, 4);
        j.set(2, 0, int(1));
        j.set(0, 2, int(-1));
        j.set(3, 1, int(1));
        j.set(1, 3, int(-1));
        let report = check_complex_structure(&a, &j).unwrap();
        assert!(!report.pass());
        assert!(report
            .violations
            .iter()
            .any(|v| v.identity == "nijenhuis" && v.witness == vec![1, 2, 3] && v.left == "-1"));
    }

    #[test]
    fn odd_dimension_is_an_error() {
        let a = LieAlgebra::<Rat>::abelian(3);
        assert!(check_complex_structure(&a, &Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn nijenhuis_symmetries() {
        let (a, c) = complex_table();
        let (tangent, j) = rmap_complex_structure(&a, &c).unwrap();
        // perturb the algebra so N is nonzero, then probe symmetries
        let mut algebra = tangent.clone();
        algebra.set_bracket(0, 1, &[(2, int(1))]);
        let n = algebra.dim();
        let x = [int(1), int(2), int(0), int(-1)];
        let y = [int(0), int(1), int(3), int(1)];
        let nxy = nijenhuis(&algebra, j.matrix(), &x, &y);
        let nyx = nijenhuis(&algebra, j.matrix(), &y, &x);
        assert_eq!(nxy, nyx.iter().map(|v| -v.clone()).collect::<Vec<_>>());
        // N(JX, JY) = −N(X, Y) whenever J² = −Id
        let jx = j.matrix().apply(&x);
        let jy = j.matrix().apply(&y);
        let njj = nijenhuis(&algebra, j.matrix(), &jx, &jy);
        assert_eq!(njj, nxy.iter().map(|v| -v.clone()).collect::<Vec<_>>());
        let _ = n;
    }
}
