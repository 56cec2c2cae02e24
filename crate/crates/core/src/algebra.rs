//! Lie algebras by structure constants, with the semidirect constructions.
//!
//! Conventions: `c[i][j][k]` means `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
//! `extend_by_derivation` adjoins the acting generator as the *last* basis
//! element (so an ideal keeps its indices); `semidirect_product` puts the
//! acting factor *first*, matching the usual `𝔣 ⋉ 𝔪` reading.

use crate::matrix::{
    basis_vector, fmt_vector, row_echelon_basis, vec_add, vec_is_zero, Matrix,
};
use crate::report::{CheckReport, LieError, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<T> {
    dim: usize,
    labels: Vec<String>,
    c: Vec<Vec<Vec<T>>>,
}

impl<T: Scalar> LieAlgebra<T> {
    /// Zero bracket on `dim` generators labeled `e1..en`.
    pub fn abelian(dim: usize) -> Self {
        let labels = (1..=dim).map(|i| format!("e{}", i)).collect();
        Self { dim, labels, c: vec![vec![vec![T::zero(); dim]; dim]; dim] }
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    /// Set `[e_i, e_j]` (and its antisymmetric mirror) to the given vector.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: &[(usize, T)]) {
        assert!(i != j, "bracket of a generator with itself is zero");
        for k in 0..self.dim {
            self.c[i][j][k] = T::zero();
            self.c[j][i][k] = T::zero();
        }
        for (k, v) in value {
            self.c[i][j][*k] = v.clone();
            self.c[j][i][*k] = -v.clone();
        }
    }

    /// Raw access for constructions that build `c` directly.
    pub fn from_structure_constants(labels: Vec<String>, c: Vec<Vec<Vec<T>>>) -> Self {
        let dim = c.len();
        assert_eq!(labels.len(), dim);
        assert!(c.iter().all(|p| p.len() == dim && p.iter().all(|q| q.len() == dim)));
        Self { dim, labels, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[i][j][k]
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<T> {
        self.c[i][j].clone()
    }

    pub fn bracket(&self, x: &[T], y: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
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
                    out[k] = out[k].clone()
                        + x[i].clone() * y[j].clone() * self.c[i][j][k].clone();
                }
            }
        }
        out
    }

    /// Adjoint matrix of `e_i`: column `j` holds `[e_i, e_j]`.
    pub fn ad_basis(&self, i: usize) -> Matrix<T> {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.c[i][j][k].clone())
    }

    pub fn ad(&self, x: &[T]) -> Matrix<T> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if !x[i].is_zero() {
                m = m.add(&self.ad_basis(i).scale(&x[i]));
            }
        }
        m
    }

    /// Antisymmetry and the Jacobi identity, exactly, with witnesses.
    pub fn validate(&self) -> CheckReport {
        let n = self.dim;
        let mut report = CheckReport::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let lhs = self.c[i][j][k].clone();
                    let rhs = -self.c[j][i][k].clone();
                    if lhs != rhs {
                        report.record("antisymmetry", &[i, j, k], &lhs, &rhs);
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = self.bracket(&self.bracket_basis(i, j), &basis_vector(n, k));
                    acc = vec_add(&acc, &self.bracket(&self.bracket_basis(j, k), &basis_vector(n, i)));
                    acc = vec_add(&acc, &self.bracket(&self.bracket_basis(k, i), &basis_vector(n, j)));
                    if !vec_is_zero(&acc) {
                        report.record("jacobi", &[i, j, k], fmt_vector(&acc), "0");
                    }
                }
            }
        }
        report
    }

    /// Leibniz identity `D[X,Y] = [DX,Y] + [X,DY]` on basis pairs.
    pub fn is_derivation(&self, d: &Matrix<T>) -> Result<CheckReport> {
        if d.rows() != self.dim || d.cols() != self.dim {
            return Err(LieError::Dimension {
                what: "derivation candidate".into(),
                expected: self.dim,
                found: d.rows(),
            });
        }
        let n = self.dim;
        let mut report = CheckReport::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.apply(&self.bracket_basis(i, j));
                let rhs = vec_add(
                    &self.bracket(&d.col(i), &basis_vector(n, j)),
                    &self.bracket(&basis_vector(n, i), &d.col(j)),
                );
                if lhs != rhs {
                    report.record("derivation", &[i, j], fmt_vector(&lhs), fmt_vector(&rhs));
                }
            }
        }
        Ok(report)
    }

    /// `ℝ ⋉_D 𝔤`: adjoin a generator `E` (last index, label "E") with
    /// `[E, e_i] = D e_i`. Rejects non-derivations with their report.
    pub fn extend_by_derivation(&self, d: &Matrix<T>) -> Result<LieAlgebra<T>> {
        let report = self.is_derivation(d)?;
        if !report.pass() {
            return Err(LieError::Rejected { op: "is_derivation", report });
        }
        let n = self.dim;
        let mut labels = self.labels.clone();
        labels.push("E".to_string());
        let mut c = vec![vec![vec![T::zero(); n + 1]; n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.c[i][j][k].clone();
                }
            }
        }
        for i in 0..n {
            for k in 0..n {
                c[n][i][k] = d.get(k, i).clone();
                c[i][n][k] = -d.get(k, i).clone();
            }
        }
        Ok(LieAlgebra { dim: n + 1, labels, c })
    }

    /// `𝔤 ⋉ ℝᵐ` with the abelian factor appended: `[e_i, f_j] = parts[i]·f_j`,
    /// `[f, f] = 0`. Requires `e_i ↦ parts[i]` to be a homomorphism into
    /// `𝔤𝔩(ℝᵐ)`; rejected with the witness pair otherwise.
    pub fn semidirect_abelian(&self, parts: &[Matrix<T>]) -> Result<LieAlgebra<T>> {
        let n = self.dim;
        if parts.len() != n {
            return Err(LieError::Dimension {
                what: "one linear part per generator".into(),
                expected: n,
                found: parts.len(),
            });
        }
        let m = if n == 0 { 0 } else { parts[0].rows() };
        for p in parts {
            if !p.is_square() || p.rows() != m {
                return Err(LieError::Dimension {
                    what: "linear part".into(),
                    expected: m,
                    found: p.rows(),
                });
            }
        }
        let mut report = CheckReport::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut expect = Matrix::zeros(m, m);
                for k in 0..n {
                    expect = expect.add(&parts[k].scale(&self.c[i][j][k]));
                }
                let got = parts[i].commutator(&parts[j]);
                if got != expect {
                    report.record("linear_parts_homomorphism", &[i, j], "commutator", "bracket image");
                }
            }
        }
        if !report.pass() {
            return Err(LieError::Rejected { op: "semidirect_abelian", report });
        }
        let dim = n + m;
        let mut labels = self.labels.clone();
        labels.extend((1..=m).map(|i| format!("f{}", i)));
        let mut c = vec![vec![vec![T::zero(); dim]; dim]; dim];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.c[i][j][k].clone();
                }
            }
        }
        for i in 0..n {
            for j in 0..m {
                for k in 0..m {
                    c[i][n + j][n + k] = parts[i].get(k, j).clone();
                    c[n + j][i][n + k] = -parts[i].get(k, j).clone();
                }
            }
        }
        Ok(LieAlgebra { dim, labels, c })
    }

    /// Full semidirect product `𝔣 ⋉_π 𝔪` with the acting factor first.
    /// `pi[i]` is the derivation of `𝔪` attached to the i-th generator of
    /// `𝔣`; both the derivation property and `π`-homomorphy are checked.
    pub fn semidirect_product(&self, module: &LieAlgebra<T>, pi: &[Matrix<T>]) -> Result<LieAlgebra<T>> {
        let (n, m) = (self.dim, module.dim);
        if pi.len() != n {
            return Err(LieError::Dimension {
                what: "one action matrix per generator".into(),
                expected: n,
                found: pi.len(),
            });
        }
        let mut report = CheckReport::new();
        for (i, p) in pi.iter().enumerate() {
            let der = module.is_derivation(p)?;
            if !der.pass() {
                report.merge(&format!("action[{}]", i + 1), der);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut expect = Matrix::zeros(m, m);
                for k in 0..n {
                    expect = expect.add(&pi[k].scale(&self.c[i][j][k]));
                }
                if pi[i].commutator(&pi[j]) != expect {
                    report.record("action_homomorphism", &[i, j], "commutator", "bracket image");
                }
            }
        }
        if !report.pass() {
            return Err(LieError::Rejected { op: "semidirect_product", report });
        }
        let dim = n + m;
        let mut labels = self.labels.clone();
        labels.extend(module.labels.iter().cloned());
        let mut c = vec![vec![vec![T::zero(); dim]; dim]; dim];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.c[i][j][k].clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    c[n + i][n + j][n + k] = module.c[i][j][k].clone();
                }
            }
        }
        for i in 0..n {
            for j in 0..m {
                for k in 0..m {
                    c[i][n + j][n + k] = pi[i].get(k, j).clone();
                    c[n + j][i][n + k] = -pi[i].get(k, j).clone();
                }
            }
        }
        Ok(LieAlgebra { dim, labels, c })
    }

    pub fn direct_sum(&self, other: &LieAlgebra<T>) -> LieAlgebra<T> {
        let zero_parts: Vec<Matrix<T>> = (0..self.dim).map(|_| Matrix::zeros(other.dim, other.dim)).collect();
        let mut out = self
            .semidirect_product(other, &zero_parts)
            .expect("zero action is always valid");
        out.labels = self
            .labels
            .iter()
            .cloned()
            .chain(other.labels.iter().cloned())
            .collect();
        out
    }

    /// Restrict to the span of the listed basis indices. Errors if the span
    /// is not closed under the bracket.
    pub fn restrict(&self, keep: &[usize]) -> Result<LieAlgebra<T>> {
        let m = keep.len();
        let pos: std::collections::BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut c = vec![vec![vec![T::zero(); m]; m]; m];
        for a in 0..m {
            for b in 0..m {
                let v = self.bracket_basis(keep[a], keep[b]);
                for (k, coeff) in v.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    match pos.get(&k) {
                        Some(&t) => c[a][b][t] = coeff.clone(),
                        None => {
                            return Err(LieError::Structure {
                                what: format!(
                                    "span of selected basis is not a subalgebra: [{},{}] leaves it",
                                    keep[a] + 1,
                                    keep[b] + 1
                                ),
                            })
                        }
                    }
                }
            }
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(LieAlgebra { dim: m, labels, c })
    }

    /// Transport the bracket through an invertible map: the new algebra has
    /// `[x, y]' = P⁻¹ [Px, Py]`. Used for explicit isomorphism checks.
    pub fn transport(&self, p: &Matrix<T>) -> Result<LieAlgebra<T>> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(LieError::Dimension { what: "transport map".into(), expected: n, found: p.rows() });
        }
        let inv = p.inverse().ok_or(LieError::Structure { what: "transport map is singular".into() })?;
        let mut c = vec![vec![vec![T::zero(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                let v = inv.apply(&self.bracket(&p.col(a), &p.col(b)));
                c[a][b] = v;
            }
        }
        Ok(LieAlgebra { dim: n, labels: self.labels.clone(), c })
    }

    /// Basis of `[span A, span B]` in row echelon form.
    pub fn bracket_span(&self, a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
        let mut products = Vec::new();
        for x in a {
            for y in b {
                let v = self.bracket(x, y);
                if !vec_is_zero(&v) {
                    products.push(v);
                }
            }
        }
        row_echelon_basis(&products)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    pub(crate) fn heisenberg() -> LieAlgebra<Rat> {
        let mut h = LieAlgebra::abelian(3);
        h.set_bracket(0, 1, &[(2, int(1))]);
        h
    }

    #[test]
    fn heisenberg_validates() {
        assert!(heisenberg().validate().pass());
        assert!(LieAlgebra::<Rat>::abelian(3).validate().pass());
    }

    #[test]
    fn broken_antisymmetry_is_witnessed() {
        let mut bad = heisenberg();
        bad.c[1][0][2] = int(1); // should be -1
        let report = bad.validate();
        assert!(!report.pass());
        assert_eq!(report.violations[0].identity, "antisymmetry");
        assert_eq!(report.violations[0].witness, vec![1, 2, 3]);
    }

    #[test]
    fn broken_jacobi_is_witnessed() {
        // [e1,e2]=e3, [e1,e3]=e1 violates Jacobi on (1,2,3)
        let mut bad = LieAlgebra::abelian(3);
        bad.set_bracket(0, 1, &[(2, int(1))]);
        bad.set_bracket(0, 2, &[(0, int(1))]);
        let report = bad.validate();
        assert!(report.violations.iter().any(|v| v.identity == "jacobi"));
    }

    #[test]
    fn ad_is_a_derivation() {
        let su2 = {
            let mut a = LieAlgebra::abelian(3);
            a.set_bracket(0, 1, &[(2, int(1))]);
            a.set_bracket(1, 2, &[(0, int(1))]);
            a.set_bracket(2, 0, &[(1, int(1))]);
            a
        };
        for i in 0..3 {
            assert!(su2.is_derivation(&su2.ad_basis(i)).unwrap().pass());
        }
        // diag(1,0,0) is not a derivation of su2; witness (2,3)
        let d = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(0), int(0)],
            vec![int(0), int(0), int(0)],
        ]);
        let report = su2.is_derivation(&d).unwrap();
        assert!(!report.pass());
        assert!(report.violations.iter().any(|v| v.witness == vec![2, 3]));
    }

    #[test]
    fn heisenberg_scaling_derivation() {
        let h = heisenberg();
        let d = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(2)],
        ]);
        assert!(h.is_derivation(&d).unwrap().pass());
    }

    #[test]
    fn extend_by_derivation_builds_aff_r() {
        // abelian(1) extended by D = (1): [E, X] = X
        let line = LieAlgebra::<Rat>::abelian(1);
        let d = Matrix::from_rows(vec![vec![int(1)]]);
        let aff = line.extend_by_derivation(&d).unwrap();
        assert_eq!(aff.dim(), 2);
        assert!(aff.validate().pass());
        assert_eq!(aff.bracket_basis(1, 0), vec![int(1), int(0)]);
    }

    #[test]
    fn extend_rejects_non_derivation() {
        let su2 = {
            let mut a = LieAlgebra::abelian(3);
            a.set_bracket(0, 1, &[(2, int(1))]);
            a.set_bracket(1, 2, &[(0, int(1))]);
            a.set_bracket(2, 0, &[(1, int(1))]);
            a
        };
        let d = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(0), int(0)],
            vec![int(0), int(0), int(0)],
        ]);
        match su2.extend_by_derivation(&d) {
            Err(LieError::Rejected { op: "is_derivation", .. }) => {}
            other => panic!("expected rejection, got {:?}", other.map(|a| a.dim())),
        }
    }

    #[test]
    fn rotation_extension_matches_euclidean_algebra() {
        // abelian(2) extended by the rotation generator is e(2) after
        // moving E to the front
        let plane = LieAlgebra::<Rat>::abelian(2);
        let rot = Matrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        let ext = plane.extend_by_derivation(&rot).unwrap();
        assert!(ext.validate().pass());
        // permutation (E, e1, e2)
        let p = Matrix::from_rows(vec![
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
            vec![int(1), int(0), int(0)],
        ]);
        let moved = ext.transport(&p).unwrap();
        let mut e2 = LieAlgebra::abelian(3);
        e2.set_bracket(0, 1, &[(2, int(1))]);
        e2.set_bracket(0, 2, &[(1, int(-1))]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(moved.bracket_basis(i, j), e2.bracket_basis(i, j));
            }
        }
    }

    #[test]
    fn semidirect_abelian_rotation() {
        let so2 = LieAlgebra::<Rat>::abelian(1);
        let rot = Matrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        let e2 = so2.semidirect_abelian(&[rot]).unwrap();
        assert!(e2.validate().pass());
        assert_eq!(e2.bracket_basis(0, 1), vec![int(0), int(0), int(1)]);
        assert_eq!(e2.bracket_basis(0, 2), vec![int(0), int(-1), int(0)]);
    }

    #[test]
    fn semidirect_abelian_rejects_non_homomorphism() {
        // su2 with all parts = Id is not a homomorphism: [Id,Id]=0 but
        // the bracket image is Id
        let su2 = {
            let mut a = LieAlgebra::abelian(3);
            a.set_bracket(0, 1, &[(2, int(1))]);
            a.set_bracket(1, 2, &[(0, int(1))]);
            a.set_bracket(2, 0, &[(1, int(1))]);
            a
        };
        let parts = vec![Matrix::identity(2), Matrix::identity(2), Matrix::identity(2)];
        assert!(matches!(
            su2.semidirect_abelian(&parts),
            Err(LieError::Rejected { op: "semidirect_abelian", .. })
        ));
    }

    #[test]
    fn restrict_detects_non_subalgebra() {
        let h = heisenberg();
        assert!(h.restrict(&[0, 2]).is_ok());
        assert!(h.restrict(&[0, 1]).is_err()); // [e1,e2]=e3 leaves the span
    }
}
