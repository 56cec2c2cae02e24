//! Alternating forms with exact coefficients and the bracket-induced
//! (Chevalley–Eilenberg) differential on left-invariant forms.
//!
//! Storage is sparse: strictly increasing index tuples to nonzero
//! coefficients, with sign normalization on insertion.
//!
//! Differential convention, fixed once for the whole crate:
//!
//! ```text
//! (dα)(X₀,…,X_k) = Σ_{i<j} (−1)^{i+j} α([X_i,X_j], X₀,…,X̂_i,…,X̂_j,…,X_k)
//! ```
//!
//! so on 1-forms `(dα)(X,Y) = −α([X,Y])`. Every sign in the contact and
//! Hessian modules is calibrated against this choice.

use crate::algebra::LieAlgebra;
use crate::matrix::Matrix;
use crate::report::{LieError, Result};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct AltForm<T> {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, T>,
}

/// Sort `idx` in place, returning the permutation sign, or `None` when an
/// index repeats (the term dies).
fn sort_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(negative)
}

impl<T: Scalar> AltForm<T> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self { dim, degree, coeffs: BTreeMap::new() }
    }

    /// Degree-0 form (a constant).
    pub fn constant(dim: usize, value: T) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(&[], value);
        f
    }

    /// The dual basis covector `e^i` (0-based `i`).
    pub fn basis_covector(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim, 1);
        f.add_term(&[i], T::one());
        f
    }

    pub fn from_terms(dim: usize, degree: usize, terms: &[(&[usize], T)]) -> Self {
        let mut f = Self::zero(dim, degree);
        for (idx, v) in terms {
            f.add_term(idx, v.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &T)> {
        self.coeffs.iter()
    }

    /// Accumulate `v` on the (possibly unsorted) tuple `idx`, normalizing
    /// order and sign. Terms with repeated indices vanish.
    pub fn add_term(&mut self, idx: &[usize], v: T) {
        assert_eq!(idx.len(), self.degree, "tuple length must match degree");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        if v.is_zero() {
            return;
        }
        let mut key = idx.to_vec();
        let Some(negative) = sort_sign(&mut key) else {
            return;
        };
        let signed = if negative { -v } else { v };
        let entry = self.coeffs.entry(key.clone()).or_insert_with(T::zero);
        *entry = entry.clone() + signed;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// Coefficient on a strictly increasing tuple.
    pub fn coefficient(&self, idx: &[usize]) -> T {
        self.coeffs.get(idx).cloned().unwrap_or_else(T::zero)
    }

    /// Evaluate on basis vectors in any order (0 on repeats).
    pub fn eval_basis(&self, idx: &[usize]) -> T {
        assert_eq!(idx.len(), self.degree);
        let mut key = idx.to_vec();
        match sort_sign(&mut key) {
            None => T::zero(),
            Some(negative) => {
                let v = self.coefficient(&key);
                if negative { -v } else { v }
            }
        }
    }

    /// Full multilinear evaluation on coordinate vectors.
    pub fn eval_vectors(&self, args: &[&[T]]) -> T {
        assert_eq!(args.len(), self.degree);
        let mut acc = T::zero();
        for (idx, coeff) in &self.coeffs {
            // det of the k×k minor picking rows `idx` from the arguments
            let minor = Matrix::from_fn(idx.len(), idx.len(), |r, c| args[r][idx[c]].clone());
            acc = acc + coeff.clone() * minor.det();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        let mut out = self.clone();
        for (idx, v) in &other.coeffs {
            out.add_term(idx, v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), -v.clone())).collect();
        Self { dim: self.dim, degree: self.degree, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        if s.is_zero() {
            return out;
        }
        for (idx, v) in &self.coeffs {
            out.coeffs.insert(idx.clone(), s.clone() * v.clone());
        }
        out
    }

    /// Graded-commutative associative wedge product.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (i1, v1) in &self.coeffs {
            for (i2, v2) in &other.coeffs {
                let merged: Vec<usize> = i1.iter().chain(i2.iter()).copied().collect();
                out.add_term(&merged, v1.clone() * v2.clone());
            }
        }
        out
    }

    pub fn wedge_pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(self.dim, T::one());
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    /// Coefficient on the full tuple `(0,…,dim−1)`; zero unless top degree.
    pub fn top_coefficient(&self) -> T {
        if self.degree != self.dim {
            return T::zero();
        }
        let full: Vec<usize> = (0..self.dim).collect();
        self.coefficient(&full)
    }

    /// Differential of a left-invariant form, determined by the bracket.
    pub fn ce_d(&self, algebra: &LieAlgebra<T>) -> Result<Self> {
        let n = self.dim;
        if algebra.dim() != n {
            return Err(LieError::Dimension { what: "form over algebra".into(), expected: algebra.dim(), found: n });
        }
        if self.degree >= n {
            return Err(LieError::Degree {
                what: format!("d of a degree-{} form on a {}-dimensional algebra", self.degree, n),
            });
        }
        let k = self.degree;
        let mut out = Self::zero(n, k + 1);
        let mut tuple: Vec<usize> = (0..=k).collect();
        loop {
            // evaluate the alternating sum on the increasing tuple
            let mut val = T::zero();
            for a in 0..=k {
                for b in a + 1..=k {
                    let bracket = algebra.bracket_basis(tuple[a], tuple[b]);
                    let rest: Vec<usize> = tuple
                        .iter()
                        .enumerate()
                        .filter(|(p, _)| *p != a && *p != b)
                        .map(|(_, &i)| i)
                        .collect();
                    let mut term = T::zero();
                    for (m, coeff) in bracket.iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut slots = Vec::with_capacity(k);
                        slots.push(m);
                        slots.extend_from_slice(&rest);
                        term = term + coeff.clone() * self.eval_basis(&slots);
                    }
                    if (a + b) % 2 == 1 {
                        term = -term;
                    }
                    val = val + term;
                }
            }
            if !val.is_zero() {
                out.add_term(&tuple.clone(), val);
            }
            if !next_increasing(&mut tuple, n) {
                break;
            }
        }
        Ok(out)
    }

    /// Interior product `(ι_X α)(Y₁,…) = α(X, Y₁,…)`.
    pub fn interior(&self, x: &[T]) -> Result<Self> {
        if self.degree == 0 {
            return Err(LieError::Degree { what: "interior product of a 0-form".into() });
        }
        assert_eq!(x.len(), self.dim);
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (idx, coeff) in &self.coeffs {
            for (p, &i) in idx.iter().enumerate() {
                if x[i].is_zero() {
                    continue;
                }
                let rest: Vec<usize> =
                    idx.iter().enumerate().filter(|(q, _)| *q != p).map(|(_, &r)| r).collect();
                let mut v = x[i].clone() * coeff.clone();
                if p % 2 == 1 {
                    v = -v;
                }
                out.add_term(&rest, v);
            }
        }
        Ok(out)
    }

    /// Derivation action `(D*α)(X₁,…,X_k) = Σ_i α(X₁,…,DX_i,…,X_k)`.
    pub fn pull_derivation(&self, d: &Matrix<T>) -> Self {
        assert_eq!(d.rows(), self.dim);
        assert_eq!(d.cols(), self.dim);
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, coeff) in &self.coeffs {
            for slot in 0..idx.len() {
                for m in 0..self.dim {
                    let f = d.get(m, idx[slot]);
                    if f.is_zero() {
                        continue;
                    }
                    let mut replaced = idx.clone();
                    replaced[slot] = m;
                    out.add_term(&replaced, f.clone() * coeff.clone());
                }
            }
        }
        out
    }

    /// Pullback along a linear map: `(P*α)(v₁,…) = α(Pv₁,…)`.
    pub fn pullback(&self, p: &Matrix<T>) -> Self {
        assert_eq!(p.rows(), self.dim);
        let new_dim = p.cols();
        let mut out = Self::zero(new_dim, self.degree);
        let mut tuple: Vec<usize> = (0..self.degree).collect();
        if self.degree == 0 {
            return Self { dim: new_dim, degree: 0, coeffs: self.coeffs.clone() };
        }
        if self.degree > new_dim {
            return out;
        }
        loop {
            let cols: Vec<Vec<T>> = tuple.iter().map(|&j| p.col(j)).collect();
            let args: Vec<&[T]> = cols.iter().map(|c| c.as_slice()).collect();
            let v = self.eval_vectors(&args);
            if !v.is_zero() {
                out.add_term(&tuple.clone(), v);
            }
            if !next_increasing(&mut tuple, new_dim) {
                break;
            }
        }
        out
    }

    /// Restriction to the span of the kept basis indices (reindexed).
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut out = Self::zero(keep.len(), self.degree);
        'term: for (idx, v) in &self.coeffs {
            let mut mapped = Vec::with_capacity(idx.len());
            for i in idx {
                match pos.get(i) {
                    Some(&a) => mapped.push(a),
                    None => continue 'term,
                }
            }
            out.add_term(&mapped, v.clone());
        }
        out
    }

    /// Reinterpret over a larger algebra with the same leading indices.
    pub fn extend(&self, new_dim: usize) -> Self {
        assert!(new_dim >= self.dim);
        Self { dim: new_dim, degree: self.degree, coeffs: self.coeffs.clone() }
    }
}

/// Advance a strictly increasing tuple; false when exhausted.
fn next_increasing(tuple: &mut [usize], n: usize) -> bool {
    let k = tuple.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if tuple[i] < n - (k - i) {
            tuple[i] += 1;
            for j in i + 1..k {
                tuple[j] = tuple[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};
    use num_traits::Zero;

    fn heisenberg() -> LieAlgebra<Rat> {
        let mut h = LieAlgebra::abelian(3);
        h.set_bracket(0, 1, &[(2, int(1))]);
        h
    }

    fn e2_algebra() -> LieAlgebra<Rat> {
        let mut a = LieAlgebra::abelian(3);
        a.set_bracket(0, 1, &[(2, int(1))]);
        a.set_bracket(0, 2, &[(1, int(-1))]);
        a
    }

    #[test]
    fn sign_normalization() {
        let mut f = AltForm::<Rat>::zero(3, 2);
        f.add_term(&[1, 0], int(1));
        assert_eq!(f.coefficient(&[0, 1]), int(-1));
        f.add_term(&[2, 2], int(5));
        assert_eq!(f.coefficient(&[0, 1]), int(-1)); // repeated index dies
    }

    #[test]
    fn d_of_dual_covector_on_heisenberg() {
        // [e1,e2]=e3: d e³ = −e¹∧e²
        let h = heisenberg();
        let e3 = AltForm::basis_covector(3, 2);
        let d = e3.ce_d(&h).unwrap();
        assert_eq!(d, AltForm::from_terms(3, 2, &[(&[0, 1][..], int(-1))]));
    }

    #[test]
    fn d_on_euclidean_algebra() {
        // [e1,e2]=e3, [e1,e3]=−e2: d e² = e¹∧e³
        let a = e2_algebra();
        let e2 = AltForm::basis_covector(3, 1);
        let d = e2.ce_d(&a).unwrap();
        assert_eq!(d, AltForm::from_terms(3, 2, &[(&[0, 2][..], int(1))]));
    }

    #[test]
    fn d_vanishes_on_abelian() {
        let a = LieAlgebra::<Rat>::abelian(4);
        let f = AltForm::from_terms(4, 2, &[(&[0, 1][..], int(3)), (&[1, 3][..], int(-2))]);
        assert!(f.ce_d(&a).unwrap().is_zero());
    }

    #[test]
    fn d_rejects_top_degree() {
        let h = heisenberg();
        let top = AltForm::from_terms(3, 3, &[(&[0, 1, 2][..], int(1))]);
        assert!(matches!(top.ce_d(&h), Err(LieError::Degree { .. })));
    }

    #[test]
    fn wedge_basic() {
        let e1 = AltForm::<Rat>::basis_covector(3, 0);
        let e2 = AltForm::<Rat>::basis_covector(3, 1);
        let w = e1.wedge(&e2);
        assert_eq!(w.coefficient(&[0, 1]), int(1));
        assert!(e1.wedge(&e1).is_zero());
        // h3: e³ ∧ d e³ has coefficient −1 on (1,2,3)
        let h = heisenberg();
        let e3 = AltForm::basis_covector(3, 2);
        let w = e3.wedge(&e3.ce_d(&h).unwrap());
        assert_eq!(w.coefficient(&[0, 1, 2]), int(-1));
    }

    #[test]
    fn interior_examples() {
        let w = AltForm::<Rat>::from_terms(3, 2, &[(&[0, 1][..], int(1))]);
        let i1 = w.interior(&[int(1), int(0), int(0)]).unwrap();
        assert_eq!(i1, AltForm::basis_covector(3, 1));
        let i3 = w.interior(&[int(0), int(0), int(1)]).unwrap();
        assert!(i3.is_zero());
        let i12 = w.interior(&[int(1), int(1), int(0)]).unwrap();
        let expect = AltForm::basis_covector(3, 1).sub(&AltForm::basis_covector(3, 0));
        assert_eq!(i12, expect);
        assert!(AltForm::<Rat>::constant(3, int(1)).interior(&[int(1), int(0), int(0)]).is_err());
    }

    #[test]
    fn pull_derivation_examples() {
        let w = AltForm::<Rat>::from_terms(3, 2, &[(&[0, 1][..], int(1))]);
        assert_eq!(w.pull_derivation(&Matrix::identity(3)), w.scale(&int(2)));
        assert!(w.pull_derivation(&Matrix::zeros(3, 3)).is_zero());
        let d = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(2)],
        ]);
        assert_eq!(w.pull_derivation(&d), w.scale(&int(2)));
    }

    #[test]
    fn eval_vectors_is_alternating() {
        let w = AltForm::<Rat>::from_terms(3, 2, &[(&[0, 1][..], int(2)), (&[1, 2][..], int(1))]);
        let x = [int(1), int(2), int(0)];
        let y = [int(0), int(1), int(3)];
        let xy = w.eval_vectors(&[&x, &y]);
        let yx = w.eval_vectors(&[&y, &x]);
        assert_eq!(xy, -yx);
        // explicit: 2(x₁y₂−x₂y₁) + (x₂y₃−x₃y₂) = 2(1·1−2·0) + (2·3−0·1) = 8
        assert_eq!(xy, int(8));
    }

    #[test]
    fn restrict_and_extend() {
        let w = AltForm::<Rat>::from_terms(4, 2, &[(&[0, 1][..], int(1)), (&[0, 3][..], int(5))]);
        let r = w.restrict(&[0, 1, 2]);
        assert_eq!(r.coefficient(&[0, 1]), int(1));
        assert_eq!(r.dim(), 3);
        assert!(r.coefficient(&[0, 2]).is_zero());
        let e = r.extend(5);
        assert_eq!(e.dim(), 5);
        assert_eq!(e.coefficient(&[0, 1]), int(1));
    }
}
