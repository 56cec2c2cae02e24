//! Classical algebraic invariants: derived and lower central series,
//! solvability, nilpotency, unimodularity, the Killing form.

use crate::algebra::LieAlgebra;
use crate::matrix::{basis_vector, Matrix};
use crate::report::{LieError, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct StructureInvariants<T> {
    /// Dimensions of `𝔤 ⊇ [𝔤,𝔤] ⊇ [[𝔤,𝔤],[𝔤,𝔤]] ⊇ …` until stabilization.
    pub derived_dims: Vec<usize>,
    /// Dimensions of `𝔤 ⊇ [𝔤,𝔤] ⊇ [𝔤,[𝔤,𝔤]] ⊇ …` until stabilization.
    pub lower_central_dims: Vec<usize>,
    pub solvable: bool,
    pub nilpotent: bool,
    /// `tr(ad_X) = 0` for every basis element.
    pub unimodular: bool,
    pub killing: Matrix<T>,
    /// Inertia (positive, negative, zero) of the Killing form.
    pub killing_signature: (usize, usize, usize),
    /// Killing form nondegenerate.
    pub semisimple: bool,
}

pub fn structure_invariants<T: Scalar>(algebra: &LieAlgebra<T>) -> Result<StructureInvariants<T>> {
    let validation = algebra.validate();
    if !validation.pass() {
        return Err(LieError::Rejected { op: "validate_lie", report: validation });
    }
    let n = algebra.dim();
    let full: Vec<Vec<T>> = (0..n).map(|i| basis_vector(n, i)).collect();

    let derived_dims = series_dims(algebra, &full, |alg, prev| alg.bracket_span(prev, prev));
    let lower_central_dims = series_dims(algebra, &full, |alg, prev| alg.bracket_span(&full, prev));
    let solvable = *derived_dims.last().unwrap() == 0;
    let nilpotent = *lower_central_dims.last().unwrap() == 0;

    let unimodular = (0..n).all(|i| algebra.ad_basis(i).trace().is_zero());

    let ads: Vec<Matrix<T>> = (0..n).map(|i| algebra.ad_basis(i)).collect();
    let killing = Matrix::from_fn(n, n, |i, j| ads[i].matmul(&ads[j]).trace());
    let semisimple = !killing.det().is_zero();
    let killing_signature = killing.signature();

    Ok(StructureInvariants {
        derived_dims,
        lower_central_dims,
        solvable,
        nilpotent,
        unimodular,
        killing,
        killing_signature,
        semisimple,
    })
}

fn series_dims<T: Scalar>(
    algebra: &LieAlgebra<T>,
    full: &[Vec<T>],
    step: impl Fn(&LieAlgebra<T>, &[Vec<T>]) -> Vec<Vec<T>>,
) -> Vec<usize> {
    let mut dims = vec![full.len()];
    let mut current = full.to_vec();
    loop {
        let next = step(algebra, &current);
        if next.len() == *dims.last().unwrap() {
            break;
        }
        dims.push(next.len());
        if next.is_empty() {
            break;
        }
        current = next;
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    fn su2() -> LieAlgebra<Rat> {
        let mut a = LieAlgebra::abelian(3);
        a.set_bracket(0, 1, &[(2, int(1))]);
        a.set_bracket(1, 2, &[(0, int(1))]);
        a.set_bracket(2, 0, &[(1, int(1))]);
        a
    }

    #[test]
    fn heisenberg_is_nilpotent_unimodular() {
        let mut h = LieAlgebra::<Rat>::abelian(3);
        h.set_bracket(0, 1, &[(2, int(1))]);
        let inv = structure_invariants(&h).unwrap();
        assert_eq!(inv.lower_central_dims, vec![3, 1, 0]);
        assert!(inv.nilpotent && inv.solvable && inv.unimodular);
        assert!(!inv.semisimple);
    }

    #[test]
    fn su2_is_semisimple_compact_type() {
        let inv = structure_invariants(&su2()).unwrap();
        assert!(inv.semisimple);
        assert!(!inv.solvable && !inv.nilpotent);
        assert!(inv.unimodular);
        // Killing form is −2·Id in this basis
        assert_eq!(inv.killing, Matrix::identity(3).scale(&int(-2)));
        assert_eq!(inv.killing_signature, (0, 3, 0));
    }

    #[test]
    fn euclidean_algebra_solvable_not_nilpotent() {
        let mut e2 = LieAlgebra::<Rat>::abelian(3);
        e2.set_bracket(0, 1, &[(2, int(1))]);
        e2.set_bracket(0, 2, &[(1, int(-1))]);
        let inv = structure_invariants(&e2).unwrap();
        assert!(inv.solvable && !inv.nilpotent && inv.unimodular && !inv.semisimple);
        // lower central series stabilizes at the translation plane
        assert_eq!(inv.lower_central_dims, vec![3, 2]);
    }

    #[test]
    fn invalid_algebra_rejected() {
        let mut bad = LieAlgebra::<Rat>::abelian(3);
        bad.set_bracket(0, 1, &[(2, int(1))]);
        bad.set_bracket(0, 2, &[(0, int(1))]);
        assert!(matches!(
            structure_invariants(&bad),
            Err(LieError::Rejected { op: "validate_lie", .. })
        ));
    }
}
