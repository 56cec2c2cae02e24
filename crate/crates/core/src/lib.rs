//! Exact structure-constant calculus for invariant geometry on Lie algebras.
//!
//! Everything is finite linear algebra over an exact scalar: Lie algebras
//! given by rational structure constants, invariant exterior forms with the
//! bracket-induced differential, flat torsion-free (left-symmetric)
//! connections and their étale affine representations, locally conformally
//! symplectic / Kähler and contact-type data, Hessian and cone metrics with
//! the associated Kähler construction on the tangent algebra, and a
//! floating-point module that spot-checks the log-det cone potentials.
//!
//! The kernel is generic over [`scalar::Scalar`]; the aliases below fix the
//! two instantiations used in practice — exact big rationals for every
//! structure check, `f64` for the numeric cone module.

// index loops mirror the three-index tensor notation throughout
#![allow(clippy::needless_range_loop)]

pub mod scalar;
pub mod report;
pub mod matrix;
pub mod algebra;
pub mod forms;
pub mod invariants;
pub mod affine;
pub mod complexstruct;
pub mod contact;
pub mod hessian;
pub mod catalog;
pub mod numcone;

pub use report::{CheckReport, LieError, Result, Verdict, Violation};
pub use scalar::{int, rat, Rat, Scalar};

/// Concrete aliases over the exact rational scalar.
pub type LieAlgebraQ = algebra::LieAlgebra<Rat>;
pub type MatrixQ = matrix::Matrix<Rat>;
pub type AltFormQ = forms::AltForm<Rat>;
pub type BilinearFormQ = matrix::BilinearForm<Rat>;
pub type ConnectionQ = affine::Connection<Rat>;

/// `f64` instantiation used by the numeric cone module.
pub type MatrixF = matrix::Matrix<f64>;
