//! Valuation Hilbert modules of analytic functions at finite truncation degree.
//!
//! The crate models monomial-orthogonal function spaces (Hardy spaces of the
//! polydisk, ball and polyball; Bergman spaces of the ball and radially
//! weighted Bergman spaces of the disk) truncated to total degree `D`, and
//! checks the abstract Beurling criterion on finite-dimensional subspaces:
//! a closed subspace `V` is invariant under multiplication by the ideal `R1`
//! of polynomials vanishing at the origin if and only if its valuation
//! homogeneous decomposition is R1-inner and has the full projection property.
//!
//! Multiplication acts on the quotient `P_n / (monomials of degree > D)`: a
//! product is computed and then truncated to degree `D`. All statements that
//! the checks rely on remain exact identities in this finite module.
//!
//! Two pipelines are provided and never mixed:
//!
//! * a float pipeline ([`subspace`], [`beurling`]) on `nalgebra` matrices in
//!   weight-scaled monomial coordinates, driven by [`Tolerances`];
//! * an exact pipeline ([`oracle`]) over Gaussian rationals with fraction-free
//!   elimination, used as ground truth for small instances.

pub mod acceptance;
pub mod axioms;
pub mod beurling;
pub mod error;
pub mod inner;
pub mod instance;
mod linalg;
pub mod oracle;
pub mod poly;
pub mod presets;
pub mod quadrature;
pub mod random;
pub mod scalar;
pub mod space;
pub mod subspace;

pub use beurling::{
    beurling_reconstruct, beurling_verdict, has_full_projection, is_invariant, is_r1_inner_decomposition,
    is_r1_inner_subspace, minimum_value_index, CheckOutcome, CheckReport, Reconstruction, Verdict, Witness,
};
pub use error::{CheckError, OracleError, ParseError, PolyError, SpaceError, SubspaceError};
pub use poly::{ExactPoly, FloatPoly, MultiIndex, OrderValue, Polynomial};
pub use scalar::{Scalar, C64, QI};
pub use space::{inner_product, kernel_partial_sum, make_space, MomentTable, SpaceKind, SpaceModel};
pub use subspace::{
    decompose_element, homogeneous_decomposition, orthonormalize, project, restricted_projection_lw,
    subspace_series, wandering_subspace, Ambient, Decomposition, Subspace, SubspaceSeries,
};

use serde::{Deserialize, Serialize};

/// Numerical thresholds of the float pipeline.
///
/// The exact pipeline ignores all of them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Singular values below `rank * max(sigma_max, 1)` count as zero.
    pub rank: f64,
    /// Pairwise inner products of basis vectors.
    pub orth: f64,
    /// Least-squares mismatch below which "some `g` exists" in trigger conditions.
    pub trigger: f64,
    /// Relative residual below which a vector counts as a member of a subspace.
    pub membership: f64,
    /// Relative final residual of the constructive reconstruction.
    pub reconstruct: f64,
    /// Absolute agreement between quadrature and moment routes.
    pub quad: f64,
    /// Relative coefficient prune threshold for float polynomials.
    pub prune: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: 1e-9,
            orth: 1e-10,
            trigger: 1e-9,
            membership: 1e-9,
            reconstruct: 1e-8,
            quad: 1e-8,
            prune: 1e-12,
        }
    }
}

impl Tolerances {
    /// Every threshold set to the same value.
    pub fn uniform(tau: f64) -> Self {
        Tolerances {
            rank: tau,
            orth: tau,
            trigger: tau,
            membership: tau,
            reconstruct: tau,
            quad: tau,
            prune: tau,
        }
    }
}
