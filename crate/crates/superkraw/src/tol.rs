//! Comparison tolerances.
//!
//! Every identity in this crate is checked numerically, so equality of
//! scalars is always tolerance-based. The pair (absolute, relative) below is
//! the default used by validation and the CLI; individual verification
//! suites pin their own thresholds as named constants so no magic numbers
//! appear at call sites.

use crate::numkern::Scalar;

/// Absolute/relative tolerance pair for scalar comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    /// `|a - b| <= abs` or `|a - b| <= rel * max(|a|, |b|)`.
    pub fn close(&self, a: Scalar, b: Scalar) -> bool {
        let diff = (a - b).norm();
        diff <= self.abs || diff <= self.rel * a.norm().max(b.norm())
    }

    pub fn close_f(&self, a: f64, b: f64) -> bool {
        let diff = (a - b).abs();
        diff <= self.abs || diff <= self.rel * a.abs().max(b.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(DEFAULT_ABS, DEFAULT_REL)
    }
}

/// Default absolute tolerance.
pub const DEFAULT_ABS: f64 = 1e-12;
/// Default relative tolerance.
pub const DEFAULT_REL: f64 = 1e-9;

/// Coefficients below this magnitude are dropped from sparse polynomials.
/// Distinct from the comparison tolerances above: it only suppresses
/// cancellation dust, never participates in equality decisions.
pub const COEFF_PRUNE: f64 = 1e-15;

// Thresholds pinned by the verification suites.

/// Determinant evaluator vs. independent expansion oracles.
pub const DET_ORACLE: f64 = 1e-12;
/// det(AB) = det(A)det(B), relative.
pub const DET_PRODUCT_REL: f64 = 1e-11;
/// Orthonormal completion: max-norm of O Oᵗ − I.
pub const ORTHONORMAL: f64 = 1e-13;
/// Parameter admissibility residuals from the generator.
pub const RANDOM_PARAMS: f64 = 1e-10;
/// Normalizer identities det R = det S = 1, θθ̃p₀ = κκ̃q₀ = 1.
pub const NORMALIZER: f64 = 1e-12;
/// Concatenated block admissibility identity.
pub const CONCAT_IDENTITY: f64 = 1e-11;
/// Odd evaluator vs. generating-function expansion.
pub const P1_EXPANSION: f64 = 1e-12;
/// Mixed evaluator vs. full generating-function expansion.
pub const P_EXPANSION: f64 = 1e-11;
/// Transition-matrix round trip and entry match.
pub const TRANSITION: f64 = 1e-9;
/// Off-block entries of the transition matrix.
pub const TRANSITION_OFF_BLOCK: f64 = 1e-12;
/// Orthogonality relation residuals.
pub const ORTHOGONALITY: f64 = 1e-9;
/// Contravariance residuals.
pub const CONTRAVARIANCE: f64 = 1e-11;
/// Tilde-basis Gram matrix, relative.
pub const TFORM_REL: f64 = 1e-9;
/// Cauchy-Binet identity on the odd sector.
pub const CAUCHY_BINET: f64 = 1e-11;
/// Recurrence relation residuals.
pub const RECURRENCE: f64 = 1e-10;
/// Recurrence sum-to-tautology residual.
pub const RECURRENCE_TAUTOLOGY: f64 = 1e-12;
/// Wedge eigenvector residuals.
pub const WEDGE_EIGEN: f64 = 1e-10;
/// Smallest singular value of the normalized wedge family.
pub const WEDGE_RANK_SIGMA: f64 = 1e-8;
/// Duality identity residual.
pub const DUALITY: f64 = 1e-11;
/// Cartan-swap identity residuals.
pub const CARTAN_SWAP: f64 = 1e-10;
/// Supercommutator and multicolor identities on operator matrices.
pub const SUPERCOMMUTATOR: f64 = 1e-11;
/// Spherical layer: g ∈ SO(n+1), probability normalization, σ independence.
pub const SPHERICAL: f64 = 1e-12;
/// Zonal consistency residual.
pub const KRZONAL: f64 = 1e-10;
