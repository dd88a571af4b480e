//! Multivariate super Krawtchouk polynomials.
//!
//! A library for the mixed even/odd Krawtchouk polynomials attached to
//! admissible parameter tuples K = (p, p̃, U) and Λ = (q, q̃, V): their
//! generating-function and determinant evaluators, the gl(m+1|n+1) module
//! machinery that realizes them as transition-matrix entries between two
//! weight bases, the contravariant bilinear form, orthogonality and
//! recurrence identity suites, and a fermionic layer where the pure-odd
//! values become q-weighted evaluations of zonal spherical functions on
//! the oriented Grassmannian, with a determinantal occupation sampler.
//!
//! Module map:
//! - [`numkern`]: complex scalars, dense matrices, determinants and
//!   minors, orthonormal completion, combinatorial enumeration, seeded RNG.
//! - [`params`]: admissible tuples, validation, normalizers θ, θ̃, κ, κ̃
//!   and the matrices R, S, the duality involution, and the file codec.
//! - [`superpoly`]: the supersymmetric ring in commuting and anticommuting
//!   variables, normal-order sign bookkeeping, and the tilde change of
//!   variables.
//! - [`glaction`]: the generator action on the degree-D module in both
//!   frames, the antiautomorphism φ, the bilinear form, contravariance and
//!   Cartan-swap checkers.
//! - [`krawtchouk`]: evaluators for the even, odd and mixed polynomials,
//!   transition matrices, orthogonality, recurrence and wedge-eigenvector
//!   suites.
//! - [`spherical`]: SO(n+1) frames, coset representatives, the zonal
//!   function φ_d, occupation probabilities and seeded sampling, and the
//!   zonal consistency check.
//! - [`suites`]: named verification sweeps shared by the CLI and the
//!   acceptance tests.
//!
//! Everything is pure and immutable after construction; residual checkers
//! return values (max residual plus argmax witness), never panics.

pub mod error;
pub mod glaction;
pub mod krawtchouk;
pub mod numkern;
pub mod params;
pub mod report;
pub mod spherical;
pub mod suites;
pub mod superpoly;
pub mod tol;

pub use error::{KrawError, Result};
pub use report::Residual;
