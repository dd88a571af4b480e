//! Numerical kernel: complex scalars, small dense matrices, combinatorial
//! enumeration, and a seeded RNG.
//!
//! Everything downstream (parameters, polynomial expansions, operator
//! matrices, the spherical layer) is built on this module. All values are
//! immutable after construction and all operations are pure.

mod combin;
mod matrix;
mod rng;

pub use combin::{
    binomial, enumerate_compositions, enumerate_subsets, factorial, multi_factorial, IndexSubset,
};
pub use matrix::{min_singular_value, orthonormal_complete, symmetric_eigenvalues, Matrix};
pub use rng::SplitMix64;

/// The ground field: complex double precision.
pub type Scalar = num_complex::Complex64;

/// Complex one.
pub const ONE: Scalar = Scalar::new(1.0, 0.0);
/// Complex zero.
pub const ZERO: Scalar = Scalar::new(0.0, 0.0);

/// Real number as a scalar.
pub fn re(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

/// Integer power by repeated squaring. Keeps integer powers exact-ish and
/// reproducible, unlike `powc`.
pub fn powi(base: Scalar, exp: u32) -> Scalar {
    let mut acc = ONE;
    let mut b = base;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b *= b;
        e >>= 1;
    }
    acc
}

/// Principal k-th root: positive real root of the modulus, argument in
/// (−π/k, π/k].
pub fn principal_root(z: Scalar, k: u32) -> Scalar {
    assert!(k > 0);
    if k == 1 {
        return z;
    }
    let r = z.norm().powf(1.0 / k as f64);
    let theta = z.arg() / k as f64;
    Scalar::from_polar(r, theta)
}
