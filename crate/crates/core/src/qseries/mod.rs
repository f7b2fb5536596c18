//! Exact scalars: Laurent polynomials and rational functions in `t`, integer
//! polynomials in `q = t^2`, and interpolation.

mod countpoly;
pub mod cyclotomic;
mod interp;
mod laurent;
mod trational;

pub use countpoly::CountPoly;
pub use interp::lagrange_interpolate;
pub use laurent::LaurentPoly;
pub use trational::TRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error("division by zero")]
    DivideByZero,
    #[error("need {needed} distinct sample points, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("interpolated polynomial has non-integer coefficients")]
    NonIntegerCoefficients,
    #[error("sample at {x} disagrees with the interpolant")]
    InconsistentSamples { x: u64 },
}

/// `t^m`, the image of `L^(m/2)`.
pub fn half_lefschetz_power(m: i64) -> TRational {
    TRational::t_pow(m)
}

/// `q -> t^2`.
pub fn embed_count_poly(p: &CountPoly) -> TRational {
    TRational::from_count_poly(p)
}
