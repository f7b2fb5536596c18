//! Truncated quantum torus series: refined DT generating series, quantum
//! dilogarithms, Harder-Narasimhan factorization and the mutation
//! wall-crossing check.

mod dt;
mod hn;
mod region;
mod series;
mod wallcross;

pub use dt::{dt_series, refined_dt};
pub use hn::{
    enumerate_hn_types, hn_factorize, hn_reconstruct, ray_compare, rays_in_order, CentralCharge,
    Ray,
};
pub use region::Region;
pub use series::{dilog, dilog_coefficient, skew_matrix, CoeffJson, TorusSeries};
pub use wallcross::{
    wallcross_check, wallcross_check_with, DilogSide, WallcrossEntry, WallcrossReport,
};

use thiserror::Error;

use crate::ffcount::CountError;
use crate::mutation::MutationError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QTorusError {
    #[error("zero dimension vector")]
    ZeroVector,
    #[error("constant term is not 1")]
    NonUnitConstantTerm,
    #[error("bad central charge: {0}")]
    BadCharge(String),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Mutation(#[from] MutationError),
}
