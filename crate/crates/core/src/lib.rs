//! Refined DT invariants of quivers with potential, computed by counting
//! points over finite fields, and an exact check of wall-crossing under mutation.
//!
//! # Examples
//!
//! Series and dilogarithms
//! - `cargo run --example dilogarithm`
//! - `cargo run --example dt_series`
//! - `cargo run --example hn_factorization`
//!
//! Quivers with potential
//! - `cargo run --example cuts_and_dimers`
//! - `cargo run --example mutation`
//! - `cargo run --example module_mutation`
//!
//! Counting
//! - `cargo run --release --example point_counting`
//! - `cargo run --release --example wall_crossing -- 4`

pub mod cli;
pub mod ffcount;
pub mod fixtures;
pub mod mutation;
pub mod qp;
pub mod qseries;
pub mod qtorus;
