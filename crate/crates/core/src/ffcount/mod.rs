//! Point counts of truncated Jacobian module varieties over prime fields,
//! trace-function fibres, group orders and counting polynomials.

mod brute;
mod field;
mod kernel;
mod problem;
mod subspace;

pub use brute::{count_points_brute, trace_counts};
pub use field::{inv_mod, is_prime, primes, reduce_rational, rref_in_place, FpMatrix};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::qp::{Cut, Qp, QpError};
use crate::qseries::{lagrange_interpolate, CountPoly, QSeriesError};

pub const DEFAULT_BUDGET: f64 = 1e9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CountError {
    #[error("estimated cost {estimate:.3e} exceeds budget {budget:.3e}")]
    BudgetExceeded { estimate: f64, budget: f64 },
    #[error("arrow set is not a cut")]
    NotACut,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} divides a coefficient of the potential")]
    BadPrime(u64),
    #[error("holdout prime {prime}: counted {counted}, polynomial gives {predicted}")]
    HoldoutMismatch {
        prime: u64,
        counted: BigInt,
        predicted: BigInt,
    },
    #[error(transparent)]
    Interpolation(#[from] QSeriesError),
    #[error(transparent)]
    Qp(#[from] QpError),
}

/// Extra open condition imposed on the counted modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountFilter {
    None,
    /// No submodule isomorphic to the simple at `k`: the combined map out
    /// of vertex `k` is injective.
    SubSimpleVanishing(usize),
    /// No quotient isomorphic to the simple at `k`: the combined map into
    /// vertex `k` is surjective.
    QuotSimpleVanishing(usize),
}

pub(crate) fn check_prime(p: u64) -> Result<(), CountError> {
    if is_prime(p) && p < 1 << 31 {
        Ok(())
    } else {
        Err(CountError::NotPrime(p))
    }
}

/// `|GL_n(F_q)|` as a polynomial in `q`.
pub fn gl_order(n: usize) -> CountPoly {
    (0..n).fold(CountPoly::one(), |acc, i| {
        &acc * &(&CountPoly::q_pow(n) - &CountPoly::q_pow(i))
    })
}

/// `|G(v)(F_q)| = prod_i |GL_{v_i}(F_q)|`.
pub fn group_order(v: &[i64]) -> CountPoly {
    v.iter()
        .fold(CountPoly::one(), |acc, &n| &acc * &gl_order(n.max(0) as usize))
}

/// Number of `F_p`-points of the module variety of the cut-truncated
/// Jacobian algebra in dimension `v`, subject to `filter`.
pub fn count_points(
    qp: &Qp,
    cut: &Cut,
    v: &[i64],
    p: u64,
    filter: CountFilter,
    budget: f64,
) -> Result<BigUint, CountError> {
    check_prime(p)?;
    let c = problem::compile(qp, cut, v, filter)?;
    let pb = BigInt::from(p);
    if c.equations.iter().flatten().any(|m| (m.coef.denom() % &pb).is_zero()) {
        return Err(CountError::BadPrime(p));
    }
    let plan = kernel::choose_plan(&c, p, !c.is_bad_prime(p));
    let estimate = plan.cost(&c, p);
    if estimate > budget {
        return Err(CountError::BudgetExceeded { estimate, budget });
    }
    Ok(kernel::count_with_plan(&c, &plan, p) * BigUint::from(p).pow(c.spectator_dim as u32))
}

#[derive(Debug, Clone, Serialize)]
pub struct CountPolyReport {
    pub poly: CountPoly,
    /// `(prime, count)` for every sample, holdout last.
    pub samples: Vec<(u64, String)>,
    pub holdout: u64,
}

#[derive(Debug, Clone)]
pub struct CountOptions {
    pub budget: f64,
    /// Sample primes; `None` uses the smallest primes not dividing any
    /// coefficient.
    pub primes: Option<Vec<u64>>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: DEFAULT_BUDGET,
            primes: None,
        }
    }
}

/// Counting polynomial, interpolated through `D + 1` primes and checked at
/// one more.
pub fn count_polynomial(
    qp: &Qp,
    cut: &Cut,
    v: &[i64],
    filter: CountFilter,
    opts: &CountOptions,
) -> Result<CountPolyReport, CountError> {
    let c = problem::compile(qp, cut, v, filter)?;
    let degree = c.n_vars();
    let needed = degree + 2;
    let sample: Vec<u64> = match &opts.primes {
        Some(list) => {
            for &p in list {
                check_prime(p)?;
                if c.is_bad_prime(p) {
                    return Err(CountError::BadPrime(p));
                }
            }
            if list.len() < needed {
                return Err(QSeriesError::InsufficientSamples {
                    needed,
                    got: list.len(),
                }
                .into());
            }
            list[..needed].to_vec()
        }
        None => primes().filter(|&p| !c.is_bad_prime(p)).take(needed).collect(),
    };
    let p_max = *sample.iter().max().unwrap();
    let plan = kernel::choose_plan(&c, p_max, true);
    let estimate: f64 = sample.iter().map(|&p| plan.cost(&c, p)).sum();
    if estimate > opts.budget {
        return Err(CountError::BudgetExceeded {
            estimate,
            budget: opts.budget,
        });
    }
    let counts: Vec<BigInt> = sample
        .par_iter()
        .map(|&p| BigInt::from(kernel::count_with_plan(&c, &plan, p)))
        .collect();
    let points: Vec<(u64, BigInt)> = sample.iter().copied().zip(counts).collect();
    let (fit, holdout) = points.split_at(degree + 1);
    let rel = lagrange_interpolate(fit, degree)?;
    let (hp, hc) = &holdout[0];
    let predicted = rel.eval_u64(*hp);
    if &predicted != hc {
        return Err(CountError::HoldoutMismatch {
            prime: *hp,
            counted: hc.clone(),
            predicted,
        });
    }
    let poly = &rel * &CountPoly::q_pow(c.spectator_dim);
    let samples = points
        .iter()
        .map(|(p, n)| (*p, (n * BigInt::from(*p).pow(c.spectator_dim as u32)).to_string()))
        .collect();
    Ok(CountPolyReport {
        poly,
        samples,
        holdout: *hp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(0), CountPoly::one());
        assert_eq!(gl_order(1).to_string(), "q - 1");
        assert_eq!(gl_order(2), CountPoly::from_i64s(&[0, 1, -1, -1, 1]));
        assert_eq!(group_order(&[1, 1]), CountPoly::from_i64s(&[1, -2, 1]));
    }

    #[test]
    fn rank_counts_sum_to_all_matrices() {
        for (m, n, p) in [(2, 3, 2), (3, 3, 3), (1, 4, 5)] {
            let total: BigUint = (0..=m.min(n)).map(|r| kernel::rank_count(m, n, r, p)).sum();
            assert_eq!(total, BigUint::from(p).pow((m * n) as u32));
        }
    }
}
