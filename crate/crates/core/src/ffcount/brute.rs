//! Direct enumeration over all matrix tuples.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::mutation::ModulePoint;
use crate::qp::{Cut, Qp};

use super::field::{reduce_rational, FpMatrix};
use super::{CountError, CountFilter};

fn dims_of(qp: &Qp, v: &[i64]) -> Result<Vec<usize>, CountError> {
    if v.len() != qp.quiver.n_vertices() || v.iter().any(|&x| x < 0) {
        return Err(CountError::Qp(crate::qp::QpError::DimensionMismatch {
            expected: qp.quiver.n_vertices(),
            got: v.len(),
        }));
    }
    Ok(v.iter().map(|&x| x as usize).collect())
}

/// Calls `visit` with every tuple of matrices on `arrows`.
fn for_each_tuple(
    qp: &Qp,
    dims: &[usize],
    arrows: &[String],
    p: u32,
    mut visit: impl FnMut(&BTreeMap<String, FpMatrix>),
) {
    let shapes: Vec<(usize, usize)> = arrows
        .iter()
        .map(|id| {
            let a = qp.quiver.arrow(id).unwrap();
            (dims[a.head], dims[a.tail])
        })
        .collect();
    let n: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let mut digits = vec![0u32; n];
    loop {
        let mut maps = BTreeMap::new();
        let mut off = 0;
        for (id, &(r, c)) in arrows.iter().zip(&shapes) {
            maps.insert(id.clone(), FpMatrix::from_flat(p, r, c, &digits[off..off + r * c]));
            off += r * c;
        }
        visit(&maps);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn check_budget(dim: usize, p: u64, work: f64, budget: f64) -> Result<(), CountError> {
    let estimate = (p as f64).powi(dim as i32) * work;
    if estimate > budget {
        Err(CountError::BudgetExceeded { estimate, budget })
    } else {
        Ok(())
    }
}

/// Count by visiting every tuple of matrices on the non-cut arrows.
pub fn count_points_brute(
    qp: &Qp,
    cut: &Cut,
    v: &[i64],
    p: u64,
    filter: CountFilter,
    budget: f64,
) -> Result<BigUint, CountError> {
    super::check_prime(p)?;
    if !qp.is_cut(cut) {
        return Err(CountError::NotACut);
    }
    let dims = dims_of(qp, v)?;
    let arrows: Vec<String> = qp
        .quiver
        .arrows()
        .iter()
        .filter(|a| !cut.contains(&a.id))
        .map(|a| a.id.clone())
        .collect();
    let dim: usize = arrows
        .iter()
        .map(|id| {
            let a = qp.quiver.arrow(id).unwrap();
            dims[a.tail] * dims[a.head]
        })
        .sum();
    check_budget(dim, p, (qp.potential.len() + 1) as f64, budget)?;
    let mut count = 0u64;
    for_each_tuple(qp, &dims, &arrows, p as u32, |maps| {
        let m = ModulePoint {
            p: p as u32,
            dims: dims.clone(),
            maps: maps.clone(),
        };
        if m.check_relations(qp, cut).is_err() {
            return;
        }
        let ok = match filter {
            CountFilter::None => true,
            CountFilter::SubSimpleVanishing(k) => m.no_simple_sub(&qp.quiver, cut, k),
            CountFilter::QuotSimpleVanishing(k) => m.no_simple_quotient(&qp.quiver, cut, k),
        };
        if ok {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Sizes of the fibres of the trace function over 0 and 1.
pub fn trace_counts(qp: &Qp, v: &[i64], p: u64, budget: f64) -> Result<(BigUint, BigUint), CountError> {
    super::check_prime(p)?;
    let dims = dims_of(qp, v)?;
    let q = &qp.quiver;
    let arrows: Vec<String> = q.arrows().iter().map(|a| a.id.clone()).collect();
    let dim = q.rep_dimension(v) as usize;
    check_budget(dim, p, (qp.potential.len() + 1) as f64, budget)?;
    let terms: Vec<(u32, Vec<String>)> = qp
        .potential
        .terms()
        .map(|(c, coef)| {
            reduce_rational(coef, p as u32)
                .map(|x| (x, c.arrows().to_vec()))
                .ok_or(CountError::BadPrime(p))
        })
        .collect::<Result<_, _>>()?;
    let (mut zero, mut one) = (0u64, 0u64);
    for_each_tuple(qp, &dims, &arrows, p as u32, |maps| {
        let m = ModulePoint {
            p: p as u32,
            dims: dims.clone(),
            maps: maps.clone(),
        };
        let mut f = 0u64;
        for (coef, cycle) in &terms {
            let mat = m.path_matrix(q, cycle);
            let tr: u64 = (0..mat.rows()).map(|i| mat.get(i, i) as u64).sum();
            f = (f + *coef as u64 * (tr % p)) % p;
        }
        match f {
            0 => zero += 1,
            1 => one += 1,
            _ => {}
        }
    });
    Ok((BigUint::from(zero), BigUint::from(one)))
}
