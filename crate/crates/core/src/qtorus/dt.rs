use rayon::prelude::*;

use crate::ffcount::{count_polynomial, CountError, CountFilter, CountOptions};
use crate::qp::{Cut, Qp};
use crate::qseries::TRational;

use super::{skew_matrix, Region, TorusSeries};

/// `t^(chi_Q(v,v) + 2 chi_C(v,v)) N_v(t^2) / |G(v)|(t^2)`.
pub fn refined_dt(
    qp: &Qp,
    cut: &Cut,
    v: &[i64],
    filter: CountFilter,
    opts: &CountOptions,
) -> Result<TRational, CountError> {
    let q = &qp.quiver;
    let shift = q.euler_form(v, v)? + 2 * q.cut_form(cut, v, v)?;
    let report = count_polynomial(qp, cut, v, filter, opts)?;
    let dims: Vec<u64> = v.iter().map(|&x| x as u64).collect();
    Ok(&TRational::inverse_gl_product(shift, &dims) * &TRational::from_count_poly(&report.poly))
}

/// Generating series of refined invariants over `region`.
pub fn dt_series(
    qp: &Qp,
    cut: &Cut,
    region: &Region,
    filter: CountFilter,
    opts: &CountOptions,
) -> Result<TorusSeries, CountError> {
    let vs: Vec<&Vec<i64>> = region.iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let coeffs: Vec<TRational> = vs
        .par_iter()
        .map(|v| refined_dt(qp, cut, v, filter, opts))
        .collect::<Result<_, _>>()?;
    let mut s = TorusSeries::one(skew_matrix(&qp.quiver), region.clone());
    for (v, c) in vs.into_iter().zip(coeffs) {
        s.set(v.clone(), c);
    }
    Ok(s)
}
