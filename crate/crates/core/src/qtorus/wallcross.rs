use std::time::Instant;

use serde::Serialize;

use crate::ffcount::{CountFilter, CountOptions};
use crate::mutation::{in_n_qq, mutate_qp, phi};
use crate::qp::{Cut, Qp};

use super::{dilog, dt_series, QTorusError, Region, TorusSeries};

/// Side on which the dilogarithm factors are divided out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DilogSide {
    /// `E(y_k)^-1 A` against `A' E(y'_k)^-1`.
    Outer,
    /// `A E(y_k)^-1` against `E(y'_k)^-1 A'`.
    Inner,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallcrossEntry {
    pub v: Vec<i64>,
    pub phi_v: Option<Vec<i64>>,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallcrossReport {
    pub pass: bool,
    pub vertex: String,
    pub side: DilogSide,
    pub region: Vec<Vec<i64>>,
    pub mutated_region: Vec<Vec<i64>>,
    pub support_ok: bool,
    pub support_checked: usize,
    pub matched: usize,
    pub skew_preserved: bool,
    pub entries: Vec<WallcrossEntry>,
    pub first_counterexample: Option<WallcrossEntry>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// Compares the generating series on both sides of the mutation at `k`.
pub fn wallcross_check(
    qp: &Qp,
    cut: &Cut,
    k: usize,
    region: &Region,
    opts: &CountOptions,
) -> Result<WallcrossReport, QTorusError> {
    wallcross_check_with(qp, cut, k, region, opts, DilogSide::Outer)
}

pub fn wallcross_check_with(
    qp: &Qp,
    cut: &Cut,
    k: usize,
    region: &Region,
    opts: &CountOptions,
    side: DilogSide,
) -> Result<WallcrossReport, QTorusError> {
    let start = Instant::now();
    let m = mutate_qp(qp, cut, k)?;
    let q = &qp.quiver;
    let q2 = &m.qp.quiver;
    let inside: Vec<&Vec<i64>> = region.iter().filter(|v| in_n_qq(q, k, v)).collect();
    let region2 = Region::closure(q2.n_vertices(), inside.iter().map(|v| phi(q, k, v)));

    let a = dt_series(qp, cut, region, CountFilter::None, opts)?;
    let e_inv = dilog(a.skew().to_vec(), k, region).inverse()?;
    let a2 = dt_series(&m.qp, &m.cut, &region2, CountFilter::None, opts)?;
    let e2_inv = dilog(a2.skew().to_vec(), k, &region2).inverse()?;
    let (left, right): (TorusSeries, TorusSeries) = match side {
        DilogSide::Outer => (e_inv.mul(&a), a2.mul(&e2_inv)),
        DilogSide::Inner => (a.mul(&e_inv), e2_inv.mul(&a2)),
    };

    let mut skew_preserved = true;
    for u in &inside {
        for w in &inside {
            if left.pairing(u, w) != right.pairing(&phi(q, k, u), &phi(q, k, w)) {
                skew_preserved = false;
            }
        }
    }
    let mut entries = Vec::new();
    let mut support_ok = true;
    let mut support_checked = 0;
    let mut matched = 0;
    for v in region.iter() {
        let lhs = left.coeff(v);
        let entry = if in_n_qq(q, k, v) {
            let w = phi(q, k, v);
            let rhs = right.coeff(&w);
            let equal = lhs == rhs;
            if equal {
                matched += 1;
            }
            WallcrossEntry {
                v: v.clone(),
                phi_v: Some(w),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                equal,
            }
        } else {
            support_checked += 1;
            let equal = lhs.is_zero();
            support_ok &= equal;
            WallcrossEntry {
                v: v.clone(),
                phi_v: None,
                lhs: lhs.to_string(),
                rhs: "0".into(),
                equal,
            }
        };
        entries.push(entry);
    }
    let first_counterexample = entries.iter().find(|e| !e.equal).cloned();
    Ok(WallcrossReport {
        pass: first_counterexample.is_none() && skew_preserved,
        vertex: q.vertex_name(k).to_string(),
        side,
        region: region.maximal(),
        mutated_region: region2.maximal(),
        support_ok,
        support_checked,
        matched,
        skew_preserved,
        entries,
        first_counterexample,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
