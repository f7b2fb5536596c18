//! The dimension-vector transform induced by mutation at `k`.

use crate::qp::Quiver;

/// `v'_k = -v_k + sum_{t(b) = k} v_{h(b)}`, other entries unchanged.
pub fn phi(quiver: &Quiver, k: usize, v: &[i64]) -> Vec<i64> {
    let mut out = v.to_vec();
    out[k] = -v[k] + quiver.arrows_out_of(k).map(|b| v[b.head]).sum::<i64>();
    out
}

/// Inverse of [`phi`] for the same (unmutated) quiver; the map is an involution.
pub fn phi_inverse(quiver: &Quiver, k: usize, w: &[i64]) -> Vec<i64> {
    phi(quiver, k, w)
}

/// Membership in `N_{Q,Q'}`: `v` and `phi(v)` are both nonnegative.
pub fn in_n_qq(quiver: &Quiver, k: usize, v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && phi(quiver, k, v).iter().all(|&x| x >= 0)
}
