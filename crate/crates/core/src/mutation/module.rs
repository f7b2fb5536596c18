//! Points of the truncated-Jacobi module variety and their mutation.

use std::collections::BTreeMap;

use crate::ffcount::{reduce_rational, FpMatrix};
use crate::qp::{Cut, PathCombo, Qp, Quiver};

use super::{composite_id, mutate_qp, phi, star_id, MutationError, Mutation};

/// A representation over `F_p` of the truncated Jacobian algebra: one
/// `dims[h] x dims[t]` matrix per non-cut arrow `t -> h`. A path
/// `a1 a2 ... an` acts by `M_an ... M_a2 M_a1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePoint {
    pub p: u32,
    pub dims: Vec<usize>,
    pub maps: BTreeMap<String, FpMatrix>,
}

impl ModulePoint {
    /// Checks shapes and all relations `d_a W = 0`, `a` in the cut.
    pub fn new(
        qp: &Qp,
        cut: &Cut,
        p: u32,
        dims: Vec<usize>,
        maps: BTreeMap<String, FpMatrix>,
    ) -> Result<Self, MutationError> {
        let m = ModulePoint { p, dims, maps };
        m.check_shapes(&qp.quiver, cut)?;
        m.check_relations(qp, cut)?;
        Ok(m)
    }

    pub fn check_shapes(&self, quiver: &Quiver, cut: &Cut) -> Result<(), MutationError> {
        for a in quiver.arrows() {
            if cut.contains(&a.id) {
                continue;
            }
            let expected = (self.dims[a.head], self.dims[a.tail]);
            let got = self
                .maps
                .get(&a.id)
                .map_or((usize::MAX, usize::MAX), |m| (m.rows(), m.cols()));
            if got != expected {
                return Err(MutationError::ShapeMismatch {
                    arrow: a.id.clone(),
                    got,
                    expected,
                });
            }
        }
        Ok(())
    }

    /// Matrix of a nonempty path; arrows without a stored map act by zero.
    pub fn path_matrix(&self, quiver: &Quiver, path: &[String]) -> FpMatrix {
        let arrow = |id: &String| quiver.arrow(id).expect("known arrow");
        let first = arrow(&path[0]);
        let mut acc = FpMatrix::identity(self.p, self.dims[first.tail]);
        for id in path {
            let a = arrow(id);
            acc = match self.maps.get(id) {
                Some(m) => m.mul(&acc),
                None => FpMatrix::zeros(self.p, self.dims[a.head], acc.cols()),
            };
        }
        acc
    }

    /// `sum c * M(path)` as a `rows x cols` matrix.
    pub fn combo_matrix(
        &self,
        quiver: &Quiver,
        combo: &PathCombo,
        rows: usize,
        cols: usize,
    ) -> Result<FpMatrix, MutationError> {
        let mut acc = FpMatrix::zeros(self.p, rows, cols);
        for (path, c) in combo {
            let c = reduce_rational(c, self.p).ok_or(MutationError::BadPrime(self.p))?;
            acc.add_scaled(&self.path_matrix(quiver, path), c);
        }
        Ok(acc)
    }

    pub fn check_relations(&self, qp: &Qp, cut: &Cut) -> Result<(), MutationError> {
        for a in qp.quiver.arrows() {
            if !cut.contains(&a.id) {
                continue;
            }
            let d = qp.potential.cyclic_derivative(&a.id);
            let m = self.combo_matrix(&qp.quiver, &d, self.dims[a.tail], self.dims[a.head])?;
            if !m.is_zero() {
                return Err(MutationError::RelationViolation(a.id.clone()));
            }
        }
        Ok(())
    }

    /// `V_k -> (+) V_{h(b)}` over non-cut arrows `b` out of `k`.
    pub fn out_map(&self, quiver: &Quiver, cut: &Cut, k: usize) -> FpMatrix {
        let blocks: Vec<&FpMatrix> = quiver
            .arrows_out_of(k)
            .filter(|b| !cut.contains(&b.id))
            .map(|b| &self.maps[&b.id])
            .collect();
        FpMatrix::vstack(self.p, self.dims[k], &blocks)
    }

    /// `(+) V_{t(a)} -> V_k` over non-cut arrows `a` into `k`.
    pub fn in_map(&self, quiver: &Quiver, cut: &Cut, k: usize) -> FpMatrix {
        let blocks: Vec<&FpMatrix> = quiver
            .arrows_into(k)
            .filter(|a| !cut.contains(&a.id))
            .map(|a| &self.maps[&a.id])
            .collect();
        FpMatrix::hstack(self.p, self.dims[k], &blocks)
    }

    /// `Hom(s_k, V) = 0`.
    pub fn no_simple_sub(&self, quiver: &Quiver, cut: &Cut, k: usize) -> bool {
        self.out_map(quiver, cut, k).rank() == self.dims[k]
    }

    /// `Hom(V, s_k) = 0`.
    pub fn no_simple_quotient(&self, quiver: &Quiver, cut: &Cut, k: usize) -> bool {
        self.in_map(quiver, cut, k).rank() == self.dims[k]
    }
}

/// Transports a module with `Hom(s_k, V) = 0` across the mutation at the
/// strict source `k`. The new space at `k` is the cokernel of the combined
/// map out of `k`, with basis the standard vectors outside the pivot rows
/// of that map.
pub fn mutate_module(
    qp: &Qp,
    cut: &Cut,
    k: usize,
    m: &ModulePoint,
) -> Result<(Mutation, ModulePoint), MutationError> {
    let mu = mutate_qp(qp, cut, k)?;
    m.check_shapes(&qp.quiver, cut)?;
    m.check_relations(qp, cut)?;
    let q = &qp.quiver;
    let p = m.p;
    let vk = m.dims[k];
    let outgoing: Vec<_> = q.arrows_out_of(k).collect();
    let incoming: Vec<_> = q.arrows_into(k).collect();
    let beta = m.out_map(q, cut, k);
    if beta.rank() != vk {
        return Err(MutationError::InjectivityFailed);
    }
    let n = beta.rows();
    let (_, piv) = beta.transpose().rref();
    let rest: Vec<usize> = (0..n).filter(|j| !piv.contains(j)).collect();
    let bj_inv = beta.select_rows(&piv).inverse().expect("pivot block invertible");
    let correction = beta.select_rows(&rest).mul(&bj_inv).neg();
    // projection U -> coker, and the inclusion of the chosen complement
    let mut proj = FpMatrix::zeros(p, rest.len(), n);
    let mut incl = FpMatrix::zeros(p, n, rest.len());
    for (t, &j) in rest.iter().enumerate() {
        proj.set(t, j, 1);
        incl.set(j, t, 1);
        for (s, &i) in piv.iter().enumerate() {
            proj.set(t, i, correction.get(t, s));
        }
    }
    let mut offsets = Vec::with_capacity(outgoing.len());
    let mut off = 0;
    for b in &outgoing {
        offsets.push(off);
        off += m.dims[b.head];
    }

    let mut maps = BTreeMap::new();
    for (id, mat) in &m.maps {
        let a = q.arrow(id).expect("known arrow");
        if a.head != k && a.tail != k {
            maps.insert(id.clone(), mat.clone());
        }
    }
    for (b, &o) in outgoing.iter().zip(&offsets) {
        let cols: Vec<usize> = (o..o + m.dims[b.head]).collect();
        maps.insert(star_id(&b.id), proj.select_cols(&cols));
    }
    let pre = &mu.premutated;
    for a in &incoming {
        let mut blocks = Vec::with_capacity(outgoing.len());
        for b in &outgoing {
            let mut d = pre.qp.potential.cyclic_derivative(&composite_id(&b.id, &a.id));
            d.remove(&vec![star_id(&b.id), star_id(&a.id)]);
            let g = m.combo_matrix(&pre.qp.quiver, &d, m.dims[a.tail], m.dims[b.head])?;
            blocks.push(g.neg());
        }
        let refs: Vec<&FpMatrix> = blocks.iter().collect();
        let g = FpMatrix::hstack(p, m.dims[a.tail], &refs);
        maps.insert(star_id(&a.id), g.mul(&incl));
    }

    let dims_i: Vec<i64> = m.dims.iter().map(|&x| x as i64).collect();
    let new_dims: Vec<usize> = phi(q, k, &dims_i).iter().map(|&x| x as usize).collect();
    debug_assert_eq!(new_dims[k], rest.len());
    let kept: BTreeMap<String, FpMatrix> = mu
        .qp
        .quiver
        .arrows()
        .iter()
        .filter(|a| !mu.cut.contains(&a.id))
        .map(|a| (a.id.clone(), maps[&a.id].clone()))
        .collect();
    let out = ModulePoint::new(&mu.qp, &mu.cut, p, new_dims, kept)?;
    if !out.no_simple_quotient(&mu.qp.quiver, &mu.cut, k) {
        return Err(MutationError::RelationViolation(format!(
            "surjectivity at {}",
            q.vertex_name(k)
        )));
    }
    Ok((mu, out))
}
