//! Graded premutation, reduction of isolated 2-cycles, cut mutation at a
//! strict source, the dimension-vector transform and module mutation.

mod module;
mod phi;

pub use module::{mutate_module, ModulePoint};
pub use phi::{in_n_qq, phi, phi_inverse};

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::qp::{Cut, Cycle, Grading, Path, Potential, Qp, QpError, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error("vertex {0:?} is not a strict source of the cut")]
    NotStrictSource(String),
    #[error("2-cycle term {0} is not isolated")]
    NonIsolatedTwoCycle(String),
    #[error("potential term {term} has degree {degree}, expected {expected}")]
    NotHomogeneous {
        term: String,
        degree: i64,
        expected: i64,
    },
    #[error("composite arrow {0} would be a loop")]
    CompositeLoop(String),
    #[error("mutated quiver still has an oriented 2-cycle")]
    NotClusterLike,
    #[error("arrow {arrow} has degree {degree} after mutation")]
    BadDegree { arrow: String, degree: i64 },
    #[error("combined map out of the mutation vertex is not injective")]
    InjectivityFailed,
    #[error("relation for {0} fails")]
    RelationViolation(String),
    #[error("matrix for {arrow} has shape {got:?}, expected {expected:?}")]
    ShapeMismatch {
        arrow: String,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("prime {0} divides a potential coefficient")]
    BadPrime(u32),
}

/// A graded quiver with a potential homogeneous of degree `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQp {
    pub qp: Qp,
    pub grading: Grading,
    pub r: i64,
}

impl GradedQp {
    pub fn new(qp: Qp, grading: Grading, r: i64) -> Result<Self, MutationError> {
        let g = GradedQp { qp, grading, r };
        g.check_homogeneous()?;
        Ok(g)
    }

    /// The grading of a cut, with `r = 1`.
    pub fn from_cut(qp: Qp, cut: &Cut) -> Result<Self, MutationError> {
        cut.check_arrows(&qp.quiver)?;
        let grading = Grading::from_cut(&qp.quiver, cut);
        Self::new(qp, grading, 1)
    }

    fn check_homogeneous(&self) -> Result<(), MutationError> {
        if !self.grading.is_total_on(&self.qp.quiver) {
            return Err(MutationError::Qp(QpError::Parse("grading is not total".into())));
        }
        for (c, _) in self.qp.potential.terms() {
            let d = self.grading.cycle_degree(c).unwrap_or(i64::MIN);
            if d != self.r {
                return Err(MutationError::NotHomogeneous {
                    term: c.to_string(),
                    degree: d,
                    expected: self.r,
                });
            }
        }
        Ok(())
    }
}

pub fn composite_id(b: &str, a: &str) -> String {
    format!("[{b}.{a}]")
}

pub fn star_id(a: &str) -> String {
    format!("{a}*")
}

/// Replaces every pair `a b` through `k` (a into `k`, b out of `k`) by the
/// composite `[b.a]`.
fn substitute(quiver: &Quiver, k: usize, c: &Cycle) -> Cycle {
    let v = c.arrows();
    let n = v.len();
    let into_k = |id: &str| quiver.arrow(id).is_some_and(|a| a.head == k);
    // Start at an arrow into k so no pair wraps around.
    let start = (0..n).find(|&i| into_k(&v[i])).unwrap_or(0);
    let rotated: Vec<&String> = (0..n).map(|j| &v[(start + j) % n]).collect();
    let mut out = Vec::with_capacity(n);
    let mut j = 0;
    while j < n {
        if into_k(rotated[j]) && j + 1 < n {
            out.push(composite_id(rotated[j + 1], rotated[j]));
            j += 2;
        } else {
            out.push(rotated[j].clone());
            j += 1;
        }
    }
    Cycle::new(out).expect("nonempty")
}

/// Rules (1)-(3): composites, reversed arrows at `k`, `[W] + Delta`, and
/// the new degrees. The result may contain 2-cycles.
pub fn premutate(g: &GradedQp, k: usize) -> Result<GradedQp, MutationError> {
    let q = &g.qp.quiver;
    let incoming: Vec<_> = q.arrows_into(k).collect();
    let outgoing: Vec<_> = q.arrows_out_of(k).collect();
    let name = |i: usize| q.vertex_name(i).to_string();
    let mut arrows = Vec::new();
    let mut degrees = BTreeMap::new();
    let deg = |id: &str| g.grading.degree(id).expect("total grading");
    for a in q.arrows() {
        if a.head == k {
            let s = star_id(&a.id);
            arrows.push((s.clone(), name(k), name(a.tail)));
            degrees.insert(s, g.r - deg(&a.id));
        } else if a.tail == k {
            let s = star_id(&a.id);
            arrows.push((s.clone(), name(a.head), name(k)));
            degrees.insert(s, -deg(&a.id));
        } else {
            arrows.push((a.id.clone(), name(a.tail), name(a.head)));
            degrees.insert(a.id.clone(), deg(&a.id));
        }
    }
    for a in &incoming {
        for b in &outgoing {
            let id = composite_id(&b.id, &a.id);
            if a.tail == b.head {
                return Err(MutationError::CompositeLoop(id));
            }
            arrows.push((id.clone(), name(a.tail), name(b.head)));
            degrees.insert(id, deg(&b.id) + deg(&a.id));
        }
    }
    let quiver = Quiver::new(q.vertices().iter().cloned(), arrows)?;
    let mut w = Potential::zero();
    for (c, x) in g.qp.potential.terms() {
        w.add_term(substitute(q, k, c), x.clone());
    }
    for a in &incoming {
        for b in &outgoing {
            let c = Cycle::new([composite_id(&b.id, &a.id), star_id(&b.id), star_id(&a.id)])?;
            w.add_term(c, BigRational::one());
        }
    }
    GradedQp::new(Qp::new(quiver, w)?, Grading::new(degrees), g.r)
}

/// Rotates a cycle to start at its unique occurrence of `x` and returns the
/// remaining path.
fn rest_after(c: &Cycle, x: &str) -> Path {
    let v = c.arrows();
    let i = v.iter().position(|a| a == x).expect("occurs");
    v[i + 1..].iter().chain(&v[..i]).cloned().collect()
}

/// Removes isolated 2-cycle terms one at a time:
/// `W = lxy + xP + yQ + R` becomes `R - l^-1 PQ` without `x, y`.
pub fn reduce(g: &GradedQp) -> Result<GradedQp, MutationError> {
    let mut cur = g.clone();
    loop {
        let two = cur
            .qp
            .potential
            .terms()
            .find(|(c, _)| c.len() == 2)
            .map(|(c, l)| (c.clone(), l.clone()));
        let Some((xy, lambda)) = two else {
            return Ok(cur);
        };
        let x = xy.arrows()[0].clone();
        let y = xy.arrows()[1].clone();
        if x == y {
            return Err(MutationError::NonIsolatedTwoCycle(xy.to_string()));
        }
        let mut p_terms: Vec<(Path, BigRational)> = Vec::new();
        let mut q_terms: Vec<(Path, BigRational)> = Vec::new();
        let mut rest = Potential::zero();
        for (c, coef) in cur.qp.potential.terms() {
            if *c == xy {
                continue;
            }
            let (nx, ny) = (c.count(&x), c.count(&y));
            match (nx, ny) {
                (0, 0) => rest.add_term(c.clone(), coef.clone()),
                (1, 0) => p_terms.push((rest_after(c, &x), coef.clone())),
                (0, 1) => q_terms.push((rest_after(c, &y), coef.clone())),
                _ => return Err(MutationError::NonIsolatedTwoCycle(xy.to_string())),
            }
        }
        let inv = BigRational::one() / &lambda;
        for (pp, pc) in &p_terms {
            for (qq, qc) in &q_terms {
                let cycle = Cycle::new(pp.iter().chain(qq).cloned())?;
                rest.add_term(cycle, -(&inv * pc * qc));
            }
        }
        let q = &cur.qp.quiver;
        let arrows = q
            .arrows()
            .iter()
            .filter(|a| a.id != x && a.id != y)
            .map(|a| {
                (
                    a.id.clone(),
                    q.vertex_name(a.tail).to_string(),
                    q.vertex_name(a.head).to_string(),
                )
            });
        let quiver = Quiver::new(q.vertices().iter().cloned(), arrows)?;
        let mut degrees = cur.grading.degrees().clone();
        degrees.remove(&x);
        degrees.remove(&y);
        cur = GradedQp::new(Qp::new(quiver, rest)?, Grading::new(degrees), cur.r)?;
    }
}

/// Output of [`mutate_qp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub qp: Qp,
    pub cut: Cut,
    pub grading: Grading,
    /// Before reduction.
    pub premutated: GradedQp,
    pub vertex: usize,
}

/// Cut mutation at a strict source: premutate with the cut grading, reduce,
/// and take the degree-one arrows as the new cut.
pub fn mutate_qp(qp: &Qp, cut: &Cut, k: usize) -> Result<Mutation, MutationError> {
    if !qp.is_cut(cut) {
        return Err(QpError::NotACut.into());
    }
    if !qp.quiver.is_cluster_like() {
        return Err(MutationError::NotClusterLike);
    }
    if !qp.is_strict_source(cut, k) {
        return Err(MutationError::NotStrictSource(
            qp.quiver.vertex_name(k).to_string(),
        ));
    }
    let g = GradedQp::from_cut(qp.clone(), cut)?;
    let pre = premutate(&g, k)?;
    let red = reduce(&pre)?;
    for (a, &d) in red.grading.degrees() {
        if d != 0 && d != 1 {
            return Err(MutationError::BadDegree {
                arrow: a.clone(),
                degree: d,
            });
        }
    }
    let new_cut = Cut::new(
        red.grading
            .degrees()
            .iter()
            .filter(|(_, &d)| d == 1)
            .map(|(a, _)| a.clone()),
    );
    if !red.qp.is_cut(&new_cut) {
        return Err(QpError::NotACut.into());
    }
    if !red.qp.quiver.is_cluster_like() {
        return Err(MutationError::NotClusterLike);
    }
    Ok(Mutation {
        qp: red.qp,
        cut: new_cut,
        grading: red.grading,
        premutated: pre,
        vertex: k,
    })
}

/// Fomin-Zelevinsky mutation of the skew arrow-count matrix `b_ij = #(i->j) - #(j->i)`.
pub fn fz_mutation(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out = b.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    out
}

/// `b_ij = #(i->j) - #(j->i)`.
pub fn exchange_matrix(q: &Quiver) -> Vec<Vec<i64>> {
    let m = q.adjacency();
    let n = m.len();
    (0..n)
        .map(|i| (0..n).map(|j| m[i][j] - m[j][i]).collect())
        .collect()
}
