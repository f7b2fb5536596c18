//! Expansion of the truncated relations into polynomial equations in the
//! matrix entries.

use num_rational::BigRational;
use num_traits::Zero;

use crate::qp::{Cut, Qp};

use super::{CountError, CountFilter};

/// An arrow carrying variables: entry `(r, c)` of its `rows x cols` matrix
/// is variable `offset + r * cols + c`.
#[derive(Clone, Debug)]
pub(crate) struct VarArrow {
    pub tail: usize,
    pub head: usize,
    pub rows: usize,
    pub cols: usize,
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Monomial {
    pub coef: BigRational,
    pub vars: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct FilterSpec {
    /// true: combined map out of `k` must be injective; false: combined map
    /// into `k` must be surjective.
    pub injective: bool,
    pub k: usize,
    pub arrows: Vec<usize>,
}

/// The relevant part of a counting problem; spectator arrows only
/// contribute the factor `p^spectator_dim`.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    pub dims: Vec<usize>,
    pub arrows: Vec<VarArrow>,
    pub var_arrow: Vec<usize>,
    pub equations: Vec<Vec<Monomial>>,
    pub filter: Option<FilterSpec>,
    pub spectator_dim: usize,
}

impl Compiled {
    pub fn n_vars(&self) -> usize {
        self.var_arrow.len()
    }

    /// Primes dividing a coefficient numerator or denominator.
    pub fn is_bad_prime(&self, p: u64) -> bool {
        let pb = num_bigint::BigInt::from(p);
        self.equations.iter().flatten().any(|m| {
            (m.coef.denom() % &pb).is_zero() || (m.coef.numer() % &pb).is_zero()
        })
    }
}

fn check_dims(qp: &Qp, v: &[i64]) -> Result<Vec<usize>, CountError> {
    if v.len() != qp.quiver.n_vertices() {
        return Err(CountError::Qp(crate::qp::QpError::DimensionMismatch {
            expected: qp.quiver.n_vertices(),
            got: v.len(),
        }));
    }
    v.iter()
        .map(|&x| {
            usize::try_from(x).map_err(|_| CountError::Qp(crate::qp::QpError::NegativeDimension(x)))
        })
        .collect()
}

pub(crate) fn compile(qp: &Qp, cut: &Cut, v: &[i64], filter: CountFilter) -> Result<Compiled, CountError> {
    if !qp.is_cut(cut) {
        return Err(CountError::NotACut);
    }
    let dims = check_dims(qp, v)?;
    let q = &qp.quiver;
    // Raw relation terms: (coefficient, path of arrow indices), nonzero-size only.
    let mut relations = Vec::new();
    let mut relevant = vec![false; q.n_arrows()];
    for a in q.arrows() {
        if !cut.contains(&a.id) || dims[a.tail] == 0 || dims[a.head] == 0 {
            continue;
        }
        let mut terms = Vec::new();
        for (path, c) in qp.potential.cyclic_derivative(&a.id) {
            let idx: Vec<usize> = path.iter().map(|id| q.arrow_index(id).unwrap()).collect();
            if idx.iter().any(|&e| {
                let x = &q.arrows()[e];
                dims[x.tail] * dims[x.head] == 0
            }) {
                continue;
            }
            for &e in &idx {
                relevant[e] = true;
            }
            terms.push((c, idx));
        }
        relations.push((a.tail, a.head, terms));
    }
    let filter = match filter {
        CountFilter::None => None,
        CountFilter::SubSimpleVanishing(k) | CountFilter::QuotSimpleVanishing(k) => {
            if k >= q.n_vertices() {
                return Err(CountError::Qp(crate::qp::QpError::UnknownVertex(k.to_string())));
            }
            let injective = matches!(filter, CountFilter::SubSimpleVanishing(_));
            if dims[k] == 0 {
                None
            } else {
                let arrows: Vec<usize> = q
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !cut.contains(&x.id))
                    .filter(|(_, x)| if injective { x.tail == k } else { x.head == k })
                    .map(|(i, _)| i)
                    .collect();
                for &e in &arrows {
                    relevant[e] = true;
                }
                Some((injective, k, arrows))
            }
        }
    };
    let mut arrows = Vec::new();
    let mut local = vec![usize::MAX; q.n_arrows()];
    let mut var_arrow = Vec::new();
    let mut spectator_dim = 0;
    for (i, x) in q.arrows().iter().enumerate() {
        if cut.contains(&x.id) {
            continue;
        }
        let size = dims[x.tail] * dims[x.head];
        if !relevant[i] || size == 0 {
            spectator_dim += size;
            continue;
        }
        local[i] = arrows.len();
        let offset = var_arrow.len();
        var_arrow.extend(std::iter::repeat_n(arrows.len(), size));
        arrows.push(VarArrow {
            tail: x.tail,
            head: x.head,
            rows: dims[x.head],
            cols: dims[x.tail],
            offset,
        });
    }
    let mut equations = Vec::new();
    for (t, h, terms) in &relations {
        // matrix entry (i, j) of a v_t x v_h relation
        for i in 0..dims[*t] {
            for j in 0..dims[*h] {
                let mut eq: Vec<Monomial> = Vec::new();
                for (c, path) in terms {
                    let path: Vec<&VarArrow> = path.iter().map(|&e| &arrows[local[e]]).collect();
                    expand(&path, 0, j, i, &mut Vec::new(), c, &mut eq);
                }
                let eq = merge(eq);
                if !eq.is_empty() {
                    equations.push(eq);
                }
            }
        }
    }
    let filter = filter.map(|(injective, k, a)| FilterSpec {
        injective,
        k,
        arrows: a.into_iter().map(|e| local[e]).filter(|&l| l != usize::MAX).collect(),
    });
    Ok(Compiled {
        dims,
        arrows,
        var_arrow,
        equations,
        filter,
        spectator_dim,
    })
}

/// Entry `(end, start)` of `M_pn ... M_p1`, summed over index chains.
fn expand(
    path: &[&VarArrow],
    l: usize,
    cur: usize,
    end: usize,
    acc: &mut Vec<usize>,
    c: &BigRational,
    out: &mut Vec<Monomial>,
) {
    if l == path.len() {
        if cur == end {
            out.push(Monomial {
                coef: c.clone(),
                vars: acc.clone(),
            });
        }
        return;
    }
    let a = path[l];
    for next in 0..a.rows {
        acc.push(a.offset + next * a.cols + cur);
        expand(path, l + 1, next, end, acc, c, out);
        acc.pop();
    }
}

fn merge(mut eq: Vec<Monomial>) -> Vec<Monomial> {
    for m in &mut eq {
        m.vars.sort_unstable();
    }
    eq.sort_by(|a, b| a.vars.cmp(&b.vars));
    let mut out: Vec<Monomial> = Vec::with_capacity(eq.len());
    for m in eq {
        match out.last_mut() {
            Some(last) if last.vars == m.vars => last.coef += m.coef,
            _ => out.push(m),
        }
    }
    out.retain(|m| !m.coef.is_zero());
    out
}
