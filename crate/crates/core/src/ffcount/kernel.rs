//! Fiberwise point counting: matrices of a chosen arrow subset `S` are
//! enumerated (up to the action of one general linear group per block),
//! the remaining arrows enter every relation at most linearly and are
//! counted by a rank computation.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::field::{reduce_rational, rref_in_place, FpMatrix};
use super::problem::Compiled;
use super::subspace::{subspace_count_estimate, SubspaceEnum};

/// Enumerated arrows sharing a vertex, all leaving it (`out`) or
/// all entering it; the group at `vertex` acts on their stacked matrix and
/// orbits are indexed by its column (resp. row) space.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub out: bool,
    pub arrows: Vec<usize>,
    pub n: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub(crate) enum Method {
    Enumerate { blocks: Vec<Block>, loose: Vec<usize> },
    /// The linear system is `k` copies of one generic `m x n` matrix of
    /// enumerated variables, up to row and column scaling.
    Generic { m: usize, n: usize, k: usize, leftover: usize },
}

#[derive(Clone, Debug)]
pub(crate) struct Plan {
    pub in_s: Vec<bool>,
    pub method: Method,
    pub free: Vec<usize>,
}

impl Plan {
    pub fn cost(&self, c: &Compiled, p: u64) -> f64 {
        let q = p as f64;
        match &self.method {
            Method::Generic { m, n, .. } => (m.min(n) + 1) as f64,
            Method::Enumerate { blocks, loose } => {
                let orbits: f64 = blocks
                    .iter()
                    .map(|b| subspace_count_estimate(b.n, b.dim, q))
                    .product();
                let points = orbits * q.powi(loose.len() as i32);
                points * work_per_point(c, self.free.len())
            }
        }
    }
}

fn work_per_point(c: &Compiled, n_free: usize) -> f64 {
    let mono: usize = c.equations.iter().flatten().map(|m| m.vars.len() + 1).sum();
    let rows = c.equations.len();
    let cols = n_free + 1;
    (mono + rows * cols * rows.min(cols) + 1) as f64
}

fn s_valid(c: &Compiled, in_s: &[bool]) -> bool {
    if let Some(f) = &c.filter {
        if f.arrows.iter().any(|&a| !in_s[a]) {
            return false;
        }
    }
    c.equations.iter().flatten().all(|m| {
        m.vars.iter().filter(|&&x| !in_s[c.var_arrow[x]]).count() <= 1
    })
}

fn vars_of(c: &Compiled, in_s: &[bool], want: bool) -> Vec<usize> {
    (0..c.n_vars())
        .filter(|&x| in_s[c.var_arrow[x]] == want)
        .collect()
}

/// Chooses the cheapest plan at prime `p`; `generic` allows the closed-form
/// rank distribution (only valid when no coefficient vanishes mod p).
pub(crate) fn choose_plan(c: &Compiled, p: u64, generic: bool) -> Plan {
    let na = c.arrows.len();
    let mut best: Option<(f64, Plan)> = None;
    let masks: Box<dyn Iterator<Item = u64>> = if na <= 16 {
        Box::new(0..(1u64 << na))
    } else {
        Box::new(std::iter::once((1u64 << na.min(63)) - 1))
    };
    for mask in masks {
        let in_s: Vec<bool> = (0..na).map(|i| mask >> i & 1 == 1).collect();
        if !s_valid(c, &in_s) {
            continue;
        }
        let free = vars_of(c, &in_s, false);
        let mut consider = |plan: Plan| {
            let cost = plan.cost(c, p);
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, plan));
            }
        };
        if generic {
            if let Some((m, n, k, leftover)) = generic_structure(c, &in_s) {
                consider(Plan {
                    in_s: in_s.clone(),
                    method: Method::Generic { m, n, k, leftover },
                    free: free.clone(),
                });
                continue;
            }
        }
        for blocks in block_choices(c, &in_s) {
            let blocked: Vec<bool> = (0..na)
                .map(|a| blocks.iter().any(|b| b.arrows.contains(&a)))
                .collect();
            let loose = (0..c.n_vars())
                .filter(|&x| in_s[c.var_arrow[x]] && !blocked[c.var_arrow[x]])
                .collect();
            consider(Plan {
                in_s: in_s.clone(),
                method: Method::Enumerate { blocks, loose },
                free: free.clone(),
            });
        }
    }
    best.expect("enumerating every arrow is always a valid plan").1
}

fn block_choices(c: &Compiled, in_s: &[bool]) -> Vec<Vec<Block>> {
    let nv = c.dims.len();
    let mut options: Vec<Vec<Option<Block>>> = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut opts = vec![None];
        let outs: Vec<usize> = (0..c.arrows.len())
            .filter(|&a| in_s[a] && c.arrows[a].tail == v)
            .collect();
        let ins: Vec<usize> = (0..c.arrows.len())
            .filter(|&a| in_s[a] && c.arrows[a].head == v)
            .collect();
        let dim = c.dims[v];
        if ins.is_empty() && !outs.is_empty() {
            let n = outs.iter().map(|&a| c.arrows[a].rows).sum();
            opts.push(Some(Block { out: true, arrows: outs, n, dim }));
        } else if outs.is_empty() && !ins.is_empty() {
            let n = ins.iter().map(|&a| c.arrows[a].cols).sum();
            opts.push(Some(Block { out: false, arrows: ins, n, dim }));
        }
        options.push(opts);
    }
    let mut out = Vec::new();
    fn go(v: usize, options: &[Vec<Option<Block>>], cur: &mut Vec<Block>, out: &mut Vec<Vec<Block>>) {
        if v == options.len() {
            out.push(cur.clone());
            return;
        }
        for opt in &options[v] {
            match opt {
                None => go(v + 1, options, cur, out),
                Some(b) => {
                    if cur.iter().any(|o| o.arrows.iter().any(|a| b.arrows.contains(a))) {
                        continue;
                    }
                    cur.push(b.clone());
                    go(v + 1, options, cur, out);
                    cur.pop();
                }
            }
        }
    }
    go(0, &options, &mut Vec::new(), &mut out);
    out
}

fn generic_structure(c: &Compiled, in_s: &[bool]) -> Option<(usize, usize, usize, usize)> {
    if c.filter.is_some() {
        return None;
    }
    let free = vars_of(c, in_s, false);
    let col_of: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n_eq = c.equations.len();
    // (row, col) -> (coef, s variable)
    let mut cells: BTreeMap<(usize, usize), (BigRational, usize)> = BTreeMap::new();
    for (e, eq) in c.equations.iter().enumerate() {
        for m in eq {
            if m.vars.len() != 2 {
                return None;
            }
            let (s, f) = match (in_s[c.var_arrow[m.vars[0]]], in_s[c.var_arrow[m.vars[1]]]) {
                (true, false) => (m.vars[0], m.vars[1]),
                (false, true) => (m.vars[1], m.vars[0]),
                _ => return None,
            };
            if cells.insert((e, col_of[&f]), (m.coef.clone(), s)).is_some() {
                return None;
            }
        }
    }
    // connected components of the row/column incidence graph
    let mut parent: Vec<usize> = (0..n_eq + free.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for &(e, f) in cells.keys() {
        let (a, b) = (find(&mut parent, e), find(&mut parent, n_eq + f));
        parent[a] = b;
    }
    let mut comps: BTreeMap<usize, Vec<((usize, usize), (BigRational, usize))>> = BTreeMap::new();
    for (&key, val) in &cells {
        let root = find(&mut parent, key.0);
        comps.entry(root).or_default().push((key, val.clone()));
    }
    let comps: Vec<_> = comps.into_values().collect();
    type Shape = (Vec<Vec<usize>>, Vec<Vec<usize>>);
    let shape = |cells: &[((usize, usize), (BigRational, usize))]| -> Option<Shape> {
        let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut cols: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for ((r, cidx), (_, s)) in cells {
            rows.entry(*r).or_default().push(*s);
            cols.entry(*cidx).or_default().push(*s);
        }
        if rows.len() * cols.len() != cells.len() {
            return None;
        }
        let mut vars: Vec<usize> = cells.iter().map(|(_, (_, s))| *s).collect();
        vars.sort_unstable();
        vars.dedup();
        if vars.len() != cells.len() {
            return None;
        }
        let mut r: Vec<Vec<usize>> = rows.into_values().map(|mut v| { v.sort_unstable(); v }).collect();
        let mut cl: Vec<Vec<usize>> = cols.into_values().map(|mut v| { v.sort_unstable(); v }).collect();
        r.sort();
        cl.sort();
        Some((r, cl))
    };
    let Some(first) = comps.first() else {
        return Some((0, 0, 0, vars_of(c, in_s, true).len()));
    };
    let (rsets, csets) = shape(first)?;
    let pos = |s: usize| -> (usize, usize) {
        (
            rsets.iter().position(|set| set.binary_search(&s).is_ok()).unwrap(),
            csets.iter().position(|set| set.binary_search(&s).is_ok()).unwrap(),
        )
    };
    let (m, n) = (rsets.len(), csets.len());
    let mut reference = vec![vec![BigRational::zero(); n]; m];
    for (_, (coef, s)) in first {
        let (r, cc) = pos(*s);
        reference[r][cc] = coef.clone();
    }
    for comp in &comps {
        if shape(comp)? != (rsets.clone(), csets.clone()) {
            return None;
        }
        let mut ratio = vec![vec![BigRational::zero(); n]; m];
        for (_, (coef, s)) in comp {
            let (r, cc) = pos(*s);
            ratio[r][cc] = coef / &reference[r][cc];
        }
        for r in 0..m {
            for cc in 0..n {
                if &ratio[r][cc] * &ratio[0][0] != &ratio[r][0] * &ratio[0][cc] {
                    return None;
                }
            }
        }
    }
    let leftover = vars_of(c, in_s, true).len() - m * n;
    Some((m, n, comps.len(), leftover))
}

fn pow(p: u64, e: usize) -> BigUint {
    BigUint::from(p).pow(e as u32)
}

/// `#{m x n matrices of rank r}` over F_p.
pub(crate) fn rank_count(m: usize, n: usize, r: usize, p: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= (pow(p, m) - pow(p, i)) * (pow(p, n) - pow(p, i));
        den *= pow(p, r) - pow(p, i);
    }
    num / den
}

/// `#{surjections F_p^dim -> F_p^r}`.
fn orbit_size(dim: usize, r: usize, p: u64) -> BigUint {
    (0..r).map(|j| pow(p, dim) - pow(p, j)).product()
}

/// Count of the relevant part at prime `p` (without the spectator factor).
pub(crate) fn count_with_plan(c: &Compiled, plan: &Plan, p: u64) -> BigUint {
    let n_free = plan.free.len();
    match &plan.method {
        Method::Generic { m, n, k, leftover } => {
            let mut total = BigUint::zero();
            for r in 0..=(*m).min(*n) {
                total += rank_count(*m, *n, r, p) * pow(p, n_free - k * r);
            }
            total * pow(p, *leftover)
        }
        Method::Enumerate { blocks, loose } => enumerate(c, plan, blocks, loose, p),
    }
}

struct Mono {
    eq: usize,
    col: usize,
    coef: u64,
    s: std::ops::Range<usize>,
}

struct Setup {
    p: u64,
    n_s: usize,
    n_eq: usize,
    n_free: usize,
    monos: Vec<Mono>,
    s_list: Vec<usize>,
    enums: Vec<SubspaceEnum>,
    /// per block: S positions of entry (s, j) of the echelon data, row-major
    /// with `n` columns
    block_pos: Vec<Vec<usize>>,
    block_n: Vec<usize>,
    loose_pos: Vec<usize>,
    filter: Option<(usize, usize, Vec<usize>)>,
}

fn enumerate(c: &Compiled, plan: &Plan, blocks: &[Block], loose: &[usize], p: u64) -> BigUint {
    let mut s_pos = vec![usize::MAX; c.n_vars()];
    let mut f_col = vec![usize::MAX; c.n_vars()];
    let mut n_s = 0;
    for x in 0..c.n_vars() {
        if plan.in_s[c.var_arrow[x]] {
            s_pos[x] = n_s;
            n_s += 1;
        }
    }
    for (i, &x) in plan.free.iter().enumerate() {
        f_col[x] = i;
    }
    let n_free = plan.free.len();
    let mut monos = Vec::new();
    let mut s_list = Vec::new();
    for (e, eq) in c.equations.iter().enumerate() {
        for m in eq {
            let coef = reduce_rational(&m.coef, p as u32).expect("coefficient denominator prime to p") as u64;
            let start = s_list.len();
            let mut col = n_free;
            for &x in &m.vars {
                if s_pos[x] != usize::MAX {
                    s_list.push(s_pos[x]);
                } else {
                    col = f_col[x];
                }
            }
            monos.push(Mono { eq: e, col, coef, s: start..s_list.len() });
        }
    }
    let mut enums = Vec::new();
    let mut block_pos = Vec::new();
    for b in blocks {
        enums.push(SubspaceEnum::new(b.n, b.dim, p));
        let mut pos = vec![0; b.dim * b.n];
        let mut off = 0;
        for &a in &b.arrows {
            let ar = &c.arrows[a];
            let len = if b.out { ar.rows } else { ar.cols };
            for j in 0..len {
                for s in 0..b.dim {
                    let var = if b.out {
                        ar.offset + j * ar.cols + s
                    } else {
                        ar.offset + s * ar.cols + j
                    };
                    pos[s * b.n + off + j] = s_pos[var];
                }
            }
            off += len;
        }
        block_pos.push(pos);
    }
    let loose_pos = loose.iter().map(|&x| s_pos[x]).collect();
    let filter = c.filter.as_ref().map(|f| {
        let dim = c.dims[f.k];
        let other: usize = f
            .arrows
            .iter()
            .map(|&a| if f.injective { c.arrows[a].rows } else { c.arrows[a].cols })
            .sum();
        // row-major `other x dim` matrix of the combined map (transposed when
        // surjectivity is tested; rank is unchanged)
        let mut pos = Vec::with_capacity(other * dim);
        for &a in &f.arrows {
            let ar = &c.arrows[a];
            let len = if f.injective { ar.rows } else { ar.cols };
            for j in 0..len {
                for s in 0..dim {
                    let var = if f.injective {
                        ar.offset + j * ar.cols + s
                    } else {
                        ar.offset + s * ar.cols + j
                    };
                    pos.push(s_pos[var]);
                }
            }
        }
        (other, dim, pos)
    });
    let setup = Setup {
        p,
        n_s,
        n_eq: c.equations.len(),
        n_free,
        monos,
        s_list,
        enums,
        block_pos,
        block_n: blocks.iter().map(|b| b.n).collect(),
        loose_pos,
        filter,
    };
    let mut radices: Vec<u128> = setup.enums.iter().map(|e| e.len()).collect();
    radices.push((p as u128).pow(loose.len() as u32));
    let total: u128 = radices.iter().product();
    let chunks = total.min(4096);
    let hist = (0..chunks as u64)
        .into_par_iter()
        .map(|ch| {
            let lo = total * ch as u128 / chunks;
            let hi = total * (ch as u128 + 1) / chunks;
            let mut work = Work::new(&setup);
            let mut hist: HashMap<(Vec<u8>, usize), u64> = HashMap::new();
            for idx in lo..hi {
                if let Some(key) = work.point(&setup, &radices, idx) {
                    *hist.entry(key).or_default() += 1;
                }
            }
            hist
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let hist: BTreeMap<_, _> = hist.into_iter().collect();
    let mut out = BigUint::zero();
    for ((ranks, e), n) in hist {
        let mut term = BigUint::from(n) * pow(p, e);
        for (b, &r) in blocks.iter().zip(&ranks) {
            term *= orbit_size(b.dim, r as usize, p);
        }
        out += term;
    }
    out
}

struct Work {
    x: Vec<u32>,
    basis: Vec<u32>,
    mat: Vec<u32>,
    ranks: Vec<u8>,
}

impl Work {
    fn new(s: &Setup) -> Self {
        Work {
            x: vec![0; s.n_s],
            basis: Vec::new(),
            mat: vec![0; s.n_eq * (s.n_free + 1)],
            ranks: vec![0; s.enums.len()],
        }
    }

    fn point(&mut self, s: &Setup, radices: &[u128], mut idx: u128) -> Option<(Vec<u8>, usize)> {
        let p = s.p;
        for (b, e) in s.enums.iter().enumerate() {
            let digit = idx % radices[b];
            idx /= radices[b];
            let n = s.block_n[b];
            let r = e.decode(digit, &mut self.basis);
            self.ranks[b] = r as u8;
            for (k, &pos) in s.block_pos[b].iter().enumerate() {
                let row = k / n;
                self.x[pos] = if row < r { self.basis[k] } else { 0 };
            }
        }
        for &pos in &s.loose_pos {
            self.x[pos] = (idx % p as u128) as u32;
            idx /= p as u128;
        }
        if let Some((rows, cols, pos)) = &s.filter {
            let data: Vec<u32> = pos.iter().map(|&i| self.x[i]).collect();
            if FpMatrix::from_flat(p as u32, *rows, *cols, &data).rank() != *cols {
                return None;
            }
        }
        let width = s.n_free + 1;
        self.mat.iter_mut().for_each(|v| *v = 0);
        for m in &s.monos {
            let mut val = m.coef;
            for &i in &s.s_list[m.s.clone()] {
                val = val * self.x[i] as u64 % p;
            }
            let cell = &mut self.mat[m.eq * width + m.col];
            *cell = ((*cell as u64 + val) % p) as u32;
        }
        let pivots = rref_in_place(&mut self.mat, s.n_eq, width, p as u32);
        if pivots.last() == Some(&s.n_free) {
            return None;
        }
        Some((self.ranks.clone(), s.n_free - pivots.len()))
    }
}

