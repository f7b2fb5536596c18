//! Indexed enumeration of subspaces of F_p^n by reduced row echelon form.

pub(crate) struct SubspaceEnum {
    n: usize,
    p: u64,
    segments: Vec<Segment>,
    total: u128,
}

struct Segment {
    start: u128,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
}

impl SubspaceEnum {
    /// Subspaces of dimension `0..=max_dim`.
    pub fn new(n: usize, max_dim: usize, p: u64) -> Self {
        let mut segments = Vec::new();
        let mut total: u128 = 0;
        for r in 0..=max_dim.min(n) {
            for pivots in combinations(n, r) {
                let mut free = Vec::new();
                for (s, &c0) in pivots.iter().enumerate() {
                    for c in c0 + 1..n {
                        if !pivots.contains(&c) {
                            free.push((s, c));
                        }
                    }
                }
                let size = (p as u128).saturating_pow(free.len() as u32);
                segments.push(Segment {
                    start: total,
                    pivots,
                    free,
                });
                total = total.saturating_add(size);
            }
        }
        SubspaceEnum {
            n,
            p,
            segments,
            total,
        }
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    /// Writes the echelon basis (rows of length `n`) into `out`, returns the
    /// dimension.
    pub fn decode(&self, idx: u128, out: &mut Vec<u32>) -> usize {
        let seg = match self.segments.binary_search_by(|s| s.start.cmp(&idx)) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let seg = &self.segments[seg];
        let r = seg.pivots.len();
        out.clear();
        out.resize(r * self.n, 0);
        for (s, &c) in seg.pivots.iter().enumerate() {
            out[s * self.n + c] = 1;
        }
        let mut rest = idx - seg.start;
        for &(s, c) in &seg.free {
            out[s * self.n + c] = (rest % self.p as u128) as u32;
            rest /= self.p as u128;
        }
        r
    }
}

pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Number of subspaces of F_q^n of dimension at most `max_dim`, as a float.
pub(crate) fn subspace_count_estimate(n: usize, max_dim: usize, q: f64) -> f64 {
    (0..=max_dim.min(n))
        .map(|r| {
            (0..r)
                .map(|i| (q.powi((n - i) as i32) - 1.0) / (q.powi((i + 1) as i32) - 1.0))
                .product::<f64>()
        })
        .sum()
}
