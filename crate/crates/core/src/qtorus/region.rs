use std::collections::BTreeSet;

use crate::qp::DimVector;

/// A finite downward-closed subset of the dimension-vector lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    n: usize,
    elems: BTreeSet<Vec<i64>>,
}

impl Region {
    /// `{ v : v <= b }`.
    pub fn boxed(b: &DimVector) -> Self {
        Self::closure(b.len(), [b.as_slice().to_vec()])
    }

    /// `{ v : sum v_i <= d }` in `n` coordinates.
    pub fn total_degree(n: usize, d: i64) -> Self {
        let mut elems = BTreeSet::new();
        let mut cur = vec![0; n];
        fn go(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
            if i == cur.len() {
                out.insert(cur.clone());
                return;
            }
            for x in 0..=left {
                cur[i] = x;
                go(i + 1, left - x, cur, out);
            }
            cur[i] = 0;
        }
        go(0, d, &mut cur, &mut elems);
        Region { n, elems }
    }

    /// Downward closure of `gens` (negative entries are clamped to zero).
    pub fn closure<I: IntoIterator<Item = Vec<i64>>>(n: usize, gens: I) -> Self {
        let mut elems = BTreeSet::new();
        elems.insert(vec![0; n]);
        for g in gens {
            let g: Vec<i64> = g.into_iter().map(|x| x.max(0)).collect();
            for v in DimVector::new(g).expect("clamped").below() {
                elems.insert(v.into_vec());
            }
        }
        Region { n, elems }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.elems.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.elems.iter()
    }

    /// Elements ordered by total degree, then lexicographically.
    pub fn by_degree(&self) -> Vec<&Vec<i64>> {
        let mut v: Vec<&Vec<i64>> = self.elems.iter().collect();
        v.sort_by_key(|x| (x.iter().sum::<i64>(), (*x).clone()));
        v
    }

    pub fn intersect(&self, other: &Region) -> Region {
        Region {
            n: self.n,
            elems: self.elems.intersection(&other.elems).cloned().collect(),
        }
    }

    /// Maximal elements.
    pub fn maximal(&self) -> Vec<Vec<i64>> {
        self.elems
            .iter()
            .filter(|v| {
                (0..self.n).all(|i| {
                    let mut w = (*v).clone();
                    w[i] += 1;
                    !self.elems.contains(&w)
                })
            })
            .cloned()
            .collect()
    }
}
