//! Isomorphisms of quivers and of quivers with potential.

use std::collections::BTreeMap;

use super::potential::Cycle;
use super::quiver::Quiver;
use super::Qp;

/// Vertex map (`vertices[i]` of the source goes to `vertices[map[i]]` of
/// the target) and arrow id map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpIsomorphism {
    pub vertices: Vec<usize>,
    pub arrows: BTreeMap<String, String>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    permute(&mut cur, 0, &mut out);
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Vertex bijections matching the arrow-count matrices.
fn adjacency_matches(a: &Quiver, b: &Quiver) -> Vec<Vec<usize>> {
    if a.n_vertices() != b.n_vertices() || a.n_arrows() != b.n_arrows() {
        return Vec::new();
    }
    let (ma, mb) = (a.adjacency(), b.adjacency());
    let n = a.n_vertices();
    permutations(n)
        .into_iter()
        .filter(|s| (0..n).all(|i| (0..n).all(|j| ma[i][j] == mb[s[i]][s[j]])))
        .collect()
}

/// A vertex relabeling carrying the arrow counts of `a` onto those of `b`.
pub fn find_quiver_isomorphism(a: &Quiver, b: &Quiver) -> Option<Vec<usize>> {
    adjacency_matches(a, b).into_iter().next()
}

/// A relabeling of vertices and arrows carrying `a` onto `b`, potential
/// included.
pub fn find_qp_isomorphism(a: &Qp, b: &Qp) -> Option<QpIsomorphism> {
    if a.potential.len() != b.potential.len() {
        return None;
    }
    let mut found = None;
    for_each_relabeling(
        a,
        b,
        |iso| (a.potential.relabel(|id| iso.arrows[id].clone()) == b.potential).then(|| iso.clone()),
        &mut found,
    );
    found
}

/// Runs `test` on every endpoint-respecting relabeling until it succeeds.
fn for_each_relabeling<T>(
    a: &Qp,
    b: &Qp,
    mut test: impl FnMut(&QpIsomorphism) -> Option<T>,
    found: &mut Option<T>,
) {
    for sigma in adjacency_matches(&a.quiver, &b.quiver) {
        let mut groups: BTreeMap<(usize, usize), (Vec<&str>, Vec<&str>)> = BTreeMap::new();
        for x in a.quiver.arrows() {
            groups.entry((x.tail, x.head)).or_default().0.push(&x.id);
        }
        for y in b.quiver.arrows() {
            let key = (
                sigma.iter().position(|&s| s == y.tail).unwrap(),
                sigma.iter().position(|&s| s == y.head).unwrap(),
            );
            groups.entry(key).or_default().1.push(&y.id);
        }
        let groups: Vec<(Vec<&str>, Vec<&str>)> = groups.into_values().collect();
        let choices: Vec<Vec<Vec<usize>>> = groups.iter().map(|(s, _)| permutations(s.len())).collect();
        let mut idx = vec![0usize; groups.len()];
        loop {
            let mut map = BTreeMap::new();
            for (g, (src, dst)) in groups.iter().enumerate() {
                for (i, p) in choices[g][idx[g]].iter().enumerate() {
                    map.insert(src[i].to_string(), dst[*p].to_string());
                }
            }
            let iso = QpIsomorphism {
                vertices: sigma.clone(),
                arrows: map,
            };
            if let Some(t) = test(&iso) {
                *found = Some(t);
                return;
            }
            // Odometer over the per-group permutations.
            let mut g = 0;
            while g < idx.len() {
                idx[g] += 1;
                if idx[g] < choices[g].len() {
                    break;
                }
                idx[g] = 0;
                g += 1;
            }
            if g == idx.len() {
                break;
            }
        }
    }
}

/// Like [`find_qp_isomorphism`], but arrows may additionally be rescaled by
/// `-1`. Returns the relabeling and the set of negated source arrows.
pub fn find_qp_isomorphism_up_to_signs(a: &Qp, b: &Qp) -> Option<(QpIsomorphism, Vec<String>)> {
    if a.potential.len() != b.potential.len() || a.quiver.n_arrows() > 64 {
        return None;
    }
    let ids: Vec<&str> = a.quiver.arrows().iter().map(|x| x.id.as_str()).collect();
    let mut found = None;
    for_each_relabeling(a, b, |iso| {
        let target: BTreeMap<_, _> = b.potential.terms().collect();
        // One GF(2) equation per term: the parity of negated arrows in the
        // term equals whether the coefficients differ in sign.
        let mut rows: Vec<(u64, bool)> = Vec::new();
        for (c, x) in a.potential.terms() {
            let image = Cycle::new(c.arrows().iter().map(|id| iso.arrows[id].clone())).ok()?;
            let y = target.get(&image)?;
            let flip = if *y == x {
                false
            } else if *y == &-x.clone() {
                true
            } else {
                return None;
            };
            let mut mask = 0u64;
            for id in c.arrows() {
                let i = ids.iter().position(|s| s == id).unwrap();
                mask ^= 1 << i;
            }
            rows.push((mask, flip));
        }
        let signs = solve_gf2(rows, ids.len())?;
        Some((iso.clone(), signs))
    }, &mut found);
    let (iso, signs) = found?;
    let neg = (0..ids.len())
        .filter(|i| signs >> i & 1 == 1)
        .map(|i| ids[i].to_string())
        .collect();
    Some((iso, neg))
}

fn solve_gf2(mut rows: Vec<(u64, bool)>, n: usize) -> Option<u64> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let bit = 1u64 << col;
        let Some(pr) = (r..rows.len()).find(|&i| rows[i].0 & bit != 0) else {
            continue;
        };
        rows.swap(r, pr);
        for i in 0..rows.len() {
            if i != r && rows[i].0 & bit != 0 {
                rows[i].0 ^= rows[r].0;
                rows[i].1 ^= rows[r].1;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|(m, rhs)| *m == 0 && *rhs) {
        return None;
    }
    let mut x = 0u64;
    for (i, &col) in pivots.iter().enumerate() {
        if rows[i].1 {
            x |= 1 << col;
        }
    }
    Some(x)
}
