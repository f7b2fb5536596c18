//! Quivers, dimension vectors and the bilinear forms on them.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Index};

use super::QpError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver without loops. Vertices and arrows keep their declaration
/// order, which fixes the coordinate order of dimension vectors.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vindex: HashMap<String, usize>,
    aindex: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}
impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver from `(id, tail, head)` triples naming declared vertices.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, QpError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(QpError::DuplicateVertex(v.clone()));
            }
        }
        let mut q = Quiver {
            vertices,
            arrows: Vec::new(),
            vindex,
            aindex: HashMap::new(),
        };
        for (id, t, h) in arrows {
            q.push_arrow(&id, &t, &h)?;
        }
        Ok(q)
    }

    fn push_arrow(&mut self, id: &str, tail: &str, head: &str) -> Result<(), QpError> {
        let t = self
            .vertex_index(tail)
            .ok_or_else(|| QpError::UnknownVertex(tail.to_string()))?;
        let h = self
            .vertex_index(head)
            .ok_or_else(|| QpError::UnknownVertex(head.to_string()))?;
        if t == h {
            return Err(QpError::Loop(id.to_string()));
        }
        if self.aindex.contains_key(id) {
            return Err(QpError::DuplicateArrow(id.to_string()));
        }
        self.aindex.insert(id.to_string(), self.arrows.len());
        self.arrows.push(Arrow {
            id: id.to_string(),
            tail: t,
            head: h,
        });
        Ok(())
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, QpError> {
        Self::new(
            vertices.iter().copied(),
            arrows
                .iter()
                .map(|(a, t, h)| (a.to_string(), t.to_string(), h.to_string())),
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vindex.get(v).copied()
    }

    pub fn arrow_index(&self, a: &str) -> Option<usize> {
        self.aindex.get(a).copied()
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrow_index(id).map(|i| &self.arrows[i])
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn arrows_into(&self, k: usize) -> impl Iterator<Item = &Arrow> + '_ {
        self.arrows.iter().filter(move |a| a.head == k)
    }

    pub fn arrows_out_of(&self, k: usize) -> impl Iterator<Item = &Arrow> + '_ {
        self.arrows.iter().filter(move |a| a.tail == k)
    }

    /// `m[i][j]` = number of arrows `i -> j`.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let n = self.n_vertices();
        let mut m = vec![vec![0; n]; n];
        for a in &self.arrows {
            m[a.tail][a.head] += 1;
        }
        m
    }

    /// No oriented 2-cycles (loops are excluded by construction).
    pub fn is_cluster_like(&self) -> bool {
        let m = self.adjacency();
        (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == 0 || m[j][i] == 0))
    }

    fn check_len(&self, v: &[i64]) -> Result<(), QpError> {
        if v.len() != self.n_vertices() {
            return Err(QpError::DimensionMismatch {
                expected: self.n_vertices(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `chi_Q(v, w) = sum_i v_i w_i - sum_{a} v_{t(a)} w_{h(a)}`.
    pub fn euler_form(&self, v: &[i64], w: &[i64]) -> Result<i64, QpError> {
        self.check_len(v)?;
        self.check_len(w)?;
        let diag: i64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|a| v[a.tail] * w[a.head]).sum();
        Ok(diag - off)
    }

    /// `<v, w> = chi_Q(v, w) - chi_Q(w, v)`.
    pub fn skew_form(&self, v: &[i64], w: &[i64]) -> Result<i64, QpError> {
        Ok(self.euler_form(v, w)? - self.euler_form(w, v)?)
    }

    /// `sum_a v_{t(a)} v_{h(a)}`, the dimension of the representation space.
    pub fn rep_dimension(&self, v: &[i64]) -> i64 {
        self.arrows.iter().map(|a| v[a.tail] * v[a.head]).sum()
    }
}

/// Nonnegative integer vector indexed by the vertex order of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Result<Self, QpError> {
        if let Some(&x) = entries.iter().find(|&&x| x < 0) {
            return Err(QpError::NegativeDimension(x));
        }
        Ok(DimVector(entries))
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        let v: Vec<i64> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        v.iter().all(|&x| x >= 0).then_some(DimVector(v))
    }

    /// All `u` with `0 <= u <= self`, in lexicographic order.
    pub fn below(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &b in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
            for prefix in &out {
                for x in 0..=b {
                    let mut p = prefix.clone();
                    p.push(x);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(DimVector).collect()
    }

    /// Parses `"1,2,0"`.
    pub fn parse(s: &str) -> Result<Self, QpError> {
        let entries: Result<Vec<i64>, _> = s
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<i64>())
            .collect();
        let entries = entries.map_err(|_| QpError::Parse(format!("bad dimension vector {s:?}")))?;
        Self::new(entries)
    }
}

impl Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::from_strs(&["1", "2"], &[("b", "1", "2")]).unwrap()
    }

    #[test]
    fn euler_and_skew_on_a2() {
        let q = a2();
        assert_eq!(q.euler_form(&[1, 0], &[0, 1]).unwrap(), -1);
        assert_eq!(q.euler_form(&[0, 1], &[1, 0]).unwrap(), 0);
        assert_eq!(q.skew_form(&[1, 0], &[0, 1]).unwrap(), -1);
        assert!(q.euler_form(&[1], &[1, 0]).is_err());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Quiver::from_strs(&["1"], &[("x", "1", "1")]),
            Err(QpError::Loop(_))
        ));
        assert!(matches!(
            Quiver::from_strs(&["1", "2"], &[("x", "1", "2"), ("x", "2", "1")]),
            Err(QpError::DuplicateArrow(_))
        ));
        assert!(matches!(
            Quiver::from_strs(&["1"], &[("x", "1", "3")]),
            Err(QpError::UnknownVertex(_))
        ));
        let two_cycle = Quiver::from_strs(&["1", "2"], &[("x", "1", "2"), ("y", "2", "1")]).unwrap();
        assert!(!two_cycle.is_cluster_like());
        assert!(a2().is_cluster_like());
    }

    #[test]
    fn dim_vectors() {
        let v = DimVector::parse("1, 2").unwrap();
        assert_eq!(v.below().len(), 6);
        assert!(DimVector::new(vec![-1]).is_err());
        assert_eq!(v.to_string(), "(1,2)");
        assert_eq!(v.checked_sub(&DimVector::unit(2, 0)).unwrap(), DimVector::new(vec![0, 2]).unwrap());
        assert!(DimVector::zero(2).checked_sub(&v).is_none());
    }
}
