//! Prime fields and dense matrices over them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// 2, 3, 5, 7, ...
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64 % p as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    s0.rem_euclid(p as i64) as u32
}

/// Reduces a rational number mod `p`; `None` when `p` divides the denominator.
pub fn reduce_rational(x: &BigRational, p: u32) -> Option<u32> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb);
    if d.is_zero() {
        return None;
    }
    let n = x.numer().mod_floor(&pb).to_u32().unwrap();
    let d = d.to_u32().unwrap();
    Some(((n as u64 * inv_mod(d, p) as u64) % p as u64) as u32)
}

/// Row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.p, self.to_rows())
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    /// Fills from a flat row-major slice.
    pub fn from_flat(p: u32, rows: usize, cols: usize, data: &[u32]) -> Self {
        assert_eq!(data.len(), rows * cols);
        FpMatrix {
            p,
            rows,
            cols,
            data: data.iter().map(|x| x % p).collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * rhs.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, rhs: &FpMatrix, c: u32) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        let p = self.p as u64;
        for (x, y) in self.data.iter_mut().zip(&rhs.data) {
            *x = ((*x as u64 + c as u64 * *y as u64) % p) as u32;
        }
    }

    pub fn neg(&self) -> FpMatrix {
        let p = self.p;
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| (p - x) % p).collect(),
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(p: u32, cols: usize, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
        }
        FpMatrix { p, rows, cols, data }
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(p: u32, rows: usize, blocks: &[&FpMatrix]) -> FpMatrix {
        let refs: Vec<FpMatrix> = blocks.iter().map(|b| b.transpose()).collect();
        let r: Vec<&FpMatrix> = refs.iter().collect();
        FpMatrix::vstack(p, rows, &r).transpose()
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.set(r, j, self.get(i, j));
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                m.set(i, c, self.get(i, j));
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m.data, m.rows, m.cols, m.p);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut d = self.data.clone();
        rref_in_place(&mut d, self.rows, self.cols, self.p).len()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = FpMatrix::hstack(self.p, n, &[self, &FpMatrix::identity(self.p, n)]);
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }
}

/// Gauss-Jordan elimination on a row-major buffer; returns pivot columns.
pub fn rref_in_place(data: &mut [u32], rows: usize, cols: usize, p: u32) -> Vec<usize> {
    let pm = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(data[r * cols + c], p) as u64;
        for j in c..cols {
            data[r * cols + j] = ((data[r * cols + j] as u64 * inv) % pm) as u32;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c] as u64;
            if f == 0 {
                continue;
            }
            let nf = pm - f;
            for j in c..cols {
                let v = data[r * cols + j] as u64;
                if v != 0 {
                    data[i * cols + j] = ((data[i * cols + j] as u64 + nf * v) % pm) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
