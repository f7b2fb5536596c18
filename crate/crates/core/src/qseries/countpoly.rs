//! Integer polynomials in `q`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::laurent::{write_terms, LaurentPoly};

/// `coeffs[i]` is the coefficient of `q^i`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CountPoly {
    coeffs: Vec<BigInt>,
}

impl CountPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        Self::from_coeffs(c)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CountPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    pub fn eval_u64(&self, q: u64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// The same polynomial with `q = t^2`.
    pub fn to_laurent_in_t(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(0, self.coeffs.clone()).inflate(2)
    }
}

impl Add for &CountPoly {
    type Output = CountPoly;
    fn add(self, rhs: &CountPoly) -> CountPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in rhs.coeffs.iter().enumerate() {
            c[i] += x;
        }
        CountPoly::from_coeffs(c)
    }
}

impl Sub for &CountPoly {
    type Output = CountPoly;
    fn sub(self, rhs: &CountPoly) -> CountPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in rhs.coeffs.iter().enumerate() {
            c[i] -= x;
        }
        CountPoly::from_coeffs(c)
    }
}

impl Mul for &CountPoly {
    type Output = CountPoly;
    fn mul(self, rhs: &CountPoly) -> CountPoly {
        if self.is_zero() || rhs.is_zero() {
            return CountPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        CountPoly::from_coeffs(c)
    }
}

impl fmt::Display for CountPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            "q",
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(i, c)| (i as i64, BigRational::from_integer(c.clone()))),
        )
    }
}

/// Serializes as the ascending coefficient array.
impl Serialize for CountPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_eval() {
        let p = CountPoly::from_i64s(&[0, 1, -1, -2, 2, 1]);
        assert_eq!(p.to_string(), "q^5 + 2*q^4 - 2*q^3 - q^2 + q");
        assert_eq!(p.eval_u64(2), BigInt::from(46));
        assert_eq!(CountPoly::from_i64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn ring_ops() {
        let a = CountPoly::from_i64s(&[-1, 1]);
        let sq = &a * &a;
        assert_eq!(sq, CountPoly::from_i64s(&[1, -2, 1]));
        assert_eq!(&(&sq - &sq) + &a, a);
        assert_eq!(
            a.to_laurent_in_t(),
            LaurentPoly::from_i64s(0, &[-1, 0, 1])
        );
    }
}
