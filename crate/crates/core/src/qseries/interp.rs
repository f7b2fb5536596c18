//! Exact polynomial interpolation over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::countpoly::CountPoly;
use super::QSeriesError;

/// The polynomial of degree at most `degree_bound` through the samples.
///
/// Uses the first `degree_bound + 1` distinct abscissae and checks every
/// remaining sample against the result.
pub fn lagrange_interpolate(
    samples: &[(u64, BigInt)],
    degree_bound: usize,
) -> Result<CountPoly, QSeriesError> {
    let mut used: Vec<(u64, BigInt)> = Vec::with_capacity(degree_bound + 1);
    let mut extra = Vec::new();
    for (x, y) in samples {
        if let Some((_, y0)) = used.iter().find(|(x0, _)| x0 == x) {
            if y0 != y {
                return Err(QSeriesError::InconsistentSamples { x: *x });
            }
            continue;
        }
        if used.len() <= degree_bound {
            used.push((*x, y.clone()));
        } else {
            extra.push((*x, y.clone()));
        }
    }
    if used.len() < degree_bound + 1 {
        return Err(QSeriesError::InsufficientSamples {
            needed: degree_bound + 1,
            got: used.len(),
        });
    }
    let xs: Vec<BigRational> = used
        .iter()
        .map(|(x, _)| BigRational::from_integer(BigInt::from(*x)))
        .collect();
    // Newton divided differences.
    let mut dd: Vec<BigRational> = used
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone()))
        .collect();
    let n = dd.len();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Expand the Newton form into monomials.
    let mut poly = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (q - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for j in 0..n {
            if poly[j].is_zero() {
                continue;
            }
            if j + 1 < n {
                next[j + 1] += &poly[j];
            }
            next[j] -= &poly[j] * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    let mut coeffs = Vec::with_capacity(n);
    for c in poly {
        if !c.denom().is_one() {
            return Err(QSeriesError::NonIntegerCoefficients);
        }
        coeffs.push(c.to_integer());
    }
    let result = CountPoly::from_coeffs(coeffs);
    for (x, y) in extra {
        if result.eval_u64(x) != y {
            return Err(QSeriesError::InconsistentSamples { x });
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[(u64, i64)]) -> Vec<(u64, BigInt)> {
        v.iter().map(|&(x, y)| (x, BigInt::from(y))).collect()
    }

    #[test]
    fn linear_fit() {
        let p = lagrange_interpolate(&s(&[(2, 3), (3, 5), (5, 9)]), 1).unwrap();
        assert_eq!(p, CountPoly::from_i64s(&[-1, 2]));
    }

    #[test]
    fn constant_and_square() {
        let p = lagrange_interpolate(&s(&[(2, 7), (3, 7)]), 1).unwrap();
        assert_eq!(p, CountPoly::from_i64s(&[7]));
        let p = lagrange_interpolate(&s(&[(2, 4), (3, 9), (5, 25)]), 2).unwrap();
        assert_eq!(p, CountPoly::q_pow(2));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            lagrange_interpolate(&s(&[(2, 4)]), 1),
            Err(QSeriesError::InsufficientSamples { .. })
        ));
        assert!(matches!(
            lagrange_interpolate(&s(&[(2, 0), (3, 1)]), 1),
            Ok(_)
        ));
        assert!(matches!(
            lagrange_interpolate(&s(&[(2, 0), (4, 1)]), 1),
            Err(QSeriesError::NonIntegerCoefficients)
        ));
        assert!(matches!(
            lagrange_interpolate(&s(&[(2, 3), (3, 5), (5, 10)]), 1),
            Err(QSeriesError::InconsistentSamples { x: 5 })
        ));
    }

    #[test]
    fn round_trip_on_samples() {
        let truth = CountPoly::from_i64s(&[0, 1, -1, -2, 2, 1]);
        let samples: Vec<(u64, BigInt)> = [2u64, 3, 5, 7, 11, 13, 17]
            .iter()
            .map(|&p| (p, truth.eval_u64(p)))
            .collect();
        let p = lagrange_interpolate(&samples, 5).unwrap();
        assert_eq!(p, truth);
        for (x, y) in &samples {
            assert_eq!(&p.eval_u64(*x), y);
        }
    }
}
