//! Laurent polynomials in `t` with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs[i]` is the coefficient of `t^(low + i)`.
///
/// Normalized: the first and last stored coefficients are nonzero; the zero
/// polynomial has no coefficients and `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// `t^exp`.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(BigInt::one(), exp)
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    /// Builds a polynomial from small integer coefficients, lowest power first.
    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn valuation(&self) -> i64 {
        self.low
    }

    /// Highest exponent with nonzero coefficient (`low - 1` convention avoided:
    /// returns 0 for the zero polynomial).
    pub fn degree(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.low + self.coeffs.len() as i64 - 1
        }
    }

    /// Width `degree - valuation`, i.e. the degree of the polynomial part.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Iterates `(exponent, coefficient)` over nonzero terms, lowest first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + by,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Substitutes `t -> t^k` for `k >= 1`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        LaurentPoly::from_coeffs(self.low * k as i64, coeffs)
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits `self = c * p` with `p` primitive and positive leading coefficient.
    pub fn primitive_part(&self) -> (BigInt, LaurentPoly) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut c = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return (c, self.clone());
        }
        let coeffs = self.coeffs.iter().map(|x| x / &c).collect();
        (
            c,
            LaurentPoly {
                low: self.low,
                coeffs,
            },
        )
    }

    /// Exact division by a monic polynomial `d` with nonzero constant term.
    /// Returns `None` when the division leaves a remainder.
    pub fn div_exact_monic(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        debug_assert!(d.low == 0 && d.leading_coeff().is_some_and(|c| c.is_one()));
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let m = d.coeffs.len();
        if m == 1 {
            return Some(self.clone());
        }
        if n < m {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let q = std::mem::take(&mut rem[i + m - 1]);
            if q.is_zero() {
                continue;
            }
            for j in 0..m - 1 {
                if !d.coeffs[j].is_zero() {
                    rem[i + j] -= &q * &d.coeffs[j];
                }
            }
            quot[i] = q;
        }
        if rem[..m - 1].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::from_coeffs(self.low, quot))
    }

    /// Gcd of the polynomial parts (valuation stripped), primitive with
    /// positive leading coefficient. Plain Euclid over the rationals; used only
    /// off the hot path.
    pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let to_q = |p: &LaurentPoly| -> Vec<BigRational> {
            p.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        };
        let mut x = to_q(a);
        let mut y = to_q(b);
        while !y.is_empty() {
            let r = rat_poly_rem(&x, &y);
            x = y;
            y = r;
        }
        if x.is_empty() {
            return Self::zero();
        }
        let den_lcm = x
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs: Vec<BigInt> = x
            .iter()
            .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        LaurentPoly::from_coeffs(0, coeffs).primitive_part().1
    }

    /// Divides by `d` assuming exact divisibility over the integers after
    /// adjusting for `d`'s leading coefficient; used with gcd results.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let m = d.coeffs.len();
        if n < m {
            return None;
        }
        let lead = d.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let top = std::mem::take(&mut rem[i + m - 1]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for j in 0..m - 1 {
                if !d.coeffs[j].is_zero() {
                    rem[i + j] -= &q * &d.coeffs[j];
                }
            }
            quot[i] = q;
        }
        if rem[..m - 1].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::from_coeffs(self.low - d.low, quot))
    }

    /// Evaluates at an integer point (nonzero when negative powers occur).
    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            acc += BigRational::from_integer(c.clone()) * pow_rat(t, e);
        }
        acc
    }
}

fn pow_rat(t: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(t.clone(), e as usize)
    } else {
        num_traits::pow(t.recip(), (-e) as usize)
    }
}

fn rat_poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let top = r.last().unwrap().clone();
        if !top.is_zero() {
            let q = &top / &lead;
            let off = r.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                r[off + j] -= &q * bj;
            }
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().max(rhs.degree());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        LaurentPoly::from_coeffs(low, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, coeffs)
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.low, &self.coeffs).cmp(&(other.low, &other.coeffs))
    }
}

/// Writes a signed rational multiple of `t^e` in the canonical report style.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, var: &str, terms: I) -> fmt::Result
where
    I: Iterator<Item = (i64, BigRational)>,
{
    let mut first = true;
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{abs}*{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            "t",
            self.terms()
                .rev()
                .map(|(e, c)| (e, BigRational::from_integer(c.clone()))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_normalization() {
        let a = LaurentPoly::from_i64s(-1, &[1, 0, 1]); // t^-1 + t
        let b = LaurentPoly::from_i64s(-1, &[-1, 0, 1]); // -t^-1 + t
        let s = &a + &b;
        assert_eq!(s, LaurentPoly::from_i64s(1, &[2]));
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d.valuation(), 0);
        let p = &a * &b; // t^2 - t^-2
        assert_eq!(p, LaurentPoly::from_i64s(-2, &[-1, 0, 0, 0, 1]));
        assert_eq!(p.to_string(), "t^2 - t^-2");
    }

    #[test]
    fn exact_monic_division() {
        let t2m1 = LaurentPoly::from_i64s(0, &[-1, 0, 1]);
        let tm1 = LaurentPoly::from_i64s(0, &[-1, 1]);
        let q = t2m1.div_exact_monic(&tm1).unwrap();
        assert_eq!(q, LaurentPoly::from_i64s(0, &[1, 1]));
        assert!(tm1.div_exact_monic(&t2m1).is_none());
        let shifted = t2m1.shift(3);
        assert_eq!(shifted.div_exact_monic(&tm1).unwrap(), q.shift(3));
    }

    #[test]
    fn gcd_and_primitive() {
        let a = LaurentPoly::from_i64s(0, &[-2, 0, 2]); // 2(t^2-1)
        let b = LaurentPoly::from_i64s(0, &[3, 3]); // 3(t+1)
        assert_eq!(LaurentPoly::poly_gcd(&a, &b), LaurentPoly::from_i64s(0, &[1, 1]));
        let (c, p) = LaurentPoly::from_i64s(0, &[4, -6]).primitive_part();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(p, LaurentPoly::from_i64s(0, &[-2, 3]));
    }

    #[test]
    fn inflate_substitutes_power() {
        let q_minus_1 = LaurentPoly::from_i64s(0, &[-1, 1]);
        assert_eq!(q_minus_1.inflate(2), LaurentPoly::from_i64s(0, &[-1, 0, 1]));
    }
}
