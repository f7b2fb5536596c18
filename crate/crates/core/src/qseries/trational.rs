//! Exact rational functions in `t = q^(1/2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::countpoly::CountPoly;
use super::cyclotomic::{cyclotomic, extract_cyclotomic, product, strip_factor};
use super::laurent::{write_terms, LaurentPoly};
use super::QSeriesError;

/// A rational function `scale * num / (prod Phi_n^e * resid)`.
///
/// Canonical form: `num` is a primitive integer Laurent polynomial with
/// positive leading coefficient, `resid` is a primitive polynomial with
/// positive leading coefficient, nonzero constant term and no cyclotomic
/// factor, and numerator and denominator share no factor. Powers of `t` in
/// the denominator are absorbed into `num` as negative exponents. Structural
/// equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TRational {
    scale: BigRational,
    num: LaurentPoly,
    cyclo: BTreeMap<u32, u32>,
    resid: LaurentPoly,
}

impl Default for TRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl TRational {
    pub fn zero() -> Self {
        TRational {
            scale: BigRational::zero(),
            num: LaurentPoly::zero(),
            cyclo: BTreeMap::new(),
            resid: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(BigInt::one())
    }

    pub fn from_integer(c: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TRational {
            scale: c,
            num: LaurentPoly::one(),
            cyclo: BTreeMap::new(),
            resid: LaurentPoly::one(),
        }
    }

    /// `t^m`, the class of `L^(m/2)`.
    pub fn t_pow(m: i64) -> Self {
        TRational {
            scale: BigRational::one(),
            num: LaurentPoly::t_pow(m),
            cyclo: BTreeMap::new(),
            resid: LaurentPoly::one(),
        }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (c, prim) = p.primitive_part();
        if c.is_zero() {
            return Self::zero();
        }
        TRational {
            scale: BigRational::from_integer(c),
            num: prim,
            cyclo: BTreeMap::new(),
            resid: LaurentPoly::one(),
        }
    }

    /// `num / den` for integer Laurent polynomials.
    pub fn from_fraction(num: &LaurentPoly, den: &LaurentPoly) -> Result<Self, QSeriesError> {
        Self::build(BigRational::one(), num, den)
    }

    /// Substitutes `q = t^2`.
    pub fn from_count_poly(p: &CountPoly) -> Self {
        Self::from_laurent(&p.to_laurent_in_t())
    }

    /// `t^shift / prod_i |GL_{n_i}|(t^2)`, built directly in factored form.
    pub fn inverse_gl_product(shift: i64, dims: &[u64]) -> Self {
        let mut cyclo = BTreeMap::new();
        let mut exp = shift;
        for &n in dims {
            exp -= (n * n.saturating_sub(1)) as i64;
            for j in 1..=n {
                // t^(2j) - 1 = prod_{d | 2j} Phi_d
                let m = 2 * j as u32;
                for d in 1..=m {
                    if m % d == 0 {
                        *cyclo.entry(d).or_insert(0) += 1;
                    }
                }
            }
        }
        TRational {
            scale: BigRational::one(),
            num: LaurentPoly::t_pow(exp),
            cyclo,
            resid: LaurentPoly::one(),
        }
    }

    fn build(scale: BigRational, num: &LaurentPoly, den: &LaurentPoly) -> Result<Self, QSeriesError> {
        if den.is_zero() {
            return Err(QSeriesError::DivideByZero);
        }
        if num.is_zero() || scale.is_zero() {
            return Ok(Self::zero());
        }
        let (cd, den) = den.primitive_part();
        let shift = den.valuation();
        let den = den.shift(-shift);
        let (cyclo, resid) = extract_cyclotomic(&den);
        let (cn, num) = num.shift(-shift).primitive_part();
        let scale = scale * BigRational::new(cn, cd);
        Ok(Self::reduced(scale, num, cyclo, resid))
    }

    /// Cancels common factors; inputs must satisfy every canonical condition
    /// except coprimality.
    fn reduced(
        scale: BigRational,
        mut num: LaurentPoly,
        mut cyclo: BTreeMap<u32, u32>,
        mut resid: LaurentPoly,
    ) -> Self {
        if num.is_zero() || scale.is_zero() {
            return Self::zero();
        }
        let mut scale = scale;
        for (&n, e) in cyclo.iter_mut() {
            if *e == 0 {
                continue;
            }
            let removed = strip_factor(&mut num, n, *e);
            *e -= removed;
        }
        cyclo.retain(|_, e| *e > 0);
        if !resid.is_one() {
            let g = LaurentPoly::poly_gcd(&num.shift(-num.valuation()), &resid);
            if g.span() > 0 {
                let n2 = num.div_exact(&g).expect("gcd divides numerator");
                let r2 = resid.div_exact(&g).expect("gcd divides denominator");
                let (cn, n2) = n2.primitive_part();
                let (cr, r2) = r2.primitive_part();
                scale = scale * BigRational::new(cn, cr);
                num = n2;
                resid = r2;
            }
        }
        TRational {
            scale,
            num,
            cyclo,
            resid,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.num.is_one() && self.cyclo.is_empty() && self.resid.is_one()
    }

    /// Expanded numerator with rational coefficients.
    pub fn numerator_terms(&self) -> Vec<(i64, BigRational)> {
        self.num
            .terms()
            .map(|(e, c)| (e, &self.scale * BigRational::from_integer(c.clone())))
            .collect()
    }

    /// Expanded integer denominator polynomial.
    pub fn denominator(&self) -> LaurentPoly {
        &product(&self.cyclo) * &self.resid
    }

    pub fn is_laurent_polynomial(&self) -> bool {
        self.cyclo.is_empty() && self.resid.is_one()
    }

    pub fn inverse(&self) -> Result<Self, QSeriesError> {
        if self.is_zero() {
            return Err(QSeriesError::DivideByZero);
        }
        Self::build(self.scale.recip(), &self.denominator(), &self.num)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, QSeriesError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, QSeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Multiplies by `t^m`.
    pub fn shift(&self, m: i64) -> Self {
        if self.is_zero() || m == 0 {
            return self.clone();
        }
        TRational {
            scale: self.scale.clone(),
            num: self.num.shift(m),
            cyclo: self.cyclo.clone(),
            resid: self.resid.clone(),
        }
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        if t.is_zero() && self.num.valuation() < 0 {
            return None;
        }
        let den = self.denominator().eval_rational(t);
        if den.is_zero() {
            return None;
        }
        Some(&self.scale * self.num.eval_rational(t) / den)
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut cyclo = self.cyclo.clone();
        for (&n, &e) in &rhs.cyclo {
            let slot = cyclo.entry(n).or_insert(0);
            *slot = (*slot).max(e);
        }
        let cof = |own: &BTreeMap<u32, u32>| -> LaurentPoly {
            let mut acc = LaurentPoly::one();
            for (&n, &e) in &cyclo {
                let have = own.get(&n).copied().unwrap_or(0);
                let phi = cyclotomic(n);
                for _ in have..e {
                    acc = &acc * &phi;
                }
            }
            acc
        };
        let mut cof_a = cof(&self.cyclo);
        let mut cof_b = cof(&rhs.cyclo);
        let resid = if self.resid.is_one() && rhs.resid.is_one() {
            LaurentPoly::one()
        } else if self.resid == rhs.resid {
            self.resid.clone()
        } else {
            let g = LaurentPoly::poly_gcd(&self.resid, &rhs.resid);
            let ra = self.resid.div_exact(&g).unwrap();
            let rb = rhs.resid.div_exact(&g).unwrap();
            cof_a = &cof_a * &rb;
            cof_b = &cof_b * &ra;
            (&self.resid * &rb).primitive_part().1
        };
        let (n1, d1) = (self.scale.numer(), self.scale.denom());
        let (n2, d2) = (rhs.scale.numer(), rhs.scale.denom());
        let g = d1.gcd(d2);
        let l1 = d2 / &g;
        let l2 = d1 / &g;
        let pa = (&self.num * &cof_a).scale(&(n1 * &l1));
        let pb = (&rhs.num * &cof_b).scale(&(n2 * &l2));
        let sum = &pa + &pb;
        let (c, prim) = sum.primitive_part();
        if c.is_zero() {
            return Self::zero();
        }
        let scale = BigRational::new(c, d1 * l1);
        Self::reduced(scale, prim, cyclo, resid)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // Cancel each numerator against the other denominator first.
        let left = Self::reduced(
            BigRational::one(),
            self.num.clone(),
            rhs.cyclo.clone(),
            rhs.resid.clone(),
        );
        let right = Self::reduced(
            BigRational::one(),
            rhs.num.clone(),
            self.cyclo.clone(),
            self.resid.clone(),
        );
        let mut cyclo = left.cyclo;
        for (n, e) in right.cyclo {
            *cyclo.entry(n).or_insert(0) += e;
        }
        let resid = if left.resid.is_one() {
            right.resid
        } else if right.resid.is_one() {
            left.resid
        } else {
            &left.resid * &right.resid
        };
        TRational {
            scale: &self.scale * &rhs.scale * left.scale * right.scale,
            num: &left.num * &right.num,
            cyclo,
            resid,
        }
    }
}

impl Add for &TRational {
    type Output = TRational;
    fn add(self, rhs: &TRational) -> TRational {
        self.add_impl(rhs)
    }
}

impl Sub for &TRational {
    type Output = TRational;
    fn sub(self, rhs: &TRational) -> TRational {
        self.add_impl(&-rhs)
    }
}

impl Mul for &TRational {
    type Output = TRational;
    fn mul(self, rhs: &TRational) -> TRational {
        self.mul_impl(rhs)
    }
}

/// Panics on division by zero; use [`TRational::checked_div`] otherwise.
impl Div for &TRational {
    type Output = TRational;
    fn div(self, rhs: &TRational) -> TRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &TRational {
    type Output = TRational;
    fn neg(self) -> TRational {
        TRational {
            scale: -&self.scale,
            num: self.num.clone(),
            cyclo: self.cyclo.clone(),
            resid: self.resid.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TRational {
            type Output = TRational;
            fn $m(self, rhs: TRational) -> TRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for TRational {
    type Output = TRational;
    fn neg(self) -> TRational {
        -&self
    }
}

impl From<i64> for TRational {
    fn from(c: i64) -> Self {
        Self::from_integer(BigInt::from(c))
    }
}

impl fmt::Display for TRational {
    /// `num` when the denominator is 1, otherwise `(num)/(den)`, both expanded
    /// in descending powers of `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.numerator_terms();
        terms.reverse();
        let den = self.denominator();
        if den.is_one() {
            return write_terms(f, "t", terms.into_iter());
        }
        let simple_num = terms.len() == 1 && !terms[0].1.is_negative();
        if simple_num {
            write_terms(f, "t", terms.into_iter())?;
        } else {
            write!(f, "(")?;
            write_terms(f, "t", terms.into_iter())?;
            write!(f, ")")?;
        }
        write!(f, "/(")?;
        write!(f, "{den}")?;
        write!(f, ")")
    }
}
