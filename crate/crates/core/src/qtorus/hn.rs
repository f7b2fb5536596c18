use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::qseries::TRational;

use super::{QTorusError, TorusSeries};

/// Central charge: one value `Z(e_i)` in the upper half plane (including
/// the negative real axis) per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharge(Vec<(BigRational, BigRational)>);

impl CentralCharge {
    pub fn new(values: Vec<(BigRational, BigRational)>) -> Result<Self, QTorusError> {
        for (i, (re, im)) in values.iter().enumerate() {
            if !(im.is_positive() || (im.is_zero() && re.is_negative())) {
                return Err(QTorusError::BadCharge(format!(
                    "Z(e_{}) = {re}+{im}i is not in the upper half plane",
                    i + 1
                )));
            }
        }
        Ok(CentralCharge(values))
    }

    pub fn from_ints(values: &[(i64, i64)]) -> Result<Self, QTorusError> {
        Self::new(
            values
                .iter()
                .map(|&(a, b)| (BigRational::from_integer(a.into()), BigRational::from_integer(b.into())))
                .collect(),
        )
    }

    /// Comma-separated values such as `-1+i, 1/2+3/4i, 2i`.
    pub fn parse(s: &str) -> Result<Self, QTorusError> {
        let values = s
            .split([',', ';'])
            .map(|x| parse_complex(x.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[(BigRational, BigRational)] {
        &self.0
    }

    pub fn z(&self, v: &[i64]) -> (BigRational, BigRational) {
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        for ((a, b), &x) in self.0.iter().zip(v) {
            re += a * BigRational::from_integer(x.into());
            im += b * BigRational::from_integer(x.into());
        }
        (re, im)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, QTorusError> {
    let bad = || QTorusError::BadCharge(format!("cannot parse {s:?}"));
    let s = s.trim();
    match s {
        "" | "+" => return Ok(BigRational::one()),
        "-" => return Ok(-BigRational::one()),
        _ => {}
    }
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_complex(s: &str) -> Result<(BigRational, BigRational), QTorusError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return Ok((parse_rational(&s)?, BigRational::zero()));
    };
    let split = body
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i)
        .last();
    match split {
        Some(i) => Ok((parse_rational(&body[..i])?, parse_rational(&body[i..])?)),
        None => Ok((BigRational::zero(), parse_rational(body)?)),
    }
}

/// Compares `Arg Z(v)` with `Arg Z(w)`.
pub fn ray_compare(z: &CentralCharge, v: &[i64], w: &[i64]) -> Result<Ordering, QTorusError> {
    if v.iter().all(|&x| x == 0) || w.iter().all(|&x| x == 0) {
        return Err(QTorusError::ZeroVector);
    }
    Ok(arg_compare(&z.z(v), &z.z(w)))
}

fn arg_compare(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> Ordering {
    let cross = &b.0 * &a.1 - &a.0 * &b.1;
    cross.cmp(&BigRational::zero())
}

/// All ordered decompositions `v = v_1 + ... + v_n` into nonzero parts with
/// strictly decreasing argument.
pub fn enumerate_hn_types(z: &CentralCharge, v: &[i64]) -> Result<Vec<Vec<Vec<i64>>>, QTorusError> {
    if v.iter().all(|&x| x == 0) {
        return Err(QTorusError::ZeroVector);
    }
    let mut out = Vec::new();
    types_below(z, v, None, &mut Vec::new(), &mut out);
    Ok(out)
}

fn types_below(
    z: &CentralCharge,
    rest: &[i64],
    bound: Option<&(BigRational, BigRational)>,
    cur: &mut Vec<Vec<i64>>,
    out: &mut Vec<Vec<Vec<i64>>>,
) {
    if rest.iter().all(|&x| x == 0) {
        out.push(cur.clone());
        return;
    }
    let rest_dv = crate::qp::DimVector::new(rest.to_vec()).expect("nonnegative");
    for part in rest_dv.below() {
        let part = part.into_vec();
        if part.iter().all(|&x| x == 0) {
            continue;
        }
        let zp = z.z(&part);
        if let Some(b) = bound {
            if arg_compare(&zp, b) != Ordering::Less {
                continue;
            }
        }
        let left: Vec<i64> = rest.iter().zip(&part).map(|(a, b)| a - b).collect();
        cur.push(part);
        types_below(z, &left, Some(&zp), cur, out);
        cur.pop();
    }
}

/// Primitive integer direction of a ray in the upper half plane.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ray {
    pub re: BigInt,
    pub im: BigInt,
}

impl Ray {
    pub fn of(z: &(BigRational, BigRational)) -> Ray {
        let l = z.0.denom().lcm(z.1.denom());
        let re = z.0.numer() * (&l / z.0.denom());
        let im = z.1.numer() * (&l / z.1.denom());
        let g = re.gcd(&im);
        Ray { re: re / &g, im: im / &g }
    }

    fn as_point(&self) -> (BigRational, BigRational) {
        (BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.re, self.im)
    }
}

/// Splits `a` into one series per ray; their product in decreasing
/// argument order is `a`.
pub fn hn_factorize(a: &TorusSeries, z: &CentralCharge) -> Result<BTreeMap<Ray, TorusSeries>, QTorusError> {
    let region = a.region().clone();
    let n = region.rank();
    if !a.coeff(&vec![0; n]).is_one() {
        return Err(QTorusError::NonUnitConstantTerm);
    }
    let mut semistable: BTreeMap<Vec<i64>, TRational> = BTreeMap::new();
    let mut rays: BTreeMap<Ray, TorusSeries> = BTreeMap::new();
    for v in region.by_degree() {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let mut s = a.coeff(v);
        for ty in enumerate_hn_types(z, v)? {
            if ty.len() < 2 {
                continue;
            }
            let mut term = TRational::one();
            let mut shift = 0;
            for (i, part) in ty.iter().enumerate() {
                match semistable.get(part) {
                    Some(c) => term = &term * c,
                    None => {
                        term = TRational::zero();
                        break;
                    }
                }
                for later in &ty[i + 1..] {
                    shift += a.pairing(part, later);
                }
            }
            if !term.is_zero() {
                s = &s - &term.shift(shift);
            }
        }
        let ray = Ray::of(&z.z(v));
        let series = rays
            .entry(ray)
            .or_insert_with(|| TorusSeries::one(a.skew().to_vec(), region.clone()));
        if !s.is_zero() {
            series.set(v.clone(), s.clone());
            semistable.insert(v.clone(), s);
        }
    }
    Ok(rays)
}

/// Product of the ray factors in strictly decreasing argument order.
pub fn hn_reconstruct(factors: &BTreeMap<Ray, TorusSeries>) -> Option<TorusSeries> {
    let mut rays: Vec<(&Ray, &TorusSeries)> = factors.iter().collect();
    rays.sort_by(|a, b| arg_compare(&b.0.as_point(), &a.0.as_point()));
    let mut it = rays.into_iter();
    let (_, first) = it.next()?;
    Some(it.fold(first.clone(), |acc, (_, s)| acc.mul(s)))
}

/// Rays of `factors` in decreasing argument order.
pub fn rays_in_order(factors: &BTreeMap<Ray, TorusSeries>) -> Vec<Ray> {
    let mut rays: Vec<Ray> = factors.keys().cloned().collect();
    rays.sort_by(|a, b| arg_compare(&b.as_point(), &a.as_point()));
    rays
}
