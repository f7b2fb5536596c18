use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::qp::Quiver;
use crate::qseries::TRational;

use super::{QTorusError, Region};

/// Truncated element of the completed quantum torus: `sum_v c_v y_v` over a
/// downward-closed region, with `y_u y_w = t^<u,w> y_(u+w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSeries {
    skew: Vec<Vec<i64>>,
    region: Region,
    coeffs: BTreeMap<Vec<i64>, TRational>,
}

#[derive(Serialize)]
pub struct CoeffJson {
    pub v: Vec<i64>,
    pub coeff: String,
}

/// `<e_i, e_j>` for all vertex pairs.
pub fn skew_matrix(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.n_vertices();
    let e = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>();
    (0..n)
        .map(|i| (0..n).map(|j| q.skew_form(&e(i), &e(j)).unwrap()).collect())
        .collect()
}

impl TorusSeries {
    pub fn zero(skew: Vec<Vec<i64>>, region: Region) -> Self {
        TorusSeries {
            skew,
            region,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(skew: Vec<Vec<i64>>, region: Region) -> Self {
        let mut s = Self::zero(skew, region);
        let n = s.region.rank();
        s.set(vec![0; n], TRational::one());
        s
    }

    /// `c y_v`, or zero if `v` lies outside the region.
    pub fn monomial(skew: Vec<Vec<i64>>, region: Region, v: Vec<i64>, c: TRational) -> Self {
        let mut s = Self::zero(skew, region);
        s.set(v, c);
        s
    }

    pub fn pairing(&self, u: &[i64], w: &[i64]) -> i64 {
        let mut s = 0;
        for (i, ui) in u.iter().enumerate() {
            if *ui == 0 {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                s += ui * self.skew[i][j] * wj;
            }
        }
        s
    }

    pub fn skew(&self) -> &[Vec<i64>] {
        &self.skew
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn coeff(&self, v: &[i64]) -> TRational {
        self.coeffs.get(v).cloned().unwrap_or_else(TRational::zero)
    }

    /// Nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &TRational)> {
        self.coeffs.iter()
    }

    pub fn set(&mut self, v: Vec<i64>, c: TRational) {
        if !self.region.contains(&v) || c.is_zero() {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, c);
        }
    }

    /// Same coefficients on a smaller region.
    pub fn truncate(&self, region: &Region) -> Self {
        let region = self.region.intersect(region);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(v, _)| region.contains(v))
            .map(|(v, c)| (v.clone(), c.clone()))
            .collect();
        TorusSeries {
            skew: self.skew.clone(),
            region,
            coeffs,
        }
    }

    /// Product on the intersection of both regions.
    pub fn mul(&self, rhs: &TorusSeries) -> TorusSeries {
        assert_eq!(self.skew, rhs.skew, "series over different tori");
        let region = self.region.intersect(&rhs.region);
        let mut acc: BTreeMap<Vec<i64>, TRational> = BTreeMap::new();
        for (u, a) in &self.coeffs {
            for (w, b) in &rhs.coeffs {
                let v: Vec<i64> = u.iter().zip(w).map(|(x, y)| x + y).collect();
                if !region.contains(&v) {
                    continue;
                }
                let term = (a * b).shift(self.pairing(u, w));
                let slot = acc.entry(v).or_insert_with(TRational::zero);
                *slot = &*slot + &term;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TorusSeries {
            skew: self.skew.clone(),
            region,
            coeffs: acc,
        }
    }

    pub fn add(&self, rhs: &TorusSeries) -> TorusSeries {
        let region = self.region.intersect(&rhs.region);
        let mut out = Self::zero(self.skew.clone(), region.clone());
        for v in region.iter() {
            out.set(v.clone(), &self.coeff(v) + &rhs.coeff(v));
        }
        out
    }

    /// Two-sided inverse; the constant term must be 1.
    pub fn inverse(&self) -> Result<TorusSeries, QTorusError> {
        let n = self.region.rank();
        let zero = vec![0; n];
        if !self.coeff(&zero).is_one() {
            return Err(QTorusError::NonUnitConstantTerm);
        }
        let mut out = Self::one(self.skew.clone(), self.region.clone());
        for v in self.region.by_degree() {
            if v == &zero {
                continue;
            }
            let mut c = TRational::zero();
            for (u, a) in &self.coeffs {
                if u == &zero || u.iter().zip(v).any(|(x, y)| x > y) {
                    continue;
                }
                let w: Vec<i64> = v.iter().zip(u).map(|(x, y)| x - y).collect();
                let b = out.coeff(&w);
                if b.is_zero() {
                    continue;
                }
                c = &c + &(a * &b).shift(self.pairing(u, &w));
            }
            out.set(v.clone(), -c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<CoeffJson> {
        self.region
            .iter()
            .map(|v| CoeffJson {
                v: v.clone(),
                coeff: self.coeff(v).to_string(),
            })
            .collect()
    }
}

impl fmt::Display for TorusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(v, c)| {
                let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("[{}] y({})", c, v.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The quantum dilogarithm `E(y_(e_k)) = sum_n t^(n^2) / |GL_n|(t^2) y_(n e_k)`.
pub fn dilog(skew: Vec<Vec<i64>>, k: usize, region: &Region) -> TorusSeries {
    let mut s = TorusSeries::one(skew, region.clone());
    let mut v = vec![0; region.rank()];
    for n in 1.. {
        v[k] = n;
        if !region.contains(&v) {
            break;
        }
        s.set(v.clone(), dilog_coefficient(n as u64));
    }
    s
}

/// `t^(n^2) / |GL_n|(t^2)`.
pub fn dilog_coefficient(n: u64) -> TRational {
    TRational::inverse_gl_product((n * n) as i64, &[n])
}
