//! Cyclotomic polynomials and factor extraction.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::laurent::LaurentPoly;

fn cache() -> &'static Mutex<HashMap<u32, Arc<LaurentPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<LaurentPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial in `t`.
pub fn cyclotomic(n: u32) -> Arc<LaurentPoly> {
    assert!(n >= 1);
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // t^n - 1 divided by every Phi_d with d | n, d < n.
    let mut coeffs = vec![BigInt::from(0); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::one();
    let mut p = LaurentPoly::from_coeffs(0, coeffs);
    for d in 1..n {
        if n % d == 0 {
            p = p
                .div_exact_monic(&cyclotomic(d))
                .expect("cyclotomic divisor");
        }
    }
    let p = Arc::new(p);
    cache().lock().unwrap().insert(n, p.clone());
    p
}

pub fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// All `n` with `phi(n) <= d`, ascending.
pub fn indices_up_to_degree(d: usize) -> Vec<u32> {
    if d == 0 {
        return Vec::new();
    }
    // phi(n) >= sqrt(n / 2)
    let bound = 2 * (d as u64) * (d as u64) + 2;
    (1..=bound as u32)
        .filter(|&n| euler_phi(n) as usize <= d)
        .collect()
}

/// Divides out `Phi_n` as often as possible, returning the multiplicity.
pub fn strip_factor(p: &mut LaurentPoly, n: u32, limit: u32) -> u32 {
    let phi = cyclotomic(n);
    let mut count = 0;
    while count < limit && p.span() >= phi.span() {
        match p.div_exact_monic(&phi) {
            Some(q) => {
                *p = q;
                count += 1;
            }
            None => break,
        }
    }
    count
}

/// Splits a polynomial (nonzero constant term) into its cyclotomic part and
/// the cofactor.
pub fn extract_cyclotomic(p: &LaurentPoly) -> (BTreeMap<u32, u32>, LaurentPoly) {
    let mut rest = p.clone();
    let mut found = BTreeMap::new();
    for n in indices_up_to_degree(p.span()) {
        if (euler_phi(n) as usize) > rest.span() {
            continue;
        }
        let e = strip_factor(&mut rest, n, u32::MAX);
        if e > 0 {
            found.insert(n, e);
        }
    }
    (found, rest)
}

/// Product of `Phi_n^e` over the map.
pub fn product(factors: &BTreeMap<u32, u32>) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for (&n, &e) in factors {
        let phi = cyclotomic(n);
        for _ in 0..e {
            acc = &acc * &phi;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), LaurentPoly::from_i64s(0, &[-1, 1]));
        assert_eq!(*cyclotomic(2), LaurentPoly::from_i64s(0, &[1, 1]));
        assert_eq!(*cyclotomic(4), LaurentPoly::from_i64s(0, &[1, 0, 1]));
        assert_eq!(*cyclotomic(6), LaurentPoly::from_i64s(0, &[1, -1, 1]));
        assert_eq!(cyclotomic(12).span(), 4);
    }

    #[test]
    fn extraction_recovers_factors() {
        // (t^2 - 1)^2 (t^3 - 1)(2t + 3)
        let t2 = LaurentPoly::from_i64s(0, &[-1, 0, 1]);
        let t3 = LaurentPoly::from_i64s(0, &[-1, 0, 0, 1]);
        let extra = LaurentPoly::from_i64s(0, &[3, 2]);
        let p = &(&(&t2 * &t2) * &t3) * &extra;
        let (f, rest) = extract_cyclotomic(&p);
        assert_eq!(f.get(&1), Some(&3));
        assert_eq!(f.get(&2), Some(&2));
        assert_eq!(f.get(&3), Some(&1));
        assert_eq!(rest, extra);
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(13), 12);
    }
}
