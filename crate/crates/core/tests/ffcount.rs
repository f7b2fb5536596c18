use num_bigint::{BigInt, BigUint};
use qdt::ffcount::*;
use qdt::fixtures;
use qdt::mutation::mutate_qp;
use qdt::qp::*;
use qdt::qseries::CountPoly;

const SMALL: f64 = 3e5;

fn boxes(v: &[i64]) -> Vec<Vec<i64>> {
    DimVector::new(v.to_vec()).unwrap().below().into_iter().map(|d| d.into_vec()).collect()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Fixture QPs with a cut, plus the mutated conifold.
fn cases() -> Vec<(String, Qp, Cut)> {
    let mut out = Vec::new();
    for (name, f) in fixtures::all() {
        if let Some(cut) = f.cut {
            out.push((name.to_string(), f.qp, cut));
        }
    }
    let c = fixtures::conifold();
    let m = mutate_qp(&c.qp, c.cut.as_ref().unwrap(), 1).unwrap();
    out.push(("conifold'".into(), m.qp, m.cut));
    out
}

#[test]
fn three_cycle_counts() {
    let f = fixtures::three_cycle();
    let cut = f.cut.unwrap();
    for p in [2u64, 3, 5, 7] {
        let n = count_points(&f.qp, &cut, &[1, 1, 1], p, CountFilter::None, DEFAULT_BUDGET).unwrap();
        assert_eq!(n, big(2 * p - 1));
    }
    let poly = count_polynomial(&f.qp, &cut, &[1, 1, 1], CountFilter::None, &CountOptions::default()).unwrap();
    assert_eq!(poly.poly, CountPoly::from_i64s(&[-1, 2]));
}

#[test]
fn conifold_counts() {
    let f = fixtures::conifold();
    let cut = f.cut.unwrap();
    let v = [1, 1, 1, 1];
    assert_eq!(count_points(&f.qp, &cut, &v, 2, CountFilter::None, DEFAULT_BUDGET).unwrap(), big(46));
    let poly = count_polynomial(&f.qp, &cut, &v, CountFilter::None, &CountOptions::default()).unwrap();
    assert_eq!(poly.poly, CountPoly::from_i64s(&[0, 1, -1, -2, 2, 1]));
    assert_eq!(poly.poly.to_string(), "q^5 + 2*q^4 - 2*q^3 - q^2 + q");
    for p in [2u64, 3, 5] {
        let brute = count_points_brute(&f.qp, &cut, &v, p, CountFilter::None, 1e6).unwrap();
        assert_eq!(BigInt::from(brute), poly.poly.eval_u64(p));
    }
}

#[test]
fn trivial_polynomials() {
    let one = fixtures::one_vertex();
    for n in 0..4 {
        let r = count_polynomial(&one.qp, &Cut::empty(), &[n], CountFilter::None, &CountOptions::default()).unwrap();
        assert_eq!(r.poly, CountPoly::one());
    }
    let a2 = fixtures::a2();
    let r = count_polynomial(&a2.qp, &Cut::empty(), &[1, 1], CountFilter::None, &CountOptions::default()).unwrap();
    assert_eq!(r.poly, CountPoly::q_pow(1));
    assert_eq!(r.samples.len(), 2);
}

#[test]
fn trace_fibres() {
    let f = fixtures::three_cycle();
    assert_eq!(trace_counts(&f.qp, &[1, 1, 1], 2, SMALL).unwrap(), (big(7), big(1)));
    assert_eq!(trace_counts(&f.qp, &[1, 1, 1], 3, SMALL).unwrap(), (big(19), big(4)));
    let a2 = fixtures::a2();
    assert_eq!(trace_counts(&a2.qp, &[2, 1], 3, SMALL).unwrap(), (big(9), big(0)));
}

#[test]
fn vanishing_cycle_identity() {
    for (name, qp, cut) in cases() {
        let ones = vec![1; qp.quiver.n_vertices()];
        for v in boxes(&ones).into_iter().chain([vec![2; qp.quiver.n_vertices()]]) {
            for p in [2u64, 3] {
                let Ok((zero, one)) = trace_counts(&qp, &v, p, SMALL) else {
                    continue;
                };
                let n = count_points(&qp, &cut, &v, p, CountFilter::None, DEFAULT_BUDGET).unwrap();
                let d = qp.quiver.cut_form(&cut, &v, &v).unwrap();
                let lhs = BigInt::from(one) - BigInt::from(zero);
                let rhs = -BigInt::from(p).pow(d as u32) * BigInt::from(n);
                assert_eq!(lhs, rhs, "{name} v={v:?} p={p}");
            }
        }
    }
}

#[test]
fn kernel_matches_brute_force() {
    let mut checked = 0;
    for (name, qp, cut) in cases() {
        let nv = qp.quiver.n_vertices();
        let top = if nv <= 3 { vec![2; nv] } else { vec![1; nv] };
        let mut filters = vec![CountFilter::None];
        for k in 0..nv {
            filters.push(CountFilter::SubSimpleVanishing(k));
            filters.push(CountFilter::QuotSimpleVanishing(k));
        }
        let mut vs = boxes(&top);
        if nv == 4 {
            vs.extend([vec![2, 1, 1, 0], vec![1, 2, 1, 0], vec![2, 1, 1, 1], vec![1, 1, 2, 1]]);
        }
        for v in vs {
            for &filter in &filters {
                for p in [2u64, 3] {
                    let Ok(brute) = count_points_brute(&qp, &cut, &v, p, filter, SMALL) else {
                        continue;
                    };
                    let fast = count_points(&qp, &cut, &v, p, filter, DEFAULT_BUDGET).unwrap();
                    assert_eq!(fast, brute, "{name} v={v:?} {filter:?} p={p}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 500, "only {checked} instances");
}

#[test]
fn kernel_matches_brute_force_on_all_cuts() {
    let f = fixtures::p1xp1();
    for cut in f.qp.find_cuts(true) {
        for v in [[1, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]] {
            let brute = count_points_brute(&f.qp, &cut, &v, 2, CountFilter::None, SMALL).unwrap();
            let fast = count_points(&f.qp, &cut, &v, 2, CountFilter::None, DEFAULT_BUDGET).unwrap();
            assert_eq!(fast, brute, "{cut} {v:?}");
        }
    }
}

#[test]
fn filter_consistency() {
    for (name, qp, cut) in cases() {
        let nv = qp.quiver.n_vertices();
        for v in boxes(&vec![if nv <= 3 { 2 } else { 1 }; nv]) {
            let all = count_points(&qp, &cut, &v, 3, CountFilter::None, DEFAULT_BUDGET).unwrap();
            for k in 0..nv {
                for filter in [CountFilter::SubSimpleVanishing(k), CountFilter::QuotSimpleVanishing(k)] {
                    let n = count_points(&qp, &cut, &v, 3, filter, DEFAULT_BUDGET).unwrap();
                    assert!(n <= all, "{name} {v:?} {filter:?}");
                    if v[k] == 0 {
                        assert_eq!(n, all);
                    }
                }
            }
        }
    }
}

#[test]
fn large_mutated_dimensions_are_polynomial() {
    let c = fixtures::conifold();
    let m = mutate_qp(&c.qp, c.cut.as_ref().unwrap(), 1).unwrap();
    for v in [[1, 6, 3, 0], [2, 4, 2, 0], [1, 4, 2, 1], [1, 2, 1, 2]] {
        let r = count_polynomial(&m.qp, &m.cut, &v, CountFilter::None, &CountOptions::default()).unwrap();
        assert_eq!(r.samples.last().unwrap().0, r.holdout);
    }
}

#[test]
fn gl_order_counts_invertible_matrices() {
    for n in 0..=3usize {
        for p in [2u64, 3] {
            let mut count = 0u64;
            let total = p.pow((n * n) as u32);
            for idx in 0..total {
                let mut x = idx;
                let data: Vec<u32> = (0..n * n)
                    .map(|_| {
                        let d = (x % p) as u32;
                        x /= p;
                        d
                    })
                    .collect();
                if FpMatrix::from_flat(p as u32, n, n, &data).rank() == n {
                    count += 1;
                }
            }
            assert_eq!(gl_order(n).eval_u64(p), BigInt::from(count));
        }
    }
}

#[test]
fn errors() {
    let f = fixtures::conifold();
    let cut = f.cut.unwrap();
    assert!(matches!(
        count_points(&f.qp, &cut, &[1, 1, 1, 1], 4, CountFilter::None, DEFAULT_BUDGET),
        Err(CountError::NotPrime(4))
    ));
    assert!(matches!(
        count_points(&f.qp, &Cut::new(["b1"]), &[1, 1, 1, 1], 2, CountFilter::None, DEFAULT_BUDGET),
        Err(CountError::NotACut)
    ));
    assert!(matches!(
        count_points_brute(&f.qp, &cut, &[3, 3, 3, 3], 5, CountFilter::None, DEFAULT_BUDGET),
        Err(CountError::BudgetExceeded { .. })
    ));
    assert!(matches!(
        trace_counts(&f.qp, &[2, 2, 2, 2], 5, DEFAULT_BUDGET),
        Err(CountError::BudgetExceeded { .. })
    ));
}
