use std::cmp::Ordering;

use proptest::prelude::*;
use qdt::ffcount::{CountFilter, CountOptions};
use qdt::fixtures;
use qdt::mutation::MutationError;
use qdt::qp::*;
use qdt::qseries::{LaurentPoly, TRational};
use qdt::qtorus::*;

fn boxed(v: &[i64]) -> Region {
    Region::boxed(&DimVector::new(v.to_vec()).unwrap())
}

fn opts() -> CountOptions {
    CountOptions::default()
}

/// `t^(n^2) / prod_{i<n} (t^(2n) - t^(2i))`, expanded by hand.
fn dilog_oracle(n: i64) -> TRational {
    let mut den = LaurentPoly::one();
    for i in 0..n {
        den = &den * &(&LaurentPoly::t_pow(2 * n) - &LaurentPoly::t_pow(2 * i));
    }
    TRational::from_fraction(&LaurentPoly::t_pow(n * n), &den).unwrap()
}

#[test]
fn dilog_coefficients() {
    assert_eq!(dilog_coefficient(0), TRational::one());
    assert_eq!(dilog_coefficient(1).to_string(), "t/(t^2 - 1)");
    for n in 0..8 {
        assert_eq!(dilog_coefficient(n as u64), dilog_oracle(n));
    }
}

#[test]
fn one_vertex_series_is_dilog() {
    let f = fixtures::one_vertex();
    let s = dt_series(&f.qp, &Cut::empty(), &boxed(&[6]), CountFilter::None, &opts()).unwrap();
    for n in 0..=6 {
        assert_eq!(s.coeff(&[n]), dilog_oracle(n));
    }
}

#[test]
fn simples_have_dilog_coefficient() {
    for (name, f) in fixtures::all() {
        let Some(cut) = f.cut else { continue };
        let n = f.qp.quiver.n_vertices();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            let c = refined_dt(&f.qp, &cut, &e, CountFilter::None, &opts()).unwrap();
            assert_eq!(c.to_string(), "t/(t^2 - 1)", "{name} e_{i}");
        }
    }
}

#[test]
fn conifold_invariant() {
    let f = fixtures::conifold();
    let c = refined_dt(&f.qp, f.cut.as_ref().unwrap(), &[1, 1, 1, 1], CountFilter::None, &opts()).unwrap();
    let num = LaurentPoly::from_coeffs(0, vec![0, 0, 1, 0, -1, 0, -2, 0, 2, 0, 1].into_iter().map(Into::into).collect());
    let t2m1 = &LaurentPoly::t_pow(2) - &LaurentPoly::one();
    let den = &(&t2m1 * &t2m1) * &(&t2m1 * &t2m1);
    assert_eq!(c, TRational::from_fraction(&num, &den).unwrap());
}

#[test]
fn dilog_inverse() {
    for n in 1..4 {
        let region = boxed(&vec![3; n]);
        let skew = skew_matrix(&Quiver::from_strs(
            &(1..=n).map(|i| Box::leak(i.to_string().into_boxed_str()) as &str).collect::<Vec<_>>(),
            &[],
        ).unwrap());
        for k in 0..n {
            let e = dilog(skew.clone(), k, &region);
            let prod = e.mul(&e.inverse().unwrap());
            assert_eq!(prod, TorusSeries::one(skew.clone(), region.clone()));
        }
    }
}

fn a2_skew() -> Vec<Vec<i64>> {
    skew_matrix(&fixtures::a2().qp.quiver)
}

proptest! {
    #[test]
    fn y_relation(u in prop::collection::vec(0i64..3, 2), w in prop::collection::vec(0i64..3, 2)) {
        let region = boxed(&[4, 4]);
        let skew = a2_skew();
        let yu = TorusSeries::monomial(skew.clone(), region.clone(), u.clone(), TRational::one());
        let yw = TorusSeries::monomial(skew.clone(), region.clone(), w.clone(), TRational::one());
        let sum: Vec<i64> = u.iter().zip(&w).map(|(a, b)| a + b).collect();
        let expected = -(u[0] * w[1]) + u[1] * w[0];
        let target = TorusSeries::monomial(skew, region, sum, TRational::t_pow(expected));
        prop_assert_eq!(yu.mul(&yw), target);
    }

    #[test]
    fn associativity(coeffs in prop::collection::vec(-2i64..3, 27)) {
        let region = boxed(&[2, 2]);
        let skew = a2_skew();
        let mk = |c: &[i64]| {
            let mut s = TorusSeries::zero(skew.clone(), region.clone());
            for (i, v) in region.iter().enumerate() {
                s.set(v.clone(), TRational::from(c[i]).shift(c[(i + 3) % 9]));
            }
            s
        };
        let (a, b, c) = (mk(&coeffs[0..9]), mk(&coeffs[9..18]), mk(&coeffs[18..27]));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}

#[test]
fn three_cycle_cut_independence() {
    let f = fixtures::three_cycle();
    let region = boxed(&[2, 2, 2]);
    let series: Vec<TorusSeries> = ["a", "b", "c"]
        .iter()
        .map(|a| dt_series(&f.qp, &Cut::new([*a]), &region, CountFilter::None, &opts()).unwrap())
        .collect();
    assert_eq!(series[0], series[1]);
    assert_eq!(series[0], series[2]);
}

#[test]
fn dimer_matching_independence() {
    let dimer = fixtures::square_torus_dimer();
    let qp = dimer.to_qp().unwrap();
    let region = Region::total_degree(4, 2);
    let mut first = None;
    for m in dimer.perfect_matchings() {
        let cut = dimer.matching_to_cut(&m).unwrap();
        let s = dt_series(&qp, &cut, &region, CountFilter::None, &opts()).unwrap();
        match &first {
            None => first = Some(s),
            Some(f) => assert_eq!(f, &s),
        }
    }
}

#[test]
fn charges_and_rays() {
    let z = CentralCharge::parse("-1+i, 1+i").unwrap();
    assert_eq!(z, CentralCharge::from_ints(&[(-1, 1), (1, 1)]).unwrap());
    assert_eq!(ray_compare(&z, &[1, 0], &[0, 1]).unwrap(), Ordering::Greater);
    assert_eq!(ray_compare(&z, &[1, 1], &[2, 2]).unwrap(), Ordering::Equal);
    assert!(matches!(ray_compare(&z, &[0, 0], &[1, 0]), Err(QTorusError::ZeroVector)));
    let q = CentralCharge::parse("-1/2+3/4 i,2i,-3").unwrap();
    assert_eq!(q.len(), 3);
    assert!(CentralCharge::parse("1-i").is_err());
    assert!(CentralCharge::parse("x+i").is_err());
    let types = enumerate_hn_types(&z, &[1, 1]).unwrap();
    assert_eq!(types, vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 1]]]);
    assert_eq!(enumerate_hn_types(&z, &[0, 1]).unwrap(), vec![vec![vec![0, 1]]]);
}

/// All ordered decompositions, filtered by strictly decreasing argument.
fn hn_types_oracle(z: &CentralCharge, v: &[i64]) -> usize {
    fn go(z: &CentralCharge, rest: Vec<i64>, prev: Option<Vec<i64>>) -> usize {
        if rest.iter().all(|&x| x == 0) {
            return 1;
        }
        let mut n = 0;
        for part in DimVector::new(rest.clone()).unwrap().below() {
            let part = part.into_vec();
            if part.iter().all(|&x| x == 0) {
                continue;
            }
            if let Some(p) = &prev {
                if ray_compare(z, p, &part).unwrap() != Ordering::Greater {
                    continue;
                }
            }
            let left = rest.iter().zip(&part).map(|(a, b)| a - b).collect();
            n += go(z, left, Some(part));
        }
        n
    }
    go(z, v.to_vec(), None)
}

#[test]
fn hn_types_match_oracle() {
    let z = CentralCharge::from_ints(&[(-1, 1), (1, 1), (0, 1)]).unwrap();
    for v in DimVector::new(vec![2, 2, 2]).unwrap().below().into_iter().skip(1) {
        let v = v.into_vec();
        let types = enumerate_hn_types(&z, &v).unwrap();
        assert_eq!(types.len(), hn_types_oracle(&z, &v));
        assert!(types.contains(&vec![v.clone()]));
    }
}

#[test]
fn hn_roundtrip() {
    let a2 = fixtures::a2();
    let tc = fixtures::three_cycle();
    let cases = [
        (a2.qp, Cut::empty(), boxed(&[4, 4]), ["-1+i, 1+i", "1+2i, -3+i"]),
        (tc.qp, Cut::new(["a"]), boxed(&[2, 2, 2]), ["-1+i, 1+i, 2i", "1+3i, -2+i, 1/2+i"]),
    ];
    for (qp, cut, region, charges) in cases {
        let a = dt_series(&qp, &cut, &region, CountFilter::None, &opts()).unwrap();
        for z in charges {
            let z = CentralCharge::parse(z).unwrap();
            let f = hn_factorize(&a, &z).unwrap();
            assert_eq!(hn_reconstruct(&f).unwrap(), a);
        }
    }
}

#[test]
fn a2_factorization_has_three_rays() {
    let a2 = fixtures::a2();
    let a = dt_series(&a2.qp, &Cut::empty(), &boxed(&[4, 4]), CountFilter::None, &opts()).unwrap();
    let z = CentralCharge::parse("-1+i, 1+i").unwrap();
    let f = hn_factorize(&a, &z).unwrap();
    let nontrivial: Vec<String> = rays_in_order(&f)
        .into_iter()
        .filter(|r| f[r].terms().count() > 1)
        .map(|r| r.to_string())
        .collect();
    assert_eq!(nontrivial, ["(-1,1)", "(0,1)", "(1,1)"]);
    let mut one = a.clone();
    for v in a.region().iter() {
        one.set(v.clone(), TRational::from(i64::from(v.iter().all(|&x| x == 0))));
    }
    assert!(matches!(hn_factorize(&one.add(&one), &z), Err(QTorusError::NonUnitConstantTerm)));
}

#[test]
fn wallcross_a2() {
    let a2 = fixtures::a2();
    let r = wallcross_check(&a2.qp, &Cut::empty(), 0, &boxed(&[4, 4]), &opts()).unwrap();
    assert!(r.pass && r.support_ok && r.skew_preserved);
    for e in &r.entries {
        assert_eq!(e.phi_v.is_some(), e.v[1] >= e.v[0]);
    }
    assert_eq!(r.support_checked, 10);
}

#[test]
fn wallcross_inner_order_fails_on_a2() {
    let a2 = fixtures::a2();
    let r = wallcross_check_with(&a2.qp, &Cut::empty(), 0, &boxed(&[4, 4]), &opts(), DilogSide::Inner).unwrap();
    assert!(!r.pass);
    assert_eq!(r.first_counterexample.unwrap().v, vec![0, 1]);
}

#[test]
fn wallcross_conifold_small() {
    let f = fixtures::conifold();
    let r = wallcross_check(&f.qp, f.cut.as_ref().unwrap(), 1, &Region::total_degree(4, 3), &opts()).unwrap();
    assert!(r.pass, "{:?}", r.first_counterexample);
}

#[test]
fn wallcross_one_vertex() {
    let f = fixtures::one_vertex();
    let r = wallcross_check(&f.qp, &Cut::empty(), 0, &boxed(&[5]), &opts()).unwrap();
    assert!(r.pass);
}

#[test]
fn wallcross_requires_strict_source() {
    let f = fixtures::three_cycle();
    let err = wallcross_check(&f.qp, &Cut::new(["a"]), 0, &boxed(&[1, 1, 1]), &opts()).unwrap_err();
    assert!(matches!(err, QTorusError::Mutation(MutationError::NotStrictSource(_))), "{err:?}");
}
