//! Coefficients of the quantum dilogarithm and the pentagon identity on A2.
//!
//! ```bash
//! cargo run --example dilogarithm
//! ```

use qdt::ffcount::{CountFilter, CountOptions};
use qdt::fixtures;
use qdt::qp::{Cut, DimVector};
use qdt::qtorus::{
    dilog, dilog_coefficient, dt_series, hn_factorize, hn_reconstruct, skew_matrix,
    CentralCharge, Region,
};

fn main() {
    for n in 0..=5 {
        println!("E[{n}] = {}", dilog_coefficient(n));
    }

    let a2 = fixtures::a2();
    let skew = skew_matrix(&a2.qp.quiver);
    let region = Region::boxed(&DimVector::new(vec![3, 3]).unwrap());
    let e1 = dilog(skew.clone(), 0, &region);
    let e2 = dilog(skew, 1, &region);
    let a = dt_series(&a2.qp, &Cut::empty(), &region, CountFilter::None, &CountOptions::default())
        .unwrap();
    println!("A = E(y_1) E(y_2): {}", a == e1.mul(&e2));
    println!("A = E(y_2) E(y_1): {}", a == e2.mul(&e1));

    // the other chamber has three factors, the middle one being E(y_12)
    let z = CentralCharge::parse("-1+i, 1+i").unwrap();
    let factors = hn_factorize(&a, &z).unwrap();
    let nontrivial = factors.values().filter(|s| s.terms().count() > 1).count();
    println!("nontrivial factors: {nontrivial}");
    println!("pentagon: {}", hn_reconstruct(&factors).as_ref() == Some(&a));
}
