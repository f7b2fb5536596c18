//! Harder-Narasimhan factorization of a DT series into ray factors.

use qdt::ffcount::{CountFilter, CountOptions};
use qdt::fixtures;
use qdt::qp::{Cut, DimVector};
use qdt::qtorus::{dt_series, hn_factorize, hn_reconstruct, rays_in_order, CentralCharge, Region};

fn main() {
    let a2 = fixtures::a2();
    let region = Region::boxed(&DimVector::new(vec![3, 3]).unwrap());
    let a = dt_series(&a2.qp, &Cut::empty(), &region, CountFilter::None, &CountOptions::default()).unwrap();
    for charge in ["-1+i, 1+i", "1+i, -1+i"] {
        let z = CentralCharge::parse(charge).unwrap();
        let factors = hn_factorize(&a, &z).unwrap();
        println!("Z = {charge}");
        for ray in rays_in_order(&factors) {
            let s = &factors[&ray];
            if s.terms().count() > 1 {
                println!("  ray {ray}: {s}");
            }
        }
        println!("  reconstructs: {}", hn_reconstruct(&factors).as_ref() == Some(&a));
    }
}
