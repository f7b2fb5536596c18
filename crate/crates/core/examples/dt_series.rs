//! Refined DT generating series.

use qdt::ffcount::{CountFilter, CountOptions};
use qdt::fixtures;
use qdt::qp::{Cut, DimVector};
use qdt::qtorus::{dt_series, refined_dt, Region};

fn main() {
    let tc = fixtures::three_cycle();
    let region = Region::boxed(&DimVector::new(vec![2, 2, 2]).unwrap());
    let opts = CountOptions::default();
    let s = dt_series(&tc.qp, &Cut::new(["a"]), &region, CountFilter::None, &opts).unwrap();
    for (v, c) in s.terms() {
        println!("{:?}\t{c}", v);
    }
    let other = dt_series(&tc.qp, &Cut::new(["b"]), &region, CountFilter::None, &opts).unwrap();
    println!("independent of the cut: {}", s == other);

    let c = fixtures::conifold();
    let x = refined_dt(&c.qp, c.cut.as_ref().unwrap(), &[1, 1, 1, 1], CountFilter::None, &opts).unwrap();
    println!("conifold (1,1,1,1): {x}");
}
