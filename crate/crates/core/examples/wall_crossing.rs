//! Wall-crossing across a mutation: A2 and the conifold quotient.

use qdt::ffcount::CountOptions;
use qdt::fixtures;
use qdt::qp::{Cut, DimVector};
use qdt::qtorus::{wallcross_check, Region};

fn main() {
    let opts = CountOptions::default();
    let a2 = fixtures::a2();
    let b = Region::boxed(&DimVector::new(vec![4, 4]).unwrap());
    let r = wallcross_check(&a2.qp, &Cut::empty(), 0, &b, &opts).unwrap();
    println!("A2: pass={} matched={} support checked={}", r.pass, r.matched, r.support_checked);

    let c = fixtures::conifold();
    let degree = std::env::args().nth(1).and_then(|x| x.parse().ok()).unwrap_or(3);
    let r = wallcross_check(&c.qp, c.cut.as_ref().unwrap(), 1, &Region::total_degree(4, degree), &opts).unwrap();
    println!(
        "conifold, total degree <= {degree}: pass={} matched={} in {} ms",
        r.pass, r.matched, r.elapsed_ms
    );
    println!("mutated side region: {:?}", r.mutated_region);
}
