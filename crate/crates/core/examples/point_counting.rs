//! Point counts over F_p, trace fibres and counting polynomials.

use qdt::ffcount::{
    count_points, count_points_brute, count_polynomial, trace_counts, CountFilter, CountOptions,
    DEFAULT_BUDGET,
};
use qdt::fixtures;

fn main() {
    let c = fixtures::conifold();
    let cut = c.cut.as_ref().unwrap();
    let v = [1, 1, 1, 1];
    for p in [2, 3, 5, 7] {
        let n = count_points(&c.qp, cut, &v, p, CountFilter::None, DEFAULT_BUDGET).unwrap();
        let brute = count_points_brute(&c.qp, cut, &v, p, CountFilter::None, DEFAULT_BUDGET).unwrap();
        let (zero, one) = trace_counts(&c.qp, &v, p, DEFAULT_BUDGET).unwrap();
        println!("p={p}: N={n} (brute force {brute}), f=0: {zero}, f=1: {one}");
    }
    let r = count_polynomial(&c.qp, cut, &v, CountFilter::None, &CountOptions::default()).unwrap();
    println!("N(q) = {} (holdout prime {})", r.poly, r.holdout);

    // a larger dimension vector of the mutated quiver, counted by ranks
    let m = qdt::mutation::mutate_qp(&c.qp, cut, 1).unwrap();
    let r = count_polynomial(&m.qp, &m.cut, &[1, 4, 2, 1], CountFilter::None, &CountOptions::default()).unwrap();
    println!("mutated, v=(1,4,2,1): degree {:?}, {} primes", r.poly.degree(), r.samples.len());
}
