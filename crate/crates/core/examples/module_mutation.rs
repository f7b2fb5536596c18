//! Mutating a single module over F_p.

use std::collections::BTreeMap;

use qdt::ffcount::FpMatrix;
use qdt::fixtures;
use qdt::mutation::{mutate_module, ModulePoint};

fn main() {
    let c = fixtures::conifold();
    let cut = c.cut.as_ref().unwrap();
    let q = &c.qp.quiver;
    let k = c.qp.vertex("2").unwrap();
    let p = 3;
    let n = q.n_arrows() as u32;

    // first point of dimension (1,1,1,1) with all maps nonzero and no simple submodule at k
    let m = (0..1u32 << n)
        .filter_map(|code| {
            let maps: BTreeMap<String, FpMatrix> = q
                .arrows()
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let x = 1 + ((code >> i) & 1);
                    (a.id.clone(), FpMatrix::from_rows(p, &[vec![x]]))
                })
                .collect();
            ModulePoint::new(&c.qp, cut, p, vec![1; 4], maps).ok()
        })
        .find(|m| m.no_simple_sub(q, cut, k))
        .expect("some point exists");
    for (a, x) in &m.maps {
        println!("  {a}: {:?}", x.to_rows());
    }

    let (mu, m2) = mutate_module(&c.qp, cut, k, &m).unwrap();
    println!("mutated dimension vector {:?}", m2.dims);
    for (a, x) in &m2.maps {
        println!("  {a}: {:?}", x.to_rows());
    }
    println!(
        "no simple quotient at 2: {}",
        m2.no_simple_quotient(&mu.qp.quiver, &mu.cut, k)
    );
}
