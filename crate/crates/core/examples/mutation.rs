//! Mutation of a QP with cut at a strict source.

use qdt::fixtures;
use qdt::mutation::{exchange_matrix, fz_mutation, mutate_qp, phi};
use qdt::qp::{find_qp_isomorphism_up_to_signs, qp_to_json};

fn main() {
    let c = fixtures::conifold();
    let cut = c.cut.as_ref().unwrap();
    let k = c.qp.vertex("2").unwrap();
    let m = mutate_qp(&c.qp, cut, k).unwrap();

    println!("premutation has {} arrows", m.premutated.qp.quiver.n_arrows());
    println!("after reduction: {} arrows, cut {}", m.qp.quiver.n_arrows(), m.cut);
    println!("W' = {}", m.qp.potential);
    println!(
        "matches the exchange matrix rule: {}",
        exchange_matrix(&m.qp.quiver) == fz_mutation(&exchange_matrix(&c.qp.quiver), k)
    );
    if let Some((_, signs)) = find_qp_isomorphism_up_to_signs(&m.qp, &fixtures::p1xp1().qp) {
        println!("isomorphic to the P1 x P1 helix after negating {signs:?}");
    }
    for v in [[1, 0, 0, 0], [0, 0, 1, 0], [1, 1, 1, 1]] {
        println!("phi{v:?} = {:?}", phi(&c.qp.quiver, k, &v));
    }
    println!("{}", qp_to_json(&m.qp, Some(&m.cut), None));
}
