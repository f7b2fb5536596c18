//! Cuts, strict sources and the QP of a dimer model.

use qdt::fixtures;
use qdt::qp::find_quiver_isomorphism;

fn main() {
    let conifold = fixtures::conifold();
    let qp = &conifold.qp;
    let q = &qp.quiver;
    for cut in qp.find_cuts(true) {
        let sources: Vec<&str> = (0..q.n_vertices())
            .filter(|&k| qp.is_strict_source(&cut, k))
            .map(|k| q.vertex_name(k))
            .collect();
        println!("cut {cut}: strict sources {sources:?}");
    }

    let dimer = fixtures::square_torus_dimer();
    println!(
        "dimer: {} faces, {} edges, {} nodes, euler characteristic {}",
        dimer.n_faces(),
        dimer.n_edges(),
        dimer.n_nodes(),
        dimer.euler_characteristic()
    );
    let from_dimer = dimer.to_qp().unwrap();
    println!("W = {}", from_dimer.potential);
    println!(
        "same quiver as the conifold fixture: {}",
        find_quiver_isomorphism(&from_dimer.quiver, q).is_some()
    );
    for m in dimer.perfect_matchings() {
        println!("matching {:?} -> cut {}", m, dimer.matching_to_cut(&m).unwrap());
    }
}
