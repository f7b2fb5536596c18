//! Quivers with potential shipped with the crate.

use crate::qp::{load_qp, DimerGraph, LoadedQp};

pub const ONE_VERTEX: &str = include_str!("../fixtures/one_vertex.json");
pub const A2: &str = include_str!("../fixtures/a2.json");
/// `a: 1->2, b: 2->3, c: 3->1`, `W = abc`, cut `{a}`.
pub const THREE_CYCLE: &str = include_str!("../fixtures/three_cycle.json");
/// Conifold quotient by Z/2: arrows `a_i: 1->2, b_j: 2->3, c_i: 3->4,
/// d_j: 4->1`, cut `{a1, a2}`.
pub const CONIFOLD: &str = include_str!("../fixtures/conifold.json");
/// Helix quiver of P1 x P1 with `W = sum U_ij s_j t_i - U_ij T_i S_j`.
pub const P1XP1: &str = include_str!("../fixtures/p1xp1.json");
/// `W = pr + puw + rz`, which reduces to `-uwz`.
pub const REDUCTION: &str = include_str!("../fixtures/reduction.json");
/// Square lattice on the torus with two nodes of each color.
pub const SQUARE_TORUS_DIMER: &str = include_str!("../fixtures/square_torus_dimer.json");

fn load(text: &str) -> LoadedQp {
    load_qp(text).expect("shipped fixture is valid")
}

pub fn one_vertex() -> LoadedQp {
    load(ONE_VERTEX)
}

pub fn a2() -> LoadedQp {
    load(A2)
}

pub fn three_cycle() -> LoadedQp {
    load(THREE_CYCLE)
}

pub fn conifold() -> LoadedQp {
    load(CONIFOLD)
}

pub fn p1xp1() -> LoadedQp {
    load(P1XP1)
}

pub fn reduction() -> LoadedQp {
    load(REDUCTION)
}

pub fn square_torus_dimer() -> DimerGraph {
    DimerGraph::parse(SQUARE_TORUS_DIMER).expect("shipped fixture is valid")
}

/// Every fixture by name.
pub fn all() -> Vec<(&'static str, LoadedQp)> {
    vec![
        ("one_vertex", one_vertex()),
        ("a2", a2()),
        ("three_cycle", three_cycle()),
        ("conifold", conifold()),
        ("p1xp1", p1xp1()),
        ("reduction", reduction()),
    ]
}
