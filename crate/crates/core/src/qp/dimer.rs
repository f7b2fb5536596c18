//! Bipartite graphs on the torus and the quivers with potential they define.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::cut::Cut;
use super::json::json_error;
use super::potential::{Cycle, Potential};
use super::quiver::Quiver;
use super::{Qp, QpError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimerEdgeJson {
    pub id: String,
    pub blue: String,
    pub red: String,
}

/// Without `edges`, each face lists node ids counterclockwise and every
/// adjacent blue/red pair is one edge. With `edges` (needed when two edges
/// join the same pair of nodes), each face lists edge ids counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimerFile {
    pub blue: Vec<String>,
    pub red: Vec<String>,
    pub faces: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<DimerEdgeJson>>,
}

#[derive(Clone, Debug)]
struct Edge {
    id: String,
    blue: usize,
    red: usize,
}

#[derive(Clone, Debug)]
struct Face {
    /// Edges counterclockwise, each with whether it is traversed blue to red.
    edges: Vec<(usize, bool)>,
}

/// A validated dimer.
#[derive(Clone, Debug)]
pub struct DimerGraph {
    blue: Vec<String>,
    red: Vec<String>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    /// Face in which the edge runs blue to red, and its position there.
    br_face: Vec<(usize, usize)>,
    /// Face in which the edge runs red to blue, and its position there.
    rb_face: Vec<(usize, usize)>,
}

enum Node {
    Blue(usize),
    Red(usize),
}

impl DimerGraph {
    pub fn parse(text: &str) -> Result<Self, QpError> {
        let file: DimerFile = serde_json::from_str(text).map_err(json_error)?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &DimerFile) -> Result<Self, QpError> {
        let bad = |m: String| QpError::Dimer(m);
        let mut nodes: HashMap<&str, Node> = HashMap::new();
        for (i, b) in file.blue.iter().enumerate() {
            if nodes.insert(b, Node::Blue(i)).is_some() {
                return Err(bad(format!("duplicate node {b:?}")));
            }
        }
        for (i, r) in file.red.iter().enumerate() {
            if nodes.insert(r, Node::Red(i)).is_some() {
                return Err(bad(format!("duplicate node {r:?}")));
            }
        }
        let mut edges: Vec<Edge> = Vec::new();
        let mut faces = Vec::new();
        match &file.edges {
            Some(list) => {
                let mut index = HashMap::new();
                for e in list {
                    let (Some(Node::Blue(b)), Some(Node::Red(r))) =
                        (nodes.get(e.blue.as_str()), nodes.get(e.red.as_str()))
                    else {
                        return Err(bad(format!("edge {:?} must join a blue and a red node", e.id)));
                    };
                    if index.insert(e.id.as_str(), edges.len()).is_some() {
                        return Err(bad(format!("duplicate edge {:?}", e.id)));
                    }
                    edges.push(Edge {
                        id: e.id.clone(),
                        blue: *b,
                        red: *r,
                    });
                }
                for (fi, face) in file.faces.iter().enumerate() {
                    let ids: Result<Vec<usize>, QpError> = face
                        .iter()
                        .map(|id| {
                            index
                                .get(id.as_str())
                                .copied()
                                .ok_or_else(|| bad(format!("face {fi}: unknown edge {id:?}")))
                        })
                        .collect();
                    let ids = ids?;
                    let n = ids.len();
                    if n < 2 {
                        return Err(bad(format!("face {fi} has fewer than two edges")));
                    }
                    let mut out = Vec::with_capacity(n);
                    for j in 0..n {
                        let e = &edges[ids[j]];
                        let next = &edges[ids[(j + 1) % n]];
                        let shares_blue = e.blue == next.blue;
                        let shares_red = e.red == next.red;
                        // The shared node is where the edge ends.
                        let blue_to_red = match (shares_blue, shares_red) {
                            (false, true) => true,
                            (true, false) => false,
                            _ => {
                                return Err(bad(format!(
                                    "face {fi}: edges {:?} and {:?} do not meet in exactly one node",
                                    e.id, next.id
                                )))
                            }
                        };
                        out.push((ids[j], blue_to_red));
                    }
                    faces.push(Face { edges: out });
                }
            }
            None => {
                let mut index: HashMap<(usize, usize), usize> = HashMap::new();
                for (fi, face) in file.faces.iter().enumerate() {
                    let n = face.len();
                    if n < 2 || n % 2 == 1 {
                        return Err(bad(format!("face {fi} must have an even number of nodes")));
                    }
                    let mut out = Vec::with_capacity(n);
                    for j in 0..n {
                        let (x, y) = (&face[j], &face[(j + 1) % n]);
                        let (b, r, blue_to_red) = match (nodes.get(x.as_str()), nodes.get(y.as_str())) {
                            (Some(Node::Blue(b)), Some(Node::Red(r))) => (*b, *r, true),
                            (Some(Node::Red(r)), Some(Node::Blue(b))) => (*b, *r, false),
                            (None, _) | (_, None) => {
                                return Err(bad(format!("face {fi}: unknown node")))
                            }
                            _ => return Err(bad(format!("face {fi}: colors do not alternate"))),
                        };
                        let e = *index.entry((b, r)).or_insert_with(|| {
                            edges.push(Edge {
                                id: format!("{}-{}", file.blue[b], file.red[r]),
                                blue: b,
                                red: r,
                            });
                            edges.len() - 1
                        });
                        out.push((e, blue_to_red));
                    }
                    faces.push(Face { edges: out });
                }
            }
        }
        let mut br_face = vec![None; edges.len()];
        let mut rb_face = vec![None; edges.len()];
        for (fi, f) in faces.iter().enumerate() {
            for (pos, &(e, b2r)) in f.edges.iter().enumerate() {
                let slot = if b2r { &mut br_face[e] } else { &mut rb_face[e] };
                if slot.is_some() {
                    return Err(bad(format!(
                        "edge {:?} traversed twice in the same direction",
                        edges[e].id
                    )));
                }
                *slot = Some((fi, pos));
            }
        }
        let mut br = Vec::with_capacity(edges.len());
        let mut rb = Vec::with_capacity(edges.len());
        for (e, edge) in edges.iter().enumerate() {
            match (br_face[e], rb_face[e]) {
                (Some(x), Some(y)) if x.0 != y.0 => {
                    br.push(x);
                    rb.push(y);
                }
                (Some(_), Some(_)) => {
                    return Err(bad(format!("edge {:?} borders a single face", edge.id)))
                }
                _ => {
                    return Err(bad(format!(
                        "edge {:?} must appear in exactly two faces with opposite orientations",
                        edge.id
                    )))
                }
            }
        }
        Ok(DimerGraph {
            blue: file.blue.clone(),
            red: file.red.clone(),
            edges,
            faces,
            br_face: br,
            rb_face: rb,
        })
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.blue.len() + self.red.len()
    }

    /// `V - E + F`; zero for a tiling of the torus.
    pub fn euler_characteristic(&self) -> i64 {
        self.n_nodes() as i64 - self.n_edges() as i64 + self.n_faces() as i64
    }

    pub fn face_name(i: usize) -> String {
        format!("F{}", i + 1)
    }

    pub fn edge_ids(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    /// The arrow dual to `e` runs from the face where `e` goes red to blue
    /// into the face where it goes blue to red.
    pub fn to_qp(&self) -> Result<Qp, QpError> {
        let quiver = Quiver::new(
            (0..self.faces.len()).map(Self::face_name),
            self.edges.iter().enumerate().map(|(e, edge)| {
                (
                    edge.id.clone(),
                    Self::face_name(self.rb_face[e].0),
                    Self::face_name(self.br_face[e].0),
                )
            }),
        )?;
        let mut w = Potential::zero();
        for b in 0..self.blue.len() {
            let cycle = self.node_cycle(|e| self.edges[e].blue == b, true)?;
            if let Some(c) = cycle {
                w.add_term(Cycle::checked(&quiver, c)?, BigRational::one());
            }
        }
        for r in 0..self.red.len() {
            let cycle = self.node_cycle(|e| self.edges[e].red == r, false)?;
            if let Some(c) = cycle {
                w.add_term(Cycle::checked(&quiver, c)?, -BigRational::one());
            }
        }
        Qp::new(quiver, w)
    }

    /// The cycle of dual arrows around one node.
    fn node_cycle(
        &self,
        at_node: impl Fn(usize) -> bool,
        blue: bool,
    ) -> Result<Option<Vec<String>>, QpError> {
        let incident: Vec<usize> = (0..self.edges.len()).filter(|&e| at_node(e)).collect();
        let Some(&start) = incident.first() else {
            return Ok(None);
        };
        let mut cycle = Vec::new();
        let mut e = start;
        loop {
            cycle.push(self.edges[e].id.clone());
            let (f, pos) = self.br_face[e];
            let face = &self.faces[f].edges;
            let n = face.len();
            // Around a blue node the next edge enters it in the head face;
            // around a red node it leaves it.
            let next = if blue {
                face[(pos + n - 1) % n].0
            } else {
                face[(pos + 1) % n].0
            };
            if !at_node(next) {
                return Err(QpError::Dimer("face boundary does not turn at the node".into()));
            }
            e = next;
            if e == start {
                break;
            }
            if cycle.len() > incident.len() {
                return Err(QpError::Dimer("node neighbourhood is not a disc".into()));
            }
        }
        if cycle.len() != incident.len() {
            return Err(QpError::Dimer("node neighbourhood is not a disc".into()));
        }
        Ok(Some(cycle))
    }

    /// All edge sets covering every node exactly once.
    pub fn perfect_matchings(&self) -> Vec<BTreeSet<String>> {
        let mut out = Vec::new();
        if self.blue.len() != self.red.len() {
            return out;
        }
        let mut used_red = vec![false; self.red.len()];
        let mut chosen = Vec::new();
        self.match_from(0, &mut used_red, &mut chosen, &mut out);
        out
    }

    fn match_from(
        &self,
        b: usize,
        used_red: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<String>>,
    ) {
        if b == self.blue.len() {
            out.push(chosen.iter().map(|&e| self.edges[e].id.clone()).collect());
            return;
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.blue == b && !used_red[edge.red] {
                used_red[edge.red] = true;
                chosen.push(e);
                self.match_from(b + 1, used_red, chosen, out);
                chosen.pop();
                used_red[edge.red] = false;
            }
        }
    }

    /// The dual arrows of a perfect matching, checked to be a cut.
    pub fn matching_to_cut(&self, matching: &BTreeSet<String>) -> Result<Cut, QpError> {
        let mut blue_hits = vec![0; self.blue.len()];
        let mut red_hits = vec![0; self.red.len()];
        for id in matching {
            let e = self
                .edges
                .iter()
                .find(|e| &e.id == id)
                .ok_or(QpError::NotAMatching)?;
            blue_hits[e.blue] += 1;
            red_hits[e.red] += 1;
        }
        if blue_hits.iter().chain(&red_hits).any(|&h| h != 1) {
            return Err(QpError::NotAMatching);
        }
        let cut = Cut::new(matching.iter().cloned());
        if !self.to_qp()?.is_cut(&cut) {
            return Err(QpError::NotACut);
        }
        Ok(cut)
    }
}
