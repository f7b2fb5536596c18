//! QP JSON format and validation reports.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::cut::{Cut, Grading};
use super::potential::{Cycle, Potential};
use super::quiver::Quiver;
use super::{Qp, QpError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub cycle: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QpFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub potential: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<BTreeMap<String, i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub location: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub cluster_like: bool,
    pub issues: Vec<Issue>,
}

pub(crate) fn json_error(e: serde_json::Error) -> QpError {
    QpError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_qp_file(text: &str) -> Result<QpFile, QpError> {
    serde_json::from_str(text).map_err(json_error)
}

/// Collects every invariant violation in a QP file.
pub fn validate_file(file: &QpFile) -> ValidationReport {
    let mut issues = Vec::new();
    let mut push = |location: String, message: String| issues.push(Issue { location, message });

    let mut vertices = HashSet::new();
    for (i, v) in file.vertices.iter().enumerate() {
        if !vertices.insert(v.as_str()) {
            push(format!("vertices[{i}]"), format!("duplicate vertex id {v:?}"));
        }
    }
    let mut arrows: HashMap<&str, (&str, &str)> = HashMap::new();
    let mut pairs = HashSet::new();
    for (i, a) in file.arrows.iter().enumerate() {
        let loc = format!("arrows[{i}]");
        if arrows.contains_key(a.id.as_str()) {
            push(loc.clone(), format!("duplicate arrow id {:?}", a.id));
            continue;
        }
        for end in [&a.from, &a.to] {
            if !vertices.contains(end.as_str()) {
                push(loc.clone(), format!("undeclared vertex {end:?}"));
            }
        }
        if a.from == a.to {
            push(loc.clone(), format!("arrow {:?} is a loop", a.id));
        }
        arrows.insert(&a.id, (&a.from, &a.to));
        pairs.insert((a.from.as_str(), a.to.as_str()));
    }
    let cluster_like = pairs.iter().all(|(s, t)| !pairs.contains(&(*t, *s)));

    for (i, term) in file.potential.iter().enumerate() {
        let loc = format!("potential[{i}]");
        if BigRational::from_str(term.coeff.trim()).is_err() {
            push(format!("{loc}.coeff"), format!("not a rational number: {:?}", term.coeff));
        }
        if term.cycle.is_empty() {
            push(format!("{loc}.cycle"), "empty cycle".into());
            continue;
        }
        let mut ends = Vec::new();
        for (j, id) in term.cycle.iter().enumerate() {
            match arrows.get(id.as_str()) {
                Some(e) => ends.push(*e),
                None => push(format!("{loc}.cycle[{j}]"), format!("unknown arrow {id:?}")),
            }
        }
        if ends.len() == term.cycle.len() {
            for j in 0..ends.len() {
                let next = ends[(j + 1) % ends.len()];
                if ends[j].1 != next.0 {
                    push(
                        format!("{loc}.cycle[{j}]"),
                        format!(
                            "{:?} ends at {:?} but {:?} starts at {:?}",
                            term.cycle[j],
                            ends[j].1,
                            term.cycle[(j + 1) % ends.len()],
                            next.0
                        ),
                    );
                }
            }
        }
    }
    if let Some(cut) = &file.cut {
        for (j, id) in cut.iter().enumerate() {
            if !arrows.contains_key(id.as_str()) {
                push(format!("cut[{j}]"), format!("unknown arrow {id:?}"));
            }
        }
    }
    if let Some(grading) = &file.grading {
        for id in grading.keys() {
            if !arrows.contains_key(id.as_str()) {
                push(format!("grading.{id}"), "unknown arrow".into());
            }
        }
        for a in &file.arrows {
            if !grading.contains_key(&a.id) {
                push("grading".into(), format!("no degree for arrow {:?}", a.id));
            }
        }
    }
    if issues.is_empty() {
        if let Some(cut) = &file.cut {
            if let Ok(loaded) = build(file) {
                if !loaded.qp.is_cut(&Cut::new(cut.iter().cloned())) {
                    issues.push(Issue {
                        location: "cut".into(),
                        message: "some potential term does not contain exactly one cut arrow".into(),
                    });
                }
            }
        }
    }
    ValidationReport {
        valid: issues.is_empty(),
        cluster_like,
        issues,
    }
}

pub fn validate_qp(qp: &Qp) -> ValidationReport {
    validate_file(&qp_to_file(qp, None, None))
}

/// A parsed QP with the optional cut and grading carried by the file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedQp {
    pub qp: Qp,
    pub cut: Option<Cut>,
    pub grading: Option<Grading>,
}

fn build(file: &QpFile) -> Result<LoadedQp, QpError> {
    let quiver = Quiver::new(
        file.vertices.iter().cloned(),
        file.arrows
            .iter()
            .map(|a| (a.id.clone(), a.from.clone(), a.to.clone())),
    )?;
    let mut w = Potential::zero();
    for t in &file.potential {
        let c = BigRational::from_str(t.coeff.trim())
            .map_err(|_| QpError::Parse(format!("bad coefficient {:?}", t.coeff)))?;
        w.add_term(Cycle::checked(&quiver, t.cycle.iter().cloned())?, c);
    }
    Ok(LoadedQp {
        qp: Qp::new(quiver, w)?,
        cut: file.cut.as_ref().map(|c| Cut::new(c.iter().cloned())),
        grading: file.grading.clone().map(Grading::new),
    })
}

/// Parses and validates; any reported issue is an error.
pub fn load_qp(text: &str) -> Result<LoadedQp, QpError> {
    let file = parse_qp_file(text)?;
    let report = validate_file(&file);
    if !report.valid {
        return Err(QpError::Invalid(report.issues));
    }
    build(&file)
}

pub fn qp_to_file(qp: &Qp, cut: Option<&Cut>, grading: Option<&Grading>) -> QpFile {
    let q = &qp.quiver;
    QpFile {
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowJson {
                id: a.id.clone(),
                from: q.vertex_name(a.tail).to_string(),
                to: q.vertex_name(a.head).to_string(),
            })
            .collect(),
        potential: qp
            .potential
            .terms()
            .map(|(c, x)| TermJson {
                coeff: x.to_string(),
                cycle: c.arrows().to_vec(),
            })
            .collect(),
        cut: cut.map(|c| c.arrows().iter().cloned().collect()),
        grading: grading.map(|g| g.degrees().clone()),
    }
}

pub fn qp_to_json(qp: &Qp, cut: Option<&Cut>, grading: Option<&Grading>) -> String {
    serde_json::to_string_pretty(&qp_to_file(qp, cut, grading)).expect("serializable")
}
