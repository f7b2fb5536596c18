//! Gradings, cuts and strict sources.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::potential::Cycle;
use super::quiver::Quiver;
use super::{Qp, QpError};

/// Integer degree for every arrow.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Grading(BTreeMap<String, i64>);

impl Grading {
    pub fn new(degrees: BTreeMap<String, i64>) -> Self {
        Grading(degrees)
    }

    /// Degree 1 on the cut, 0 elsewhere.
    pub fn from_cut(quiver: &Quiver, cut: &Cut) -> Self {
        Grading(
            quiver
                .arrows()
                .iter()
                .map(|a| (a.id.clone(), i64::from(cut.contains(&a.id))))
                .collect(),
        )
    }

    pub fn degree(&self, a: &str) -> Option<i64> {
        self.0.get(a).copied()
    }

    pub fn degrees(&self) -> &BTreeMap<String, i64> {
        &self.0
    }

    pub fn cycle_degree(&self, c: &Cycle) -> Option<i64> {
        c.arrows().iter().map(|a| self.degree(a)).sum()
    }

    pub fn is_total_on(&self, quiver: &Quiver) -> bool {
        quiver.arrows().iter().all(|a| self.0.contains_key(&a.id))
    }
}

/// A set of arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cut(BTreeSet<String>);

impl Cut {
    pub fn new<I, S>(arrows: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Cut(arrows.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, a: &str) -> bool {
        self.0.contains(a)
    }

    pub fn arrows(&self) -> &BTreeSet<String> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `"a1,a2"`.
    pub fn parse(s: &str) -> Self {
        Cut::new(s.split(',').map(str::trim).filter(|x| !x.is_empty()))
    }

    pub fn check_arrows(&self, quiver: &Quiver) -> Result<(), QpError> {
        match self.0.iter().find(|a| quiver.arrow_index(a).is_none()) {
            Some(a) => Err(QpError::UnknownArrow(a.clone())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().cloned().collect::<Vec<_>>().join(","))
    }
}

impl Quiver {
    /// `chi_C(v, w) = sum_{c in C} v_{t(c)} w_{h(c)}`.
    pub fn cut_form(&self, cut: &Cut, v: &[i64], w: &[i64]) -> Result<i64, QpError> {
        cut.check_arrows(self)?;
        self.euler_form(v, w)?;
        Ok(self
            .arrows()
            .iter()
            .filter(|a| cut.contains(&a.id))
            .map(|a| v[a.tail] * w[a.head])
            .sum())
    }

    /// `chi_{Q_C} = chi_Q - chi_C`.
    pub fn cut_complement_form(&self, cut: &Cut, v: &[i64], w: &[i64]) -> Result<i64, QpError> {
        Ok(self.euler_form(v, w)? - self.cut_form(cut, v, w)?)
    }
}

impl Qp {
    /// Every term of `W` contains exactly one cut arrow, with multiplicity.
    pub fn is_cut(&self, cut: &Cut) -> bool {
        cut.check_arrows(&self.quiver).is_ok()
            && self
                .potential
                .terms()
                .all(|(c, _)| c.arrows().iter().filter(|a| cut.contains(a)).count() == 1)
    }

    /// All cuts; with `restrict_to_w_arrows`, only subsets of the arrows
    /// occurring in `W`.
    pub fn find_cuts(&self, restrict_to_w_arrows: bool) -> Vec<Cut> {
        let used = self.potential.arrows_used();
        let candidates: Vec<&str> = self
            .quiver
            .arrows()
            .iter()
            .map(|a| a.id.as_str())
            .filter(|a| used.contains(*a))
            .collect();
        let terms: Vec<&Cycle> = self.potential.terms().map(|(c, _)| c).collect();
        let mult: Vec<Vec<usize>> = candidates
            .iter()
            .map(|a| terms.iter().map(|c| c.count(a)).collect())
            .collect();
        let mut found = Vec::new();
        let mut sums = vec![0usize; terms.len()];
        let mut chosen = Vec::new();
        search(&mult, 0, &mut sums, &mut chosen, &mut found);
        let mut cuts: Vec<Cut> = found
            .into_iter()
            .map(|idx| Cut::new(idx.into_iter().map(|i| candidates[i])))
            .collect();
        if !restrict_to_w_arrows {
            let free: Vec<&str> = self
                .quiver
                .arrows()
                .iter()
                .map(|a| a.id.as_str())
                .filter(|a| !used.contains(*a))
                .collect();
            let mut all = Vec::new();
            for c in &cuts {
                for mask in 0u64..(1u64 << free.len()) {
                    let mut s = c.0.clone();
                    for (j, a) in free.iter().enumerate() {
                        if mask >> j & 1 == 1 {
                            s.insert(a.to_string());
                        }
                    }
                    all.push(Cut(s));
                }
            }
            cuts = all;
        }
        cuts
    }

    /// Every arrow into `k` is in the cut and no arrow out of `k` is.
    pub fn is_strict_source(&self, cut: &Cut, k: usize) -> bool {
        self.quiver.arrows_into(k).all(|a| cut.contains(&a.id))
            && self.quiver.arrows_out_of(k).all(|a| !cut.contains(&a.id))
    }

    /// Every arrow out of `k` is in the cut and no arrow into `k` is.
    pub fn is_strict_sink(&self, cut: &Cut, k: usize) -> bool {
        self.quiver.arrows_out_of(k).all(|a| cut.contains(&a.id))
            && self.quiver.arrows_into(k).all(|a| !cut.contains(&a.id))
    }
}

fn search(
    mult: &[Vec<usize>],
    i: usize,
    sums: &mut [usize],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if i == mult.len() {
        if sums.iter().all(|&s| s == 1) {
            out.push(chosen.clone());
        }
        return;
    }
    search(mult, i + 1, sums, chosen, out);
    let fits = mult[i].iter().zip(sums.iter()).all(|(m, s)| m + s <= 1);
    if fits {
        for (s, m) in sums.iter_mut().zip(&mult[i]) {
            *s += m;
        }
        chosen.push(i);
        search(mult, i + 1, sums, chosen, out);
        chosen.pop();
        for (s, m) in sums.iter_mut().zip(&mult[i]) {
            *s -= m;
        }
    }
}
