//! Cycles, potentials and cyclic derivatives.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::quiver::Quiver;
use super::QpError;

/// A path as a sequence of arrow ids, traversed left to right.
pub type Path = Vec<String>;

/// A finite rational combination of paths.
pub type PathCombo = BTreeMap<Path, BigRational>;

/// A cyclic path stored as its lexicographically minimal rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<String>);

fn min_rotation(v: &[String]) -> Vec<String> {
    let n = v.len();
    let best = (0..n)
        .min_by(|&i, &j| {
            let a = v[i..].iter().chain(&v[..i]);
            let b = v[j..].iter().chain(&v[..j]);
            a.cmp(b)
        })
        .unwrap_or(0);
    v[best..].iter().chain(&v[..best]).cloned().collect()
}

impl Cycle {
    /// Canonicalizes without checking composability; see [`Cycle::checked`].
    pub fn new<I, S>(arrows: I) -> Result<Self, QpError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let v: Vec<String> = arrows.into_iter().map(Into::into).collect();
        if v.is_empty() {
            return Err(QpError::InvalidCycle("empty cycle".into()));
        }
        Ok(Cycle(min_rotation(&v)))
    }

    pub fn checked<I, S>(quiver: &Quiver, arrows: I) -> Result<Self, QpError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let c = Self::new(arrows)?;
        c.validate(quiver)?;
        Ok(c)
    }

    pub fn arrows(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, quiver: &Quiver) -> Result<(), QpError> {
        let mut arrows = Vec::with_capacity(self.0.len());
        for id in &self.0 {
            let a = quiver
                .arrow(id)
                .ok_or_else(|| QpError::UnknownArrow(id.clone()))?;
            arrows.push(a);
        }
        for i in 0..arrows.len() {
            let next = arrows[(i + 1) % arrows.len()];
            if arrows[i].head != next.tail {
                return Err(QpError::InvalidCycle(format!(
                    "{} does not compose with {} in {}",
                    arrows[i].id, next.id, self
                )));
            }
        }
        Ok(())
    }

    /// Occurrences of `a`, counted with multiplicity.
    pub fn count(&self, a: &str) -> usize {
        self.0.iter().filter(|x| *x == a).count()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(" "))
    }
}

/// Validates that consecutive arrows compose.
pub fn path_is_valid(quiver: &Quiver, path: &[String]) -> bool {
    let mut prev: Option<usize> = None;
    for id in path {
        let Some(a) = quiver.arrow(id) else {
            return false;
        };
        if prev.is_some_and(|h| h != a.tail) {
            return false;
        }
        prev = Some(a.head);
    }
    true
}

/// A finite combination of cycles with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Potential {
    terms: BTreeMap<Cycle, BigRational>,
}

impl Potential {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Cycle, BigRational)>,
    {
        let mut w = Self::zero();
        for (c, x) in terms {
            w.add_term(c, x);
        }
        w
    }

    /// Shorthand for tests and fixtures: `(coeff, [arrow ids])`.
    pub fn from_int_terms(terms: &[(i64, &[&str])]) -> Result<Self, QpError> {
        let mut w = Self::zero();
        for (c, arrows) in terms {
            w.add_term(
                Cycle::new(arrows.iter().copied())?,
                BigRational::from_integer((*c).into()),
            );
        }
        Ok(w)
    }

    pub fn add_term(&mut self, c: Cycle, x: BigRational) {
        if x.is_zero() {
            return;
        }
        match self.terms.entry(c) {
            Entry::Vacant(e) => {
                e.insert(x);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += x;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cycle, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the cycle given by any of its rotations.
    pub fn coefficient(&self, arrows: &[&str]) -> BigRational {
        match Cycle::new(arrows.iter().copied()) {
            Ok(c) => self.terms.get(&c).cloned().unwrap_or_else(BigRational::zero),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn validate(&self, quiver: &Quiver) -> Result<(), QpError> {
        self.terms.keys().try_for_each(|c| c.validate(quiver))
    }

    pub fn arrows_used(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|c| c.arrows().iter().cloned())
            .collect()
    }

    /// `d_a W`: for every occurrence of `a`, the rest of the cycle read from
    /// the arrow after it. Paths run from `h(a)` to `t(a)`.
    pub fn cyclic_derivative(&self, a: &str) -> PathCombo {
        let mut out = PathCombo::new();
        for (c, x) in &self.terms {
            let v = c.arrows();
            for (i, id) in v.iter().enumerate() {
                if id != a {
                    continue;
                }
                let path: Path = v[i + 1..].iter().chain(&v[..i]).cloned().collect();
                let slot = out.entry(path).or_insert_with(BigRational::zero);
                *slot += x;
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn scaled(&self, k: &BigRational) -> Potential {
        Potential::from_terms(self.terms.iter().map(|(c, x)| (c.clone(), x * k)))
    }

    pub fn plus(&self, other: &Potential) -> Potential {
        let mut w = self.clone();
        for (c, x) in other.terms() {
            w.add_term(c.clone(), x.clone());
        }
        w
    }

    /// Renames arrows; cycles are re-canonicalized.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Potential {
        Potential::from_terms(self.terms.iter().map(|(c, x)| {
            (
                Cycle::new(c.arrows().iter().map(|a| f(a))).expect("nonempty"),
                x.clone(),
            )
        }))
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, x)) in self.terms.iter().enumerate() {
            let neg = x.is_negative();
            let abs = x.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}", c.0.join("."))?;
        }
        Ok(())
    }
}
