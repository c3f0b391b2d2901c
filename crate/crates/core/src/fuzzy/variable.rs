use serde::{Deserialize, Serialize};

use super::membership::{MembershipDoc, MembershipFunction};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A named fuzzy set within a linguistic variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub label: String,
    pub mf: MembershipFunction<T>,
}

/// Named input or output over a closed universe `[lo, hi]`, partitioned
/// into labelled terms.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable<T> {
    name: String,
    lo: T,
    hi: T,
    terms: Vec<Term<T>>,
}

impl<T: Scalar> LinguisticVariable<T> {
    pub fn new<I, S>(name: impl Into<String>, universe: (T, T), terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, MembershipFunction<T>)>,
        S: Into<String>,
    {
        let name = name.into();
        let (lo, hi) = universe;
        let fail = |reason: String| Error::Variable { name: name.clone(), reason };
        if name.is_empty() {
            return Err(fail("name must not be empty".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(fail(format!("universe must satisfy lo < hi, got [{lo}, {hi}]")));
        }
        let terms: Vec<Term<T>> = terms
            .into_iter()
            .map(|(label, mf)| Term { label: label.into(), mf })
            .collect();
        if terms.is_empty() {
            return Err(fail("at least one term is required".into()));
        }
        for (k, term) in terms.iter().enumerate() {
            if term.label.is_empty() {
                return Err(fail(format!("term #{k} has an empty label")));
            }
            if terms[..k].iter().any(|t| t.label == term.label) {
                return Err(fail(format!("duplicate term label `{}`", term.label)));
            }
            let (a, d) = term.mf.support();
            if a < lo || d > hi {
                return Err(fail(format!(
                    "support [{a}, {d}] of term `{}` leaves the universe [{lo}, {hi}]",
                    term.label
                )));
            }
        }
        Ok(Self { name, lo, hi, terms })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label == label)
    }

    /// Clamps a crisp value into the universe.
    #[inline]
    pub fn clamp(&self, u: T) -> T {
        u.max(self.lo).min(self.hi)
    }

    pub fn midpoint(&self) -> T {
        (self.lo + self.hi) / T::lit(2.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc<T> {
    pub label: String,
    pub mf: MembershipDoc<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDoc<T> {
    pub name: String,
    pub universe: [T; 2],
    pub terms: Vec<TermDoc<T>>,
}

impl<T: Scalar> TryFrom<VariableDoc<T>> for LinguisticVariable<T> {
    type Error = Error;

    fn try_from(doc: VariableDoc<T>) -> Result<Self> {
        let terms = doc
            .terms
            .into_iter()
            .map(|t| Ok((t.label, MembershipFunction::try_from(t.mf)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Variable { name: doc.name.clone(), reason: e.to_string() })?;
        Self::new(doc.name, (doc.universe[0], doc.universe[1]), terms)
    }
}

impl<T: Scalar> From<&LinguisticVariable<T>> for VariableDoc<T> {
    fn from(var: &LinguisticVariable<T>) -> Self {
        Self {
            name: var.name.clone(),
            universe: [var.lo, var.hi],
            terms: var
                .terms
                .iter()
                .map(|t| TermDoc { label: t.label.clone(), mf: MembershipDoc::from(&t.mf) })
                .collect(),
        }
    }
}
