use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `(variable, term)` pair in a rule's premise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Antecedent {
    pub variable: String,
    pub term: String,
}

/// Weighted AND-rule: `if (v1 is t1) and ... then (output is consequent)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule<T> {
    antecedents: Vec<Antecedent>,
    consequent: String,
    weight: T,
}

impl<T: Scalar> Rule<T> {
    /// Rule with unit weight.
    pub fn new<I, V, S>(antecedents: I, consequent: impl Into<String>) -> Result<Self>
    where
        I: IntoIterator<Item = (V, S)>,
        V: Into<String>,
        S: Into<String>,
    {
        Self::weighted(antecedents, consequent, T::one())
    }

    pub fn weighted<I, V, S>(antecedents: I, consequent: impl Into<String>, weight: T) -> Result<Self>
    where
        I: IntoIterator<Item = (V, S)>,
        V: Into<String>,
        S: Into<String>,
    {
        let antecedents: Vec<Antecedent> = antecedents
            .into_iter()
            .map(|(v, t)| Antecedent { variable: v.into(), term: t.into() })
            .collect();
        if antecedents.is_empty() {
            return Err(Error::Rule { index: 0, reason: "at least one antecedent is required".into() });
        }
        if !(weight > T::zero() && weight <= T::one()) {
            return Err(Error::Rule { index: 0, reason: format!("weight must lie in (0, 1], got {weight}") });
        }
        Ok(Self { antecedents, consequent: consequent.into(), weight })
    }

    pub fn antecedents(&self) -> &[Antecedent] {
        &self.antecedents
    }

    pub fn consequent(&self) -> &str {
        &self.consequent
    }

    pub fn weight(&self) -> T {
        self.weight
    }
}

impl<T: Scalar> fmt::Display for Rule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "If ")?;
        for (k, a) in self.antecedents.iter().enumerate() {
            if k > 0 {
                write!(f, " and ")?;
            }
            write!(f, "({} is {})", a.variable, a.term)?;
        }
        write!(f, " then {} ({})", self.consequent, self.weight)
    }
}

fn unit<T: Scalar>() -> T {
    T::one()
}

/// `{"if": [["I", "N"], ["X", "Z"]], "then": "Z", "weight": 1.0}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc<T: Scalar> {
    #[serde(rename = "if")]
    pub antecedents: Vec<(String, String)>,
    #[serde(rename = "then")]
    pub consequent: String,
    #[serde(default = "unit")]
    pub weight: T,
}

impl<T: Scalar> TryFrom<RuleDoc<T>> for Rule<T> {
    type Error = Error;

    fn try_from(doc: RuleDoc<T>) -> Result<Self> {
        Rule::weighted(doc.antecedents, doc.consequent, doc.weight)
    }
}

impl<T: Scalar> From<&Rule<T>> for RuleDoc<T> {
    fn from(rule: &Rule<T>) -> Self {
        Self {
            antecedents: rule
                .antecedents
                .iter()
                .map(|a| (a.variable.clone(), a.term.clone()))
                .collect(),
            consequent: rule.consequent.clone(),
            weight: rule.weight,
        }
    }
}
