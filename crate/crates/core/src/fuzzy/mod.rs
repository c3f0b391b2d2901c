//! Minimal Mamdani fuzzy inference: piecewise-linear membership functions,
//! linguistic variables, weighted AND-rules, min/max inference and centroid
//! defuzzification on a uniform grid.

pub mod defaults;
mod membership;
mod rule;
mod system;
mod variable;

pub use membership::{MembershipDoc, MembershipFunction};
pub use rule::{Antecedent, Rule, RuleDoc};
pub use system::{FuzzySystem, FuzzySystemDoc, Inference, DEFAULT_RESOLUTION, MIN_RESOLUTION};
pub use variable::{LinguisticVariable, Term, TermDoc, VariableDoc};
