use serde::{Deserialize, Serialize};

use super::rule::{Rule, RuleDoc};
use super::variable::{LinguisticVariable, VariableDoc};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_RESOLUTION: usize = 1001;
pub const MIN_RESOLUTION: usize = 101;

/// Result of one inference: the crisp value and whether the aggregate was
/// empty (no rule fired), in which case `value` is the output midpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inference<T> {
    pub value: T,
    pub empty_aggregate: bool,
}

#[derive(Debug, Clone, PartialEq)]
struct CompiledRule<T> {
    /// `(input index, term index)` per antecedent.
    premise: Vec<(usize, usize)>,
    consequent: usize,
    weight: T,
}

/// Mamdani inference system: AND = min, implication = min (clipping),
/// aggregation = max, centroid defuzzification on a uniform grid.
///
/// Immutable after construction. Output term memberships are sampled on the
/// defuzzification grid once, so evaluation only clips and aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySystem<T> {
    inputs: Vec<LinguisticVariable<T>>,
    output: LinguisticVariable<T>,
    rules: Vec<Rule<T>>,
    compiled: Vec<CompiledRule<T>>,
    resolution: usize,
    grid: Vec<T>,
    sampled_terms: Vec<Vec<T>>,
}

impl<T: Scalar> FuzzySystem<T> {
    pub fn new(
        inputs: Vec<LinguisticVariable<T>>,
        output: LinguisticVariable<T>,
        rules: Vec<Rule<T>>,
    ) -> Result<Self> {
        Self::with_resolution(inputs, output, rules, DEFAULT_RESOLUTION)
    }

    pub fn with_resolution(
        inputs: Vec<LinguisticVariable<T>>,
        output: LinguisticVariable<T>,
        rules: Vec<Rule<T>>,
        resolution: usize,
    ) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::System("at least one input variable is required".into()));
        }
        for (k, var) in inputs.iter().enumerate() {
            if inputs[..k].iter().any(|v| v.name() == var.name()) {
                return Err(Error::System(format!("duplicate input variable `{}`", var.name())));
            }
            if var.name() == output.name() {
                return Err(Error::System(format!(
                    "variable `{}` is both an input and the output",
                    var.name()
                )));
            }
        }
        if rules.is_empty() {
            return Err(Error::System("rule base is empty".into()));
        }
        if resolution < MIN_RESOLUTION {
            return Err(Error::System(format!(
                "defuzz_resolution must be at least {MIN_RESOLUTION}, got {resolution}"
            )));
        }
        let compiled = rules
            .iter()
            .enumerate()
            .map(|(index, rule)| {
                compile(&inputs, &output, rule).map_err(|reason| Error::Rule { index: index + 1, reason })
            })
            .collect::<Result<Vec<_>>>()?;

        let (lo, hi) = output.universe();
        let step = (hi - lo) / T::from_index(resolution - 1);
        let grid: Vec<T> = (0..resolution)
            .map(|k| if k + 1 == resolution { hi } else { lo + step * T::from_index(k) })
            .collect();
        let sampled_terms = output
            .terms()
            .iter()
            .map(|term| grid.iter().map(|&u| term.mf.eval(u)).collect())
            .collect();

        Ok(Self { inputs, output, rules, compiled, resolution, grid, sampled_terms })
    }

    /// Same variables and rules on a different defuzzification grid.
    pub fn resampled(&self, resolution: usize) -> Result<Self> {
        Self::with_resolution(self.inputs.clone(), self.output.clone(), self.rules.clone(), resolution)
    }

    pub fn inputs(&self) -> &[LinguisticVariable<T>] {
        &self.inputs
    }

    pub fn output(&self) -> &LinguisticVariable<T> {
        &self.output
    }

    pub fn rules(&self) -> &[Rule<T>] {
        &self.rules
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|v| v.name() == name)
    }

    /// Firing strength of `rule` (weight × min of antecedent degrees).
    /// The rule need not belong to this system but must only reference its
    /// variables and terms.
    pub fn fire_strength(&self, rule: &Rule<T>, inputs: &[(&str, T)]) -> Result<T> {
        let compiled = compile(&self.inputs, &self.output, rule)
            .map_err(|reason| Error::Rule { index: 0, reason })?;
        let crisp = self.order_inputs(inputs, |k| compiled.premise.iter().any(|&(i, _)| i == k))?;
        Ok(self.strength(&compiled, &crisp))
    }

    pub fn evaluate(&self, inputs: &[(&str, T)]) -> Result<T> {
        self.infer(inputs).map(|inf| inf.value)
    }

    pub fn infer(&self, inputs: &[(&str, T)]) -> Result<Inference<T>> {
        let crisp = self.order_inputs(inputs, |_| true)?;
        Ok(self.infer_ordered(&crisp))
    }

    /// Inference with crisp inputs given in declaration order.
    ///
    /// # Panics
    /// If `crisp.len()` differs from the number of inputs.
    pub fn infer_ordered(&self, crisp: &[T]) -> Inference<T> {
        assert_eq!(crisp.len(), self.inputs.len(), "one crisp value per input variable");

        // max_r min(s_r, mu_c) == min(max_r s_r, mu_c) for rules sharing consequent c
        let mut clip = vec![T::zero(); self.sampled_terms.len()];
        for rule in &self.compiled {
            let s = self.strength(rule, crisp);
            if s > clip[rule.consequent] {
                clip[rule.consequent] = s;
            }
        }

        let mut num = T::zero();
        let mut den = T::zero();
        if clip.iter().any(|&s| s > T::zero()) {
            for (k, &u) in self.grid.iter().enumerate() {
                let mut mu = T::zero();
                for (term, &s) in self.sampled_terms.iter().zip(&clip) {
                    if s > T::zero() {
                        mu = mu.max(term[k].min(s));
                    }
                }
                num = num + u * mu;
                den = den + mu;
            }
        }
        if den > T::zero() {
            let (lo, hi) = self.output.universe();
            Inference { value: (num / den).max(lo).min(hi), empty_aggregate: false }
        } else {
            Inference { value: self.output.midpoint(), empty_aggregate: true }
        }
    }

    fn strength(&self, rule: &CompiledRule<T>, crisp: &[T]) -> T {
        let degree = rule
            .premise
            .iter()
            .map(|&(var, term)| {
                let variable = &self.inputs[var];
                variable.terms()[term].mf.eval(variable.clamp(crisp[var]))
            })
            .fold(T::one(), |acc, d| acc.min(d));
        rule.weight * degree
    }

    fn order_inputs(&self, inputs: &[(&str, T)], needed: impl Fn(usize) -> bool) -> Result<Vec<T>> {
        self.inputs
            .iter()
            .enumerate()
            .map(|(k, var)| match inputs.iter().find(|(name, _)| *name == var.name()) {
                Some(&(_, u)) => Ok(u),
                None if !needed(k) => Ok(var.midpoint()),
                None => Err(Error::MissingInput(var.name().to_string())),
            })
            .collect()
    }

    pub fn to_doc(&self) -> FuzzySystemDoc<T> {
        FuzzySystemDoc {
            inputs: self.inputs.iter().map(VariableDoc::from).collect(),
            output: VariableDoc::from(&self.output),
            rules: self.rules.iter().map(RuleDoc::from).collect(),
            defuzz_resolution: self.resolution,
        }
    }
}

fn compile<T: Scalar>(
    inputs: &[LinguisticVariable<T>],
    output: &LinguisticVariable<T>,
    rule: &Rule<T>,
) -> std::result::Result<CompiledRule<T>, String> {
    let premise = rule
        .antecedents()
        .iter()
        .map(|a| {
            let var = inputs
                .iter()
                .position(|v| v.name() == a.variable)
                .ok_or_else(|| format!("unknown input variable `{}`", a.variable))?;
            let term = inputs[var]
                .term_index(&a.term)
                .ok_or_else(|| format!("variable `{}` has no term `{}`", a.variable, a.term))?;
            Ok((var, term))
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    let consequent = output
        .term_index(rule.consequent())
        .ok_or_else(|| format!("output `{}` has no term `{}`", output.name(), rule.consequent()))?;
    Ok(CompiledRule { premise, consequent, weight: rule.weight() })
}

fn default_resolution() -> usize {
    DEFAULT_RESOLUTION
}

/// Declarative (JSON) form of a [`FuzzySystem`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzySystemDoc<T: Scalar> {
    pub inputs: Vec<VariableDoc<T>>,
    pub output: VariableDoc<T>,
    pub rules: Vec<RuleDoc<T>>,
    #[serde(default = "default_resolution")]
    pub defuzz_resolution: usize,
}

impl<T: Scalar> TryFrom<FuzzySystemDoc<T>> for FuzzySystem<T> {
    type Error = Error;

    fn try_from(doc: FuzzySystemDoc<T>) -> Result<Self> {
        let inputs = doc
            .inputs
            .into_iter()
            .map(LinguisticVariable::try_from)
            .collect::<Result<Vec<_>>>()?;
        let output = LinguisticVariable::try_from(doc.output)?;
        let rules = doc
            .rules
            .into_iter()
            .enumerate()
            .map(|(k, r)| {
                Rule::try_from(r).map_err(|e| match e {
                    Error::Rule { reason, .. } => Error::Rule { index: k + 1, reason },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FuzzySystem::with_resolution(inputs, output, rules, doc.defuzz_resolution)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::MembershipFunction;

    fn tri(a: f64, b: f64, c: f64) -> MembershipFunction<f64> {
        MembershipFunction::triangular(a, b, c).unwrap()
    }

    fn unit_var(name: &str) -> LinguisticVariable<f64> {
        LinguisticVariable::new(
            name,
            (0.0, 1.0),
            [("Z", tri(0.0, 0.0, 0.5)), ("M", tri(0.0, 0.5, 1.0)), ("L", tri(0.5, 1.0, 1.0))],
        )
        .unwrap()
    }

    fn single_rule(consequent: &str) -> FuzzySystem<f64> {
        FuzzySystem::new(vec![unit_var("A")], unit_var("F"), vec![Rule::new([("A", "L")], consequent).unwrap()])
            .unwrap()
    }

    #[test]
    fn fully_fired_symmetric_consequent_defuzzifies_to_its_axis() {
        let sys = single_rule("M");
        let value = sys.evaluate(&[("A", 1.0)]).unwrap();
        assert!((value - 0.5).abs() < 1e-12, "{value}");
    }

    #[test]
    fn mirror_consequents_at_equal_strength_balance_at_half() {
        let rules = vec![
            Rule::new([("A", "M")], "Z").unwrap(),
            Rule::new([("B", "M")], "L").unwrap(),
        ];
        let sys = FuzzySystem::new(vec![unit_var("A"), unit_var("B")], unit_var("F"), rules).unwrap();
        let value = sys.evaluate(&[("A", 0.3), ("B", 0.3)]).unwrap();
        assert!((value - 0.5).abs() < 1e-12, "{value}");
    }

    #[test]
    fn fire_strength_is_weighted_min() {
        let sys = FuzzySystem::new(
            vec![unit_var("A"), unit_var("B")],
            unit_var("F"),
            vec![Rule::new([("A", "M")], "M").unwrap()],
        )
        .unwrap();
        // M(0.4) = 0.8, Z(0.2) = 0.6
        let rule = Rule::new([("A", "M"), ("B", "Z")], "L").unwrap();
        let s = sys.fire_strength(&rule, &[("A", 0.4), ("B", 0.2)]).unwrap();
        assert!((s - 0.6).abs() < 1e-12);
        // absorbing zero
        assert_eq!(sys.fire_strength(&rule, &[("A", 0.4), ("B", 0.9)]).unwrap(), 0.0);
        let single = Rule::new([("B", "Z")], "Z").unwrap();
        assert!((sys.fire_strength(&single, &[("B", 0.35)]).unwrap() - 0.3).abs() < 1e-12);
        let half = Rule::weighted([("B", "Z")], "Z", 0.5).unwrap();
        assert!((sys.fire_strength(&half, &[("B", 0.35)]).unwrap() - 0.15).abs() < 1e-12);
    }

    #[test]
    fn unknown_names_are_configuration_errors() {
        let sys = single_rule("M");
        let bad_var = Rule::new([("Q", "L")], "M").unwrap();
        assert!(matches!(sys.fire_strength(&bad_var, &[("A", 0.1)]), Err(Error::Rule { .. })));
        let bad_term = Rule::new([("A", "XL")], "M").unwrap();
        assert!(sys.fire_strength(&bad_term, &[("A", 0.1)]).is_err());
        let bad_out = FuzzySystem::new(
            vec![unit_var("A")],
            unit_var("F"),
            vec![Rule::new([("A", "L")], "HUGE").unwrap()],
        );
        assert!(matches!(bad_out, Err(Error::Rule { index: 1, .. })));
        assert!(matches!(sys.evaluate(&[]), Err(Error::MissingInput(name)) if name == "A"));
    }

    #[test]
    fn empty_aggregate_falls_back_to_midpoint_and_is_flagged() {
        let sys = single_rule("M");
        let inf = sys.infer(&[("A", 0.2)]).unwrap();
        assert!(inf.empty_aggregate);
        assert_eq!(inf.value, 0.5);
        assert!(!sys.infer(&[("A", 0.9)]).unwrap().empty_aggregate);
    }

    #[test]
    fn out_of_universe_inputs_are_clamped() {
        let sys = single_rule("L");
        assert_eq!(sys.evaluate(&[("A", 40.0)]).unwrap(), sys.evaluate(&[("A", 1.0)]).unwrap());
    }

    #[test]
    fn resolution_floor_enforced() {
        let rules = vec![Rule::new([("A", "L")], "M").unwrap()];
        assert!(FuzzySystem::with_resolution(vec![unit_var("A")], unit_var("F"), rules.clone(), 100).is_err());
        assert!(FuzzySystem::with_resolution(vec![unit_var("A")], unit_var("F"), rules, 101).is_ok());
    }

    #[test]
    fn rejects_duplicate_or_shadowing_variables() {
        let rules = vec![Rule::new([("A", "L")], "M").unwrap()];
        assert!(FuzzySystem::new(vec![unit_var("A"), unit_var("A")], unit_var("F"), rules.clone()).is_err());
        assert!(FuzzySystem::new(vec![unit_var("A")], unit_var("A"), rules).is_err());
    }

    #[test]
    fn document_round_trip() {
        let sys = single_rule("M");
        let json = serde_json::to_string(&sys.to_doc()).unwrap();
        let doc: FuzzySystemDoc<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(FuzzySystem::try_from(doc).unwrap(), sys);
    }

    #[test]
    fn document_rule_errors_carry_one_based_index() {
        let mut doc = single_rule("M").to_doc();
        doc.rules.push(RuleDoc { antecedents: vec![], consequent: "M".into(), weight: 1.0 });
        let err = FuzzySystem::try_from(doc).unwrap_err();
        assert!(matches!(err, Error::Rule { index: 2, .. }), "{err}");
    }
}
