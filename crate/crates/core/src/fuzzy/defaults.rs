//! Default rule bases for the fuzzy windows.
//!
//! Current-driven window (inputs `I`, `X`; output `F`):
//!
//! | I \ X | Z | M | L |
//! |-------|---|---|---|
//! | N     | Z | M | L |
//! | P     | L | M | Z |
//!
//! Negative current (shrinking the doped region) is fastest near `x = 1`
//! and stalls near `x = 0`; positive current is the mirror image. Because
//! no cell forces `F = 0` on the receding side of a boundary, the state can
//! always leave a terminal value.
//!
//! The voltage-threshold window swaps `I` for the device voltage `V`, adds
//! a trapezoidal `Z` term around 0 V and a seventh rule `(V is Z) -> Off`
//! whose consequent is a crisp zero. Inside the dead band only that rule
//! fires, so the defuzzified window is exactly 0.

use super::{FuzzySystem, LinguisticVariable, MembershipFunction, Rule};
use crate::scalar::Scalar;

/// Half-width of the current universe, A.
pub const CURRENT_SPAN: f64 = 3e-3;
/// Current at which `N` and `P` saturate, A.
pub const CURRENT_KNEE: f64 = 1e-3;
/// Half-width of the voltage universe, V.
pub const VOLTAGE_SPAN: f64 = 5.0;
/// `V is Z` holds fully for `|v|` up to this value, V.
pub const DEAD_BAND: f64 = 0.15;
/// `V is Z` vanishes beyond this value, V.
pub const DEAD_BAND_EDGE: f64 = 0.25;
/// `V is N` / `V is P` start rising at this magnitude, V.
pub const THRESHOLD: f64 = 0.2;
/// `V is N` / `V is P` saturate at this magnitude, V.
pub const THRESHOLD_KNEE: f64 = 0.3;

fn tri<T: Scalar>(a: f64, b: f64, c: f64) -> MembershipFunction<T> {
    MembershipFunction::triangular(T::lit(a), T::lit(b), T::lit(c)).expect("ordered breakpoints")
}

fn trap<T: Scalar>(a: f64, b: f64, c: f64, d: f64) -> MembershipFunction<T> {
    MembershipFunction::trapezoidal(T::lit(a), T::lit(b), T::lit(c), T::lit(d)).expect("ordered breakpoints")
}

/// Three-term partition `Z, M, L` of `[0, 1]` with 50 % overlap.
fn unit_partition<T: Scalar>(name: &str) -> LinguisticVariable<T> {
    LinguisticVariable::new(
        name,
        (T::zero(), T::one()),
        [("Z", tri(0.0, 0.0, 0.5)), ("M", tri(0.0, 0.5, 1.0)), ("L", tri(0.5, 1.0, 1.0))],
    )
    .expect("valid partition")
}

fn base_rules<T: Scalar>(drive: &str) -> Vec<Rule<T>> {
    [
        ("N", "Z", "Z"),
        ("N", "M", "M"),
        ("N", "L", "L"),
        ("P", "Z", "L"),
        ("P", "M", "M"),
        ("P", "L", "Z"),
    ]
    .into_iter()
    .map(|(d, x, f)| Rule::new([(drive, d), ("X", x)], f).expect("valid rule"))
    .collect()
}

/// Six-rule window keyed on device current `I` and state `X`.
pub fn current_window<T: Scalar>() -> FuzzySystem<T> {
    let current = LinguisticVariable::new(
        "I",
        (T::lit(-CURRENT_SPAN), T::lit(CURRENT_SPAN)),
        [
            ("N", trap(-CURRENT_SPAN, -CURRENT_SPAN, -CURRENT_KNEE, CURRENT_KNEE)),
            ("P", trap(-CURRENT_KNEE, CURRENT_KNEE, CURRENT_SPAN, CURRENT_SPAN)),
        ],
    )
    .expect("valid current variable");
    FuzzySystem::new(vec![current, unit_partition("X")], unit_partition("F"), base_rules("I"))
        .expect("valid default system")
}

/// Seven-rule window keyed on device voltage `V` and state `X`, with an
/// excitation threshold of about 0.2 V.
pub fn voltage_threshold_window<T: Scalar>() -> FuzzySystem<T> {
    let voltage = LinguisticVariable::new(
        "V",
        (T::lit(-VOLTAGE_SPAN), T::lit(VOLTAGE_SPAN)),
        [
            ("N", trap(-VOLTAGE_SPAN, -VOLTAGE_SPAN, -THRESHOLD_KNEE, -THRESHOLD)),
            ("Z", trap(-DEAD_BAND_EDGE, -DEAD_BAND, DEAD_BAND, DEAD_BAND_EDGE)),
            ("P", trap(THRESHOLD, THRESHOLD_KNEE, VOLTAGE_SPAN, VOLTAGE_SPAN)),
        ],
    )
    .expect("valid voltage variable");
    let output = LinguisticVariable::new(
        "F",
        (T::zero(), T::one()),
        [
            ("Z", tri(0.0, 0.0, 0.5)),
            ("M", tri(0.0, 0.5, 1.0)),
            ("L", tri(0.5, 1.0, 1.0)),
            ("Off", tri(0.0, 0.0, 0.0)),
        ],
    )
    .expect("valid output variable");
    let mut rules = base_rules("V");
    rules.push(Rule::new([("V", "Z")], "Off").expect("valid rule"));
    FuzzySystem::new(vec![voltage, unit_partition("X")], output, rules).expect("valid default system")
}
