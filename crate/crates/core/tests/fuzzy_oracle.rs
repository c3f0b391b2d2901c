//! Engine vs. an independent brute-force Mamdani evaluator, plus the
//! algebraic invariants of the inference.

use memfuzz_core::fuzzy::{defaults, FuzzySystem, LinguisticVariable, MembershipFunction, Rule};

/// Straight transcription of a trapezoid; no shared code with the engine.
fn trap(u: f64, a: f64, b: f64, c: f64, d: f64) -> f64 {
    if u < a || u > d {
        0.0
    } else if u >= b && u <= c {
        1.0
    } else if u < b {
        (u - a) / (b - a)
    } else {
        (d - u) / (d - c)
    }
}

type Shape = [f64; 4];

struct OracleSystem {
    drive_universe: (f64, f64),
    drive_terms: Vec<(&'static str, Shape)>,
    output_terms: Vec<(&'static str, Shape)>,
    // (drive term, optional state term, output term)
    rules: Vec<(&'static str, Option<&'static str>, &'static str)>,
}

const X_TERMS: [(&str, Shape); 3] =
    [("Z", [0.0, 0.0, 0.0, 0.5]), ("M", [0.0, 0.5, 0.5, 1.0]), ("L", [0.5, 1.0, 1.0, 1.0])];

fn six_rules() -> Vec<(&'static str, Option<&'static str>, &'static str)> {
    vec![
        ("N", Some("Z"), "Z"),
        ("N", Some("M"), "M"),
        ("N", Some("L"), "L"),
        ("P", Some("Z"), "L"),
        ("P", Some("M"), "M"),
        ("P", Some("L"), "Z"),
    ]
}

fn oracle_current() -> OracleSystem {
    OracleSystem {
        drive_universe: (-3e-3, 3e-3),
        drive_terms: vec![("N", [-3e-3, -3e-3, -1e-3, 1e-3]), ("P", [-1e-3, 1e-3, 3e-3, 3e-3])],
        output_terms: X_TERMS.to_vec(),
        rules: six_rules(),
    }
}

fn oracle_threshold() -> OracleSystem {
    let mut rules = six_rules();
    rules.push(("Z", None, "Off"));
    let mut out = X_TERMS.to_vec();
    out.push(("Off", [0.0, 0.0, 0.0, 0.0]));
    OracleSystem {
        drive_universe: (-5.0, 5.0),
        drive_terms: vec![
            ("N", [-5.0, -5.0, -0.3, -0.2]),
            ("Z", [-0.25, -0.15, 0.15, 0.25]),
            ("P", [0.2, 0.3, 5.0, 5.0]),
        ],
        output_terms: out,
        rules,
    }
}

fn shape(terms: &[(&str, Shape)], label: &str) -> Shape {
    terms.iter().find(|(l, _)| *l == label).unwrap().1
}

/// Double loop over grid points and rules.
fn oracle_eval(sys: &OracleSystem, drive: f64, x: f64, n: usize) -> f64 {
    let drive = drive.clamp(sys.drive_universe.0, sys.drive_universe.1);
    let x = x.clamp(0.0, 1.0);
    let strengths: Vec<(f64, Shape)> = sys
        .rules
        .iter()
        .map(|&(d, s, out)| {
            let [a, b, c, e] = shape(&sys.drive_terms, d);
            let mut w = trap(drive, a, b, c, e);
            if let Some(s) = s {
                let [a, b, c, e] = shape(&X_TERMS, s);
                w = w.min(trap(x, a, b, c, e));
            }
            (w, shape(&sys.output_terms, out))
        })
        .filter(|(w, _)| *w > 0.0)
        .collect();
    let h = 1.0 / (n - 1) as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for k in 0..n {
        let u = k as f64 * h;
        let mut mu: f64 = 0.0;
        for &(w, [a, b, c, d]) in &strengths {
            mu = mu.max(w.min(trap(u, a, b, c, d)));
        }
        num += u * mu;
        den += mu;
    }
    if den == 0.0 {
        0.5
    } else {
        num / den
    }
}

#[test]
fn saturated_positive_current_at_empty_state_matches_fine_oracle() {
    let n = 1_000_000;
    let expected = oracle_eval(&oracle_current(), 2e-3, 0.0, n);
    assert!(expected > 0.7 && expected < 0.9, "{expected}");
    let sys = defaults::current_window::<f64>().resampled(n).unwrap();
    let got = sys.evaluate(&[("I", 2e-3), ("X", 0.0)]).unwrap();
    assert!((got - expected).abs() < 1e-6, "{got} vs {expected}");
}

#[test]
fn receding_from_full_state_matches_fine_oracle() {
    let n = 1_000_000;
    let expected = oracle_eval(&oracle_current(), -2e-3, 1.0, n);
    assert!(expected > 0.5);
    let sys = defaults::current_window::<f64>().resampled(n).unwrap();
    let got = sys.evaluate(&[("I", -2e-3), ("X", 1.0)]).unwrap();
    assert!((got - expected).abs() < 1e-6);
}

#[test]
fn default_resolution_matches_oracle_at_same_resolution() {
    let n = memfuzz_core::fuzzy::DEFAULT_RESOLUTION;
    let cur = defaults::current_window::<f64>();
    let thr = defaults::voltage_threshold_window::<f64>();
    for a in 0..=30 {
        for b in 0..=30 {
            let x = b as f64 / 30.0;
            let i = -3.5e-3 + 7e-3 * a as f64 / 30.0;
            let v = -0.6 + 1.2 * a as f64 / 30.0;
            let e1 = oracle_eval(&oracle_current(), i, x, n);
            let g1 = cur.evaluate(&[("I", i), ("X", x)]).unwrap();
            assert!((e1 - g1).abs() < 1e-12, "i={i} x={x}: {g1} vs {e1}");
            let e2 = oracle_eval(&oracle_threshold(), v, x, n);
            let g2 = thr.evaluate(&[("V", v), ("X", x)]).unwrap();
            assert!((e2 - g2).abs() < 1e-12, "v={v} x={x}: {g2} vs {e2}");
        }
    }
}

#[test]
fn invariant_under_rule_reordering() {
    let sys = defaults::voltage_threshold_window::<f64>();
    let mut rules = sys.rules().to_vec();
    rules.reverse();
    rules.swap(1, 4);
    let shuffled = FuzzySystem::new(sys.inputs().to_vec(), sys.output().clone(), rules).unwrap();
    for a in 0..=20 {
        for b in 0..=20 {
            let inputs = [("V", -5.0 + a as f64 / 2.0), ("X", b as f64 / 20.0)];
            assert_eq!(sys.evaluate(&inputs).unwrap(), shuffled.evaluate(&inputs).unwrap());
        }
    }
}

#[test]
fn output_stays_in_universe() {
    let sys = defaults::current_window::<f64>();
    for a in 0..=50 {
        for b in 0..=50 {
            let f = sys.evaluate(&[("I", -4e-3 + 8e-3 * a as f64 / 50.0), ("X", b as f64 / 50.0)]).unwrap();
            assert!((0.0..=1.0).contains(&f));
        }
    }
}

#[test]
fn doubling_resolution_converges() {
    let base = defaults::current_window::<f64>();
    for res in [101usize, 1001, 4001] {
        let coarse = base.resampled(res).unwrap();
        let fine = base.resampled(2 * res - 1).unwrap();
        let bound = 10.0 / res as f64;
        for a in 0..=20 {
            for b in 0..=20 {
                let inputs = [("I", -3e-3 + 6e-3 * a as f64 / 20.0), ("X", b as f64 / 20.0)];
                let d = (coarse.evaluate(&inputs).unwrap() - fine.evaluate(&inputs).unwrap()).abs();
                assert!(d < bound, "res {res} {inputs:?}: {d}");
            }
        }
    }
}

#[test]
fn threshold_window_converges_outside_the_threshold_edge() {
    // the crisp-zero consequent weighs one grid point, so blending it with
    // continuous shapes (0.2 < |v| < 0.25) is resolution dependent; elsewhere
    // the usual bound holds
    let base = defaults::voltage_threshold_window::<f64>();
    let coarse = base.resampled(1001).unwrap();
    let fine = base.resampled(2001).unwrap();
    for a in 0..=40 {
        let v: f64 = -5.0 + 10.0 * a as f64 / 40.0;
        if v.abs() > 0.2 && v.abs() < 0.25 {
            continue;
        }
        for b in 0..=20 {
            let inputs = [("V", v), ("X", b as f64 / 20.0)];
            let d = (coarse.evaluate(&inputs).unwrap() - fine.evaluate(&inputs).unwrap()).abs();
            assert!(d < 10.0 / 1001.0, "{inputs:?}: {d}");
        }
    }
}

#[test]
fn mirror_symmetry_of_current_window() {
    let sys = defaults::current_window::<f64>();
    for a in 0..=20 {
        for b in 0..=20 {
            let i = -3e-3 + 6e-3 * a as f64 / 20.0;
            let x = b as f64 / 20.0;
            let lhs = sys.evaluate(&[("I", i), ("X", x)]).unwrap();
            let rhs = sys.evaluate(&[("I", -i), ("X", 1.0 - x)]).unwrap();
            assert!((lhs - rhs).abs() < 1e-9, "({i}, {x}): {lhs} vs {rhs}");
        }
    }
}

#[test]
fn surface_shape_plateaus_and_valleys() {
    let sys = defaults::current_window::<f64>();
    let f = |i: f64, x: f64| sys.evaluate(&[("I", i), ("X", x)]).unwrap();
    assert!(f(3e-3, 0.0) > f(3e-3, 1.0));
    assert!(f(-3e-3, 1.0) > f(-3e-3, 0.0));
    assert!(f(3e-3, 0.0) > 0.8 && f(-3e-3, 1.0) > 0.8);
    assert!(f(3e-3, 1.0) < 0.2 && f(-3e-3, 0.0) < 0.2);
}

#[test]
fn raising_a_lone_rule_never_moves_away_from_its_peak() {
    let ramp = LinguisticVariable::new(
        "A",
        (0.0, 1.0),
        [("R", MembershipFunction::trapezoidal(0.0, 1.0, 1.0, 1.0).unwrap())],
    )
    .unwrap();
    let out = |name: &str| {
        LinguisticVariable::new(
            name,
            (0.0, 1.0),
            [
                ("Z", MembershipFunction::triangular(0.0, 0.0, 0.5).unwrap()),
                ("M", MembershipFunction::triangular(0.0, 0.5, 1.0).unwrap()),
                ("L", MembershipFunction::triangular(0.5, 1.0, 1.0).unwrap()),
                ("S", MembershipFunction::trapezoidal(0.1, 0.3, 0.4, 0.9).unwrap()),
            ],
        )
        .unwrap()
    };
    for (label, peak) in [("Z", 0.0), ("M", 0.5), ("L", 1.0), ("S", 0.35)] {
        let sys = FuzzySystem::new(vec![ramp.clone()], out("F"), vec![Rule::new([("A", "R")], label).unwrap()])
            .unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..=100 {
            let value = sys.evaluate(&[("A", k as f64 / 100.0)]).unwrap();
            let dist = (value - peak).abs();
            assert!(dist <= prev + 1e-12, "{label}: strength {k}%: {dist} > {prev}");
            prev = dist;
        }
    }
}
