//! Canned scenarios for the series test circuit: a sine source, a 2 kΩ
//! series resistor and a memristor with `k = 1e4`, `R_on = 100 Ω`,
//! `R_off = 16 kΩ` starting from 11 kΩ. One 1 Hz period at `dt = 1e-4` s.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::{CircuitDoc, DeviceDoc, FuzzyWindowDoc, SourceDoc, WindowDoc};

pub const SERIES_RESISTANCE: f64 = 2000.0;
pub const R_ON: f64 = 100.0;
pub const R_OFF: f64 = 16_000.0;
pub const R_INIT: f64 = 11_000.0;
pub const K: f64 = 10_000.0;
pub const FREQUENCY: f64 = 1.0;
pub const DT: f64 = 1e-4;
pub const DURATION: f64 = 1.0;
pub const LARGE_AMPLITUDE: f64 = 5.0;
pub const THRESHOLD_AMPLITUDE: f64 = 0.2;
pub const JOGLEKAR_P: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    /// 5 V drive, current-driven fuzzy window.
    Fig3,
    /// 0.2 V drive, voltage-threshold fuzzy window.
    Fig5,
    /// 5 V drive, voltage-threshold fuzzy window.
    Fig6,
    /// 5 V drive, Joglekar p = 10; compares against the fuzzy window.
    JoglekarVsFuzzy,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig3, Preset::Fig5, Preset::Fig6, Preset::JoglekarVsFuzzy];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig3 => "fig3",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::JoglekarVsFuzzy => "joglekar_vs_fuzzy",
        }
    }

    pub fn circuit(self) -> CircuitDoc {
        let (amplitude, window) = match self {
            Preset::Fig3 => (LARGE_AMPLITUDE, WindowDoc::Fuzzy(FuzzyWindowDoc::default())),
            Preset::Fig5 => (THRESHOLD_AMPLITUDE, WindowDoc::FuzzyThreshold(FuzzyWindowDoc::default())),
            Preset::Fig6 => (LARGE_AMPLITUDE, WindowDoc::FuzzyThreshold(FuzzyWindowDoc::default())),
            Preset::JoglekarVsFuzzy => (LARGE_AMPLITUDE, WindowDoc::Joglekar { p: JOGLEKAR_P }),
        };
        CircuitDoc {
            source: Some(SourceDoc::Sine { amplitude, frequency: FREQUENCY, phase: 0.0, offset: 0.0 }),
            series_resistance: Some(SERIES_RESISTANCE),
            device: Some(DeviceDoc {
                r_on: Some(R_ON),
                r_off: Some(R_OFF),
                k: Some(K),
                x_init: None,
                r_init: Some(R_INIT),
            }),
            window: Some(window),
            dt: Some(DT),
            duration: Some(DURATION),
        }
    }

    /// Windows compared side by side by `compare`, when the preset defines them.
    pub fn compare_windows(self) -> Option<Vec<WindowDoc>> {
        match self {
            Preset::JoglekarVsFuzzy => Some(vec![
                WindowDoc::Joglekar { p: JOGLEKAR_P },
                WindowDoc::Fuzzy(FuzzyWindowDoc::default()),
            ]),
            Preset::Fig5 | Preset::Fig6 => Some(vec![
                WindowDoc::Fuzzy(FuzzyWindowDoc::default()),
                WindowDoc::FuzzyThreshold(FuzzyWindowDoc::default()),
            ]),
            Preset::Fig3 => None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
                format!("unknown preset `{s}` (expected one of {})", names.join(", "))
            })
    }
}
