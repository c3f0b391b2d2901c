//! Series test circuit, time stepping and trace analysis.

mod analysis;
mod circuit;
mod waveform;

pub use analysis::{hysteresis_lobe_area, pinch_check, summarize, RunSummary, SATURATION_HIGH, SATURATION_LOW};
pub use circuit::{simulate, CircuitConfig, SimRecord, MAX_STEPS};
pub use waveform::Waveform;
