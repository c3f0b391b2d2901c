//! Memristor dynamics under pluggable window functions.
//!
//! The state `x = w / D` of a dopant-drift memristor evolves as
//! `dx/dt = k i f(x, i, v)`, where `f` is a window function. This crate
//! provides the classic closed-form windows, a Mamdani fuzzy window (with
//! and without a voltage threshold), the series test circuit and the
//! analysis helpers used to characterise the resulting I-V loops.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*F64` / `*F32` aliases below name the concrete instantiations.

pub mod device;
pub mod error;
pub mod fuzzy;
mod scalar;
pub mod sim;
pub mod windows;

pub use device::{DeviceParams, DeviceState};
pub use error::{Error, Result};
pub use fuzzy::{FuzzySystem, LinguisticVariable, MembershipFunction, Rule};
pub use scalar::Scalar;
pub use sim::{simulate, CircuitConfig, RunSummary, SimRecord, Waveform};
pub use windows::{Drive, FuzzyWindow, WindowSpec};

pub type MembershipFunctionF64 = MembershipFunction<f64>;
pub type FuzzySystemF64 = FuzzySystem<f64>;
pub type WindowSpecF64 = WindowSpec<f64>;
pub type DeviceParamsF64 = DeviceParams<f64>;
pub type WaveformF64 = Waveform<f64>;
pub type CircuitConfigF64 = CircuitConfig<f64>;
pub type SimRecordF64 = SimRecord<f64>;
pub type RunSummaryF64 = RunSummary<f64>;

pub type MembershipFunctionF32 = MembershipFunction<f32>;
pub type FuzzySystemF32 = FuzzySystem<f32>;
pub type WindowSpecF32 = WindowSpec<f32>;
pub type DeviceParamsF32 = DeviceParams<f32>;
pub type WaveformF32 = Waveform<f32>;
pub type CircuitConfigF32 = CircuitConfig<f32>;
pub type SimRecordF32 = SimRecord<f32>;
pub type RunSummaryF32 = RunSummary<f32>;
