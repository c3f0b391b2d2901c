//! Window functions scaling the dopant drift rate.
//!
//! Every window is evaluated with the same arguments, the normalized state
//! `x`, the device current `i` and the device voltage `v`; each kind reads
//! only what it needs.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::{defaults, FuzzySystem};
use crate::scalar::Scalar;

/// Which crisp quantity drives the fuzzy system's first input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Drive {
    Current,
    Voltage,
}

impl Drive {
    /// Variable name the fuzzy system must declare for this drive.
    pub fn variable(self) -> &'static str {
        match self {
            Drive::Current => "I",
            Drive::Voltage => "V",
        }
    }
}

/// Name of the state input every fuzzy window system must declare.
pub const STATE_VARIABLE: &str = "X";

/// Fuzzy window: a validated two-input system plus an output gain.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyWindow<T> {
    system: Arc<FuzzySystem<T>>,
    drive: Drive,
    gain: T,
    drive_slot: usize,
    state_slot: usize,
}

impl<T: Scalar> FuzzyWindow<T> {
    pub fn new(system: impl Into<Arc<FuzzySystem<T>>>, drive: Drive, gain: T) -> Result<Self> {
        let system = system.into();
        if !(gain > T::zero() && gain.is_finite()) {
            return Err(Error::Window(format!("gain must be positive, got {gain}")));
        }
        if system.inputs().len() != 2 {
            return Err(Error::Window(format!(
                "fuzzy window needs exactly two inputs ({} and {STATE_VARIABLE}), found {}",
                drive.variable(),
                system.inputs().len()
            )));
        }
        let slot = |name: &str| {
            system
                .input_index(name)
                .ok_or_else(|| Error::Window(format!("fuzzy system has no input `{name}`")))
        };
        let drive_slot = slot(drive.variable())?;
        let state_slot = slot(STATE_VARIABLE)?;
        let (lo, hi) = system.output().universe();
        if lo != T::zero() || hi != T::one() {
            return Err(Error::Window(format!("output universe must be [0, 1], got [{lo}, {hi}]")));
        }
        Ok(Self { system, drive, gain, drive_slot, state_slot })
    }

    pub fn system(&self) -> &FuzzySystem<T> {
        &self.system
    }

    pub fn drive(&self) -> Drive {
        self.drive
    }

    pub fn gain(&self) -> T {
        self.gain
    }

    #[inline]
    fn eval(&self, x: T, i: T, v: T) -> T {
        let mut crisp = [T::zero(); 2];
        crisp[self.drive_slot] = match self.drive {
            Drive::Current => i,
            Drive::Voltage => v,
        };
        crisp[self.state_slot] = x;
        self.gain * self.system.infer_ordered(&crisp).value
    }
}

/// Window function selection with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum WindowSpec<T> {
    /// `f = 1`: linear dopant drift.
    None,
    /// `f = x - x^2`
    Strukov,
    /// `f = 1 - (2x - 1)^(2p)`
    Joglekar { p: u32 },
    /// `f = 1 - (x - stp(-i))^(2p)`
    Biolek { p: u32 },
    /// `f = j (1 - ((x - 0.5)^2 + 0.75)^p)`
    Prodromakis { p: T, j: T },
    /// Fuzzy system on device current and state.
    Fuzzy(FuzzyWindow<T>),
    /// Fuzzy system on device voltage and state.
    FuzzyThreshold(FuzzyWindow<T>),
}

impl<T: Scalar> WindowSpec<T> {
    pub fn joglekar(p: u32) -> Result<Self> {
        check_order(p)?;
        Ok(Self::Joglekar { p })
    }

    pub fn biolek(p: u32) -> Result<Self> {
        check_order(p)?;
        Ok(Self::Biolek { p })
    }

    pub fn prodromakis(p: T, j: T) -> Result<Self> {
        if !(p.is_finite() && p >= T::one()) {
            return Err(Error::Window(format!("prodromakis p must be >= 1, got {p}")));
        }
        if !(j.is_finite() && j > T::zero()) {
            return Err(Error::Window(format!("prodromakis j must be positive, got {j}")));
        }
        Ok(Self::Prodromakis { p, j })
    }

    /// Current-driven fuzzy window. The system must declare inputs `I` and `X`.
    pub fn fuzzy(system: impl Into<Arc<FuzzySystem<T>>>, gain: T) -> Result<Self> {
        FuzzyWindow::new(system, Drive::Current, gain).map(Self::Fuzzy)
    }

    /// Voltage-driven fuzzy window. The system must declare inputs `V` and `X`.
    pub fn fuzzy_threshold(system: impl Into<Arc<FuzzySystem<T>>>, gain: T) -> Result<Self> {
        FuzzyWindow::new(system, Drive::Voltage, gain).map(Self::FuzzyThreshold)
    }

    /// Current-driven fuzzy window with the default rule base and unit gain.
    pub fn default_fuzzy() -> Self {
        Self::fuzzy(defaults::current_window(), T::one()).expect("default system is valid")
    }

    /// Voltage-threshold fuzzy window with the default rule base and unit gain.
    pub fn default_fuzzy_threshold() -> Self {
        Self::fuzzy_threshold(defaults::voltage_threshold_window(), T::one())
            .expect("default system is valid")
    }

    /// Short identifier, as used in configuration documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Strukov => "strukov",
            Self::Joglekar { .. } => "joglekar",
            Self::Biolek { .. } => "biolek",
            Self::Prodromakis { .. } => "prodromakis",
            Self::Fuzzy(_) => "fuzzy",
            Self::FuzzyThreshold(_) => "fuzzy_threshold",
        }
    }

    pub fn as_fuzzy(&self) -> Option<&FuzzyWindow<T>> {
        match self {
            Self::Fuzzy(w) | Self::FuzzyThreshold(w) => Some(w),
            _ => None,
        }
    }

    /// Window value at state `x`, device current `i` and device voltage `v`.
    ///
    /// Values are not clamped; `prodromakis` with `j > 1` may exceed 1.
    pub fn eval(&self, x: T, i: T, v: T) -> T {
        let one = T::one();
        match self {
            Self::None => one,
            Self::Strukov => x - x * x,
            Self::Joglekar { p } => {
                let s = T::lit(2.0) * x - one;
                one - s.powi(2 * *p as i32)
            }
            Self::Biolek { p } => one - (x - unit_step(-i)).powi(2 * *p as i32),
            Self::Prodromakis { p, j } => {
                let h = T::lit(0.5);
                let base = (x - h) * (x - h) + T::lit(0.75);
                *j * (one - base.powf(*p))
            }
            Self::Fuzzy(w) | Self::FuzzyThreshold(w) => w.eval(x, i, v),
        }
    }
}

/// `1` for `u >= 0`, `0` otherwise.
#[inline]
fn unit_step<T: Scalar>(u: T) -> T {
    if u >= T::zero() {
        T::one()
    } else {
        T::zero()
    }
}

fn check_order(p: u32) -> Result<()> {
    if p == 0 {
        return Err(Error::Window("p must be a positive integer".into()));
    }
    if p > i32::MAX as u32 / 2 {
        return Err(Error::Window(format!("p = {p} is too large")));
    }
    Ok(())
}
