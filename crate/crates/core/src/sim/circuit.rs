use crate::device::DeviceParams;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sim::Waveform;
use crate::windows::WindowSpec;

/// Upper bound on the number of integration steps per run.
pub const MAX_STEPS: f64 = 1e8;

/// Voltage source, series resistor and memristor in one loop.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitConfig<T> {
    pub source: Waveform<T>,
    pub series_resistance: T,
    pub device: DeviceParams<T>,
    pub window: WindowSpec<T>,
    pub dt: T,
    pub duration: T,
}

/// One integrator sample. The state fields (`x`, `r`, `f`) are the values
/// *before* the update applied at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimRecord<T> {
    pub t: T,
    pub v_src: T,
    pub i: T,
    pub v_mem: T,
    pub x: T,
    pub r: T,
    pub f: T,
}

impl<T: Scalar> CircuitConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.series_resistance.is_finite() && self.series_resistance >= T::zero()) {
            return Err(Error::Circuit(format!(
                "series_resistance must be >= 0, got {}",
                self.series_resistance
            )));
        }
        if !(self.dt.is_finite() && self.dt > T::zero()) {
            return Err(Error::Circuit(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.duration.is_finite() && self.duration >= self.dt) {
            return Err(Error::Circuit(format!("duration must be >= dt, got {}", self.duration)));
        }
        if (self.duration / self.dt).to_f64().unwrap_or(f64::INFINITY) > MAX_STEPS {
            return Err(Error::Circuit(format!("duration/dt exceeds {MAX_STEPS:e} steps")));
        }
        Ok(())
    }

    /// Number of integration steps, `round(duration / dt)`.
    pub fn steps(&self) -> usize {
        (self.duration / self.dt).round().to_usize().unwrap_or(0)
    }
}

/// Runs the loop and returns `steps() + 1` records at `t = n dt`, the last
/// one carrying the final state.
pub fn simulate<T: Scalar>(cfg: &CircuitConfig<T>) -> Result<Vec<SimRecord<T>>> {
    cfg.validate()?;
    let steps = cfg.steps();
    let mut records = Vec::with_capacity(steps + 1);
    let mut state = cfg.device.initial_state();
    for n in 0..=steps {
        let t = T::from_index(n) * cfg.dt;
        let v_src = cfg.source.eval(t);
        let r = cfg.device.memristance(state.x);
        let i = v_src / (r + cfg.series_resistance);
        let v_mem = i * r;
        let f = cfg.window.eval(state.x, i, v_mem);
        records.push(SimRecord { t, v_src, i, v_mem, x: state.x, r, f });
        let dx = cfg.device.k() * i * f;
        state = crate::device::DeviceState::clamped(state.x + cfg.dt * dx);
    }
    Ok(records)
}
