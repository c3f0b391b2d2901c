use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Source voltage as a function of time.
#[derive(Debug, Clone, PartialEq)]
pub enum Waveform<T> {
    /// `offset + amplitude * sin(2 pi frequency t + phase)`
    Sine { amplitude: T, frequency: T, phase: T, offset: T },
    Constant { level: T },
    /// Linear interpolation between `(t, v)` breakpoints; holds the end
    /// values outside the breakpoint range.
    Piecewise { points: Vec<(T, T)> },
}

impl<T: Scalar> Waveform<T> {
    pub fn sine(amplitude: T, frequency: T) -> Result<Self> {
        Self::Sine { amplitude, frequency, phase: T::zero(), offset: T::zero() }.validated()
    }

    pub fn constant(level: T) -> Result<Self> {
        Self::Constant { level }.validated()
    }

    pub fn piecewise(points: Vec<(T, T)>) -> Result<Self> {
        Self::Piecewise { points }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        match &self {
            Self::Sine { amplitude, frequency, phase, offset } => {
                if !(frequency.is_finite() && *frequency > T::zero()) {
                    return Err(Error::Waveform(format!("sine frequency must be positive, got {frequency}")));
                }
                if [amplitude, phase, offset].iter().any(|v| !v.is_finite()) {
                    return Err(Error::Waveform("sine parameters must be finite".into()));
                }
            }
            Self::Constant { level } => {
                if !level.is_finite() {
                    return Err(Error::Waveform("constant level must be finite".into()));
                }
            }
            Self::Piecewise { points } => {
                if points.is_empty() {
                    return Err(Error::Waveform("piecewise source needs at least one breakpoint".into()));
                }
                if points.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
                    return Err(Error::Waveform("piecewise breakpoints must be finite".into()));
                }
                if points.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return Err(Error::Waveform("piecewise breakpoints must be strictly increasing in t".into()));
                }
            }
        }
        Ok(self)
    }

    pub fn eval(&self, t: T) -> T {
        match self {
            Self::Sine { amplitude, frequency, phase, offset } => {
                let omega = T::lit(2.0 * std::f64::consts::PI) * *frequency;
                *offset + *amplitude * (omega * t + *phase).sin()
            }
            Self::Constant { level } => *level,
            Self::Piecewise { points } => {
                let (first, last) = (points[0], points[points.len() - 1]);
                if t <= first.0 {
                    return first.1;
                }
                if t >= last.0 {
                    return last.1;
                }
                // first index whose time exceeds t; 1 <= k < len
                let k = points.partition_point(|&(tk, _)| tk <= t);
                let (t0, v0) = points[k - 1];
                let (t1, v1) = points[k];
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }
}
