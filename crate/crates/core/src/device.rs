//! The memristor element: memristance from the normalized state and the
//! windowed drift equation `dx/dt = k i f(x, i, v)` with `k = mu_v R_on / D^2`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::windows::WindowSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceParams<T> {
    r_on: T,
    r_off: T,
    k: T,
    x_init: T,
}

impl<T: Scalar> DeviceParams<T> {
    pub fn new(r_on: T, r_off: T, k: T, x_init: T) -> Result<Self> {
        if !(r_on.is_finite() && r_off.is_finite() && r_on > T::zero() && r_on < r_off) {
            return Err(Error::Device(format!("need 0 < r_on < r_off, got r_on = {r_on}, r_off = {r_off}")));
        }
        if !(k.is_finite() && k > T::zero()) {
            return Err(Error::Device(format!("k must be positive, got {k}")));
        }
        if !(x_init >= T::zero() && x_init <= T::one()) {
            return Err(Error::Device(format!("x_init must lie in [0, 1], got {x_init}")));
        }
        Ok(Self { r_on, r_off, k, x_init })
    }

    /// Seeds the initial state from an initial memristance.
    pub fn with_initial_resistance(r_on: T, r_off: T, k: T, r_init: T) -> Result<Self> {
        let probe = Self::new(r_on, r_off, k, T::zero())?;
        let x_init = probe.x_from_resistance(r_init)?;
        Self::new(r_on, r_off, k, x_init)
    }

    pub fn r_on(&self) -> T {
        self.r_on
    }

    pub fn r_off(&self) -> T {
        self.r_off
    }

    pub fn k(&self) -> T {
        self.k
    }

    pub fn x_init(&self) -> T {
        self.x_init
    }

    pub fn initial_state(&self) -> DeviceState<T> {
        DeviceState { x: self.x_init }
    }

    /// `R(x) = R_on x + R_off (1 - x)`.
    #[inline]
    pub fn memristance(&self, x: T) -> T {
        self.r_on * x + self.r_off * (T::one() - x)
    }

    /// Inverse of [`memristance`](Self::memristance).
    pub fn x_from_resistance(&self, r: T) -> Result<T> {
        if !(r >= self.r_on && r <= self.r_off) {
            return Err(Error::Domain(format!(
                "resistance {r} outside [{}, {}]",
                self.r_on, self.r_off
            )));
        }
        Ok((self.r_off - r) / (self.r_off - self.r_on))
    }

    #[inline]
    pub fn state_derivative(&self, x: T, i: T, v: T, window: &WindowSpec<T>) -> T {
        self.k * i * window.eval(x, i, v)
    }

    /// One forward-Euler step, clamped to `[0, 1]`.
    #[inline]
    pub fn step(&self, state: DeviceState<T>, i: T, v: T, window: &WindowSpec<T>, dt: T) -> DeviceState<T> {
        let dx = self.state_derivative(state.x, i, v, window);
        DeviceState::clamped(state.x + dt * dx)
    }
}

/// Normalized doped-region width `w / D`, kept in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceState<T> {
    pub x: T,
}

impl<T: Scalar> DeviceState<T> {
    #[inline]
    pub fn clamped(x: T) -> Self {
        Self { x: x.max(T::zero()).min(T::one()) }
    }
}
