//! Scalar summaries of a simulated trace.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sim::SimRecord;

/// Saturation thresholds on the state.
pub const SATURATION_HIGH: f64 = 0.99;
pub const SATURATION_LOW: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary<T> {
    pub x_min: T,
    pub x_max: T,
    pub x_final: T,
    pub r_first: T,
    /// Memristance where the source voltage crosses zero, interpolated
    /// linearly between the bracketing samples.
    pub r_at_zero_crossings: Vec<T>,
    /// `max |r - r_first|`
    pub max_abs_dr: T,
    pub saturated: bool,
}

impl<T: Scalar> RunSummary<T> {
    /// `max_abs_dr / r_first`
    pub fn relative_dr(&self) -> T {
        self.max_abs_dr / self.r_first
    }
}

pub fn summarize<T: Scalar>(records: &[SimRecord<T>]) -> Result<RunSummary<T>> {
    let first = records
        .first()
        .ok_or_else(|| Error::Domain("cannot summarize an empty record list".into()))?;
    let last = records[records.len() - 1];
    let (mut x_min, mut x_max, mut max_abs_dr) = (first.x, first.x, T::zero());
    for rec in records {
        x_min = x_min.min(rec.x);
        x_max = x_max.max(rec.x);
        max_abs_dr = max_abs_dr.max((rec.r - first.r).abs());
    }
    let mut crossings = Vec::new();
    for (k, rec) in records.iter().enumerate() {
        if rec.v_src == T::zero() {
            crossings.push(rec.r);
        } else if let Some(next) = records.get(k + 1) {
            if next.v_src != T::zero() && (rec.v_src > T::zero()) != (next.v_src > T::zero()) {
                let frac = rec.v_src / (rec.v_src - next.v_src);
                crossings.push(rec.r + (next.r - rec.r) * frac);
            }
        }
    }
    Ok(RunSummary {
        x_min,
        x_max,
        x_final: last.x,
        r_first: first.r,
        r_at_zero_crossings: crossings,
        max_abs_dr,
        saturated: x_max >= T::lit(SATURATION_HIGH) || x_min <= T::lit(SATURATION_LOW),
    })
}

/// True iff every sample with `|v_mem| <= v_eps` also has `|i| <= v_eps / r_on`,
/// i.e. the I-V curve passes through the origin whenever the voltage does.
pub fn pinch_check<T: Scalar>(records: &[SimRecord<T>], v_eps: T, r_on: T) -> bool {
    let i_eps = v_eps / r_on;
    records
        .iter()
        .filter(|r| r.v_mem.abs() <= v_eps)
        .all(|r| r.i.abs() <= i_eps)
}

/// Enclosed areas of the positive-voltage and negative-voltage lobes of the
/// `(v_mem, i)` curve, each closed through the origin. Returned as
/// non-negative magnitudes `(positive, negative)`.
pub fn hysteresis_lobe_area<T: Scalar>(records: &[SimRecord<T>]) -> Result<(T, T)> {
    if records.len() < 3 {
        return Err(Error::Domain(format!(
            "lobe area needs at least 3 records, got {}",
            records.len()
        )));
    }
    let (mut pos, mut neg) = (T::zero(), T::zero());
    let mut run: Vec<(T, T)> = Vec::new();
    let mut run_positive = false;
    let mut close = |run: &mut Vec<(T, T)>, positive: bool| {
        let area = polygon_area_through_origin(run);
        if positive {
            pos = pos + area;
        } else {
            neg = neg + area;
        }
        run.clear();
    };
    for rec in records {
        if rec.v_mem == T::zero() {
            close(&mut run, run_positive);
            continue;
        }
        let positive = rec.v_mem > T::zero();
        if !run.is_empty() && positive != run_positive {
            close(&mut run, run_positive);
        }
        run_positive = positive;
        run.push((rec.v_mem, rec.i));
    }
    close(&mut run, run_positive);
    Ok((pos, neg))
}

/// Shoelace area of the closed polygon `origin -> p1 -> ... -> pn -> origin`.
fn polygon_area_through_origin<T: Scalar>(points: &[(T, T)]) -> T {
    // edges touching the origin contribute nothing to the cross-product sum
    let twice = points
        .windows(2)
        .fold(T::zero(), |acc, w| acc + (w[0].0 * w[1].1 - w[1].0 * w[0].1));
    (twice / T::lit(2.0)).abs()
}
