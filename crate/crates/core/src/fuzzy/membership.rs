use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Piecewise-linear membership function.
///
/// Triangles are stored as trapezoids whose plateau collapses to one point,
/// so a single evaluation routine handles both. Shoulders are trapezoids with
/// `a == b` (left) or `c == d` (right).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipFunction<T> {
    shape: Shape,
    a: T,
    b: T,
    c: T,
    d: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Triangular,
    Trapezoidal,
}

impl<T: Scalar> MembershipFunction<T> {
    pub fn triangular(a: T, b: T, c: T) -> Result<Self> {
        check_ordered(&[a, b, c])?;
        Ok(Self { shape: Shape::Triangular, a, b, c: b, d: c })
    }

    pub fn trapezoidal(a: T, b: T, c: T, d: T) -> Result<Self> {
        check_ordered(&[a, b, c, d])?;
        Ok(Self { shape: Shape::Trapezoidal, a, b, c, d })
    }

    /// Degree of membership of `u`, always in `[0, 1]`.
    ///
    /// On a degenerate (vertical) edge the upper value wins at the shared
    /// breakpoint, so `triangular(0, 0, 0)` is a crisp singleton at 0.
    #[inline]
    pub fn eval(&self, u: T) -> T {
        if u < self.a || u > self.d {
            T::zero()
        } else if u >= self.b && u <= self.c {
            T::one()
        } else if u < self.b {
            // a <= u < b, hence a < b
            (u - self.a) / (self.b - self.a)
        } else {
            // c < u <= d, hence c < d
            (self.d - u) / (self.d - self.c)
        }
    }

    /// Closed interval outside which the degree is 0.
    pub fn support(&self) -> (T, T) {
        (self.a, self.d)
    }

    /// Closed interval on which the degree is exactly 1.
    pub fn core(&self) -> (T, T) {
        (self.b, self.c)
    }

    /// Breakpoints in declaration order (three for triangles, four for trapezoids).
    pub fn breakpoints(&self) -> Vec<T> {
        match self.shape {
            Shape::Triangular => vec![self.a, self.b, self.d],
            Shape::Trapezoidal => vec![self.a, self.b, self.c, self.d],
        }
    }

    pub fn is_triangular(&self) -> bool {
        self.shape == Shape::Triangular
    }
}

fn check_ordered<T: Scalar>(points: &[T]) -> Result<()> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::Membership(format!("non-finite breakpoint in {points:?}")));
    }
    if points.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Membership(format!(
            "breakpoints must be non-decreasing, got {points:?}"
        )));
    }
    Ok(())
}

/// Declarative form used in fuzzy-system documents:
/// `{"triangular": [a, b, c]}` or `{"trapezoidal": [a, b, c, d]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MembershipDoc<T> {
    Triangular([T; 3]),
    Trapezoidal([T; 4]),
}

impl<T: Scalar> TryFrom<MembershipDoc<T>> for MembershipFunction<T> {
    type Error = Error;

    fn try_from(doc: MembershipDoc<T>) -> Result<Self> {
        match doc {
            MembershipDoc::Triangular([a, b, c]) => Self::triangular(a, b, c),
            MembershipDoc::Trapezoidal([a, b, c, d]) => Self::trapezoidal(a, b, c, d),
        }
    }
}

impl<T: Scalar> From<&MembershipFunction<T>> for MembershipDoc<T> {
    fn from(mf: &MembershipFunction<T>) -> Self {
        match mf.shape {
            Shape::Triangular => MembershipDoc::Triangular([mf.a, mf.b, mf.d]),
            Shape::Trapezoidal => MembershipDoc::Trapezoidal([mf.a, mf.b, mf.c, mf.d]),
        }
    }
}
