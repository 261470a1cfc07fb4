use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Up => 1.0,
            Direction::Down => -1.0,
        }
    }
}

/// Locates the edge of the interval on which a monotone predicate holds.
pub struct BisectionSpec<F: Fn(f64) -> bool> {
    pub predicate: F,
    /// First probe distance from the start point.
    pub initial_step: f64,
    /// Growth factor of the probe distance while the predicate holds.
    pub expansion: f64,
    /// Stopping width, relative to `max(1, |x|)`.
    pub tolerance: f64,
    /// Probe distance beyond which the region is reported unbounded.
    pub ceiling: f64,
}

impl<F: Fn(f64) -> bool> BisectionSpec<F> {
    pub fn new(predicate: F) -> Self {
        BisectionSpec { predicate, initial_step: 0.05, expansion: 2.0, tolerance: 1e-10, ceiling: 1e6 }
    }

    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn ceiling(mut self, ceiling: f64) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn initial_step(mut self, step: f64) -> Self {
        self.initial_step = step;
        self
    }
}

/// Returns the last point in `direction` where the predicate holds (within
/// tolerance), or `±∞` when it still holds past the ceiling.
pub fn bisect_boundary<F: Fn(f64) -> bool>(spec: &BisectionSpec<F>, start: f64, direction: Direction) -> Result<f64> {
    if !(spec.tolerance > 0.0) || !(spec.expansion > 1.0) || !(spec.initial_step > 0.0) {
        return Err(Error::InvalidArgument(
            "bisection needs positive tolerance and step, and expansion above 1".into(),
        ));
    }
    if !(spec.predicate)(start) {
        return Err(Error::Precondition(format!("predicate is false at the start point {start}")));
    }
    let sign = direction.sign();
    let mut good = start;
    let mut step = spec.initial_step;
    let bad = loop {
        if step > spec.ceiling {
            return Ok(sign * f64::INFINITY);
        }
        let x = start + sign * step;
        if (spec.predicate)(x) {
            good = x;
            step *= spec.expansion;
        } else {
            break x;
        }
    };
    let mut bad = bad;
    loop {
        let width = (bad - good).abs();
        if width <= spec.tolerance * good.abs().max(1.0) {
            return Ok(good);
        }
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            return Ok(good);
        }
        if (spec.predicate)(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
}
