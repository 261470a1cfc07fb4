//! Collective-spin moments and the separable-compatibility inequalities.

use serde::{Deserialize, Serialize};

use super::{AlphaResult, Extreme};
use crate::error::{Error, Result};
use crate::optim::{solve_lp, LinearProgram, LpStatus};

const AXES: [&str; 3] = ["x", "y", "z"];

/// First and second moments of `J = Σ σ⁽ⁱ⁾/2` along three orthogonal axes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollectiveMoments {
    #[serde(rename = "N")]
    pub n: usize,
    /// `⟨J_x⟩, ⟨J_y⟩, ⟨J_z⟩`
    pub first: [f64; 3],
    /// `⟨J_x²⟩, ⟨J_y²⟩, ⟨J_z²⟩`
    pub second: [f64; 3],
}

impl CollectiveMoments {
    pub fn new(n: usize, first: [f64; 3], second: [f64; 3]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one qubit".into()));
        }
        let cap = (n * n) as f64 / 4.0;
        let slack = 1e-9 * cap.max(1.0);
        for (a, (&j, &j2)) in first.iter().zip(&second).enumerate() {
            if !j.is_finite() || !j2.is_finite() {
                return Err(Error::Validation(format!("non-finite moment along {}", AXES[a])));
            }
            if j2 < -slack || j2 > cap + slack {
                return Err(Error::Validation(format!("<J_{}^2> = {j2} outside [0, {cap}]", AXES[a])));
            }
            if j.abs() > n as f64 / 2.0 + slack {
                return Err(Error::Validation(format!("|<J_{}>| = {} exceeds N/2", AXES[a], j.abs())));
            }
        }
        Ok(CollectiveMoments { n, first, second })
    }

    /// Moments with `⟨J⟩ = 0`.
    pub fn unpolarized(n: usize, second: [f64; 3]) -> Result<Self> {
        Self::new(n, [0.0; 3], second)
    }

    pub fn is_unpolarized(&self, tol: f64) -> bool {
        self.first.iter().map(|j| j * j).sum::<f64>().sqrt() < tol
    }

    pub fn variances(&self) -> [f64; 3] {
        std::array::from_fn(|a| self.second[a] - self.first[a] * self.first[a])
    }
}

/// `C_a = ⟨J_a²⟩ − N/4`, the symmetrized two-body correlation along `a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationFns {
    #[serde(rename = "N")]
    pub n: usize,
    pub c: [f64; 3],
}

impl CorrelationFns {
    pub fn new(n: usize, c: [f64; 3]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one qubit".into()));
        }
        let (lo, hi) = (-(n as f64) / 4.0, (n * (n - 1)) as f64 / 4.0);
        let slack = 1e-9 * hi.max(1.0);
        for (a, &v) in c.iter().enumerate() {
            if !v.is_finite() || v < lo - slack || v > hi + slack {
                return Err(Error::Validation(format!("C_{} = {v} outside [{lo}, {hi}]", AXES[a])));
            }
        }
        Ok(CorrelationFns { n, c })
    }

    /// Requires `‖⟨J⟩‖ < tol`; the scaling argument assumes unpolarized data.
    pub fn from_moments(m: &CollectiveMoments, tol: f64) -> Result<Self> {
        if !m.is_unpolarized(tol) {
            return Err(Error::Precondition(format!(
                "moments are polarized (<J> = {:?}); the scaling constraints need <J> = 0",
                m.first
            )));
        }
        let q = m.n as f64 / 4.0;
        Self::new(m.n, std::array::from_fn(|a| m.second[a] - q))
    }
}

/// A violated separability inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TothViolation {
    /// `total-spin`, `total-variance`, `pair-bound` or `pair-variance`.
    pub family: String,
    /// Distinguished axis `c` for the pair families.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<String>,
}

impl std::fmt::Display for TothViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.axis {
            Some(c) => write!(f, "{}[c={c}]", self.family),
            None => write!(f, "{}", self.family),
        }
    }
}

/// Evaluates the four families of collective-spin separability inequalities
/// and lists the violated ones. An empty list means compatibility with a
/// separable state in the large-`N` limit.
// Axes are visited cyclically, so indices are clearer than iterators.
#[allow(clippy::needless_range_loop)]
pub fn toth_check(m: &CollectiveMoments) -> Vec<TothViolation> {
    let n = m.n as f64;
    let slack = 1e-12 * (n * n).max(1.0);
    let j2 = m.second;
    let var = m.variances();
    let mut out = Vec::new();
    let violation = |family: &str, axis: Option<usize>| TothViolation {
        family: family.to_string(),
        axis: axis.map(|c| AXES[c].to_string()),
    };
    if j2.iter().sum::<f64>() > n * (n + 2.0) / 4.0 + slack {
        out.push(violation("total-spin", None));
    }
    if var.iter().sum::<f64>() < n / 2.0 - slack {
        out.push(violation("total-variance", None));
    }
    for c in 0..3 {
        let (a, b) = ((c + 1) % 3, (c + 2) % 3);
        if j2[a] + j2[b] - (n - 1.0) * var[c] > n / 2.0 + slack {
            out.push(violation("pair-bound", Some(c)));
        }
    }
    for c in 0..3 {
        let (a, b) = ((c + 1) % 3, (c + 2) % 3);
        if (n - 1.0) * (var[a] + var[b]) - j2[c] < n * (n - 2.0) / 4.0 - slack {
            out.push(violation("pair-variance", Some(c)));
        }
    }
    out
}

/// The inequalities after `C ↦ αC`, each as `(a, b)` meaning `a·α ≤ b`.
pub fn toth_constraints(c: &CorrelationFns) -> Vec<(f64, f64)> {
    let n = c.n as f64;
    let [cx, cy, cz] = c.c;
    let sum = cx + cy + cz;
    let nn1 = n * (n - 1.0);
    let mut rows = vec![(4.0 * sum, nn1), (-4.0 * sum, n)];
    for k in 0..3 {
        let (ca, cb, cc) = (c.c[(k + 1) % 3], c.c[(k + 2) % 3], c.c[k]);
        rows.push((4.0 * (ca + cb - (n - 1.0) * cc), nn1));
        rows.push((-4.0 * ((n - 1.0) * (ca + cb) - cc), nn1));
    }
    rows
}

/// Extreme `α` keeping `αC` inside the separable region, by scanning the
/// ratio bounds of the single-variable constraints.
pub fn toth_alpha(c: &CorrelationFns, extreme: Extreme) -> AlphaResult {
    let s = extreme.sign();
    let bound = toth_constraints(c)
        .into_iter()
        .filter(|&(a, _)| s * a > 0.0)
        .map(|(a, b)| s * b / a)
        .fold(f64::INFINITY, f64::min);
    if bound.is_infinite() {
        AlphaResult::unbounded(extreme)
    } else {
        AlphaResult::optimal(s * bound)
    }
}

/// The same quantity as [`toth_alpha`], solved as a generic linear program.
pub fn toth_alpha_simplex(c: &CorrelationFns, extreme: Extreme) -> Result<AlphaResult> {
    let mut lp = match extreme {
        Extreme::Max => LinearProgram::maximize(vec![1.0]),
        Extreme::Min => LinearProgram::minimize(vec![1.0]),
    }
    .free(0);
    for (a, b) in toth_constraints(c) {
        lp = lp.le(vec![a], b);
    }
    let sol = solve_lp(&lp)?;
    Ok(match sol.status {
        LpStatus::Optimal => AlphaResult::optimal(sol.x[0]),
        LpStatus::Unbounded => AlphaResult::unbounded(extreme),
        LpStatus::Infeasible => AlphaResult::infeasible(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compat::AlphaStatus;
    use crate::testutil::rng;
    use rand::Rng;

    fn dicke_moments(n: usize) -> CollectiveMoments {
        let j2 = (n * (n + 2)) as f64 / 8.0;
        CollectiveMoments::unpolarized(n, [j2, j2, 0.0]).unwrap()
    }

    #[test]
    fn identity_moments_pass() {
        for n in 1..8 {
            let q = n as f64 / 4.0;
            let m = CollectiveMoments::unpolarized(n, [q; 3]).unwrap();
            assert!(toth_check(&m).is_empty(), "N = {n}");
        }
    }

    #[test]
    fn dicke_violates_pair_bound_on_z() {
        let v = toth_check(&dicke_moments(4));
        assert!(v.contains(&TothViolation { family: "pair-bound".into(), axis: Some("z".into()) }));
        assert!(v.iter().all(|x| x.family != "total-spin"));
    }

    #[test]
    fn total_spin_violation() {
        let m = CollectiveMoments::unpolarized(4, [2.5, 2.5, 2.5]).unwrap();
        assert!(toth_check(&m).iter().any(|v| v.family == "total-spin"));
    }

    #[test]
    fn zero_correlations_unbounded() {
        let c = CorrelationFns::new(5, [0.0; 3]).unwrap();
        assert_eq!(toth_alpha(&c, Extreme::Max).status, AlphaStatus::Unbounded);
        assert_eq!(toth_alpha(&c, Extreme::Min).alpha_star, f64::NEG_INFINITY);
        assert_eq!(toth_alpha_simplex(&c, Extreme::Max).unwrap().status, AlphaStatus::Unbounded);
    }

    #[test]
    fn dicke_alpha() {
        let c = CorrelationFns::from_moments(&dicke_moments(4), 1e-12).unwrap();
        assert_eq!(c.c, [2.0, 2.0, -1.0]);
        let a = toth_alpha(&c, Extreme::Max);
        assert!((a.alpha_star - 3.0 / 7.0).abs() < 1e-15);
        let b = toth_alpha_simplex(&c, Extreme::Max).unwrap();
        assert!((b.alpha_star - 3.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_alpha_is_one() {
        for n in 2..10 {
            let c = CorrelationFns::new(n, [0.0, 0.0, (n * (n - 1)) as f64 / 4.0]).unwrap();
            let a = toth_alpha(&c, Extreme::Max).alpha_star;
            assert!((a - 1.0).abs() < 1e-14, "N = {n}: {a}");
            let b = toth_alpha_simplex(&c, Extreme::Max).unwrap().alpha_star;
            assert!((b - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn polarized_rejected() {
        let m = CollectiveMoments::new(4, [0.5, 0.0, 0.0], [1.0; 3]).unwrap();
        assert!(matches!(CorrelationFns::from_moments(&m, 1e-9), Err(Error::Precondition(_))));
    }

    #[test]
    fn moment_bounds_validated() {
        assert!(CollectiveMoments::unpolarized(2, [1.5, 0.0, 0.0]).is_err());
        assert!(CorrelationFns::new(3, [-1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn ratio_scan_matches_simplex() {
        let mut r = rng(41);
        for _ in 0..300 {
            let n = r.random_range(3..=8usize);
            let (lo, hi) = (-(n as f64) / 4.0, (n * (n - 1)) as f64 / 4.0);
            let c = CorrelationFns::new(n, std::array::from_fn(|_| r.random_range(lo..hi))).unwrap();
            for e in [Extreme::Max, Extreme::Min] {
                let a = toth_alpha(&c, e);
                let b = toth_alpha_simplex(&c, e).unwrap();
                assert_eq!(a.status, b.status);
                if a.status == AlphaStatus::Optimal {
                    assert!((a.alpha_star - b.alpha_star).abs() <= 1e-9 * a.alpha_star.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn scaled_point_satisfies_inequalities_up_to_alpha_star() {
        let m = dicke_moments(6);
        let c = CorrelationFns::from_moments(&m, 1e-12).unwrap();
        let a = toth_alpha(&c, Extreme::Max).alpha_star;
        let scaled = |s: f64| CollectiveMoments::unpolarized(6, std::array::from_fn(|k| s * c.c[k] + 1.5)).unwrap();
        assert!(toth_check(&scaled(a)).is_empty());
        assert!(toth_check(&scaled(0.5 * a)).is_empty());
        assert!(!toth_check(&scaled(a * (1.0 + 1e-6))).is_empty());
    }
}
