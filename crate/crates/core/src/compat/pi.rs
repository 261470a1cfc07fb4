//! Permutationally invariant projection of the two-setting binary local
//! polytope onto one- and two-body symmetrized correlators.

use serde::{Deserialize, Serialize};

use super::bell::{CorrelatorVector, Scenario};
use super::{AlphaResult, Extreme};
use crate::error::{Error, Result};
use crate::optim::{solve_lp, LinearProgram, LpStatus};

/// `S_x = Σ_i ⟨A_x⁽ⁱ⁾⟩` and `S_xy = Σ_{i≠j} ⟨A_x⁽ⁱ⁾ A_y⁽ʲ⁾⟩` for two
/// binary observables per party.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PICorrelators {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "S0")]
    pub s0: f64,
    #[serde(rename = "S1")]
    pub s1: f64,
    #[serde(rename = "S00")]
    pub s00: f64,
    #[serde(rename = "S01")]
    pub s01: f64,
    #[serde(rename = "S11")]
    pub s11: f64,
}

/// Outcome signs `(s₀, s₁)` of the four single-party deterministic strategies.
const SIGNS: [(f64, f64); 4] = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];

impl PICorrelators {
    /// Validates `|S_x| ≤ N` and `|S_xy| ≤ N(N − 1)`.
    pub fn new(n: usize, s: [f64; 5]) -> Result<Self> {
        let out = Self::unchecked(n, s);
        out.validate(1e-9)?;
        Ok(out)
    }

    fn unchecked(n: usize, s: [f64; 5]) -> Self {
        PICorrelators { n, s0: s[0], s1: s[1], s00: s[2], s01: s[3], s11: s[4] }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("need at least one party".into()));
        }
        let n = self.n as f64;
        let one = n * (1.0 + tol);
        let two = n * (n - 1.0) * (1.0 + tol) + tol;
        let v = self.to_array();
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Validation("non-finite symmetrized correlator".into()));
        }
        if v[0].abs() > one || v[1].abs() > one {
            return Err(Error::Validation(format!("one-body sums {:?} exceed N = {n}", &v[..2])));
        }
        if v[2..].iter().any(|x| x.abs() > two) {
            return Err(Error::Validation(format!("two-body sums {:?} exceed N(N-1) = {}", &v[2..], n * (n - 1.0))));
        }
        Ok(())
    }

    /// `[S0, S1, S00, S01, S11]`
    pub fn to_array(&self) -> [f64; 5] {
        [self.s0, self.s1, self.s00, self.s01, self.s11]
    }

    /// Symmetrized correlators of the deterministic strategy assigning
    /// `counts[k]` parties to the `k`-th sign pattern.
    fn from_counts(counts: [usize; 4]) -> Self {
        let n: usize = counts.iter().sum();
        let mut s = [0.0; 2];
        let mut diag = [0.0; 3];
        for (&c, &(a, b)) in counts.iter().zip(&SIGNS) {
            let c = c as f64;
            s[0] += c * a;
            s[1] += c * b;
            diag[0] += c * a * a;
            diag[1] += c * a * b;
            diag[2] += c * b * b;
        }
        Self::unchecked(n, [s[0], s[1], s[0] * s[0] - diag[0], s[0] * s[1] - diag[1], s[1] * s[1] - diag[2]])
    }
}

/// One vertex per composition of `N` into four labeled nonnegative parts,
/// `C(N + 3, 3)` in total.
pub fn pi_vertices(n: usize) -> Vec<PICorrelators> {
    let mut out = Vec::with_capacity((n + 1) * (n + 2) * (n + 3) / 6);
    for c0 in 0..=n {
        for c1 in 0..=n - c0 {
            for c2 in 0..=n - c0 - c1 {
                out.push(PICorrelators::from_counts([c0, c1, c2, n - c0 - c1 - c2]));
            }
        }
    }
    out
}

/// Extreme `α` with `α·S` in the convex hull of [`pi_vertices`].
pub fn pi_alpha(s: &PICorrelators, extreme: Extreme) -> Result<AlphaResult> {
    if s.n == 0 {
        return Err(Error::InvalidArgument("need at least one party".into()));
    }
    let verts = pi_vertices(s.n);
    let count = verts.len();
    let alpha = count;
    let mut objective = vec![0.0; count + 1];
    objective[alpha] = 1.0;
    let mut lp = match extreme {
        Extreme::Max => LinearProgram::maximize(objective),
        Extreme::Min => LinearProgram::minimize(objective),
    }
    .free(alpha);
    let target = s.to_array();
    for (r, &t) in target.iter().enumerate() {
        let mut row: Vec<f64> = verts.iter().map(|v| v.to_array()[r]).collect();
        row.push(-t);
        lp = lp.eq(row, 0.0);
    }
    let mut ones = vec![1.0; count + 1];
    ones[alpha] = 0.0;
    lp = lp.eq(ones, 1.0);
    let sol = solve_lp(&lp)?;
    Ok(match sol.status {
        LpStatus::Optimal => AlphaResult::optimal(sol.x[alpha]),
        LpStatus::Unbounded => AlphaResult::unbounded(extreme),
        LpStatus::Infeasible => AlphaResult::infeasible(),
    })
}

/// Symmetrized one- and two-body sums of a two-setting binary correlator
/// vector. Every one- and two-body correlator must be present.
pub fn symmetrize(corr: &CorrelatorVector) -> Result<PICorrelators> {
    let sc: Scenario = corr.scenario();
    if sc.settings != 2 || sc.outcomes != 2 {
        return Err(Error::InvalidArgument(format!(
            "symmetrization needs two binary settings, got m = {}, d = {}",
            sc.settings, sc.outcomes
        )));
    }
    let n = sc.parties;
    let lookup = |assign: &[(usize, usize)]| -> Result<f64> {
        let key = (0..n)
            .map(|j| match assign.iter().find(|a| a.0 == j) {
                Some(&(_, x)) => x.to_string(),
                None => "-".to_string(),
            })
            .collect::<Vec<_>>()
            .join(",");
        let idx = sc.parse_key(&key)?;
        corr.get(idx).map(|v| v.re).ok_or_else(|| Error::Validation(format!("correlator {key} missing")))
    };
    let mut s = [0.0; 5];
    for i in 0..n {
        s[0] += lookup(&[(i, 0)])?;
        s[1] += lookup(&[(i, 1)])?;
        for j in (0..n).filter(|&j| j != i) {
            s[2] += lookup(&[(i, 0), (j, 0)])?;
            s[3] += lookup(&[(i, 0), (j, 1)])?;
            s[4] += lookup(&[(i, 1), (j, 1)])?;
        }
    }
    PICorrelators::new(n, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compat::{enumerate_vertices, lhvm_alpha, AlphaStatus};
    use crate::testutil::rng;
    use crate::C64;
    use rand::Rng;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn vertex_count_is_stars_and_bars() {
        assert_eq!(pi_vertices(2).len(), 10);
        for n in [1usize, 3, 7, 20] {
            assert_eq!(pi_vertices(n).len() as u64, binomial(n as u64 + 3, 3));
        }
    }

    #[test]
    fn all_plus_vertex() {
        let n = 5usize;
        let v = PICorrelators::from_counts([n, 0, 0, 0]);
        let nn = (n * (n - 1)) as f64;
        assert_eq!(v.to_array(), [5.0, 5.0, nn, nn, nn]);
    }

    #[test]
    fn vertices_within_bounds() {
        for n in 1..9 {
            for v in pi_vertices(n) {
                v.validate(0.0).unwrap();
            }
        }
    }

    #[test]
    fn vertices_match_symmetrized_strategies() {
        let sc = Scenario::new(3, 2, 2).unwrap();
        let mut projected: Vec<[f64; 5]> = enumerate_vertices(&sc)
            .unwrap()
            .into_iter()
            .map(|w| symmetrize(&CorrelatorVector::full(sc, w).unwrap()).unwrap().to_array())
            .collect();
        let mut expected: Vec<[f64; 5]> = pi_vertices(3).iter().map(|v| v.to_array()).collect();
        let cmp = |a: &[f64; 5], b: &[f64; 5]| a.partial_cmp(b).unwrap();
        projected.sort_by(cmp);
        projected.dedup();
        expected.sort_by(cmp);
        assert_eq!(projected, expected);
    }

    #[test]
    fn zero_is_unbounded() {
        let s = PICorrelators::new(4, [0.0; 5]).unwrap();
        assert_eq!(pi_alpha(&s, Extreme::Max).unwrap().status, AlphaStatus::Unbounded);
    }

    #[test]
    fn deterministic_vertex_alpha_at_least_one() {
        let v = PICorrelators::from_counts([1, 2, 0, 1]);
        let a = pi_alpha(&v, Extreme::Max).unwrap();
        assert!(a.alpha_star >= 1.0 - 1e-9);
        let all_plus = PICorrelators::from_counts([4, 0, 0, 0]);
        assert!((pi_alpha(&all_plus, Extreme::Max).unwrap().alpha_star - 1.0).abs() < 1e-9);
    }

    /// Permutation-averaged one- and two-body correlators of a full vector,
    /// as a partial vector without three-body entries.
    fn symmetric_partial(corr: &CorrelatorVector) -> CorrelatorVector {
        let sc = corr.scenario();
        let s = symmetrize(corr).unwrap();
        let n = sc.parties as f64;
        let mut entries = Vec::new();
        for idx in 0..sc.num_entries().unwrap() {
            let key = sc.key(idx);
            let parts: Vec<&str> = key.split(',').filter(|p| *p != "-").collect();
            let v = match parts.as_slice() {
                [x] => [s.s0, s.s1][x.parse::<usize>().unwrap()] / n,
                [x, y] => {
                    let sum = match (*x, *y) {
                        ("0", "0") => s.s00,
                        ("1", "1") => s.s11,
                        _ => s.s01,
                    };
                    sum / (n * (n - 1.0))
                }
                _ => continue,
            };
            entries.push((idx, C64::new(v, 0.0)));
        }
        CorrelatorVector::from_indexed(sc, entries).unwrap()
    }

    #[test]
    fn projection_agrees_with_symmetric_local_polytope() {
        let sc = Scenario::new(3, 2, 2).unwrap();
        let verts = enumerate_vertices(&sc).unwrap();
        let mut r = rng(77);
        for _ in 0..10 {
            let mut acc = vec![C64::new(0.0, 0.0); verts[0].len()];
            let w: Vec<f64> = (0..3).map(|_| r.random::<f64>()).collect();
            let total: f64 = w.iter().sum();
            for wi in &w {
                let v = &verts[r.random_range(0..verts.len())];
                for (a, x) in acc.iter_mut().zip(v) {
                    *a += x * (wi / total);
                }
            }
            let corr = CorrelatorVector::full(sc, acc).unwrap();
            let s = symmetrize(&corr).unwrap();
            let pi = pi_alpha(&s, Extreme::Max).unwrap();
            let full = lhvm_alpha(&corr, Extreme::Max).unwrap();
            let sym = lhvm_alpha(&symmetric_partial(&corr), Extreme::Max).unwrap();
            assert_eq!(pi.status, sym.status);
            if pi.status == AlphaStatus::Optimal {
                assert!((pi.alpha_star - sym.alpha_star).abs() < 1e-8, "{pi:?} vs {sym:?}");
                assert!(pi.alpha_star >= full.alpha_star - 1e-8);
            }
        }
    }
}
