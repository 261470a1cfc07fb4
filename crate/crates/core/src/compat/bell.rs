//! Bell scenarios, deterministic local strategies and the local polytope.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{AlphaResult, Extreme};
use crate::error::{Error, Result};
use crate::optim::{solve_lp, LinearProgram, LpStatus};
use crate::C64;

/// Largest number of deterministic strategies enumerated explicitly.
pub const VERTEX_CAP: u128 = 1 << 20;

/// `n` parties, `m` settings each, `d` outcomes per setting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub parties: usize,
    pub settings: usize,
    pub outcomes: usize,
}

impl Scenario {
    pub fn new(parties: usize, settings: usize, outcomes: usize) -> Result<Self> {
        let s = Scenario { parties, settings, outcomes };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.parties == 0 || self.settings == 0 || self.outcomes < 2 {
            return Err(Error::InvalidArgument(format!(
                "scenario needs n ≥ 1, m ≥ 1, d ≥ 2, got ({}, {}, {})",
                self.parties, self.settings, self.outcomes
            )));
        }
        self.num_entries()?;
        Ok(())
    }

    /// Choices per party in a correlator: excluded, or one of `m(d − 1)`
    /// (setting, Fourier index) pairs.
    pub fn options_per_party(&self) -> usize {
        1 + self.settings * (self.outcomes - 1)
    }

    /// `(1 + m(d − 1))ⁿ − 1` correlators, the trivial one excluded.
    pub fn num_entries(&self) -> Result<usize> {
        checked_pow(self.options_per_party(), self.parties)
            .map(|v| v - 1)
            .ok_or_else(|| Error::InvalidArgument("correlator index space overflows".into()))
    }

    /// `d^{mn}` deterministic local strategies.
    pub fn vertex_count(&self) -> u128 {
        (self.outcomes as u128).checked_pow((self.settings * self.parties) as u32).unwrap_or(u128::MAX)
    }

    fn setting_combinations(&self) -> Result<usize> {
        checked_pow(self.settings, self.parties)
            .ok_or_else(|| Error::InvalidArgument("setting index space overflows".into()))
    }

    fn outcome_combinations(&self) -> Result<usize> {
        checked_pow(self.outcomes, self.parties)
            .ok_or_else(|| Error::InvalidArgument("outcome index space overflows".into()))
    }

    /// Per-party options of a correlator index; `0` marks exclusion, `o ≥ 1`
    /// encodes setting `(o − 1)/(d − 1)` and Fourier index `(o − 1) % (d − 1) + 1`.
    fn options(&self, index: usize) -> Vec<usize> {
        let base = self.options_per_party();
        let mut v = index + 1;
        let mut out = vec![0; self.parties];
        for o in out.iter_mut().rev() {
            *o = v % base;
            v /= base;
        }
        out
    }

    fn index_of(&self, options: &[usize]) -> Option<usize> {
        let base = self.options_per_party();
        let v = options.iter().fold(0, |acc, &o| acc * base + o);
        v.checked_sub(1)
    }

    /// Text label of a correlator: per party `-` (excluded), `x` (binary
    /// outcomes) or `x^k`, comma separated.
    pub fn key(&self, index: usize) -> String {
        let d1 = self.outcomes - 1;
        self.options(index)
            .iter()
            .map(|&o| {
                if o == 0 {
                    "-".to_string()
                } else if self.outcomes == 2 {
                    format!("{}", o - 1)
                } else {
                    format!("{}^{}", (o - 1) / d1, (o - 1) % d1 + 1)
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(&self, key: &str) -> Result<usize> {
        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
        if parts.len() != self.parties {
            return Err(Error::Parse(format!(
                "correlator key {key:?} has {} fields for {} parties",
                parts.len(),
                self.parties
            )));
        }
        let bad = || Error::Parse(format!("malformed correlator key {key:?}"));
        let d1 = self.outcomes - 1;
        let mut options = Vec::with_capacity(self.parties);
        for p in parts {
            if p == "-" {
                options.push(0);
                continue;
            }
            let (x, k) = match p.split_once('^') {
                Some((x, k)) => (x.parse::<usize>().map_err(|_| bad())?, k.parse::<usize>().map_err(|_| bad())?),
                None => (p.parse::<usize>().map_err(|_| bad())?, 1),
            };
            if x >= self.settings || k == 0 || k > d1 {
                return Err(bad());
            }
            options.push(1 + x * d1 + (k - 1));
        }
        self.index_of(&options).ok_or_else(bad)
    }

    /// Digit `s_j(x)`: outcome of party `j` for setting `x` in strategy `i`.
    fn strategy(&self, index: u128) -> Vec<Vec<usize>> {
        let d = self.outcomes as u128;
        let mut v = index;
        let mut out = vec![vec![0; self.settings]; self.parties];
        for party in out.iter_mut().rev() {
            for s in party.iter_mut().rev() {
                *s = (v % d) as usize;
                v /= d;
            }
        }
        out
    }

    fn check_cap(&self) -> Result<usize> {
        let count = self.vertex_count();
        if count > VERTEX_CAP {
            return Err(Error::Capacity { requested: count, cap: VERTEX_CAP });
        }
        Ok(count as usize)
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e))
}

/// `ω^e` with `ω = e^{2πi/d}`, exact on the real and imaginary axes.
fn roots_of_unity(d: usize) -> Vec<C64> {
    (0..d)
        .map(|e| match (4 * e) % d {
            0 => match (4 * e) / d {
                0 => C64::new(1.0, 0.0),
                1 => C64::new(0.0, 1.0),
                2 => C64::new(-1.0, 0.0),
                _ => C64::new(0.0, -1.0),
            },
            _ => C64::from_polar(1.0, 2.0 * PI * e as f64 / d as f64),
        })
        .collect()
}

/// Correlator values of a (possibly partial) set of correlators.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelatorVector {
    scenario: Scenario,
    /// `(index, value)`, sorted by index. Missing indices are unconstrained.
    entries: Vec<(usize, C64)>,
}

impl CorrelatorVector {
    /// All `(1 + m(d − 1))ⁿ − 1` correlators in index order.
    pub fn full(scenario: Scenario, values: Vec<C64>) -> Result<Self> {
        scenario.validate()?;
        let len = scenario.num_entries()?;
        if values.len() != len {
            return Err(Error::DimensionMismatch(format!("{} correlators supplied, scenario has {len}", values.len())));
        }
        Self::from_indexed(scenario, values.into_iter().enumerate().collect())
    }

    /// Real-valued full vector (binary outcomes).
    pub fn full_real(scenario: Scenario, values: &[f64]) -> Result<Self> {
        Self::full(scenario, values.iter().map(|&v| C64::new(v, 0.0)).collect())
    }

    /// Correlators addressed by text keys; see [`Scenario::key`].
    pub fn from_keys(scenario: Scenario, entries: &BTreeMap<String, C64>) -> Result<Self> {
        scenario.validate()?;
        let indexed = entries.iter().map(|(k, &v)| Ok((scenario.parse_key(k)?, v))).collect::<Result<Vec<_>>>()?;
        Self::from_indexed(scenario, indexed)
    }

    pub fn from_indexed(scenario: Scenario, mut entries: Vec<(usize, C64)>) -> Result<Self> {
        let len = scenario.num_entries()?;
        entries.sort_by_key(|e| e.0);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Validation(format!("duplicate correlator {}", scenario.key(w[0].0))));
            }
        }
        for &(i, v) in &entries {
            if i >= len {
                return Err(Error::Validation(format!("correlator index {i} out of range")));
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Validation(format!("non-finite correlator {}", scenario.key(i))));
            }
            if scenario.outcomes == 2 && v.im.abs() > 1e-12 {
                return Err(Error::Validation(format!("binary correlator {} has an imaginary part", scenario.key(i))));
            }
        }
        Ok(CorrelatorVector { scenario, entries })
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn entries(&self) -> &[(usize, C64)] {
        &self.entries
    }

    pub fn keyed(&self) -> BTreeMap<String, C64> {
        self.entries.iter().map(|&(i, v)| (self.scenario.key(i), v)).collect()
    }

    pub fn get(&self, index: usize) -> Option<C64> {
        self.entries.binary_search_by_key(&index, |e| e.0).ok().map(|p| self.entries[p].1)
    }

    pub fn is_full(&self) -> bool {
        Some(self.entries.len()) == self.scenario.num_entries().ok()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        CorrelatorVector {
            scenario: self.scenario,
            entries: self.entries.iter().map(|&(i, v)| (i, v * factor)).collect(),
        }
    }

    /// Checks `|E| ≤ 1` for every entry, the range reachable by any
    /// normalized state and unitary-outcome observables.
    pub fn validate_bounds(&self, tol: f64) -> Result<()> {
        for &(i, v) in &self.entries {
            if v.norm() > 1.0 + tol {
                return Err(Error::Validation(format!(
                    "correlator {} has modulus {} > 1",
                    self.scenario.key(i),
                    v.norm()
                )));
            }
        }
        Ok(())
    }
}

/// Outcome statistics `P(a|x)`, stored at `x_index · dⁿ + a_index` with both
/// multi-indices in mixed radix, party 0 most significant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityTable {
    pub scenario: Scenario,
    pub values: Vec<f64>,
}

impl ProbabilityTable {
    pub fn new(scenario: Scenario, values: Vec<f64>, tol: f64) -> Result<Self> {
        scenario.validate()?;
        let blocks = scenario.setting_combinations()?;
        let width = scenario.outcome_combinations()?;
        if values.len() != blocks * width {
            return Err(Error::DimensionMismatch(format!(
                "{} probabilities supplied, scenario needs {}",
                values.len(),
                blocks * width
            )));
        }
        for (x, block) in values.chunks(width).enumerate() {
            if let Some(p) = block.iter().find(|p| !p.is_finite() || **p < -tol) {
                return Err(Error::Validation(format!("invalid probability {p} in setting block {x}")));
            }
            let total: f64 = block.iter().sum();
            if (total - 1.0).abs() > tol {
                return Err(Error::Validation(format!("setting block {x} sums to {total}")));
            }
        }
        Ok(ProbabilityTable { scenario, values })
    }
}

/// Fourier-transformed correlators of every deterministic local strategy.
/// Entry order follows [`Scenario::key`] indices.
pub fn enumerate_vertices(scenario: &Scenario) -> Result<Vec<Vec<C64>>> {
    scenario.validate()?;
    let count = scenario.check_cap()?;
    let indices: Vec<usize> = (0..scenario.num_entries()?).collect();
    Ok(vertex_columns(scenario, count, &indices))
}

fn vertex_columns(scenario: &Scenario, count: usize, indices: &[usize]) -> Vec<Vec<C64>> {
    let d = scenario.outcomes;
    let roots = roots_of_unity(d);
    let terms: Vec<Vec<(usize, usize, usize)>> = indices
        .iter()
        .map(|&i| {
            scenario
                .options(i)
                .iter()
                .enumerate()
                .filter(|(_, &o)| o > 0)
                .map(|(j, &o)| (j, (o - 1) / (d - 1), (o - 1) % (d - 1) + 1))
                .collect()
        })
        .collect();
    (0..count)
        .into_par_iter()
        .map(|v| {
            let s = scenario.strategy(v as u128);
            terms.iter().map(|t| roots[t.iter().map(|&(j, x, k)| k * s[j][x]).sum::<usize>() % d]).collect()
        })
        .collect()
}

/// Extreme `α` with `α·corr` inside the local polytope, over the
/// correlators present in `corr`.
pub fn lhvm_alpha(corr: &CorrelatorVector, extreme: Extreme) -> Result<AlphaResult> {
    let scenario = corr.scenario();
    let count = scenario.check_cap()?;
    let indices: Vec<usize> = corr.entries().iter().map(|e| e.0).collect();
    let columns = vertex_columns(&scenario, count, &indices);
    let complex = scenario.outcomes > 2;
    let alpha = count;
    let mut objective = vec![0.0; count + 1];
    objective[alpha] = 1.0;
    let mut lp = match extreme {
        Extreme::Max => LinearProgram::maximize(objective),
        Extreme::Min => LinearProgram::minimize(objective),
    }
    .free(alpha);
    for (r, &(_, target)) in corr.entries().iter().enumerate() {
        let mut re: Vec<f64> = columns.iter().map(|c| c[r].re).collect();
        re.push(-target.re);
        lp = lp.eq(re, 0.0);
        if complex {
            let mut im: Vec<f64> = columns.iter().map(|c| c[r].im).collect();
            im.push(-target.im);
            lp = lp.eq(im, 0.0);
        }
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

/// Whether `P` is a convex combination of deterministic local strategies.
pub fn lhvm_membership(table: &ProbabilityTable) -> Result<bool> {
    let scenario = table.scenario;
    let count = scenario.check_cap()?;
    let width = scenario.outcome_combinations()?;
    let rows = table.values.len();
    let d = scenario.outcomes;
    let m = scenario.settings;
    let support: Vec<Vec<usize>> = (0..count)
        .into_par_iter()
        .map(|v| {
            let s = scenario.strategy(v as u128);
            (0..rows / width)
                .map(|x| {
                    let mut xs = x;
                    let mut a = 0;
                    let mut place = 1;
                    for j in (0..scenario.parties).rev() {
                        a += s[j][xs % m] * place;
                        xs /= m;
                        place *= d;
                    }
                    x * width + a
                })
                .collect()
        })
        .collect();
    let mut lp = LinearProgram::minimize(vec![0.0; count]);
    let mut matrix = vec![vec![0.0; count]; rows];
    for (v, cells) in support.iter().enumerate() {
        for &c in cells {
            matrix[c][v] = 1.0;
        }
    }
    for (row, &p) in matrix.into_iter().zip(&table.values) {
        lp = lp.eq(row, p);
    }
    lp = lp.eq(vec![1.0; count], 1.0);
    Ok(solve_lp(&lp)?.status == LpStatus::Optimal)
}

/// Inverse Fourier transform `P(a|x) = d⁻ⁿ Σ_k ω^{−k·a} E(x, k)` of a full
/// correlator vector.
pub fn correlators_to_probabilities(corr: &CorrelatorVector, tol: f64) -> Result<ProbabilityTable> {
    if !corr.is_full() {
        return Err(Error::Validation("probabilities need every correlator, including marginals".into()));
    }
    let scenario = corr.scenario();
    let (n, m, d) = (scenario.parties, scenario.settings, scenario.outcomes);
    let roots = roots_of_unity(d);
    let width = scenario.outcome_combinations()?;
    let blocks = scenario.setting_combinations()?;
    let digits = |mut v: usize, base: usize| {
        let mut out = vec![0; n];
        for o in out.iter_mut().rev() {
            *o = v % base;
            v /= base;
        }
        out
    };
    let mut values = vec![0.0; blocks * width];
    for x in 0..blocks {
        let xs = digits(x, m);
        for (a, cell) in values[x * width..(x + 1) * width].iter_mut().enumerate() {
            let av = digits(a, d);
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..width {
                let kv = digits(k, d);
                let options: Vec<usize> =
                    (0..n).map(|j| if kv[j] == 0 { 0 } else { 1 + xs[j] * (d - 1) + kv[j] - 1 }).collect();
                let e = match scenario.index_of(&options) {
                    None => C64::new(1.0, 0.0),
                    Some(i) => corr.get(i).expect("full vector"),
                };
                let phase: usize = (0..n).map(|j| kv[j] * av[j]).sum::<usize>() % d;
                acc += roots[(d - phase) % d] * e;
            }
            acc /= width as f64;
            if acc.im.abs() > tol {
                return Err(Error::Validation(format!(
                    "correlators give a complex probability {acc} (setting {x}, outcome {a})"
                )));
            }
            *cell = acc.re;
        }
    }
    ProbabilityTable::new(scenario, values, tol)
}
