use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hankel::half_chain_min_eigenvalue;
use crate::error::{Error, Result};
use crate::io::extended_f64;
use crate::optim::{bisect_boundary, BisectionSpec, Direction};

/// Relative slack on block eigenvalues when testing positivity along α.
const RANGE_PSD_TOL: f64 = 1e-11;

/// Interval of admissible α, or empty.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaRange {
    #[serde(with = "extended_f64")]
    pub min: f64,
    #[serde(with = "extended_f64")]
    pub max: f64,
    pub empty: bool,
}

impl AlphaRange {
    pub fn new(min: f64, max: f64) -> Self {
        AlphaRange { min, max, empty: false }
    }

    pub fn empty() -> Self {
        AlphaRange { min: f64::NAN, max: f64::NAN, empty: true }
    }

    pub fn contains(&self, alpha: f64) -> bool {
        !self.empty && alpha >= self.min && alpha <= self.max
    }
}

fn image_is_ppt(n: usize, d: usize, k: usize, alpha: f64) -> bool {
    let levels = n * (d - 1) + 1;
    let mut p = vec![1.0; levels];
    p[k] += alpha;
    half_chain_min_eigenvalue(n, d, &p) >= -RANGE_PSD_TOL * (1.0 + alpha.abs())
}

/// Intersection over basis elements `k` of the largest interval around
/// `α = 0` on which `𝟙_D + α|D_k⟩⟨D_k|` stays PPT across the half chain.
///
/// Empty when the sector identity itself is not PPT.
pub fn ds_alpha_range(n: usize, d: usize) -> Result<AlphaRange> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2 and d >= 2 (n = {n}, d = {d})")));
    }
    let levels = n * (d - 1) + 1;
    if half_chain_min_eigenvalue(n, d, &vec![1.0; levels]) < -RANGE_PSD_TOL {
        return Ok(AlphaRange::empty());
    }
    let bounds: Vec<(f64, f64)> = (0..levels)
        .into_par_iter()
        .map(|k| {
            let spec = BisectionSpec::new(move |a: f64| image_is_ppt(n, d, k, a));
            let hi = bisect_boundary(&spec, 0.0, Direction::Up)?;
            let lo = bisect_boundary(&spec, 0.0, Direction::Down)?;
            Ok((lo, hi))
        })
        .collect::<Result<_>>()?;
    let min = bounds.iter().map(|b| b.0).fold(f64::NEG_INFINITY, f64::max);
    let max = bounds.iter().map(|b| b.1).fold(f64::INFINITY, f64::min);
    Ok(AlphaRange::new(min, max))
}

/// Qubit ranges for `N = 2, …, 5`.
pub fn table1() -> Result<Vec<(usize, AlphaRange)>> {
    (2..=5).map(|n| Ok((n, ds_alpha_range(n, 2)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::{hankel_matrices, DiagonalSymmetricState};

    #[test]
    fn two_qubits() {
        let r = ds_alpha_range(2, 2).unwrap();
        assert!((r.min + 0.75).abs() < 1e-8 && (r.max - 1.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn endpoints_are_hankel_determinant_roots() {
        for n in 2..=5 {
            let r = ds_alpha_range(n, 2).unwrap();
            for alpha in [r.min, r.max] {
                let mut best = f64::INFINITY;
                for k in 0..=n {
                    let mut p = vec![1.0; n + 1];
                    p[k] += alpha;
                    let h = hankel_matrices(&DiagonalSymmetricState::new(n, 2, p).unwrap());
                    best = best.min(h.m0.determinant().abs()).min(h.m1.determinant().abs());
                }
                assert!(best < 1e-8, "n={n} alpha={alpha} det={best}");
            }
        }
    }

    #[test]
    fn zero_is_inside() {
        for (n, d) in [(2, 2), (3, 2), (6, 2), (3, 3)] {
            assert!(ds_alpha_range(n, d).unwrap().contains(0.0));
        }
    }

    #[test]
    fn large_qudits_are_empty() {
        assert!(ds_alpha_range(3, 4).unwrap().empty);
    }

    #[test]
    fn serde_uses_strings_for_infinities() {
        let r = AlphaRange::new(f64::NEG_INFINITY, 2.0);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"min":"-inf","max":2.0,"empty":false}"#);
        assert_eq!(serde_json::from_str::<AlphaRange>(&s).unwrap(), r);
    }
}
