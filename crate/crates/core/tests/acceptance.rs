//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the lines are always printed.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::Command;
use std::time::{Duration, Instant};

use entcert::compat::{
    correlators_to_probabilities, enumerate_vertices, lhvm_alpha, lhvm_certify, lhvm_membership, pi_alpha, pi_vertices,
    sep_compat_certify, symmetrize, toth_alpha, toth_alpha_simplex, AlphaStatus, BetaInterval, CollectiveMoments,
    CorrelationFns, CorrelatorVector, Extreme, Scenario,
};
use entcert::depth::{
    bh_inverse, certify_depth_reduction, mixture_apply, reduction_apply, reduction_inverse, MapSpec, MixtureParams,
    PartyParams,
};
use entcert::operator::{is_psd, partial_transpose, spectrum, superop_invert};
use entcert::symmetric::{
    dicke_vector, ds_alpha_range, ds_ppt_check, sym_identity_pt_min_eig, sym_identity_pt_spectrum,
    DiagonalSymmetricState, DickeIndex,
};
use entcert::{HermitianOperator, PartySubset, SystemShape, C64};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn qubit_range_closed_forms() -> Vec<(usize, f64, f64)> {
    let cubic = |a: f64| 18.0 * a.powi(3) + 54.0 * a * a - 378.0 * a - 90.0;
    vec![
        (2, -0.75, 1.0),
        (3, -2.0 / 3.0, 3f64.sqrt() - 1.0),
        (4, (3.0 * 6f64.sqrt() - 8.0) / 2.0, 5.0 * (21f64.sqrt() - 3.0) / 18.0),
        (5, bisect_root(cubic, -0.5, 0.0), (114f64.sqrt() - 8.0) / 10.0),
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let printed = [(-0.750, 1.000), (-0.667, 0.732), (-0.326, 0.440), (-0.231, 0.268)];
    let mut worst: f64 = 0.0;
    for ((n, lo, hi), (plo, phi)) in qubit_range_closed_forms().into_iter().zip(printed) {
        let r = ds_alpha_range(n, 2).map_err(|e| e.to_string())?;
        ensure!(!r.empty, "N = {n}: empty range");
        ensure!(close(r.min, plo, 1e-3) && close(r.max, phi, 1e-3), "N = {n}: ({}, {}) vs printed", r.min, r.max);
        ensure!(
            close(r.min, lo, 1e-6) && close(r.max, hi, 1e-6),
            "N = {n}: ({}, {}) vs closed form ({lo}, {hi})",
            r.min,
            r.max
        );
        worst = worst.max((r.min - lo).abs()).max((r.max - hi).abs());
        let out = Command::new(env!("CARGO_BIN_EXE_entcert"))
            .args(["ds-range", "--N", &n.to_string(), "--d", "2"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(out.status.code() == Some(0), "ds-range --N {n} exited with {:?}", out.status.code());
        let text = String::from_utf8_lossy(&out.stdout);
        let vals: Vec<f64> = text.split_whitespace().filter_map(|t| t.parse().ok()).collect();
        ensure!(
            vals.len() == 2 && close(vals[0], lo, 1e-6) && close(vals[1], hi, 1e-6),
            "ds-range --N {n} printed {text:?}"
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("max deviation from closed forms {worst:.1e}, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let r = ds_alpha_range(3, 3).map_err(|e| e.to_string())?;
    let max = (7.0 * 10f64.sqrt() - 22.0) / 36.0;
    let min = bisect_root(|a| 49.0 * a.powi(3) + 147.0 * a * a - 315.0 * a - 1.0, -0.01, 0.0);
    ensure!(!r.empty, "(3, 3) range is empty");
    ensure!(close(r.max, max, 1e-6), "alpha_max {} vs {max}", r.max);
    ensure!(close(r.min, min, 1e-6), "alpha_min {} vs {min}", r.min);
    let r4 = ds_alpha_range(3, 4).map_err(|e| e.to_string())?;
    ensure!(r4.empty, "(3, 4) range should be empty, got {r4:?}");
    Ok(format!("({:.8}, {:.8}); d = 4 empty", r.min, r.max))
}

fn criterion_3() -> Outcome {
    let s = sym_identity_pt_spectrum(3).map_err(|e| e.to_string())?;
    let expected = [1.0 / 3.0; 4].into_iter().chain([4.0 / 3.0; 2]);
    ensure!(s.len() == 6, "spectrum has {} values", s.len());
    for (a, b) in s.eigenvalues().iter().zip(expected) {
        ensure!(close(*a, b, 1e-10), "spectrum {:?}", s.eigenvalues());
    }
    for n in 2..=8 {
        let m = sym_identity_pt_min_eig(n).map_err(|e| e.to_string())?;
        ensure!(close(m, 1.0 / n as f64, 1e-10), "N = {n}: min {m}");
    }
    Ok("{1/3 x4, 4/3 x2}; min = 1/N for N = 2..8".into())
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut checks = 0;
    for n in 2..=4 {
        let shape = SystemShape::qubits(n).unwrap();
        for _ in 0..500 {
            let rho = haar_state(&shape, &mut r);
            for alpha in [-1.0, 2.0] {
                let out = reduction_apply(&rho, alpha);
                for party in 0..n {
                    let pt = partial_transpose(&out, &PartySubset::single(party)).unwrap();
                    ensure!(is_psd(&pt, 1e-9), "N = {n}, alpha = {alpha}, cut {party}: not PPT");
                    checks += 1;
                }
            }
        }
    }
    for n in 2..=4 {
        let bell = bell_on_first_pair(n);
        let out = reduction_apply(&bell, 2.05);
        let pt = partial_transpose(&out, &PartySubset::single(0)).unwrap();
        let min = spectrum(&pt).min();
        ensure!(min < 0.0, "N = {n}: no counterexample at alpha = 2.05 (min {min})");
    }
    Ok(format!("{checks} cut checks PPT; maximally entangled cut fails at alpha = 2.05"))
}

/// Positivity of the preimage at either range endpoint, by generic
/// superoperator inversion and a full eigensolve.
fn brute_force_certified(sigma: &HermitianOperator) -> bool {
    [2.0, -1.0].iter().any(|&a| {
        let inv = superop_invert(&MapSpec::reduction(a), sigma).unwrap();
        spectrum(&inv.preimage).min() >= -1e-9
    })
}

fn criterion_5() -> Outcome {
    let shape = SystemShape::qubits(3).unwrap();
    let mut r = rng(5);
    let mut sigmas = vec![ghz(3)];
    for _ in 0..20 {
        sigmas.push(haar_state(&shape, &mut r));
        sigmas.push(random_state(&shape, 2, &mut r));
    }
    let threshold = 2.0 / (8.0 + 2.0);
    for (i, s) in sigmas.iter().enumerate() {
        for k in 0..=20 {
            let p = threshold * k as f64 / 20.0;
            let state = noisy(s, p);
            let cert = certify_depth_reduction(&state, 1, 1e-9).map_err(|e| e.to_string())?;
            ensure!(cert.is_certified(), "sigma {i}, p = {p}: not certified");
            ensure!(brute_force_certified(&state), "sigma {i}, p = {p}: oracle disagrees");
        }
    }
    let over = noisy(&ghz(3), threshold + 1e-3);
    let cert = certify_depth_reduction(&over, 1, 1e-9).map_err(|e| e.to_string())?;
    ensure!(!cert.is_certified(), "GHZ certified above the threshold");
    ensure!(!brute_force_certified(&over), "oracle certifies GHZ above the threshold");
    Ok(format!("{} states certified for p <= 0.2; GHZ not certified at 0.201", sigmas.len()))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let n = 2 + i % 2;
        let shape = SystemShape::qubits(n).unwrap();
        let sigma = random_hermitian(&shape, &mut r);
        let alpha = if r.random::<bool>() { r.random_range(0.1..2.0) } else { r.random_range(-1.0..-0.1) };
        let closed = reduction_inverse(&sigma, alpha).map_err(|e| e.to_string())?;
        let generic = superop_invert(&MapSpec::reduction(alpha), &sigma).map_err(|e| e.to_string())?;
        worst = worst.max(closed.max_abs_diff(&generic.preimage));
        let a = PartySubset::single(r.random_range(0..n));
        let (ba, bb) = (r.random_range(0.5..2.0), r.random_range(-0.4..0.4));
        let closed = bh_inverse(&sigma, ba, bb, &a).map_err(|e| e.to_string())?;
        let generic = superop_invert(&MapSpec::breuer_hall(ba, bb, &a), &sigma).map_err(|e| e.to_string())?;
        worst = worst.max(closed.max_abs_diff(&generic.preimage));
    }
    ensure!(worst < 1e-10, "closed vs generic inverse differ by {worst:e}");
    let shape = SystemShape::qubits(3).unwrap();
    let mut trace_worst: f64 = 0.0;
    for _ in 0..50 {
        let raw: Vec<f64> = (0..3).map(|_| r.random::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        let mix = MixtureParams {
            weights: raw.iter().map(|x| x / total).collect(),
            params: (0..3)
                .map(|_| PartyParams {
                    alpha: r.random_range(-1.0..2.0),
                    beta: r.random_range(-1.0..2.0),
                    gamma: r.random_range(-1.0..2.0),
                    delta: r.random_range(-1.0..2.0),
                })
                .collect(),
        };
        let rho = random_state(&shape, 3, &mut r);
        let sigma = mixture_apply(&rho, &mix).map_err(|e| e.to_string())?;
        let expected = 8.0
            + mix.weights.iter().zip(&mix.params).map(|(p, q)| p * (q.alpha + q.beta + q.gamma + q.delta)).sum::<f64>();
        trace_worst = trace_worst.max((sigma.trace() / rho.trace() - expected).abs());
    }
    ensure!(trace_worst < 1e-10, "mixture trace relation off by {trace_worst:e}");
    Ok(format!("inverse deviation {worst:.1e}, trace relation deviation {trace_worst:.1e}"))
}

/// Half-chain PPT of the embedded state, computed in the full space.
fn full_space_ppt(s: &DiagonalSymmetricState) -> bool {
    let (n, d) = (s.n(), s.d());
    let shape = SystemShape::uniform(n, d).unwrap();
    let dim = shape.dim();
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for (k, &p) in s.weights().iter().enumerate() {
        let v = dicke_vector(DickeIndex::new(n, d, k).unwrap()).unwrap();
        m += &v * v.adjoint() * C64::new(p, 0.0);
    }
    let rho = HermitianOperator::new(shape, m).unwrap();
    let pt = partial_transpose(&rho, &PartySubset::new(0..n / 2)).unwrap();
    is_psd(&pt, 1e-12)
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let mut counts = (0, 0);
    for n in 2..=5 {
        for _ in 0..100 {
            let raw: Vec<f64> = (0..=n).map(|_| r.random::<f64>().powi(3)).collect();
            let total: f64 = raw.iter().sum();
            let s = DiagonalSymmetricState::new(n, 2, raw.iter().map(|x| x / total).collect()).unwrap();
            let hankel = ds_ppt_check(&s, 1e-12);
            ensure!(hankel == full_space_ppt(&s), "N = {n}: disagreement at {:?}", s.weights());
            if hankel {
                counts.0 += 1;
            } else {
                counts.1 += 1;
            }
        }
    }
    Ok(format!("0 disagreements in 400 states ({} PPT, {} NPT)", counts.0, counts.1))
}

fn chsh_vector(e: [f64; 4]) -> CorrelatorVector {
    let s = Scenario::new(2, 2, 2).unwrap();
    let mut values = vec![0.0; s.num_entries().unwrap()];
    for (key, v) in ["0,0", "0,1", "1,0", "1,1"].iter().zip(e) {
        values[s.parse_key(key).unwrap()] = v;
    }
    CorrelatorVector::full_real(s, &values).unwrap()
}

fn criterion_8() -> Outcome {
    let h = FRAC_1_SQRT_2;
    let tsirelson = chsh_vector([h, h, h, -h]);
    let a = lhvm_alpha(&tsirelson, Extreme::Max).map_err(|e| e.to_string())?;
    ensure!(a.status == AlphaStatus::Optimal && close(a.alpha_star, h, 1e-9), "Tsirelson alpha {a:?}");
    let pr = lhvm_alpha(&chsh_vector([1.0, 1.0, 1.0, -1.0]), Extreme::Max).map_err(|e| e.to_string())?;
    ensure!(close(pr.alpha_star, 0.5, 1e-9), "PR-box alpha {pr:?}");
    let p = correlators_to_probabilities(&tsirelson, 1e-12).map_err(|e| e.to_string())?;
    ensure!(!lhvm_membership(&p).map_err(|e| e.to_string())?, "Tsirelson point reported local");
    let scaled = correlators_to_probabilities(&tsirelson.scaled(a.alpha_star), 1e-12).map_err(|e| e.to_string())?;
    ensure!(lhvm_membership(&scaled).map_err(|e| e.to_string())?, "alpha* point reported nonlocal");
    Ok(format!("Tsirelson {:.12}, PR box {:.12}", a.alpha_star, pr.alpha_star))
}

fn criterion_9() -> Outcome {
    for n in [2usize, 4, 6, 8] {
        let j2 = (n * (n + 2)) as f64 / 8.0;
        let m = CollectiveMoments::unpolarized(n, [j2, j2, 0.0]).map_err(|e| e.to_string())?;
        let c = CorrelationFns::from_moments(&m, 1e-12).map_err(|e| e.to_string())?;
        let a = toth_alpha(&c, Extreme::Max).alpha_star;
        let want = (n - 1) as f64 / (2 * n - 1) as f64;
        ensure!(close(a, want, 1e-9), "N = {n}: {a} vs {want}");
    }
    let mut r = rng(9);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = r.random_range(3..=8usize);
        let (lo, hi) = (-(n as f64) / 4.0, (n * (n - 1)) as f64 / 4.0);
        let c = CorrelationFns::new(n, std::array::from_fn(|_| r.random_range(lo..hi))).map_err(|e| e.to_string())?;
        let a = toth_alpha(&c, Extreme::Max);
        let b = toth_alpha_simplex(&c, Extreme::Max).map_err(|e| e.to_string())?;
        ensure!(a.status == b.status, "status mismatch {a:?} vs {b:?}");
        if a.status == AlphaStatus::Optimal {
            worst = worst.max((a.alpha_star - b.alpha_star).abs());
        }
    }
    ensure!(worst < 1e-9, "ratio scan vs simplex differ by {worst:e}");
    Ok(format!("Dicke N = 2,4,6,8 exact; 1000 random instances agree to {worst:.1e}"))
}

fn exact_ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn criterion_10() -> Outcome {
    let half_ulp = exact_ratio(1, 1 << 53);
    let mut checked = 0;
    let mut prev: Option<f64> = None;
    for k in 9..=200u64 {
        // α* = k/8, exact in binary floating point.
        let alpha = k as f64 / 8.0;
        for (d, n) in [(2u64, 1u32), (2, 3), (2, 6), (3, 2), (3, 4), (4, 3)] {
            let base = d.pow(n);
            let got = if d == 2 {
                sep_compat_certify(alpha, n as usize).map_err(|e| e.to_string())?.beta
            } else {
                lhvm_certify(alpha, d as usize, n as usize).map_err(|e| e.to_string())?.beta
            };
            let got = got.ok_or("no interval for alpha* > 1")?;
            ensure!(got.lower_inclusive, "closed interval expected");
            let exact = exact_ratio(base * 8, k - 8);
            let diff = BigRational::from_float(got.lower).unwrap() - &exact;
            let bound = &exact * &half_ulp;
            ensure!(diff <= bound && -diff <= bound, "alpha* = {k}/8, d^N = {base}: {} vs exact", got.lower);
            checked += 1;
        }
        let lower = BetaInterval::from_alpha(8.0, alpha).unwrap().lower;
        if let Some(p) = prev {
            ensure!(lower < p, "interval not shrinking at alpha* = {alpha}");
        }
        prev = Some(lower);
    }
    ensure!(!sep_compat_certify(1.0, 3).unwrap().is_certified(), "alpha* = 1 certified");
    let inf = sep_compat_certify(f64::INFINITY, 3).unwrap().beta.unwrap();
    ensure!(inf.lower == 0.0 && !inf.lower_inclusive, "unbounded alpha* should give (0, inf)");
    Ok(format!("{checked} intervals exact to rounding"))
}

fn criterion_11() -> Outcome {
    for n in 1..=50u64 {
        let count = pi_vertices(n as usize).len() as u64;
        ensure!(count == binomial(n + 3, 3), "N = {n}: {count} vertices");
    }
    let sc = Scenario::new(3, 2, 2).unwrap();
    let verts = enumerate_vertices(&sc).map_err(|e| e.to_string())?;
    let mut r = rng(11);
    let mut min_gap = f64::INFINITY;
    for _ in 0..20 {
        let k = r.random_range(1..=5);
        let w: Vec<f64> = (0..k).map(|_| r.random::<f64>()).collect();
        let total: f64 = w.iter().sum();
        let mut acc = vec![C64::new(0.0, 0.0); verts[0].len()];
        for wi in &w {
            let v = &verts[r.random_range(0..verts.len())];
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x * (wi / total);
            }
        }
        let corr = CorrelatorVector::full(sc, acc).map_err(|e| e.to_string())?;
        let full = lhvm_alpha(&corr, Extreme::Max).map_err(|e| e.to_string())?;
        let pi = pi_alpha(&symmetrize(&corr).map_err(|e| e.to_string())?, Extreme::Max).map_err(|e| e.to_string())?;
        let gap = pi.alpha_star - full.alpha_star;
        ensure!(gap >= -1e-8, "pi {pi:?} below full {full:?}");
        min_gap = min_gap.min(gap);
    }
    Ok(format!("counts match for N <= 50; min(pi - full) = {min_gap:.2e}"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("qubit diagonal-symmetric alpha ranges", criterion_1),
        ("qutrit radicals and empty d = 4 range", criterion_2),
        ("symmetric identity partial-transpose spectrum", criterion_3),
        ("reduction-map endpoint PPT property", criterion_4),
        ("white-noise certification radius", criterion_5),
        ("closed-form vs generic inverses, mixture trace", criterion_6),
        ("Hankel vs full-space half-chain PPT", criterion_7),
        ("CHSH scaling and local-polytope membership", criterion_8),
        ("collective-spin LP: Dicke values and simplex agreement", criterion_9),
        ("beta-interval formulas", criterion_10),
        ("permutationally invariant projection", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {why} [{ms} ms]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
