use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{fmt_sig, Outcome};
use super::{BhCheck, Command, GlobalOpts};
use crate::compat::{
    lhvm_alpha, lhvm_certify, lhvm_membership, pi_alpha, pi_certify, sdp_relax_alpha, sep_compat_certify, symmetrize,
    theta_body_certify, toth_alpha, toth_check, AlphaResult, AlphaStatus, CompatCertificate, CorrelationFns, Extreme,
    GammaFamily, PICorrelators,
};
use crate::depth::{
    certify_bh, certify_bh4, certify_depth_reduction, certify_mixture, criterion_asymptotic_check,
    criterion_boundary_check, kraus_check, AsymptoticVariant, BhRegion, BoundaryVariant, MapSpec, MixtureParams,
};
use crate::error::{Error, Result};
use crate::io::{self, CorrelatorRecord, MomentsRecord, OperatorRecord, ProbabilityRecord};
use crate::operator::{spectrum, superop_invert, HermitianOperator, PartySubset};
use crate::symmetric::{
    certify_symmetric_small, ds_alpha_range, ds_certify_in_range, ds_ppt_check, table1, AlphaRange,
    DiagonalSymmetricState,
};
use crate::DepthCertificate;

pub(crate) fn dispatch(command: &Command, g: &GlobalOpts) -> Result<Vec<Outcome>> {
    let tol = g.tol;
    match command {
        Command::Depth { state, n } => {
            for_each_state(state, |op| certify_depth_reduction(op, *n, tol), &[("n", json!(n))])
        }
        Command::Bh { state, party, check, alpha, beta, t } => {
            let a = PartySubset::single(*party);
            let run = |op: &HermitianOperator| match check {
                BhCheck::Inverse => {
                    let (alpha, beta) = alpha
                        .zip(*beta)
                        .ok_or_else(|| Error::InvalidArgument("--check inverse needs --alpha and --beta".into()))?;
                    certify_bh(op, alpha, beta, &a, tol)
                }
                BhCheck::BoundaryBeta | BhCheck::BoundaryAlpha => {
                    let t = t.ok_or_else(|| Error::InvalidArgument("boundary checks need --t".into()))?;
                    let variant = if *check == BhCheck::BoundaryBeta {
                        BoundaryVariant::BetaOnBoundary
                    } else {
                        BoundaryVariant::AlphaOnBoundary
                    };
                    criterion_boundary_check(op, t, &a, variant, tol)
                }
                BhCheck::Asymptotic => criterion_asymptotic_check(op, &a, AsymptoticVariant::Direct),
                BhCheck::AsymptoticTilde => criterion_asymptotic_check(op, &a, AsymptoticVariant::Tilde),
                BhCheck::Kraus => kraus_check(op, &a, tol),
            };
            let params = [
                ("party", json!(party)),
                ("check", json!(format!("{check:?}").to_lowercase())),
                ("alpha", json!(alpha)),
                ("beta", json!(beta)),
                ("t", json!(t)),
            ];
            for_each_state(state, run, &params)
        }
        Command::Bh4 { state, parties, alpha, beta, gamma, delta, a, b } => {
            let region = match (a, b) {
                (Some(a), Some(b)) => BhRegion::new(*alpha, *beta, *gamma, *delta, *a, *b),
                _ => BhRegion::with_minimal_split(*alpha, *beta, *gamma, *delta),
            };
            let subset = PartySubset::new(parties.iter().copied());
            let params = [
                ("parties", json!(parties)),
                ("alpha", json!(alpha)),
                ("beta", json!(beta)),
                ("gamma", json!(gamma)),
                ("delta", json!(delta)),
                ("a", json!(region.a)),
                ("b", json!(region.b)),
            ];
            for_each_state(state, |op| certify_bh4(op, &region, &subset, tol), &params)
        }
        Command::Mixture { state, params } => {
            let mix: MixtureParams = io::load_json(params)?;
            let value = serde_json::to_value(&mix)?;
            for_each_state(state, |op| certify_mixture(op, &mix, tol), &[("mixture", value)])
        }
        Command::Invert { state, map, output } => invert(state, map, output.as_deref(), tol).map(|o| vec![o]),
        Command::Sym { state } => for_each_state(state, |op| certify_symmetric_small(op, tol), &[]),
        Command::DsCheck { state, alpha } => state.par_iter().map(|path| ds_check(path, *alpha, tol)).collect(),
        Command::DsRange { n, d, table1: t } => {
            if *t {
                Ok(vec![table_outcome()?])
            } else {
                let n = n.ok_or_else(|| Error::InvalidArgument("--N is required".into()))?;
                Ok(vec![range_outcome(n, *d)?])
            }
        }
        Command::DdRange { n, d } => {
            let grid: Vec<(usize, usize)> = n.iter().flat_map(|&n| d.iter().map(move |&d| (n, d))).collect();
            let rows = grid
                .par_iter()
                .map(|&(n, d)| {
                    let ppt = ds_ppt_check(&DiagonalSymmetricState::uniform(n, d)?, tol);
                    Ok((n, d, ppt, ds_alpha_range(n, d)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(vec![dd_outcome(&rows)])
        }
        Command::Toth { moments } => {
            let (bytes, rec): (_, MomentsRecord) = load(moments)?;
            let m = rec.into_moments()?;
            let violations = toth_check(&m);
            let names: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            let ok = violations.is_empty();
            let verdict = if ok { "compatible" } else { "violated" };
            let text = if ok {
                "no separability inequality violated".to_string()
            } else {
                format!("violated: {}", names.join(", "))
            };
            Ok(vec![Outcome::new(ok, json!({ "class": verdict }), json!({ "violations": violations }))
                .param("moments", rec)
                .theorem("collective-spin-inequalities")
                .digest(&bytes)
                .line(text)
                .table(&["verdict", "violations"], vec![vec![verdict.into(), names.join(";")]])])
        }
        Command::TothAlpha { moments } => {
            let (bytes, rec): (_, MomentsRecord) = load(moments)?;
            let m = rec.into_moments()?;
            let c = CorrelationFns::from_moments(&m, tol)?;
            let max = toth_alpha(&c, Extreme::Max);
            let min = toth_alpha(&c, Extreme::Min);
            let cert = sep_compat_certify(max.alpha_star, m.n)?;
            Ok(vec![compat_outcome(&cert, max, min).param("moments", rec).param("correlations", c.c).digest(&bytes)])
        }
        Command::Lhvm { probabilities } => {
            let (bytes, rec): (_, ProbabilityRecord) = load(probabilities)?;
            let table = rec.clone().into_table(tol.max(1e-12))?;
            let local = lhvm_membership(&table)?;
            let verdict = if local { "local" } else { "not_shown_local" };
            Ok(vec![Outcome::new(local, json!({ "class": verdict }), json!({ "feasible": local }))
                .param("scenario", rec.scenario)
                .theorem("local-polytope-membership")
                .digest(&bytes)
                .line(if local {
                    "feasible: the table is a mixture of deterministic local strategies"
                } else {
                    "infeasible: no local deterministic decomposition"
                })
                .table(&["feasible"], vec![vec![local.to_string()]])])
        }
        Command::LhvmAlpha { correlators } => {
            let (bytes, rec): (_, CorrelatorRecord) = load(correlators)?;
            let sc = rec.scenario;
            let corr = rec.into_vector()?;
            match lhvm_alpha(&corr, Extreme::Max) {
                Ok(max) => {
                    let min = lhvm_alpha(&corr, Extreme::Min)?;
                    let cert = lhvm_certify(max.alpha_star, sc.outcomes, sc.parties)?;
                    Ok(vec![compat_outcome(&cert, max, min).param("scenario", sc).digest(&bytes)])
                }
                Err(Error::Capacity { requested, cap }) => {
                    let s = symmetrize(&corr).map_err(|_| Error::Capacity { requested, cap })?;
                    let max = pi_alpha(&s, Extreme::Max)?;
                    let min = pi_alpha(&s, Extreme::Min)?;
                    let mut cert = pi_certify(max.alpha_star, 2, s.n)?;
                    cert.notes.push(format!(
                        "{requested} strategies exceed the enumeration cap; used the symmetrized projection"
                    ));
                    Ok(vec![compat_outcome(&cert, max, min)
                        .param("scenario", sc)
                        .param("symmetrized", s)
                        .digest(&bytes)])
                }
                Err(e) => Err(e),
            }
        }
        Command::PiAlpha { pi } => {
            let (bytes, s): (_, PICorrelators) = load(pi)?;
            s.validate(1e-9)?;
            let max = pi_alpha(&s, Extreme::Max)?;
            let min = pi_alpha(&s, Extreme::Min)?;
            let cert = pi_certify(max.alpha_star, 2, s.n)?;
            Ok(vec![compat_outcome(&cert, max, min).param("correlators", s).digest(&bytes)])
        }
        Command::SdpAlpha { gamma, pi, s, n, delta } => {
            sdp(gamma, pi.as_deref(), s.as_deref(), *n, *delta, tol).map(|o| vec![o])
        }
        Command::Table1 => Ok(vec![table_outcome()?]),
    }
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<(Vec<u8>, T)> {
    let bytes = std::fs::read(path)?;
    let value = serde_json::from_slice(&bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok((bytes, value))
}

fn load_operator(path: &Path) -> Result<(Vec<u8>, HermitianOperator)> {
    let (bytes, rec): (_, OperatorRecord) = load(path)?;
    Ok((bytes, rec.into_operator()?))
}

fn for_each_state<F>(paths: &[PathBuf], certify: F, params: &[(&str, Value)]) -> Result<Vec<Outcome>>
where
    F: Fn(&HermitianOperator) -> Result<DepthCertificate> + Sync,
{
    paths
        .par_iter()
        .map(|path| {
            let (bytes, op) = load_operator(path).map_err(|e| with_path(path, e))?;
            let cert = certify(&op).map_err(|e| with_path(path, e))?;
            let mut o = depth_outcome(path, &cert).digest(&bytes);
            for (k, v) in params {
                o = o.param(k, v);
            }
            Ok(o)
        })
        .collect()
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
        other => other,
    }
}

fn depth_outcome(path: &Path, cert: &DepthCertificate) -> Outcome {
    let w = &cert.witness;
    let mut line = format!(
        "{}: {} [{}; witness eigenvalue {}]",
        path.display(),
        cert.verdict,
        w.theorem,
        fmt_sig(w.min_eigenvalue)
    );
    for note in &w.notes {
        line.push_str(&format!("\n  note: {note}"));
    }
    Outcome::new(
        cert.is_certified(),
        serde_json::to_value(&cert.verdict).unwrap_or(Value::Null),
        serde_json::to_value(w).unwrap_or(Value::Null),
    )
    .param("input", path.display().to_string())
    .theorem(w.theorem.clone())
    .line(line)
    .table(
        &["input", "verdict", "witness_min_eigenvalue", "theorem"],
        vec![vec![path.display().to_string(), cert.verdict.to_string(), fmt_sig(w.min_eigenvalue), w.theorem.clone()]],
    )
}

fn invert(state: &Path, map: &Path, output: Option<&Path>, tol: f64) -> Result<Outcome> {
    let (bytes, op) = load_operator(state)?;
    let (map_bytes, spec): (_, MapSpec) = load(map)?;
    let inv = superop_invert(&spec, &op)?;
    let min = spectrum(&inv.preimage).min();
    if let Some(out) = output {
        io::write_operator(&inv.preimage, out)?;
    }
    let psd = min >= -tol;
    let class = if psd { "preimage_positive" } else { "preimage_not_positive" };
    Ok(Outcome::new(
        psd,
        json!({ "class": class }),
        json!({ "min_eigenvalue": min, "residual": inv.residual, "condition": inv.condition }),
    )
    .param("map", spec)
    .param("input", state.display().to_string())
    .theorem("superoperator-inverse")
    .digest(&bytes)
    .digest(&map_bytes)
    .line(format!(
        "preimage min eigenvalue {}, residual {}, condition {}",
        fmt_sig(min),
        fmt_sig(inv.residual),
        fmt_sig(inv.condition)
    ))
    .table(
        &["min_eigenvalue", "residual", "condition"],
        vec![vec![fmt_sig(min), fmt_sig(inv.residual), fmt_sig(inv.condition)]],
    ))
}

fn ds_check(path: &Path, alpha: Option<f64>, tol: f64) -> Result<Outcome> {
    let (bytes, s): (_, DiagonalSymmetricState) = load(path)?;
    let range = ds_alpha_range(s.n(), s.d())?;
    let cert = match alpha {
        Some(a) => ds_certify_in_range(&s, a, &range, tol)?,
        None if range.empty => {
            let w = crate::Witness::new("diagonal-symmetric-hankel", f64::NAN)
                .note("admissible alpha range is empty for this (N, d)");
            DepthCertificate { verdict: crate::Verdict::Inconclusive, witness: w }
        }
        None => {
            let hi = ds_certify_in_range(&s, range.max, &range, tol)?;
            if hi.is_certified() {
                hi
            } else {
                let lo = ds_certify_in_range(&s, range.min, &range, tol)?;
                if lo.is_certified() || lo.witness.min_eigenvalue > hi.witness.min_eigenvalue {
                    lo
                } else {
                    hi
                }
            }
        }
    };
    Ok(depth_outcome(path, &cert).param("alpha", alpha).param("ppt", ds_ppt_check(&s, tol)).digest(&bytes))
}

fn range_row(n: usize, d: usize, r: &AlphaRange) -> Vec<String> {
    let (lo, hi) = if r.empty { ("empty".to_string(), "empty".to_string()) } else { (fmt_sig(r.min), fmt_sig(r.max)) };
    vec![n.to_string(), d.to_string(), lo, hi]
}

fn range_outcome(n: usize, d: usize) -> Result<Outcome> {
    let r = ds_alpha_range(n, d)?;
    let text = if r.empty { "empty".to_string() } else { format!("{} {}", fmt_sig(r.min), fmt_sig(r.max)) };
    Ok(Outcome::new(!r.empty, json!({ "class": if r.empty { "empty" } else { "nonempty" } }), serde_json::to_value(r)?)
        .param("N", n)
        .param("d", d)
        .theorem("diagonal-symmetric-alpha-range")
        .line(text)
        .table(&["N", "d", "alpha_min", "alpha_max"], vec![range_row(n, d, &r)]))
}

fn table_outcome() -> Result<Outcome> {
    let rows: Vec<Vec<String>> =
        table1()?.iter().map(|(n, r)| vec![n.to_string(), fmt_sig(r.min), fmt_sig(r.max)]).collect();
    let mut o = Outcome::new(true, json!({ "class": "table" }), json!({ "rows": rows }))
        .theorem("diagonal-symmetric-alpha-range")
        .line("N,alpha_min,alpha_max");
    for r in &rows {
        o = o.line(r.join(","));
    }
    Ok(o.table(&["N", "alpha_min", "alpha_max"], rows))
}

fn dd_outcome(rows: &[(usize, usize, bool, AlphaRange)]) -> Outcome {
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|(n, d, ppt, r)| {
            let mut row = range_row(*n, *d, r);
            row.insert(2, ppt.to_string());
            row
        })
        .collect();
    let all = rows.iter().all(|r| !r.3.empty);
    let mut o =
        Outcome::new(all, json!({ "class": if all { "nonempty" } else { "some_empty" } }), json!({ "rows": table }))
            .theorem("diagonal-symmetric-alpha-range");
    for row in &table {
        o = o.line(format!(
            "N={} d={} identity_ppt={} alpha_min={} alpha_max={}",
            row[0], row[1], row[2], row[3], row[4]
        ));
    }
    o.table(&["N", "d", "identity_ppt", "alpha_min", "alpha_max"], table)
}

fn compat_outcome(cert: &CompatCertificate, max: AlphaResult, min: AlphaResult) -> Outcome {
    let beta = cert.beta.map(|b| {
        if b.lower_inclusive {
            format!("[{}, inf)", fmt_sig(b.lower))
        } else {
            format!("({}, inf)", fmt_sig(b.lower))
        }
    });
    let status = |r: &AlphaResult| serde_json::to_value(r.status).unwrap_or(Value::Null);
    let witness = json!({
        "alpha_max": serde_json::to_value(max).unwrap_or(Value::Null),
        "alpha_min": serde_json::to_value(min).unwrap_or(Value::Null),
        "beta_interval": cert.beta,
        "thermodynamic_limit_caveat": cert.thermodynamic_limit_caveat,
        "notes": cert.notes,
    });
    let mut o = Outcome::new(cert.is_certified(), serde_json::to_value(&cert.verdict).unwrap_or(Value::Null), witness)
        .theorem(cert.theorem.clone())
        .line(format!(
            "alpha_max = {} ({}), alpha_min = {} ({})",
            fmt_sig(max.alpha_star),
            status(&max).as_str().unwrap_or(""),
            fmt_sig(min.alpha_star),
            status(&min).as_str().unwrap_or("")
        ))
        .line(cert.verdict.to_string());
    if let Some(b) = &beta {
        o = o.line(format!("beta in {b}"));
    }
    if cert.thermodynamic_limit_caveat && cert.is_certified() {
        o = o.line("caveat: the separability criterion holds in the large-N limit");
    }
    for note in &cert.notes {
        o = o.line(format!("note: {note}"));
    }
    o.table(
        &["alpha_max", "alpha_min", "verdict", "beta_interval"],
        vec![vec![
            fmt_sig(max.alpha_star),
            fmt_sig(min.alpha_star),
            cert.verdict.to_string(),
            beta.unwrap_or_default(),
        ]],
    )
}

fn sdp(
    gamma: &Path,
    pi: Option<&Path>,
    s: Option<&[f64]>,
    n: Option<usize>,
    delta: Option<f64>,
    tol: f64,
) -> Result<Outcome> {
    let (gamma_bytes, family): (_, GammaFamily) = load(gamma)?;
    let (s_vec, n, pi_bytes) = match (pi, s) {
        (Some(p), _) => {
            let (bytes, rec): (_, PICorrelators) = load(p)?;
            (rec.to_array().to_vec(), Some(n.unwrap_or(rec.n)), bytes)
        }
        (None, Some(s)) => (s.to_vec(), n, Vec::new()),
        (None, None) => return Err(Error::InvalidArgument("supply --pi or --s".into())),
    };
    let hat = sdp_relax_alpha(&s_vec, &family, Extreme::Max, tol)?;
    let min = sdp_relax_alpha(&s_vec, &family, Extreme::Min, tol)?;
    let outcome = match delta {
        Some(dl) if hat.status != AlphaStatus::Infeasible => {
            let n = n.ok_or_else(|| Error::InvalidArgument("--N is needed for the beta interval".into()))?;
            let cert = theta_body_certify(hat.alpha_star, dl, 2, n)?;
            compat_outcome(&cert, hat, min).param("delta", dl).param("N", n)
        }
        _ => {
            let note = if hat.status == AlphaStatus::Infeasible {
                "constant block is not positive semidefinite"
            } else {
                "no gap bound supplied (--delta); the relaxation value alone certifies nothing"
            };
            Outcome::new(
                false,
                json!({ "class": "inconclusive" }),
                json!({ "alpha_max": hat, "alpha_min": min, "notes": [note] }),
            )
            .theorem("moment-relaxation")
            .line(format!("alpha_hat = {} ({:?})", fmt_sig(hat.alpha_star), hat.status).to_lowercase())
            .line(format!("note: {note}"))
            .table(
                &["alpha_max", "alpha_min", "verdict", "beta_interval"],
                vec![vec![fmt_sig(hat.alpha_star), fmt_sig(min.alpha_star), "inconclusive".into(), String::new()]],
            )
        }
    };
    Ok(outcome.param("S", &s_vec).digest(&gamma_bytes).digest(&pi_bytes))
}
