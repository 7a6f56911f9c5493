//! The six subcommands. Each writes its result to the configured output and
//! returns the error that decides the exit code.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use foldcore::catalog::CatalogSystem;
use foldcore::dynamics::{
    classify_orbit, classify_rhsc_with, iterate_system_with, lyapunov_core, lyapunov_fd,
    lyapunov_planar, lyapunov_sign_change, period_windows, sensitive_pair_stat, sweep_grid,
    sweep_row, ClassifyOptions, Limits, Status, SweepRow, Verdict,
};
use foldcore::folding::{check_fold_consistency, CoreOrder, Folding};
use foldcore::system::{CustomSystem, Swapped};
use foldcore::{SystemSpec, OVERFLOW_THRESHOLD};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{FoldOn, RunConfig};
use crate::error::CliError;

const CHAOS_THRESHOLD: f64 = 0.01;
const PERIOD3_WINDOW: (f64, f64) = (3.83, 3.86);

fn open_output(cfg: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cfg.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn folding_for(spec: &SystemSpec, on: FoldOn) -> Result<Folding, CliError> {
    Ok(match on {
        FoldOn::F => spec.folding()?,
        FoldOn::G => spec.folding_on_g()?,
    })
}

pub fn fold(cfg: &RunConfig) -> Result<(), CliError> {
    let spec = cfg.system()?;
    let folding = folding_for(spec, cfg.fold_on)?;
    let (core, passive) = match (spec, cfg.fold_on) {
        (SystemSpec::Catalog(c), FoldOn::F) => (c.core_text(), c.passive_text()),
        _ => {
            let core = match folding.core.order {
                CoreOrder::One => {
                    format!("s' = {} (order 1)", folding.core.map.named("s_prev", "s"))
                }
                CoreOrder::Two => format!("s'' = {} (order 2)", folding.core.map.named("s", "s'")),
            };
            let passive = match cfg.fold_on {
                FoldOn::F => format!("y_n = {}", folding.passive.h.named("x_n", "x_{n+1}")),
                FoldOn::G => format!("x_n = {}", folding.passive.h.named("y_n", "y_{n+1}")),
            };
            (core, passive)
        }
    };
    let init = match cfg.fold_on {
        FoldOn::F => "s0 = x0, s1 = f(0, x0, y0)",
        FoldOn::G => "s0 = y0, s1 = g(0, x0, y0)",
    };
    let mut out = open_output(cfg)?;
    writeln!(out, "system: {}", spec.name())?;
    writeln!(out, "core: {core}")?;
    writeln!(out, "passive: {passive}")?;
    writeln!(out, "init: {init}")?;
    out.flush()?;
    Ok(())
}

fn status_result(status: &Status) -> Result<(), CliError> {
    match status {
        Status::Completed => Ok(()),
        Status::Singular { .. } => Err(CliError::Singular(status.describe())),
        Status::Overflow { .. } => Err(CliError::Overflow(status.describe())),
    }
}

pub fn simulate(cfg: &RunConfig) -> Result<(), CliError> {
    let spec = cfg.system()?;
    let limits = Limits {
        singular_eps: cfg.tolerances.singular,
        overflow: OVERFLOW_THRESHOLD,
    };
    let orbit = iterate_system_with(spec, cfg.init(), cfg.steps.unwrap_or(1000), limits);
    let mut out = open_output(cfg)?;
    writeln!(out, "n,x,y")?;
    for (n, (x, y)) in orbit.points.iter().enumerate() {
        writeln!(out, "{n},{x},{y}")?;
    }
    out.flush()?;
    status_result(&orbit.status)
}

/// In-domain initial points: inside the invariant window for quadratic cores,
/// near the fixed point for affine cores, around the configured point otherwise.
fn sample_init(spec: &SystemSpec, base: (f64, f64), rng: &mut ChaCha8Rng) -> (f64, f64) {
    let perturbed = |rng: &mut ChaCha8Rng| {
        (
            base.0 * (1.0 + rng.gen_range(-0.1..0.1)),
            base.1 * (1.0 + rng.gen_range(-0.1..0.1)),
        )
    };
    let SystemSpec::Catalog(sys) = spec else {
        return perturbed(rng);
    };
    let alpha0 = sys.alpha_seq().map_or(1.0, |s| s.value_at(0));
    let skip = matches!(
        sys,
        CatalogSystem::Rnh(_)
            | CatalogSystem::Coch(_)
            | CatalogSystem::Lna(_)
            | CatalogSystem::Lnh(_)
    );
    let (lo, hi) = if let Some(q) = sys.quadratic_params() {
        let (lo, hi) = q.window();
        let span = hi - lo;
        (lo + 0.05 * span, hi - 0.05 * span)
    } else if let Some((a, b, c)) = sys.affine_core() {
        let denom = 1.0 - a - b;
        if denom == 0.0 {
            return perturbed(rng);
        }
        let p = c / denom;
        let r = 0.25 * p.abs().max(1.0);
        (p - r, p + r)
    } else {
        return perturbed(rng);
    };
    let r0 = rng.gen_range(lo..hi);
    let x0 = if skip {
        rng.gen_range(lo..hi)
    } else {
        rng.gen_range(0.1..3.0)
    };
    (x0, alpha0 * x0 / r0)
}

/// Lyapunov estimate used to decide whether `verify` runs in the chaotic regime.
fn regime_lyapunov(spec: &SystemSpec, init: (f64, f64)) -> Option<f64> {
    if let SystemSpec::Catalog(sys) = spec {
        if let Some(q) = sys.quadratic_params() {
            let (lo, hi) = q.window();
            return lyapunov_core(&q, lo + 0.3 * (hi - lo), 1000, 20_000).ok();
        }
    }
    lyapunov_planar(spec, init, 1000, 5000).ok()
}

pub fn verify(cfg: &RunConfig) -> Result<(), CliError> {
    let spec = cfg.system()?;
    let folding = folding_for(spec, cfg.fold_on)?;
    let lyap = regime_lyapunov(spec, cfg.init());
    let chaotic = lyap.is_some_and(|l| l > CHAOS_THRESHOLD);
    let requested = cfg.steps.unwrap_or(100);
    let (steps, tol) = if chaotic {
        (requested.min(cfg.chaotic_horizon), cfg.chaotic_tol)
    } else {
        (requested, cfg.tolerances.consistency)
    };
    let count = cfg.samples.unwrap_or(25);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failed = 0;
    let mut max_diff: f64 = 0.0;
    let mut first_failure = None;
    for _ in 0..count {
        let init = sample_init(spec, cfg.init(), &mut rng);
        let rep = match cfg.fold_on {
            FoldOn::F => check_fold_consistency(spec, &folding, init, steps, tol),
            FoldOn::G => {
                check_fold_consistency(&Swapped(spec), &folding, (init.1, init.0), steps, tol)
            }
        };
        max_diff = max_diff.max(rep.max_diff);
        if !rep.pass {
            failed += 1;
            if first_failure.is_none() {
                let why = match &rep.early_stop {
                    Some(s) => format!("{:?} side stopped at {}: {}", s.side, s.at, s.reason),
                    None => format!("max diff {} over {} points", rep.max_diff, rep.compared),
                };
                first_failure = Some(format!("init ({}, {}): {why}", init.0, init.1));
            }
        }
    }
    let mut out = open_output(cfg)?;
    writeln!(out, "system={}", spec.name())?;
    writeln!(
        out,
        "fold_on={}",
        if cfg.fold_on == FoldOn::F { "f" } else { "g" }
    )?;
    writeln!(
        out,
        "regime={}",
        if chaotic { "chaotic" } else { "regular" }
    )?;
    if let Some(l) = lyap {
        writeln!(out, "lyapunov={l}")?;
    }
    writeln!(out, "steps={steps}")?;
    writeln!(out, "tol={tol:e}")?;
    writeln!(out, "samples={count}")?;
    writeln!(out, "passed={}", count - failed)?;
    writeln!(out, "failed={failed}")?;
    writeln!(out, "max_diff={max_diff:e}")?;
    out.flush()?;
    if chaotic && requested > steps {
        eprintln!("chaotic regime: horizon capped at {steps} steps (--chaotic-horizon), tolerance {tol:e}");
    }
    match first_failure {
        Some(why) => Err(CliError::CheckFailed(format!(
            "{failed} of {count} samples failed; first: {why}"
        ))),
        None => Ok(()),
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| String::from("none"), |v| v.to_string())
}

pub fn classify(cfg: &RunConfig) -> Result<(), CliError> {
    let spec = cfg.system()?;
    let opts = ClassifyOptions {
        transient: cfg.transient.unwrap_or(1000),
        cycle_tol: cfg.tolerances.cycle,
        lyapunov_samples: cfg.samples.unwrap_or(100_000),
        ..ClassifyOptions::default()
    };
    let budget = cfg.steps.unwrap_or(4000);
    let quadratic = match spec {
        SystemSpec::Catalog(sys @ (CatalogSystem::Rhsc(_) | CatalogSystem::Mhs(_))) => {
            sys.quadratic_params()
        }
        _ => None,
    };
    let Some(q) = quadratic else {
        let (observed, lyap) = classify_orbit(spec, cfg.init(), budget, &opts)?;
        let mut out = open_output(cfg)?;
        writeln!(out, "system={}", spec.name())?;
        writeln!(out, "observed={observed}")?;
        writeln!(out, "observed_lyapunov={}", opt(lyap))?;
        writeln!(out, "verdict=no prediction for this system")?;
        out.flush()?;
        return Ok(());
    };
    let rep = classify_rhsc_with(&q, cfg.init(), budget, &opts)?;
    let mut out = open_output(cfg)?;
    writeln!(out, "system={}", spec.name())?;
    writeln!(out, "a={}", q.a)?;
    writeln!(out, "b={}", q.b)?;
    writeln!(out, "r0={}", rep.r0)?;
    writeln!(out, "window_ok={}", rep.window_ok)?;
    writeln!(out, "mu_max={}", rep.mu_max)?;
    writeln!(out, "mu_mu_max={}", rep.mu_mu_max)?;
    writeln!(out, "y_bound={}", rep.y_bound)?;
    writeln!(out, "alpha_period={}", rep.alpha_period)?;
    writeln!(out, "core_period={}", opt(rep.core_period))?;
    writeln!(out, "core_lyapunov={}", opt(rep.core_lyapunov))?;
    writeln!(out, "predicted={}", opt(rep.predicted))?;
    writeln!(out, "observed={}", rep.observed)?;
    writeln!(out, "observed_lyapunov={}", opt(rep.observed_lyapunov))?;
    writeln!(out, "verdict={}", rep.verdict)?;
    for note in &rep.notes {
        writeln!(out, "note={note}")?;
    }
    out.flush()?;
    match rep.verdict {
        Verdict::Disagree => Err(CliError::CheckFailed(format!(
            "predicted {} but observed {}",
            opt(rep.predicted),
            rep.observed
        ))),
        Verdict::Agree | Verdict::OutOfScope => Ok(()),
    }
}

pub fn sweep(cfg: &RunConfig) -> Result<(), CliError> {
    let range = cfg
        .range
        .ok_or_else(|| CliError::invalid("sweep needs --range from:to:step"))?;
    let a = match &cfg.system {
        None => -1.0,
        Some(SystemSpec::Catalog(sys)) => match sys.quadratic_params() {
            Some(q) => q.a,
            None => {
                return Err(CliError::invalid(format!(
                    "{} has no quadratic core to sweep",
                    sys.id()
                )))
            }
        },
        Some(SystemSpec::Custom(
            CustomSystem::Semilinear { .. } | CustomSystem::Generic { .. },
        )) => {
            return Err(CliError::invalid(
                "sweeps need a quadratic-core catalog system",
            ));
        }
    };
    let transient = cfg.transient.unwrap_or(500);
    let samples = cfg.samples.unwrap_or(200);
    let grid = sweep_grid(range.from, range.to, range.step)?;
    let rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|&b| sweep_row(a, b, transient, samples))
        .collect::<Result<_, _>>()?;
    let mut out = open_output(cfg)?;
    writeln!(out, "b,sample_index,r,lyapunov")?;
    for row in &rows {
        for (i, r) in row.samples.iter().enumerate() {
            writeln!(out, "{},{i},{r},{}", row.b, row.lyapunov)?;
        }
    }
    out.flush()?;
    let escaped: Vec<f64> = rows.iter().filter(|r| r.escaped).map(|r| r.b).collect();
    eprintln!("rows={} samples_per_row={samples} a={a}", rows.len());
    if !escaped.is_empty() {
        eprintln!("escaped rows: {escaped:?}");
    }
    if let Some(b) = lyapunov_sign_change(&rows) {
        eprintln!("lyapunov turns positive at b={b}");
    }
    for (lo, hi) in period_windows(&rows, 3) {
        let flagged = hi > PERIOD3_WINDOW.0 && lo < PERIOD3_WINDOW.1;
        eprintln!(
            "period-3 window: [{lo}, {hi}]{}",
            if flagged {
                " (period-3 window flagged)"
            } else {
                ""
            }
        );
    }
    Ok(())
}

pub fn lyapunov(cfg: &RunConfig) -> Result<(), CliError> {
    let spec = cfg.system()?;
    let transient = cfg.transient.unwrap_or(1000);
    let samples = cfg.samples.unwrap_or(100_000);
    let init = cfg.init();
    let mut out = open_output(cfg)?;
    writeln!(out, "system={}", spec.name())?;
    let quadratic = match spec {
        SystemSpec::Catalog(sys) => sys.quadratic_params(),
        _ => None,
    };
    let folding = match spec {
        SystemSpec::Catalog(_) | SystemSpec::Custom(CustomSystem::Semilinear { .. }) => {
            spec.folding().ok()
        }
        SystemSpec::Custom(CustomSystem::Generic { h: Some(_), .. }) => spec.folding().ok(),
        SystemSpec::Custom(_) => None,
    };
    if let Some(q) = quadratic {
        let r0 = q.initial_ratio(init.0, init.1)?;
        let l = lyapunov_core(&q, r0, transient, samples)?;
        writeln!(out, "method=analytic")?;
        writeln!(out, "r0={r0}")?;
        writeln!(out, "lyapunov={l}")?;
    } else if let Some(f) = folding.filter(|f| f.core.order == CoreOrder::One) {
        let (_, s1) = f.init(init.0, init.1)?;
        let l = lyapunov_fd(&f.core, s1, transient, samples, 1e-6)?;
        writeln!(out, "method=finite_difference")?;
        writeln!(out, "s1={s1}")?;
        writeln!(out, "lyapunov={l}")?;
        let stat = sensitive_pair_stat(&f.core, s1, 1e-10, 200)?;
        writeln!(out, "pair_max_sep={:e}", stat.max_sep)?;
    } else {
        let l = lyapunov_planar(spec, init, transient, samples)?;
        writeln!(out, "method=planar")?;
        writeln!(out, "lyapunov={l}")?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use foldcore::rational::QuadraticCoreParams;
    use foldcore::seq::CoeffSeq;

    #[test]
    fn quadratic_samples_start_in_window() {
        let q = QuadraticCoreParams::new(-1.0, 3.2, CoeffSeq::periodic(vec![1.0, 2.0]).unwrap())
            .unwrap();
        let spec = SystemSpec::Catalog(CatalogSystem::Rhsc(q.clone()));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (x0, y0) = sample_init(&spec, (0.5, 1.0), &mut rng);
            let r0 = q.initial_ratio(x0, y0).unwrap();
            assert!(q.in_window(r0), "r0 = {r0}");
        }
    }
}
