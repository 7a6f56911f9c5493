//! Prediction versus observation for the quadratic-core rational system.
//!
//! With `r0 = alpha_0 x0 / y0` inside the invariant window the orbit is bounded and
//! its `x`-component follows the quadratic core; the passive equation
//! `y_n = alpha_n x_n / x_{n+1}` then decides how coefficient periodicity combines
//! with the core's behavior. Outside the window (and away from `0, +-b/a`) the
//! orbit is unbounded.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogSystem;
use crate::dynamics::cycle::{detect_cycle, lcm_period};
use crate::dynamics::lyapunov::{lyapunov_core, lyapunov_planar};
use crate::dynamics::orbit::{iterate_system, Orbit, Status};
use crate::error::{Error, Result};
use crate::math;
use crate::rational::{quadratic_core_step, QuadraticCoreParams};
use crate::system::PlanarMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Behavior {
    FixedPoint,
    Cycle(usize),
    XAxisLimit,
    /// Bounded, no period up to the cap, positive Lyapunov estimate.
    Chaotic,
    Unbounded,
    /// Bounded without a short period, but not chaotic by the operational test.
    Aperiodic,
    Singular,
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Behavior::FixedPoint => f.write_str("fixed_point"),
            Behavior::Cycle(q) => write!(f, "cycle({q})"),
            Behavior::XAxisLimit => f.write_str("x_axis_limit"),
            Behavior::Chaotic => f.write_str("chaotic (operational)"),
            Behavior::Unbounded => f.write_str("unbounded"),
            Behavior::Aperiodic => f.write_str("aperiodic"),
            Behavior::Singular => f.write_str("singular"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Agree,
    Disagree,
    OutOfScope,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Agree => "agree",
            Verdict::Disagree => "disagree",
            Verdict::OutOfScope => "out of theorem scope",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub transient: usize,
    pub cycle_tol: f64,
    pub max_period: usize,
    pub lyapunov_samples: usize,
    pub chaos_threshold: f64,
    /// `max |y|` over the observed tail below which the limit set is taken to lie on the x-axis.
    pub x_axis_tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            transient: 1000,
            cycle_tol: 1e-6,
            max_period: 64,
            lyapunov_samples: 100_000,
            chaos_threshold: 0.01,
            x_axis_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub r0: f64,
    pub window_ok: bool,
    pub mu_max: f64,
    pub mu_mu_max: f64,
    pub y_bound: f64,
    /// Eventual period of `alpha_n`.
    pub alpha_period: usize,
    pub core_period: Option<usize>,
    pub core_lyapunov: Option<f64>,
    pub predicted: Option<Behavior>,
    pub observed: Behavior,
    pub observed_lyapunov: Option<f64>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Classifies an orbit from its tail: unbounded/singular status, x-axis collapse,
/// shortest cycle, then the operational chaos test with the supplied Lyapunov estimate.
pub fn observe_orbit(
    orbit: &Orbit,
    opts: &ClassifyOptions,
    lyapunov: Option<f64>,
) -> Result<Behavior> {
    match orbit.status {
        Status::Overflow { .. } => return Ok(Behavior::Unbounded),
        Status::Singular { .. } => {
            // y_n itself is the denominator of x_{n+1}: a stop right after y has
            // decayed below tolerance is a collapse onto the x-axis
            let pts = &orbit.points;
            let last = pts
                .get(pts.len().saturating_sub(opts.max_period)..)
                .unwrap_or(&[]);
            if last.len() == opts.max_period && last.iter().all(|p| p.1.abs() < opts.x_axis_tol) {
                return Ok(Behavior::XAxisLimit);
            }
            return Ok(Behavior::Singular);
        }
        Status::Completed => {}
    }
    let tail = orbit.points.get(opts.transient..).unwrap_or(&[]);
    if tail.len() < 3 * opts.max_period {
        return Err(Error::invalid(format!(
            "orbit tail of {} points is too short for periods up to {}",
            tail.len(),
            opts.max_period
        )));
    }
    if tail.iter().all(|p| p.1.abs() < opts.x_axis_tol) {
        return Ok(Behavior::XAxisLimit);
    }
    if let Some(rep) = detect_cycle(tail, opts.cycle_tol, opts.max_period)? {
        return Ok(if rep.period == 1 {
            Behavior::FixedPoint
        } else {
            Behavior::Cycle(rep.period)
        });
    }
    Ok(match lyapunov {
        Some(l) if l > opts.chaos_threshold => Behavior::Chaotic,
        _ => Behavior::Aperiodic,
    })
}

/// Observation only, for any planar system: the chaos test uses the planar
/// Lyapunov estimate over the post-transient part of the budget.
pub fn classify_orbit<S: PlanarMap + ?Sized>(
    sys: &S,
    init: (f64, f64),
    budget: usize,
    opts: &ClassifyOptions,
) -> Result<(Behavior, Option<f64>)> {
    let orbit = iterate_system(sys, init, budget);
    let lyapunov = if orbit.status.is_completed() && budget > opts.transient {
        lyapunov_planar(sys, init, opts.transient, budget - opts.transient).ok()
    } else {
        None
    };
    Ok((observe_orbit(&orbit, opts, lyapunov)?, lyapunov))
}

pub fn classify_rhsc(
    q: &QuadraticCoreParams,
    init: (f64, f64),
    budget: usize,
) -> Result<ClassifyReport> {
    classify_rhsc_with(q, init, budget, &ClassifyOptions::default())
}

pub fn classify_rhsc_with(
    q: &QuadraticCoreParams,
    init: (f64, f64),
    budget: usize,
    opts: &ClassifyOptions,
) -> Result<ClassifyReport> {
    if !(q.b > 0.0 && q.b < 4.0) {
        return Err(Error::invalid(format!("b = {} must lie in (0, 4)", q.b)));
    }
    q.validate()?;
    if init.1 == 0.0 {
        return Err(Error::invalid("y0 must be nonzero"));
    }
    if budget < opts.transient + 3 * opts.max_period {
        return Err(Error::invalid(format!(
            "budget {budget} must cover the transient {} plus {} tail points",
            opts.transient,
            3 * opts.max_period
        )));
    }
    let mut notes = Vec::new();
    let r0 = q.alpha.value_at(0) * init.0 / init.1;
    let window_ok = q.in_window(r0);
    let structure = q.alpha.eventual_structure();
    let p = structure.period;

    let mut core_period = None;
    let mut core_lyapunov = None;
    let edge = q.b / q.a;
    let predicted = if !window_ok {
        let exceptional = [0.0, edge, -edge]
            .iter()
            .any(|e| (r0 - e).abs() <= 1e-12 * e.abs().max(1.0));
        if exceptional {
            notes.push(String::from(
                "initial ratio is 0 or +-b/a: excluded from the unboundedness statement",
            ));
            None
        } else {
            Some(Behavior::Unbounded)
        }
    } else if structure.limit_is_zero() {
        notes.push(String::from(
            "alpha_n -> 0: the limit set lies on the x-axis but is not itself an orbit of the system",
        ));
        Some(Behavior::XAxisLimit)
    } else if structure.limit_touches_zero() {
        notes.push(String::from(
            "alpha_n converges to a cycle through 0: no prediction",
        ));
        None
    } else {
        let tail_len = 4 * opts.max_period;
        let mut r = r0;
        for _ in 0..opts.transient {
            r = quadratic_core_step(q, r);
        }
        let tail: Vec<f64> = (0..tail_len)
            .map(|_| {
                r = quadratic_core_step(q, r);
                r
            })
            .collect();
        match detect_cycle(&tail, opts.cycle_tol, opts.max_period)? {
            Some(rep) => {
                core_period = Some(rep.period);
                match lcm_period(p, rep.period) {
                    1 => Some(Behavior::FixedPoint),
                    k => Some(Behavior::Cycle(k)),
                }
            }
            None => {
                let l = lyapunov_core(q, r0, opts.transient, opts.lyapunov_samples)?;
                core_lyapunov = Some(l);
                if l > opts.chaos_threshold {
                    if q.b > 3.83 {
                        notes.push(String::from("core has a 3-cycle for b > 3.83"));
                    }
                    Some(Behavior::Chaotic)
                } else {
                    notes.push(format!(
                        "core has no period <= {} and Lyapunov estimate {l:.4}",
                        opts.max_period
                    ));
                    None
                }
            }
        }
    };
    if window_ok && q.b > 3.83 && core_period.is_some() {
        notes.push(String::from(
            "periodic window inside (3.83, 4): reported as a cycle",
        ));
    }

    let sys = CatalogSystem::Rhsc(q.clone());
    let orbit = iterate_system(&sys, init, budget);
    // x_{n+1} = mu(x_n) for n >= 1, so the x data carry the core's derivative
    let observed_lyapunov = if orbit.status.is_completed() {
        let xs = &orbit.points[opts.transient.max(1)..];
        let sum: f64 = xs
            .iter()
            .map(|p| math::ln((2.0 * q.a * p.0 + q.b).abs()))
            .sum();
        Some(sum / xs.len() as f64)
    } else {
        None
    };
    let observed = observe_orbit(&orbit, opts, observed_lyapunov)?;
    if let Status::Singular { at, .. } = orbit.status {
        if observed == Behavior::XAxisLimit {
            notes.push(format!("y_n fell below the singular threshold at n = {at}"));
        }
    }
    if observed == Behavior::XAxisLimit
        && observed_lyapunov.is_some_and(|l| l > opts.chaos_threshold)
    {
        notes.push(String::from("x-component stays chaotic while y_n -> 0"));
    }
    let verdict = match predicted {
        None => Verdict::OutOfScope,
        Some(b) if b == observed => Verdict::Agree,
        Some(_) => Verdict::Disagree,
    };
    Ok(ClassifyReport {
        r0,
        window_ok,
        mu_max: q.mu_max(),
        mu_mu_max: q.mu_mu_max(),
        y_bound: q.y_bound_factor() * q.alpha.sup_abs(),
        alpha_period: p,
        core_period,
        core_lyapunov,
        predicted,
        observed,
        observed_lyapunov,
        verdict,
        notes,
    })
}
