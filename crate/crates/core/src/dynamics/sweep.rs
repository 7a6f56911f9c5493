//! Bifurcation sweeps of the quadratic core over `b`.

use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::dynamics::cycle::detect_cycle;
use crate::error::{Error, Result};
use crate::math;
use crate::OVERFLOW_THRESHOLD;

const SWEEP_CYCLE_TOL: f64 = 1e-6;
const SWEEP_MAX_PERIOD: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub b: f64,
    pub samples: Vec<f64>,
    pub lyapunov: f64,
    /// Shortest period found among the samples, when there are enough of them.
    pub period: Option<usize>,
    pub escaped: bool,
}

/// One column of the diagram: iterate `r' = a r^2 + b r` from the critical point
/// `-b/(2a)`, drop `transient` iterates and keep `samples` more.
pub fn sweep_row(a: f64, b: f64, transient: usize, samples: usize) -> Result<SweepRow> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::invalid("a must be a nonzero real"));
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be positive"));
    }
    let step = |r: f64| a * r * r + b * r;
    let mut r = -b / (2.0 * a);
    let mut escaped = false;
    for _ in 0..transient {
        r = step(r);
        if !(r.abs() <= OVERFLOW_THRESHOLD) {
            escaped = true;
            break;
        }
    }
    let mut out = Vec::with_capacity(samples);
    let mut sum = 0.0;
    if !escaped {
        for _ in 0..samples {
            r = step(r);
            if !(r.abs() <= OVERFLOW_THRESHOLD) {
                escaped = true;
                break;
            }
            out.push(r);
            // superstable orbits pass through the critical point
            sum += math::ln((2.0 * a * r + b).abs().max(f64::MIN_POSITIVE));
        }
    }
    let lyapunov = if escaped || out.is_empty() {
        f64::NAN
    } else {
        sum / out.len() as f64
    };
    let period = if !escaped && out.len() >= 3 * SWEEP_MAX_PERIOD {
        detect_cycle(&out, SWEEP_CYCLE_TOL, SWEEP_MAX_PERIOD)?.map(|c| c.period)
    } else {
        None
    };
    Ok(SweepRow {
        b,
        samples: out,
        lyapunov,
        period,
        escaped,
    })
}

/// The half-open grid `b_from, b_from + b_step, ...` strictly below `b_to`.
pub fn sweep_grid(b_from: f64, b_to: f64, b_step: f64) -> Result<Vec<f64>> {
    if !(b_from > 0.0 && b_from < b_to && b_to <= 4.0) {
        return Err(Error::invalid(format!(
            "need 0 < b_from < b_to <= 4, got {b_from}..{b_to}"
        )));
    }
    if !(b_step > 0.0) {
        return Err(Error::invalid("b_step must be positive"));
    }
    let count = math::ceil((b_to - b_from) / b_step - 1e-9) as usize;
    Ok((0..count).map(|i| b_from + i as f64 * b_step).collect())
}

pub fn bifurcation_sweep(
    a: f64,
    b_from: f64,
    b_to: f64,
    b_step: f64,
    transient: usize,
    samples: usize,
) -> Result<Vec<SweepRow>> {
    sweep_grid(b_from, b_to, b_step)?
        .into_iter()
        .map(|b| sweep_row(a, b, transient, samples))
        .collect()
}

/// First `b` at which the Lyapunov estimate turns positive after being non-positive.
pub fn lyapunov_sign_change(rows: &[SweepRow]) -> Option<f64> {
    rows.windows(2)
        .find(|w| w[0].lyapunov <= 0.0 && w[1].lyapunov > 0.0)
        .map(|w| w[1].b)
}

/// Maximal runs of consecutive rows whose detected period is `period`, as `(first b, last b)`.
pub fn period_windows(rows: &[SweepRow], period: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    let mut last = 0.0;
    for row in rows {
        if row.period == Some(period) {
            start.get_or_insert(row.b);
            last = row.b;
        } else if let Some(s) = start.take() {
            out.push((s, last));
        }
    }
    if let Some(s) = start {
        out.push((s, last));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_half_open() {
        let g = sweep_grid(2.8, 4.0, 0.002).unwrap();
        assert_eq!(g.len(), 600);
        assert!(*g.last().unwrap() < 4.0);
        assert!(sweep_grid(3.0, 2.0, 0.1).is_err());
        assert!(sweep_grid(3.0, 3.5, 0.0).is_err());
    }

    #[test]
    fn onset_of_doubling() {
        let row = sweep_row(-1.0, 3.0, 20_000, 256).unwrap();
        let mut distinct: Vec<f64> = Vec::new();
        for &r in &row.samples {
            if !distinct.iter().any(|d| (d - r).abs() < 1e-2) {
                distinct.push(r);
            }
        }
        assert!(distinct.len() <= 2);
    }

    #[test]
    fn period_three_window() {
        let row = sweep_row(-1.0, 3.84, 2000, 256).unwrap();
        assert_eq!(row.period, Some(3));
        assert!(row.lyapunov < 0.0);
    }

    #[test]
    fn chaotic_row() {
        let row = sweep_row(-1.0, 3.9, 1000, 2000).unwrap();
        assert_eq!(row.period, None);
        assert!(row.lyapunov > 0.3);
        assert!(!row.escaped);
    }
}
