use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// A point of a scalar or planar sequence, compared in the max norm.
pub trait CyclePoint: Copy {
    fn dist(&self, other: &Self) -> f64;
}

impl CyclePoint for f64 {
    fn dist(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
}

impl CyclePoint for (f64, f64) {
    fn dist(&self, other: &Self) -> f64 {
        (self.0 - other.0).abs().max((self.1 - other.1).abs())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport<T> {
    pub period: usize,
    /// The last `period` values of the tail.
    pub cycle_values: Vec<T>,
    /// `max |v[k+q] - v[k]|` over the checked windows.
    pub residual: f64,
    /// Index in the tail where the checked windows start.
    pub transient_used: usize,
}

/// Smallest `q <= max_period` such that `|v[k+q] - v[k]| < abs_tol` for every `k`
/// in the last two windows of length `q` before the final window.
///
/// Returns `None` when no period qualifies. The tail must hold at least
/// `3 * max_period` values.
pub fn detect_cycle<T: CyclePoint>(
    tail: &[T],
    abs_tol: f64,
    max_period: usize,
) -> Result<Option<CycleReport<T>>> {
    if max_period == 0 {
        return Err(Error::invalid("max_period must be at least 1"));
    }
    if tail.len() < 3 * max_period {
        return Err(Error::invalid(format!(
            "tail of length {} is shorter than 3 * max_period = {}",
            tail.len(),
            3 * max_period
        )));
    }
    let len = tail.len();
    for q in 1..=max_period {
        let start = len - 3 * q;
        let mut residual: f64 = 0.0;
        let mut ok = true;
        for k in start..len - q {
            let d = tail[k].dist(&tail[k + q]);
            // NaN never qualifies
            if !(d < abs_tol) {
                ok = false;
                break;
            }
            residual = residual.max(d);
        }
        if ok {
            return Ok(Some(CycleReport {
                period: q,
                cycle_values: tail[len - q..].to_vec(),
                residual,
                transient_used: start,
            }));
        }
    }
    Ok(None)
}

/// Period of an orbit built from a `q`-periodic core and a `p`-periodic passive map.
pub fn lcm_period(p: usize, q: usize) -> usize {
    assert!(p >= 1 && q >= 1, "periods are positive");
    math::lcm(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn quadratic_tail(b: f64, transient: usize, len: usize) -> Vec<f64> {
        let mut r = 0.3;
        for _ in 0..transient {
            r = -r * r + b * r;
        }
        (0..len)
            .map(|_| {
                r = -r * r + b * r;
                r
            })
            .collect()
    }

    #[test]
    fn finds_two_cycle() {
        let tail = quadratic_tail(3.2, 2000, 256);
        let rep = detect_cycle(&tail, 1e-6, 64).unwrap().unwrap();
        assert_eq!(rep.period, 2);
        let mut vals = rep.cycle_values.clone();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] - 1.641742).abs() < 1e-6 && (vals[1] - 2.558258).abs() < 1e-6);
    }

    #[test]
    fn constant_tail_is_fixed_point() {
        let tail = vec![0.7; 30];
        assert_eq!(detect_cycle(&tail, 1e-6, 10).unwrap().unwrap().period, 1);
    }

    #[test]
    fn chaotic_tail_has_no_short_period() {
        let tail = quadratic_tail(3.9, 1000, 512);
        assert!(detect_cycle(&tail, 1e-6, 64).unwrap().is_none());
    }

    #[test]
    fn short_tail_is_rejected() {
        assert!(detect_cycle(&[1.0; 5], 1e-6, 2).is_err());
    }

    #[test]
    fn planar_points() {
        let tail: Vec<(f64, f64)> = (0..40).map(|k| ((k % 4) as f64, 1.0)).collect();
        assert_eq!(detect_cycle(&tail, 1e-9, 8).unwrap().unwrap().period, 4);
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_period(2, 3), 6);
        assert_eq!(lcm_period(1, 7), 7);
        assert_eq!(lcm_period(4, 6), 12);
    }
}
