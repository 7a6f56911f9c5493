//! Finite-horizon chaos indicators.

use alloc::format;

use crate::error::{Error, Result};
use crate::folding::{CoreOrder, ScalarCore};
use crate::math;
use crate::rational::{quadratic_core_step, QuadraticCoreParams};
use crate::system::PlanarMap;
use crate::OVERFLOW_THRESHOLD;

/// Lyapunov exponent of `r' = a r^2 + b r` using the analytic derivative `2 a r + b`:
/// the mean of `ln |2 a r_n + b|` over `samples` iterates after `transient` steps.
pub fn lyapunov_core(
    q: &QuadraticCoreParams,
    r0: f64,
    transient: usize,
    samples: usize,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::invalid("samples must be positive"));
    }
    if !q.in_window(r0) {
        return Err(Error::invalid(format!(
            "r0 = {r0} lies outside the invariant window"
        )));
    }
    let mut r = r0;
    for _ in 0..transient {
        r = quadratic_core_step(q, r);
    }
    let mut sum = 0.0;
    for k in 0..samples {
        let d = 2.0 * q.a * r + q.b;
        if d == 0.0 {
            return Err(Error::DegenerateOrbit { at: transient + k });
        }
        sum += math::ln(d.abs());
        r = quadratic_core_step(q, r);
    }
    Ok(sum / samples as f64)
}

/// Lyapunov exponent of an order-1 core with a central finite-difference derivative.
pub fn lyapunov_fd(
    core: &ScalarCore,
    r0: f64,
    transient: usize,
    samples: usize,
    h: f64,
) -> Result<f64> {
    if core.order != CoreOrder::One {
        return Err(Error::invalid(
            "finite-difference Lyapunov estimate needs an order-1 core",
        ));
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be positive"));
    }
    let mut r = r0;
    for k in 0..transient {
        r = bounded(core.step1(k, r)?, k + 1)?;
    }
    let mut sum = 0.0;
    for j in 0..samples {
        let k = transient + j;
        let d = (core.step1(k, r + h)? - core.step1(k, r - h)?) / (2.0 * h);
        if d == 0.0 {
            return Err(Error::DegenerateOrbit { at: k });
        }
        sum += math::ln(d.abs());
        r = bounded(core.step1(k, r)?, k + 1)?;
    }
    Ok(sum / samples as f64)
}

fn bounded(v: f64, at: usize) -> Result<f64> {
    if !(v.abs() <= OVERFLOW_THRESHOLD) {
        return Err(Error::Overflow { at });
    }
    Ok(v)
}

/// Largest Lyapunov exponent of a planar map by renormalized twin orbits.
pub fn lyapunov_planar<S: PlanarMap + ?Sized>(
    sys: &S,
    init: (f64, f64),
    transient: usize,
    samples: usize,
) -> Result<f64> {
    const D0: f64 = 1e-8;
    if samples == 0 {
        return Err(Error::invalid("samples must be positive"));
    }
    let (mut x, mut y) = init;
    for n in 0..transient {
        (x, y) = sys.step(n, x, y)?;
        bounded(x.abs().max(y.abs()), n + 1)?;
    }
    let scale = |x: f64, y: f64| D0 * x.abs().max(y.abs()).max(1.0);
    let mut d = scale(x, y);
    let (mut px, mut py) = (x + d, y);
    let mut sum = 0.0;
    for j in 0..samples {
        let n = transient + j;
        let (nx, ny) = sys.step(n, x, y)?;
        let (qx, qy) = sys.step(n, px, py)?;
        bounded(nx.abs().max(ny.abs()), n + 1)?;
        let sep = math::sqrt((qx - nx) * (qx - nx) + (qy - ny) * (qy - ny));
        if sep == 0.0 {
            return Err(Error::DegenerateOrbit { at: n });
        }
        sum += math::ln(sep / d);
        d = scale(nx, ny);
        px = nx + (qx - nx) * d / sep;
        py = ny + (qy - ny) * d / sep;
        x = nx;
        y = ny;
    }
    Ok(sum / samples as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivePairStat {
    /// Largest separation seen over the horizon.
    pub max_sep: f64,
    /// Smallest separation after the pair first separated by more than 0.1.
    pub min_sep_after_spread: Option<f64>,
    /// Step at which the separation first exceeded 0.1.
    pub spread_at: Option<usize>,
}

/// Tracks `|r_n - r'_n|` for two orbits of an order-1 core started `delta` apart.
pub fn sensitive_pair_stat(
    core: &ScalarCore,
    r0: f64,
    delta: f64,
    horizon: usize,
) -> Result<SensitivePairStat> {
    const SPREAD: f64 = 0.1;
    if core.order != CoreOrder::One {
        return Err(Error::invalid(
            "sensitive-pair statistics need an order-1 core",
        ));
    }
    if !(delta > 0.0 && delta <= 1e-8) {
        return Err(Error::invalid("delta must lie in (0, 1e-8]"));
    }
    let (mut r, mut s) = (r0, r0 + delta);
    let mut max_sep = (s - r).abs();
    let mut spread_at = None;
    let mut min_after: Option<f64> = None;
    for k in 0..horizon {
        r = bounded(core.step1(k, r)?, k + 1)?;
        s = bounded(core.step1(k, s)?, k + 1)?;
        let sep = (s - r).abs();
        max_sep = max_sep.max(sep);
        if spread_at.is_some() {
            min_after = Some(min_after.map_or(sep, |m| m.min(sep)));
        } else if sep > SPREAD {
            spread_at = Some(k + 1);
        }
    }
    Ok(SensitivePairStat {
        max_sep,
        min_sep_after_spread: min_after,
        spread_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::MapExpr;
    use crate::seq::CoeffSeq;

    fn q(b: f64) -> QuadraticCoreParams {
        QuadraticCoreParams::new(-1.0, b, CoeffSeq::constant(1.0)).unwrap()
    }

    fn core(b: f64) -> ScalarCore {
        ScalarCore::order1(-1.0 * MapExpr::V.powi(2) + b * MapExpr::V).unwrap()
    }

    #[test]
    fn two_cycle_regime_is_negative() {
        assert!(lyapunov_core(&q(3.2), 0.3, 1000, 10_000).unwrap() < 0.0);
    }

    #[test]
    fn fixed_point_regime_matches_derivative() {
        let l = lyapunov_core(&q(2.5), 0.3, 1000, 10_000).unwrap();
        assert!((l - 0.5f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn chaotic_regime_is_positive() {
        let l = lyapunov_core(&q(3.9), 0.3, 1000, 100_000).unwrap();
        assert!((l - 0.49).abs() < 0.05, "{l}");
    }

    #[test]
    fn off_window_start_is_rejected() {
        assert!(lyapunov_core(&q(3.9), -0.5, 10, 10).is_err());
    }

    #[test]
    fn finite_difference_agrees_with_analytic() {
        for b in [2.5, 3.2, 3.5, 3.9] {
            let exact = lyapunov_core(&q(b), 1.0, 500, 5000).unwrap();
            let fd = lyapunov_fd(&core(b), 1.0, 500, 5000, 1e-6).unwrap();
            assert!((exact - fd).abs() < 1e-4, "b={b}: {exact} vs {fd}");
        }
    }

    #[test]
    fn sensitive_pairs() {
        let chaotic = sensitive_pair_stat(&core(3.9), 1.0, 1e-10, 1000).unwrap();
        assert!(chaotic.max_sep > 0.1);
        let calm = sensitive_pair_stat(&core(2.5), 1.0, 1e-10, 1000).unwrap();
        assert!(calm.max_sep <= 1e-10 * 2.0);
        assert!(calm.spread_at.is_none());
        assert!(sensitive_pair_stat(&core(3.9), 1.0, 1e-6, 10).is_err());
    }
}
