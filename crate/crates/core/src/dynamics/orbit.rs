use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::folding::ScalarCore;
use crate::system::PlanarMap;
use crate::{OVERFLOW_THRESHOLD, SINGULAR_EPS};

/// How an orbit ended. `at` is the index of the first point that could not be
/// produced, so a truncated orbit always has exactly `at` points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Completed,
    Singular { at: usize, which: String },
    Overflow { at: usize },
}

impl Status {
    pub fn stopped_at(&self) -> Option<usize> {
        match self {
            Status::Completed => None,
            Status::Singular { at, .. } | Status::Overflow { at } => Some(*at),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Status::Completed => String::from("completed"),
            Status::Singular { at, which } => format!("singular at {at} ({which})"),
            Status::Overflow { at } => format!("overflow at {at}"),
        }
    }

    pub fn is_completed(&self) -> bool {
        matches!(self, Status::Completed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Direct,
    Reconstructed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<(f64, f64)>,
    pub status: Status,
    pub provenance: Provenance,
}

impl Orbit {
    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn ys(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    pub singular_eps: f64,
    pub overflow: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            singular_eps: SINGULAR_EPS,
            overflow: OVERFLOW_THRESHOLD,
        }
    }
}

impl Limits {
    fn overflows(&self, v: f64) -> bool {
        !(v.abs() <= self.overflow)
    }
}

pub fn iterate_system<S: PlanarMap + ?Sized>(sys: &S, init: (f64, f64), steps: usize) -> Orbit {
    iterate_system_with(sys, init, steps, Limits::default())
}

/// `points[0] = init`, `points[k+1] = step(k, points[k])` until `steps` steps are
/// done or a step is singular or leaves the overflow bound.
pub fn iterate_system_with<S: PlanarMap + ?Sized>(
    sys: &S,
    init: (f64, f64),
    steps: usize,
    limits: Limits,
) -> Orbit {
    let mut points = Vec::with_capacity(steps + 1);
    points.push(init);
    let mut status = Status::Completed;
    let (mut x, mut y) = init;
    for n in 0..steps {
        match sys.step_with(n, x, y, limits.singular_eps) {
            Ok((nx, ny)) => {
                if limits.overflows(nx) || limits.overflows(ny) {
                    status = Status::Overflow { at: n + 1 };
                    break;
                }
                x = nx;
                y = ny;
                points.push((x, y));
            }
            Err(Error::Singular { which }) => {
                status = Status::Singular { at: n + 1, which };
                break;
            }
            Err(e) => {
                status = Status::Singular {
                    at: n + 1,
                    which: format!("{e}"),
                };
                break;
            }
        }
    }
    Orbit {
        points,
        status,
        provenance: Provenance::Direct,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreOrbit {
    pub values: Vec<f64>,
    pub status: Status,
}

/// Iterates a scalar core for `steps` new terms.
///
/// Order 1: `r[k+1] = phi(k, r[k])` from `s0`. Order 2: `s[k+2] = phi(k, s[k], s[k+1])`
/// from `(s0, s1)`; `s1` must be given exactly when the core has order 2.
pub fn iterate_core(
    core: &ScalarCore,
    s0: f64,
    s1: Option<f64>,
    steps: usize,
) -> Result<CoreOrbit> {
    use crate::folding::CoreOrder;
    let limits = Limits::default();
    let mut values = Vec::with_capacity(steps + 2);
    values.push(s0);
    match (core.order, s1) {
        (CoreOrder::One, None) => {}
        (CoreOrder::Two, Some(s1)) => values.push(s1),
        (CoreOrder::One, Some(_)) => {
            return Err(Error::invalid("order-1 core takes a single initial value"))
        }
        (CoreOrder::Two, None) => {
            return Err(Error::invalid("order-2 core needs two initial values"))
        }
    }
    let start = values.len();
    let mut status = Status::Completed;
    for k in 0..steps {
        let next = match core.order {
            CoreOrder::One => core.step1(k, values[k]),
            CoreOrder::Two => core.eval(k, values[k], values[k + 1]),
        };
        let at = start + k;
        match next {
            Ok(v) if limits.overflows(v) => {
                status = Status::Overflow { at };
                break;
            }
            Ok(v) => values.push(v),
            Err(e) => {
                status = Status::Singular {
                    at,
                    which: match e {
                        Error::Singular { which } => which,
                        other => format!("{other}"),
                    },
                };
                break;
            }
        }
    }
    Ok(CoreOrbit { values, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::MapExpr;
    use alloc::vec;

    #[test]
    fn quadratic_core_steps() {
        let core = ScalarCore::order1(-1.0 * MapExpr::V.powi(2) + 3.5 * MapExpr::V).unwrap();
        let orbit = iterate_core(&core, 1.75, None, 2).unwrap();
        assert_eq!(orbit.values[1], 3.0625);
        // -3.0625^2 + 3.5 * 3.0625
        assert!((orbit.values[2] - 1.33984375).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_core() {
        let core = ScalarCore::order2(MapExpr::U + MapExpr::V);
        let orbit = iterate_core(&core, 1.0, Some(1.0), 4).unwrap();
        assert_eq!(orbit.values, vec![1.0, 1.0, 2.0, 3.0, 5.0, 8.0]);
        assert!(iterate_core(&core, 1.0, None, 4).is_err());
    }

    #[test]
    fn skip_core_splits_even_and_odd() {
        let phi = -1.0 * MapExpr::U.powi(2) + 3.2 * MapExpr::U;
        let core = ScalarCore::order2(phi.clone());
        let orbit = iterate_core(&core, 0.3, Some(0.7), 20).unwrap();
        let one_step = |r: f64| -r * r + 3.2 * r;
        for k in 2..orbit.values.len() {
            assert!((orbit.values[k] - one_step(orbit.values[k - 2])).abs() < 1e-12);
        }
    }

    #[test]
    fn core_overflow_is_reported() {
        let core = ScalarCore::order1(MapExpr::V.powi(2)).unwrap();
        let orbit = iterate_core(&core, 10.0, None, 10).unwrap();
        assert!(matches!(orbit.status, Status::Overflow { at: 4 }));
        assert_eq!(orbit.values.len(), 4);
    }
}
