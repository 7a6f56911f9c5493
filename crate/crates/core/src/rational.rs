//! The homogeneous rational system
//!
//! ```text
//! x' = (alpha_n x + beta_n y) / (A_n x + y)
//! y' = (alpha'_n x + beta'_n y) / (x + B_n y)
//! ```
//!
//! its passive equation, its first-order core, and the quadratic special case
//! `A = alpha' = beta = 0`, `beta'_n = alpha_{n+1} / (a alpha_n)`, `B_n = b / (a alpha_n)`
//! whose core is `r' = a r^2 + b r`, conjugate to the logistic map.

use alloc::format;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{self, checked_div};
use crate::seq::CoeffSeq;
use crate::SINGULAR_EPS;

/// The six coefficients of the rational system at one index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhCoeffs {
    pub alpha: f64,
    pub beta: f64,
    pub a_cap: f64,
    pub alpha_p: f64,
    pub beta_p: f64,
    pub b_cap: f64,
}

/// Anything that supplies the rational-system coefficients at each index.
pub trait RhCoefficients {
    fn at(&self, n: usize) -> RhCoeffs;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalParams {
    pub alpha: CoeffSeq,
    pub beta: CoeffSeq,
    #[serde(rename = "A")]
    pub a_cap: CoeffSeq,
    pub alpha_p: CoeffSeq,
    pub beta_p: CoeffSeq,
    #[serde(rename = "B")]
    pub b_cap: CoeffSeq,
}

impl RationalParams {
    pub fn constant(
        alpha: f64,
        beta: f64,
        a_cap: f64,
        alpha_p: f64,
        beta_p: f64,
        b_cap: f64,
    ) -> Self {
        RationalParams {
            alpha: alpha.into(),
            beta: beta.into(),
            a_cap: a_cap.into(),
            alpha_p: alpha_p.into(),
            beta_p: beta_p.into(),
            b_cap: b_cap.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for s in [
            &self.alpha,
            &self.beta,
            &self.a_cap,
            &self.alpha_p,
            &self.beta_p,
            &self.b_cap,
        ] {
            s.validate()?;
        }
        Ok(())
    }
}

impl RhCoefficients for RationalParams {
    fn at(&self, n: usize) -> RhCoeffs {
        RhCoeffs {
            alpha: self.alpha.value_at(n),
            beta: self.beta.value_at(n),
            a_cap: self.a_cap.value_at(n),
            alpha_p: self.alpha_p.value_at(n),
            beta_p: self.beta_p.value_at(n),
            b_cap: self.b_cap.value_at(n),
        }
    }
}

fn default_alpha() -> CoeffSeq {
    CoeffSeq::Constant(1.0)
}

/// Parameters of the quadratic reduction: core `r' = a r^2 + b r`, free `alpha_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticCoreParams {
    pub a: f64,
    pub b: f64,
    #[serde(default = "default_alpha")]
    pub alpha: CoeffSeq,
}

impl QuadraticCoreParams {
    pub fn new(a: f64, b: f64, alpha: CoeffSeq) -> Result<Self> {
        let q = QuadraticCoreParams { a, b, alpha };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a == 0.0 || !self.a.is_finite() {
            return Err(Error::invalid("a must be nonzero"));
        }
        if !self.b.is_finite() {
            return Err(Error::invalid("b must be finite"));
        }
        self.alpha.validate()?;
        if let Some(n) = self.alpha.first_zero_before(4096) {
            return Err(Error::invalid(format!(
                "alpha_n must be nonzero (alpha_{n} = 0)"
            )));
        }
        Ok(())
    }

    /// `beta'_n = alpha_{n+1} / (a alpha_n)`.
    pub fn beta_p(&self, n: usize) -> f64 {
        self.alpha.value_at(n + 1) / (self.a * self.alpha.value_at(n))
    }

    /// `B_n = b / (a alpha_n)`.
    pub fn b_cap(&self, n: usize) -> f64 {
        self.b / (self.a * self.alpha.value_at(n))
    }

    /// `r0 = alpha_0 x0 / y0`, the core's initial value.
    pub fn initial_ratio(&self, x0: f64, y0: f64) -> Result<f64> {
        checked_div(self.alpha.value_at(0) * x0, y0, SINGULAR_EPS, "y0")
    }

    /// The invariant interval `(0, -b/a)` for `a < 0`, `(-b/a, 0)` for `a > 0`.
    pub fn window(&self) -> (f64, f64) {
        let edge = -self.b / self.a;
        if edge > 0.0 {
            (0.0, edge)
        } else {
            (edge, 0.0)
        }
    }

    pub fn in_window(&self, r: f64) -> bool {
        let (lo, hi) = self.window();
        r > lo && r < hi
    }

    /// Extreme value of the core map, `-b^2 / (4a)`, attained at `-b / (2a)`.
    pub fn mu_max(&self) -> f64 {
        -self.b * self.b / (4.0 * self.a)
    }

    /// `mu(mu_max) = -(b^3 / 4a)(1 - b/4)`.
    pub fn mu_mu_max(&self) -> f64 {
        quadratic_core_step(self, self.mu_max())
    }

    /// `16 / (b^2 (4 - b))`, the factor bounding `|y_n| / |alpha_n|` on the window.
    pub fn y_bound_factor(&self) -> f64 {
        16.0 / (self.b * self.b * (4.0 - self.b))
    }

    /// Mirror image under `r -> -r`, `a -> -a`.
    pub fn mirrored(&self) -> Self {
        QuadraticCoreParams {
            a: -self.a,
            b: self.b,
            alpha: self.alpha.clone(),
        }
    }
}

impl RhCoefficients for QuadraticCoreParams {
    fn at(&self, n: usize) -> RhCoeffs {
        RhCoeffs {
            alpha: self.alpha.value_at(n),
            beta: 0.0,
            a_cap: 0.0,
            alpha_p: 0.0,
            beta_p: self.beta_p(n),
            b_cap: self.b_cap(n),
        }
    }
}

pub fn step_rh<P: RhCoefficients + ?Sized>(p: &P, n: usize, x: f64, y: f64) -> Result<(f64, f64)> {
    step_rh_with(p, n, x, y, SINGULAR_EPS)
}

pub fn step_rh_with<P: RhCoefficients + ?Sized>(
    p: &P,
    n: usize,
    x: f64,
    y: f64,
    eps: f64,
) -> Result<(f64, f64)> {
    let c = p.at(n);
    let x1 = checked_div(c.alpha * x + c.beta * y, c.a_cap * x + y, eps, "A_n x + y")?;
    let y1 = checked_div(
        c.alpha_p * x + c.beta_p * y,
        x + c.b_cap * y,
        eps,
        "x + B_n y",
    )?;
    Ok((x1, y1))
}

/// `y_n = x_n (alpha_n - A_n x_{n+1}) / (x_{n+1} - beta_n)`.
pub fn passive_rh<P: RhCoefficients + ?Sized>(p: &P, n: usize, x: f64, x_next: f64) -> Result<f64> {
    let c = p.at(n);
    checked_div(
        x * (c.alpha - c.a_cap * x_next),
        x_next - c.beta,
        SINGULAR_EPS,
        "x_{n+1} - beta_n",
    )
}

/// The first-order core `x_{n+2} = F(n, x_{n+1})` of the rational system.
pub fn core_rh<P: RhCoefficients + ?Sized>(p: &P, n: usize, s: f64) -> Result<f64> {
    let c = p.at(n);
    let d = p.at(n + 1);
    let lead = c.a_cap * c.b_cap - 1.0;
    let mix = c.beta - c.alpha * c.b_cap;
    let cross = c.a_cap * c.beta_p - c.alpha_p;
    let det = c.alpha_p * c.beta - c.alpha * c.beta_p;
    let num = d.alpha * lead * s * s + (d.alpha * mix + d.beta * cross) * s + d.beta * det;
    let den = d.a_cap * lead * s * s + (d.a_cap * mix + cross) * s + det;
    checked_div(num, den, SINGULAR_EPS, "core denominator")
}

/// `mu(r) = a r^2 + b r`; `alpha` plays no role.
pub fn quadratic_core_step(q: &QuadraticCoreParams, r: f64) -> f64 {
    q.a * r * r + q.b * r
}

/// `t = -a r / b`, carrying the quadratic core onto `t' = b t (1 - t)`.
pub fn logistic_conjugate(q: &QuadraticCoreParams, r: f64) -> Result<f64> {
    if q.b == 0.0 {
        return Err(Error::invalid("logistic conjugacy needs b != 0"));
    }
    Ok(-q.a * r / q.b)
}

pub fn logistic_step(b: f64, t: f64) -> f64 {
    b * t * (1.0 - t)
}

/// The logistic 2-cycle `t = (b + 1 +- sqrt((b - 3)(b + 1))) / (2b)`, for `b > 3`.
pub fn logistic_two_cycle(b: f64) -> Option<(f64, f64)> {
    let disc = (b - 3.0) * (b + 1.0);
    if b <= 3.0 || disc <= 0.0 {
        return None;
    }
    let root = math::sqrt(disc);
    Some(((b + 1.0 - root) / (2.0 * b), (b + 1.0 + root) / (2.0 * b)))
}

/// Closed-form solution of `s[n+2] = a s[n] + b s[n+1] + c` at index `n`.
///
/// Uses the characteristic roots of `z^2 - b z - a`, with the usual polynomial
/// particular solutions when `1` is a (double) root.
pub fn affine_closed_form(a: f64, b: f64, c: f64, s0: f64, s1: f64, n: usize) -> f64 {
    if n == 0 {
        return s0;
    }
    if n == 1 {
        return s1;
    }
    // particular solution p(n)
    let (pc, pk, pq) = if 1.0 - a - b != 0.0 {
        (c / (1.0 - a - b), 0.0, 0.0)
    } else if b != 2.0 {
        (0.0, c / (2.0 - b), 0.0)
    } else {
        (0.0, 0.0, c / 2.0)
    };
    let particular = |k: f64| pc + pk * k + pq * k * k;
    // homogeneous part fitted to h0, h1
    let h0 = s0 - particular(0.0);
    let h1 = s1 - particular(1.0);
    let nf = n as f64;
    let disc = b * b + 4.0 * a;
    let homogeneous = if disc > 0.0 {
        let root = math::sqrt(disc);
        let (l1, l2) = ((b + root) / 2.0, (b - root) / 2.0);
        // h_k = A l1^k + B l2^k
        let big_b = (h1 - l1 * h0) / (l2 - l1);
        let big_a = h0 - big_b;
        big_a * math::powi(l1, n as i32) + big_b * math::powi(l2, n as i32)
    } else if disc == 0.0 {
        let l = b / 2.0;
        if l == 0.0 {
            0.0
        } else {
            // h_k = (A + B k) l^k
            let big_b = h1 / l - h0;
            (h0 + big_b * nf) * math::powi(l, n as i32)
        }
    } else {
        let re = b / 2.0;
        let im = math::sqrt(-disc) / 2.0;
        let modulus = math::sqrt(re * re + im * im);
        let theta = math::atan2(im, re);
        // h_k = rho^k (A cos k theta + B sin k theta)
        let big_a = h0;
        let big_b = (h1 / modulus - big_a * math::cos(theta)) / math::sin(theta);
        let kt = nf * theta;
        math::powi(modulus, n as i32) * (big_a * math::cos(kt) + big_b * math::sin(kt))
    };
    particular(nf) + homogeneous
}
