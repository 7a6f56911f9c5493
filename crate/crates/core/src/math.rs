//! Float helpers that `core` does not provide.

use crate::error::{Error, Result};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn powi(x: f64, k: i32) -> f64 {
    libm::pow(x, k as f64)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

/// `|den| < eps * max(1, |num|)`, except that a denominator which is small only
/// relative to a large numerator (`|den| >= eps`) is not singular: the quotient
/// then exceeds `1/eps` and is left to the overflow check.
#[inline]
pub fn is_singular(num: f64, den: f64, eps: f64) -> bool {
    let relative = !(den.abs() >= eps * num.abs().max(1.0));
    relative && !(den.abs() >= eps) || num.is_nan()
}

/// Divides `num` by `den`, failing when [`is_singular`].
#[inline]
pub fn checked_div(num: f64, den: f64, eps: f64, which: &str) -> Result<f64> {
    if is_singular(num, den, eps) {
        return Err(Error::singular(which));
    }
    Ok(num / den)
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}
