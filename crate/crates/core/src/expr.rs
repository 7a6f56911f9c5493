//! Closed expression grammar for scalar maps of `(n, u, v)`.
//!
//! The index `n` only enters through coefficient leaves, so shifting a map in
//! time (`n -> n + k`) shifts every coefficient leaf. Substitution replaces the
//! `u`/`v` leaves, which is all the folding algebra needs to compose maps.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math;
use crate::seq::{joint_period, CoeffSeq};
use crate::SINGULAR_EPS;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapExpr {
    Const(f64),
    /// `seq(n + shift)`; `name` is only used for printing.
    Coeff {
        #[serde(default = "default_coeff_name")]
        name: String,
        seq: CoeffSeq,
        #[serde(default)]
        shift: usize,
    },
    U,
    V,
    Add(Box<MapExpr>, Box<MapExpr>),
    Sub(Box<MapExpr>, Box<MapExpr>),
    Mul(Box<MapExpr>, Box<MapExpr>),
    /// Evaluation fails with `Singular` when the denominator is (numerically) zero.
    Div(Box<MapExpr>, Box<MapExpr>),
    Neg(Box<MapExpr>),
    Powi(Box<MapExpr>, i32),
}

fn default_coeff_name() -> String {
    "c".to_string()
}

impl MapExpr {
    pub fn konst(c: f64) -> Self {
        MapExpr::Const(c)
    }

    pub fn coeff(name: &str, seq: CoeffSeq) -> Self {
        MapExpr::Coeff {
            name: name.to_string(),
            seq,
            shift: 0,
        }
    }

    /// A coefficient leaf; constant sequences collapse to literals.
    pub fn coeff_or_const(name: &str, seq: &CoeffSeq) -> Self {
        match seq {
            CoeffSeq::Constant(c) => MapExpr::Const(*c),
            _ => MapExpr::coeff(name, seq.clone()),
        }
    }

    pub fn u() -> Self {
        MapExpr::U
    }

    pub fn v() -> Self {
        MapExpr::V
    }

    pub fn powi(self, k: i32) -> Self {
        MapExpr::Powi(Box::new(self), k)
    }

    /// `alpha_n * u / v`.
    pub fn ratio(alpha: &CoeffSeq) -> Self {
        MapExpr::coeff_or_const("alpha", alpha) * MapExpr::U / MapExpr::V
    }

    /// `a_n * u + b_n * v + c_n`.
    pub fn affine(a: &CoeffSeq, b: &CoeffSeq, c: &CoeffSeq) -> Self {
        MapExpr::coeff_or_const("a", a) * MapExpr::U
            + MapExpr::coeff_or_const("b", b) * MapExpr::V
            + MapExpr::coeff_or_const("c", c)
    }

    /// `(p_n * u + q_n * v) / (r_n * u + s_n * v)`.
    pub fn linear_fractional(p: &CoeffSeq, q: &CoeffSeq, r: &CoeffSeq, s: &CoeffSeq) -> Self {
        (MapExpr::coeff_or_const("p", p) * MapExpr::U
            + MapExpr::coeff_or_const("q", q) * MapExpr::V)
            / (MapExpr::coeff_or_const("r", r) * MapExpr::U
                + MapExpr::coeff_or_const("s", s) * MapExpr::V)
    }

    pub fn eval(&self, n: usize, u: f64, v: f64) -> Result<f64> {
        self.eval_with(n, u, v, SINGULAR_EPS)
    }

    /// Evaluates with an explicit singularity threshold.
    pub fn eval_with(&self, n: usize, u: f64, v: f64, eps: f64) -> Result<f64> {
        Ok(match self {
            MapExpr::Const(c) => *c,
            MapExpr::Coeff { seq, shift, .. } => seq.value_at(n + shift),
            MapExpr::U => u,
            MapExpr::V => v,
            MapExpr::Add(a, b) => a.eval_with(n, u, v, eps)? + b.eval_with(n, u, v, eps)?,
            MapExpr::Sub(a, b) => a.eval_with(n, u, v, eps)? - b.eval_with(n, u, v, eps)?,
            MapExpr::Mul(a, b) => a.eval_with(n, u, v, eps)? * b.eval_with(n, u, v, eps)?,
            MapExpr::Div(a, b) => {
                let num = a.eval_with(n, u, v, eps)?;
                let den = b.eval_with(n, u, v, eps)?;
                if math::is_singular(num, den, eps) {
                    return Err(Error::singular(format!("denominator {b}")));
                }
                num / den
            }
            MapExpr::Neg(a) => -a.eval_with(n, u, v, eps)?,
            MapExpr::Powi(a, k) => math::powi(a.eval_with(n, u, v, eps)?, *k),
        })
    }

    /// Replaces every `u` leaf by `u_sub` and every `v` leaf by `v_sub`.
    pub fn subst(&self, u_sub: &MapExpr, v_sub: &MapExpr) -> MapExpr {
        match self {
            MapExpr::U => u_sub.clone(),
            MapExpr::V => v_sub.clone(),
            MapExpr::Const(_) | MapExpr::Coeff { .. } => self.clone(),
            MapExpr::Add(a, b) => a.subst(u_sub, v_sub) + b.subst(u_sub, v_sub),
            MapExpr::Sub(a, b) => a.subst(u_sub, v_sub) - b.subst(u_sub, v_sub),
            MapExpr::Mul(a, b) => a.subst(u_sub, v_sub) * b.subst(u_sub, v_sub),
            MapExpr::Div(a, b) => a.subst(u_sub, v_sub) / b.subst(u_sub, v_sub),
            MapExpr::Neg(a) => -a.subst(u_sub, v_sub),
            MapExpr::Powi(a, k) => a.subst(u_sub, v_sub).powi(*k),
        }
    }

    /// The same map evaluated `k` steps later: `(n, u, v) -> self(n + k, u, v)`.
    pub fn shifted(&self, k: usize) -> MapExpr {
        self.map_leaves(&|leaf| match leaf {
            MapExpr::Coeff { name, seq, shift } => MapExpr::Coeff {
                name: name.clone(),
                seq: seq.clone(),
                shift: shift + k,
            },
            other => other.clone(),
        })
    }

    fn map_leaves(&self, f: &dyn Fn(&MapExpr) -> MapExpr) -> MapExpr {
        match self {
            MapExpr::Add(a, b) => a.map_leaves(f) + b.map_leaves(f),
            MapExpr::Sub(a, b) => a.map_leaves(f) - b.map_leaves(f),
            MapExpr::Mul(a, b) => a.map_leaves(f) * b.map_leaves(f),
            MapExpr::Div(a, b) => a.map_leaves(f) / b.map_leaves(f),
            MapExpr::Neg(a) => -a.map_leaves(f),
            MapExpr::Powi(a, k) => a.map_leaves(f).powi(*k),
            leaf => f(leaf),
        }
    }

    fn any_leaf(&self, pred: &dyn Fn(&MapExpr) -> bool) -> bool {
        match self {
            MapExpr::Add(a, b) | MapExpr::Sub(a, b) | MapExpr::Mul(a, b) | MapExpr::Div(a, b) => {
                a.any_leaf(pred) || b.any_leaf(pred)
            }
            MapExpr::Neg(a) | MapExpr::Powi(a, _) => a.any_leaf(pred),
            leaf => pred(leaf),
        }
    }

    pub fn uses_u(&self) -> bool {
        self.any_leaf(&|l| matches!(l, MapExpr::U))
    }

    pub fn uses_v(&self) -> bool {
        self.any_leaf(&|l| matches!(l, MapExpr::V))
    }

    pub fn coefficients(&self) -> Vec<&CoeffSeq> {
        let mut out = Vec::new();
        self.collect_coeffs(&mut out);
        out
    }

    fn collect_coeffs<'a>(&'a self, out: &mut Vec<&'a CoeffSeq>) {
        match self {
            MapExpr::Coeff { seq, .. } => out.push(seq),
            MapExpr::Add(a, b) | MapExpr::Sub(a, b) | MapExpr::Mul(a, b) | MapExpr::Div(a, b) => {
                a.collect_coeffs(out);
                b.collect_coeffs(out);
            }
            MapExpr::Neg(a) | MapExpr::Powi(a, _) => a.collect_coeffs(out),
            _ => {}
        }
    }

    /// Least period in `n` implied by the eventual structure of the coefficients.
    pub fn period(&self) -> usize {
        joint_period(self.coefficients())
    }

    /// Validates every coefficient sequence in the tree.
    pub fn validate(&self) -> Result<()> {
        self.coefficients()
            .into_iter()
            .try_for_each(|s| s.validate())
    }

    fn precedence(&self) -> u8 {
        match self {
            MapExpr::Add(..) | MapExpr::Sub(..) => 1,
            MapExpr::Mul(..) | MapExpr::Div(..) => 2,
            MapExpr::Neg(..) => 3,
            MapExpr::Powi(..) => 4,
            MapExpr::Const(c) if *c < 0.0 => 3,
            _ => 5,
        }
    }
}

/// Displays a map with custom names for the two argument slots.
pub struct Named<'a> {
    expr: &'a MapExpr,
    u: &'a str,
    v: &'a str,
}

impl MapExpr {
    pub fn named<'a>(&'a self, u: &'a str, v: &'a str) -> Named<'a> {
        Named { expr: self, u, v }
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.named("u", "v").fmt(f)
    }
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = (self.u, self.v);
        let wrap = |f: &mut fmt::Formatter<'_>, e: &MapExpr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({})", e.named(u, v))
            } else {
                write!(f, "{}", e.named(u, v))
            }
        };
        match self.expr {
            MapExpr::Const(c) => write!(f, "{c}"),
            MapExpr::Coeff { name, shift, .. } => match shift {
                0 => write!(f, "{name}_n"),
                k => write!(f, "{name}_{{n+{k}}}"),
            },
            MapExpr::U => f.write_str(u),
            MapExpr::V => f.write_str(v),
            MapExpr::Add(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" + ")?;
                wrap(f, b, 2)
            }
            MapExpr::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" - ")?;
                wrap(f, b, 2)
            }
            MapExpr::Mul(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("*")?;
                wrap(f, b, 3)
            }
            MapExpr::Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("/")?;
                wrap(f, b, 3)
            }
            MapExpr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 4)
            }
            MapExpr::Powi(a, k) => {
                wrap(f, a, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl $trait for MapExpr {
            type Output = MapExpr;
            fn $method(self, rhs: MapExpr) -> MapExpr {
                MapExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
        impl $trait<f64> for MapExpr {
            type Output = MapExpr;
            fn $method(self, rhs: f64) -> MapExpr {
                MapExpr::$variant(Box::new(self), Box::new(MapExpr::Const(rhs)))
            }
        }
        impl $trait<MapExpr> for f64 {
            type Output = MapExpr;
            fn $method(self, rhs: MapExpr) -> MapExpr {
                MapExpr::$variant(Box::new(MapExpr::Const(self)), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for MapExpr {
    type Output = MapExpr;
    fn neg(self) -> MapExpr {
        MapExpr::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use std::string::ToString;

    fn alt() -> CoeffSeq {
        CoeffSeq::periodic(vec![1.0, -1.0]).unwrap()
    }

    #[test]
    fn evaluates_ratio_with_periodic_coefficient() {
        let f = MapExpr::ratio(&alt());
        assert_eq!(f.eval(0, 3.0, 2.0).unwrap(), 1.5);
        assert_eq!(f.eval(1, 3.0, 2.0).unwrap(), -1.5);
        assert_eq!(f.shifted(1).eval(0, 3.0, 2.0).unwrap(), -1.5);
        assert_eq!(f.period(), 2);
    }

    #[test]
    fn division_by_zero_is_singular() {
        let f = MapExpr::ratio(&CoeffSeq::constant(1.0));
        assert!(matches!(f.eval(0, 1.0, 0.0), Err(Error::Singular { .. })));
        assert!(matches!(f.eval(0, 1.0, 1e-13), Err(Error::Singular { .. })));
        assert!(f.eval(0, 1.0, 1e-11).is_ok());
    }

    #[test]
    fn substitution_composes() {
        // f(u, v) = u + 2v ; f(v, u*u) = v + 2u^2
        let f = MapExpr::U + 2.0 * MapExpr::V;
        let g = f.subst(&MapExpr::V, &(MapExpr::U * MapExpr::U));
        assert_eq!(g.eval(0, 3.0, 1.0).unwrap(), 1.0 + 18.0);
        assert!(g.uses_u() && g.uses_v());
    }

    #[test]
    fn display_is_readable() {
        let e = MapExpr::ratio(&alt());
        assert_eq!(e.to_string(), "alpha_n*u/v");
        let q = -1.0 * MapExpr::V.powi(2) + 3.5 * MapExpr::V;
        assert_eq!(q.to_string(), "-1*v^2 + 3.5*v");
        let d = MapExpr::U / (MapExpr::U + MapExpr::V);
        assert_eq!(d.to_string(), "u/(u + v)");
        assert_eq!(
            MapExpr::ratio(&alt()).shifted(1).to_string(),
            "alpha_{n+1}*u/v"
        );
    }
}
