//! Concrete rational systems and their closed-form foldings.
//!
//! All systems except `Rh` share `x' = alpha_n x / y`, whose semi-inversion is
//! `y_n = alpha_n x_n / x_{n+1}`. Parameters are stored in the `(a, b, c, alpha)`
//! form of the core; the `(beta, gamma)` form of the autonomous systems is a derived view.
//!
//! | id     | second equation                                   | core                     |
//! |--------|---------------------------------------------------|--------------------------|
//! | `rh`   | `(alpha'_n x + beta'_n y) / (x + B_n y)`          | rational, order 1        |
//! | `rhsc` | `beta'_n y / (x + B_n y)`                         | `a s'^2 + b s'`, order 1 |
//! | `rnh`  | `alpha_n alpha_{n+1} / ((a x + b) y)`             | `a s^2 + b s`, skip      |
//! | `mhs`  | `beta y / (x + gamma y)`                          | as `rhsc`                |
//! | `coch` | `beta / ((x + gamma) y)`                          | as `rnh`                 |
//! | `lna`  | `alpha_n alpha_{n+1} x / (alpha_n b x + (a x + c) y)` | `a s + b s' + c`     |
//! | `lah`  | `beta x / (x + gamma y)`                          | `b s' + c`, order 1      |
//! | `lnh`  | `beta x / ((x + gamma) y)`                        | `a s + c`, skip          |

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::MapExpr;
use crate::folding::{
    affine_core_map, semi_invert_linear_fractional, Folding, ScalarCore, SemiInversion,
};
use crate::math::checked_div;
use crate::rational::{core_rh, step_rh_with, QuadraticCoreParams, RationalParams};
use crate::seq::CoeffSeq;
use crate::system::PlanarMap;

fn one() -> f64 {
    1.0
}

/// Parameters of the autonomous systems (`mhs`, `coch`, `lah`, `lnh`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutonomousParams {
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    #[serde(default)]
    pub c: f64,
    #[serde(default = "one")]
    pub alpha: f64,
}

/// Parameters of `lna`: core `s'' = a s + b s' + c`, free `alpha_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineCoreParams {
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    #[serde(default)]
    pub c: f64,
    #[serde(default = "default_alpha")]
    pub alpha: CoeffSeq,
}

fn default_alpha() -> CoeffSeq {
    CoeffSeq::Constant(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogId {
    Rh,
    Rhsc,
    Rnh,
    Mhs,
    Coch,
    Lna,
    Lah,
    Lnh,
}

impl CatalogId {
    pub const ALL: [CatalogId; 8] = [
        CatalogId::Rh,
        CatalogId::Rhsc,
        CatalogId::Rnh,
        CatalogId::Mhs,
        CatalogId::Coch,
        CatalogId::Lna,
        CatalogId::Lah,
        CatalogId::Lnh,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogId::Rh => "rh",
            CatalogId::Rhsc => "rhsc",
            CatalogId::Rnh => "rnh",
            CatalogId::Mhs => "mhs",
            CatalogId::Coch => "coch",
            CatalogId::Lna => "lna",
            CatalogId::Lah => "lah",
            CatalogId::Lnh => "lnh",
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown catalog system '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "lowercase")]
pub enum CatalogSystem {
    Rh(RationalParams),
    Rhsc(QuadraticCoreParams),
    Rnh(QuadraticCoreParams),
    Mhs(AutonomousParams),
    Coch(AutonomousParams),
    Lna(AffineCoreParams),
    Lah(AutonomousParams),
    Lnh(AutonomousParams),
}

/// The `(alpha, beta, gamma)` view of an autonomous system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Greek {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl CatalogSystem {
    pub fn id(&self) -> CatalogId {
        match self {
            CatalogSystem::Rh(_) => CatalogId::Rh,
            CatalogSystem::Rhsc(_) => CatalogId::Rhsc,
            CatalogSystem::Rnh(_) => CatalogId::Rnh,
            CatalogSystem::Mhs(_) => CatalogId::Mhs,
            CatalogSystem::Coch(_) => CatalogId::Coch,
            CatalogSystem::Lna(_) => CatalogId::Lna,
            CatalogSystem::Lah(_) => CatalogId::Lah,
            CatalogSystem::Lnh(_) => CatalogId::Lnh,
        }
    }

    /// Builds a system from the generic `(a, b, c, alpha)` parameter set.
    pub fn from_parts(id: CatalogId, a: f64, b: f64, c: f64, alpha: CoeffSeq) -> Result<Self> {
        let constant_alpha = || match alpha.eventual_structure() {
            s if alpha.is_autonomous() => Ok(s.limit_values[0]),
            _ => Err(Error::invalid(format!("{id} takes a constant alpha"))),
        };
        let sys = match id {
            CatalogId::Rh => {
                return Err(Error::invalid(
                    "rh takes its six coefficient sequences explicitly",
                ))
            }
            CatalogId::Rhsc => CatalogSystem::Rhsc(QuadraticCoreParams { a, b, alpha }),
            CatalogId::Rnh => CatalogSystem::Rnh(QuadraticCoreParams { a, b, alpha }),
            CatalogId::Lna => CatalogSystem::Lna(AffineCoreParams { a, b, c, alpha }),
            CatalogId::Mhs | CatalogId::Coch | CatalogId::Lah | CatalogId::Lnh => {
                let p = AutonomousParams {
                    a,
                    b,
                    c,
                    alpha: constant_alpha()?,
                };
                match id {
                    CatalogId::Mhs => CatalogSystem::Mhs(p),
                    CatalogId::Coch => CatalogSystem::Coch(p),
                    CatalogId::Lah => CatalogSystem::Lah(p),
                    _ => CatalogSystem::Lnh(p),
                }
            }
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        let nonzero = |v: f64, what: &str| {
            if v == 0.0 || !v.is_finite() {
                Err(Error::invalid(format!("{what} must be finite and nonzero")))
            } else {
                Ok(())
            }
        };
        match self {
            CatalogSystem::Rh(p) => p.validate(),
            CatalogSystem::Rhsc(q) | CatalogSystem::Rnh(q) => q.validate(),
            CatalogSystem::Mhs(p) | CatalogSystem::Coch(p) => {
                nonzero(p.a, "a")?;
                nonzero(p.alpha, "alpha")
            }
            CatalogSystem::Lah(p) => {
                nonzero(p.b, "b")?;
                nonzero(p.alpha, "alpha")
            }
            CatalogSystem::Lnh(p) => {
                nonzero(p.a, "a")?;
                nonzero(p.alpha, "alpha")
            }
            CatalogSystem::Lna(p) => {
                p.alpha.validate()?;
                if p.a == 0.0 && p.b == 0.0 {
                    return Err(Error::invalid("affine core needs |a| + |b| > 0"));
                }
                match p.alpha.first_zero_before(4096) {
                    Some(n) => Err(Error::invalid(format!(
                        "alpha_n must be nonzero (alpha_{n} = 0)"
                    ))),
                    None => Ok(()),
                }
            }
        }
    }

    /// `(beta, gamma)` view for the autonomous systems.
    pub fn greek(&self) -> Option<Greek> {
        let (alpha, beta, gamma) = match self {
            CatalogSystem::Mhs(p) => (p.alpha, 1.0 / p.a, p.b / (p.a * p.alpha)),
            CatalogSystem::Coch(p) => (p.alpha, p.alpha * p.alpha / p.a, p.b / p.a),
            CatalogSystem::Lah(p) => (p.alpha, p.alpha / p.b, p.c / (p.alpha * p.b)),
            CatalogSystem::Lnh(p) => (p.alpha, p.alpha * p.alpha / p.a, p.c / p.a),
            _ => return None,
        };
        Some(Greek { alpha, beta, gamma })
    }

    /// Inverse of [`CatalogSystem::greek`].
    pub fn from_greek(id: CatalogId, g: Greek) -> Result<Self> {
        if g.alpha == 0.0 || g.beta == 0.0 {
            return Err(Error::invalid("alpha and beta must be nonzero"));
        }
        let Greek { alpha, beta, gamma } = g;
        let sys = match id {
            CatalogId::Mhs => {
                let a = 1.0 / beta;
                CatalogSystem::Mhs(AutonomousParams {
                    a,
                    b: gamma * a * alpha,
                    c: 0.0,
                    alpha,
                })
            }
            CatalogId::Coch => {
                let a = alpha * alpha / beta;
                CatalogSystem::Coch(AutonomousParams {
                    a,
                    b: gamma * a,
                    c: 0.0,
                    alpha,
                })
            }
            CatalogId::Lah => {
                let b = alpha / beta;
                CatalogSystem::Lah(AutonomousParams {
                    a: 0.0,
                    b,
                    c: gamma * alpha * b,
                    alpha,
                })
            }
            CatalogId::Lnh => {
                let a = alpha * alpha / beta;
                CatalogSystem::Lnh(AutonomousParams {
                    a,
                    b: 0.0,
                    c: gamma * a,
                    alpha,
                })
            }
            other => return Err(Error::invalid(format!("{other} has no (beta, gamma) form"))),
        };
        sys.validate()?;
        Ok(sys)
    }

    /// Quadratic core parameters for the systems whose core is `a s^2 + b s`.
    pub fn quadratic_params(&self) -> Option<QuadraticCoreParams> {
        match self {
            CatalogSystem::Rhsc(q) | CatalogSystem::Rnh(q) => Some(q.clone()),
            CatalogSystem::Mhs(p) | CatalogSystem::Coch(p) => Some(QuadraticCoreParams {
                a: p.a,
                b: p.b,
                alpha: CoeffSeq::Constant(p.alpha),
            }),
            _ => None,
        }
    }

    /// Affine core coefficients `(a, b, c)` of `s'' = a s + b s' + c`.
    pub fn affine_core(&self) -> Option<(f64, f64, f64)> {
        match self {
            CatalogSystem::Lna(p) => Some((p.a, p.b, p.c)),
            CatalogSystem::Lah(p) => Some((0.0, p.b, p.c)),
            CatalogSystem::Lnh(p) => Some((p.a, 0.0, p.c)),
            _ => None,
        }
    }

    /// `alpha_n` of the shared first equation (not defined for `rh`).
    pub fn alpha_seq(&self) -> Option<CoeffSeq> {
        match self {
            CatalogSystem::Rh(_) => None,
            CatalogSystem::Rhsc(q) | CatalogSystem::Rnh(q) => Some(q.alpha.clone()),
            CatalogSystem::Lna(p) => Some(p.alpha.clone()),
            CatalogSystem::Mhs(p)
            | CatalogSystem::Coch(p)
            | CatalogSystem::Lah(p)
            | CatalogSystem::Lnh(p) => Some(CoeffSeq::Constant(p.alpha)),
        }
    }

    /// `(f, g)` as expression trees, for the generic folding route.
    pub fn maps(&self) -> (MapExpr, MapExpr) {
        let (u, v) = (MapExpr::U, MapExpr::V);
        if let CatalogSystem::Rh(p) = self {
            let e = |name: &str, s: &CoeffSeq| MapExpr::coeff_or_const(name, s);
            let f = (e("alpha", &p.alpha) * u.clone() + e("beta", &p.beta) * v.clone())
                / (e("A", &p.a_cap) * u.clone() + v.clone());
            let g = (e("alpha'", &p.alpha_p) * u.clone() + e("beta'", &p.beta_p) * v.clone())
                / (u + e("B", &p.b_cap) * v);
            return (f, g);
        }
        let alpha = self.alpha_seq().expect("non-rh systems carry alpha");
        let f = MapExpr::ratio(&alpha);
        let al = MapExpr::coeff_or_const("alpha", &alpha);
        let al1 = al.shifted(1);
        let g = match self {
            CatalogSystem::Rhsc(q) => {
                let beta_p = al1 / (q.a * al.clone());
                let b_cap = q.b / (q.a * al);
                beta_p * v.clone() / (u + b_cap * v)
            }
            CatalogSystem::Rnh(q) => al * al1 / ((q.a * u + q.b) * v),
            CatalogSystem::Lna(p) => {
                al.clone() * al1 * u.clone() / (al * p.b * u.clone() + (p.a * u + p.c) * v)
            }
            CatalogSystem::Mhs(_)
            | CatalogSystem::Coch(_)
            | CatalogSystem::Lah(_)
            | CatalogSystem::Lnh(_) => {
                let Greek { beta, gamma, .. } = self.greek().expect("autonomous");
                match self {
                    CatalogSystem::Mhs(_) => beta * v.clone() / (u + gamma * v),
                    CatalogSystem::Coch(_) => beta / ((u + gamma) * v),
                    CatalogSystem::Lah(_) => beta * u.clone() / (u + gamma * v),
                    _ => beta * u.clone() / ((u + gamma) * v),
                }
            }
            CatalogSystem::Rh(_) => unreachable!(),
        };
        (f, g)
    }

    /// The closed-form folding.
    pub fn folding(&self) -> Folding {
        let (f, _) = self.maps();
        if let CatalogSystem::Rh(p) = self {
            return Folding {
                f,
                core: rh_core(p),
                passive: rh_passive(p),
            };
        }
        let alpha = self.alpha_seq().expect("non-rh systems carry alpha");
        let passive = SemiInversion::of_ratio(&alpha);
        let core = match self {
            CatalogSystem::Rhsc(q) => {
                ScalarCore::order1(q.a * MapExpr::V.powi(2) + q.b * MapExpr::V).expect("order 1")
            }
            CatalogSystem::Mhs(p) => {
                ScalarCore::order1(p.a * MapExpr::V.powi(2) + p.b * MapExpr::V).expect("order 1")
            }
            CatalogSystem::Rnh(q) => {
                ScalarCore::order2(q.a * MapExpr::U.powi(2) + q.b * MapExpr::U)
            }
            CatalogSystem::Coch(p) => {
                ScalarCore::order2(p.a * MapExpr::U.powi(2) + p.b * MapExpr::U)
            }
            CatalogSystem::Lna(p) => {
                ScalarCore::order2(p.a * MapExpr::U + p.b * MapExpr::V + MapExpr::Const(p.c))
            }
            CatalogSystem::Lah(p) => {
                ScalarCore::order1(affine_core_map(0.0, p.b, p.c)).expect("order 1")
            }
            CatalogSystem::Lnh(p) => ScalarCore::order2(affine_core_map(p.a, 0.0, p.c)),
            CatalogSystem::Rh(_) => unreachable!(),
        };
        Folding { f, core, passive }
    }

    /// Human-readable core equation.
    pub fn core_text(&self) -> String {
        match self {
            CatalogSystem::Rh(p) => {
                format!("s' = {} (order 1)", rh_core(p).map.named("s", "s"))
            }
            CatalogSystem::Rhsc(QuadraticCoreParams { a, b, .. })
            | CatalogSystem::Mhs(AutonomousParams { a, b, .. }) => {
                format!("s' = {a}*s^2 + {b}*s (order 1)")
            }
            CatalogSystem::Rnh(QuadraticCoreParams { a, b, .. })
            | CatalogSystem::Coch(AutonomousParams { a, b, .. }) => {
                format!("s'' = {a}*s^2 + {b}*s (order 2; even and odd terms each follow r' = {a}*r^2 + {b}*r)")
            }
            CatalogSystem::Lna(p) => format!("s'' = {}*s + {}*s' + {} (order 2)", p.a, p.b, p.c),
            CatalogSystem::Lah(p) => format!("s' = {}*s + {} (order 1)", p.b, p.c),
            CatalogSystem::Lnh(p) => format!(
                "s'' = {}*s + {} (order 2; even and odd terms each follow r' = {}*r + {})",
                p.a, p.c, p.a, p.c
            ),
        }
    }

    /// Human-readable passive equation.
    pub fn passive_text(&self) -> String {
        match self {
            CatalogSystem::Rh(_) => {
                String::from("y_n = x_n*(alpha_n - A_n*x_{n+1})/(x_{n+1} - beta_n)")
            }
            _ => String::from("y_n = alpha_n*x_n/x_{n+1}"),
        }
    }

    pub fn step_with(&self, n: usize, x: f64, y: f64, eps: f64) -> Result<(f64, f64)> {
        if let CatalogSystem::Rh(p) = self {
            return step_rh_with(p, n, x, y, eps);
        }
        let (alpha_n, alpha_n1) = match self {
            CatalogSystem::Rhsc(q) | CatalogSystem::Rnh(q) => {
                (q.alpha.value_at(n), q.alpha.value_at(n + 1))
            }
            CatalogSystem::Lna(p) => (p.alpha.value_at(n), p.alpha.value_at(n + 1)),
            CatalogSystem::Mhs(p)
            | CatalogSystem::Coch(p)
            | CatalogSystem::Lah(p)
            | CatalogSystem::Lnh(p) => (p.alpha, p.alpha),
            CatalogSystem::Rh(_) => unreachable!(),
        };
        let x1 = checked_div(alpha_n * x, y, eps, "y")?;
        let y1 = match self {
            CatalogSystem::Rhsc(q) => {
                checked_div(q.beta_p(n) * y, x + q.b_cap(n) * y, eps, "x + B_n y")?
            }
            CatalogSystem::Rnh(q) => {
                checked_div(alpha_n * alpha_n1, (q.a * x + q.b) * y, eps, "(a x + b) y")?
            }
            CatalogSystem::Lna(p) => checked_div(
                alpha_n * alpha_n1 * x,
                alpha_n * p.b * x + (p.a * x + p.c) * y,
                eps,
                "alpha_n b x + (a x + c) y",
            )?,
            _ => {
                let Greek { beta, gamma, .. } = self.greek().expect("autonomous");
                match self {
                    CatalogSystem::Mhs(_) => {
                        checked_div(beta * y, x + gamma * y, eps, "x + gamma y")?
                    }
                    CatalogSystem::Coch(_) => {
                        checked_div(beta, (x + gamma) * y, eps, "(x + gamma) y")?
                    }
                    CatalogSystem::Lah(_) => {
                        checked_div(beta * x, x + gamma * y, eps, "x + gamma y")?
                    }
                    _ => checked_div(beta * x, (x + gamma) * y, eps, "(x + gamma) y")?,
                }
            }
        };
        Ok((x1, y1))
    }

    /// Core value along the closed-form folding (`rh` uses the rational core directly).
    pub fn core_value(&self, n: usize, s: f64, s_next: f64) -> Result<f64> {
        match self {
            CatalogSystem::Rh(p) => core_rh(p, n, s_next),
            _ => self.folding().core.eval(n, s, s_next),
        }
    }
}

impl PlanarMap for CatalogSystem {
    fn step_with(&self, n: usize, x: f64, y: f64, eps: f64) -> Result<(f64, f64)> {
        CatalogSystem::step_with(self, n, x, y, eps)
    }
}

fn rh_passive(p: &RationalParams) -> SemiInversion {
    let e = |name: &str, s: &CoeffSeq| MapExpr::coeff_or_const(name, s);
    // f = (beta v + alpha u) / (1 v + A u)
    semi_invert_linear_fractional(
        &e("beta", &p.beta),
        &(e("alpha", &p.alpha) * MapExpr::U),
        &MapExpr::Const(1.0),
        &(e("A", &p.a_cap) * MapExpr::U),
    )
    .expect("coefficients do not depend on v")
}

fn rh_core(p: &RationalParams) -> ScalarCore {
    let e = |name: &str, s: &CoeffSeq| MapExpr::coeff_or_const(name, s);
    let (al, be, ac, alp, bep, bc) = (
        e("alpha", &p.alpha),
        e("beta", &p.beta),
        e("A", &p.a_cap),
        e("alpha'", &p.alpha_p),
        e("beta'", &p.beta_p),
        e("B", &p.b_cap),
    );
    let s = MapExpr::V;
    let lead = ac.clone() * bc.clone() - 1.0;
    let mix = be.clone() - al.clone() * bc;
    let cross = ac.clone() * bep.clone() - alp.clone();
    let det = alp * be.clone() - al.clone() * bep;
    let num = al.shifted(1) * lead.clone() * s.clone().powi(2)
        + (al.shifted(1) * mix.clone() + be.shifted(1) * cross.clone()) * s.clone()
        + be.shifted(1) * det.clone();
    let den = ac.shifted(1) * lead * s.clone().powi(2) + (ac.shifted(1) * mix + cross) * s + det;
    ScalarCore::order1(num / den).expect("order 1")
}
