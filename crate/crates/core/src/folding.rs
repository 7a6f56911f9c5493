//! Semi-inversion, folding, reconstruction and unfolding.
//!
//! A system `x' = f(n,x,y)`, `y' = g(n,x,y)` whose `f` admits a semi-inversion
//! `h` (so that `h(n, u, f(n,u,v)) = v`) folds into
//!
//! ```text
//! s[n+2] = phi(n, s[n], s[n+1]),   phi(n,u,w) = f(n+1, w, g(n, u, h(n,u,w)))   (core)
//! y[n]   = h(n, x[n], x[n+1])                                                (passive)
//! ```
//!
//! with `s[0] = x0`, `s[1] = f(0, x0, y0)`. Maps are expression trees whose two
//! argument slots are `u` and `v`; for `h` and `phi` the second slot plays the
//! role of `w`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::dynamics::orbit::{iterate_system, Orbit, Provenance, Status};
use crate::error::{Error, Result};
use crate::expr::MapExpr;
use crate::seq::CoeffSeq;
use crate::system::PlanarMap;

/// Group used to split a separable map `f = f1 * f2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    /// `(R, +)`
    Additive,
    /// `(R \ {0}, *)`
    Multiplicative,
}

/// A family of bijections `v -> f2(n, v)` with a closed-form inverse.
///
/// Both maps are expressions in the `v` slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bijection {
    pub forward: MapExpr,
    pub inverse: MapExpr,
}

impl Bijection {
    /// `v -> scale_n * v + offset_n`.
    pub fn affine(scale: &CoeffSeq, offset: &CoeffSeq) -> Self {
        let s = MapExpr::coeff_or_const("b", scale);
        let o = MapExpr::coeff_or_const("c", offset);
        Bijection {
            forward: s.clone() * MapExpr::V + o.clone(),
            inverse: (MapExpr::V - o) / s,
        }
    }

    /// `v -> scale_n / v` (an involution up to the scale).
    pub fn reciprocal(scale: &CoeffSeq) -> Self {
        let s = MapExpr::coeff_or_const("k", scale);
        Bijection {
            forward: s.clone() / MapExpr::V,
            inverse: s / MapExpr::V,
        }
    }

    /// `v -> (p_n v + q_n) / (r_n v + s_n)`.
    pub fn linear_fractional(p: &CoeffSeq, q: &CoeffSeq, r: &CoeffSeq, s: &CoeffSeq) -> Self {
        let (p, q, r, s) = (
            MapExpr::coeff_or_const("p", p),
            MapExpr::coeff_or_const("q", q),
            MapExpr::coeff_or_const("r", r),
            MapExpr::coeff_or_const("s", s),
        );
        Bijection {
            forward: (p.clone() * MapExpr::V + q.clone()) / (r.clone() * MapExpr::V + s.clone()),
            inverse: (s * MapExpr::V - q) / (p - r * MapExpr::V),
        }
    }

    /// Spot-checks `inverse(forward(v)) = v` on a few indices and sample points.
    pub fn spot_check(&self, indices: usize) -> Result<()> {
        const SAMPLES: [f64; 6] = [-2.5, -0.75, 0.3, 1.0, 1.7, 4.2];
        for n in 0..indices.max(1) {
            for &v in &SAMPLES {
                let Ok(w) = self.forward.eval(n, 0.0, v) else {
                    continue;
                };
                let back = self.inverse.eval(n, 0.0, w)?;
                if (back - v).abs() > 1e-9 * v.abs().max(1.0) {
                    return Err(Error::invalid(format!(
                        "f2(n,.) is not inverted by the declared inverse at n={n}, v={v}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A semi-inversion `h` of some `f`: `h(n, u, f(n,u,v)) = v` on the domain of `f`.
///
/// The domain `M'` is implicit: every division node in `h` refuses denominators
/// below the singularity threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiInversion {
    pub h: MapExpr,
    /// Period of `h` in `n` (1 when autonomous).
    pub period: usize,
}

impl SemiInversion {
    pub fn new(h: MapExpr) -> Self {
        let period = h.period();
        SemiInversion { h, period }
    }

    pub fn eval(&self, n: usize, u: f64, w: f64) -> Result<f64> {
        self.h.eval(n, u, w)
    }

    /// Largest relative violation of `h(n, u, f(n,u,v)) = v` over the given points.
    ///
    /// Points where `f` or `h` is singular are skipped.
    pub fn identity_error(&self, f: &MapExpr, points: &[(usize, f64, f64)]) -> f64 {
        points
            .iter()
            .filter_map(|&(n, u, v)| {
                let w = f.eval(n, u, v).ok()?;
                let back = self.eval(n, u, w).ok()?;
                Some((back - v).abs() / v.abs().max(1.0))
            })
            .fold(0.0, f64::max)
    }

    /// Semi-inversion of `alpha_n * u / v`: `h(n,u,w) = alpha_n * u / w`.
    pub fn of_ratio(alpha: &CoeffSeq) -> Self {
        SemiInversion::new(MapExpr::ratio(alpha))
    }

    /// Semi-inversion of `a_n u + b_n v + c_n`: `h(n,u,w) = (w - a_n u - c_n) / b_n`.
    pub fn of_affine(a: &CoeffSeq, b: &CoeffSeq, c: &CoeffSeq) -> Self {
        let h = (MapExpr::V
            - MapExpr::coeff_or_const("a", a) * MapExpr::U
            - MapExpr::coeff_or_const("c", c))
            / MapExpr::coeff_or_const("b", b);
        SemiInversion::new(h)
    }
}

/// Builds `f = f1 (+|*) f2(v)` from a separable decomposition.
pub fn separable_map(f1: &MapExpr, f2: &Bijection, group: Group) -> MapExpr {
    match group {
        Group::Additive => f1.clone() + f2.forward.clone(),
        Group::Multiplicative => f1.clone() * f2.forward.clone(),
    }
}

/// Semi-inversion of a separable map: `h(n,u,w) = f2^{-1}(n, f1(n,u)^{-1} * w)`.
///
/// Additively `h = f2^{-1}(n, w - f1(n,u))`, multiplicatively `h = f2^{-1}(n, w / f1(n,u))`;
/// the latter is singular wherever `f1(n,u) = 0`.
pub fn semi_invert_separable(f1: &MapExpr, f2: &Bijection, group: Group) -> Result<SemiInversion> {
    if f1.uses_v() {
        return Err(Error::invalid("f1 must depend on u only"));
    }
    if f2.forward.uses_u() || f2.inverse.uses_u() {
        return Err(Error::invalid("f2 must depend on v only"));
    }
    let period = f1.period().max(f2.forward.period());
    f2.spot_check(period.max(4))?;
    let arg = match group {
        Group::Additive => MapExpr::V - f1.clone(),
        Group::Multiplicative => MapExpr::V / f1.clone(),
    };
    Ok(SemiInversion::new(f2.inverse.subst(&MapExpr::U, &arg)))
}

/// Semi-inversion of `f = (P v + Q) / (R v + S)` where `P, Q, R, S` depend on `(n, u)`:
/// `h(n,u,w) = (S w - Q) / (P - R w)`.
pub fn semi_invert_linear_fractional(
    p: &MapExpr,
    q: &MapExpr,
    r: &MapExpr,
    s: &MapExpr,
) -> Result<SemiInversion> {
    if [p, q, r, s].iter().any(|e| e.uses_v()) {
        return Err(Error::invalid(
            "linear-fractional coefficients must not depend on v",
        ));
    }
    let h = (s.clone() * MapExpr::V - q.clone()) / (p.clone() - r.clone() * MapExpr::V);
    Ok(SemiInversion::new(h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoreOrder {
    /// `s[n+2] = phi(n, s[n+1])`
    One,
    /// `s[n+2] = phi(n, s[n], s[n+1])`
    Two,
}

/// The scalar core recursion. An order-one map only uses the `v` slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarCore {
    pub map: MapExpr,
    pub order: CoreOrder,
}

impl ScalarCore {
    pub fn order1(map: MapExpr) -> Result<Self> {
        if map.uses_u() {
            return Err(Error::invalid(
                "an order-1 core may only depend on its second argument",
            ));
        }
        Ok(ScalarCore {
            map,
            order: CoreOrder::One,
        })
    }

    pub fn order2(map: MapExpr) -> Self {
        ScalarCore {
            map,
            order: CoreOrder::Two,
        }
    }

    /// Order 1 when the map ignores `s[n]`, order 2 otherwise.
    pub fn infer(map: MapExpr) -> Self {
        let order = if map.uses_u() {
            CoreOrder::Two
        } else {
            CoreOrder::One
        };
        ScalarCore { map, order }
    }

    /// `phi(n, s[n], s[n+1])`.
    pub fn eval(&self, n: usize, u: f64, w: f64) -> Result<f64> {
        self.map.eval(n, u, w)
    }

    /// One step of the order-1 recursion `r[n+1] = phi(n, r[n])`.
    pub fn step1(&self, n: usize, r: f64) -> Result<f64> {
        self.map.eval(n, 0.0, r)
    }

    /// True when the core is a skip recursion `s[n+2] = phi(n, s[n])`.
    pub fn is_skip(&self) -> bool {
        self.order == CoreOrder::Two && !self.map.uses_v()
    }
}

/// Core plus passive equation, together with the `f` that fixes the initial rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Folding {
    pub f: MapExpr,
    pub core: ScalarCore,
    pub passive: SemiInversion,
}

impl Folding {
    /// `(s0, s1) = (x0, f(0, x0, y0))`.
    pub fn init(&self, x0: f64, y0: f64) -> Result<(f64, f64)> {
        Ok((x0, self.f.eval(0, x0, y0)?))
    }

    /// Solves the core for `len` terms starting from `(x0, y0)`.
    ///
    /// Returns the terms computed so far together with the error that stopped
    /// the recursion, if any.
    pub fn core_solution(&self, x0: f64, y0: f64, len: usize) -> (Vec<f64>, Option<Error>) {
        let mut s = Vec::with_capacity(len);
        s.push(x0);
        if len <= 1 {
            return (s, None);
        }
        match self.f.eval(0, x0, y0) {
            Ok(s1) => s.push(s1),
            Err(e) => return (s, Some(e)),
        }
        while s.len() < len {
            let n = s.len() - 2;
            match self.core.eval(n, s[n], s[n + 1]) {
                Ok(v) if v.is_finite() && v.abs() <= crate::OVERFLOW_THRESHOLD => s.push(v),
                Ok(_) => return (s, Some(Error::Overflow { at: n + 2 })),
                Err(e) => return (s, Some(e)),
            }
        }
        (s, None)
    }
}

/// Folds `(f, g)` using the semi-inversion `h` of `f`.
pub fn fold(f: &MapExpr, g: &MapExpr, h: &SemiInversion) -> Folding {
    // g(n, u, h(n,u,w))
    let inner = g.subst(&MapExpr::U, &h.h);
    // f(n+1, w, inner)
    let phi = f.shifted(1).subst(&MapExpr::V, &inner);
    Folding {
        f: f.clone(),
        core: ScalarCore::infer(phi),
        passive: h.clone(),
    }
}

/// Folding of the semilinear system `x' = a_n x + b_n y + c_n`, `y' = g(n,x,y)`:
///
/// ```text
/// s[n+2] = c[n+1] + a[n+1] s[n+1] + b[n+1] g(n, s[n], (s[n+1] - a[n] s[n] - c[n]) / b[n])
/// y[n]   = (x[n+1] - a[n] x[n] - c[n]) / b[n]
/// ```
pub fn fold_semilinear(a: &CoeffSeq, b: &CoeffSeq, c: &CoeffSeq, g: &MapExpr) -> Result<Folding> {
    ensure_unit(b)?;
    let passive = SemiInversion::of_affine(a, b, c);
    let ae = MapExpr::coeff_or_const("a", a);
    let be = MapExpr::coeff_or_const("b", b);
    let ce = MapExpr::coeff_or_const("c", c);
    let g_at = g.subst(&MapExpr::U, &passive.h);
    let phi = ce.shifted(1) + ae.shifted(1) * MapExpr::V + be.shifted(1) * g_at;
    Ok(Folding {
        f: MapExpr::affine(a, b, c),
        core: ScalarCore::infer(phi),
        passive,
    })
}

/// Horizon over which a coefficient is checked for zeros before evaluation begins.
const UNIT_CHECK_HORIZON: usize = 4096;

fn ensure_unit(b: &CoeffSeq) -> Result<()> {
    let structure = b.eventual_structure();
    if b.first_zero_before(UNIT_CHECK_HORIZON).is_some() || structure.limit_values.contains(&0.0) {
        return Err(Error::invalid("b_n must be a unit"));
    }
    Ok(())
}

/// `(x[n], y[n]) = (s[n], h(n, s[n], s[n+1]))` for `n = 0..len-1`.
///
/// A singular passive evaluation truncates the orbit with a `Singular` status.
pub fn reconstruct_orbit(fold: &Folding, core_solution: &[f64]) -> Result<Orbit> {
    if core_solution.len() < 2 {
        return Err(Error::invalid("core solution needs at least two terms"));
    }
    let mut points = Vec::with_capacity(core_solution.len() - 1);
    let mut status = Status::Completed;
    for (n, w) in core_solution.windows(2).enumerate() {
        match fold.passive.eval(n, w[0], w[1]) {
            Ok(y) => points.push((w[0], y)),
            Err(e) => {
                status = Status::Singular {
                    at: n,
                    which: error_site(&e),
                };
                break;
            }
        }
    }
    Ok(Orbit {
        points,
        status,
        provenance: Provenance::Reconstructed,
    })
}

fn error_site(e: &Error) -> String {
    match e {
        Error::Singular { which } => which.clone(),
        other => format!("{other}"),
    }
}

/// `g(n,u,v) = h(n+1, f(n,u,v), phi(n, u, f(n,u,v)))`: the system `(f, g)` folds to `phi`.
pub fn unfold_general(f: &MapExpr, h: &SemiInversion, phi: &ScalarCore) -> MapExpr {
    let phi_at = phi.map.subst(&MapExpr::U, f);
    h.h.shifted(1).subst(f, &phi_at)
}

/// Unfolds an order-1 core `s[n+2] = phi(n, s[n+1])`: `g = h(n+1, f, phi(n, f))`.
pub fn unfold_order1(f: &MapExpr, h: &SemiInversion, phi: &ScalarCore) -> Result<MapExpr> {
    if phi.map.uses_u() {
        return Err(Error::invalid(
            "order-1 unfolding needs a core in s[n+1] only",
        ));
    }
    Ok(unfold_general(f, h, phi))
}

/// Unfolds a skip core `s[n+2] = phi(n, s[n])`: `g = h(n+1, f, phi(n, u))`.
///
/// Even and odd terms of the resulting core separately solve `r[k+1] = phi(., r[k])`.
pub fn unfold_skip(f: &MapExpr, h: &SemiInversion, phi: &ScalarCore) -> Result<MapExpr> {
    if phi.map.uses_v() {
        return Err(Error::invalid("skip unfolding needs a core in s[n] only"));
    }
    Ok(unfold_general(f, h, phi))
}

/// Unfolds the affine core `s[n+2] = a s[n] + b s[n+1] + c`.
pub fn unfold_affine(f: &MapExpr, h: &SemiInversion, a: f64, b: f64, c: f64) -> Result<MapExpr> {
    if a == 0.0 && b == 0.0 {
        return Err(Error::invalid("affine core needs |a| + |b| > 0"));
    }
    let phi = ScalarCore::infer(affine_core_map(a, b, c));
    Ok(unfold_general(f, h, &phi))
}

/// `a u + b w + c`, dropping zero terms.
pub fn affine_core_map(a: f64, b: f64, c: f64) -> MapExpr {
    let mut terms = Vec::new();
    if a != 0.0 {
        terms.push(a * MapExpr::U);
    }
    if b != 0.0 {
        terms.push(b * MapExpr::V);
    }
    if c != 0.0 || terms.is_empty() {
        terms.push(MapExpr::Const(c));
    }
    let mut it = terms.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |acc, t| acc + t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Direct,
    Reconstructed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EarlyStop {
    pub side: Side,
    pub at: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub max_diff: f64,
    pub pass: bool,
    /// Number of orbit points compared.
    pub compared: usize,
    pub early_stop: Option<EarlyStop>,
}

/// Compares the direct orbit of `sys` with the core + passive reconstruction over
/// `steps` steps (`steps + 1` points).
pub fn check_fold_consistency<S: PlanarMap + ?Sized>(
    sys: &S,
    fold: &Folding,
    init: (f64, f64),
    steps: usize,
    tol: f64,
) -> ConsistencyReport {
    let direct = iterate_system(sys, init, steps);
    let (core, core_err) = fold.core_solution(init.0, init.1, steps + 2);
    let mut early_stop = None;
    if let Some(at) = direct.status.stopped_at() {
        early_stop = Some(EarlyStop {
            side: Side::Direct,
            at,
            reason: direct.status.describe(),
        });
    }
    let recon = if core.len() >= 2 {
        reconstruct_orbit(fold, &core).ok()
    } else {
        None
    };
    let recon_points = recon.as_ref().map(|o| o.points.as_slice()).unwrap_or(&[]);
    if early_stop.is_none() && recon_points.len() < steps + 1 {
        let (at, reason) = match (&core_err, recon.as_ref().map(|o| &o.status)) {
            (_, Some(st @ Status::Singular { .. })) => {
                (st.stopped_at().unwrap_or(0), st.describe())
            }
            (Some(e), _) => (core.len(), format!("core: {e}")),
            _ => (recon_points.len(), String::from("core terminated")),
        };
        early_stop = Some(EarlyStop {
            side: Side::Reconstructed,
            at,
            reason,
        });
    }
    let compared = direct.points.len().min(recon_points.len());
    let max_diff = direct.points[..compared]
        .iter()
        .zip(&recon_points[..compared])
        .map(|(p, q)| (p.0 - q.0).abs().max((p.1 - q.1).abs()))
        .fold(0.0, f64::max);
    ConsistencyReport {
        max_diff,
        pass: early_stop.is_none() && max_diff < tol,
        compared,
        early_stop,
    }
}
