//! Evaluable planar systems.

use alloc::format;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogSystem;
use crate::error::{Error, Result};
use crate::expr::MapExpr;
use crate::folding::{fold, fold_semilinear, Folding, SemiInversion};
use crate::seq::CoeffSeq;
use crate::SINGULAR_EPS;

/// One step `(n, x, y) -> (x', y')` of a planar system.
pub trait PlanarMap {
    fn step_with(&self, n: usize, x: f64, y: f64, eps: f64) -> Result<(f64, f64)>;

    fn step(&self, n: usize, x: f64, y: f64) -> Result<(f64, f64)> {
        self.step_with(n, x, y, SINGULAR_EPS)
    }
}

/// A system given by two expression maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapPair {
    pub f: MapExpr,
    pub g: MapExpr,
}

impl PlanarMap for MapPair {
    fn step_with(&self, n: usize, x: f64, y: f64, eps: f64) -> Result<(f64, f64)> {
        Ok((
            self.f.eval_with(n, x, y, eps)?,
            self.g.eval_with(n, x, y, eps)?,
        ))
    }
}

/// Systems that are not in the catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "lowercase")]
pub enum CustomSystem {
    /// `x' = a_n x + b_n y + c_n`, `y' = g(n, x, y)`.
    Semilinear {
        a: CoeffSeq,
        b: CoeffSeq,
        c: CoeffSeq,
        g: MapExpr,
    },
    /// An arbitrary pair, optionally with declared semi-inversions: `h` of `f` in `y`
    /// (`h(n, x, f(n,x,y)) = y`) and `hg` of `g` in `x` (`hg(n, y, g(n,x,y)) = x`).
    Generic {
        f: MapExpr,
        g: MapExpr,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        h: Option<MapExpr>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hg: Option<MapExpr>,
    },
}

/// Any system the library can iterate and (when possible) fold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemSpec {
    Catalog(CatalogSystem),
    Custom(CustomSystem),
}

impl SystemSpec {
    pub fn name(&self) -> &'static str {
        match self {
            SystemSpec::Catalog(c) => c.id().as_str(),
            SystemSpec::Custom(CustomSystem::Semilinear { .. }) => "semilinear",
            SystemSpec::Custom(CustomSystem::Generic { .. }) => "generic",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SystemSpec::Catalog(c) => c.validate(),
            SystemSpec::Custom(CustomSystem::Semilinear { a, b, c, g }) => {
                a.validate()?;
                b.validate()?;
                c.validate()?;
                g.validate()
            }
            SystemSpec::Custom(CustomSystem::Generic { f, g, h, hg }) => {
                f.validate()?;
                g.validate()?;
                h.iter().chain(hg.iter()).try_for_each(|e| e.validate())
            }
        }
    }

    pub fn maps(&self) -> (MapExpr, MapExpr) {
        match self {
            SystemSpec::Catalog(c) => c.maps(),
            SystemSpec::Custom(CustomSystem::Semilinear { a, b, c, g }) => {
                (MapExpr::affine(a, b, c), g.clone())
            }
            SystemSpec::Custom(CustomSystem::Generic { f, g, .. }) => (f.clone(), g.clone()),
        }
    }

    /// Folding on `f`: closed form for the catalog, the semilinear formula, or the
    /// generic construction from a declared semi-inversion.
    pub fn folding(&self) -> Result<Folding> {
        match self {
            SystemSpec::Catalog(c) => Ok(c.folding()),
            SystemSpec::Custom(CustomSystem::Semilinear { a, b, c, g }) => {
                fold_semilinear(a, b, c, g)
            }
            SystemSpec::Custom(CustomSystem::Generic { f, g, h, .. }) => match h {
                Some(h) => Ok(fold(f, g, &SemiInversion::new(h.clone()))),
                None => Err(Error::invalid("no semi-inversion is declared for f")),
            },
        }
    }

    /// Folding on `g` instead: the components are swapped, so the core solves for
    /// `y` (with `s0 = y0`) and the passive equation recovers `x`. The returned
    /// folding acts on the swapped system `(y, x)`.
    pub fn folding_on_g(&self) -> Result<Folding> {
        match self {
            SystemSpec::Custom(CustomSystem::Generic {
                f, g, hg: Some(hg), ..
            }) => {
                let swap = |e: &MapExpr| e.subst(&MapExpr::V, &MapExpr::U);
                Ok(fold(&swap(g), &swap(f), &SemiInversion::new(hg.clone())))
            }
            _ => Err(Error::invalid(format!(
                "{}: no semi-inversion of g is available",
                self.name()
            ))),
        }
    }
}

impl PlanarMap for SystemSpec {
    fn step_with(&self, n: usize, x: f64, y: f64, eps: f64) -> Result<(f64, f64)> {
        match self {
            SystemSpec::Catalog(c) => c.step_with(n, x, y, eps),
            SystemSpec::Custom(CustomSystem::Semilinear { a, b, c, g }) => {
                let x1 = a.value_at(n) * x + b.value_at(n) * y + c.value_at(n);
                Ok((x1, g.eval_with(n, x, y, eps)?))
            }
            SystemSpec::Custom(CustomSystem::Generic { f, g, .. }) => {
                Ok((f.eval_with(n, x, y, eps)?, g.eval_with(n, x, y, eps)?))
            }
        }
    }
}

impl From<CatalogSystem> for SystemSpec {
    fn from(c: CatalogSystem) -> Self {
        SystemSpec::Catalog(c)
    }
}

/// Swaps the components of a planar map: `(y, x) -> (g, f)`.
pub struct Swapped<'a, S: ?Sized>(pub &'a S);

impl<S: PlanarMap + ?Sized> PlanarMap for Swapped<'_, S> {
    fn step_with(&self, n: usize, y: f64, x: f64, eps: f64) -> Result<(f64, f64)> {
        let (x1, y1) = self.0.step_with(n, x, y, eps)?;
        Ok((y1, x1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::check_fold_consistency;

    #[test]
    fn generic_without_semi_inversion_cannot_fold() {
        let sys = SystemSpec::Custom(CustomSystem::Generic {
            f: MapExpr::U * MapExpr::V,
            g: MapExpr::U,
            h: None,
            hg: None,
        });
        assert!(sys.folding().is_err());
        assert!(sys.folding_on_g().is_err());
    }

    #[test]
    fn fold_on_g_reconstructs_swapped_orbit() {
        // x' = 0.5 x + 0.2 y, y' = x + 0.3 y ; g is affine in x: hg(n, y, w) = w - 0.3 y
        let f = 0.5 * MapExpr::U + 0.2 * MapExpr::V;
        let g = MapExpr::U + 0.3 * MapExpr::V;
        let hg = MapExpr::V - 0.3 * MapExpr::U;
        let sys = SystemSpec::Custom(CustomSystem::Generic {
            f,
            g,
            h: None,
            hg: Some(hg),
        });
        let folding = sys.folding_on_g().unwrap();
        let report = check_fold_consistency(&Swapped(&sys), &folding, (1.0, 0.7), 40, 1e-12);
        assert!(report.pass, "{report:?}");
    }
}
