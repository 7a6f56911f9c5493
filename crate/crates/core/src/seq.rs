//! Time-indexed real coefficient sequences.
//!
//! Every nonautonomous coefficient in the library (the `alpha_n`, `beta_n`,
//! `A_n`, `B_n`, ... of the rational systems) is a [`CoeffSeq`]. The variant
//! set is closed so sequences stay serializable in config documents:
//!
//! ```text
//! {"kind":"constant","value":2.0}
//! {"kind":"periodic","values":[1,-1]}
//! {"kind":"convergent","limit":{"kind":"constant","value":0},"initial":1,"decay":0.5}
//! {"kind":"explicit","prefix":[0.3,0.2],"tail":{"kind":"constant","value":1}}
//! ```

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{self, lcm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeqRepr", into = "SeqRepr")]
pub enum CoeffSeq {
    Constant(f64),
    /// Repeats `values` forever; the period is the minimal one.
    Periodic(Vec<f64>),
    /// `limit(n) + (initial - limit(0)) * decay^n`, with `limit` constant or periodic.
    ConvergentToPeriodic {
        limit: Box<CoeffSeq>,
        initial: f64,
        decay: f64,
    },
    /// `prefix[n]` for `n < prefix.len()`, `tail(n)` afterwards.
    Explicit {
        prefix: Vec<f64>,
        tail: Box<CoeffSeq>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitKind {
    Constant,
    Periodic,
}

/// Asymptotic behavior of a sequence: the cycle it converges to.
#[derive(Debug, Clone, PartialEq)]
pub struct EventualStructure {
    pub kind: LimitKind,
    /// Minimal period of the limit cycle (1 for constants).
    pub period: usize,
    /// One period of the limit, starting at the phase of index 0.
    pub limit_values: Vec<f64>,
}

impl EventualStructure {
    /// True when every limit value is zero.
    pub fn limit_is_zero(&self) -> bool {
        self.limit_values.iter().all(|v| *v == 0.0)
    }

    /// True when some, but not all, limit values are zero.
    pub fn limit_touches_zero(&self) -> bool {
        self.limit_values.contains(&0.0) && !self.limit_is_zero()
    }
}

/// Smallest `p` dividing `values.len()` such that `values` is `p`-periodic.
pub fn minimal_period(values: &[f64]) -> usize {
    let len = values.len();
    for p in 1..len {
        if len.is_multiple_of(p) && (0..len).all(|i| values[i] == values[(i + p) % len]) {
            return p;
        }
    }
    len.max(1)
}

impl CoeffSeq {
    pub fn constant(c: f64) -> Self {
        CoeffSeq::Constant(c)
    }

    /// Periodic sequence, reduced to its minimal period.
    pub fn periodic(values: impl Into<Vec<f64>>) -> Result<Self> {
        let mut values = values.into();
        if values.is_empty() {
            return Err(Error::invalid("periodic sequence needs at least one value"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("periodic values must be finite"));
        }
        let p = minimal_period(&values);
        values.truncate(p);
        Ok(CoeffSeq::Periodic(values))
    }

    pub fn convergent(limit: CoeffSeq, initial: f64, decay: f64) -> Result<Self> {
        let seq = CoeffSeq::ConvergentToPeriodic {
            limit: Box::new(limit),
            initial,
            decay,
        };
        seq.validate()?;
        Ok(seq)
    }

    pub fn explicit(prefix: impl Into<Vec<f64>>, tail: CoeffSeq) -> Result<Self> {
        let seq = CoeffSeq::Explicit {
            prefix: prefix.into(),
            tail: Box::new(tail),
        };
        seq.validate()?;
        Ok(seq)
    }

    /// Checks the variant invariants (used for sequences built literally or deserialized).
    pub fn validate(&self) -> Result<()> {
        match self {
            CoeffSeq::Constant(c) => {
                if !c.is_finite() {
                    return Err(Error::invalid("constant must be finite"));
                }
            }
            CoeffSeq::Periodic(values) => {
                if values.is_empty() {
                    return Err(Error::invalid("periodic sequence needs at least one value"));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::invalid("periodic values must be finite"));
                }
            }
            CoeffSeq::ConvergentToPeriodic {
                limit,
                initial,
                decay,
            } => {
                if !(*decay > 0.0 && *decay < 1.0) {
                    return Err(Error::invalid(format!(
                        "decay must lie in (0,1), got {decay}"
                    )));
                }
                if !initial.is_finite() {
                    return Err(Error::invalid("initial value must be finite"));
                }
                match limit.as_ref() {
                    CoeffSeq::Constant(_) | CoeffSeq::Periodic(_) => limit.validate()?,
                    _ => {
                        return Err(Error::invalid(
                            "convergent limit must be constant or periodic",
                        ))
                    }
                }
            }
            CoeffSeq::Explicit { prefix, tail } => {
                if prefix.iter().any(|v| !v.is_finite()) {
                    return Err(Error::invalid("explicit prefix values must be finite"));
                }
                tail.validate()?;
            }
        }
        Ok(())
    }

    /// The `n`-th term.
    pub fn value_at(&self, n: usize) -> f64 {
        match self {
            CoeffSeq::Constant(c) => *c,
            CoeffSeq::Periodic(values) => values[n % values.len()],
            CoeffSeq::ConvergentToPeriodic {
                limit,
                initial,
                decay,
            } => {
                let gap = initial - limit.value_at(0);
                limit.value_at(n) + gap * math::powi(*decay, n.min(i32::MAX as usize) as i32)
            }
            CoeffSeq::Explicit { prefix, tail } => match prefix.get(n) {
                Some(v) => *v,
                None => tail.value_at(n),
            },
        }
    }

    /// The cycle this sequence converges to, with its minimal period.
    pub fn eventual_structure(&self) -> EventualStructure {
        match self {
            CoeffSeq::Constant(c) => EventualStructure {
                kind: LimitKind::Constant,
                period: 1,
                limit_values: alloc::vec![*c],
            },
            CoeffSeq::Periodic(values) => {
                let p = minimal_period(values);
                EventualStructure {
                    kind: if p == 1 {
                        LimitKind::Constant
                    } else {
                        LimitKind::Periodic
                    },
                    period: p,
                    limit_values: values[..p].to_vec(),
                }
            }
            CoeffSeq::ConvergentToPeriodic { limit, .. } => limit.eventual_structure(),
            CoeffSeq::Explicit { tail, .. } => tail.eventual_structure(),
        }
    }

    /// Minimal period of the eventual structure.
    pub fn period(&self) -> usize {
        self.eventual_structure().period
    }

    /// An upper bound for `sup |value_at(n)|` over all `n`.
    pub fn sup_abs(&self) -> f64 {
        match self {
            CoeffSeq::Constant(c) => c.abs(),
            CoeffSeq::Periodic(values) => values.iter().fold(0.0, |m, v| m.max(v.abs())),
            CoeffSeq::ConvergentToPeriodic { limit, initial, .. } => {
                limit.sup_abs() + (initial - limit.value_at(0)).abs()
            }
            CoeffSeq::Explicit { prefix, tail } => {
                prefix.iter().fold(tail.sup_abs(), |m, v| m.max(v.abs()))
            }
        }
    }

    pub fn is_autonomous(&self) -> bool {
        matches!(self, CoeffSeq::Constant(_))
            || matches!(self, CoeffSeq::Periodic(v) if minimal_period(v) == 1)
    }

    /// First index `n < horizon` with a zero term.
    pub fn first_zero_before(&self, horizon: usize) -> Option<usize> {
        (0..horizon).find(|&n| self.value_at(n) == 0.0)
    }
}

impl From<f64> for CoeffSeq {
    fn from(c: f64) -> Self {
        CoeffSeq::Constant(c)
    }
}

/// Least common multiple of the eventual periods of several sequences.
pub fn joint_period<'a>(seqs: impl IntoIterator<Item = &'a CoeffSeq>) -> usize {
    seqs.into_iter().fold(1, |p, s| lcm(p, s.period()))
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SeqRepr {
    Constant {
        value: f64,
    },
    Periodic {
        values: Vec<f64>,
    },
    Convergent {
        limit: Box<SeqRepr>,
        initial: f64,
        decay: f64,
    },
    Explicit {
        prefix: Vec<f64>,
        tail: Box<SeqRepr>,
    },
}

impl TryFrom<SeqRepr> for CoeffSeq {
    type Error = Error;

    fn try_from(repr: SeqRepr) -> Result<Self> {
        let seq = match repr {
            SeqRepr::Constant { value } => CoeffSeq::Constant(value),
            SeqRepr::Periodic { values } => return CoeffSeq::periodic(values),
            SeqRepr::Convergent {
                limit,
                initial,
                decay,
            } => CoeffSeq::ConvergentToPeriodic {
                limit: Box::new(CoeffSeq::try_from(*limit)?),
                initial,
                decay,
            },
            SeqRepr::Explicit { prefix, tail } => CoeffSeq::Explicit {
                prefix,
                tail: Box::new(CoeffSeq::try_from(*tail)?),
            },
        };
        seq.validate()?;
        Ok(seq)
    }
}

impl From<CoeffSeq> for SeqRepr {
    fn from(seq: CoeffSeq) -> Self {
        match seq {
            CoeffSeq::Constant(value) => SeqRepr::Constant { value },
            CoeffSeq::Periodic(values) => SeqRepr::Periodic { values },
            CoeffSeq::ConvergentToPeriodic {
                limit,
                initial,
                decay,
            } => SeqRepr::Convergent {
                limit: Box::new((*limit).into()),
                initial,
                decay,
            },
            CoeffSeq::Explicit { prefix, tail } => SeqRepr::Explicit {
                prefix,
                tail: Box::new((*tail).into()),
            },
        }
    }
}
