//! Orbit generation and the analysis built on top of it.

pub mod classify;
pub mod cycle;
pub mod lyapunov;
pub mod orbit;
pub mod sweep;

pub use classify::{
    classify_orbit, classify_rhsc, classify_rhsc_with, observe_orbit, Behavior, ClassifyOptions,
    ClassifyReport, Verdict,
};
pub use cycle::{detect_cycle, lcm_period, CyclePoint, CycleReport};
pub use lyapunov::{
    lyapunov_core, lyapunov_fd, lyapunov_planar, sensitive_pair_stat, SensitivePairStat,
};
pub use orbit::{
    iterate_core, iterate_system, iterate_system_with, CoreOrbit, Limits, Orbit, Provenance, Status,
};
pub use sweep::{
    bifurcation_sweep, lyapunov_sign_change, period_windows, sweep_grid, sweep_row, SweepRow,
};
