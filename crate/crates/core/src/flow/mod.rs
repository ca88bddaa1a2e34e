//! Closed-form model flows, the adaptive reaction-ODE integrator, parabolic
//! rescaling, and geometric summaries (ball volumes, injectivity bounds,
//! asymptotic ratios).

mod families;
mod integrate;
mod trajectory;

pub use families::{
    injectivity_lower_bound, AsymptoticRatio, FlowSnapshot, ModelFamily,
};
pub use integrate::{blow_up_time, integrate_reaction, IntegratorOptions};
pub use trajectory::{
    family_trajectory, reaction_trajectory_on_grid, RescaleTransform, Trajectory,
    TrajectorySource,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("time {t} is at or past the blow-up time {blow_up}")]
    PastBlowUp { t: f64, blow_up: f64 },
    #[error("family parameter out of range: {0}")]
    BadParameter(String),
    #[error("radius {r} outside the supported closed-form range (max {max})")]
    RadiusOutOfRange { r: f64, max: f64 },
    #[error("injectivity bound requires r <= pi/4, got {0}")]
    InjectivityRadius(f64),
    #[error("injectivity bound requires a normalized snapshot (|Riem| <= 1), got norm {0}")]
    NotNormalized(f64),
    #[error("snapshot carries no closed-form geometry for this query")]
    MissingGeometry,
    #[error("asymptotic ratio requires a non-compact family")]
    CompactFamily,
    #[error("integration step size underflowed at t = {t}")]
    StepUnderflow { t: f64, partial: Box<Trajectory> },
    #[error("step budget exhausted at t = {t}")]
    StepBudget { t: f64 },
    #[error("time grid must be strictly increasing and start at zero")]
    BadGrid,
    #[error("rescale pivot {t0} lies outside the trajectory span [{lo}, {hi}]")]
    PivotOutsideGrid { t0: f64, lo: f64, hi: f64 },
    #[error("integrator tolerance must be positive and below one, got {0}")]
    BadTolerance(f64),
}
