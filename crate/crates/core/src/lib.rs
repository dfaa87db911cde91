//! Volume of violation of Bell inequalities for rotation-invariant
//! correlation models.
//!
//! The relative volume `v` of a model in a Bell scenario is the probability
//! that uniformly random measurement directions produce a violation of the
//! scenario's local bound. This crate estimates it by Monte Carlo for the CHSH
//! and 3322 scenarios, for the quantum singlet, the Popescu-Rohrlich box, the
//! one-parameter lambda-box family and user supplied piecewise-linear models.
//!
//! Geometry, models and functionals are generic over the scalar type
//! ([`Real`]: `f32` or `f64`); the aliases at the crate root fix `f64`.
//!
//! ```
//! use bellvol::{estimate_volume, singlet_model, Scenario};
//!
//! let est = estimate_volume(&singlet_model::<f64>(), &Scenario::chsh(), 100_000, 7).unwrap();
//! assert!((est.v - 0.0708).abs() < 5.0 * est.stderr);
//! ```

pub mod error;
pub mod estimation;
pub mod geometry;
pub mod inequalities;
pub mod models;
pub mod scalar;

pub use error::{Error, Result};
pub use estimation::{
    count_violations, default_lambda_grid, default_samples, estimate_coplanar_chsh, estimate_volume, find_crossover,
    linspace, search_max_violation, sweep_lambda, CrossoverResult, SweepPoint, VolumeEstimate,
};
pub use geometry::{
    angle_between, coplanar_chsh_config, sample_chsh_config, sample_direction, sample_i3322_config, RandomStream,
};
pub use inequalities::{chsh_value, i3322_value, violates, PredicateSense, Scenario, ScenarioName};
pub use models::{
    eval_correlation, joint_outcome_probabilities, lambda_box_model, lambda_range, load_model, load_model_file,
    pr_box_model, save_model, single_party_marginal, singlet_model, validate_model, ValidationReport, Violation,
};
pub use scalar::Real;

pub type Direction = geometry::Direction<f64>;
pub type ChshConfig = geometry::ChshConfig<f64>;
pub type I3322Config = geometry::I3322Config<f64>;
pub type PiecewiseNode = models::PiecewiseNode<f64>;
pub type CorrelationModel = models::CorrelationModel<f64>;
pub type MeasurementConfig = estimation::MeasurementConfig<f64>;
pub type MaxViolationResult = estimation::MaxViolationResult<f64>;

pub type Direction32 = geometry::Direction<f32>;
pub type CorrelationModel32 = models::CorrelationModel<f32>;
