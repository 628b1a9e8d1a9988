//! Homotopy continuation: total-degree start systems, predictor–corrector
//! tracking with a Cauchy endgame, clustering of endpoints, and rational
//! reconstruction of numeric points.

mod eval;
mod reconstruct;
mod solve;
mod track;

pub use eval::{condition_number, norm2, norm_inf, NumPoly, NumSystem, Powers};
pub use reconstruct::{rational_reconstruct, reconstruct_real};
pub use solve::{
    cluster_projective, polish_solutions, random_unit, refine_projective, solve_all, solve_overdetermined, solve_projective, total_degree_start, ProjectiveSolution,
    SolveReport, Solution,
};
pub use track::{newton, refine, track, track_to_end, Endpoint, LinearHomotopy, PathStatus, TrackOutcome};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TrackerError {
    #[error("system is not square: {equations} equations in {vars} variables")]
    NotSquare { equations: usize, vars: usize },
    #[error("{failed} of {paths} paths failed to track")]
    TooManyFailures { failed: usize, paths: usize },
    #[error("invalid tracker settings: {0}")]
    InvalidSettings(String),
}

/// Tracker tolerances. Every field has a default; a TOML table may override any subset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrackerSettings {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub corrector_tolerance: f64,
    pub max_corrector_iterations: usize,
    pub max_steps: usize,
    pub divergence_bound: f64,
    pub endgame_radius: f64,
    pub endgame_agreement: f64,
    /// Endpoints whose Jacobian condition exceeds this are treated as singular.
    pub singular_condition: f64,
    pub refine_tolerance: f64,
    pub clustering_radius: f64,
    pub max_failure_fraction: f64,
    /// Largest denominator tried by rational reconstruction.
    pub reconstruction_bound: u64,
    pub parallel: bool,
}

impl Default for TrackerSettings {
    fn default() -> Self {
        TrackerSettings {
            initial_step: 0.02,
            min_step: 1e-9,
            max_step: 0.1,
            corrector_tolerance: 1e-9,
            max_corrector_iterations: 3,
            max_steps: 20_000,
            divergence_bound: 1e8,
            endgame_radius: 0.05,
            endgame_agreement: 1e-10,
            singular_condition: 1e8,
            refine_tolerance: 1e-13,
            clustering_radius: 1e-6,
            max_failure_fraction: 0.1,
            reconstruction_bound: 1_000_000,
            parallel: true,
        }
    }
}

impl TrackerSettings {
    pub fn validate(&self) -> Result<(), TrackerError> {
        let bad = |m: &str| Err(TrackerError::InvalidSettings(m.to_string()));
        if !(self.min_step > 0.0 && self.min_step <= self.initial_step && self.initial_step <= self.max_step) {
            return bad("need 0 < min_step ≤ initial_step ≤ max_step");
        }
        if !(self.corrector_tolerance > 0.0 && self.refine_tolerance > 0.0 && self.clustering_radius > 0.0) {
            return bad("tolerances must be positive");
        }
        if !(self.endgame_radius > 0.0 && self.endgame_radius < 0.5) {
            return bad("endgame_radius must lie in (0, 0.5)");
        }
        if self.max_corrector_iterations == 0 {
            return bad("max_corrector_iterations must be at least 1");
        }
        Ok(())
    }
}
