//! Numerical irreducible decomposition of curves: witness sets, monodromy
//! grouping and the trace test. Used on the curve of lines through a
//! singular point and on plane discriminant curves.

mod quadric;
mod slicing;
#[allow(clippy::module_inception)]
mod witness;

pub use quadric::{detect_nonreduced, double_plane_root, plane_factors, QuadricClass, QuadricKind};
pub use slicing::{match_points, Orbits, SlicedSystem};
pub use witness::{
    monodromy_partition, trace_test, witness_points, witness_points_numeric, ComponentPartition, TraceCertificate, TraceData, WitnessSet, STABILIZATION_WINDOW,
    TRACE_TOLERANCE,
};

use crate::forms::FormError;
use crate::tracker::TrackerError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WitnessError {
    #[error("{equations} equations in {vars} variables do not cut out a curve")]
    NotACurve { equations: usize, vars: usize },
    #[error("non-reduced or positive-dimensional excess: expected {expected} simple witness points, found {found} with multiplicity")]
    Degenerate { expected: usize, found: usize },
    #[error("trace test indeterminate after repeated tracking failures")]
    TraceIndeterminate,
    #[error("quadric vanishes identically: not an isolated singularity, or a cone")]
    ZeroQuadric,
    #[error("quadric is not a union of two distinct planes")]
    NotTwoPlanes,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Tracker(#[from] TrackerError),
}

#[cfg(test)]
mod tests;
