//! Planes and cubic scrolls from the component pattern of the projection
//! curve, and the conic bundle over P² obtained by projecting from a line.

mod bundle;
mod lines;
mod surfaces;

pub use bundle::{conic_bundle, format_complex_poly, ConicBundle};
pub use lines::{
    analyze_exact_line, analyze_numeric_line, discriminant_singularities, good_line_test, line_meets, lines_through_point, sample_lines, search_very_good, very_good_test,
    DiscriminantSingularity, GoodVerdict, KnownPoint, LineSearch, LineVerdict, COVER_LOOP_BUDGET,
};
pub use surfaces::{block_span, detect_plane_scroll, surfaces, SpanTest, SurfaceVerdict, SPAN_GAP};

use crate::forms::FormError;
use crate::tracker::TrackerError;
use crate::witness::WitnessError;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Yes,
    No,
    Undetermined,
}

impl Decision {
    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("input is not a cubic form in five variables")]
    NotCubic,
    #[error("the two points do not span a line")]
    DegenerateLine,
    #[error("line is not contained in X (relative residual {residual:.3e})")]
    NotOnX { residual: f64 },
    #[error("line passes through the singular point {point}")]
    MeetsSingular { point: String },
    #[error("no usable line found after {attempts} attempts")]
    NoLines { attempts: usize },
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Tracker(#[from] TrackerError),
}

#[cfg(test)]
mod tests;
