//! Singular cubic threefolds in P⁴: singular points and their types, the
//! defect from lines through a singular point, Hodge numbers of H³, planes
//! and cubic scrolls, and good lines via conic bundles.

pub mod defect;
pub mod forms;
pub mod geometry;
pub mod pipeline;
pub mod report;
pub mod singular;
pub mod tracker;
pub mod witness;

use serde::Serialize;

/// How a reported value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// Exact rational computation.
    Exact,
    /// Numerical, with an a-posteriori certificate (trace test).
    CertifiedNumeric,
    /// Randomized search that can miss (e.g. monodromy found no sheet swap).
    Probabilistic,
    /// Floating-point heuristic without a certificate.
    Uncertified,
}
