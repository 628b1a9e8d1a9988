//! Exact polynomial arithmetic over Q (and C for numeric work), linear
//! changes of coordinates, and the text grammar for forms.

mod form;
pub mod linalg;
mod parse;
mod poly;
mod scalar;

pub use form::{change_moving_to_last, cone_test, point_on_line, CPoint, ConeVerdict, CubicForm, Form, LinearChange};
pub use linalg::{rank_exact, Matrix};
pub use parse::parse_form;
pub use poly::{monomials_of_degree, Monomial, Poly};
pub use scalar::{rat, rat_int, rat_to_f64, Rat, Scalar, C64};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not homogeneous: term of degree {found} in a form of degree {expected}")]
    NotHomogeneous { expected: u32, found: u32 },
    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("linear change is singular")]
    SingularChange,
    #[error("zero polynomial has no degree")]
    ZeroForm,
}

/// Parse failure with the byte span of the offending input.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message} (at {start}..{end})")]
pub struct ParseError {
    pub message: String,
    pub start: usize,
    pub end: usize,
}

impl ParseError {
    /// Two-line rendering with a caret under the span.
    pub fn render(&self, src: &str) -> String {
        let width = self.end.saturating_sub(self.start).max(1);
        format!("{}\n{}\n{}{}", self.message, src, " ".repeat(self.start), "^".repeat(width))
    }
}
