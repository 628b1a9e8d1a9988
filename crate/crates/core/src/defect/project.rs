use super::DefectError;
use crate::forms::{change_moving_to_last, Form, LinearChange, Rat};

/// Local data at a singular point q: after the exact change T sending
/// e₄ to q, f∘T = x₄·g₂(x₀..x₃) + g₃(x₀..x₃).
#[derive(Clone, Debug)]
pub struct Projection {
    pub change: LinearChange<Rat>,
    pub g2: Form<Rat>,
    pub g3: Form<Rat>,
}

pub fn project(f: &Form<Rat>, q: &[Rat]) -> Result<Projection, DefectError> {
    if f.nvars() != 5 || f.degree() != 3 {
        return Err(DefectError::NotCubic);
    }
    let change = change_moving_to_last(q);
    let h = f.substitute(&change)?;
    let parts = h.poly().coefficients_in(4);
    if parts.iter().skip(2).any(|p| !p.is_zero()) {
        return Err(DefectError::NotSingular);
    }
    let get = |k: usize, d: u32| -> Form<Rat> {
        match parts.get(k) {
            Some(p) => Form::new(p.drop_var(4), d).expect("homogeneous slice of a form"),
            None => Form::zero(4, d),
        }
    };
    Ok(Projection { g2: get(1, 2), g3: get(0, 3), change })
}
