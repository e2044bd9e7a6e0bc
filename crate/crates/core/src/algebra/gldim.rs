use std::sync::Arc;

use serde::Serialize;

use super::{primitive_idempotents, GradedAlgebra, DEFAULT_SEED};
use crate::error::Result;
use crate::field::Field;
use crate::module::{is_projective, simple, GradedModule};
use crate::stable::syzygy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalDimension {
    Finite(usize),
    ExceedsBound,
}

/// Maximum projective dimension of the simples, found by iterating minimal
/// syzygies; `ExceedsBound` once some simple needs more than `bound` steps.
pub fn global_dimension_bounded<F: Field>(a: &GradedAlgebra<F>, bound: usize) -> Result<GlobalDimension> {
    let a = match a.idempotents() {
        Some(_) => Arc::new(GradedAlgebra::from_parts_unchecked(a.to_parts())?),
        None => Arc::new(a.with_idempotents(primitive_idempotents(a, DEFAULT_SEED)?)?),
    };
    let count = a.idempotents().map_or(0, |e| e.len());
    let mut worst = 0;
    for i in 1..=count {
        let mut m: GradedModule<F> = simple(&a, i)?;
        let mut pd = 0;
        loop {
            if is_projective(&m)? {
                break;
            }
            if pd == bound {
                return Ok(GlobalDimension::ExceedsBound);
            }
            m = syzygy(&m)?;
            pd += 1;
        }
        worst = worst.max(pd);
    }
    Ok(GlobalDimension::Finite(worst))
}
