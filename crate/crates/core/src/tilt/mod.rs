//! The tilting module `T = ⊕_{i=0}^{ℓ−1} Λ(i)_{≤0}`, its stable endomorphism
//! algebra `Γ`, reference algebras for the example families and
//! isomorphism-evidence fingerprints.

use serde::Serialize;

use crate::algebra::{global_dimension_bounded, AlgebraRef, GlobalDimension, GradedAlgebra};
use crate::error::{Error, Hypothesis, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::module::{direct_sum, is_self_injective, regular, shift, truncate_le, GradedModule};
use crate::stable::{stable_end_algebra, StableHomSpace};

mod fingerprint;
mod reference;

pub use fingerprint::{compare, compare_fingerprints, fingerprint, AlgebraFingerprint, Verdict};
pub use reference::{reference_auslander_linear, reference_subcategory_algebra, reference_upper_triangular};

/// Default cap on the projective dimensions explored for `gldim Λ₀`.
pub const DEFAULT_GLDIM_BOUND: usize = 10;

/// Outcome of the standing-hypothesis checks. Checks that depend on an earlier
/// failed one are skipped (`None`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub non_negatively_graded: bool,
    pub self_injective: Option<bool>,
    pub degree_zero_global_dimension: Option<GlobalDimension>,
    /// `ℓ = sup Λ`, the top degree.
    pub ell: Option<i32>,
}

impl HypothesisReport {
    /// The first hypothesis that fails, if any.
    pub fn violation(&self) -> Option<Hypothesis> {
        if !self.non_negatively_graded {
            return Some(Hypothesis::NonNegativelyGraded);
        }
        if self.self_injective != Some(true) {
            return Some(Hypothesis::SelfInjective);
        }
        match self.degree_zero_global_dimension {
            Some(GlobalDimension::Finite(_)) => None,
            _ => Some(Hypothesis::FiniteGlobalDimension),
        }
    }

    pub fn require(&self) -> Result<()> {
        match self.violation() {
            Some(h) => Err(Error::HypothesisViolated(h)),
            None => Ok(()),
        }
    }
}

/// Non-negative grading, self-injectivity and `gldim Λ₀ ≤ bound`.
pub fn check_hypotheses<F: Field>(a: &AlgebraRef<F>, gldim_bound: usize) -> Result<HypothesisReport> {
    let ell = a.sup_degree();
    if !a.is_non_negatively_graded() {
        return Ok(HypothesisReport {
            non_negatively_graded: false,
            self_injective: None,
            degree_zero_global_dimension: None,
            ell,
        });
    }
    let self_injective = is_self_injective(a)?;
    let (a0, _) = a.degree_zero_subalgebra()?;
    let gl = global_dimension_bounded(&a0, gldim_bound)?;
    Ok(HypothesisReport {
        non_negatively_graded: true,
        self_injective: Some(self_injective),
        degree_zero_global_dimension: Some(gl),
        ell,
    })
}

/// The summands `Λ(i)_{≤0}`, their direct sum, and (once `Γ` is known) the
/// projections onto the summands as elements of `Γ`.
#[derive(Clone, Debug)]
pub struct TiltingData<F> {
    pub summands: Vec<GradedModule<F>>,
    pub module: GradedModule<F>,
    pub block_idempotents: Vec<Vec<F>>,
}

/// `T = ⊕_{i=0}^{ℓ−1} Λ(i)_{≤0}`. Hypotheses are verified first.
pub fn yamaura_tilting_module<F: Field>(a: &AlgebraRef<F>) -> Result<TiltingData<F>> {
    check_hypotheses(a, DEFAULT_GLDIM_BOUND)?.require()?;
    tilting_summands(a)
}

fn tilting_summands<F: Field>(a: &AlgebraRef<F>) -> Result<TiltingData<F>> {
    let ell = a.sup_degree().unwrap_or(0).max(0);
    let reg = regular(a);
    let summands = (0..ell)
        .map(|i| truncate_le(&shift(&reg, i), 0).map(|(m, _)| m))
        .collect::<Result<Vec<_>>>()?;
    let module = if summands.is_empty() { GradedModule::zero(a) } else { direct_sum(a, &summands)? };
    Ok(TiltingData { summands, module, block_idempotents: Vec::new() })
}

/// `Γ = End_{sGr Λ}(T)` with the tilting data it came from.
#[derive(Debug)]
pub struct Gamma<F> {
    pub algebra: AlgebraRef<F>,
    pub tilting: TiltingData<F>,
    pub space: StableHomSpace<F>,
}

pub fn gamma<F: Field>(a: &AlgebraRef<F>) -> Result<Gamma<F>> {
    let tilting = yamaura_tilting_module(a)?;
    gamma_of(tilting)
}

/// `Γ` for already-built tilting data (no hypothesis checks).
pub fn gamma_of<F: Field>(mut tilting: TiltingData<F>) -> Result<Gamma<F>> {
    let end = stable_end_algebra(&tilting.module)?;
    let field = tilting.module.field();
    let total = tilting.module.dim();
    let mut off = 0;
    let mut blocks = Vec::with_capacity(tilting.summands.len());
    for s in &tilting.summands {
        let mut p = Matrix::zeros(field, total, total);
        for r in off..off + s.dim() {
            p.set(r, r, F::one(field));
        }
        blocks.push(end.class_of(&p));
        off += s.dim();
    }
    tilting.block_idempotents = blocks;
    Ok(Gamma { algebra: end.algebra.into_ref(), tilting, space: end.space })
}

/// `dim T` from degree bookkeeping: `Σ_{i<ℓ} Σ_{d≤i} dim Λ_d`.
pub fn expected_tilting_dim<F: Field>(a: &GradedAlgebra<F>) -> usize {
    let ell = a.sup_degree().unwrap_or(0).max(0);
    (0..ell).map(|i| (0..=i).map(|d| a.component_dim(d)).sum::<usize>()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, compile_quiver, Arrow, Family, QuiverPresentation};
    use crate::field::{FieldSpec, Rat};
    use crate::linalg::is_zero_vec;
    use std::sync::Arc;

    fn alg(f: Family, n: usize) -> AlgebraRef<Rat> {
        Arc::new(builtin(f, n, FieldSpec::RATIONALS).unwrap())
    }

    #[test]
    fn tilting_module_dimensions() {
        let t = yamaura_tilting_module(&alg(Family::TruncatedPolynomial, 2)).unwrap();
        assert_eq!(t.module.dim(), 1);
        let t = yamaura_tilting_module(&alg(Family::TruncatedPolynomial, 3)).unwrap();
        assert_eq!(t.summands.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![1, 2]);
        let t = yamaura_tilting_module(&alg(Family::PreprojectiveA, 1)).unwrap();
        assert!(t.summands.is_empty());
        assert_eq!(t.module.dim(), 0);
        for (f, n) in [(Family::Exterior, 3), (Family::PreprojectiveA, 3), (Family::TruncatedPolynomial, 5)] {
            let a = alg(f, n);
            assert_eq!(yamaura_tilting_module(&a).unwrap().module.dim(), expected_tilting_dim(&a));
        }
    }

    #[test]
    fn gamma_dimensions() {
        assert_eq!(gamma(&alg(Family::TruncatedPolynomial, 4)).unwrap().algebra.dim(), 6);
        assert_eq!(gamma(&alg(Family::PreprojectiveA, 3)).unwrap().algebra.dim(), 5);
        assert_eq!(gamma(&alg(Family::Exterior, 2)).unwrap().algebra.dim(), 4);
        assert!(gamma(&alg(Family::PreprojectiveA, 1)).unwrap().algebra.is_zero_algebra());
    }

    #[test]
    fn block_idempotents_are_orthogonal_and_sum_to_one() {
        let g = gamma(&alg(Family::PreprojectiveA, 3)).unwrap();
        let es = &g.tilting.block_idempotents;
        assert_eq!(es.len(), 2);
        let mut sum = g.algebra.zero_vector();
        for (i, e) in es.iter().enumerate() {
            for (j, f) in es.iter().enumerate() {
                let p = g.algebra.mul(e, f);
                if i == j {
                    assert_eq!(&p, e);
                } else {
                    assert!(is_zero_vec(&p));
                }
            }
            for (s, x) in sum.iter_mut().zip(e) {
                *s = s.add(x);
            }
        }
        assert_eq!(sum, g.algebra.unit());
    }

    #[test]
    fn hypothesis_gate() {
        let p = QuiverPresentation::<Rat> {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![Arrow { name: "a".into(), source: 0, target: 1, degree: 0 }],
            relations: vec![],
            nilpotency_bound: 2,
        };
        let a2 = Arc::new(compile_quiver(&p, FieldSpec::RATIONALS).unwrap());
        let r = check_hypotheses(&a2, DEFAULT_GLDIM_BOUND).unwrap();
        assert_eq!(r.violation(), Some(Hypothesis::SelfInjective));
        assert!(matches!(
            yamaura_tilting_module(&a2),
            Err(Error::HypothesisViolated(Hypothesis::SelfInjective))
        ));
        let r = check_hypotheses(&alg(Family::TruncatedPolynomial, 4), DEFAULT_GLDIM_BOUND).unwrap();
        assert_eq!(r.violation(), None);
        assert_eq!(r.ell, Some(3));
    }

    #[test]
    fn degree_zero_dual_numbers_fail_the_gldim_hypothesis() {
        let a = builtin::<Rat>(Family::TruncatedPolynomial, 2, FieldSpec::RATIONALS).unwrap();
        let flat = Arc::new(a.forget_grading().unwrap());
        let r = check_hypotheses(&flat, 4).unwrap();
        assert_eq!(r.violation(), Some(Hypothesis::FiniteGlobalDimension));
    }
}
