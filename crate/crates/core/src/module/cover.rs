use super::{direct_sum, dual_module, dual_of_regular, projective, projective_basis, shift};
use super::{GradedMap, GradedModule, GradedSubspace};
use crate::algebra::{jacobson_radical, AlgebraRef};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{is_zero_vec, Matrix};

/// `M·rad`
pub(crate) fn radical_submodule<F: Field>(m: &GradedModule<F>) -> Result<GradedSubspace<F>> {
    let rad = jacobson_radical(m.algebra())?;
    let mut vecs = Vec::new();
    for r in rad.basis.basis() {
        vecs.extend(m.action_of(r).row_vecs().into_iter().filter(|v| !is_zero_vec(v)));
    }
    Ok(GradedSubspace::from_vectors(m, &vecs))
}

/// `M / M·rad` with the projection.
pub fn top<F: Field>(m: &GradedModule<F>) -> Result<(GradedModule<F>, GradedMap<F>)> {
    Ok(radical_submodule(m)?.quotient(m))
}

/// `{m : m·rad = 0}` with the inclusion.
pub fn socle<F: Field>(m: &GradedModule<F>) -> Result<(GradedModule<F>, GradedMap<F>)> {
    let rad = jacobson_radical(m.algebra())?;
    let field = m.field();
    let mats: Vec<Matrix<F>> = rad.basis.basis().iter().map(|r| m.action_of(r)).collect();
    let mut vecs = Vec::new();
    for d in m.degree_set() {
        let rows = m.component_indices(d);
        let mut stacked = Matrix::zeros(field, rows.len(), mats.len() * m.dim());
        for (bi, a) in mats.iter().enumerate() {
            for (r, &i) in rows.iter().enumerate() {
                for c in 0..m.dim() {
                    let v = a.get(i, c);
                    if !v.is_zero() {
                        stacked.set(r, bi * m.dim() + c, v.clone());
                    }
                }
            }
        }
        for k in stacked.left_kernel_basis() {
            let mut v = vec![F::zero(field); m.dim()];
            for (x, &i) in k.into_iter().zip(&rows) {
                v[i] = x;
            }
            vecs.push(v);
        }
    }
    Ok(GradedSubspace::from_vectors(m, &vecs).submodule(m))
}

/// One summand `P_index(shift)` of a projective cover (index starts at 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CoverSummand {
    pub index: usize,
    pub shift: i32,
}

#[derive(Clone, Debug)]
pub struct ProjectiveCover<F> {
    pub module: GradedModule<F>,
    pub epi: GradedMap<F>,
    pub summands: Vec<CoverSummand>,
}

impl<F: Field> ProjectiveCover<F> {
    pub fn kernel(&self) -> GradedSubspace<F> {
        self.epi.kernel()
    }
}

/// Minimal graded projective cover `⊕ P_i(−d) ↠ M`.
///
/// Generators are chosen greedily among the vectors `b·e_i` outside
/// `M·rad` plus the generators already chosen. Minimality (kernel inside
/// `P·rad`) is asserted.
pub fn projective_cover<F: Field>(m: &GradedModule<F>) -> Result<ProjectiveCover<F>> {
    let a = m.algebra();
    let es = a.idempotents().ok_or(Error::MissingIdempotents)?;
    let mut covered = radical_submodule(m)?;
    let mut gens: Vec<(usize, i32, Vec<F>)> = Vec::new();
    for (i, e) in es.iter().enumerate() {
        let act = m.action_of(e);
        for d in m.degree_set() {
            for b in m.component_indices(d) {
                let v = act.row(b).to_vec();
                if !is_zero_vec(&v) && covered.insert(&v) {
                    gens.push((i + 1, d, v));
                }
            }
        }
    }
    let field = m.field();
    let mut parts = Vec::with_capacity(gens.len());
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut summands = Vec::with_capacity(gens.len());
    for (i, d, v) in &gens {
        parts.push(shift(&projective(a, *i)?, -d));
        summands.push(CoverSummand { index: *i, shift: -d });
        for p in projective_basis(a, *i)?.row_vecs() {
            rows.push(m.act(v, &p));
        }
    }
    let module = if parts.is_empty() { GradedModule::zero(a) } else { direct_sum(a, &parts)? };
    let epi = GradedMap::from_raw(module.clone(), m.clone(), Matrix::from_rows(field, m.dim(), rows)?);
    if !epi.is_surjective() {
        return Err(Error::VerificationFailed("projective cover is not surjective".into()));
    }
    let cover = ProjectiveCover { module, epi, summands };
    let prad = radical_submodule(&cover.module)?;
    if !cover.kernel().is_subspace_of(&prad) {
        return Err(Error::VerificationFailed("projective cover is not minimal".into()));
    }
    Ok(cover)
}

pub fn is_projective<F: Field>(m: &GradedModule<F>) -> Result<bool> {
    Ok(projective_cover(m)?.module.dim() == m.dim())
}

/// Whether `Λ*` is projective, cached on the algebra.
pub fn is_self_injective<F: Field>(a: &AlgebraRef<F>) -> Result<bool> {
    if let Some(v) = a.cached_self_injective().get() {
        return Ok(*v);
    }
    let v = is_projective(&dual_of_regular(a))?;
    let _ = a.cached_self_injective().set(v);
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct InjectiveEnvelope<F> {
    pub module: GradedModule<F>,
    pub mono: GradedMap<F>,
}

/// `M ↪ D(P(DM))`, the dual of the projective cover of the dual over the
/// opposite algebra. The socle of the envelope lies in the image.
pub fn injective_envelope<F: Field>(m: &GradedModule<F>) -> Result<InjectiveEnvelope<F>> {
    if !is_self_injective(m.algebra())? {
        return Err(Error::NotSelfInjective);
    }
    let dm = dual_module(m);
    let cover = projective_cover(&dm)?;
    let module = dual_module(&cover.module);
    let mono = GradedMap::from_raw(m.clone(), module.clone(), cover.epi.matrix().transpose());
    debug_assert!(module.algebra().same_as(m.algebra()));
    if !mono.is_injective() {
        return Err(Error::VerificationFailed("injective envelope is not injective".into()));
    }
    let (_, soc) = socle(&module)?;
    if !soc.image().is_subspace_of(&mono.image()) {
        return Err(Error::VerificationFailed("injective envelope is not minimal".into()));
    }
    Ok(InjectiveEnvelope { module, mono })
}
