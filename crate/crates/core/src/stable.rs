//! The graded stable category: homomorphisms modulo those factoring through
//! projectives, syzygies, cosyzygies and stable Ext tables.
//!
//! A map `M → N` factors through some projective iff it factors through the
//! projective cover `p: P ↠ N`: given `M → Q → N` with `Q` projective, the
//! map `Q → N` lifts along the surjection `p`. So the factoring maps are the
//! image of `Hom(M, P)` under composition with `p`.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraParts, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::module::{hom_graded, injective_envelope, is_self_injective, projective_cover, GradedMap, GradedModule, HomSpace};
use crate::par;

/// `Hom(M, N)` modulo maps factoring through projectives. Subspaces live in
/// the coordinate space of `hom`.
#[derive(Clone, Debug)]
pub struct StableHomSpace<F> {
    pub hom: HomSpace<F>,
    pub factoring: Subspace<F>,
    /// Hom-basis indices whose classes form a basis of the quotient.
    pub representatives: Vec<usize>,
}

impl<F: Field> StableHomSpace<F> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn total_dim(&self) -> usize {
        self.hom.dim()
    }

    /// Class of a map matrix lying in `hom`, in representative coordinates.
    pub fn class_of(&self, m: &Matrix<F>) -> Vec<F> {
        let r = self.factoring.reduce(&self.hom.coordinates(m));
        self.representatives.iter().map(|&i| r[i].clone()).collect()
    }

    pub fn representative_maps(&self) -> Vec<GradedMap<F>> {
        self.representatives.iter().map(|&i| self.hom.basis()[i].clone()).collect()
    }
}

/// Maps `M → N` that factor through a projective, as a subspace of the
/// coordinates of `hom_graded(M, N)`.
pub fn factor_through_projectives<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<(HomSpace<F>, Subspace<F>)> {
    let hom = hom_graded(m, n)?;
    let field = m.field();
    if hom.dim() == 0 {
        return Ok((hom, Subspace::zero(field, 0)));
    }
    let cover = projective_cover(n)?;
    let to_p = hom_graded(m, &cover.module)?;
    let images: Vec<Vec<F>> = to_p
        .basis()
        .iter()
        .map(|h| hom.coordinates(&h.matrix().mul(cover.epi.matrix())))
        .collect();
    let factoring = Subspace::span(field, hom.dim(), &images)?;
    Ok((hom, factoring))
}

pub fn stable_hom<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<StableHomSpace<F>> {
    let (hom, factoring) = factor_through_projectives(m, n)?;
    let mut is_pivot = vec![false; hom.dim()];
    for &p in factoring.pivots() {
        is_pivot[p] = true;
    }
    let representatives = (0..hom.dim()).filter(|&i| !is_pivot[i]).collect();
    Ok(StableHomSpace { hom, factoring, representatives })
}

/// `Ω M`, the kernel of the projective cover.
pub fn syzygy<F: Field>(m: &GradedModule<F>) -> Result<GradedModule<F>> {
    let cover = projective_cover(m)?;
    Ok(cover.kernel().submodule(&cover.module).0)
}

/// `Ω⁻¹ M`, the cokernel of the injective envelope.
pub fn cosyzygy<F: Field>(m: &GradedModule<F>) -> Result<GradedModule<F>> {
    let env = injective_envelope(m)?;
    Ok(env.mono.image().quotient(&env.module).0)
}

/// `Ω^i M` for `i ∈ [−k, k]`, computed as two chains.
fn syzygy_ladder<F: Field>(m: &GradedModule<F>, k: usize) -> Result<BTreeMap<i32, GradedModule<F>>> {
    let chains = par::try_map(&[1i32, -1], |&dir| -> Result<Vec<(i32, GradedModule<F>)>> {
        let mut out = Vec::with_capacity(k);
        let mut cur = m.clone();
        for i in 1..=k as i32 {
            cur = if dir > 0 { syzygy(&cur)? } else { cosyzygy(&cur)? };
            out.push((dir * i, cur.clone()));
        }
        Ok(out)
    })?;
    let mut ladder: BTreeMap<i32, GradedModule<F>> = chains.into_iter().flatten().collect();
    ladder.insert(0, m.clone());
    Ok(ladder)
}

fn require_self_injective<F: Field>(m: &GradedModule<F>) -> Result<()> {
    if is_self_injective(m.algebra())? {
        Ok(())
    } else {
        Err(Error::NotSelfInjective)
    }
}

/// Entry `i` is `dim stable_hom(Ω^i M, N)` for `i ∈ [−k, k]`, with `Ω^{-1}`
/// the cosyzygy.
pub fn stable_ext_table<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, k: usize) -> Result<BTreeMap<i32, usize>> {
    require_self_injective(m)?;
    m.check_same_algebra(n)?;
    let ladder: Vec<(i32, GradedModule<F>)> = syzygy_ladder(m, k)?.into_iter().collect();
    let dims = par::try_map(&ladder, |(i, x)| stable_hom(x, n).map(|s| (*i, s.dim())))?;
    Ok(dims.into_iter().collect())
}

/// The same table computed on the second argument: entry `i` is
/// `dim stable_hom(M, Ω^{−i} N)`.
pub fn stable_ext_table_second<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, k: usize) -> Result<BTreeMap<i32, usize>> {
    require_self_injective(m)?;
    m.check_same_algebra(n)?;
    let ladder: Vec<(i32, GradedModule<F>)> = syzygy_ladder(n, k)?.into_iter().collect();
    let dims = par::try_map(&ladder, |(i, y)| stable_hom(m, y).map(|s| (-*i, s.dim())))?;
    Ok(dims.into_iter().collect())
}

/// The stable endomorphism algebra with the stable hom data it was built from.
#[derive(Debug)]
pub struct StableEnd<F> {
    pub algebra: GradedAlgebra<F>,
    pub space: StableHomSpace<F>,
}

impl<F: Field> StableEnd<F> {
    /// Class of an endomorphism matrix as an element of the algebra.
    pub fn class_of(&self, m: &Matrix<F>) -> Vec<F> {
        self.space.class_of(m)
    }
}

/// `End` modulo maps factoring through projectives. Basis: representative
/// maps; product `r_i·r_j = r_i ∘ r_j`; every degree is 0.
pub fn stable_end_algebra<F: Field>(m: &GradedModule<F>) -> Result<StableEnd<F>> {
    let space = stable_hom(m, m)?;
    let algebra = end_algebra_from(&space, |mat| space.class_of(mat))?;
    Ok(StableEnd { algebra, space })
}

/// The full (non-stable) endomorphism algebra of `M`, same conventions.
pub fn end_algebra<F: Field>(m: &GradedModule<F>) -> Result<GradedAlgebra<F>> {
    let hom = hom_graded(m, m)?;
    let space = StableHomSpace {
        representatives: (0..hom.dim()).collect(),
        factoring: Subspace::zero(m.field(), hom.dim()),
        hom,
    };
    end_algebra_from(&space, |mat| space.hom.coordinates(mat))
}

fn end_algebra_from<F: Field>(space: &StableHomSpace<F>, class: impl Fn(&Matrix<F>) -> Vec<F> + Sync) -> Result<GradedAlgebra<F>> {
    let field = space.hom.source().field();
    let reps = space.representative_maps();
    let n = reps.len();
    if n == 0 {
        return Ok(GradedAlgebra::zero_algebra(field));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let products = par::map(&pairs, |&(i, j)| {
        // r_i ∘ r_j: apply r_j first.
        let comp = reps[j].matrix().mul(reps[i].matrix());
        crate::algebra::sparse_from_dense(&class(&comp))
    });
    let mut table = vec![vec![Vec::new(); n]; n];
    for ((i, j), p) in pairs.into_iter().zip(products) {
        table[i][j] = p;
    }
    let dim = space.hom.source().dim();
    let unit = class(&Matrix::identity(field, dim));
    GradedAlgebra::from_parts(AlgebraParts {
        field,
        degrees: vec![0; n],
        table,
        unit,
        idempotents: None,
        labels: None,
        generators: None,
        radical_hint: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, AlgebraRef, Family};
    use crate::field::{FieldSpec, Rat};
    use crate::module::{dual_of_regular, find_isomorphism, projective, regular, shift, simple, truncate_le};
    use std::sync::Arc;

    fn alg(f: Family, n: usize) -> AlgebraRef<Rat> {
        Arc::new(builtin(f, n, FieldSpec::RATIONALS).unwrap())
    }

    #[test]
    fn projectives_vanish_stably() {
        let a = alg(Family::PreprojectiveA, 3);
        let mods = [regular(&a), simple(&a, 2).unwrap(), truncate_le(&regular(&a), 0).unwrap().0];
        for x in &mods {
            assert_eq!(stable_hom(&regular(&a), x).unwrap().dim(), 0);
            assert_eq!(stable_hom(x, &regular(&a)).unwrap().dim(), 0);
            let p = projective(&a, 1).unwrap();
            let (hom, fac) = factor_through_projectives(x, &p).unwrap();
            assert_eq!(fac.dim(), hom.dim());
        }
    }

    #[test]
    fn dual_numbers() {
        let a = alg(Family::TruncatedPolynomial, 2);
        let s = simple(&a, 1).unwrap();
        let (_, fac) = factor_through_projectives(&s, &s).unwrap();
        assert_eq!(fac.dim(), 0);
        assert_eq!(stable_hom(&s, &s).unwrap().dim(), 1);
        let om = syzygy(&s).unwrap();
        assert_eq!(om.degrees(), &[1]);
        assert!(find_isomorphism(&om, &shift(&s, -1), 0).unwrap().is_some());
        let end = stable_end_algebra(&s).unwrap();
        assert_eq!(end.algebra.dim(), 1);
        assert_eq!(syzygy(&regular(&a)).unwrap().dim(), 0);
    }

    #[test]
    fn semisimple_algebras_have_trivial_stable_category() {
        let a = alg(Family::PreprojectiveA, 1);
        let s = simple(&a, 1).unwrap();
        assert_eq!(stable_hom(&s, &s).unwrap().dim(), 0);
        assert_eq!(stable_end_algebra(&s).unwrap().algebra.dim(), 0);
    }

    #[test]
    fn cosyzygy_undoes_syzygy_stably() {
        let a = alg(Family::PreprojectiveA, 3);
        for m in [simple(&a, 1).unwrap(), simple(&a, 2).unwrap(), truncate_le(&shift(&regular(&a), 1), 0).unwrap().0] {
            let back = cosyzygy(&syzygy(&m).unwrap()).unwrap();
            assert_eq!(stable_hom(&back, &back).unwrap().dim(), stable_hom(&m, &m).unwrap().dim());
            assert_eq!(stable_hom(&back, &m).unwrap().dim(), stable_hom(&m, &m).unwrap().dim());
        }
    }

    #[test]
    fn shift_adjunction_on_samples() {
        let a = alg(Family::TruncatedPolynomial, 3);
        let r = regular(&a);
        let mods = [simple(&a, 1).unwrap(), truncate_le(&shift(&r, 1), 0).unwrap().0, shift(&simple(&a, 1).unwrap(), 2)];
        for m in &mods {
            for n in &mods {
                let lhs = stable_hom(&syzygy(m).unwrap(), n).unwrap().dim();
                let rhs = stable_hom(m, &cosyzygy(n).unwrap()).unwrap().dim();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn both_ext_variants_agree() {
        let a = alg(Family::Exterior, 2);
        let r = regular(&a);
        let m = truncate_le(&shift(&r, 1), 0).unwrap().0;
        let s = simple(&a, 1).unwrap();
        for (x, y) in [(&m, &s), (&s, &m), (&s, &s)] {
            assert_eq!(stable_ext_table(x, y, 2).unwrap(), stable_ext_table_second(x, y, 2).unwrap());
        }
        let t = stable_ext_table(&r, &s, 3).unwrap();
        assert!(t.values().all(|&d| d == 0));
    }

    #[test]
    fn end_algebra_of_regular_is_degree_zero_part() {
        let a = alg(Family::PreprojectiveA, 3);
        let e = end_algebra(&regular(&a)).unwrap();
        assert_eq!(e.dim(), a.component_dim(0));
        let d = dual_of_regular(&a);
        assert_eq!(end_algebra(&d).unwrap().dim(), hom_graded(&d, &d).unwrap().dim());
    }
}
