//! Finite-dimensional graded right modules.
//!
//! A module stores one action matrix per algebra basis element in row-vector
//! convention: `m ↦ m·A_b`, so `A_b·A_c = A_{bc}`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{AlgebraRef, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::{is_zero_vec, Matrix};

mod cover;
mod hom;
mod map;
mod sub;

pub use cover::{
    injective_envelope, is_projective, is_self_injective, projective_cover, socle, top, CoverSummand,
    InjectiveEnvelope, ProjectiveCover,
};
pub use hom::{find_isomorphism, hom_enriched, hom_graded, HomSpace};
pub(crate) use cover::radical_submodule;
pub use map::GradedMap;
pub use sub::GradedSubspace;

struct ModuleData<F> {
    algebra: AlgebraRef<F>,
    degrees: Vec<i32>,
    action: Vec<Matrix<F>>,
    generator_actions: OnceLock<Vec<(i32, Matrix<F>)>>,
}

/// A graded right module. Cloning is cheap.
#[derive(Clone)]
pub struct GradedModule<F> {
    inner: Arc<ModuleData<F>>,
}

impl<F> fmt::Debug for GradedModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule")
            .field("dim", &self.inner.degrees.len())
            .field("degrees", &self.inner.degrees)
            .finish()
    }
}

impl<F: Field> PartialEq for GradedModule<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.algebra().same_as(other.algebra())
                && self.inner.degrees == other.inner.degrees
                && self.inner.action == other.inner.action)
    }
}

impl<F: Field> GradedModule<F> {
    /// Validated constructor: checks the module axioms exhaustively.
    pub fn new(algebra: AlgebraRef<F>, degrees: Vec<i32>, action: Vec<Matrix<F>>) -> Result<Self> {
        let m = Self::from_raw(algebra, degrees, action);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_raw(algebra: AlgebraRef<F>, degrees: Vec<i32>, action: Vec<Matrix<F>>) -> Self {
        GradedModule {
            inner: Arc::new(ModuleData { algebra, degrees, action, generator_actions: OnceLock::new() }),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.algebra();
        let n = a.dim();
        let d = self.dim();
        if self.inner.action.len() != n {
            return Err(Error::InvalidModule(format!("{} action matrices for an algebra of dim {n}", self.inner.action.len())));
        }
        for (k, m) in self.inner.action.iter().enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(Error::InvalidModule(format!("action matrix {k} is not {d}x{d}")));
            }
            if m.field() != a.field() {
                return Err(Error::FieldMismatch);
            }
            for r in 0..d {
                for c in 0..d {
                    if !m.get(r, c).is_zero() && self.degree(c) != self.degree(r) + a.degree(k) {
                        return Err(Error::InvalidModule(format!("action of basis element {k} is not homogeneous")));
                    }
                }
            }
        }
        if self.action_of(a.unit()) != Matrix::identity(a.field(), d) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.inner.action[i].mul(&self.inner.action[j]);
                let mut rhs = Matrix::zeros(a.field(), d, d);
                for (k, c) in a.product(i, j) {
                    rhs.add_scaled(c, &self.inner.action[*k]);
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!("action is not multiplicative on ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &AlgebraRef<F>) -> Self {
        let field = algebra.field();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(field, 0, 0)).collect();
        Self::from_raw(algebra.clone(), Vec::new(), action)
    }

    pub fn algebra(&self) -> &AlgebraRef<F> {
        &self.inner.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.inner.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.inner.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn degrees(&self) -> &[i32] {
        &self.inner.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.inner.degrees[i]
    }

    pub fn degree_set(&self) -> BTreeSet<i32> {
        self.inner.degrees.iter().copied().collect()
    }

    pub fn component_indices(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.inner.degrees[i] == d).collect()
    }

    pub fn component_dim(&self, d: i32) -> usize {
        self.inner.degrees.iter().filter(|&&x| x == d).count()
    }

    /// Sorted degree multiset.
    pub fn degree_multiset(&self) -> Vec<i32> {
        let mut v = self.inner.degrees.clone();
        v.sort_unstable();
        v
    }

    pub fn action(&self, k: usize) -> &Matrix<F> {
        &self.inner.action[k]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.inner.action
    }

    /// Matrix of `m ↦ m·x` for an algebra element `x`.
    pub fn action_of(&self, x: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (k, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, &self.inner.action[k]);
            }
        }
        out
    }

    /// `v·x`
    pub fn act(&self, v: &[F], x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(self.field()); self.dim()];
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = self.inner.action[k].left_apply(v);
            for (o, y) in out.iter_mut().zip(w) {
                o.add_mul_assign(c, &y);
            }
        }
        out
    }

    /// Actions of the homogeneous components of the algebra generators, with
    /// their degrees. A subspace closed under these is a submodule.
    pub fn generator_actions(&self) -> &[(i32, Matrix<F>)] {
        self.inner.generator_actions.get_or_init(|| {
            let a = self.algebra();
            let mut out = Vec::new();
            for g in a.generators() {
                for d in a.degree_set() {
                    let comp: Vec<F> = g
                        .iter()
                        .enumerate()
                        .map(|(k, x)| if a.degree(k) == d { x.clone() } else { F::zero(a.field()) })
                        .collect();
                    if !is_zero_vec(&comp) {
                        out.push((d, self.action_of(&comp)));
                    }
                }
            }
            out
        })
    }

    pub fn unit_vector(&self, i: usize) -> Vec<F> {
        crate::algebra::unit_vector(self.field(), self.dim(), i)
    }

    pub(crate) fn check_same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra().same_as(other.algebra()) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

/// `Λ` acting on itself by right multiplication.
pub fn regular<F: Field>(a: &AlgebraRef<F>) -> GradedModule<F> {
    let action = (0..a.dim()).map(|k| a.right_mult_matrix(&a.basis_vector(k))).collect();
    GradedModule::from_raw(a.clone(), a.degrees().to_vec(), action)
}

/// `Λ* = Hom_k(Λ, k)` with `(f·b)(x) = f(bx)` and `(Λ*)_i = (Λ_{−i})*`.
pub fn dual_of_regular<F: Field>(a: &AlgebraRef<F>) -> GradedModule<F> {
    let action = (0..a.dim()).map(|k| a.left_mult_matrix(&a.basis_vector(k)).transpose()).collect();
    GradedModule::from_raw(a.clone(), a.degrees().iter().map(|d| -d).collect(), action)
}

/// `M(j)` with `M(j)_d = M_{j+d}`.
pub fn shift<F: Field>(m: &GradedModule<F>, j: i32) -> GradedModule<F> {
    if j == 0 {
        return m.clone();
    }
    GradedModule::from_raw(
        m.algebra().clone(),
        m.degrees().iter().map(|d| d - j).collect(),
        m.inner.action.clone(),
    )
}

pub fn direct_sum<F: Field>(algebra: &AlgebraRef<F>, parts: &[GradedModule<F>]) -> Result<GradedModule<F>> {
    for p in parts {
        if !p.algebra().same_as(algebra) {
            return Err(Error::AlgebraMismatch);
        }
    }
    if parts.len() == 1 {
        return Ok(parts[0].clone());
    }
    let field = algebra.field();
    let total: usize = parts.iter().map(|p| p.dim()).sum();
    let degrees = parts.iter().flat_map(|p| p.degrees().iter().copied()).collect();
    let action = (0..algebra.dim())
        .map(|k| {
            let mut m = Matrix::zeros(field, total, total);
            let mut off = 0;
            for p in parts {
                let a = p.action(k);
                for r in 0..p.dim() {
                    for c in 0..p.dim() {
                        let v = a.get(r, c);
                        if !v.is_zero() {
                            m.set(off + r, off + c, v.clone());
                        }
                    }
                }
                off += p.dim();
            }
            m
        })
        .collect();
    Ok(GradedModule::from_raw(algebra.clone(), degrees, action))
}

/// The k-dual `M*`, a right module over the opposite algebra with negated
/// degrees.
pub fn dual_module<F: Field>(m: &GradedModule<F>) -> GradedModule<F> {
    let op = m.algebra().opposite();
    GradedModule::from_raw(
        op,
        m.degrees().iter().map(|d| -d).collect(),
        m.actions().iter().map(|a| a.transpose()).collect(),
    )
}

fn idempotent<F: Field>(a: &GradedAlgebra<F>, i: usize) -> Result<&[F]> {
    let es = a.idempotents().ok_or(Error::MissingIdempotents)?;
    if i == 0 || i > es.len() {
        return Err(Error::IndexOutOfRange { index: i, count: es.len() });
    }
    Ok(&es[i - 1])
}

/// Echelonized homogeneous basis of `e_iΛ` (rows are elements of `Λ`).
pub fn projective_basis<F: Field>(a: &AlgebraRef<F>, i: usize) -> Result<&Matrix<F>> {
    idempotent(a, i)?;
    let all = a.cached_projective_bases().get_or_init(|| {
        let reg = regular(a);
        a.idempotents()
            .unwrap()
            .iter()
            .map(|e| {
                let rows: Vec<Vec<F>> = (0..a.dim()).map(|k| a.mul(e, &a.basis_vector(k))).collect();
                GradedSubspace::from_vectors(&reg, &rows).basis_matrix()
            })
            .collect()
    });
    Ok(&all[i - 1])
}

/// `P_i = e_iΛ` (indices start at 1).
pub fn projective<F: Field>(a: &AlgebraRef<F>, i: usize) -> Result<GradedModule<F>> {
    let basis = projective_basis(a, i)?;
    let reg = regular(a);
    let sub = GradedSubspace::from_vectors(&reg, &basis.row_vecs());
    Ok(sub.submodule(&reg).0)
}

/// `S_i`, the top of `P_i`, concentrated in degree 0.
pub fn simple<F: Field>(a: &AlgebraRef<F>, i: usize) -> Result<GradedModule<F>> {
    let p = projective(a, i)?;
    Ok(top(&p)?.0)
}

/// `M_{≥n}` with its inclusion into `M`.
pub fn truncate_ge<F: Field>(m: &GradedModule<F>, n: i32) -> Result<(GradedModule<F>, GradedMap<F>)> {
    if !m.algebra().is_non_negatively_graded() {
        return Err(Error::NotNonNegativelyGraded);
    }
    let keep: Vec<usize> = (0..m.dim()).filter(|&i| m.degree(i) >= n).collect();
    let sub = coordinate_module(m, &keep);
    let mut inc = Matrix::zeros(m.field(), keep.len(), m.dim());
    for (r, &c) in keep.iter().enumerate() {
        inc.set(r, c, F::one(m.field()));
    }
    let map = GradedMap::from_raw(sub.clone(), m.clone(), inc);
    Ok((sub, map))
}

/// `M_{≤n} = M / M_{≥n+1}` with the canonical projection.
pub fn truncate_le<F: Field>(m: &GradedModule<F>, n: i32) -> Result<(GradedModule<F>, GradedMap<F>)> {
    if !m.algebra().is_non_negatively_graded() {
        return Err(Error::NotNonNegativelyGraded);
    }
    let keep: Vec<usize> = (0..m.dim()).filter(|&i| m.degree(i) <= n).collect();
    let quo = coordinate_module(m, &keep);
    let mut proj = Matrix::zeros(m.field(), m.dim(), keep.len());
    for (c, &r) in keep.iter().enumerate() {
        proj.set(r, c, F::one(m.field()));
    }
    let map = GradedMap::from_raw(m.clone(), quo.clone(), proj);
    Ok((quo, map))
}

/// Restriction of the action to a set of coordinates; valid when those
/// coordinates span a submodule or complement one.
fn coordinate_module<F: Field>(m: &GradedModule<F>, keep: &[usize]) -> GradedModule<F> {
    let degrees = keep.iter().map(|&i| m.degree(i)).collect();
    let action = m.actions().iter().map(|a| a.select(keep, keep)).collect();
    GradedModule::from_raw(m.algebra().clone(), degrees, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, Family};
    use crate::field::Rat;

    fn alg(f: Family, n: usize) -> AlgebraRef<Rat> {
        Arc::new(builtin(f, n, FieldSpec::RATIONALS).unwrap())
    }

    #[test]
    fn regular_and_dual_satisfy_the_axioms() {
        for (f, n) in [(Family::TruncatedPolynomial, 3), (Family::PreprojectiveA, 3), (Family::Exterior, 2)] {
            let a = alg(f, n);
            regular(&a).validate().unwrap();
            dual_of_regular(&a).validate().unwrap();
            dual_module(&regular(&a)).validate().unwrap();
        }
    }

    #[test]
    fn projectives_and_simples() {
        let a = alg(Family::TruncatedPolynomial, 4);
        assert_eq!(projective(&a, 1).unwrap().dim(), 4);
        let b = alg(Family::PreprojectiveA, 2);
        let p1 = projective(&b, 1).unwrap();
        p1.validate().unwrap();
        assert_eq!(p1.dim(), 2);
        let s1 = simple(&b, 1).unwrap();
        assert_eq!(s1.dim(), 1);
        assert_eq!(s1.degrees(), &[0]);
        assert!(matches!(projective(&b, 3), Err(Error::IndexOutOfRange { index: 3, count: 2 })));
        assert!(matches!(projective(&b, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn shifts_compose() {
        let a = alg(Family::TruncatedPolynomial, 3);
        let r = regular(&a);
        assert_eq!(shift(&r, 0), r);
        assert_eq!(shift(&shift(&r, 2), -5).degrees(), shift(&r, -3).degrees());
        assert_eq!(shift(&r, 1).degree_multiset(), vec![-1, 0, 1]);
    }

    #[test]
    fn truncations() {
        let a = alg(Family::TruncatedPolynomial, 2);
        let (t, p) = truncate_le(&regular(&a), 0).unwrap();
        assert_eq!(t.dim(), 1);
        p.validate().unwrap();
        let b = alg(Family::TruncatedPolynomial, 3);
        let (t, _) = truncate_le(&shift(&regular(&b), 1), 0).unwrap();
        t.validate().unwrap();
        assert_eq!(t.degree_multiset(), vec![-1, 0]);
        let r = regular(&b);
        for n in -2..4 {
            let (le, _) = truncate_le(&r, n).unwrap();
            let (ge, inc) = truncate_ge(&r, n + 1).unwrap();
            inc.validate().unwrap();
            assert_eq!(le.dim() + ge.dim(), r.dim());
        }
        assert_eq!(truncate_ge(&r, 0).unwrap().0.dim(), 3);
    }

    #[test]
    fn dual_degrees_are_negated() {
        let a = alg(Family::TruncatedPolynomial, 2);
        let d = dual_module(&regular(&a));
        assert_eq!(d.degree_multiset(), vec![-1, 0]);
        let dd = dual_module(&d);
        assert!(dd.algebra().same_as(&a));
        assert_eq!(dd.degree_multiset(), regular(&a).degree_multiset());
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let a = alg(Family::TruncatedPolynomial, 2);
        let f = a.field();
        let bad = vec![Matrix::identity(f, 1), Matrix::identity(f, 1)];
        assert!(matches!(GradedModule::new(a.clone(), vec![0], bad), Err(Error::InvalidModule(_))));
        let ok = vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)];
        assert!(GradedModule::new(a, vec![0], ok).is_ok());
    }
}
