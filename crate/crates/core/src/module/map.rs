use std::fmt;

use super::{GradedModule, GradedSubspace};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A degree-preserving module map `m ↦ m·F` (`F` is `dim source × dim target`).
#[derive(Clone)]
pub struct GradedMap<F> {
    source: GradedModule<F>,
    target: GradedModule<F>,
    matrix: Matrix<F>,
}

impl<F: fmt::Debug> fmt::Debug for GradedMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("matrix", &self.matrix)
            .finish()
    }
}

impl<F: Field> GradedMap<F> {
    pub fn new(source: GradedModule<F>, target: GradedModule<F>, matrix: Matrix<F>) -> Result<Self> {
        let m = Self::from_raw(source, target, matrix);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_raw(source: GradedModule<F>, target: GradedModule<F>, matrix: Matrix<F>) -> Self {
        GradedMap { source, target, matrix }
    }

    pub fn validate(&self) -> Result<()> {
        self.source.check_same_algebra(&self.target)?;
        let (s, t) = (self.source.dim(), self.target.dim());
        if self.matrix.rows() != s || self.matrix.cols() != t {
            return Err(Error::DimensionMismatch(format!("map matrix is not {s}x{t}")));
        }
        for r in 0..s {
            for c in 0..t {
                if !self.matrix.get(r, c).is_zero() && self.source.degree(r) != self.target.degree(c) {
                    return Err(Error::InvalidModule("map does not preserve degrees".into()));
                }
            }
        }
        for k in 0..self.source.algebra().dim() {
            let lhs = self.source.action(k).mul(&self.matrix);
            let rhs = self.matrix.mul(self.target.action(k));
            if lhs != rhs {
                return Err(Error::InvalidModule(format!("map does not commute with basis element {k}")));
            }
        }
        Ok(())
    }

    pub fn identity(m: &GradedModule<F>) -> Self {
        Self::from_raw(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &GradedModule<F>, target: &GradedModule<F>) -> Self {
        Self::from_raw(source.clone(), target.clone(), Matrix::zeros(source.field(), source.dim(), target.dim()))
    }

    pub fn source(&self) -> &GradedModule<F> {
        &self.source
    }

    pub fn target(&self) -> &GradedModule<F> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.matrix.left_apply(v)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &GradedMap<F>) -> Result<GradedMap<F>> {
        if self.target.dim() != other.source.dim() {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        self.source.check_same_algebra(&other.target)?;
        Ok(Self::from_raw(self.source.clone(), other.target.clone(), self.matrix.mul(&other.matrix)))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    /// Kernel as a graded subspace of the source, computed degree by degree.
    pub fn kernel(&self) -> GradedSubspace<F> {
        let mut vecs = Vec::new();
        for d in self.source.degree_set() {
            let rows = self.source.component_indices(d);
            let cols = self.target.component_indices(d);
            let block = self.matrix.select(&rows, &cols);
            for k in block.left_kernel_basis() {
                let mut v = vec![F::zero(self.source.field()); self.source.dim()];
                for (x, &i) in k.into_iter().zip(&rows) {
                    v[i] = x;
                }
                vecs.push(v);
            }
        }
        GradedSubspace::from_vectors(&self.source, &vecs)
    }

    pub fn image(&self) -> GradedSubspace<F> {
        GradedSubspace::from_vectors(&self.target, &self.matrix.row_vecs())
    }
}
