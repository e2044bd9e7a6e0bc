use std::collections::BTreeMap;

use super::{GradedMap, GradedModule};
use crate::field::{Field, FieldSpec};
use crate::linalg::{is_zero_vec, Matrix, Subspace};

/// A graded subspace of a module, stored degree by degree. Each piece is an
/// echelonized subspace of the coordinates of that degree, so membership and
/// coordinates are canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace<F> {
    field: FieldSpec,
    ambient: usize,
    pieces: BTreeMap<i32, Piece<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Piece<F> {
    /// Module coordinates of this degree.
    indices: Vec<usize>,
    space: Subspace<F>,
}

impl<F: Field> GradedSubspace<F> {
    pub fn zero(m: &GradedModule<F>) -> Self {
        let mut pieces = BTreeMap::new();
        for d in m.degree_set() {
            let indices = m.component_indices(d);
            let space = Subspace::zero(m.field(), indices.len());
            pieces.insert(d, Piece { indices, space });
        }
        GradedSubspace { field: m.field(), ambient: m.dim(), pieces }
    }

    /// Span of the homogeneous components of `vectors`.
    pub fn from_vectors(m: &GradedModule<F>, vectors: &[Vec<F>]) -> Self {
        let mut s = Self::zero(m);
        s.extend(vectors);
        s
    }

    /// The span of all coordinates of the given degrees.
    pub fn coordinate(m: &GradedModule<F>, keep: impl Fn(i32) -> bool) -> Self {
        let mut s = Self::zero(m);
        for (d, p) in s.pieces.iter_mut() {
            if keep(*d) {
                p.space = Subspace::full(m.field(), p.indices.len());
            }
        }
        s
    }

    pub fn extend(&mut self, vectors: &[Vec<F>]) {
        let field = self.field;
        for p in self.pieces.values_mut() {
            let mut rows: Vec<Vec<F>> = p.space.basis().to_vec();
            let before = rows.len();
            for v in vectors {
                let comp: Vec<F> = p.indices.iter().map(|&i| v[i].clone()).collect();
                if !is_zero_vec(&comp) && !p.space.contains(&comp) {
                    rows.push(comp);
                }
            }
            if rows.len() > before {
                p.space = Subspace::span(field, p.indices.len(), &rows).expect("consistent");
            }
        }
    }

    /// Add one homogeneous vector; returns whether the subspace grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let before = self.dim();
        self.extend(std::slice::from_ref(&v.to_vec()));
        self.dim() > before
    }

    pub fn dim(&self) -> usize {
        self.pieces.values().map(|p| p.space.dim()).sum()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim_in_degree(&self, d: i32) -> usize {
        self.pieces.get(&d).map_or(0, |p| p.space.dim())
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// Remainder of `v` modulo the subspace (pivot coordinates cleared).
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for p in self.pieces.values() {
            if p.space.dim() == 0 {
                continue;
            }
            let comp: Vec<F> = p.indices.iter().map(|&i| v[i].clone()).collect();
            let r = p.space.reduce(&comp);
            for (x, &i) in r.into_iter().zip(&p.indices) {
                out[i] = x;
            }
        }
        out
    }

    /// Homogeneous basis in ambient coordinates: degrees ascending, echelon
    /// order within a degree.
    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        let mut out = Vec::with_capacity(self.dim());
        for p in self.pieces.values() {
            for b in p.space.basis() {
                let mut v = vec![F::zero(self.field); self.ambient];
                for (x, &i) in b.iter().zip(&p.indices) {
                    v[i] = x.clone();
                }
                out.push(v);
            }
        }
        out
    }

    pub fn basis_degrees(&self) -> Vec<i32> {
        self.pieces.iter().flat_map(|(d, p)| std::iter::repeat_n(*d, p.space.dim())).collect()
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.field, self.ambient, self.basis_vectors()).expect("consistent")
    }

    /// Coordinates of `v` (assumed to lie in the subspace) in the basis of
    /// [`basis_vectors`](Self::basis_vectors).
    pub fn coordinates(&self, v: &[F]) -> Vec<F> {
        let mut out = Vec::with_capacity(self.dim());
        for p in self.pieces.values() {
            for &pc in p.space.pivots() {
                out.push(v[p.indices[pc]].clone());
            }
        }
        out
    }

    /// Ambient coordinates that index the quotient basis.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.dim());
        for p in self.pieces.values() {
            let mut is_pivot = vec![false; p.indices.len()];
            for &pc in p.space.pivots() {
                is_pivot[pc] = true;
            }
            out.extend(p.indices.iter().enumerate().filter(|(c, _)| !is_pivot[*c]).map(|(_, &i)| i));
        }
        out
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.extend(&other.basis_vectors());
        s
    }

    /// Smallest submodule of `m` containing this subspace.
    pub fn closure(&self, m: &GradedModule<F>) -> Self {
        let mut s = self.clone();
        let mut frontier = s.basis_vectors();
        while !frontier.is_empty() {
            let mut images = Vec::new();
            for v in &frontier {
                for (_, g) in m.generator_actions() {
                    let w = g.left_apply(v);
                    if !is_zero_vec(&w) {
                        images.push(w);
                    }
                }
            }
            let before = s.dim();
            s.extend(&images);
            if s.dim() == before {
                break;
            }
            frontier = images;
        }
        s
    }

    /// The subspace as a module (it must be a submodule) with its inclusion.
    pub fn submodule(&self, m: &GradedModule<F>) -> (GradedModule<F>, GradedMap<F>) {
        let basis = self.basis_vectors();
        let action = m
            .actions()
            .iter()
            .map(|a| {
                let rows = basis.iter().map(|b| self.coordinates(&a.left_apply(b))).collect();
                Matrix::from_rows(self.field, basis.len(), rows).expect("consistent")
            })
            .collect();
        let sub = GradedModule::from_raw(m.algebra().clone(), self.basis_degrees(), action);
        let inc = Matrix::from_rows(self.field, self.ambient, basis).expect("consistent");
        let map = GradedMap::from_raw(sub.clone(), m.clone(), inc);
        (sub, map)
    }

    /// `m / self` (it must be a submodule) with the canonical projection.
    /// The quotient basis is the set of non-pivot coordinates.
    pub fn quotient(&self, m: &GradedModule<F>) -> (GradedModule<F>, GradedMap<F>) {
        let keep = self.complement_indices();
        let project = |v: &[F]| -> Vec<F> {
            let r = self.reduce(v);
            keep.iter().map(|&i| r[i].clone()).collect()
        };
        let action = m
            .actions()
            .iter()
            .map(|a| {
                let rows = keep.iter().map(|&i| project(a.row(i))).collect();
                Matrix::from_rows(self.field, keep.len(), rows).expect("consistent")
            })
            .collect();
        let degrees = keep.iter().map(|&i| m.degree(i)).collect();
        let quo = GradedModule::from_raw(m.algebra().clone(), degrees, action);
        let rows = (0..m.dim()).map(|i| project(&m.unit_vector(i))).collect();
        let proj = Matrix::from_rows(self.field, keep.len(), rows).expect("consistent");
        let map = GradedMap::from_raw(m.clone(), quo.clone(), proj);
        (quo, map)
    }
}
