//! Finite-dimensional graded algebras given by structure constants.
//!
//! Elements are dense coefficient vectors over the basis. The product table
//! stores `b_i · b_j` as a sparse vector.

use std::collections::BTreeSet;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::{is_zero_vec, Matrix, Subspace};

mod gldim;
mod idempotents;
mod quiver;
mod radical;

pub use gldim::{global_dimension_bounded, GlobalDimension};
pub use idempotents::{primitive_idempotents, DEFAULT_SEED};
pub use quiver::{builtin, compile_quiver, Arrow, Family, QuiverPresentation, RelationTerm};
pub use radical::{jacobson_radical, RadicalData};

pub type SparseVec<F> = Vec<(usize, F)>;
pub type AlgebraRef<F> = Arc<GradedAlgebra<F>>;

/// Raw data for [`GradedAlgebra::from_parts`].
#[derive(Clone, Debug)]
pub struct AlgebraParts<F> {
    pub field: FieldSpec,
    pub degrees: Vec<i32>,
    /// `table[i][j]` is the product `b_i · b_j`.
    pub table: Vec<Vec<SparseVec<F>>>,
    pub unit: Vec<F>,
    pub idempotents: Option<Vec<Vec<F>>>,
    pub labels: Option<Vec<String>>,
    /// Homogeneous elements generating the algebra together with the unit.
    /// `None` means "use the whole basis".
    pub generators: Option<Vec<Vec<F>>>,
    /// A spanning set of the Jacobson radical when it is known from the
    /// presentation (the arrow ideal of a quiver algebra).
    pub radical_hint: Option<Vec<Vec<F>>>,
}

pub struct GradedAlgebra<F> {
    field: FieldSpec,
    degrees: Vec<i32>,
    table: Vec<Vec<SparseVec<F>>>,
    unit: Vec<F>,
    idempotents: Option<Vec<Vec<F>>>,
    labels: Option<Vec<String>>,
    generators: Vec<Vec<F>>,
    radical_hint: Option<Vec<Vec<F>>>,
    id: u64,
    radical: OnceLock<Result<RadicalData<F>>>,
    projective_bases: OnceLock<Vec<Matrix<F>>>,
    self_injective: OnceLock<bool>,
    opposite: OnceLock<AlgebraRef<F>>,
    opposite_of: Option<Weak<GradedAlgebra<F>>>,
}

impl<F> std::fmt::Debug for GradedAlgebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("field", &self.field)
            .field("dim", &self.degrees.len())
            .field("degrees", &self.degrees)
            .field("idempotents", &self.idempotents.as_ref().map(|e| e.len()))
            .finish()
    }
}

impl<F: Field> Clone for GradedAlgebra<F> {
    /// Clones the data; caches start empty.
    fn clone(&self) -> Self {
        GradedAlgebra::from_parts_unchecked(self.to_parts()).expect("valid algebra")
    }
}

impl<F: Field> GradedAlgebra<F> {
    /// Validate and build. Associativity, the unit laws, multiplicativity of
    /// the grading and the idempotent conditions are checked exhaustively.
    pub fn from_parts(parts: AlgebraParts<F>) -> Result<Self> {
        let a = Self::from_parts_unchecked(parts)?;
        a.validate()?;
        Ok(a)
    }

    pub(crate) fn from_parts_unchecked(parts: AlgebraParts<F>) -> Result<Self> {
        let AlgebraParts {
            field,
            degrees,
            table,
            unit,
            idempotents,
            labels,
            generators,
            radical_hint,
        } = parts;
        let n = degrees.len();
        if !F::supports(field) {
            return Err(Error::FieldMismatch);
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidAlgebra(format!("product table is not {n}x{n}")));
        }
        if unit.len() != n {
            return Err(Error::InvalidAlgebra("unit has wrong length".into()));
        }
        for row in &table {
            for entry in row {
                for (k, v) in entry {
                    if *k >= n {
                        return Err(Error::InvalidAlgebra(format!("basis index {k} out of range")));
                    }
                    if v.spec() != field {
                        return Err(Error::FieldMismatch);
                    }
                }
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(Error::InvalidAlgebra("label count differs from dimension".into()));
            }
        }
        let check_len = |vs: &[Vec<F>], what: &str| -> Result<()> {
            if vs.iter().any(|v| v.len() != n) {
                return Err(Error::InvalidAlgebra(format!("{what} vector has wrong length")));
            }
            Ok(())
        };
        if let Some(e) = &idempotents {
            check_len(e, "idempotent")?;
        }
        if let Some(r) = &radical_hint {
            check_len(r, "radical")?;
        }
        let generators = match generators {
            Some(g) => {
                check_len(&g, "generator")?;
                g
            }
            None => (0..n).map(|i| unit_vector(field, n, i)).collect(),
        };
        // Drop zero entries so the table is canonical.
        let table: Vec<Vec<SparseVec<F>>> = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| {
                        let mut e: SparseVec<F> = e.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                        e.sort_by_key(|(k, _)| *k);
                        e
                    })
                    .collect()
            })
            .collect();
        let mut h = DefaultHasher::new();
        field.hash(&mut h);
        degrees.hash(&mut h);
        table.hash(&mut h);
        unit.hash(&mut h);
        Ok(GradedAlgebra {
            field,
            degrees,
            table,
            unit,
            idempotents,
            labels,
            generators,
            radical_hint,
            id: h.finish(),
            radical: OnceLock::new(),
            projective_bases: OnceLock::new(),
            self_injective: OnceLock::new(),
            opposite: OnceLock::new(),
            opposite_of: None,
        })
    }

    /// Exhaustive structural checks.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in &self.table[i][j] {
                    if self.degrees[*k] != self.degrees[i] + self.degrees[j] {
                        return Err(Error::InvalidAlgebra(format!(
                            "product of basis elements {i} and {j} is not homogeneous of degree {}",
                            self.degrees[i] + self.degrees[j]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let mut left = vec![F::zero(self.field); n];
                    for (m, c) in ij {
                        for (r, d) in &self.table[*m][k] {
                            left[*r].add_mul_assign(c, d);
                        }
                    }
                    let mut right = vec![F::zero(self.field); n];
                    for (m, c) in &self.table[j][k] {
                        for (r, d) in &self.table[i][*m] {
                            right[*r].add_mul_assign(c, d);
                        }
                    }
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            let b = unit_vector(self.field, n, i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::InvalidAlgebra(format!("unit law fails on basis element {i}")));
            }
        }
        if let Some(es) = &self.idempotents {
            let mut sum = vec![F::zero(self.field); n];
            for (i, e) in es.iter().enumerate() {
                if !self.is_homogeneous_of_degree(e, 0) {
                    return Err(Error::InvalidAlgebra(format!("idempotent {i} not in degree 0")));
                }
                for (j, f) in es.iter().enumerate() {
                    let p = self.mul(e, f);
                    let expected = if i == j { e.clone() } else { vec![F::zero(self.field); n] };
                    if p != expected {
                        return Err(Error::InvalidAlgebra(format!(
                            "idempotents {i} and {j} are not orthogonal idempotents"
                        )));
                    }
                }
                for (s, x) in sum.iter_mut().zip(e) {
                    *s = s.add(x);
                }
            }
            if sum != self.unit {
                return Err(Error::InvalidAlgebra("idempotents do not sum to the unit".into()));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.id == other.id && self.degrees == other.degrees)
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn idempotents(&self) -> Option<&[Vec<F>]> {
        self.idempotents.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("b{i}"),
        }
    }

    pub fn generators(&self) -> &[Vec<F>] {
        &self.generators
    }

    pub fn radical_hint(&self) -> Option<&[Vec<F>]> {
        self.radical_hint.as_deref()
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        unit_vector(self.field, self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vec<F> {
        vec![F::zero(self.field); self.dim()]
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = self.zero_vector();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in &self.table[i][j] {
                    out[*k].add_mul_assign(&ab, c);
                }
            }
        }
        out
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_non_negatively_graded(&self) -> bool {
        self.degrees.iter().all(|&d| d >= 0)
    }

    pub fn is_trivially_graded(&self) -> bool {
        self.degrees.iter().all(|&d| d == 0)
    }

    /// `max { i | Λ_i ≠ 0 }`, or `None` for the zero algebra.
    pub fn sup_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().max()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().min()
    }

    pub fn component_dim(&self, d: i32) -> usize {
        self.degrees.iter().filter(|&&x| x == d).count()
    }

    pub fn component_indices(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn degree_set(&self) -> BTreeSet<i32> {
        self.degrees.iter().copied().collect()
    }

    pub fn is_homogeneous_of_degree(&self, v: &[F], d: i32) -> bool {
        v.iter().enumerate().all(|(i, x)| x.is_zero() || self.degrees[i] == d)
    }

    /// Degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, v: &[F]) -> Option<i32> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return None,
                _ => {}
            }
        }
        deg
    }

    /// Matrix of `v ↦ v·x` (right multiplication) in row-vector convention.
    pub fn right_mult_matrix(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::<F>::zeros(self.field, n, n);
        for j in 0..n {
            for (i, a) in x.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, c) in &self.table[j][i] {
                    let v = m.get(j, *k).add(&a.mul(c));
                    m.set(j, *k, v);
                }
            }
        }
        m
    }

    /// Matrix of `v ↦ x·v` (left multiplication) in row-vector convention.
    pub fn left_mult_matrix(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::<F>::zeros(self.field, n, n);
        for j in 0..n {
            for (i, a) in x.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, c) in &self.table[i][j] {
                    let v = m.get(j, *k).add(&a.mul(c));
                    m.set(j, *k, v);
                }
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// The center `{z | z·g = g·z for every generator g}`.
    pub fn center(&self) -> Subspace<F> {
        let n = self.dim();
        if n == 0 {
            return Subspace::zero(self.field, 0);
        }
        let gens = &self.generators;
        let mut m = Matrix::zeros(self.field, n, n * gens.len().max(1));
        for (gi, g) in gens.iter().enumerate() {
            for i in 0..n {
                let b = self.basis_vector(i);
                let d: Vec<F> = self
                    .mul(&b, g)
                    .iter()
                    .zip(self.mul(g, &b))
                    .map(|(x, y)| x.sub(&y))
                    .collect();
                for (k, v) in d.into_iter().enumerate() {
                    m.set(i, gi * n + k, v);
                }
            }
        }
        Subspace::span(self.field, n, &m.left_kernel_basis()).expect("consistent")
    }

    /// The subalgebra spanned by the degree-0 basis elements, with the list of
    /// basis indices it occupies in `self`.
    pub fn degree_zero_subalgebra(&self) -> Result<(GradedAlgebra<F>, Vec<usize>)> {
        let idx = self.component_indices(0);
        let mut pos = vec![usize::MAX; self.dim()];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new;
        }
        let restrict = |v: &[F]| -> Vec<F> { idx.iter().map(|&i| v[i].clone()).collect() };
        let mut table = Vec::with_capacity(idx.len());
        for &i in &idx {
            let mut row = Vec::with_capacity(idx.len());
            for &j in &idx {
                let mut e = Vec::new();
                for (k, c) in &self.table[i][j] {
                    if pos[*k] == usize::MAX {
                        return Err(Error::NotNonNegativelyGraded);
                    }
                    e.push((pos[*k], c.clone()));
                }
                row.push(e);
            }
            table.push(row);
        }
        if !self.is_homogeneous_of_degree(&self.unit, 0) {
            return Err(Error::InvalidAlgebra("unit is not in degree 0".into()));
        }
        let generators = self
            .generators
            .iter()
            .filter(|g| self.homogeneous_degree(g) == Some(0))
            .map(|g| restrict(g))
            .collect();
        let radical_hint = self.radical_hint.as_ref().map(|r| {
            r.iter()
                .map(|v| restrict(v))
                .filter(|v| !is_zero_vec(v))
                .collect()
        });
        let parts = AlgebraParts {
            field: self.field,
            degrees: vec![0; idx.len()],
            table,
            unit: restrict(&self.unit),
            idempotents: self.idempotents.as_ref().map(|es| es.iter().map(|e| restrict(e)).collect()),
            labels: self.labels.as_ref().map(|l| idx.iter().map(|&i| l[i].clone()).collect()),
            generators: Some(generators),
            radical_hint,
        };
        Ok((GradedAlgebra::from_parts(parts)?, idx))
    }

    /// Same algebra with every basis element placed in degree 0.
    pub fn forget_grading(&self) -> Result<GradedAlgebra<F>> {
        let mut parts = self.to_parts();
        parts.degrees = vec![0; self.dim()];
        GradedAlgebra::from_parts_unchecked(parts)
    }

    pub fn to_parts(&self) -> AlgebraParts<F> {
        AlgebraParts {
            field: self.field,
            degrees: self.degrees.clone(),
            table: self.table.clone(),
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            labels: self.labels.clone(),
            generators: Some(self.generators.clone()),
            radical_hint: self.radical_hint.clone(),
        }
    }

    /// Replace the idempotent set (validated).
    pub fn with_idempotents(&self, idempotents: Vec<Vec<F>>) -> Result<GradedAlgebra<F>> {
        let mut parts = self.to_parts();
        parts.idempotents = Some(idempotents);
        let a = GradedAlgebra::from_parts_unchecked(parts)?;
        a.validate_idempotents()?;
        Ok(a)
    }

    fn validate_idempotents(&self) -> Result<()> {
        let Some(es) = &self.idempotents else { return Ok(()) };
        let n = self.dim();
        let mut sum = vec![F::zero(self.field); n];
        for (i, e) in es.iter().enumerate() {
            if !self.is_homogeneous_of_degree(e, 0) {
                return Err(Error::InvalidAlgebra(format!("idempotent {i} not in degree 0")));
            }
            for (j, f) in es.iter().enumerate() {
                let p = self.mul(e, f);
                let ok = if i == j { &p == e } else { is_zero_vec(&p) };
                if !ok {
                    return Err(Error::InvalidAlgebra(format!(
                        "idempotents {i} and {j} are not orthogonal idempotents"
                    )));
                }
            }
            for (s, x) in sum.iter_mut().zip(e) {
                *s = s.add(x);
            }
        }
        if sum != self.unit {
            return Err(Error::InvalidAlgebra("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// The opposite algebra, cached. The opposite of the opposite is the
    /// original `Arc` while it is alive.
    pub fn opposite(self: &Arc<Self>) -> AlgebraRef<F> {
        if let Some(orig) = self.opposite_of.as_ref().and_then(|w| w.upgrade()) {
            return orig;
        }
        self.opposite
            .get_or_init(|| {
                let n = self.dim();
                let table = (0..n)
                    .map(|i| (0..n).map(|j| self.table[j][i].clone()).collect())
                    .collect();
                let mut parts = self.to_parts();
                parts.table = table;
                let mut op = GradedAlgebra::from_parts_unchecked(parts).expect("opposite of valid algebra");
                op.opposite_of = Some(Arc::downgrade(self));
                if let Some(Ok(r)) = self.radical.get() {
                    let _ = op.radical.set(Ok(r.clone()));
                }
                Arc::new(op)
            })
            .clone()
    }

    /// Quotient by a two-sided ideal. The quotient basis is the set of
    /// non-pivot coordinates of the ideal's echelon basis.
    pub fn quotient(&self, ideal: &Subspace<F>, radical_hint: Option<Vec<Vec<F>>>) -> Result<QuotientAlgebra<F>> {
        let n = self.dim();
        let mut is_pivot = vec![false; n];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let complement: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let project = |v: &[F]| -> Vec<F> {
            let r = ideal.reduce(v);
            complement.iter().map(|&c| r[c].clone()).collect()
        };
        let mut table = Vec::with_capacity(complement.len());
        for &i in &complement {
            let mut row = Vec::with_capacity(complement.len());
            for &j in &complement {
                let mut dense = self.zero_vector();
                for (k, c) in &self.table[i][j] {
                    dense[*k] = c.clone();
                }
                row.push(sparse_from_dense(&project(&dense)));
            }
            table.push(row);
        }
        let idempotents = self.idempotents.as_ref().map(|es| {
            es.iter().map(|e| project(e)).filter(|e| !is_zero_vec(e)).collect()
        });
        let parts = AlgebraParts {
            field: self.field,
            degrees: complement.iter().map(|&c| self.degrees[c]).collect(),
            table,
            unit: project(&self.unit),
            idempotents,
            labels: self.labels.as_ref().map(|l| complement.iter().map(|&c| l[c].clone()).collect()),
            generators: Some(
                self.generators
                    .iter()
                    .map(|g| project(g))
                    .filter(|g| !is_zero_vec(g))
                    .collect(),
            ),
            radical_hint,
        };
        let algebra = GradedAlgebra::from_parts_unchecked(parts)?;
        Ok(QuotientAlgebra { algebra, complement, ideal: ideal.clone() })
    }

    pub(crate) fn cached_radical(&self) -> &OnceLock<Result<RadicalData<F>>> {
        &self.radical
    }

    pub(crate) fn cached_projective_bases(&self) -> &OnceLock<Vec<Matrix<F>>> {
        &self.projective_bases
    }

    pub(crate) fn cached_self_injective(&self) -> &OnceLock<bool> {
        &self.self_injective
    }

    /// The zero algebra (the endomorphism algebra of the zero module).
    pub fn zero_algebra(field: FieldSpec) -> GradedAlgebra<F> {
        GradedAlgebra::from_parts(AlgebraParts {
            field,
            degrees: Vec::new(),
            table: Vec::new(),
            unit: Vec::new(),
            idempotents: Some(Vec::new()),
            labels: None,
            generators: Some(Vec::new()),
            radical_hint: Some(Vec::new()),
        })
        .expect("zero algebra is valid")
    }

    pub fn into_ref(self) -> AlgebraRef<F> {
        Arc::new(self)
    }
}

/// An algebra `A/I` together with the data to move elements between `A` and
/// `A/I`.
#[derive(Debug)]
pub struct QuotientAlgebra<F> {
    pub algebra: GradedAlgebra<F>,
    pub complement: Vec<usize>,
    pub ideal: Subspace<F>,
}

impl<F: Field> QuotientAlgebra<F> {
    pub fn project(&self, v: &[F]) -> Vec<F> {
        let r = self.ideal.reduce(v);
        self.complement.iter().map(|&c| r[c].clone()).collect()
    }

    pub fn lift(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(self.ideal.field()); self.ideal.ambient()];
        for (x, &c) in v.iter().zip(&self.complement) {
            out[c] = x.clone();
        }
        out
    }
}

pub fn unit_vector<F: Field>(field: FieldSpec, n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(field); n];
    v[i] = F::one(field);
    v
}

pub fn sparse_from_dense<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    /// k × k with basis the two idempotents.
    pub(crate) fn k_times_k() -> GradedAlgebra<Rat> {
        let one = Rat::new(1, 1);
        let zero = Rat::new(0, 1);
        GradedAlgebra::from_parts(AlgebraParts {
            field: q(),
            degrees: vec![0, 0],
            table: vec![
                vec![vec![(0, one.clone())], vec![]],
                vec![vec![], vec![(1, one.clone())]],
            ],
            unit: vec![one.clone(), one.clone()],
            idempotents: Some(vec![vec![one.clone(), zero.clone()], vec![zero, one]]),
            labels: None,
            generators: None,
            radical_hint: None,
        })
        .unwrap()
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn rejects_non_associative_tables() {
        // basis 1, x, y with x·y = x but y·x = 0 and x·x = y: (x x) y = y y = 0, x (x y) = x x = y.
        let one = Rat::new(1, 1);
        let mut table = vec![vec![vec![]; 3]; 3];
        for i in 0..3 {
            table[0][i] = vec![(i, one.clone())];
            table[i][0] = vec![(i, one.clone())];
        }
        table[1][2] = vec![(1, one.clone())];
        table[1][1] = vec![(2, one.clone())];
        let parts = AlgebraParts {
            field: q(),
            degrees: vec![0, 0, 0],
            table,
            unit: vec![one, Rat::new(0, 1), Rat::new(0, 1)],
            idempotents: None,
            labels: None,
            generators: None,
            radical_hint: None,
        };
        assert!(matches!(GradedAlgebra::from_parts(parts), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn zero_algebra_is_legal() {
        let z = GradedAlgebra::<Rat>::zero_algebra(q());
        assert_eq!(z.dim(), 0);
        assert_eq!(z.sup_degree(), None);
        assert_eq!(z.center().dim(), 0);
    }

    #[test]
    fn opposite_round_trips() {
        let a = Arc::new(builtin::<Rat>(Family::Exterior, 2, q()).unwrap());
        let op = a.opposite();
        assert!(Arc::ptr_eq(&op.opposite(), &a));
        assert!(!op.same_as(&a));
        let x = a.basis_vector(1);
        let y = a.basis_vector(2);
        assert_eq!(a.mul(&x, &y), op.mul(&y, &x));
    }

    #[test]
    fn center_of_semisimple_and_exterior() {
        assert_eq!(k_times_k().center().dim(), 2);
        // Λ(k²): center is spanned by 1 and x∧y in characteristic ≠ 2.
        let e = builtin::<Rat>(Family::Exterior, 2, q()).unwrap();
        assert_eq!(e.center().dim(), 2);
        assert!(!e.is_commutative());
    }

    #[test]
    fn degree_zero_subalgebra_contains_unit_and_idempotents() {
        let a = builtin::<Rat>(Family::PreprojectiveA, 3, q()).unwrap();
        let (a0, idx) = a.degree_zero_subalgebra().unwrap();
        assert_eq!(a0.dim(), idx.len());
        // kA_3 with linear orientation has dimension 6.
        assert_eq!(a0.dim(), 6);
        assert_eq!(a0.idempotents().unwrap().len(), 3);
        let unit: Vec<Rat> = idx.iter().map(|&i| a.unit()[i].clone()).collect();
        assert_eq!(a0.unit(), unit.as_slice());
    }
}
