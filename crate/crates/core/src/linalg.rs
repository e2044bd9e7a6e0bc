//! Dense exact linear algebra over a [`Field`], plus an incremental sparse
//! echelon form used for the large homogeneous systems behind hom spaces.
//!
//! Vectors are row vectors and matrices act on the right (`v ↦ v·M`) unless a
//! function says otherwise.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.data[r * self.cols..(r + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![F::zero(field); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, F::one(field));
        }
        m
    }

    /// Build from rows; every row must have length `cols` and every entry
    /// must belong to `field`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in matrix with {cols} columns",
                    row.len()
                )));
            }
            for x in &row {
                if x.spec() != field {
                    return Err(Error::FieldMismatch);
                }
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: n, cols, data })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(field, x)).collect())
            .collect();
        Self::from_rows(field, cols, rows).expect("well-formed integer matrix")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [F] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product `self · other`. Panics on shape or field mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "mixed-field matrix product");
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let base = r * out.cols;
                for (c, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + c].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows, "shape mismatch in vector product");
        let mut out = vec![F::zero(self.field); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, b) in self.row(k).iter().enumerate() {
                if !b.is_zero() {
                    out[c].add_mul_assign(a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Self {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &F, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a.add_mul_assign(s, b);
        }
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Self::zeros(self.field, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * r2 + k, j * c2 + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { rank: pivots.len(), pivots, matrix: m }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..self.cols {
                    self.data.swap(p * self.cols + k, r * self.cols + k);
                }
            }
            let inv = self.get(r, c).inv();
            if !inv.is_one() {
                for k in c..self.cols {
                    let v = self.get(r, k).mul(&inv);
                    self.set(r, k, v);
                }
            }
            let pivot_row: Vec<F> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let row = &mut self.data[i * self.cols + c..(i + 1) * self.cols];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    x.sub_mul_assign(&f, y);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space `{v : self·v = 0}`; vectors have length
    /// `cols`. Each vector has a 1 in its own free column and 0 in the others.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(self.field); self.cols];
            v[f] = F::one(self.field);
            for (i, &p) in pivots.iter().enumerate() {
                let x = matrix.get(i, f);
                if !x.is_zero() {
                    v[p] = x.neg();
                }
            }
            out.push(v);
        }
        out
    }

    /// Basis of `{x : x·self = 0}` (row vectors of length `rows`).
    pub fn left_kernel_basis(&self) -> Vec<Vec<F>> {
        self.transpose().kernel_basis()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, F::one(self.field));
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(aug.select(&rows, &cols))
    }

    /// Solve `x · self = b` for a row vector `x`, if solvable.
    pub fn solve_left(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.cols);
        // Work on the transpose augmented with b as the last column.
        let n = self.rows;
        let mut aug = Self::zeros(self.field, self.cols, n + 1);
        for r in 0..n {
            for c in 0..self.cols {
                aug.set(c, r, self.get(r, c).clone());
            }
        }
        for (c, x) in b.iter().enumerate() {
            aug.set(c, n, x.clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![F::zero(self.field); n];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, n).clone();
        }
        Some(x)
    }
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_scaled_vec<F: Field>(acc: &mut [F], s: &F, v: &[F]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        a.add_mul_assign(s, b);
    }
}

pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    m.rref()
}

pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    m.kernel_basis()
}

// ---------------------------------------------------------------------------
// Subspaces

/// A subspace of `F^n` held as an echelonized (reduced) basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Self::from_matrix(&Matrix::identity(field, ambient))
    }

    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vec<F>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {ambient}",
                    v.len()
                )));
            }
        }
        let m = Matrix::from_rows(field, ambient, vectors.to_vec())?;
        Ok(Self::from_matrix(&m))
    }

    pub fn from_matrix(m: &Matrix<F>) -> Self {
        let Rref { matrix, rank, pivots } = m.rref();
        let basis = (0..rank).map(|r| matrix.row(r).to_vec()).collect();
        Subspace { field: m.field(), ambient: m.cols(), basis, pivots }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.field, self.ambient, self.basis.clone()).expect("consistent")
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(row) {
                    x.sub_mul_assign(&c, y);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v ∈ self` in the echelon basis (read off the pivots).
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::span(self.field, self.ambient, &rows)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(self.field, self.ambient));
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        let stacked = Matrix::from_rows(self.field, self.ambient, rows)?;
        let k = self.dim();
        let vecs: Vec<Vec<F>> = stacked
            .left_kernel_basis()
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![F::zero(self.field); self.ambient];
                for (c, row) in coeffs[..k].iter().zip(&self.basis) {
                    add_scaled_vec(&mut v, c, row);
                }
                v
            })
            .collect();
        Self::span(self.field, self.ambient, &vecs)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

/// Sum, intersection and relative dimension of two subspaces.
#[derive(Clone, Debug)]
pub struct SubspaceOps<F> {
    pub sum: Subspace<F>,
    pub intersection: Subspace<F>,
    /// `dim U / (U ∩ V)`
    pub quotient_dimension: usize,
}

pub fn subspace_ops<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> Result<SubspaceOps<F>> {
    let sum = u.sum(v)?;
    let intersection = u.intersection(v)?;
    let quotient_dimension = u.dim() - intersection.dim();
    Ok(SubspaceOps { sum, intersection, quotient_dimension })
}

// ---------------------------------------------------------------------------
// Sparse incremental echelon form

pub type SparseRow<F> = Vec<(usize, F)>;

/// Echelon form built one sparse row at a time. Rows are normalized to have a
/// leading 1 but are only fully reduced when the kernel is requested.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    field: FieldSpec,
    ncols: usize,
    rows: Vec<SparseRow<F>>,
    pivot_row: BTreeMap<usize, usize>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        SparseEchelon { field, ncols, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Insert a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let mut work: BTreeMap<usize, F> = BTreeMap::new();
        for (c, v) in row {
            if v.is_zero() {
                continue;
            }
            let e = work.entry(c).or_insert_with(|| F::zero(self.field));
            *e = e.add(&v);
            if e.is_zero() {
                work.remove(&c);
            }
        }
        let mut from = 0usize;
        loop {
            let next = work
                .range(from..)
                .find(|(c, _)| self.pivot_row.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, coeff)) = next else { break };
            let prow = &self.rows[self.pivot_row[&c]];
            for (pc, pv) in prow {
                let e = work.entry(*pc).or_insert_with(|| F::zero(self.field));
                e.sub_mul_assign(&coeff, pv);
                if e.is_zero() {
                    work.remove(pc);
                }
            }
            from = c + 1;
        }
        let Some((&lead, lv)) = work.iter().next() else { return false };
        let inv = lv.inv();
        let row: SparseRow<F> = work.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Basis of the null space of the inserted rows, as dense vectors, plus
    /// the free columns: kernel vector `i` has a 1 at `free[i]` and 0 at every
    /// other free column.
    pub fn kernel(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        // Back-substitute so every row is zero at the other pivot columns.
        let mut reduced: BTreeMap<usize, BTreeMap<usize, F>> = BTreeMap::new();
        for (&p, &ri) in self.pivot_row.iter().rev() {
            let mut work: BTreeMap<usize, F> = self.rows[ri].iter().cloned().collect();
            let targets: Vec<(usize, F)> = work
                .iter()
                .filter(|(c, _)| **c != p && reduced.contains_key(c))
                .map(|(c, v)| (*c, v.clone()))
                .collect();
            for (c, coeff) in targets {
                for (rc, rv) in &reduced[&c] {
                    let e = work.entry(*rc).or_insert_with(|| F::zero(self.field));
                    e.sub_mul_assign(&coeff, rv);
                    if e.is_zero() {
                        work.remove(rc);
                    }
                }
            }
            reduced.insert(p, work);
        }
        let free: Vec<usize> =
            (0..self.ncols).filter(|c| !self.pivot_row.contains_key(c)).collect();
        let mut index_of_free = vec![usize::MAX; self.ncols];
        for (i, &f) in free.iter().enumerate() {
            index_of_free[f] = i;
        }
        let mut out: Vec<Vec<F>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(self.field); self.ncols];
                v[f] = F::one(self.field);
                v
            })
            .collect();
        for (&p, row) in &reduced {
            for (c, v) in row {
                if *c != p {
                    out[index_of_free[*c]][p] = v.neg();
                }
            }
        }
        (out, free)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::<Rat>::identity(q(), 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 2);
        let z = Matrix::<Rat>::zeros(q(), 3, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one_example() {
        let m = Matrix::<Rat>::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<Rat>::identity(q(), 3).kernel_basis().is_empty());
        assert_eq!(Matrix::<Rat>::zeros(q(), 2, 3).kernel_basis().len(), 3);
        // [[1,1]] over GF(5): enumerating GF(5)^2 gives the solutions t·(1,4).
        let f5 = FieldSpec::prime(5).unwrap();
        let m = Matrix::<Fp>::from_i64(f5, &[&[1, 1]]);
        let oracle: Vec<(i64, i64)> = (0..5)
            .flat_map(|a| (0..5).map(move |b| (a, b)))
            .filter(|(a, b)| (a + b) % 5 == 0)
            .collect();
        assert_eq!(oracle.len(), 5);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let v: Vec<u32> = k[0].iter().map(|x| x.value()).collect();
        assert!(oracle.contains(&(v[0] as i64, v[1] as i64)));
        assert_eq!(v, vec![4, 1]);
    }

    #[test]
    fn subspace_examples() {
        let e1 = vec![Rat::new(1, 1), Rat::new(0, 1)];
        let e2 = vec![Rat::new(0, 1), Rat::new(1, 1)];
        let e12 = vec![Rat::new(1, 1), Rat::new(1, 1)];
        let u = Subspace::span(q(), 2, std::slice::from_ref(&e1)).unwrap();
        let v = Subspace::span(q(), 2, std::slice::from_ref(&e2)).unwrap();
        let ops = subspace_ops(&u, &u).unwrap();
        assert_eq!(ops.intersection, u);
        assert_eq!(ops.quotient_dimension, 0);
        let ops = subspace_ops(&u, &v).unwrap();
        assert_eq!(ops.sum.dim(), 2);
        assert_eq!(ops.intersection.dim(), 0);
        let w = Subspace::span(q(), 2, &[e12, e2]).unwrap();
        assert_eq!(subspace_ops(&w, &u).unwrap().intersection.dim(), 1);
        let bad = Subspace::<Rat>::zero(q(), 3);
        assert!(u.sum(&bad).is_err());
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::<Rat>::from_i64(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 2));
        let b = vec![Rat::new(3, 1), Rat::new(2, 1)];
        let x = m.solve_left(&b).unwrap();
        assert_eq!(m.left_apply(&x), b);
        assert!(Matrix::<Rat>::from_i64(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn sparse_echelon_matches_dense_kernel() {
        let m = Matrix::<Rat>::from_i64(q(), &[&[1, 2, 0, -1], &[0, 0, 1, 3], &[1, 2, 1, 2]]);
        let mut e = SparseEchelon::new(q(), 4);
        for r in 0..3 {
            let row = m.row(r).iter().cloned().enumerate().collect();
            e.insert(row);
        }
        assert_eq!(e.rank(), 2);
        let (k, free) = e.kernel();
        assert_eq!(k, m.kernel_basis());
        assert_eq!(free, vec![1, 3]);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
        })
    }

    fn to_matrix(rows: &[Vec<i64>]) -> Matrix<Rat> {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        Matrix::from_i64(q(), &refs)
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in small_matrix()) {
            let m = to_matrix(&rows);
            let k = m.kernel_basis();
            prop_assert_eq!(m.cols(), m.rank() + k.len());
            for v in &k {
                let col = Matrix::from_rows(q(), 1, v.iter().map(|x| vec![x.clone()]).collect()).unwrap();
                prop_assert!(m.mul(&col).is_zero());
            }
        }

        #[test]
        fn rref_is_idempotent(rows in small_matrix()) {
            let m = to_matrix(&rows);
            let once = m.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once);
        }

        #[test]
        fn grassmann_identity(a in small_matrix(), b in small_matrix()) {
            let n = a[0].len().min(b[0].len());
            let cut = |rows: &[Vec<i64>]| -> Vec<Vec<Rat>> {
                rows.iter().map(|r| r[..n].iter().map(|&x| Rat::new(x, 1)).collect()).collect()
            };
            let u = Subspace::span(q(), n, &cut(&a)).unwrap();
            let v = Subspace::span(q(), n, &cut(&b)).unwrap();
            let ops = subspace_ops(&u, &v).unwrap();
            prop_assert_eq!(u.dim() + v.dim(), ops.sum.dim() + ops.intersection.dim());
            prop_assert!(ops.intersection.is_subspace_of(&u));
            prop_assert!(ops.intersection.is_subspace_of(&v));
        }
    }
}
