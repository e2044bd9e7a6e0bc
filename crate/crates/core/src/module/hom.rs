use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{shift, GradedMap, GradedModule};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{Matrix, SparseEchelon, SparseRow};

/// A basis of the degree-0 homomorphisms `M → N`.
///
/// The unknowns are the matrix entries `F[a][b]` with `deg a = deg b`. Basis
/// element `i` has a 1 at the unknown `free[i]` and 0 at every other free
/// unknown, so the coordinates of any element are read off at `free`.
#[derive(Clone, Debug)]
pub struct HomSpace<F> {
    source: GradedModule<F>,
    target: GradedModule<F>,
    basis: Vec<GradedMap<F>>,
    free: Vec<(usize, usize)>,
}

impl<F: Field> HomSpace<F> {
    pub fn source(&self) -> &GradedModule<F> {
        &self.source
    }

    pub fn target(&self) -> &GradedModule<F> {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GradedMap<F>] {
        &self.basis
    }

    /// Coordinates of a map matrix known to lie in this space.
    pub fn coordinates(&self, m: &Matrix<F>) -> Vec<F> {
        self.free.iter().map(|&(a, b)| m.get(a, b).clone()).collect()
    }

    /// Whether a matrix lies in the space.
    pub fn contains(&self, m: &Matrix<F>) -> bool {
        &self.element(&self.coordinates(m)) == m
    }

    pub fn element(&self, coeffs: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.source.field(), self.source.dim(), self.target.dim());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out.add_scaled(c, b.matrix());
            }
        }
        out
    }

    pub fn map(&self, coeffs: &[F]) -> GradedMap<F> {
        GradedMap::from_raw(self.source.clone(), self.target.clone(), self.element(coeffs))
    }
}

fn sparse_rows<F: Field>(m: &Matrix<F>) -> Vec<Vec<(usize, F)>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect())
        .collect()
}

fn sparse_cols<F: Field>(m: &Matrix<F>) -> Vec<Vec<(usize, F)>> {
    let mut out = vec![Vec::new(); m.cols()];
    for r in 0..m.rows() {
        for (c, x) in m.row(r).iter().enumerate() {
            if !x.is_zero() {
                out[c].push((r, x.clone()));
            }
        }
    }
    out
}

/// `Hom_{Gr Λ}(M, N)`: solve `A_g^M·F = F·A_g^N` for every homogeneous
/// generator component `g`, restricted to degree-preserving `F`.
pub fn hom_graded<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<HomSpace<F>> {
    m.check_same_algebra(n)?;
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut index = vec![usize::MAX; dm * dn];
    let mut unknowns = Vec::new();
    for a in 0..dm {
        for b in 0..dn {
            if m.degree(a) == n.degree(b) {
                index[a * dn + b] = unknowns.len();
                unknowns.push((a, b));
            }
        }
    }
    let mut ech = SparseEchelon::new(field, unknowns.len());
    if !unknowns.is_empty() {
        let n_by_degree: BTreeMap<i32, Vec<usize>> =
            n.degree_set().into_iter().map(|d| (d, n.component_indices(d))).collect();
        for ((e, gm), (_, gn)) in m.generator_actions().iter().zip(n.generator_actions()) {
            let rows_m = sparse_rows(gm);
            let cols_n = sparse_cols(gn);
            for a in 0..dm {
                let Some(targets) = n_by_degree.get(&(m.degree(a) + e)) else { continue };
                for &bp in targets {
                    let mut row: SparseRow<F> = Vec::new();
                    for (ap, x) in &rows_m[a] {
                        row.push((index[ap * dn + bp], x.clone()));
                    }
                    for (b, y) in &cols_n[bp] {
                        row.push((index[a * dn + b], y.neg()));
                    }
                    if !row.is_empty() {
                        ech.insert(row);
                    }
                }
            }
        }
    }
    let (kernel, free_cols) = ech.kernel();
    let basis = kernel
        .into_iter()
        .map(|v| {
            let mut mat = Matrix::zeros(field, dm, dn);
            for (x, &(a, b)) in v.into_iter().zip(&unknowns) {
                if !x.is_zero() {
                    mat.set(a, b, x);
                }
            }
            GradedMap::from_raw(m.clone(), n.clone(), mat)
        })
        .collect();
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
        free: free_cols.into_iter().map(|c| unknowns[c]).collect(),
    })
}

/// `hom(M, N) = ⊕_i Hom(M, N(i))`, nonzero pieces only.
pub fn hom_enriched<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<BTreeMap<i32, HomSpace<F>>> {
    m.check_same_algebra(n)?;
    let mut out = BTreeMap::new();
    let (Some(mlo), Some(mhi)) = (m.degree_set().first().copied(), m.degree_set().last().copied()) else {
        return Ok(out);
    };
    let (Some(nlo), Some(nhi)) = (n.degree_set().first().copied(), n.degree_set().last().copied()) else {
        return Ok(out);
    };
    for i in (nlo - mhi)..=(nhi - mlo) {
        let h = hom_graded(m, &shift(n, i))?;
        if h.dim() > 0 {
            out.insert(i, h);
        }
    }
    Ok(out)
}

const RANDOM_TRIALS: usize = 24;
const EXHAUSTIVE_LIMIT: usize = 6;

/// Search `Hom(M, N)` for an isomorphism: basis elements first, then seeded
/// random combinations, then every combination with coefficients in
/// {−1, 0, 1} when the hom space has dimension at most 6.
pub fn find_isomorphism<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, seed: u64) -> Result<Option<GradedMap<F>>> {
    m.check_same_algebra(n)?;
    if m.dim() != n.dim() || m.degree_multiset() != n.degree_multiset() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(GradedMap::zero(m, n)));
    }
    let h = hom_graded(m, n)?;
    let field = m.field();
    let r = h.dim();
    for b in h.basis() {
        if b.matrix().is_invertible() {
            return Ok(Some(b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<F> = (0..r).map(|_| F::from_i64(field, rng.random_range(-50i64..=50))).collect();
        let mat = h.element(&coeffs);
        if mat.is_invertible() {
            return Ok(Some(h.map(&coeffs)));
        }
    }
    if r <= EXHAUSTIVE_LIMIT {
        let total = 3usize.pow(r as u32);
        for code in 0..total {
            let mut c = code;
            let coeffs: Vec<F> = (0..r)
                .map(|_| {
                    let v = (c % 3) as i64 - 1;
                    c /= 3;
                    F::from_i64(field, v)
                })
                .collect();
            if h.element(&coeffs).is_invertible() {
                return Ok(Some(h.map(&coeffs)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, AlgebraRef, Family};
    use crate::field::{FieldSpec, Rat};
    use crate::module::{dual_of_regular, projective, regular, simple};
    use std::sync::Arc;

    fn alg(f: Family, n: usize) -> AlgebraRef<Rat> {
        Arc::new(builtin(f, n, FieldSpec::RATIONALS).unwrap())
    }

    #[test]
    fn hom_from_free_module_is_degree_zero_part() {
        for (f, n) in [(Family::TruncatedPolynomial, 3), (Family::PreprojectiveA, 3), (Family::Exterior, 2)] {
            let a = alg(f, n);
            let r = regular(&a);
            for target in [r.clone(), shift(&r, 1), shift(&r, -1), dual_of_regular(&a)] {
                let h = hom_graded(&r, &target).unwrap();
                assert_eq!(h.dim(), target.component_dim(0));
                for b in h.basis() {
                    b.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn simple_into_regular_vanishes_for_dual_numbers() {
        let a = alg(Family::TruncatedPolynomial, 2);
        let s = simple(&a, 1).unwrap();
        assert_eq!(hom_graded(&s, &regular(&a)).unwrap().dim(), 0);
        assert_eq!(hom_graded(&s, &shift(&regular(&a), 1)).unwrap().dim(), 1);
    }

    /// dim Hom(P_i, N) = dim (N·e_i)_0, counted from the idempotent action.
    #[test]
    fn hom_from_projective_is_idempotent_slice() {
        let a = alg(Family::PreprojectiveA, 3);
        let targets = [regular(&a), dual_of_regular(&a), shift(&regular(&a), 1)];
        for i in 1..=3 {
            let p = projective(&a, i).unwrap();
            let e = &a.idempotents().unwrap()[i - 1];
            for n in &targets {
                let ae = n.action_of(e);
                let rows: Vec<usize> = n.component_indices(0);
                let slice = ae.select(&rows, &rows).rank();
                assert_eq!(hom_graded(&p, n).unwrap().dim(), slice);
            }
        }
    }

    #[test]
    fn enriched_hom_of_regular() {
        let a = alg(Family::TruncatedPolynomial, 2);
        let r = regular(&a);
        let h = hom_enriched(&r, &r).unwrap();
        let dims: Vec<(i32, usize)> = h.iter().map(|(i, s)| (*i, s.dim())).collect();
        assert_eq!(dims, vec![(0, 1), (1, 1)]);
        let s = simple(&a, 1).unwrap();
        let h = hom_enriched(&s, &s).unwrap();
        assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(hom_enriched(&s, &shift(&s, 7)).unwrap().keys().copied().collect::<Vec<_>>(), vec![-7]);
    }

    #[test]
    fn dual_of_truncated_polynomial_is_shifted_regular() {
        for n in 2..5 {
            let a = alg(Family::TruncatedPolynomial, n);
            let iso = find_isomorphism(&dual_of_regular(&a), &shift(&regular(&a), n as i32 - 1), 0).unwrap();
            let iso = iso.expect("Λ* ≅ Λ(N−1)");
            iso.validate().unwrap();
            assert!(iso.is_isomorphism());
        }
    }

    #[test]
    fn shift_invariance_of_hom_dimensions() {
        let a = alg(Family::PreprojectiveA, 3);
        let mods = [regular(&a), simple(&a, 2).unwrap(), dual_of_regular(&a)];
        for x in &mods {
            for y in &mods {
                let d = hom_graded(x, y).unwrap().dim();
                for j in [-2, 1, 3] {
                    assert_eq!(hom_graded(&shift(x, j), &shift(y, j)).unwrap().dim(), d);
                }
            }
        }
    }
}
