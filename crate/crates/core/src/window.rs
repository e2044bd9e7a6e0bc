//! Finite windows of the category `Q` of shifted indecomposable projectives
//! `P_i(j)`, with checks of its structural properties: finite-dimensional
//! morphism spaces, local boundedness, local endomorphism rings, a nilpotent
//! radical and Serre duality with `S = (−)⊗_Λ Λ*`.
//!
//! The radical `𝔯(q, q')` is the space of maps with image in `q'·rad`. The
//! Serre pairing `Q(q, q') × Q(q', Sq) → k` is `(u, v) ↦ t_q(v∘u)` with
//! `t_q(h) = h(e_i)(e_i)` for `q = P_i(j)`.

use serde::Serialize;

use crate::algebra::{jacobson_radical, AlgebraRef};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::module::{
    dual_of_regular, hom_graded, is_self_injective, projective_basis, regular, shift, GradedModule, GradedSubspace,
    HomSpace,
};
use crate::par;

/// Upper bound on the radical powers explored before giving up.
const MAX_RADICAL_POWER: usize = 64;

/// The object `P_index(shift)`; indices start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WindowObject {
    pub index: usize,
    pub shift: i32,
}

pub struct QWindow<F> {
    algebra: AlgebraRef<F>,
    lo: i32,
    hi: i32,
    objects: Vec<WindowObject>,
    modules: Vec<GradedModule<F>>,
    /// Rows are the basis of `e_iΛ` in `Λ` coordinates, per idempotent.
    inclusions: Vec<Matrix<F>>,
    homs: Vec<Vec<HomSpace<F>>>,
    radical: Vec<Vec<Subspace<F>>>,
}

impl<F: Field> QWindow<F> {
    pub fn algebra(&self) -> &AlgebraRef<F> {
        &self.algebra
    }

    pub fn range(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    pub fn objects(&self) -> &[WindowObject] {
        &self.objects
    }

    pub fn module(&self, q: usize) -> &GradedModule<F> {
        &self.modules[q]
    }

    pub fn hom(&self, q: usize, r: usize) -> &HomSpace<F> {
        &self.homs[q][r]
    }

    /// `𝔯(q, r)` in the coordinates of `hom(q, r)`.
    pub fn radical(&self, q: usize, r: usize) -> &Subspace<F> {
        &self.radical[q][r]
    }

    pub fn hom_dims(&self) -> Vec<Vec<usize>> {
        self.homs.iter().map(|row| row.iter().map(|h| h.dim()).collect()).collect()
    }

    /// Coordinates of `g∘f` in `hom(q, s)` for `f ∈ hom(q, r)`, `g ∈ hom(r, s)`.
    pub fn compose(&self, q: usize, r: usize, s: usize, f: &[F], g: &[F]) -> Vec<F> {
        let m = self.homs[q][r].element(f).mul(&self.homs[r][s].element(g));
        self.homs[q][s].coordinates(&m)
    }
}

/// `P_i = e_iΛ` with its basis in `Λ` coordinates.
fn projective_with_inclusion<F: Field>(a: &AlgebraRef<F>, i: usize) -> Result<(GradedModule<F>, Matrix<F>)> {
    let reg = regular(a);
    let sub = GradedSubspace::from_vectors(&reg, &projective_basis(a, i)?.row_vecs());
    let (m, inc) = sub.submodule(&reg);
    Ok((m, inc.matrix().clone()))
}

/// All objects `P_i(j)` with `lo ≤ j ≤ hi`, their hom spaces and radicals.
pub fn build_window<F: Field>(a: &AlgebraRef<F>, lo: i32, hi: i32) -> Result<QWindow<F>> {
    let n = a.idempotents().ok_or(Error::MissingIdempotents)?.len();
    if lo > hi {
        return Err(Error::DimensionMismatch(format!("empty window [{lo}, {hi}]")));
    }
    let mut bases = Vec::with_capacity(n);
    let mut inclusions = Vec::with_capacity(n);
    for i in 1..=n {
        let (m, inc) = projective_with_inclusion(a, i)?;
        bases.push(m);
        inclusions.push(inc);
    }
    let mut objects = Vec::new();
    let mut modules = Vec::new();
    for j in lo..=hi {
        for i in 1..=n {
            objects.push(WindowObject { index: i, shift: j });
            modules.push(shift(&bases[i - 1], j));
        }
    }
    let tops = par::try_map(&modules, |m| crate::module::radical_submodule(m))?;
    let count = objects.len();
    let pairs: Vec<(usize, usize)> = (0..count).flat_map(|q| (0..count).map(move |r| (q, r))).collect();
    let computed = par::try_map(&pairs, |&(q, r)| -> Result<(HomSpace<F>, Subspace<F>)> {
        let h = hom_graded(&modules[q], &modules[r])?;
        let rad = radical_maps(&h, &tops[r])?;
        Ok((h, rad))
    })?;
    let mut homs: Vec<Vec<HomSpace<F>>> = (0..count).map(|_| Vec::with_capacity(count)).collect();
    let mut radical: Vec<Vec<Subspace<F>>> = (0..count).map(|_| Vec::with_capacity(count)).collect();
    for ((q, _), (h, r)) in pairs.into_iter().zip(computed) {
        homs[q].push(h);
        radical[q].push(r);
    }
    Ok(QWindow { algebra: a.clone(), lo, hi, objects, modules, inclusions, homs, radical })
}

/// Maps in `h` whose image lies in `rad_target`, as a coordinate subspace.
fn radical_maps<F: Field>(h: &HomSpace<F>, rad_target: &GradedSubspace<F>) -> Result<Subspace<F>> {
    let field = h.source().field();
    let (s, t) = (h.source().dim(), h.target().dim());
    if h.dim() == 0 {
        return Ok(Subspace::zero(field, 0));
    }
    let mut stacked = Matrix::zeros(field, h.dim(), s * t);
    for (k, b) in h.basis().iter().enumerate() {
        for r in 0..s {
            for (c, x) in rad_target.reduce(b.matrix().row(r)).into_iter().enumerate() {
                stacked.set(k, r * t + c, x);
            }
        }
    }
    Subspace::span(field, h.dim(), &stacked.left_kernel_basis())
}

/// `S(P_i(j)) = (e_i·Λ*)(j)` where `(e·f)(y) = f(ye)`.
pub fn serre_of_object<F: Field>(a: &AlgebraRef<F>, i: usize, j: i32) -> Result<GradedModule<F>> {
    if !is_self_injective(a)? {
        return Err(Error::NotSelfInjective);
    }
    Ok(shift(&serre_slice(a, i)?.0, j))
}

/// `e_i·Λ*` with its basis in `Λ*` coordinates.
fn serre_slice<F: Field>(a: &AlgebraRef<F>, i: usize) -> Result<(GradedModule<F>, Matrix<F>)> {
    let es = a.idempotents().ok_or(Error::MissingIdempotents)?;
    if i == 0 || i > es.len() {
        return Err(Error::IndexOutOfRange { index: i, count: es.len() });
    }
    let dual = dual_of_regular(a);
    let rows = a.right_mult_matrix(&es[i - 1]).transpose().row_vecs();
    let (m, inc) = GradedSubspace::from_vectors(&dual, &rows).submodule(&dual);
    Ok((m, inc.matrix().clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    /// `dim Q(q, q') = dim Q(q', Sq)` for every pair.
    pub dimension_symmetry: bool,
    /// The composition pairing is perfect for every pair.
    pub pairing_nondegenerate: bool,
    /// `t_{q₀}(x∘h) = t_q(S(h)∘x)` on every basis pair `h: q₀ → q`,
    /// `x: q → Sq₀` of the window.
    pub natural: bool,
    pub naturality_samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompanionReport {
    pub objects: Vec<WindowObject>,
    pub hom_dims: Vec<Vec<usize>>,
    /// (1) Morphism spaces are finite dimensional (always true here).
    pub finite_dimensional: bool,
    /// (2) Every interior object only sees objects within `ℓ` shifts.
    pub locally_bounded: bool,
    pub band_width: usize,
    pub band_bound: usize,
    /// (3) `Q(q,q) = k·id ⊕ 𝔯(q,q)` and composites through other objects lie
    /// in `𝔯(q,q)`.
    pub local_endomorphisms: bool,
    /// (4) Minimal `N` with `𝔯^N = 0` on the window, if found.
    pub radical_nilpotency: Option<usize>,
    pub algebra_nilpotency: usize,
    pub nilpotent: bool,
    /// (5) Serre duality, when requested.
    pub serre: Option<SerreReport>,
}

impl CompanionReport {
    pub fn passed(&self) -> bool {
        self.finite_dimensional
            && self.locally_bounded
            && self.local_endomorphisms
            && self.nilpotent
            && self.serre.as_ref().is_none_or(|s| s.dimension_symmetry && s.pairing_nondegenerate && s.natural)
    }
}

pub fn check_companion_properties<F: Field>(w: &QWindow<F>, serre_check: bool) -> Result<CompanionReport> {
    if serre_check && !is_self_injective(&w.algebra)? {
        return Err(Error::NotSelfInjective);
    }
    let ell = w.algebra.sup_degree().unwrap_or(0).max(0);
    let (locally_bounded, band_width) = band_check(w, ell);
    let local_endomorphisms = local_check(w);
    let radical_nilpotency = radical_nilpotency(w);
    let algebra_nilpotency = jacobson_radical(&w.algebra)?.nilpotency;
    let nilpotent = radical_nilpotency.is_some_and(|n| n <= algebra_nilpotency);
    let serre = if serre_check { Some(serre_check_window(w)?) } else { None };
    Ok(CompanionReport {
        objects: w.objects.clone(),
        hom_dims: w.hom_dims(),
        finite_dimensional: true,
        locally_bounded,
        band_width,
        band_bound: ell as usize,
        local_endomorphisms,
        radical_nilpotency,
        algebra_nilpotency,
        nilpotent,
        serre,
    })
}

/// Objects within `ℓ` of either window edge are left out of the quantifier.
fn band_check<F: Field>(w: &QWindow<F>, ell: i32) -> (bool, usize) {
    let mut width = 0usize;
    let mut ok = true;
    for (q, oq) in w.objects.iter().enumerate() {
        if oq.shift - ell < w.lo || oq.shift + ell > w.hi {
            continue;
        }
        for (r, or) in w.objects.iter().enumerate() {
            if w.homs[q][r].dim() > 0 || w.homs[r][q].dim() > 0 {
                let d = oq.shift.abs_diff(or.shift) as usize;
                width = width.max(d);
                ok &= d <= ell as usize;
            }
        }
    }
    (ok, width)
}

/// Objects are compared by label, so `P_i(j)` and `P_i(j')` count as
/// different objects whenever `j ≠ j'`.
fn local_check<F: Field>(w: &QWindow<F>) -> bool {
    let count = w.objects.len();
    for q in 0..count {
        let end = &w.homs[q][q];
        let rad = &w.radical[q][q];
        if end.dim() != 1 + rad.dim() {
            return false;
        }
        let id = end.coordinates(&Matrix::identity(w.algebra.field(), w.modules[q].dim()));
        if rad.contains(&id) {
            return false;
        }
        for r in (0..count).filter(|&r| r != q) {
            for f in w.homs[q][r].basis() {
                for g in w.homs[r][q].basis() {
                    if !rad.contains(&end.coordinates(&f.matrix().mul(g.matrix()))) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Iterate `𝔯^{k+1}(q, s) = Σ_r 𝔯(r, s)∘𝔯^k(q, r)` until everything vanishes.
fn radical_nilpotency<F: Field>(w: &QWindow<F>) -> Option<usize> {
    let count = w.objects.len();
    let field = w.algebra.field();
    let as_maps = |q: usize, r: usize, s: &Subspace<F>| -> Vec<Matrix<F>> {
        s.basis().iter().map(|c| w.homs[q][r].element(c)).collect()
    };
    let first: Vec<Vec<Vec<Matrix<F>>>> =
        (0..count).map(|q| (0..count).map(|r| as_maps(q, r, &w.radical[q][r])).collect()).collect();
    let mut power = first.clone();
    for k in 1..=MAX_RADICAL_POWER {
        if power.iter().all(|row| row.iter().all(|v| v.is_empty())) {
            return Some(k);
        }
        let qs: Vec<usize> = (0..count).collect();
        power = par::map(&qs, |&q| {
            (0..count)
                .map(|s| {
                    let mut vecs = Vec::new();
                    for r in 0..count {
                        for f in &power[q][r] {
                            for g in &first[r][s] {
                                vecs.push(w.homs[q][s].coordinates(&f.mul(g)));
                            }
                        }
                    }
                    let span = Subspace::span(field, w.homs[q][s].dim(), &vecs).expect("consistent sizes");
                    as_maps(q, s, &span)
                })
                .collect()
        });
    }
    None
}

fn serre_check_window<F: Field>(w: &QWindow<F>) -> Result<SerreReport> {
    let a = &w.algebra;
    let field = a.field();
    let es = a.idempotents().ok_or(Error::MissingIdempotents)?;
    let n = es.len();
    let mut slices = Vec::with_capacity(n);
    for i in 1..=n {
        slices.push(serre_slice(a, i)?);
    }
    let serre: Vec<GradedModule<F>> =
        w.objects.iter().map(|o| shift(&slices[o.index - 1].0, o.shift)).collect();
    let count = w.objects.len();
    // to_serre[q][r] = hom(r, Sq)
    let pairs: Vec<(usize, usize)> = (0..count).flat_map(|q| (0..count).map(move |r| (q, r))).collect();
    let computed = par::try_map(&pairs, |&(q, r)| hom_graded(&w.modules[r], &serre[q]))?;
    let mut to_serre: Vec<Vec<HomSpace<F>>> = (0..count).map(|_| Vec::with_capacity(count)).collect();
    for ((q, _), h) in pairs.iter().zip(computed) {
        to_serre[*q].push(h);
    }
    // Coordinates of e_i in P_i.
    let unit_coords: Vec<Vec<F>> = (0..n)
        .map(|i| w.inclusions[i].solve_left(&es[i]).ok_or_else(|| Error::VerificationFailed("e_i ∉ e_iΛ".into())))
        .collect::<Result<_>>()?;
    let trace = |q: usize, h: &Matrix<F>| -> F {
        let i = w.objects[q].index - 1;
        let phi = slices[i].1.left_apply(&h.left_apply(&unit_coords[i]));
        phi.iter().zip(&es[i]).fold(F::zero(field), |acc, (x, y)| acc.add(&x.mul(y)))
    };
    let mut symmetric = true;
    let mut nondegenerate = true;
    for &(q, r) in &pairs {
        let h1 = &w.homs[q][r];
        let h2 = &to_serre[q][r];
        if h1.dim() != h2.dim() {
            symmetric = false;
            nondegenerate = false;
            continue;
        }
        let mut gram = Matrix::zeros(field, h1.dim(), h2.dim());
        for (x, u) in h1.basis().iter().enumerate() {
            for (y, v) in h2.basis().iter().enumerate() {
                gram.set(x, y, trace(q, &u.matrix().mul(v.matrix())));
            }
        }
        nondegenerate &= gram.is_invertible();
    }
    // S(h) for h: q₀ → q is f ↦ λ·f with λ = h(e_{i₀}) ∈ e_iΛe_{i₀}.
    let serre_map = |q0: usize, q: usize, h: &Matrix<F>| -> Result<Matrix<F>> {
        let (i0, i) = (w.objects[q0].index - 1, w.objects[q].index - 1);
        let lambda = w.inclusions[i].left_apply(&h.left_apply(&unit_coords[i0]));
        let rt = a.right_mult_matrix(&lambda).transpose();
        let (src, tgt) = (&slices[i0].1, &slices[i].1);
        let rows = (0..src.rows())
            .map(|k| {
                tgt.solve_left(&rt.left_apply(src.row(k)))
                    .ok_or_else(|| Error::VerificationFailed("λ·f left the slice".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, tgt.rows(), rows)
    };
    let mut natural = true;
    let mut samples = 0;
    for &(q0, q) in &pairs {
        for h in w.homs[q0][q].basis() {
            let sh = serre_map(q0, q, h.matrix())?;
            for x in to_serre[q0][q].basis() {
                samples += 1;
                let lhs = trace(q0, &h.matrix().mul(x.matrix()));
                let rhs = trace(q, &x.matrix().mul(&sh));
                natural &= lhs == rhs;
            }
        }
    }
    Ok(SerreReport { dimension_symmetry: symmetric, pairing_nondegenerate: nondegenerate, natural, naturality_samples: samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, compile_quiver, Arrow, Family, QuiverPresentation};
    use crate::field::{FieldSpec, Rat};
    use crate::module::find_isomorphism;
    use std::sync::Arc;

    fn alg(f: Family, n: usize) -> AlgebraRef<Rat> {
        Arc::new(builtin(f, n, FieldSpec::RATIONALS).unwrap())
    }

    #[test]
    fn dual_numbers_window() {
        let a = alg(Family::TruncatedPolynomial, 2);
        let w = build_window(&a, 0, 1).unwrap();
        assert_eq!(w.hom_dims(), vec![vec![1, 1], vec![0, 1]]);
        let r = check_companion_properties(&build_window(&a, -3, 3).unwrap(), true).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.radical_nilpotency, Some(2));
    }

    #[test]
    fn serre_of_dual_numbers_is_the_next_shift() {
        let a = alg(Family::TruncatedPolynomial, 2);
        let s = serre_of_object(&a, 1, 0).unwrap();
        let p1 = shift(&projective_with_inclusion(&a, 1).unwrap().0, 1);
        assert!(find_isomorphism(&s, &p1, 0).unwrap().is_some());
        for n in 2..5 {
            let a = alg(Family::TruncatedPolynomial, n);
            let s = serre_of_object(&a, 1, 0).unwrap();
            assert!(find_isomorphism(&s, &shift(&regular(&a), n as i32 - 1), 0).unwrap().is_some());
        }
    }

    #[test]
    fn serre_slice_dims_match_projectives() {
        let a = alg(Family::PreprojectiveA, 3);
        for i in 1..=3 {
            assert_eq!(serre_of_object(&a, i, 2).unwrap().dim(), projective_basis(&a, i).unwrap().rows());
        }
    }

    #[test]
    fn preprojective_window() {
        let a = alg(Family::PreprojectiveA, 3);
        let r = check_companion_properties(&build_window(&a, -3, 3).unwrap(), true).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.band_width <= 2);
    }

    #[test]
    fn serre_check_needs_self_injectivity() {
        let p = QuiverPresentation::<Rat> {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![Arrow { name: "a".into(), source: 0, target: 1, degree: 0 }],
            relations: vec![],
            nilpotency_bound: 2,
        };
        let a = Arc::new(compile_quiver(&p, FieldSpec::RATIONALS).unwrap());
        let w = build_window(&a, 0, 0).unwrap();
        assert!(matches!(check_companion_properties(&w, true), Err(Error::NotSelfInjective)));
        assert!(check_companion_properties(&w, false).unwrap().passed());
    }
}
