//! Base change along `k → A` for a finite-dimensional, trivially graded
//! coefficient algebra `A`: the graded algebra `Λ⊗A`, extension `i*` and
//! restriction `i_*` of scalars, and the class `𝓔` of modules whose
//! restriction is projective.
//!
//! `𝓔` is worked out in `Gr(Λ⊗A)` rather than in modules over the companion
//! category tensored with `A`; the two are equivalent, but the equivalence
//! is not constructed here.

use serde::Serialize;

use crate::algebra::{AlgebraParts, AlgebraRef, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{hom_graded, is_projective, is_self_injective, GradedModule};
use crate::tilt::gamma;

/// `Λ⊗A` together with its factors. Basis element `(i, k)` sits at index
/// `i·dim A + k` and has the degree of `b_i`.
#[derive(Clone, Debug)]
pub struct TensorAlgebra<F> {
    pub left: AlgebraRef<F>,
    pub right: AlgebraRef<F>,
    pub product: AlgebraRef<F>,
}

fn pure<F: Field>(x: &[F], y: &[F]) -> Vec<F> {
    x.iter().flat_map(|a| y.iter().map(move |b| a.mul(b))).collect()
}

/// Idempotents are `e_i⊗f_k` when both factors carry idempotents and
/// `e_i⊗1` when only the left one does.
pub fn tensor_algebra<F: Field>(x: &AlgebraRef<F>, y: &AlgebraRef<F>) -> Result<TensorAlgebra<F>> {
    let field = x.field();
    if y.field() != field {
        return Err(Error::FieldMismatch);
    }
    if !y.is_trivially_graded() {
        return Err(Error::InvalidAlgebra("coefficient algebra must sit in degree 0".into()));
    }
    let (nx, ny) = (x.dim(), y.dim());
    if nx == 0 || ny == 0 {
        let product = GradedAlgebra::zero_algebra(field).into_ref();
        return Ok(TensorAlgebra { left: x.clone(), right: y.clone(), product });
    }
    let mut table = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        for k in 0..ny {
            let mut row = Vec::with_capacity(nx * ny);
            for j in 0..nx {
                for l in 0..ny {
                    let mut e = Vec::new();
                    for (a, c) in x.product(i, j) {
                        for (b, d) in y.product(k, l) {
                            e.push((a * ny + b, c.mul(d)));
                        }
                    }
                    e.sort_by_key(|(t, _)| *t);
                    row.push(e);
                }
            }
            table.push(row);
        }
    }
    let degrees = (0..nx * ny).map(|t| x.degree(t / ny)).collect();
    let idempotents = x.idempotents().map(|es| match y.idempotents() {
        Some(fs) => es.iter().flat_map(|e| fs.iter().map(move |f| pure(e, f))).collect(),
        None => es.iter().map(|e| pure(e, y.unit())).collect(),
    });
    let mut generators: Vec<Vec<F>> = x.generators().iter().map(|g| pure(g, y.unit())).collect();
    generators.extend(y.generators().iter().map(|g| pure(x.unit(), g)));
    let radical_hint = match (x.radical_hint(), y.radical_hint()) {
        (Some(rx), Some(ry)) => {
            let mut v: Vec<Vec<F>> = Vec::new();
            for r in rx {
                v.extend((0..ny).map(|k| pure(r, &y.basis_vector(k))));
            }
            for s in ry {
                v.extend((0..nx).map(|i| pure(&x.basis_vector(i), s)));
            }
            Some(v)
        }
        _ => None,
    };
    let labels = match (x.labels(), y.labels()) {
        (Some(lx), Some(ly)) => Some(lx.iter().flat_map(|a| ly.iter().map(move |b| format!("{a}⊗{b}"))).collect()),
        _ => None,
    };
    let product = GradedAlgebra::from_parts(AlgebraParts {
        field,
        degrees,
        table,
        unit: pure(x.unit(), y.unit()),
        idempotents,
        labels,
        generators: Some(generators),
        radical_hint,
    })?
    .into_ref();
    Ok(TensorAlgebra { left: x.clone(), right: y.clone(), product })
}

/// `i*M = M⊗A` over `Λ⊗A`, with `b⊗c` acting by `A_b ⊗ R_c`.
pub fn i_star<F: Field>(m: &GradedModule<F>, t: &TensorAlgebra<F>) -> Result<GradedModule<F>> {
    if !m.algebra().same_as(&t.left) {
        return Err(Error::AlgebraMismatch);
    }
    let ny = t.right.dim();
    let regular: Vec<_> = (0..ny).map(|k| t.right.right_mult_matrix(&t.right.basis_vector(k))).collect();
    let mut action = Vec::with_capacity(t.product.dim());
    for i in 0..t.left.dim() {
        for r in &regular {
            action.push(m.action(i).kronecker(r));
        }
    }
    let degrees = m.degrees().iter().flat_map(|&d| std::iter::repeat_n(d, ny)).collect();
    GradedModule::new(t.product.clone(), degrees, action)
}

/// `i_*M'`: the same space over `Λ`, with `b` acting as `b⊗1`.
pub fn i_lower<F: Field>(m: &GradedModule<F>, t: &TensorAlgebra<F>) -> Result<GradedModule<F>> {
    if !m.algebra().same_as(&t.product) {
        return Err(Error::AlgebraMismatch);
    }
    let action = (0..t.left.dim())
        .map(|i| m.action_of(&pure(&t.left.basis_vector(i), t.right.unit())))
        .collect();
    GradedModule::new(t.left.clone(), m.degrees().to_vec(), action)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bc1Report {
    pub lhs: usize,
    pub rhs: usize,
    pub pass: bool,
}

/// `dim hom(i*M, i*N)` against `dim hom(M, N) · dim A`.
pub fn check_bc1<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, t: &TensorAlgebra<F>) -> Result<Bc1Report> {
    let lhs = hom_graded(&i_star(m, t)?, &i_star(n, t)?)?.dim();
    let rhs = hom_graded(m, n)?.dim() * t.right.dim();
    Ok(Bc1Report { lhs, rhs, pass: lhs == rhs })
}

/// Membership in `𝓔`: the restriction to `Λ` is projective.
pub fn in_e<F: Field>(m: &GradedModule<F>, t: &TensorAlgebra<F>) -> Result<bool> {
    if !is_self_injective(&t.left)? {
        return Err(Error::NotSelfInjective);
    }
    is_projective(&i_lower(m, t)?)
}

/// `Γ⊗A` for the tilting data of `Λ`.
pub fn gamma_tensor<F: Field>(lambda: &AlgebraRef<F>, a: &AlgebraRef<F>) -> Result<TensorAlgebra<F>> {
    let g = gamma(lambda)?;
    tensor_algebra(&g.algebra, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, Family};
    use crate::field::{FieldSpec, Rat};
    use crate::module::{find_isomorphism, regular, simple};
    use crate::tilt::{reference_upper_triangular, yamaura_tilting_module};
    use std::sync::Arc;

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn alg(f: Family, n: usize) -> AlgebraRef<Rat> {
        Arc::new(builtin(f, n, Q).unwrap())
    }

    fn dual_numbers() -> AlgebraRef<Rat> {
        Arc::new(builtin::<Rat>(Family::TruncatedPolynomial, 2, Q).unwrap().forget_grading().unwrap())
    }

    fn k() -> AlgebraRef<Rat> {
        Arc::new(reference_upper_triangular(1, Q))
    }

    #[test]
    fn tensor_dimensions() {
        let t2 = Arc::new(reference_upper_triangular::<Rat>(2, Q));
        assert_eq!(tensor_algebra(&t2, &dual_numbers()).unwrap().product.dim(), 6);
        let t = tensor_algebra(&alg(Family::TruncatedPolynomial, 2), &dual_numbers()).unwrap();
        assert_eq!(t.product.dim(), 4);
        assert_eq!(t.product.sup_degree(), Some(1));
        let l = alg(Family::PreprojectiveA, 2);
        let t = tensor_algebra(&l, &k()).unwrap();
        assert_eq!(t.product.dim(), l.dim());
        assert_eq!(t.product.degrees(), l.degrees());
    }

    #[test]
    fn graded_coefficients_are_rejected() {
        let a = alg(Family::TruncatedPolynomial, 2);
        assert!(matches!(tensor_algebra(&a, &a), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn extension_and_restriction() {
        let l = alg(Family::TruncatedPolynomial, 3);
        let t = tensor_algebra(&l, &dual_numbers()).unwrap();
        let r = regular(&l);
        let ir = i_star(&r, &t).unwrap();
        assert!(find_isomorphism(&ir, &regular(&t.product), 0).unwrap().is_some());
        let s = simple(&l, 1).unwrap();
        let back = i_lower(&i_star(&s, &t).unwrap(), &t).unwrap();
        assert_eq!(back.dim(), 2 * s.dim());
        let tk = tensor_algebra(&l, &k()).unwrap();
        assert_eq!(i_star(&s, &tk).unwrap().degrees(), s.degrees());
    }

    #[test]
    fn bc1_examples() {
        let l = alg(Family::TruncatedPolynomial, 2);
        let t = tensor_algebra(&l, &dual_numbers()).unwrap();
        let r = regular(&l);
        let rep = check_bc1(&r, &r, &t).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.lhs, l.component_dim(0) * 2);
        let tm = yamaura_tilting_module(&l).unwrap().module;
        assert!(check_bc1(&tm, &r, &t).unwrap().pass);
    }

    #[test]
    fn class_e() {
        let l = alg(Family::TruncatedPolynomial, 2);
        let t = tensor_algebra(&l, &dual_numbers()).unwrap();
        assert!(in_e(&i_star(&regular(&l), &t).unwrap(), &t).unwrap());
        assert!(!in_e(&i_star(&simple(&l, 1).unwrap(), &t).unwrap(), &t).unwrap());
        assert!(in_e(&GradedModule::zero(&t.product), &t).unwrap());
    }

    #[test]
    fn gamma_tensor_dimensions() {
        let a = dual_numbers();
        assert_eq!(gamma_tensor(&alg(Family::TruncatedPolynomial, 3), &a).unwrap().product.dim(), 6);
        assert_eq!(gamma_tensor(&alg(Family::PreprojectiveA, 2), &a).unwrap().product.dim(), 2);
        assert_eq!(gamma_tensor(&alg(Family::TruncatedPolynomial, 4), &k()).unwrap().product.dim(), 6);
    }
}
