use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{compile_quiver, jacobson_radical, AlgebraParts, Arrow, GradedAlgebra, QuiverPresentation};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::module::{direct_sum, projective, GradedSubspace};
use crate::stable::end_algebra;

/// Upper-triangular `m×m` matrices with the matrix units as basis.
pub fn reference_upper_triangular<F: Field>(m: usize, field: FieldSpec) -> GradedAlgebra<F> {
    if m == 0 {
        return GradedAlgebra::zero_algebra(field);
    }
    let units: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let pos: HashMap<(usize, usize), usize> = units.iter().enumerate().map(|(k, &u)| (u, k)).collect();
    let n = units.len();
    let one = F::one(field);
    let table = units
        .iter()
        .map(|&(i, j)| {
            units
                .iter()
                .map(|&(k, l)| if j == k { vec![(pos[&(i, l)], one.clone())] } else { Vec::new() })
                .collect()
        })
        .collect();
    let diag = |i: usize| crate::algebra::unit_vector::<F>(field, n, pos[&(i, i)]);
    let mut unit = vec![F::zero(field); n];
    for i in 0..m {
        unit[pos[&(i, i)]] = one.clone();
    }
    let strict = units
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| i < j)
        .map(|(k, _)| crate::algebra::unit_vector::<F>(field, n, k))
        .collect();
    GradedAlgebra::from_parts(AlgebraParts {
        field,
        degrees: vec![0; n],
        table,
        unit,
        idempotents: Some((0..m).map(diag).collect()),
        labels: Some(units.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect()),
        generators: None,
        radical_hint: Some(strict),
    })
    .expect("upper-triangular matrices form an algebra")
}

/// End of the sum of all interval modules `e_iΛ / e_iΛ·rad^r` over the linear
/// `A_m` path algebra, i.e. the Auslander algebra of `A_m`.
pub fn reference_auslander_linear<F: Field>(m: usize, field: FieldSpec) -> Result<GradedAlgebra<F>> {
    if m == 0 {
        return Err(Error::InvalidPresentation("the linear quiver needs at least one vertex".into()));
    }
    let p = QuiverPresentation::<F> {
        vertices: (1..=m).map(|i| i.to_string()).collect(),
        arrows: (1..m).map(|i| Arrow { name: format!("a{i}"), source: i - 1, target: i, degree: 0 }).collect(),
        relations: Vec::new(),
        nilpotency_bound: m,
    };
    let a = Arc::new(compile_quiver(&p, field)?);
    let rad = jacobson_radical(&a)?;
    let mut intervals = Vec::new();
    for i in 1..=m {
        let pi = projective(&a, i)?;
        let mut r = 1;
        loop {
            let power = &rad.series[r - 1];
            let mut vecs = Vec::new();
            for x in power.basis() {
                vecs.extend(pi.action_of(x).row_vecs());
            }
            let sub = GradedSubspace::from_vectors(&pi, &vecs);
            if sub.dim() == pi.dim() {
                break;
            }
            intervals.push(sub.quotient(&pi).0);
            if sub.dim() == 0 {
                break;
            }
            r += 1;
        }
    }
    end_algebra(&direct_sum(&a, &intervals)?)
}

/// The algebra of the full subcategory on objects `0..ℓ−1` with morphisms
/// `i → j` given by `Λ_{j−i}`. Basis `E_{(i,j),λ}`; product
/// `E_{(j,k),μ}·E_{(i,j),λ} = E_{(i,k),μλ}`.
pub fn reference_subcategory_algebra<F: Field>(a: &GradedAlgebra<F>) -> Result<GradedAlgebra<F>> {
    if !a.is_non_negatively_graded() {
        return Err(Error::NotNonNegativelyGraded);
    }
    let field = a.field();
    let ell = a.sup_degree().unwrap_or(0).max(0) as usize;
    if ell == 0 {
        return Ok(GradedAlgebra::zero_algebra(field));
    }
    let mut basis: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..ell {
        for j in i..ell {
            for b in a.component_indices((j - i) as i32) {
                basis.push((i, j, b));
            }
        }
    }
    let pos: HashMap<(usize, usize, usize), usize> = basis.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let n = basis.len();
    let table = basis
        .iter()
        .map(|&(j, k, mu)| {
            basis
                .iter()
                .map(|&(i, j2, lambda)| {
                    if j2 != j {
                        return Vec::new();
                    }
                    a.product(mu, lambda).iter().map(|(t, c)| (pos[&(i, k, *t)], c.clone())).collect()
                })
                .collect()
        })
        .collect();
    let embed_diag = |x: &[F]| -> Vec<Vec<F>> {
        (0..ell)
            .map(|i| {
                let mut v = vec![F::zero(field); n];
                for b in a.component_indices(0) {
                    v[pos[&(i, i, b)]] = x[b].clone();
                }
                v
            })
            .collect()
    };
    let diag_units = embed_diag(a.unit());
    let mut unit = vec![F::zero(field); n];
    for d in &diag_units {
        for (u, x) in unit.iter_mut().zip(d) {
            *u = u.add(x);
        }
    }
    let idempotents = match a.idempotents() {
        Some(es) => {
            let per: Vec<Vec<Vec<F>>> = es.iter().map(|e| embed_diag(e)).collect();
            Some((0..ell).flat_map(|i| per.iter().map(move |p| p[i].clone())).collect())
        }
        None => None,
    };
    let labels = basis.iter().map(|&(i, j, b)| format!("({i},{j}):{}", a.label(b))).collect();
    GradedAlgebra::from_parts(AlgebraParts {
        field,
        degrees: vec![0; n],
        table,
        unit,
        idempotents,
        labels: Some(labels),
        generators: None,
        radical_hint: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, Family};
    use crate::field::Rat;

    const Q: FieldSpec = FieldSpec::RATIONALS;

    #[test]
    fn upper_triangular() {
        assert!(reference_upper_triangular::<Rat>(0, Q).is_zero_algebra());
        assert_eq!(reference_upper_triangular::<Rat>(1, Q).dim(), 1);
        let t = reference_upper_triangular::<Rat>(2, Q);
        assert_eq!(t.dim(), 3);
        assert_eq!(jacobson_radical(&t).unwrap().basis.dim(), 1);
        assert_eq!(reference_upper_triangular::<Rat>(4, Q).dim(), 10);
    }

    #[test]
    fn auslander_small() {
        assert_eq!(reference_auslander_linear::<Rat>(1, Q).unwrap().dim(), 1);
        assert_eq!(reference_auslander_linear::<Rat>(2, Q).unwrap().dim(), 5);
    }

    #[test]
    fn subcategory_dimensions() {
        for (f, n, d) in [
            (Family::TruncatedPolynomial, 4, 6),
            (Family::Exterior, 1, 1),
            (Family::Exterior, 2, 4),
            (Family::Exterior, 3, 12),
        ] {
            let a = builtin::<Rat>(f, n, Q).unwrap();
            assert_eq!(reference_subcategory_algebra(&a).unwrap().dim(), d);
        }
    }
}
