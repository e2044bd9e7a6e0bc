use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// The Jacobson radical with its power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalData<F> {
    pub basis: Subspace<F>,
    /// `series[i]` is `rad^{i+1}`; the last entry is the zero space.
    pub series: Vec<Subspace<F>>,
    /// `dim rad^i` for `i = 1..=nilpotency`.
    pub series_dims: Vec<usize>,
    /// Minimal `N` with `rad^N = 0`.
    pub nilpotency: usize,
}

/// Jacobson radical, cached on the algebra.
///
/// Quiver algebras use the arrow ideal. Otherwise the radical is the kernel of
/// the trace form `(x, y) ↦ tr(R_{xy})`, which needs characteristic 0 or
/// `p > dim`.
pub fn jacobson_radical<F: Field>(a: &GradedAlgebra<F>) -> Result<RadicalData<F>> {
    a.cached_radical().get_or_init(|| compute(a)).clone()
}

fn compute<F: Field>(a: &GradedAlgebra<F>) -> Result<RadicalData<F>> {
    let n = a.dim();
    let field = a.field();
    let basis = if let Some(hint) = a.radical_hint() {
        Subspace::span(field, n, hint)?
    } else {
        let p = field.characteristic as usize;
        if p != 0 && p <= n {
            return Err(Error::UnsupportedCharacteristic { characteristic: field.characteristic, dim: n });
        }
        let traces: Vec<F> = (0..n)
            .map(|k| {
                let r = a.right_mult_matrix(&a.basis_vector(k));
                (0..n).fold(F::zero(field), |acc, i| acc.add(r.get(i, i)))
            })
            .collect();
        let mut g = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                let mut t = F::zero(field);
                for (k, c) in a.product(i, j) {
                    t.add_mul_assign(c, &traces[*k]);
                }
                g.set(i, j, t);
            }
        }
        Subspace::span(field, n, &g.left_kernel_basis())?
    };
    let mut series = vec![basis.clone()];
    while series.last().unwrap().dim() > 0 {
        let prev = series.last().unwrap();
        let mut products = Vec::with_capacity(prev.dim() * basis.dim());
        for x in prev.basis() {
            for y in basis.basis() {
                products.push(a.mul(x, y));
            }
        }
        let next = Subspace::span(field, n, &products)?;
        if next.dim() >= prev.dim() {
            return Err(Error::InvalidAlgebra("radical candidate is not nilpotent".into()));
        }
        series.push(next);
    }
    let series_dims: Vec<usize> = series.iter().map(|s| s.dim()).collect();
    Ok(RadicalData { nilpotency: series.len(), basis, series, series_dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, Family};
    use crate::field::{FieldSpec, Fp, Rat};

    #[test]
    fn truncated_polynomial_radical() {
        let a = builtin::<Rat>(Family::TruncatedPolynomial, 2, FieldSpec::RATIONALS).unwrap();
        let r = jacobson_radical(&a).unwrap();
        assert_eq!(r.basis.dim(), 1);
        assert_eq!(r.nilpotency, 2);
        assert_eq!(r.series_dims, vec![1, 0]);
    }

    #[test]
    fn semisimple_radical_is_zero() {
        let a = crate::algebra::tests::k_times_k();
        let r = jacobson_radical(&a).unwrap();
        assert_eq!(r.basis.dim(), 0);
        assert_eq!(r.nilpotency, 1);
    }

    #[test]
    fn preprojective_a2_radical() {
        let a = builtin::<Rat>(Family::PreprojectiveA, 2, FieldSpec::RATIONALS).unwrap();
        let r = jacobson_radical(&a).unwrap();
        assert_eq!(r.basis.dim(), 2);
        assert_eq!(r.nilpotency, 2);
    }

    #[test]
    fn trace_form_agrees_with_arrow_ideal() {
        for (fam, n) in [(Family::PreprojectiveA, 3), (Family::Exterior, 2), (Family::TruncatedPolynomial, 4)] {
            let a = builtin::<Rat>(fam, n, FieldSpec::RATIONALS).unwrap();
            let hinted = jacobson_radical(&a).unwrap();
            let mut parts = a.to_parts();
            parts.radical_hint = None;
            let b = GradedAlgebra::from_parts(parts).unwrap();
            let traced = jacobson_radical(&b).unwrap();
            assert_eq!(hinted.basis, traced.basis);
            assert_eq!(hinted.series_dims, traced.series_dims);
        }
    }

    #[test]
    fn small_characteristic_is_refused_without_hint() {
        let f = FieldSpec::prime(3).unwrap();
        let a = builtin::<Fp>(Family::TruncatedPolynomial, 4, f).unwrap();
        let mut parts = a.to_parts();
        parts.radical_hint = None;
        let b = GradedAlgebra::from_parts(parts).unwrap();
        assert!(matches!(jacobson_radical(&b), Err(Error::UnsupportedCharacteristic { .. })));
    }
}
