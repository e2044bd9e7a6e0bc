//! Complete sets of primitive orthogonal idempotents for algebras that do not
//! come with one.
//!
//! The semisimple quotient is split one idempotent at a time: an element `y`
//! of `eSe` with a root `λ` of its minimal polynomial gives the zero divisor
//! `z = y − λe`, and the left identity of the right ideal `z·eSe` is a proper
//! idempotent. The pieces are lifted through the radical by `e ← 3e² − 2e³`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{jacobson_radical, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::{is_zero_vec, Matrix, Subspace};

pub const DEFAULT_SEED: u64 = 0;

const RANDOM_ATTEMPTS: usize = 48;

/// Primitive orthogonal idempotents summing to 1, in degree 0 when the
/// algebra is non-negatively graded. Uses the stored set when present.
pub fn primitive_idempotents<F: Field>(a: &GradedAlgebra<F>, seed: u64) -> Result<Vec<Vec<F>>> {
    if let Some(es) = a.idempotents() {
        return Ok(es.to_vec());
    }
    if a.dim() == 0 {
        return Ok(Vec::new());
    }
    let (work, embed): (GradedAlgebra<F>, Vec<usize>) = if a.is_non_negatively_graded() && !a.is_trivially_graded() {
        a.degree_zero_subalgebra()?
    } else {
        (a.forget_grading()?, (0..a.dim()).collect())
    };
    let local = lift_all(&work, seed)?;
    Ok(local
        .into_iter()
        .map(|e| {
            let mut v = a.zero_vector();
            for (x, &i) in e.into_iter().zip(&embed) {
                v[i] = x;
            }
            v
        })
        .collect())
}

fn lift_all<F: Field>(b: &GradedAlgebra<F>, seed: u64) -> Result<Vec<Vec<F>>> {
    let rad = jacobson_radical(b)?;
    let q = b.quotient(&rad.basis, Some(Vec::new()))?;
    let s = &q.algebra;
    let pieces = split_semisimple(s, seed)?;
    let mut lifted: Vec<Vec<F>> = Vec::with_capacity(pieces.len());
    let mut rest = b.unit().to_vec();
    for (k, eps) in pieces.iter().enumerate() {
        if k + 1 == pieces.len() {
            lifted.push(rest.clone());
            break;
        }
        let x = b.mul(&b.mul(&rest, &q.lift(eps)), &rest);
        let e = newton_idempotent(b, x)?;
        for (r, y) in rest.iter_mut().zip(&e) {
            *r = r.sub(y);
        }
        lifted.push(e);
    }
    debug_assert!(lifted.iter().all(|e| b.mul(e, e) == *e));
    Ok(lifted)
}

fn newton_idempotent<F: Field>(b: &GradedAlgebra<F>, mut e: Vec<F>) -> Result<Vec<F>> {
    let field = b.field();
    let three = F::from_i64(field, 3);
    let two = F::from_i64(field, 2);
    for _ in 0..64 {
        let e2 = b.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = b.mul(&e2, &e);
        e = e2.iter().zip(&e3).map(|(x, y)| three.mul(x).sub(&two.mul(y))).collect();
    }
    Err(Error::InvalidAlgebra("idempotent lifting did not converge".into()))
}

/// Split the unit of a semisimple algebra into primitive idempotents.
fn split_semisimple<F: Field>(s: &GradedAlgebra<F>, seed: u64) -> Result<Vec<Vec<F>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = Vec::new();
    let mut todo = vec![s.unit().to_vec()];
    while let Some(e) = todo.pop() {
        let corner = corner_space(s, &e)?;
        if corner.dim() <= 1 {
            done.push(e);
            continue;
        }
        let f = split_once(s, &e, &corner, &mut rng)?;
        let g: Vec<F> = e.iter().zip(&f).map(|(x, y)| x.sub(y)).collect();
        todo.push(g);
        todo.push(f);
    }
    // Deterministic order: by the position of the first nonzero coefficient.
    done.sort_by_key(|e| e.iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX));
    Ok(done)
}

fn corner_space<F: Field>(s: &GradedAlgebra<F>, e: &[F]) -> Result<Subspace<F>> {
    let vs: Vec<Vec<F>> = (0..s.dim()).map(|k| s.mul(&s.mul(e, &s.basis_vector(k)), e)).collect();
    Subspace::span(s.field(), s.dim(), &vs)
}

fn split_once<F: Field>(s: &GradedAlgebra<F>, e: &[F], corner: &Subspace<F>, rng: &mut ChaCha8Rng) -> Result<Vec<F>> {
    let field = s.field();
    let mut candidates: Vec<Vec<F>> = corner.basis().to_vec();
    for _ in 0..RANDOM_ATTEMPTS {
        let mut y = vec![F::zero(field); s.dim()];
        for v in corner.basis() {
            let c = F::from_i64(field, rng.random_range(-4i64..=4));
            for (a, b) in y.iter_mut().zip(v) {
                a.add_mul_assign(&c, b);
            }
        }
        candidates.push(y);
    }
    for y in candidates {
        let minpoly = minimal_polynomial(s, e, &y);
        if minpoly.len() <= 2 {
            continue;
        }
        let Some(lambda) = find_root(&minpoly, field, rng) else { continue };
        let z: Vec<F> = y.iter().zip(e).map(|(a, b)| a.sub(&lambda.mul(b))).collect();
        if let Some(f) = left_identity_of_right_ideal(s, &z, corner)? {
            return Ok(f);
        }
    }
    Err(Error::NonSplitSemisimpleQuotient)
}

/// Monic minimal polynomial of `y` inside the corner algebra with unit `e`,
/// coefficients from the constant term up.
fn minimal_polynomial<F: Field>(s: &GradedAlgebra<F>, e: &[F], y: &[F]) -> Vec<F> {
    let field = s.field();
    let mut powers: Vec<Vec<F>> = vec![e.to_vec()];
    loop {
        let next = s.mul(powers.last().unwrap(), y);
        // Solve Σ c_i y^i = y^k.
        let m = Matrix::from_rows(field, s.dim(), powers.clone()).expect("consistent");
        if let Some(c) = m.solve_left(&next) {
            let mut poly: Vec<F> = c.into_iter().map(|x| x.neg()).collect();
            poly.push(F::one(field));
            return poly;
        }
        powers.push(next);
    }
}

/// `f ∈ J = z·eSe` with `f·u = u` for every `u ∈ J`.
fn left_identity_of_right_ideal<F: Field>(
    s: &GradedAlgebra<F>,
    z: &[F],
    corner: &Subspace<F>,
) -> Result<Option<Vec<F>>> {
    let field = s.field();
    let n = s.dim();
    let gens: Vec<Vec<F>> = corner.basis().iter().map(|c| s.mul(z, c)).collect();
    let ideal = Subspace::span(field, n, &gens)?;
    let r = ideal.dim();
    if r == 0 || r == corner.dim() {
        return Ok(None);
    }
    let j = ideal.basis();
    // Unknowns c_k, f = Σ c_k j_k; equations f·j_l = j_l.
    let mut rows = Vec::with_capacity(r);
    for jk in j {
        let mut row = Vec::with_capacity(r * n);
        for jl in j {
            row.extend(s.mul(jk, jl));
        }
        rows.push(row);
    }
    let m = Matrix::from_rows(field, r * n, rows)?;
    let rhs: Vec<F> = j.iter().flat_map(|v| v.iter().cloned()).collect();
    let Some(c) = m.solve_left(&rhs) else { return Ok(None) };
    let mut f = vec![F::zero(field); n];
    for (ck, jk) in c.iter().zip(j) {
        for (a, b) in f.iter_mut().zip(jk) {
            a.add_mul_assign(ck, b);
        }
    }
    if is_zero_vec(&f) || s.mul(&f, &f) != f {
        return Ok(None);
    }
    Ok(Some(f))
}

// ---------------------------------------------------------------------------
// Roots of polynomials (coefficients from the constant term up)

fn eval<F: Field>(p: &[F], x: &F, field: FieldSpec) -> F {
    p.iter().rev().fold(F::zero(field), |acc, c| acc.mul(x).add(c))
}

fn find_root<F: Field>(p: &[F], field: FieldSpec, rng: &mut ChaCha8Rng) -> Option<F> {
    if p[0].is_zero() {
        return Some(F::zero(field));
    }
    if field.is_rational() {
        rational_root(p, field)
    } else {
        prime_field_root(p, field, rng)
    }
}

fn small_divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.abs().to_i64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1i64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

fn rational_root<F: Field>(p: &[F], field: FieldSpec) -> Option<F> {
    let parts: Vec<(BigInt, BigInt)> = p.iter().map(|c| c.rational_parts()).collect::<Option<_>>()?;
    let lcm = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let ints: Vec<BigInt> = parts.iter().map(|(n, d)| n * (&lcm / d)).collect();
    let lead = ints.last()?;
    let constant = &ints[0];
    if constant.is_zero() {
        return Some(F::zero(field));
    }
    let nums = small_divisors(constant)?;
    let dens = small_divisors(lead)?;
    for q in &dens {
        for num in &nums {
            for sign in [1i64, -1] {
                let g = num.gcd(q);
                if g != 1 {
                    continue;
                }
                let x = F::from_i64(field, sign * num).div(&F::from_i64(field, *q));
                if eval(p, &x, field).is_zero() {
                    return Some(x);
                }
            }
        }
    }
    None
}

fn trim<F: Field>(p: &mut Vec<F>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_rem<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv();
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap().mul(&lead_inv);
        for (i, bi) in b.iter().enumerate() {
            r[shift + i].sub_mul_assign(&c, bi);
        }
        trim(&mut r);
    }
    r
}

fn poly_mul_mod<F: Field>(a: &[F], b: &[F], m: &[F], field: FieldSpec) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_mul_assign(x, y);
        }
    }
    poly_rem(&out, m)
}

fn poly_pow_mod<F: Field>(base: &[F], mut e: u64, m: &[F], field: FieldSpec) -> Vec<F> {
    let mut result = vec![F::one(field)];
    let mut b = poly_rem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &b, m, field);
        }
        b = poly_mul_mod(&b, &b, m, field);
        e >>= 1;
    }
    result
}

fn poly_gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        let inv = l.inv();
        for c in x.iter_mut() {
            *c = c.mul(&inv);
        }
    }
    x
}

/// Roots over GF(p): restrict to the product of linear factors with
/// `gcd(f, x^p − x)`, then split it with random `gcd((x + a)^((p−1)/2) − 1, g)`.
fn prime_field_root<F: Field>(p: &[F], field: FieldSpec, rng: &mut ChaCha8Rng) -> Option<F> {
    let q = field.characteristic as u64;
    if q <= 1024 {
        return (0..q as i64).map(|v| F::from_i64(field, v)).find(|x| eval(p, x, field).is_zero());
    }
    let x = vec![F::zero(field), F::one(field)];
    let mut xp = poly_pow_mod(&x, q, p, field);
    xp.resize(xp.len().max(2), F::zero(field));
    xp[1] = xp[1].sub(&F::one(field));
    let mut g = poly_gcd(p, &xp);
    if g.len() < 2 {
        return None;
    }
    for _ in 0..200 {
        if g.len() == 2 {
            // x + c  →  root −c
            return Some(g[0].neg());
        }
        let a = F::from_i64(field, rng.random_range(0..q as i64));
        let shifted = vec![a, F::one(field)];
        let mut h = poly_pow_mod(&shifted, (q - 1) / 2, &g, field);
        if h.is_empty() {
            continue;
        }
        h[0] = h[0].sub(&F::one(field));
        let d = poly_gcd(&g, &h);
        if d.len() >= 2 && d.len() < g.len() {
            g = d;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, AlgebraParts, Family};
    use crate::field::{Fp, Rat};

    fn check_complete<F: Field>(a: &GradedAlgebra<F>, es: &[Vec<F>]) {
        let mut sum = a.zero_vector();
        for (i, e) in es.iter().enumerate() {
            for (j, f) in es.iter().enumerate() {
                let p = a.mul(e, f);
                if i == j {
                    assert_eq!(&p, e);
                } else {
                    assert!(is_zero_vec(&p));
                }
            }
            for (s, x) in sum.iter_mut().zip(e) {
                *s = s.add(x);
            }
        }
        assert_eq!(sum, a.unit());
    }

    /// Upper-triangular 2×2 matrices with the idempotents hidden.
    fn t2<F: Field>(field: FieldSpec) -> GradedAlgebra<F> {
        // basis E11, E12, E22
        let one = F::one(field);
        let mut table = vec![vec![Vec::new(); 3]; 3];
        table[0][0] = vec![(0, one.clone())];
        table[0][1] = vec![(1, one.clone())];
        table[1][2] = vec![(1, one.clone())];
        table[2][2] = vec![(2, one.clone())];
        GradedAlgebra::from_parts(AlgebraParts {
            field,
            degrees: vec![0; 3],
            table,
            unit: vec![one.clone(), F::zero(field), one],
            idempotents: None,
            labels: None,
            generators: None,
            radical_hint: None,
        })
        .unwrap()
    }

    #[test]
    fn local_algebra_has_one_idempotent() {
        let a = builtin::<Rat>(Family::TruncatedPolynomial, 3, FieldSpec::RATIONALS).unwrap();
        let mut parts = a.to_parts();
        parts.idempotents = None;
        let b = GradedAlgebra::from_parts(parts).unwrap();
        let es = primitive_idempotents(&b, DEFAULT_SEED).unwrap();
        assert_eq!(es.len(), 1);
        assert_eq!(es[0], b.unit());
    }

    #[test]
    fn upper_triangular_splits_over_both_fields() {
        let a = t2::<Rat>(FieldSpec::RATIONALS);
        let es = primitive_idempotents(&a, DEFAULT_SEED).unwrap();
        assert_eq!(es.len(), 2);
        check_complete(&a, &es);
        let f = FieldSpec::prime(32003).unwrap();
        let b = t2::<Fp>(f);
        let es = primitive_idempotents(&b, 7).unwrap();
        assert_eq!(es.len(), 2);
        check_complete(&b, &es);
    }

    #[test]
    fn matrix_algebra_splits() {
        // M_2(k): basis E11, E12, E21, E22, E_ij E_jk = E_ik
        let field = FieldSpec::RATIONALS;
        let one = Rat::one(field);
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut table = vec![vec![Vec::new(); 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    table[idx(i, j)][idx(j, k)] = vec![(idx(i, k), one.clone())];
                }
            }
        }
        let zero = Rat::zero(field);
        let a = GradedAlgebra::from_parts(AlgebraParts {
            field,
            degrees: vec![0; 4],
            table,
            unit: vec![one.clone(), zero.clone(), zero, one],
            idempotents: None,
            labels: None,
            generators: None,
            radical_hint: None,
        })
        .unwrap();
        let es = primitive_idempotents(&a, DEFAULT_SEED).unwrap();
        assert_eq!(es.len(), 2);
        check_complete(&a, &es);
    }

    #[test]
    fn field_extension_does_not_split() {
        // ℚ(i) = ℚ[t]/(t² + 1) is semisimple but not split.
        let field = FieldSpec::RATIONALS;
        let one = Rat::one(field);
        let mut table = vec![vec![Vec::new(); 2]; 2];
        table[0][0] = vec![(0, one.clone())];
        table[0][1] = vec![(1, one.clone())];
        table[1][0] = vec![(1, one.clone())];
        table[1][1] = vec![(0, one.neg())];
        let a = GradedAlgebra::from_parts(AlgebraParts {
            field,
            degrees: vec![0; 2],
            table,
            unit: vec![one, Rat::zero(field)],
            idempotents: None,
            labels: None,
            generators: None,
            radical_hint: None,
        })
        .unwrap();
        // dim eSe = 2 but the minimal polynomial t² + 1 has no rational root.
        assert!(matches!(primitive_idempotents(&a, DEFAULT_SEED), Err(Error::NonSplitSemisimpleQuotient)));
    }

    #[test]
    fn prime_field_roots() {
        let f = FieldSpec::prime(32003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x − 5)(x − 7) = x² − 12x + 35
        let p = vec![Fp::from_i64(f, 35), Fp::from_i64(f, -12), Fp::from_i64(f, 1)];
        let r = prime_field_root(&p, f, &mut rng).unwrap();
        assert!(r.value() == 5 || r.value() == 7);
        // x² + 1 has no root mod 32003 (32003 ≡ 3 mod 4)
        let q = vec![Fp::from_i64(f, 1), Fp::from_i64(f, 0), Fp::from_i64(f, 1)];
        assert!(prime_field_root(&q, f, &mut rng).is_none());
    }

    #[test]
    fn rational_roots() {
        let f = FieldSpec::RATIONALS;
        // 6x² − 5x + 1 = (2x − 1)(3x − 1)
        let p = vec![Rat::new(1, 1), Rat::new(-5, 1), Rat::new(6, 1)];
        let r = rational_root(&p, f).unwrap();
        assert!(r == Rat::new(1, 2) || r == Rat::new(1, 3));
        let q = vec![Rat::new(-2, 1), Rat::new(0, 1), Rat::new(1, 1)];
        assert!(rational_root(&q, f).is_none());
    }
}
