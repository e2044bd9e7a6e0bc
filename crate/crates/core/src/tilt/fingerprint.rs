use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{jacobson_radical, primitive_idempotents, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Subspace;

/// Simultaneous permutations are enumerated exhaustively up to this many
/// simples; beyond it the vertex order is canonicalized by sorting.
const EXHAUSTIVE_VERTICES: usize = 8;

/// Isomorphism invariants of a finite-dimensional algebra. Agreement is
/// evidence for an isomorphism, not a proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraFingerprint {
    pub dim: usize,
    /// `dim rad^i` for `i = 1..=nilpotency`.
    pub radical_series: Vec<usize>,
    pub nilpotency: usize,
    pub center_dim: usize,
    pub commutative: bool,
    pub simples: Option<usize>,
    /// Matrix sizes of the simple blocks of `Λ/rad`, descending.
    pub block_sizes: Option<Vec<usize>>,
    /// `C[i][j] = dim e_i Λ e_j`, in the canonical vertex order.
    pub cartan: Option<Vec<Vec<usize>>>,
    /// `Q[i][j] = dim e_j (rad/rad²) e_i`, in the same order.
    pub quiver: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "field", rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch(String),
    Inconclusive,
}

/// Compute the fingerprint. The Cartan data is omitted when the semisimple
/// quotient does not split over the base field.
pub fn fingerprint<F: Field>(a: &GradedAlgebra<F>, seed: u64) -> Result<AlgebraFingerprint> {
    let rad = jacobson_radical(a)?;
    let mut fp = AlgebraFingerprint {
        dim: a.dim(),
        radical_series: rad.series_dims.clone(),
        nilpotency: rad.nilpotency,
        center_dim: a.center().dim(),
        commutative: a.is_commutative(),
        simples: None,
        block_sizes: None,
        cartan: None,
        quiver: None,
    };
    let es = match primitive_idempotents(a, seed) {
        Ok(es) => es,
        Err(Error::NonSplitSemisimpleQuotient) => return Ok(fp),
        Err(e) => return Err(e),
    };
    let n = es.len();
    let field = a.field();
    let full = Subspace::full(field, a.dim());
    let rad2 = rad.series.get(1).cloned().unwrap_or_else(|| Subspace::zero(field, a.dim()));
    let corner = |i: usize, j: usize, v: &Subspace<F>| -> Result<usize> {
        let vecs: Vec<Vec<F>> = v.basis().iter().map(|x| a.mul(&a.mul(&es[i], x), &es[j])).collect();
        Ok(Subspace::span(field, a.dim(), &vecs)?.dim())
    };
    let mut cartan = vec![vec![0; n]; n];
    let mut top = vec![vec![0; n]; n];
    let mut quiver = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            cartan[i][j] = corner(i, j, &full)?;
            let r1 = corner(i, j, &rad.basis)?;
            top[i][j] = cartan[i][j] - r1;
            quiver[j][i] = r1 - corner(i, j, &rad2)?;
        }
    }
    fp.simples = Some(n);
    fp.block_sizes = Some(block_sizes(&top));
    let (c, q) = canonical(&cartan, &quiver);
    fp.cartan = Some(c);
    fp.quiver = Some(q);
    Ok(fp)
}

/// Primitive idempotents lie in the same simple block of `Λ/rad` iff the
/// corresponding corner of the quotient is nonzero.
fn block_sizes(top: &[Vec<usize>]) -> Vec<usize> {
    let n = top.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..n {
            if top[i][j] > 0 {
                let (a, b) = (label[i], label[j]);
                if a != b {
                    for l in label.iter_mut() {
                        if *l == b {
                            *l = a;
                        }
                    }
                }
            }
        }
    }
    let mut sizes: Vec<usize> = label.iter().sorted().dedup_with_count().map(|(c, _)| c).collect();
    sizes.sort_unstable_by(|x, y| y.cmp(x));
    sizes
}

fn permute(m: &[Vec<usize>], p: &[usize]) -> Vec<Vec<usize>> {
    p.iter().map(|&i| p.iter().map(|&j| m[i][j]).collect()).collect()
}

/// Lexicographically largest `(Cartan, quiver)` pair over simultaneous vertex
/// permutations.
fn canonical(cartan: &[Vec<usize>], quiver: &[Vec<usize>]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = cartan.len();
    if n > EXHAUSTIVE_VERTICES {
        let order: Vec<usize> = (0..n)
            .sorted_by_key(|&i| {
                let mut row = cartan[i].clone();
                row.sort_unstable();
                let mut col: Vec<usize> = cartan.iter().map(|r| r[i]).collect();
                col.sort_unstable();
                std::cmp::Reverse((row, col, cartan[i][i]))
            })
            .collect();
        return (permute(cartan, &order), permute(quiver, &order));
    }
    (0..n)
        .permutations(n)
        .map(|p| (permute(cartan, &p), permute(quiver, &p)))
        .max()
        .unwrap_or_default()
}

/// `Match` iff every invariant computed on both sides agrees; `Inconclusive`
/// when the idempotent-based ones are missing on either side.
pub fn compare_fingerprints(a: &AlgebraFingerprint, b: &AlgebraFingerprint) -> Verdict {
    macro_rules! field {
        ($name:ident) => {
            if a.$name != b.$name {
                return Verdict::Mismatch(stringify!($name).into());
            }
        };
    }
    field!(dim);
    field!(radical_series);
    field!(nilpotency);
    field!(center_dim);
    field!(commutative);
    if a.cartan.is_none() || b.cartan.is_none() {
        return Verdict::Inconclusive;
    }
    field!(simples);
    field!(block_sizes);
    field!(cartan);
    field!(quiver);
    Verdict::Match
}

pub fn compare<F: Field>(a: &GradedAlgebra<F>, b: &GradedAlgebra<F>, seed: u64) -> Result<Verdict> {
    Ok(compare_fingerprints(&fingerprint(a, seed)?, &fingerprint(b, seed)?))
}
