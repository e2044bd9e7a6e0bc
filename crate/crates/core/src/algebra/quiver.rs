//! Quiver presentations and their compilation to structure constants.
//!
//! Paths compose right to left: the relation term `[b, a]` is the path that
//! first follows `a` and then `b`. The ideal generated by the relations is
//! closed under multiplication by paths up to the nilpotency bound `L` and
//! reduced blockwise per (source, target, degree); afterwards every path of
//! length `L` is checked to lie in the ideal, which makes the truncation exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{sparse_from_dense, AlgebraParts, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm<F> {
    pub coeff: F,
    /// Arrow indices in composition order (the last one is applied first).
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation<F> {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<RelationTerm<F>>>,
    pub nilpotency_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Walk {
    source: usize,
    target: usize,
    /// Arrow indices in the order they are traversed.
    arrows: Vec<usize>,
}

impl Walk {
    fn len(&self) -> usize {
        self.arrows.len()
    }
}

type BlockKey = (usize, usize, i32);

struct Block<F> {
    columns: Vec<Walk>,
    rows: Vec<Vec<F>>,
    exact_rows: usize,
}

pub fn compile_quiver<F: Field>(p: &QuiverPresentation<F>, field: FieldSpec) -> Result<GradedAlgebra<F>> {
    if !F::supports(field) {
        return Err(Error::FieldMismatch);
    }
    let nv = p.vertices.len();
    if nv == 0 {
        return Err(Error::InvalidPresentation("quiver has no vertices".into()));
    }
    let bound = p.nilpotency_bound;
    if bound == 0 {
        return Err(Error::InvalidPresentation("nilpotency bound must be positive".into()));
    }
    for a in &p.arrows {
        if a.source >= nv || a.target >= nv {
            return Err(Error::InvalidPresentation(format!("arrow {} has an unknown endpoint", a.name)));
        }
        if a.degree < 0 {
            return Err(Error::InvalidPresentation(format!("arrow {} has negative degree", a.name)));
        }
    }
    let walk_degree = |w: &Walk| -> i32 { w.arrows.iter().map(|&a| p.arrows[a].degree).sum() };

    // Relations as lists of (coefficient, walk).
    let mut relations: Vec<Vec<(F, Walk)>> = Vec::new();
    for (ri, rel) in p.relations.iter().enumerate() {
        let mut terms = Vec::new();
        for t in rel {
            if t.coeff.spec() != field {
                return Err(Error::FieldMismatch);
            }
            if t.path.is_empty() {
                return Err(Error::InvalidPresentation(format!("relation {ri} contains a trivial path")));
            }
            if t.path.iter().any(|&a| a >= p.arrows.len()) {
                return Err(Error::InvalidPresentation(format!("relation {ri} names an unknown arrow")));
            }
            let arrows: Vec<usize> = t.path.iter().rev().copied().collect();
            for w in arrows.windows(2) {
                if p.arrows[w[0]].target != p.arrows[w[1]].source {
                    return Err(Error::InvalidPresentation(format!("relation {ri} has a non-composable path")));
                }
            }
            let walk = Walk {
                source: p.arrows[arrows[0]].source,
                target: p.arrows[*arrows.last().unwrap()].target,
                arrows,
            };
            terms.push((t.coeff.clone(), walk));
        }
        if terms.is_empty() {
            continue;
        }
        let (s, t, d) = (terms[0].1.source, terms[0].1.target, walk_degree(&terms[0].1));
        for (_, w) in &terms {
            if w.source != s || w.target != t {
                return Err(Error::InvalidPresentation(format!(
                    "relation {ri} mixes paths with different endpoints"
                )));
            }
            if walk_degree(w) != d {
                return Err(Error::NonHomogeneousRelation(ri));
            }
        }
        relations.push(terms);
    }

    // All walks of length ≤ L.
    let mut walks: Vec<Walk> = (0..nv).map(|v| Walk { source: v, target: v, arrows: vec![] }).collect();
    let mut frontier = walks.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &frontier {
            for (ai, a) in p.arrows.iter().enumerate() {
                if a.source == w.target {
                    let mut arrows = w.arrows.clone();
                    arrows.push(ai);
                    next.push(Walk { source: w.source, target: a.target, arrows });
                }
            }
        }
        walks.extend(next.iter().cloned());
        frontier = next;
    }

    // Columns per block, longest paths first so normal forms prefer short paths.
    let mut blocks: BTreeMap<BlockKey, Block<F>> = BTreeMap::new();
    for w in &walks {
        let key = (w.source, w.target, walk_degree(w));
        blocks
            .entry(key)
            .or_insert_with(|| Block { columns: Vec::new(), rows: Vec::new(), exact_rows: 0 })
            .columns
            .push(w.clone());
    }
    let mut position: HashMap<Walk, (BlockKey, usize)> = HashMap::new();
    for (key, b) in blocks.iter_mut() {
        b.columns.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.arrows.cmp(&y.arrows)));
        for (c, w) in b.columns.iter().enumerate() {
            position.insert(w.clone(), (*key, c));
        }
    }

    // Ideal elements u·r·v. Exact ones have every term of length ≤ L; the
    // others are truncated and only used once the bound is verified.
    let mut exact: Vec<(BlockKey, Vec<F>)> = Vec::new();
    let mut truncated: Vec<(BlockKey, Vec<F>)> = Vec::new();
    for rel in &relations {
        let (s, t) = (rel[0].1.source, rel[0].1.target);
        let min_len = rel.iter().map(|(_, w)| w.len()).min().unwrap();
        let max_len = rel.iter().map(|(_, w)| w.len()).max().unwrap();
        if min_len > bound {
            continue;
        }
        let before: Vec<&Walk> = walks.iter().filter(|w| w.target == s && w.len() + min_len <= bound).collect();
        let after: Vec<&Walk> = walks.iter().filter(|w| w.source == t).collect();
        for v in &before {
            for u in &after {
                if v.len() + u.len() + min_len > bound {
                    continue;
                }
                let key = (v.source, u.target, walk_degree(v) + walk_degree(&rel[0].1) + walk_degree(u));
                let ncols = blocks[&key].columns.len();
                let mut vec = vec![F::zero(field); ncols];
                for (c, w) in rel {
                    let mut arrows = v.arrows.clone();
                    arrows.extend(&w.arrows);
                    arrows.extend(&u.arrows);
                    if arrows.len() > bound {
                        continue;
                    }
                    let walk = Walk { source: v.source, target: u.target, arrows };
                    let (_, col) = position[&walk];
                    vec[col] = vec[col].add(c);
                }
                if v.len() + u.len() + max_len <= bound {
                    exact.push((key, vec));
                } else {
                    truncated.push((key, vec));
                }
            }
        }
    }
    for (key, v) in exact {
        let b = blocks.get_mut(&key).unwrap();
        b.rows.push(v);
        b.exact_rows += 1;
    }

    // Verify the bound with the exact part of the ideal only.
    let mut spans: BTreeMap<BlockKey, Subspace<F>> = BTreeMap::new();
    for (key, b) in &blocks {
        let m = Matrix::from_rows(field, b.columns.len(), b.rows.clone())?;
        let span = Subspace::from_matrix(&m);
        for (c, w) in b.columns.iter().enumerate() {
            if w.len() == bound {
                let mut e = vec![F::zero(field); b.columns.len()];
                e[c] = F::one(field);
                if !span.contains(&e) {
                    return Err(Error::VerificationFailed(format!(
                        "a path of length {bound} from vertex {} to vertex {} is nonzero modulo the relations; \
                         the nilpotency bound is too small",
                        p.vertices[w.source], p.vertices[w.target]
                    )));
                }
            }
        }
        spans.insert(*key, span);
    }
    for (key, v) in truncated {
        blocks.get_mut(&key).unwrap().rows.push(v);
    }
    for (key, b) in &blocks {
        if b.rows.len() > b.exact_rows {
            let m = Matrix::from_rows(field, b.columns.len(), b.rows.clone())?;
            spans.insert(*key, Subspace::from_matrix(&m));
        }
    }

    // Standard monomials: non-pivot columns.
    let mut basis: Vec<Walk> = Vec::new();
    for (key, b) in &blocks {
        let span = &spans[key];
        let mut is_pivot = vec![false; b.columns.len()];
        for &pc in span.pivots() {
            is_pivot[pc] = true;
        }
        for (c, w) in b.columns.iter().enumerate() {
            if !is_pivot[c] {
                debug_assert!(w.len() < bound);
                basis.push(w.clone());
            }
        }
    }
    let arrow_order = |w: &Walk| -> (usize, Vec<usize>, usize) { (w.len(), w.arrows.clone(), w.source) };
    basis.sort_by_key(arrow_order);
    let index: HashMap<Walk, usize> = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let n = basis.len();

    // Normal form of an arbitrary walk as a dense vector over the basis.
    let normal_form = |w: &Walk| -> Vec<F> {
        let mut out = vec![F::zero(field); n];
        if w.len() >= bound {
            return out;
        }
        let (key, col) = position[w];
        let b = &blocks[&key];
        let mut e = vec![F::zero(field); b.columns.len()];
        e[col] = F::one(field);
        let r = spans[&key].reduce(&e);
        for (c, x) in r.into_iter().enumerate() {
            if !x.is_zero() {
                out[index[&b.columns[c]]] = x;
            }
        }
        out
    };

    let mut table = vec![vec![Vec::new(); n]; n];
    for (i, pw) in basis.iter().enumerate() {
        for (j, qw) in basis.iter().enumerate() {
            // b_i · b_j = p ∘ q: first q, then p.
            if qw.target != pw.source {
                continue;
            }
            let mut arrows = qw.arrows.clone();
            arrows.extend(&pw.arrows);
            if arrows.len() >= bound {
                continue;
            }
            let w = Walk { source: qw.source, target: pw.target, arrows };
            table[i][j] = sparse_from_dense(&normal_form(&w));
        }
    }

    let trivial = |v: usize| Walk { source: v, target: v, arrows: vec![] };
    let idempotents: Vec<Vec<F>> = (0..nv).map(|v| normal_form(&trivial(v))).collect();
    let mut unit = vec![F::zero(field); n];
    for e in &idempotents {
        for (u, x) in unit.iter_mut().zip(e) {
            *u = u.add(x);
        }
    }
    let mut generators = idempotents.clone();
    for (ai, a) in p.arrows.iter().enumerate() {
        let w = Walk { source: a.source, target: a.target, arrows: vec![ai] };
        let v = normal_form(&w);
        if v.iter().any(|x| !x.is_zero()) {
            generators.push(v);
        }
    }
    let radical_hint = (0..n)
        .filter(|&i| basis[i].len() > 0)
        .map(|i| super::unit_vector(field, n, i))
        .collect();
    let labels = basis
        .iter()
        .map(|w| {
            if w.arrows.is_empty() {
                format!("e{}", p.vertices[w.source])
            } else {
                w.arrows.iter().rev().map(|&a| p.arrows[a].name.clone()).collect::<Vec<_>>().join("*")
            }
        })
        .collect();
    GradedAlgebra::from_parts(AlgebraParts {
        field,
        degrees: basis.iter().map(walk_degree).collect(),
        table,
        unit,
        idempotents: Some(idempotents),
        labels: Some(labels),
        generators: Some(generators),
        radical_hint: Some(radical_hint),
    })
}

/// The example families with built-in presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `k[x]/(x^N)` with `x` in degree 1.
    #[serde(rename = "truncated_polynomial")]
    TruncatedPolynomial,
    /// Preprojective algebra of type `A_n`: `α` arrows in degree 0, `β` in degree 1.
    #[serde(rename = "preprojective_A")]
    PreprojectiveA,
    /// Exterior algebra on `n` generators of degree 1.
    #[serde(rename = "exterior")]
    Exterior,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::TruncatedPolynomial, Family::PreprojectiveA, Family::Exterior];

    pub fn name(&self) -> &'static str {
        match self {
            Family::TruncatedPolynomial => "truncated_polynomial",
            Family::PreprojectiveA => "preprojective_A",
            Family::Exterior => "exterior",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

fn term<F: Field>(field: FieldSpec, coeff: i64, path: Vec<usize>) -> RelationTerm<F> {
    RelationTerm { coeff: F::from_i64(field, coeff), path }
}

/// The presentation used by [`builtin`].
pub fn builtin_presentation<F: Field>(family: Family, parameter: usize, field: FieldSpec) -> Result<QuiverPresentation<F>> {
    if parameter == 0 {
        return Err(Error::InvalidPresentation(format!("{family} needs a parameter ≥ 1")));
    }
    let arrow = |name: String, source, target, degree| Arrow { name, source, target, degree };
    Ok(match family {
        Family::TruncatedPolynomial => QuiverPresentation {
            vertices: vec!["1".into()],
            arrows: vec![arrow("x".into(), 0, 0, 1)],
            relations: vec![vec![term(field, 1, vec![0; parameter])]],
            nilpotency_bound: parameter,
        },
        Family::PreprojectiveA => {
            let n = parameter;
            let mut arrows = Vec::new();
            // α_i = arrow 2(i-1), β_i = arrow 2(i-1)+1 for 1 ≤ i ≤ n-1.
            for i in 0..n.saturating_sub(1) {
                arrows.push(arrow(format!("a{}", i + 1), i, i + 1, 0));
                arrows.push(arrow(format!("b{}", i + 1), i + 1, i, 1));
            }
            let alpha = |i: usize| 2 * (i - 1);
            let beta = |i: usize| 2 * (i - 1) + 1;
            let mut relations = Vec::new();
            if n >= 2 {
                relations.push(vec![term(field, 1, vec![beta(1), alpha(1)])]);
                relations.push(vec![term(field, 1, vec![alpha(n - 1), beta(n - 1)])]);
                for i in 1..=n.saturating_sub(2) {
                    relations.push(vec![
                        term(field, 1, vec![beta(i + 1), alpha(i + 1)]),
                        term(field, -1, vec![alpha(i), beta(i)]),
                    ]);
                }
            }
            QuiverPresentation {
                vertices: (1..=n).map(|i| i.to_string()).collect(),
                arrows,
                relations,
                nilpotency_bound: n,
            }
        }
        Family::Exterior => {
            let n = parameter;
            let arrows = (0..n).map(|i| arrow(format!("x{}", i + 1), 0, 0, 1)).collect();
            let mut relations = Vec::new();
            for i in 0..n {
                relations.push(vec![term(field, 1, vec![i, i])]);
                for j in i + 1..n {
                    relations.push(vec![term(field, 1, vec![i, j]), term(field, 1, vec![j, i])]);
                }
            }
            QuiverPresentation {
                vertices: vec!["1".into()],
                arrows,
                relations,
                nilpotency_bound: n + 1,
            }
        }
    })
}

pub fn builtin<F: Field>(family: Family, parameter: usize, field: FieldSpec) -> Result<GradedAlgebra<F>> {
    compile_quiver(&builtin_presentation(family, parameter, field)?, field)
}
