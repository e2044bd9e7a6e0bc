//! The subcommands, generic over the scalar field.

use std::collections::BTreeMap;
use std::sync::Arc;

use qshape::algebra::{builtin, Family};
use qshape::base_change::{check_bc1, gamma_tensor, i_star, in_e, tensor_algebra};
use qshape::module::{is_projective, projective, regular, simple, GradedModule};
use qshape::stable::stable_ext_table;
use qshape::tilt::{
    check_hypotheses, compare, expected_tilting_dim, fingerprint, gamma, reference_auslander_linear,
    reference_subcategory_algebra, reference_upper_triangular, yamaura_tilting_module, HypothesisReport, Verdict,
};
use qshape::window::{build_window, check_companion_properties};
use qshape::{AlgebraRef, Error, Field, FieldSpec, GradedAlgebra, Result};
use serde_json::{json, Value};

use crate::input::Input;
use crate::report::{error_code, object, scalar, vector, Code};

/// What a command hands back to `main` for the report.
pub struct Outcome {
    pub code: Code,
    pub hypotheses: Option<Value>,
    pub result: Value,
}

fn load<F: Field>(input: &Input) -> Result<AlgebraRef<F>> {
    Ok(Arc::new(input.algebra()?))
}

fn hypotheses_json(h: &HypothesisReport) -> Value {
    let mut v = serde_json::to_value(h).expect("serializable");
    v["violation"] = serde_json::to_value(h.violation()).expect("serializable");
    v
}

fn degree_dims(degrees: &[i32]) -> Value {
    let mut counts = BTreeMap::new();
    for &d in degrees {
        *counts.entry(d).or_insert(0usize) += 1;
    }
    Value::Array(counts.into_iter().map(|(d, c)| json!([d, c])).collect())
}

fn algebra_json<F: Field>(a: &GradedAlgebra<F>) -> Value {
    let n = a.dim();
    let mut constants = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.product(i, j) {
                constants.push(json!([i, j, k, scalar(c)]));
            }
        }
    }
    object(vec![
        ("dim", json!(n)),
        ("degrees", json!(a.degrees())),
        ("unit", vector(a.unit())),
        ("structure_constants", Value::Array(constants)),
    ])
}

/// Runs the hypothesis checks; `Err(outcome)` when they fail.
fn gate<F: Field>(a: &AlgebraRef<F>, bound: usize) -> Result<std::result::Result<Value, Outcome>> {
    let h = check_hypotheses(a, bound)?;
    let v = hypotheses_json(&h);
    if h.violation().is_some() {
        return Ok(Err(Outcome { code: Code::Hypothesis, hypotheses: Some(v), result: Value::Null }));
    }
    Ok(Ok(v))
}

macro_rules! gated {
    ($a:expr, $bound:expr) => {
        match gate($a, $bound)? {
            Ok(v) => v,
            Err(o) => return Ok(o),
        }
    };
}

pub fn check<F: Field>(input: &Input, bound: usize) -> Result<Outcome> {
    let a = load::<F>(input)?;
    let h = check_hypotheses(&a, bound)?;
    let code = if h.violation().is_some() { Code::Hypothesis } else { Code::Pass };
    let result = object(vec![
        ("dim", json!(a.dim())),
        ("vertices", json!(a.idempotents().map_or(0, |e| e.len()))),
        ("degree_dims", degree_dims(a.degrees())),
    ]);
    Ok(Outcome { code, hypotheses: Some(hypotheses_json(&h)), result })
}

pub fn tilt<F: Field>(input: &Input, bound: usize) -> Result<Outcome> {
    let a = load::<F>(input)?;
    let h = gated!(&a, bound);
    let t = yamaura_tilting_module(&a)?;
    let summands: Vec<Value> = t
        .summands
        .iter()
        .enumerate()
        .map(|(i, s)| object(vec![("shift", json!(i)), ("dim", json!(s.dim())), ("degree_dims", degree_dims(s.degrees()))]))
        .collect();
    let result = object(vec![
        ("summands", Value::Array(summands)),
        ("dim", json!(t.module.dim())),
        ("expected_dim", json!(expected_tilting_dim(&a))),
    ]);
    Ok(Outcome { code: Code::Pass, hypotheses: Some(h), result })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reference {
    None,
    Auto,
    UpperTriangular(usize),
    Auslander(usize),
    Subcategory,
}

impl std::str::FromStr for Reference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Reference> {
        let size = |m: &str| m.parse::<usize>().map_err(|_| Error::Parse(format!("bad reference size {m:?}")));
        match s.split_once(':') {
            None if s == "none" => Ok(Reference::None),
            None if s == "auto" => Ok(Reference::Auto),
            None if s == "subcategory" => Ok(Reference::Subcategory),
            Some(("upper_triangular", m)) => Ok(Reference::UpperTriangular(size(m)?)),
            Some(("auslander", m)) => Ok(Reference::Auslander(size(m)?)),
            _ => Err(Error::Parse(format!("unknown reference {s:?}"))),
        }
    }
}

impl Reference {
    /// The reference the family's `Γ` is expected to match.
    pub fn for_family(family: Family, n: usize) -> Reference {
        match family {
            Family::TruncatedPolynomial => Reference::UpperTriangular(n.saturating_sub(1)),
            Family::PreprojectiveA => Reference::Auslander(n.saturating_sub(1)),
            Family::Exterior => Reference::Subcategory,
        }
    }

    fn resolve(&self, input: &Input) -> Reference {
        match (self, input.family()) {
            (Reference::Auto, Some((f, n))) => Reference::for_family(f, n),
            (Reference::Auto, None) => Reference::None,
            (r, _) => r.clone(),
        }
    }

    fn label(&self) -> String {
        match self {
            Reference::None => "none".into(),
            Reference::Auto => "auto".into(),
            Reference::UpperTriangular(m) => format!("upper_triangular:{m}"),
            Reference::Auslander(m) => format!("auslander:{m}"),
            Reference::Subcategory => "subcategory".into(),
        }
    }

    fn build<F: Field>(&self, a: &AlgebraRef<F>, field: FieldSpec) -> Result<Option<GradedAlgebra<F>>> {
        Ok(match self {
            Reference::None | Reference::Auto => None,
            Reference::UpperTriangular(0) | Reference::Auslander(0) => Some(GradedAlgebra::zero_algebra(field)),
            Reference::UpperTriangular(m) => Some(reference_upper_triangular(*m, field)),
            Reference::Auslander(m) => Some(reference_auslander_linear(*m, field)?),
            Reference::Subcategory => Some(reference_subcategory_algebra(a)?),
        })
    }
}

fn verdict_code(v: &Verdict) -> Code {
    if *v == Verdict::Match {
        Code::Pass
    } else {
        Code::Comparison
    }
}

pub fn gamma_cmd<F: Field>(input: &Input, bound: usize, reference: &Reference, seed: u64) -> Result<Outcome> {
    let a = load::<F>(input)?;
    let h = gated!(&a, bound);
    let g = gamma(&a)?;
    let fp = fingerprint(&g.algebra, seed)?;
    let reference = reference.resolve(input);
    let mut code = Code::Pass;
    let comparison = match reference.build(&a, input.field)? {
        None => Value::Null,
        Some(r) => {
            let verdict = compare(&g.algebra, &r, seed)?;
            code = verdict_code(&verdict);
            object(vec![
                ("reference", json!(reference.label())),
                ("reference_fingerprint", json!(fingerprint(&r, seed)?)),
                ("verdict", json!(verdict)),
            ])
        }
    };
    let result = object(vec![
        ("tilting_dim", json!(g.tilting.module.dim())),
        ("gamma", algebra_json(&g.algebra)),
        ("block_idempotents", Value::Array(g.tilting.block_idempotents.iter().map(|e| vector(e)).collect())),
        ("fingerprint", json!(fp)),
        ("comparison", comparison),
    ]);
    Ok(Outcome { code, hypotheses: Some(h), result })
}

fn ext_json(table: &BTreeMap<i32, usize>) -> (bool, Value) {
    let vanishes = table.iter().all(|(&i, &d)| i == 0 || d == 0);
    let rows = table.iter().map(|(i, d)| json!({"degree": i, "dim": d})).collect();
    (vanishes, Value::Array(rows))
}

pub fn ext<F: Field>(input: &Input, bound: usize, range: usize) -> Result<Outcome> {
    let a = load::<F>(input)?;
    let h = gated!(&a, bound);
    let t = yamaura_tilting_module(&a)?.module;
    let table = stable_ext_table(&t, &t, range)?;
    let (vanishes, rows) = ext_json(&table);
    let result = object(vec![
        ("tilting_dim", json!(t.dim())),
        ("range", json!(range)),
        ("table", rows),
        ("vanishes_off_zero", json!(vanishes)),
    ]);
    Ok(Outcome { code: if vanishes { Code::Pass } else { Code::Vanishing }, hypotheses: Some(h), result })
}

pub fn window<F: Field>(input: &Input, bound: usize, lo: i32, hi: i32, serre: bool) -> Result<Outcome> {
    if lo > hi {
        return Err(Error::Parse(format!("empty window: lo {lo} > hi {hi}")));
    }
    let a = load::<F>(input)?;
    let h = gated!(&a, bound);
    let rep = check_companion_properties(&build_window(&a, lo, hi)?, serre)?;
    let passed = rep.passed();
    let mut result = json!(rep);
    result["passed"] = json!(passed);
    Ok(Outcome { code: if passed { Code::Pass } else { Code::Failure }, hypotheses: Some(h), result })
}

/// Regular, indecomposable projectives, simples and `T`, with labels.
fn test_modules<F: Field>(a: &AlgebraRef<F>) -> Result<Vec<(String, GradedModule<F>)>> {
    let count = a.idempotents().map_or(0, |e| e.len());
    let mut mods = vec![("regular".to_string(), regular(a))];
    for i in 1..=count {
        mods.push((format!("P{i}"), projective(a, i)?));
    }
    for i in 1..=count {
        mods.push((format!("S{i}"), simple(a, i)?));
    }
    mods.push(("T".to_string(), yamaura_tilting_module(a)?.module));
    Ok(mods)
}

struct BaseChange {
    pass: bool,
    detail: Value,
}

fn base_change<F: Field>(a: &AlgebraRef<F>, c: &AlgebraRef<F>) -> Result<BaseChange> {
    let t = tensor_algebra(a, c)?;
    let mods = test_modules(a)?;
    let mut pass = true;
    let mut bc1 = Vec::new();
    for (lm, m) in &mods {
        for (ln, n) in &mods {
            let r = check_bc1(m, n, &t)?;
            pass &= r.pass;
            bc1.push(json!({"m": lm, "n": ln, "lhs": r.lhs, "rhs": r.rhs, "pass": r.pass}));
        }
    }
    let mut class_e = Vec::new();
    for (l, m) in &mods {
        let member = in_e(&i_star(m, &t)?, &t)?;
        let proj = is_projective(m)?;
        pass &= member == proj;
        class_e.push(json!({"module": l, "in_e": member, "projective": proj}));
    }
    let gdim = gamma(a)?.algebra.dim();
    let gt = gamma_tensor(a, c)?.product.dim();
    pass &= gt == gdim * c.dim();
    let detail = object(vec![
        ("tensor_dim", json!(t.product.dim())),
        ("coefficient_dim", json!(c.dim())),
        ("bc1", Value::Array(bc1)),
        ("class_e", Value::Array(class_e)),
        ("gamma_dim", json!(gdim)),
        ("gamma_tensor_dim", json!(gt)),
        ("pass", json!(pass)),
    ]);
    Ok(BaseChange { pass, detail })
}

pub fn basechange<F: Field>(input: &Input, coefficients: &Input, bound: usize) -> Result<Outcome> {
    if coefficients.field != input.field {
        return Err(Error::FieldMismatch);
    }
    let a = load::<F>(input)?;
    let h = gated!(&a, bound);
    let c = coefficients.algebra::<F>()?;
    let regraded = !c.is_trivially_graded();
    let c = Arc::new(if regraded { c.forget_grading()? } else { c });
    let bc = base_change(&a, &c)?;
    let mut result = bc.detail;
    result["coefficient_hash"] = json!(coefficients.hash);
    result["coefficient_grading_forgotten"] = json!(regraded);
    Ok(Outcome { code: if bc.pass { Code::Pass } else { Code::Failure }, hypotheses: Some(h), result })
}

// ---------------------------------------------------------------------------
// verify

struct Criterion {
    name: &'static str,
    code: Code,
    pass: bool,
    detail: Value,
}

fn criterion(name: &'static str, code: Code, r: Result<(bool, Value)>) -> Criterion {
    match r {
        Ok((pass, detail)) => Criterion { name, code, pass, detail },
        Err(e) => Criterion { name, code: error_code(&e).max(code), pass: false, detail: json!({"error": e.to_string()}) },
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim Γ` predicted for each family: `N(N−1)/2`, `C(n+2, 4)` and
/// `Σ_d (n−d)·C(n, d)`.
fn expected_gamma_dim(family: Family, n: usize) -> usize {
    match family {
        Family::TruncatedPolynomial => n * (n - 1) / 2,
        Family::PreprojectiveA => binomial(n + 2, 4),
        Family::Exterior => (0..n).map(|d| (n - d) * binomial(n, d)).sum(),
    }
}

fn upper_ones(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| usize::from(j >= i)).collect()).collect()
}

fn verify_criteria<F: Field>(family: Family, n: usize, field: FieldSpec, bound: usize, seed: u64) -> Vec<Criterion> {
    let a: AlgebraRef<F> = match builtin(family, n, field) {
        Ok(a) => Arc::new(a),
        Err(e) => return vec![criterion("hypotheses", Code::Hypothesis, Err(e))],
    };
    let mut out = vec![criterion(
        "hypotheses",
        Code::Hypothesis,
        check_hypotheses(&a, bound).map(|h| (h.violation().is_none(), hypotheses_json(&h))),
    )];
    out.push(criterion(
        "gamma_reference",
        Code::Comparison,
        (|| {
            let g = gamma(&a)?;
            let reference = Reference::for_family(family, n);
            let r = reference.build(&a, field)?.expect("families have references");
            let verdict = compare(&g.algebra, &r, seed)?;
            let fp = fingerprint(&g.algebra, seed)?;
            let expected = expected_gamma_dim(family, n);
            let mut pass = verdict == Verdict::Match && g.algebra.dim() == expected;
            if family == Family::TruncatedPolynomial {
                pass &= fp.cartan == Some(upper_ones(n - 1));
            }
            if g.algebra.dim() == 0 {
                pass &= g.tilting.module.dim() == 0 && g.algebra.is_zero_algebra();
            }
            Ok((
                pass,
                json!({"reference": reference.label(), "verdict": verdict, "gamma_dim": g.algebra.dim(),
                       "expected_dim": expected, "tilting_dim": g.tilting.module.dim(), "fingerprint": fp}),
            ))
        })(),
    ));
    out.push(criterion(
        "tilting_vanishing",
        Code::Vanishing,
        (|| {
            let g = gamma(&a)?;
            let table = stable_ext_table(&g.tilting.module, &g.tilting.module, 5)?;
            let (vanishes, rows) = ext_json(&table);
            let pass = vanishes && table.get(&0) == Some(&g.algebra.dim());
            Ok((pass, json!({"range": 5, "table": rows})))
        })(),
    ));
    out.push(criterion(
        "companion_window",
        Code::Failure,
        (|| {
            let rep = check_companion_properties(&build_window(&a, -6, 6)?, true)?;
            let mut pass = rep.passed();
            if family == Family::TruncatedPolynomial {
                pass &= rep.radical_nilpotency == Some(n);
            }
            Ok((
                pass,
                json!({"lo": -6, "hi": 6, "radical_nilpotency": rep.radical_nilpotency,
                       "band_width": rep.band_width, "serre": rep.serre, "passed": rep.passed()}),
            ))
        })(),
    ));
    out.push(criterion(
        "base_change",
        Code::Failure,
        (|| {
            let coefficients: [(&str, AlgebraRef<F>); 3] = [
                ("k", Arc::new(reference_upper_triangular(1, field))),
                ("dual_numbers", Arc::new(builtin(Family::TruncatedPolynomial, 2, field)?.forget_grading()?)),
                ("upper_triangular:2", Arc::new(reference_upper_triangular(2, field))),
            ];
            let mut pass = true;
            let mut detail = serde_json::Map::new();
            for (name, c) in &coefficients {
                let bc = base_change(&a, c)?;
                pass &= bc.pass;
                let checks = bc.detail["bc1"].as_array().map_or(0, Vec::len);
                detail.insert(
                    name.to_string(),
                    json!({"bc1_checks": checks, "pass": bc.pass, "gamma_tensor_dim": bc.detail["gamma_tensor_dim"]}),
                );
            }
            Ok((pass, Value::Object(detail)))
        })(),
    ));
    out
}

fn criteria_json(cs: &[Criterion]) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "exit_code": c.code as i32, "detail": c.detail}))
            .collect(),
    )
}

/// Independent field for the field-independence criterion.
pub const CROSS_CHECK_PRIME: u32 = 32003;

pub fn verify<F: Field>(family: Family, n: usize, field: FieldSpec, bound: usize, seed: u64) -> Outcome {
    let mut cs = verify_criteria::<F>(family, n, field, bound, seed);
    let hypotheses = Some(cs[0].detail.clone());
    let other = if field.characteristic == 0 {
        FieldSpec::prime(CROSS_CHECK_PRIME).expect("prime")
    } else {
        FieldSpec::RATIONALS
    };
    let theirs = if other.characteristic == 0 {
        verify_criteria::<qshape::Rat>(family, n, other, bound, seed)
    } else {
        verify_criteria::<qshape::Fp>(family, n, other, bound, seed)
    };
    let differing: Vec<&str> = cs
        .iter()
        .zip(&theirs)
        .filter(|(x, y)| x.pass != y.pass || x.detail != y.detail || !y.pass)
        .map(|(x, _)| x.name)
        .collect();
    cs.push(Criterion {
        name: "field_independence",
        code: Code::Failure,
        pass: differing.is_empty() && cs.len() == theirs.len(),
        detail: json!({"against_char": other.characteristic, "differing": differing}),
    });
    let code = cs.iter().find(|c| !c.pass).map_or(Code::Pass, |c| c.code);
    let result = object(vec![
        ("family", json!(family.name())),
        ("parameter", json!(n)),
        ("criteria", criteria_json(&cs)),
        ("passed", json!(code == Code::Pass)),
    ]);
    Outcome { code, hypotheses, result }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonzero_off_degree_zero_is_flagged() {
        let ok: BTreeMap<i32, usize> = [(-1, 0), (0, 3), (1, 0)].into();
        assert!(ext_json(&ok).0);
        let bad: BTreeMap<i32, usize> = [(-1, 0), (0, 3), (1, 1)].into();
        assert!(!ext_json(&bad).0);
    }

    #[test]
    fn references_parse() {
        assert_eq!("auslander:3".parse::<Reference>().unwrap(), Reference::Auslander(3));
        assert_eq!("upper_triangular:2".parse::<Reference>().unwrap(), Reference::UpperTriangular(2));
        assert_eq!("none".parse::<Reference>().unwrap(), Reference::None);
        assert!("auslander:x".parse::<Reference>().is_err());
        assert!("subcategory:1".parse::<Reference>().is_err());
    }

    #[test]
    fn expected_dims() {
        assert_eq!((2..=6).map(|n| expected_gamma_dim(Family::TruncatedPolynomial, n)).collect::<Vec<_>>(), [1, 3, 6, 10, 15]);
        assert_eq!((1..=4).map(|n| expected_gamma_dim(Family::PreprojectiveA, n)).collect::<Vec<_>>(), [0, 1, 5, 15]);
        assert_eq!((1..=3).map(|n| expected_gamma_dim(Family::Exterior, n)).collect::<Vec<_>>(), [1, 4, 12]);
    }
}
