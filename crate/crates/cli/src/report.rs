//! Exit codes, scalar serialization and report rendering.

use qshape::{Error, Field};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Code {
    Pass = 0,
    /// A verification outside the fixed contract failed, or an internal error.
    Failure = 1,
    Parse = 2,
    Hypothesis = 3,
    Comparison = 4,
    Vanishing = 5,
}

impl Code {
    pub fn status(self) -> &'static str {
        match self {
            Code::Pass => "pass",
            Code::Failure => "fail",
            Code::Parse => "parse_error",
            Code::Hypothesis => "hypothesis_failure",
            Code::Comparison => "comparison_failure",
            Code::Vanishing => "vanishing_failure",
        }
    }
}

pub fn error_code(e: &Error) -> Code {
    match e {
        Error::Parse(_)
        | Error::InvalidPresentation(_)
        | Error::NonHomogeneousRelation(_)
        | Error::UnknownFamily(_)
        | Error::InvalidField(_)
        | Error::FieldMismatch => Code::Parse,
        Error::HypothesisViolated(_) | Error::NotSelfInjective | Error::NotNonNegativelyGraded => Code::Hypothesis,
        _ => Code::Failure,
    }
}

/// `"p/q"` (or `"p"`) over ℚ, the least residue as a number over GF(p).
pub fn scalar<F: Field>(x: &F) -> Value {
    if x.rational_parts().is_some() {
        Value::String(x.to_canonical_string())
    } else {
        x.to_canonical_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::String(x.to_canonical_string()))
    }
}

pub fn vector<F: Field>(v: &[F]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

/// `key.path: value` lines, in the same order as the JSON.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    flatten("", v, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) && !is_matrix(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        _ => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&v.to_string());
            out.push('\n');
        }
    }
}

fn is_matrix(a: &[Value]) -> bool {
    a.iter().all(|r| r.as_array().is_some_and(|r| r.iter().all(|x| !x.is_object() && !x.is_array())))
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qshape::{FieldSpec, Fp, Rat};
    use serde_json::json;

    #[test]
    fn scalars() {
        assert_eq!(scalar(&Rat::new(-3, 6)), json!("-1/2"));
        assert_eq!(scalar(&Rat::new(4, 1)), json!("4"));
        let p = FieldSpec::prime(7).unwrap();
        assert_eq!(scalar(&Fp::from_i64(p, -1)), json!(6));
    }

    #[test]
    fn text_rendering() {
        let v = json!({"a": {"b": 1, "c": [[1, 2], [3, 4]]}, "d": [{"e": true}]});
        assert_eq!(text(&v), "a.b: 1\na.c: [[1,2],[3,4]]\nd.0.e: true\n");
    }
}
