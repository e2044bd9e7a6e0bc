//! The algebra file format and its translation into library calls.

use std::collections::HashMap;

use qshape::algebra::{builtin, compile_quiver, Arrow, Family, QuiverPresentation, RelationTerm};
use qshape::field::parse_scalar;
use qshape::{Error, Field, FieldSpec, GradedAlgebra, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldEntry {
    #[serde(rename = "char")]
    pub characteristic: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinEntry {
    pub family: String,
    pub parameter: usize,
}

/// Vertices may be written as strings or bare integers; both are names.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Name {
    Int(i64),
    Text(String),
}

impl Name {
    fn text(&self) -> String {
        match self {
            Name::Int(n) => n.to_string(),
            Name::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub name: String,
    pub from: Name,
    pub to: Name,
    #[serde(default)]
    pub degree: i32,
}

/// An integer or a `"p/q"` string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub coeff: Coeff,
    /// Arrow names in composition order: the last one is applied first.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverEntry {
    pub vertices: Vec<Name>,
    pub arrows: Vec<ArrowEntry>,
    #[serde(default)]
    pub relations: Vec<Vec<TermEntry>>,
    pub nilpotency_bound: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<BuiltinEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverEntry>,
}

/// A parsed algebra file together with the hash of its bytes.
#[derive(Clone, Debug)]
pub struct Input {
    pub file: AlgebraFile,
    pub hash: String,
    pub field: FieldSpec,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Input {
    pub fn from_bytes(bytes: &[u8]) -> Result<Input> {
        let file: AlgebraFile = serde_json::from_slice(bytes).map_err(|e| parse_err(e.to_string()))?;
        match (&file.builtin, &file.quiver) {
            (Some(_), Some(_)) => return Err(parse_err("give either builtin or quiver, not both")),
            (None, None) => return Err(parse_err("algebra file needs a builtin or a quiver entry")),
            _ => {}
        }
        let field = FieldSpec::new(file.field.characteristic)?;
        Ok(Input { file, hash: sha256_hex(bytes), field })
    }

    /// The file a `--builtin` flag stands for; hashed in its canonical form.
    pub fn builtin(family: &str, parameter: usize, characteristic: u32) -> Result<Input> {
        let file = AlgebraFile {
            field: FieldEntry { characteristic },
            builtin: Some(BuiltinEntry { family: family.to_string(), parameter }),
            quiver: None,
        };
        let bytes = serde_json::to_vec(&file).map_err(|e| parse_err(e.to_string()))?;
        Input::from_bytes(&bytes)
    }

    pub fn family(&self) -> Option<(Family, usize)> {
        let b = self.file.builtin.as_ref()?;
        Some((b.family.parse().ok()?, b.parameter))
    }

    pub fn algebra<F: Field>(&self) -> Result<GradedAlgebra<F>> {
        if let Some(b) = &self.file.builtin {
            let family: Family = b.family.parse()?;
            return builtin(family, b.parameter, self.field);
        }
        let q = self.file.quiver.as_ref().expect("checked on parse");
        compile_quiver(&presentation(q, self.field)?, self.field)
    }
}

fn coefficient<F: Field>(c: &Coeff, field: FieldSpec) -> Result<F> {
    match c {
        Coeff::Int(n) => Ok(F::from_i64(field, *n)),
        Coeff::Text(s) => parse_scalar(field, s),
    }
}

fn presentation<F: Field>(q: &QuiverEntry, field: FieldSpec) -> Result<QuiverPresentation<F>> {
    let vertices: Vec<String> = q.vertices.iter().map(Name::text).collect();
    let mut vertex_index = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        if vertex_index.insert(v.clone(), i).is_some() {
            return Err(parse_err(format!("duplicate vertex {v:?}")));
        }
    }
    let lookup = |n: &Name| {
        let t = n.text();
        vertex_index.get(&t).copied().ok_or_else(|| parse_err(format!("unknown vertex {t:?}")))
    };
    let mut arrow_index = HashMap::new();
    let mut arrows = Vec::with_capacity(q.arrows.len());
    for (i, a) in q.arrows.iter().enumerate() {
        if arrow_index.insert(a.name.clone(), i).is_some() {
            return Err(parse_err(format!("duplicate arrow {:?}", a.name)));
        }
        arrows.push(Arrow { name: a.name.clone(), source: lookup(&a.from)?, target: lookup(&a.to)?, degree: a.degree });
    }
    let relations = q
        .relations
        .iter()
        .map(|rel| {
            rel.iter()
                .map(|t| {
                    let path = t
                        .path
                        .iter()
                        .map(|n| arrow_index.get(n).copied().ok_or_else(|| parse_err(format!("unknown arrow {n:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(RelationTerm { coeff: coefficient(&t.coeff, field)?, path })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuiverPresentation { vertices, arrows, relations, nilpotency_bound: q.nilpotency_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qshape::Rat;

    #[test]
    fn quiver_file_compiles() {
        let text = br#"{"field":{"char":0},"quiver":{"vertices":[1,2],
            "arrows":[{"name":"a","from":1,"to":2,"degree":0}],"relations":[],"nilpotency_bound":2}}"#;
        let input = Input::from_bytes(text).unwrap();
        assert_eq!(input.algebra::<Rat>().unwrap().dim(), 3);
    }

    #[test]
    fn rational_coefficients_parse() {
        let text = br#"{"field":{"char":0},"quiver":{"vertices":["v"],
            "arrows":[{"name":"x","from":"v","to":"v","degree":1},{"name":"y","from":"v","to":"v","degree":1}],
            "relations":[[{"coeff":1,"path":["x","y"]},{"coeff":"-1/1","path":["y","x"]}],
                         [{"coeff":"2/3","path":["x","x"]}],[{"coeff":1,"path":["y","y"]}]],
            "nilpotency_bound":3}}"#;
        let a = Input::from_bytes(text).unwrap().algebra::<Rat>().unwrap();
        assert_eq!(a.dim(), 4);
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        for text in [
            &br#"{"field":{"char":0}}"#[..],
            br#"{"field":{"char":4},"builtin":{"family":"exterior","parameter":2}}"#,
            br#"{"field":{"char":0},"builtin":{"family":"exterior","parameter":2},"extra":1}"#,
            br#"not json"#,
        ] {
            assert!(Input::from_bytes(text).is_err());
        }
        let bad = br#"{"field":{"char":0},"quiver":{"vertices":[1],"arrows":[{"name":"a","from":1,"to":3}],"nilpotency_bound":2}}"#;
        assert!(matches!(Input::from_bytes(bad).unwrap().algebra::<Rat>(), Err(Error::Parse(_))));
    }

    #[test]
    fn builtin_hash_is_stable() {
        let a = Input::builtin("exterior", 2, 0).unwrap();
        let b = Input::builtin("exterior", 2, 0).unwrap();
        assert_eq!(a.hash, b.hash);
        assert_ne!(a.hash, Input::builtin("exterior", 3, 0).unwrap().hash);
    }
}
