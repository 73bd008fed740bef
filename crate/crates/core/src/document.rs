//! JSON interchange for coalgebras, coalgebra maps and subspaces.
//!
//! A coalgebra document looks like
//! `{"field":"Q","dim":1,"basis":["g1"],"delta":[[[0,0,"1"]]],"epsilon":["1"]}`:
//! `delta[k]` lists the triples `[i, j, c]` with `Δ(b_k) = Σ c · b_i ⊗ b_j`.
//! Coefficients are exact strings. Serialization is canonical (fixed key
//! order, ascending triples, lowest terms, one trailing newline).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coalgebra::{Coalgebra, CoalgebraMorphism, Law};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("axiom error: {law} fails at basis element {index} ({label})")]
    Axiom { law: Law, index: usize, label: String },
    #[error("field error: {0}")]
    Field(String),
    #[error("map error: {0}")]
    Morphism(String),
}

type DocResult<T> = std::result::Result<T, DocumentError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
enum DocField {
    Q,
    Fp(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoalgebraDocument {
    field: DocField,
    dim: usize,
    basis: Vec<String>,
    delta: Vec<Vec<(usize, usize, String)>>,
    epsilon: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDocument {
    target: CoalgebraDocument,
    /// Row-major, `rows = dim target`, `cols = dim source`.
    matrix: Vec<Vec<String>>,
}

fn to_field(f: DocField) -> DocResult<Field> {
    match f {
        DocField::Q => Ok(Field::Rationals),
        DocField::Fp(p) => Field::prime(p).map_err(|e| DocumentError::Field(e.to_string())),
    }
}

fn scalar(field: Field, s: &str) -> DocResult<Scalar> {
    use crate::field::ScalarParseError as E;
    field.parse_scalar(s).map_err(|e| match e {
        E::Float(_) | E::DenominatorVanishes(..) => DocumentError::Field(e.to_string()),
        E::Malformed(_) | E::ZeroDenominator(_) => DocumentError::Parse(e.to_string()),
    })
}

fn to_document(c: &Coalgebra) -> CoalgebraDocument {
    let field = match c.field() {
        Field::Rationals => DocField::Q,
        Field::Prime(p) => DocField::Fp(p),
    };
    CoalgebraDocument {
        field,
        dim: c.dim(),
        basis: c.labels().to_vec(),
        delta: (0..c.dim())
            .map(|k| c.delta_terms(k).into_iter().map(|(i, j, s)| (i, j, s.to_string())).collect())
            .collect(),
        epsilon: c.epsilon().row(0).iter().map(Scalar::to_string).collect(),
    }
}

fn from_document(doc: &CoalgebraDocument) -> DocResult<Coalgebra> {
    let field = to_field(doc.field)?;
    let n = doc.dim;
    let shape = |what: &str, len: usize| {
        if len == n {
            Ok(())
        } else {
            Err(DocumentError::Parse(format!("{what} has {len} entries, dim is {n}")))
        }
    };
    shape("basis", doc.basis.len())?;
    shape("delta", doc.delta.len())?;
    shape("epsilon", doc.epsilon.len())?;
    for (a, l) in doc.basis.iter().enumerate() {
        if l.is_empty() || l.contains([',', '+', '*', ' ']) {
            return Err(DocumentError::Parse(format!("invalid basis label `{l}`")));
        }
        if doc.basis[..a].contains(l) {
            return Err(DocumentError::Parse(format!("duplicate basis label `{l}`")));
        }
    }
    let mut delta = Matrix::zeros(field, n * n, n);
    for (k, triples) in doc.delta.iter().enumerate() {
        for (i, j, s) in triples {
            if *i >= n || *j >= n {
                return Err(DocumentError::Parse(format!("delta[{k}] references [{i}, {j}] outside dim {n}")));
            }
            if !delta.get(i * n + j, k).is_zero() {
                return Err(DocumentError::Parse(format!("delta[{k}] repeats [{i}, {j}]")));
            }
            delta.set(i * n + j, k, scalar(field, s)?);
        }
    }
    let eps = doc.epsilon.iter().map(|s| scalar(field, s)).collect::<DocResult<Vec<_>>>()?;
    let epsilon = Matrix::new(field, 1, n, eps).map_err(|e| DocumentError::Parse(e.to_string()))?;
    Coalgebra::from_parts_unchecked(field, delta, epsilon, doc.basis.clone())
        .map_err(|e| DocumentError::Parse(e.to_string()))
}

fn decode<T: for<'de> Deserialize<'de>>(text: &str) -> DocResult<T> {
    serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))
}

fn check(c: Coalgebra) -> DocResult<Coalgebra> {
    match c.first_violation() {
        None => Ok(c),
        Some(v) => Err(DocumentError::Axiom {
            law: v.law,
            index: v.index,
            label: c.labels()[v.index].clone(),
        }),
    }
}

/// Parses a document, rejecting data that violates the coalgebra axioms.
pub fn parse(text: &str) -> DocResult<Coalgebra> {
    check(parse_unchecked(text)?)
}

/// Parses a document, checking its shape but not the axioms.
pub fn parse_unchecked(text: &str) -> DocResult<Coalgebra> {
    from_document(&decode(text)?)
}

pub fn serialize(c: &Coalgebra) -> String {
    let mut s = serde_json::to_string(&to_document(c)).expect("documents serialize");
    s.push('\n');
    s
}

/// Parses a map document `{"target": <coalgebra>, "matrix": [[..], ..]}`
/// starting at `source`, checking that it is a coalgebra map.
pub fn parse_morphism(source: &Coalgebra, text: &str) -> DocResult<CoalgebraMorphism> {
    let doc: MorphismDocument = decode(text)?;
    let target = check(from_document(&doc.target)?)?;
    if target.field() != source.field() {
        return Err(DocumentError::Field(format!(
            "map target is over {}, source over {}",
            target.field(),
            source.field()
        )));
    }
    let field = source.field();
    if doc.matrix.len() != target.dim() || doc.matrix.iter().any(|r| r.len() != source.dim()) {
        return Err(DocumentError::Parse(format!(
            "matrix must be {}x{}",
            target.dim(),
            source.dim()
        )));
    }
    let data = doc
        .matrix
        .iter()
        .flatten()
        .map(|s| scalar(field, s))
        .collect::<DocResult<Vec<_>>>()?;
    let m = Matrix::new(field, target.dim(), source.dim(), data).map_err(|e| DocumentError::Parse(e.to_string()))?;
    CoalgebraMorphism::new(source.clone(), target, m).map_err(|e| DocumentError::Morphism(e.to_string()))
}

pub fn serialize_morphism(f: &CoalgebraMorphism) -> String {
    let m = f.matrix();
    let doc = MorphismDocument {
        target: to_document(f.target()),
        matrix: (0..m.rows()).map(|i| m.row(i).iter().map(Scalar::to_string).collect()).collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Parses `c0,c1` or `1/2*c0+c1,-c2` into the span of the listed vectors.
/// An empty string or `0` is the zero subspace.
pub fn parse_basis_spec(c: &Coalgebra, spec: &str) -> DocResult<Subspace> {
    let spec = spec.trim();
    if spec.is_empty() || spec == "0" {
        return Ok(c.zero_space());
    }
    let vectors = spec
        .split(',')
        .map(|item| parse_combination(c, item.trim()))
        .collect::<DocResult<Vec<_>>>()?;
    Ok(Subspace::from_vectors(c.field(), c.dim(), &vectors))
}

fn parse_combination(c: &Coalgebra, item: &str) -> DocResult<Vec<Scalar>> {
    let field = c.field();
    let bad = |why: &str| DocumentError::Parse(format!("basis spec `{item}`: {why}"));
    if item.is_empty() {
        return Err(bad("empty vector"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = item.as_bytes();
    for (pos, &b) in bytes.iter().enumerate() {
        if pos > start && (b == b'+' || b == b'-') && !matches!(bytes[pos - 1], b'*' | b'/' | b'+' | b'-') {
            terms.push(&item[start..pos]);
            start = pos;
        }
    }
    terms.push(&item[start..]);
    let mut v = vec![field.zero(); c.dim()];
    for term in terms {
        let term = term.trim();
        let (negative, body) = match term.as_bytes().first() {
            Some(b'-') => (true, term[1..].trim()),
            Some(b'+') => (false, term[1..].trim()),
            _ => (false, term),
        };
        let (coef, label) = match body.rsplit_once('*') {
            Some((k, l)) => (scalar(field, k.trim())?, l.trim()),
            None => (field.one(), body),
        };
        let idx = c.label_index(label).ok_or_else(|| bad(&format!("unknown label `{label}`")))?;
        let coef = if negative { -&coef } else { coef };
        v[idx] = &v[idx] + &coef;
    }
    Ok(v)
}

/// `c0 + 1/2*c1`, or `0`.
pub fn format_vector(c: &Coalgebra, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (s, label) in v.iter().zip(c.labels()) {
        if s.is_zero() {
            continue;
        }
        let text = s.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Basis vectors of `x` in `c`'s labels.
pub fn format_subspace(c: &Coalgebra, x: &Subspace) -> Vec<String> {
    x.basis().columns().iter().map(|v| format_vector(c, v)).collect()
}
