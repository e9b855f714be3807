//! JSON formats for algebras, modules, truncated dual elements, monoids and
//! matrices. Every emitted document carries `"schema": "tannaka-forge/1"`;
//! inputs may omit the header but must not carry a different one.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactlin::rational::{format_rational, serde_qvector, serde_rational};
use crate::exactlin::{QMatrix, QVector, Rational};
use crate::liealg::LieAlgebra;
use crate::repn::Module;
use crate::toric::WeightMonoid;
use crate::uea::{MultiIndex, TruncatedDual};

pub const SCHEMA: &str = "tannaka-forge/1";

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e))
}

fn check_schema(v: &Value) -> Result<()> {
    match v.get("schema") {
        None => Ok(()),
        Some(Value::String(s)) if s == SCHEMA => Ok(()),
        Some(other) => Err(Error::Parse(format!("unsupported schema {other}"))),
    }
}

fn from_text<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    check_schema(&v)?;
    serde_json::from_str(text).map_err(parse_err)
}

/// Adds the schema header to an object.
pub fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), Value::String(SCHEMA.into()));
    }
    v
}

/// Sorted keys, two-space indentation, trailing newline.
pub fn canonical_string(v: &Value) -> String {
    fn sort(v: &Value) -> Value {
        match v {
            Value::Object(m) => {
                let sorted: BTreeMap<&String, Value> = m.iter().map(|(k, x)| (k, sort(x))).collect();
                Value::Object(sorted.into_iter().map(|(k, x)| (k.clone(), x)).collect::<Map<_, _>>())
            }
            Value::Array(a) => Value::Array(a.iter().map(sort).collect()),
            other => other.clone(),
        }
    }
    let mut s = serde_json::to_string_pretty(&sort(v)).expect("values serialize");
    s.push('\n');
    s
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BasisRef {
    Index(usize),
    Name(String),
}

#[derive(Deserialize)]
struct BracketEntry {
    i: BasisRef,
    j: BasisRef,
    #[serde(with = "serde_qvector")]
    value: QVector,
}

#[derive(Deserialize)]
struct AlgebraDoc {
    dim: usize,
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

fn resolve(names: &[String], r: &BasisRef) -> Result<usize> {
    match r {
        BasisRef::Index(i) if *i < names.len() => Ok(*i),
        BasisRef::Index(i) => Err(Error::Parse(format!("basis index {i} out of range"))),
        BasisRef::Name(n) => names.iter().position(|x| x == n).ok_or_else(|| Error::Unknown(n.clone())),
    }
}

/// Parses and validates an algebra; omitted pairs are zero and the table is
/// completed antisymmetrically.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    let doc: AlgebraDoc = from_text(text)?;
    if doc.basis.len() != doc.dim {
        return Err(Error::DimensionMismatch { expected: doc.dim, found: doc.basis.len() });
    }
    let brackets = doc
        .brackets
        .iter()
        .map(|b| Ok((resolve(&doc.basis, &b.i)?, resolve(&doc.basis, &b.j)?, b.value.clone())))
        .collect::<Result<Vec<_>>>()?;
    LieAlgebra::from_brackets(doc.basis, &brackets)?.validated()
}

pub fn algebra_to_json(g: &LieAlgebra) -> Value {
    let mut brackets = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let v = g.structure(i, j);
            if v.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                brackets.push(json!({"i": i, "j": j, "value": qvector_json(v)}));
            }
        }
    }
    with_schema(json!({"dim": g.dim(), "basis": g.names(), "brackets": brackets}))
}

#[derive(Deserialize)]
struct ModuleDoc {
    id: String,
    dim: usize,
    action: BTreeMap<String, QMatrix>,
}

/// Parses a module over `g`; basis elements missing from `action` act by zero.
pub fn parse_module(text: &str, g: &Arc<LieAlgebra>) -> Result<Module> {
    let doc: ModuleDoc = from_text(text)?;
    for name in doc.action.keys() {
        g.index_of(name).ok_or_else(|| Error::Unknown(name.clone()))?;
    }
    let action = g
        .names()
        .iter()
        .map(|n| doc.action.get(n).cloned().unwrap_or_else(|| QMatrix::zeros(doc.dim, doc.dim)))
        .collect();
    Module::new(g.clone(), doc.id, doc.dim, action)
}

pub fn module_to_json(m: &Module) -> Value {
    let action: Map<String, Value> = m
        .algebra()
        .names()
        .iter()
        .zip(m.action())
        .map(|(n, a)| (n.clone(), serde_json::to_value(a).expect("matrices serialize")))
        .collect();
    with_schema(json!({"id": m.id(), "dim": m.dim(), "action": action}))
}

pub fn qvector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

/// `{bound, terms: [{exp: {name: k}, coeff}]}` with terms in PBW order.
pub fn truncated_dual_to_json(h: &TruncatedDual, names: &[String]) -> Value {
    let terms: Vec<Value> = h
        .coeffs()
        .iter()
        .map(|(e, c)| {
            let exp: Map<String, Value> =
                e.support().into_iter().map(|i| (names[i].clone(), json!(e.exponents()[i]))).collect();
            json!({"exp": exp, "coeff": format_rational(c)})
        })
        .collect();
    with_schema(json!({"bound": h.bound(), "terms": terms}))
}

#[derive(Deserialize)]
struct TermDoc {
    exp: BTreeMap<String, u32>,
    #[serde(with = "serde_rational")]
    coeff: Rational,
}

#[derive(Deserialize)]
struct DualDoc {
    bound: u32,
    terms: Vec<TermDoc>,
}

pub fn parse_truncated_dual(text: &str, names: &[String]) -> Result<TruncatedDual> {
    let doc: DualDoc = from_text(text)?;
    let coeffs = doc
        .terms
        .into_iter()
        .map(|t| {
            let mut e = vec![0u32; names.len()];
            for (n, k) in t.exp {
                let i = names.iter().position(|x| *x == n).ok_or(Error::Unknown(n))?;
                e[i] = k;
            }
            Ok((MultiIndex::new(e), t.coeff))
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedDual::from_coeffs(names.len(), doc.bound, coeffs)
}

#[derive(Deserialize)]
struct MonoidDoc {
    rank: usize,
    #[serde(default = "one")]
    denominator: i64,
    generators: Vec<Vec<i64>>,
}

fn one() -> i64 {
    1
}

pub fn parse_monoid(text: &str) -> Result<WeightMonoid> {
    let doc: MonoidDoc = from_text(text)?;
    WeightMonoid::new(doc.rank, doc.denominator, doc.generators)
}

pub fn monoid_to_json(a: &WeightMonoid) -> Value {
    with_schema(serde_json::to_value(a).expect("monoids serialize"))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixDoc {
    Bare(QMatrix),
    Wrapped { matrix: QMatrix },
}

/// A matrix given either as a bare array of rows or as `{"matrix": rows}`.
pub fn parse_matrix(text: &str) -> Result<QMatrix> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    check_schema(&v)?;
    match serde_json::from_value::<MatrixDoc>(v).map_err(|e| Error::Parse(e.to_string()))? {
        MatrixDoc::Bare(m) | MatrixDoc::Wrapped { matrix: m } => Ok(m),
    }
}

/// Serializes any report and adds the schema header.
pub fn report<T: Serialize>(t: &T) -> Value {
    with_schema(serde_json::to_value(t).expect("reports serialize"))
}
