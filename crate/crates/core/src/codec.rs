//! JSON documents for algebras, homomorphisms, congruences and classes.
//!
//! Parsing reports syntax and shape errors with a line and column; semantic
//! checks are left to [`validate_algebra`]. Serialization is canonical:
//! fixed key order, 2-space indentation, tables on one line, trailing
//! newline.

use std::fmt;
use std::fmt::Write as _;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::signature::{validate_algebra, Element, FiniteAlgebra, RawAlgebra};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolDoc {
    symbol: String,
    arity: usize,
}

/// Operation tables in document order; duplicate keys are kept so that
/// validation can report them.
struct OpTables(Vec<(String, Vec<i64>)>);

impl<'de> Deserialize<'de> for OpTables {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = OpTables;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from symbol to table")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut m: A,
            ) -> std::result::Result<OpTables, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = m.next_entry::<String, Vec<i64>>()? {
                    out.push((k, v));
                }
                Ok(OpTables(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    #[serde(default)]
    name: Option<String>,
    size: i64,
    signature: Vec<SymbolDoc>,
    operations: OpTables,
}

impl From<AlgebraDoc> for RawAlgebra {
    fn from(doc: AlgebraDoc) -> Self {
        RawAlgebra {
            name: doc.name,
            size: doc.size,
            signature: doc
                .signature
                .into_iter()
                .map(|s| (s.symbol, s.arity))
                .collect(),
            operations: doc.operations.0,
        }
    }
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses an algebra document without semantic validation.
pub fn parse_raw_algebra(text: &str) -> Result<RawAlgebra> {
    serde_json::from_str::<AlgebraDoc>(text)
        .map(RawAlgebra::from)
        .map_err(syntax)
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    validate_algebra(parse_raw_algebra(text)?)
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn list(items: &[Element]) -> String {
    let parts: Vec<String> = items.iter().map(|e| e.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Re-indents every line after the first by `by` spaces.
fn nest(doc: &str, by: usize) -> String {
    let pad = " ".repeat(by);
    let trimmed = doc.trim_end_matches('\n');
    let mut out = String::new();
    for (i, line) in trimmed.lines().enumerate() {
        if i > 0 {
            out.push('\n');
            out.push_str(&pad);
        }
        out.push_str(line);
    }
    out
}

/// Canonical algebra document.
pub fn serialize_algebra(a: &FiniteAlgebra) -> String {
    let mut out = String::from("{\n");
    if let Some(name) = a.name() {
        let _ = writeln!(out, "  \"name\": {},", json_string(name));
    }
    let _ = writeln!(out, "  \"size\": {},", a.size());
    let sig = a.signature();
    if sig.is_empty() {
        out.push_str("  \"signature\": [],\n  \"operations\": {}\n}\n");
        return out;
    }
    out.push_str("  \"signature\": [\n");
    for (i, s) in sig.symbols().iter().enumerate() {
        let sep = if i + 1 < sig.len() { "," } else { "" };
        let _ = writeln!(
            out,
            "    {{\"symbol\": {}, \"arity\": {}}}{sep}",
            json_string(&s.name),
            s.arity
        );
    }
    out.push_str("  ],\n  \"operations\": {\n");
    for (i, s) in sig.symbols().iter().enumerate() {
        let sep = if i + 1 < sig.len() { "," } else { "" };
        let _ = writeln!(
            out,
            "    {}: {}{sep}",
            json_string(&s.name),
            list(a.table(i))
        );
    }
    out.push_str("  }\n}\n");
    out
}

/// Where a document finds an algebra: a path (resolved by the caller) or an
/// inline algebra document.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraRef {
    Path(String),
    Inline(Box<FiniteAlgebra>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AlgebraRefDoc {
    Path(String),
    Inline(AlgebraDoc),
}

impl AlgebraRefDoc {
    fn resolve(self) -> Result<AlgebraRef> {
        Ok(match self {
            AlgebraRefDoc::Path(p) => AlgebraRef::Path(p),
            AlgebraRefDoc::Inline(doc) => {
                AlgebraRef::Inline(Box::new(validate_algebra(doc.into())?))
            }
        })
    }
}

fn serialize_ref(r: &AlgebraRef, indent: usize) -> String {
    match r {
        AlgebraRef::Path(p) => json_string(p),
        AlgebraRef::Inline(a) => nest(&serialize_algebra(a), indent),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomDocument {
    pub domain: AlgebraRef,
    pub codomain: AlgebraRef,
    pub map: Vec<Element>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HomDoc {
    domain: AlgebraRefDoc,
    codomain: AlgebraRefDoc,
    map: Vec<Element>,
}

pub fn parse_hom_document(text: &str) -> Result<HomDocument> {
    let doc: HomDoc = serde_json::from_str(text).map_err(syntax)?;
    Ok(HomDocument {
        domain: doc.domain.resolve()?,
        codomain: doc.codomain.resolve()?,
        map: doc.map,
    })
}

pub fn serialize_hom_document(doc: &HomDocument) -> String {
    format!(
        "{{\n  \"domain\": {},\n  \"codomain\": {},\n  \"map\": {}\n}}\n",
        serialize_ref(&doc.domain, 2),
        serialize_ref(&doc.codomain, 2),
        list(&doc.map)
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceDocument {
    pub algebra: AlgebraRef,
    pub blocks: Vec<Vec<Element>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CongruenceDoc {
    algebra: AlgebraRefDoc,
    blocks: Vec<Vec<Element>>,
}

pub fn parse_congruence_document(text: &str) -> Result<CongruenceDocument> {
    let doc: CongruenceDoc = serde_json::from_str(text).map_err(syntax)?;
    Ok(CongruenceDocument {
        algebra: doc.algebra.resolve()?,
        blocks: doc.blocks,
    })
}

/// Blocks are written in the order given; pass normalized blocks (sorted by
/// minimum, ascending) for canonical output.
pub fn serialize_congruence_document(doc: &CongruenceDocument) -> String {
    let blocks: Vec<String> = doc.blocks.iter().map(|b| list(b)).collect();
    format!(
        "{{\n  \"algebra\": {},\n  \"blocks\": [{}]\n}}\n",
        serialize_ref(&doc.algebra, 2),
        blocks.join(", ")
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassDocument {
    pub algebras: Vec<AlgebraRef>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassDoc {
    algebras: Vec<AlgebraRefDoc>,
}

pub fn parse_class_document(text: &str) -> Result<ClassDocument> {
    let doc: ClassDoc = serde_json::from_str(text).map_err(syntax)?;
    Ok(ClassDocument {
        algebras: doc
            .algebras
            .into_iter()
            .map(AlgebraRefDoc::resolve)
            .collect::<Result<_>>()?,
    })
}

pub fn serialize_class_document(doc: &ClassDocument) -> String {
    if doc.algebras.is_empty() {
        return "{\n  \"algebras\": []\n}\n".into();
    }
    let items: Vec<String> = doc
        .algebras
        .iter()
        .map(|r| format!("    {}", serialize_ref(r, 4)))
        .collect();
    format!("{{\n  \"algebras\": [\n{}\n  ]\n}}\n", items.join(",\n"))
}
