//! Model documents: TOML with every number carried as a decimal string.
//!
//! ```toml
//! name = "example1"
//!
//! [machine.singleton]
//! "e_l.t_l" = "7"
//!
//! [machine.grand]
//! "e_l.e_h.t_l.t_h" = "13.1"
//!
//! [cost]
//! "e_h.t_h" = "6.3"
//! ```
//!
//! All 24 entries are required. Values may also be written `a/b`. Costs may
//! carry a sign; machine values may not.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;
use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::model::{CostModel, GrandState, SingletonState, TamModel};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },

    #[error("document syntax: {0}")]
    Syntax(String),

    #[error("[{section}] is missing key \"{key}\"")]
    MissingKey { section: String, key: String },

    #[error("[{section}] has unknown key \"{key}\"")]
    UnknownKey { section: String, key: String },

    #[error("[{section}] \"{key}\" must be a quoted decimal string")]
    NotAString { section: String, key: String },

    #[error("[{section}] \"{key}\" = \"{text}\": {reason}")]
    MalformedDecimal {
        section: String,
        key: String,
        text: String,
        reason: String,
    },

    #[error("[{section}] \"{key}\" = \"{text}\" must not be negative")]
    NegativeValue {
        section: String,
        key: String,
        text: String,
    },

    #[error("[machine.grand] \"{key}\" = {value} but its mirror \"{mirror}\" = {mirror_value}")]
    Asymmetric {
        key: String,
        mirror: String,
        value: String,
        mirror_value: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    pub name: String,
    pub model: TamModel,
    pub cost: CostModel,
}

const SINGLETON: &str = "machine.singleton";
const GRAND: &str = "machine.grand";
const COST: &str = "cost";

fn doc_err(e: DocumentError) -> Error {
    Error::Document(e)
}

fn table<'a>(parent: &'a Table, key: &str, section: &str) -> Result<&'a Table> {
    match parent.get(key) {
        Some(Value::Table(t)) => Ok(t),
        Some(_) => Err(doc_err(DocumentError::Syntax(format!(
            "[{section}] must be a table"
        )))),
        None => Err(doc_err(DocumentError::MissingKey {
            section: section.rsplit_once('.').map_or("", |(p, _)| p).to_string(),
            key: key.to_string(),
        })),
    }
}

fn check_keys(t: &Table, section: &str, allowed: &[&str]) -> Result<()> {
    for key in t.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(doc_err(DocumentError::UnknownKey {
                section: section.to_string(),
                key: key.clone(),
            }));
        }
    }
    Ok(())
}

/// Reads every expected key of one section as an exact rational.
fn read_section(
    t: &Table,
    section: &str,
    keys: &[String],
    signed: bool,
) -> Result<BTreeMap<String, Scalar>> {
    let allowed: Vec<&str> = keys.iter().map(String::as_str).collect();
    check_keys(t, section, &allowed)?;
    let mut out = BTreeMap::new();
    for key in keys {
        let value = t.get(key).ok_or_else(|| {
            doc_err(DocumentError::MissingKey {
                section: section.to_string(),
                key: key.clone(),
            })
        })?;
        let Value::String(text) = value else {
            return Err(doc_err(DocumentError::NotAString {
                section: section.to_string(),
                key: key.clone(),
            }));
        };
        let number = scalar::parse_number(text, true).map_err(|e| {
            let reason = match e {
                Error::MalformedNumber { reason, .. } => reason.to_string(),
                other => other.to_string(),
            };
            doc_err(DocumentError::MalformedDecimal {
                section: section.to_string(),
                key: key.clone(),
                text: text.clone(),
                reason,
            })
        })?;
        let has_sign = text.trim_start().starts_with(['-', '+']);
        if !signed && (has_sign || number < scalar::zero()) {
            return Err(doc_err(DocumentError::NegativeValue {
                section: section.to_string(),
                key: key.clone(),
                text: text.clone(),
            }));
        }
        out.insert(key.clone(), number);
    }
    Ok(out)
}

pub fn parse_document(text: &str) -> Result<ModelDocument> {
    let root: Table = text
        .parse()
        .map_err(|e: toml::de::Error| doc_err(DocumentError::Syntax(e.message().to_string())))?;
    check_keys(&root, "", &["name", "machine", "cost"])?;
    let name = match root.get("name") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => {
            return Err(doc_err(DocumentError::NotAString {
                section: String::new(),
                key: "name".to_string(),
            }))
        }
        None => {
            return Err(doc_err(DocumentError::MissingKey {
                section: String::new(),
                key: "name".to_string(),
            }))
        }
    };
    let machine = table(&root, "machine", "machine")?;
    check_keys(machine, "machine", &["singleton", "grand"])?;
    let singleton_keys: Vec<String> = SingletonState::all().map(|s| s.key()).collect();
    let grand_keys: Vec<String> = GrandState::all().map(|g| g.key()).collect();

    let singleton = read_section(
        table(machine, "singleton", SINGLETON)?,
        SINGLETON,
        &singleton_keys,
        false,
    )?;
    let grand = read_section(table(machine, "grand", GRAND)?, GRAND, &grand_keys, false)?;
    let cost = read_section(table(&root, "cost", COST)?, COST, &singleton_keys, true)?;

    for g in GrandState::all().filter(|g| *g < g.swap()) {
        let (a, b) = (&grand[&g.key()], &grand[&g.swap().key()]);
        if a != b {
            return Err(doc_err(DocumentError::Asymmetric {
                key: g.key(),
                mirror: g.swap().key(),
                value: scalar::exact(a),
                mirror_value: scalar::exact(b),
            }));
        }
    }

    let model = TamModel::from_fn(|s| singleton[&s.key()].clone(), |g| grand[&g.key()].clone())?;
    let cost = CostModel::from_fn(|e, t| cost[&SingletonState::new(e, t).key()].clone());
    Ok(ModelDocument { name, model, cost })
}

pub fn parse_model(text: &str) -> Result<(TamModel, CostModel)> {
    let doc = parse_document(text)?;
    Ok((doc.model, doc.cost))
}

pub fn serialize(name: &str, model: &TamModel, cost: &CostModel) -> String {
    let mut out = String::new();
    let quote = |v: &Scalar| format!("\"{}\"", scalar::exact(v));
    writeln!(out, "name = {}", Value::String(name.to_string())).unwrap();
    out.push_str("\n[machine.singleton]\n");
    for s in SingletonState::all() {
        writeln!(out, "\"{}\" = {}", s.key(), quote(model.singleton(s))).unwrap();
    }
    out.push_str("\n[machine.grand]\n");
    for g in GrandState::all() {
        writeln!(out, "\"{}\" = {}", g.key(), quote(model.grand(g))).unwrap();
    }
    out.push_str("\n[cost]\n");
    for s in SingletonState::all() {
        writeln!(
            out,
            "\"{}\" = {}",
            s.key(),
            quote(cost.cost(s.effort, s.agent_type))
        )
        .unwrap();
    }
    out
}

pub const EXAMPLE1: &str = include_str!("../fixtures/example1.toml");

/// The bundled worked example.
pub fn example1() -> (TamModel, CostModel) {
    parse_model(EXAMPLE1).expect("bundled example parses")
}

/// A path to a model document, or the name of a bundled one.
pub fn load_model(source: &str) -> Result<ModelDocument> {
    if source == "example1" && !Path::new(source).exists() {
        return parse_document(EXAMPLE1);
    }
    let text = std::fs::read_to_string(source).map_err(|e| {
        doc_err(DocumentError::Io {
            path: source.to_string(),
            reason: e.to_string(),
        })
    })?;
    parse_document(&text)
}
