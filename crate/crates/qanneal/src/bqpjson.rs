//! BQPJSON problem files.
//!
//! Only the structural subset needed to build an Ising model is validated:
//! `version`, `variable_ids`, `variable_domain`, `linear_terms`,
//! `quadratic_terms` and `metadata`. Other fields are accepted and ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use qanneal_core::{IsingModel, Term};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{IoError, Result};

pub const WRITE_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariableDomain {
    Spin,
    Boolean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearTerm {
    pub id: i64,
    pub coeff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticTerm {
    pub id_tail: i64,
    pub id_head: i64,
    pub coeff: f64,
}

/// The raw file contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BqpjsonProblem {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<i64>,
    #[serde(default)]
    pub metadata: Map<String, Value>,
    pub variable_ids: Vec<i64>,
    pub variable_domain: VariableDomain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<f64>,
    #[serde(default)]
    pub linear_terms: Vec<LinearTerm>,
    #[serde(default)]
    pub quadratic_terms: Vec<QuadraticTerm>,
    #[serde(default, skip_serializing)]
    pub solutions: Option<Value>,
}

/// A problem file turned into a spin-domain model.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedProblem {
    pub model: IsingModel,
    /// File variable id to 1-based qubit index.
    pub id_mapping: BTreeMap<i64, usize>,
    /// Constant energy shift introduced by the boolean to spin substitution.
    /// Zero for spin-domain files. Never part of the Hamiltonian.
    pub constant_offset: f64,
    pub metadata: Map<String, Value>,
}

fn check_version(v: &str) -> Result<()> {
    let parts: Vec<&str> = v.split('.').collect();
    let numeric = |p: &&str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    if parts.len() == 3 && parts.iter().all(numeric) {
        Ok(())
    } else {
        Err(IoError::Version(v.to_string()))
    }
}

/// Parses BQPJSON text. `source` only labels errors.
pub fn parse_bqpjson(text: &str, source: &Path) -> Result<BqpjsonProblem> {
    let problem: BqpjsonProblem = serde_json::from_str(text).map_err(|e| IoError::Json {
        path: source.to_path_buf(),
        source: e,
    })?;
    check_version(&problem.version)?;
    if problem.solutions.is_some() {
        log::warn!("{}: ignoring solutions section", source.display());
    }
    Ok(problem)
}

/// Maps a parsed file onto an Ising model. Variable ids are compacted to
/// `1..=n` in ascending order.
pub fn to_ising(problem: &BqpjsonProblem) -> Result<LoadedProblem> {
    let invalid = |msg: String| IoError::Validation(msg);
    let mut id_mapping = BTreeMap::new();
    for &id in &problem.variable_ids {
        if id_mapping.insert(id, 0).is_some() {
            return Err(invalid(format!("variable id {id} declared twice")));
        }
    }
    for (k, v) in id_mapping.values_mut().enumerate() {
        *v = k + 1;
    }
    let qubit = |id: i64| {
        id_mapping
            .get(&id)
            .copied()
            .ok_or_else(|| invalid(format!("term references undeclared variable id {id}")))
    };

    let mut linear = BTreeMap::new();
    for t in &problem.linear_terms {
        if linear.insert(qubit(t.id)?, t.coeff).is_some() {
            return Err(invalid(format!(
                "linear term for id {} appears twice",
                t.id
            )));
        }
    }
    let mut quadratic = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for t in &problem.quadratic_terms {
        let (i, j) = (qubit(t.id_tail)?, qubit(t.id_head)?);
        if i == j {
            return Err(invalid(format!(
                "quadratic term couples id {} to itself",
                t.id_tail
            )));
        }
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(invalid(format!(
                "duplicate quadratic term ({}, {})",
                t.id_tail, t.id_head
            )));
        }
        quadratic.insert((i.min(j), i.max(j)), t.coeff);
    }

    let mut constant_offset = 0.0;
    if problem.variable_domain == VariableDomain::Boolean {
        // x = (1 - s) / 2
        let mut fields: BTreeMap<usize, f64> = BTreeMap::new();
        for (&i, &c) in &linear {
            constant_offset += 0.5 * c;
            *fields.entry(i).or_default() -= 0.5 * c;
        }
        for (&(i, j), c) in quadratic.iter_mut() {
            let q = 0.25 * *c;
            constant_offset += q;
            *fields.entry(i).or_default() -= q;
            *fields.entry(j).or_default() -= q;
            *c = q;
        }
        linear = fields;
    }

    let mut model = IsingModel::new(id_mapping.len());
    for (&i, &c) in &linear {
        model.insert(Term::Field(i), c)?;
    }
    for (&(i, j), &c) in &quadratic {
        model.insert(Term::Coupling(i, j), c)?;
    }

    let mut metadata = problem.metadata.clone();
    if problem.variable_domain == VariableDomain::Boolean {
        metadata.insert("spin_constant_offset".into(), Value::from(constant_offset));
    }
    Ok(LoadedProblem {
        model,
        id_mapping,
        constant_offset,
        metadata,
    })
}

pub fn read_bqpjson(path: impl AsRef<Path>) -> Result<LoadedProblem> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| IoError::io(path, e))?;
    to_ising(&parse_bqpjson(&text, path)?)
}

/// Spin-domain file for `model` with variable ids `1..=n`.
pub fn from_ising(model: &IsingModel) -> BqpjsonProblem {
    let mut linear_terms = Vec::new();
    let mut quadratic_terms = Vec::new();
    for (term, &coeff) in model.terms() {
        match *term {
            Term::Field(i) => linear_terms.push(LinearTerm {
                id: i as i64,
                coeff,
            }),
            Term::Coupling(i, j) => quadratic_terms.push(QuadraticTerm {
                id_tail: i as i64,
                id_head: j as i64,
                coeff,
            }),
        }
    }
    BqpjsonProblem {
        version: WRITE_VERSION.into(),
        id: Some(0),
        metadata: Map::new(),
        variable_ids: (1..=model.n_qubits() as i64).collect(),
        variable_domain: VariableDomain::Spin,
        scale: Some(1.0),
        offset: Some(0.0),
        linear_terms,
        quadratic_terms,
        solutions: None,
    }
}

pub fn write_bqpjson(model: &IsingModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(&from_ising(model)).expect("problem serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| IoError::io(path, e))
}
