//! JSON-lines exchange format for proofs.
//!
//! One object per step, numbered from 1:
//!
//! ```text
//! {"formula": "x0", "just": {"hyp": 1}}
//! {"formula": "x0 -> x1", "just": {"hyp": 2}}
//! {"formula": "x1", "just": {"mp": [1, 2]}}
//! {"formula": "!x1", "just": {"subst": {"line": 3, "sigma": {"x1": "!x1"}}}}
//! {"formula": "x0 | !x0", "just": "axiom"}
//! ```
//!
//! An optional first line `{"hypotheses": [...]}` lists `Δ`; without it,
//! hypothesis `i` is the formula of the first line citing it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DeductionError, Justification, Line, Proof};
use crate::formula::{parse_formula, Formula, Substitution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JsonJust {
    Axiom,
    Hyp(usize),
    Mp([usize; 2]),
    Subst { line: usize, sigma: BTreeMap<String, String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonStep {
    pub formula: String,
    pub just: JsonJust,
}

#[derive(Deserialize)]
struct Header {
    hypotheses: Vec<String>,
}

fn bad(msg: impl Into<String>) -> DeductionError {
    DeductionError::Malformed(msg.into())
}

fn var_index(key: &str) -> Result<usize, DeductionError> {
    key.strip_prefix('x')
        .unwrap_or(key)
        .parse()
        .map_err(|_| bad(format!("`{key}` is not a variable")))
}

fn parse(text: &str, line: usize) -> Result<Formula, DeductionError> {
    parse_formula(text).map_err(|e| bad(format!("line {line}: {e}")))
}

fn from_one_based(i: usize, line: usize) -> Result<usize, DeductionError> {
    i.checked_sub(1).ok_or_else(|| bad(format!("line {line}: references count from 1")))
}

pub fn parse_proof_jsonl(text: &str) -> Result<Proof, DeductionError> {
    let mut rows = text.lines().filter(|l| !l.trim().is_empty()).peekable();
    let mut hypotheses: Vec<Option<Formula>> = Vec::new();
    let mut declared = false;
    if let Some(first) = rows.peek() {
        if let Ok(h) = serde_json::from_str::<Header>(first) {
            hypotheses = h.hypotheses.iter().map(|s| parse(s, 0).map(Some)).collect::<Result<_, _>>()?;
            declared = true;
            rows.next();
        }
    }
    let mut lines = Vec::new();
    for (i, row) in rows.enumerate() {
        let n = i + 1;
        let step: JsonStep = serde_json::from_str(row).map_err(|e| bad(format!("line {n}: {e}")))?;
        let formula = parse(&step.formula, n)?;
        let just = match step.just {
            JsonJust::Axiom => Justification::Axiom,
            JsonJust::Hyp(h) => {
                let h = from_one_based(h, n)?;
                if !declared {
                    if hypotheses.len() <= h {
                        hypotheses.resize(h + 1, None);
                    }
                    hypotheses[h].get_or_insert_with(|| formula.clone());
                }
                Justification::Hypothesis(h)
            }
            JsonJust::Mp([k, m]) => Justification::Mp(from_one_based(k, n)?, from_one_based(m, n)?),
            JsonJust::Subst { line, sigma } => {
                let mut map = BTreeMap::new();
                for (k, v) in &sigma {
                    map.insert(var_index(k)?, parse(v, n)?);
                }
                let arity = map
                    .iter()
                    .map(|(k, v)| (k + 1).max(v.arity()))
                    .max()
                    .unwrap_or(0);
                let images = (0..arity).map(|i| map.get(&i).cloned().unwrap_or_else(|| Formula::var(i))).collect();
                let s = Substitution::new(images).map_err(|e| bad(format!("line {n}: {e}")))?;
                Justification::Subst(from_one_based(line, n)?, s)
            }
        };
        lines.push(Line { formula, just });
    }
    let hypotheses = hypotheses
        .into_iter()
        .enumerate()
        .map(|(i, h)| h.ok_or_else(|| bad(format!("hypothesis {} is never stated", i + 1))))
        .collect::<Result<_, _>>()?;
    Ok(Proof { hypotheses, lines })
}

/// Header line with `Δ`, then one line per step.
pub fn proof_to_jsonl(p: &Proof) -> String {
    let mut out = serde_json::json!({ "hypotheses": p.hypotheses.iter().map(|h| h.to_string()).collect::<Vec<_>>() })
        .to_string();
    out.push('\n');
    for l in &p.lines {
        let just = match &l.just {
            Justification::Axiom => JsonJust::Axiom,
            Justification::Hypothesis(h) => JsonJust::Hyp(h + 1),
            Justification::Mp(k, m) => JsonJust::Mp([k + 1, m + 1]),
            Justification::Subst(k, s) => JsonJust::Subst {
                line: k + 1,
                sigma: s
                    .images()
                    .iter()
                    .enumerate()
                    .filter(|(i, f)| **f != Formula::var(*i))
                    .map(|(i, f)| (format!("x{i}"), f.to_string()))
                    .collect(),
            },
        };
        let step = JsonStep { formula: l.formula.to_string(), just };
        out.push_str(&serde_json::to_string(&step).expect("serializable"));
        out.push('\n');
    }
    out
}
