//! Axiom schemas and instance matching.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::formula::{parse_formula, Formula, Node, Semantics};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Logic {
    MV,
    Product,
    Godel,
    Boole,
}

impl Logic {
    pub const ALL: [Logic; 4] = [Logic::MV, Logic::Product, Logic::Godel, Logic::Boole];

    pub fn semantics(self) -> Semantics {
        match self {
            Logic::MV => Semantics::Lukasiewicz,
            Logic::Product => Semantics::Product,
            Logic::Godel => Semantics::Godel,
            Logic::Boole => Semantics::BOOLEAN,
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::MV => "mv",
            Logic::Product => "product",
            Logic::Godel => "godel",
            Logic::Boole => "boole",
        })
    }
}

impl FromStr for Logic {
    type Err = String;
    fn from_str(s: &str) -> Result<Logic, String> {
        match s.to_ascii_lowercase().as_str() {
            "mv" | "luk" => Ok(Logic::MV),
            "product" => Ok(Logic::Product),
            "godel" => Ok(Logic::Godel),
            "boole" | "boolean" => Ok(Logic::Boole),
            _ => Err(format!("unknown logic `{s}` (mv, product, godel, boole)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSet {
    pub logic: Logic,
    pub schemas: Vec<Formula>,
}

const BASE: [&str; 8] = [
    "((x0 -> x1) * (x1 -> x2)) -> (x0 -> x2)",
    "(x0 * x1) -> x0",
    "0 -> x0",
    "(x0 * x1) -> (x1 * x0)",
    "(x0 & x1) -> (x1 & x0)",
    "(x0 -> (x1 -> x2)) -> ((x0 * x1) -> x2)",
    "((x0 * x1) -> x2) -> (x0 -> (x1 -> x2))",
    "(((x0 -> x1) -> x2) * ((x1 -> x0) -> x2)) -> x2",
];

/// The eight base schemas plus the extension for `logic`.
pub fn builtin_axioms(logic: Logic) -> AxiomSet {
    let extra: &[&str] = match logic {
        Logic::MV => &["!!x0 -> x0"],
        Logic::Product => &["!!x0 -> ((x1 * x0 -> x2 * x0) -> (x1 -> x2))", "!(x0 & !x0)"],
        Logic::Godel => &["x0 -> (x0 * x0)"],
        Logic::Boole => &["x0 | !x0"],
    };
    let schemas = BASE.iter().chain(extra).map(|s| parse_formula(s).expect("well-formed schema")).collect();
    AxiomSet { logic, schemas }
}

/// Variable bindings making `f` an instance of `schema`, comparing both
/// after expanding derived connectives.
pub fn instance_of(schema: &Formula, f: &Formula) -> Option<HashMap<usize, Formula>> {
    let mut b = HashMap::new();
    matches(schema, f, &mut b).then_some(b)
}

fn matches(schema: &Formula, f: &Formula, b: &mut HashMap<usize, Formula>) -> bool {
    if let Node::Var(i) = schema.node() {
        return match b.get(i) {
            Some(g) => g == f,
            None => {
                b.insert(*i, f.clone());
                true
            }
        };
    }
    let (s, g) = (schema.core_view(), f.core_view());
    match (s.node(), g.node()) {
        (Node::Zero, Node::Zero) | (Node::One, Node::One) => true,
        (Node::Star(a1, a2), Node::Star(b1, b2)) | (Node::Impl(a1, a2), Node::Impl(b1, b2)) => {
            matches(a1, b1, b) && matches(a2, b2, b)
        }
        _ => false,
    }
}
