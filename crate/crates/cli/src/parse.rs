//! Command-line value syntax.

use std::io::Read;

use mvdyn::dynamics::{flip_substitution, rotation_homeomorphism, tent_product, tent_substitution};
use mvdyn::formula::{ChainBase, Method};
use mvdyn::odometer::odometer_substitution;
use mvdyn::rational::{parse_point, Point};
use mvdyn::spectra::{finite_chain, free_boolean, product_algebra, two, AlgebraJson, FiniteAlgebra};
use mvdyn::{parse_formula, Formula, RationalBox, Substitution};

use crate::output::{domain, usage, CliError};

pub fn formula(text: &str) -> Result<Formula, CliError> {
    parse_formula(text).map_err(usage)
}

pub fn rational_point(text: &str) -> Result<Point, CliError> {
    parse_point(text).map_err(|e| CliError::Usage(format!("point `{text}`: {e}")))
}

pub fn float_point(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("`{s}` is not a number"))))
        .collect()
}

pub fn rational_box(text: &str) -> Result<RationalBox, CliError> {
    RationalBox::parse(text).map_err(|e| CliError::Usage(format!("box `{text}`: {e}")))
}

/// `truth-table`, `exact-pwl`, or `grid:N`.
pub fn method(text: &str) -> Result<Method, CliError> {
    match text {
        "truth-table" | "table" => Ok(Method::TruthTable),
        "exact-pwl" | "pwl" => Ok(Method::ExactPwl),
        _ => {
            let bound = text
                .strip_prefix("grid:")
                .and_then(|b| b.parse().ok())
                .ok_or_else(|| CliError::Usage(format!("unknown method `{text}` (truth-table, exact-pwl, grid:N)")))?;
            Ok(Method::Grid(bound))
        }
    }
}

fn suffix_number(text: &str, prefix: &str) -> Option<Result<usize, CliError>> {
    text.strip_prefix(prefix)
        .map(|n| n.parse().map_err(|_| CliError::Usage(format!("`{text}`: expected a count after `{prefix}`"))))
}

/// A named substitution (`tent`, `tent:N`, `flip`, `rotation`, `odometer:N`,
/// `identity:N`) or component formulas separated by `;`.
pub fn substitution(text: &str) -> Result<Substitution, CliError> {
    let text = text.trim();
    match text {
        "tent" => return Ok(tent_substitution()),
        "flip" => return Ok(flip_substitution()),
        "rotation" => return rotation_homeomorphism().map(|(s, _)| s).map_err(domain),
        _ => {}
    }
    if let Some(n) = suffix_number(text, "tent:") {
        return Ok(tent_product(n?));
    }
    if let Some(n) = suffix_number(text, "odometer:") {
        return odometer_substitution(n?).map_err(domain);
    }
    if let Some(n) = suffix_number(text, "identity:") {
        return Ok(Substitution::identity(n?));
    }
    let images = text.split(';').map(|s| formula(s.trim())).collect::<Result<Vec<_>, _>>()?;
    Substitution::new(images).map_err(usage)
}

/// `two`, `luk:M`, `godel:M`, `boolean:N` (free, N ≤ 2), `@file.json`, or
/// products of these joined by `*`.
pub fn algebra(text: &str) -> Result<FiniteAlgebra, CliError> {
    let mut factors = text.split('*').map(|s| single_algebra(s.trim()));
    let first = factors.next().expect("split yields one item")?;
    factors.try_fold(first, |acc, b| product_algebra(&acc, &b?).map_err(domain))
}

fn single_algebra(text: &str) -> Result<FiniteAlgebra, CliError> {
    if text == "two" {
        return Ok(two());
    }
    if let Some(path) = text.strip_prefix('@') {
        let json: AlgebraJson = serde_json::from_str(&read_input(path)?).map_err(usage)?;
        return json.to_algebra().map_err(domain);
    }
    if let Some(m) = suffix_number(text, "luk:") {
        return finite_chain(m?, ChainBase::Lukasiewicz).map_err(domain);
    }
    if let Some(m) = suffix_number(text, "godel:") {
        return finite_chain(m?, ChainBase::Godel).map_err(domain);
    }
    if let Some(n) = suffix_number(text, "boolean:") {
        return free_boolean(n?).map_err(domain);
    }
    Err(CliError::Usage(format!("unknown algebra `{text}` (two, luk:M, godel:M, boolean:N, @file)")))
}

/// Contents of a file, or of standard input for `-`.
pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(usage)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
    }
}

/// Element indices from names or numbers, comma-separated.
pub fn elements(a: &FiniteAlgebra, text: &str) -> Result<Vec<usize>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            let s = s.trim();
            a.index_of(s)
                .or_else(|| s.parse().ok().filter(|&i| i < a.len()))
                .ok_or_else(|| CliError::Usage(format!("no element `{s}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitutions() {
        assert_eq!(substitution("tent").unwrap(), tent_substitution());
        assert_eq!(substitution("tent:2").unwrap().arity(), 2);
        assert_eq!(substitution("x0 (+) x0; x1").unwrap().arity(), 2);
        assert!(substitution("odometer:x").is_err());
    }

    #[test]
    fn algebras() {
        assert_eq!(algebra("two").unwrap().len(), 2);
        assert_eq!(algebra("luk:2 * luk:3").unwrap().len(), 12);
        assert_eq!(algebra("boolean:2").unwrap().len(), 16);
        assert!(algebra("chain").is_err());
    }

    #[test]
    fn methods() {
        assert_eq!(method("grid:7").unwrap(), Method::Grid(7));
        assert!(method("grid:").is_err());
    }
}
