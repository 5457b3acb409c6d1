//! Finite algebras, filters and spectra.

use std::fmt::Write as _;

use clap::{Args, Subcommand};
use mvdyn::formula::ChainBase;
use mvdyn::spectra::{
    duality_check, enumerate_filters, finite_chain, prime_filter_check, product_algebra, spec_space,
    subalgebra_generated, Filter, FiniteAlgebra,
};
use serde_json::{json, Value};

use crate::output::{domain, CliError, Report};
use crate::parse;

fn algebra_report(a: &FiniteAlgebra) -> Report {
    let mut text = format!("{} elements: {}\n", a.len(), a.names().join(" "));
    writeln!(text, "chain {}", a.is_chain()).unwrap();
    Report::new(serde_json::to_value(a.to_json()).expect("serializable"), text)
}

#[derive(Clone, Copy, clap::ValueEnum)]
pub enum Base {
    Luk,
    Godel,
}

#[derive(Subcommand)]
pub enum AlgebraCmd {
    /// The chain {0, 1/m, ..., 1}.
    Chain {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "luk")]
        base: Base,
    },
    /// Direct product; each factor is two, luk:M, godel:M, boolean:N or @file.
    Product { left: String, right: String },
    /// Subalgebra generated by elements (names or indices, comma-separated).
    Sub {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        gens: String,
    },
}

pub fn algebra_cmd(c: &AlgebraCmd) -> Result<Report, CliError> {
    match c {
        AlgebraCmd::Chain { m, base } => {
            let base = match base {
                Base::Luk => ChainBase::Lukasiewicz,
                Base::Godel => ChainBase::Godel,
            };
            Ok(algebra_report(&finite_chain(*m, base).map_err(domain)?))
        }
        AlgebraCmd::Product { left, right } => {
            let p = product_algebra(&parse::algebra(left)?, &parse::algebra(right)?).map_err(domain)?;
            Ok(algebra_report(&p))
        }
        AlgebraCmd::Sub { alg, gens } => {
            let a = parse::algebra(alg)?;
            let g = parse::elements(&a, gens)?;
            let (sub, embedding) = subalgebra_generated(&a, &g).map_err(domain)?;
            let mut r = algebra_report(&sub);
            r.json = json!({ "algebra": r.json, "embedding": embedding });
            Ok(r)
        }
    }
}

#[derive(Args)]
pub struct AlgArg {
    /// two, luk:M, godel:M, boolean:N, @file, or a product such as `luk:2*luk:3`.
    #[arg(long)]
    alg: String,
}

fn names(a: &FiniteAlgebra, f: &Filter) -> String {
    let m: Vec<&str> = f.members().into_iter().map(|i| a.name(i)).collect();
    format!("{{{}}}", m.join(", "))
}

fn sets(fs: &[Filter]) -> Value {
    json!(fs.iter().map(Filter::members).collect::<Vec<_>>())
}

pub fn filters_cmd(a: &AlgArg) -> Result<Report, CliError> {
    let alg = parse::algebra(&a.alg)?;
    let lat = enumerate_filters(&alg);
    let check = prime_filter_check(&alg).map_err(domain)?;
    let mut text = String::new();
    for f in &lat.all {
        let tag = if lat.maximal.contains(f) {
            " maximal prime"
        } else if lat.prime.contains(f) {
            " prime"
        } else {
            ""
        };
        writeln!(text, "{}{tag}", names(&alg, f)).unwrap();
    }
    writeln!(text, "{} filters, {} prime, {} maximal", lat.all.len(), lat.prime.len(), lat.maximal.len()).unwrap();
    writeln!(text, "prime characterizations agree: {}", check.discrepancies == 0).unwrap();
    Ok(Report::new(
        json!({
            "filters": sets(&lat.all),
            "prime": sets(&lat.prime),
            "maximal": sets(&lat.maximal),
            "prime_conditions": check,
        }),
        text,
    ))
}

pub fn spec_cmd(a: &AlgArg) -> Result<Report, CliError> {
    let alg = parse::algebra(&a.alg)?;
    let s = spec_space(&alg).map_err(domain)?;
    let opens = s.opens();
    let order: Vec<[usize; 2]> = (0..s.len())
        .flat_map(|i| (0..s.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && s.order[i][j])
        .map(|(i, j)| [i, j])
        .collect();
    let mut text = String::new();
    for (i, p) in s.points.iter().enumerate() {
        writeln!(text, "p{i} = {}", names(&alg, p)).unwrap();
    }
    for [i, j] in &order {
        writeln!(text, "p{i} <= p{j}").unwrap();
    }
    writeln!(text, "{} opens, forest {}", opens.len(), s.is_forest()).unwrap();
    Ok(Report::new(
        json!({
            "points": sets(&s.points),
            "order": order,
            "opens": opens.len(),
            "forest": s.is_forest(),
        }),
        text,
    ))
}

pub fn duality_cmd(a: &AlgArg) -> Result<Report, CliError> {
    let alg = parse::algebra(&a.alg)?;
    let r = duality_check(&alg).map_err(domain)?;
    let text = format!(
        "{} points, {} filters, {} opens\nduality holds: {}",
        r.points,
        r.filters,
        r.opens,
        r.holds()
    );
    let mut j = serde_json::to_value(&r).expect("serializable");
    j["holds"] = json!(r.holds());
    Ok(Report::new(j, text))
}
