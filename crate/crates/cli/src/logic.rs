//! Formulas, PWL functions, proofs and the Boolean odometer.

use clap::{Args, Subcommand};
use mvdyn::deduction::{
    builtin_axioms, check_proof, mp_consequence, parse_proof_jsonl, proof_to_jsonl, AxiomSource, CheckVerdict,
    Consequence, Logic, DEFAULT_STAR_POWER_BOUND,
};
use mvdyn::formula::tautology::{tautology_check_capped, DEFAULT_POINT_CAP};
use mvdyn::formula::{eval, identity_check, Method, Verdict};
use mvdyn::odometer::{derive_from_nontautology, odometer_induced_permutation, truth_table};
use mvdyn::pwl::{pwl_to_formula_1d, PwlFunction, PwlJson};
use mvdyn::{Formula, Semantics};
use serde_json::{json, Value};

use crate::output::{domain, point, point_text, rat, usage, CliError, Report};
use crate::{parse, Globals};

/// Printed proofs unfold shared subterms; refuse beyond this many nodes.
const DEFAULT_PRINT_CAP: u64 = 1 << 20;

#[derive(Args)]
pub struct EvalArgs {
    /// Semantics: godel, product, luk, boole, luk:M or godel:M.
    #[arg(long, default_value = "luk")]
    logic: Semantics,
    /// Valuation, e.g. `1/2,1/3` (one value per variable).
    #[arg(long)]
    at: String,
    formula: String,
}

pub fn eval_cmd(a: &EvalArgs) -> Result<Report, CliError> {
    let f = parse::formula(&a.formula)?;
    let p = parse::rational_point(&a.at)?;
    let v = eval(&f, a.logic, &p).map_err(domain)?;
    Ok(Report::new(json!({ "formula": f.to_string(), "point": point(&p), "value": rat(&v) }), v.to_string()))
}

fn default_method(sem: Semantics) -> Method {
    match sem {
        Semantics::FiniteChain { .. } => Method::TruthTable,
        Semantics::Lukasiewicz => Method::ExactPwl,
        _ => Method::Grid(12),
    }
}

fn verdict_report(v: &Verdict) -> Report {
    match v {
        Verdict::Tautology => Report::new(json!({ "verdict": "Tautology" }), "Tautology"),
        Verdict::Countermodel(p) => Report::new(
            json!({ "verdict": "Countermodel", "point": point(p) }),
            format!("Countermodel {}", point_text(p)),
        ),
        Verdict::Unknown => Report::new(json!({ "verdict": "Unknown" }), "Unknown"),
    }
}

#[derive(Args)]
pub struct TautArgs {
    #[arg(long, default_value = "luk")]
    logic: Semantics,
    /// truth-table, exact-pwl or grid:N; defaults to the exact method for the logic.
    #[arg(long)]
    method: Option<String>,
    formula: String,
}

pub fn taut_cmd(a: &TautArgs, g: &Globals) -> Result<Report, CliError> {
    let f = parse::formula(&a.formula)?;
    let method = a.method.as_deref().map(parse::method).transpose()?.unwrap_or(default_method(a.logic));
    let v = tautology_check_capped(&f, a.logic, method, g.cap.unwrap_or(DEFAULT_POINT_CAP)).map_err(domain)?;
    Ok(verdict_report(&v))
}

#[derive(Args)]
pub struct IdentityArgs {
    #[arg(long, default_value = "luk")]
    logic: Semantics,
    #[arg(long)]
    method: Option<String>,
    left: String,
    right: String,
}

pub fn identity_cmd(a: &IdentityArgs) -> Result<Report, CliError> {
    let (r, s) = (parse::formula(&a.left)?, parse::formula(&a.right)?);
    let method = a.method.as_deref().map(parse::method).transpose()?.unwrap_or(default_method(a.logic));
    let v = identity_check(&r, &s, a.logic, method).map_err(domain)?;
    Ok(verdict_report(&v))
}

#[derive(Subcommand)]
pub enum PwlCmd {
    /// Compile a formula to its McNaughton function (PWL exchange JSON).
    Compile {
        /// Dimension; defaults to the formula's arity (at least 1).
        #[arg(long)]
        dim: Option<usize>,
        formula: String,
    },
    /// Exact integral of a formula or PWL file over a box.
    Integrate {
        /// PWL exchange JSON file (`-` for standard input) instead of a formula.
        #[arg(long)]
        json: Option<String>,
        /// Box such as `0..1/4` or `0..1,0..1/2`; defaults to the unit cube.
        #[arg(long = "box")]
        region: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        formula: Option<String>,
    },
    /// Formula for a one-variable PWL function given as exchange JSON.
    Synthesize {
        #[arg(long)]
        json: String,
    },
}

fn compile(f: &Formula, dim: Option<usize>) -> Result<PwlFunction, CliError> {
    PwlFunction::from_formula(f, dim.unwrap_or(f.arity().max(1))).map_err(domain)
}

fn read_pwl(path: &str) -> Result<PwlFunction, CliError> {
    let j: PwlJson = serde_json::from_str(&parse::read_input(path)?).map_err(usage)?;
    j.to_function().map_err(domain)
}

pub fn pwl_cmd(c: &PwlCmd) -> Result<Report, CliError> {
    match c {
        PwlCmd::Compile { dim, formula } => {
            let f = compile(&parse::formula(formula)?, *dim)?;
            let j = serde_json::to_value(PwlJson::from(&f)).expect("serializable");
            let text = format!("{} cells on [0,1]^{}", f.complex().cells().len(), f.dim());
            Ok(Report::new(j, text))
        }
        PwlCmd::Integrate { json, region, dim, formula } => {
            let f = match (json, formula) {
                (Some(path), None) => read_pwl(path)?,
                (None, Some(text)) => compile(&parse::formula(text)?, *dim)?,
                _ => return Err(CliError::Usage("give either a formula or --json".into())),
            };
            let bx = match region {
                Some(r) => parse::rational_box(r)?,
                None => mvdyn::RationalBox::unit(f.dim()),
            };
            let i = f.integral_over(&bx).map_err(domain)?;
            let vol = bx.volume();
            let mut j = json!({ "box": bx.to_string(), "integral": rat(&i.value), "volume": rat(&vol) });
            if !i.degenerate {
                j["average"] = rat(&(&i.value / &vol));
            }
            Ok(Report::new(j, i.value.to_string()))
        }
        PwlCmd::Synthesize { json } => {
            let f = read_pwl(json)?;
            let r = pwl_to_formula_1d(&f).map_err(domain)?;
            Ok(Report::new(json!({ "formula": r.to_string() }), r.to_string()))
        }
    }
}

#[derive(Subcommand)]
pub enum ProveCmd {
    /// Check a proof in the JSON-lines exchange format.
    ///
    /// Exit status: 0 valid, 1 invalid, 2 malformed.
    Check {
        /// Proof file, `-` for standard input.
        #[arg(long)]
        file: String,
        /// oracle:SEMANTICS, schemas:LOGIC, strict:LOGIC or either:LOGIC
        /// (LOGIC is mv, product, godel or boole).
        #[arg(long, default_value = "oracle:boole")]
        axioms: String,
    },
    /// Decide whether a formula follows from hypotheses by Modus Ponens.
    Consequence {
        #[arg(long, default_value = "luk")]
        logic: Semantics,
        /// Hypothesis; repeat for several.
        #[arg(long = "hyp")]
        hyps: Vec<String>,
        /// Largest star power tried (exact Łukasiewicz only).
        #[arg(long, default_value_t = DEFAULT_STAR_POWER_BOUND)]
        bound: usize,
        formula: String,
    },
}

fn axiom_source(text: &str) -> Result<AxiomSource, CliError> {
    let (kind, arg) = text.split_once(':').ok_or_else(|| CliError::Usage(format!("bad axiom source `{text}`")))?;
    let logic = || arg.parse::<Logic>().map_err(CliError::Usage);
    Ok(match kind {
        "oracle" => AxiomSource::Oracle(arg.parse().map_err(CliError::Usage)?),
        "schemas" => AxiomSource::Schemas { set: builtin_axioms(logic()?), strict: false },
        "strict" => AxiomSource::Schemas { set: builtin_axioms(logic()?), strict: true },
        "either" => {
            let l = logic()?;
            AxiomSource::SchemasOrOracle(builtin_axioms(l), l.semantics())
        }
        _ => return Err(CliError::Usage(format!("bad axiom source `{text}`"))),
    })
}

pub fn prove_cmd(c: &ProveCmd) -> Result<Report, CliError> {
    match c {
        ProveCmd::Check { file, axioms } => {
            let source = axiom_source(axioms)?;
            let proof = parse_proof_jsonl(&parse::read_input(file)?).map_err(usage)?;
            Ok(match check_proof(&proof, &source) {
                CheckVerdict::Valid => {
                    Report::new(json!({ "verdict": "Valid", "lines": proof.lines.len() }), "Valid")
                }
                CheckVerdict::InvalidAt { line, reason } => Report::new(
                    json!({ "verdict": "Invalid", "line": line, "reason": reason }),
                    format!("Invalid at line {line}: {reason}"),
                )
                .with_status(1),
            })
        }
        ProveCmd::Consequence { logic, hyps, bound, formula } => {
            let delta = hyps.iter().map(|h| parse::formula(h)).collect::<Result<Vec<_>, _>>()?;
            let r = parse::formula(formula)?;
            Ok(match mp_consequence(&delta, &r, *logic, *bound).map_err(domain)? {
                Consequence::Yes(cert) => {
                    let factors: Vec<Value> = cert.factors.iter().map(|&(i, e)| json!([i + 1, e])).collect();
                    let product = cert.product(&delta);
                    Report::new(
                        json!({ "verdict": "Yes", "factors": factors, "product": product.to_string() }),
                        format!("Yes: {product} -> {r}"),
                    )
                }
                Consequence::No(p) => Report::new(
                    json!({ "verdict": "No", "point": point(&p) }),
                    format!("No: countermodel {}", point_text(&p)),
                ),
                Consequence::Unknown => Report::new(json!({ "verdict": "Unknown" }), "Unknown"),
            })
        }
    }
}

#[derive(Subcommand)]
pub enum OdometerCmd {
    /// The permutation of {0,1}^n induced by the odometer substitution.
    Perm {
        #[arg(long)]
        n: usize,
    },
    /// Derive a target from a non-tautology using MP and the odometer.
    Derive {
        #[arg(long)]
        n: usize,
        /// Formula to derive; defaults to 0.
        #[arg(long, default_value = "0")]
        target: String,
        /// The non-tautology used as hypothesis.
        formula: String,
    },
}

pub fn odometer_cmd(c: &OdometerCmd, g: &Globals) -> Result<Report, CliError> {
    match c {
        OdometerCmd::Perm { n } => {
            let p = odometer_induced_permutation(*n).map_err(domain)?;
            let cycles = p.cycle_lengths();
            let cap = g.cap.unwrap_or(1 << 16) as usize;
            let shown = &p.map[..p.map.len().min(cap)];
            let text: String = shown.iter().enumerate().map(|(i, q)| format!("{i} -> {q}\n")).collect();
            Ok(Report::new(
                json!({
                    "n": n,
                    "map": shown,
                    "truncated": shown.len() < p.map.len(),
                    "cycle_lengths": cycles,
                    "single_cycle": p.is_single_cycle(),
                }),
                text,
            ))
        }
        OdometerCmd::Derive { n, target, formula } => {
            let r = parse::formula(formula)?;
            let t = parse::formula(target)?;
            let proof = derive_from_nontautology(&r, &t, *n).map_err(domain)?;
            let size: u128 = proof.lines.iter().map(|l| l.formula.tree_size()).sum();
            let cap = g.cap.unwrap_or(DEFAULT_PRINT_CAP);
            if size > u128::from(cap) {
                return Err(CliError::Domain(format!(
                    "the printed proof has {size} formula nodes, above the cap {cap}; raise --cap"
                )));
            }
            let jsonl = proof_to_jsonl(&proof);
            let steps: Vec<Value> = jsonl.lines().map(|l| serde_json::from_str(l).expect("valid json")).collect();
            let table = truth_table(&r, *n).map_err(domain)?;
            Ok(Report::new(json!({ "table": table.to_string(), "proof": steps }), jsonl))
        }
    }
}
