use std::fmt::{self, Write as _};
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, Context};
use maxsat_aa::reduction::width_bound;
use maxsat_aa::solver::MAX_EXPANSION_WIDTH;
use maxsat_aa::{
    Answer, CnfFormula, Dyadic, Error, Mechanism, ParseOptions, RegimeReport, WitnessScope,
};
use serde::Serialize;
use serde_json::{json, Value};

/// What a successful command prints, in both renderings, plus its exit code.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub exit: u8,
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or invalid input, or infeasible generator parameters.
    Input(anyhow::Error),
    /// A search space larger than the budget.
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "{e:#}"),
            CliError::Budget(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.into()),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Input(e)
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let bytes = if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).context("reading standard input")?;
        buf
    } else {
        std::fs::read(path).with_context(|| format!("reading {}", path.display()))?
    };
    String::from_utf8(bytes).map_err(|_| CliError::Input(anyhow!("input is not valid UTF-8")))
}

pub fn read_cnf(path: &Path, lenient: bool) -> Result<CnfFormula, CliError> {
    let text = read_text(path)?;
    let (f, diags) = maxsat_aa::parse_dimacs_with(&text, ParseOptions { lenient })
        .with_context(|| format!("parsing {}", path.display()))?;
    for d in diags {
        eprintln!("warning: line {}: {}", d.line, d.message);
    }
    Ok(f)
}

/// `7/8 (0.875)` for fractions, `3 (3/1)` for integers.
fn exact(d: &Dyadic) -> String {
    if d.is_integer() {
        format!("{d} ({})", d.to_fraction_string())
    } else {
        format!("{d} ({})", d.to_decimal_string())
    }
}

#[derive(Serialize)]
struct ExactValue {
    value: String,
    fraction: String,
    decimal: String,
}

impl From<&Dyadic> for ExactValue {
    fn from(d: &Dyadic) -> Self {
        Self { value: d.to_string(), fraction: d.to_fraction_string(), decimal: d.to_decimal_string() }
    }
}

fn push_exact(text: &mut String, key: &str, d: &Dyadic) {
    writeln!(text, "{key} = {}", exact(d)).unwrap();
    writeln!(text, "{key}_fraction = {}", d.to_fraction_string()).unwrap();
    writeln!(text, "{key}_decimal = {}", d.to_decimal_string()).unwrap();
}

fn model_line(lits: &[i64]) -> String {
    let mut s = String::from("v");
    for l in lits {
        write!(s, " {l}").unwrap();
    }
    s.push_str(" 0");
    s
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), T::to_string)
}

pub fn stats(f: &CnfFormula) -> Result<Output, CliError> {
    let asat = f.asat();
    let regime: RegimeReport = maxsat_aa::classify_regime(f);
    let mut text = String::new();
    writeln!(text, "n = {}", f.num_vars()).unwrap();
    writeln!(text, "m = {}", f.num_clauses()).unwrap();
    writeln!(text, "r_max = {}", f.max_width()).unwrap();
    push_exact(&mut text, "asat", &asat);
    writeln!(text, "regime = {}", regime.regime).unwrap();
    writeln!(text, "ceil_log_n = {}", opt(&regime.ceil_log_n)).unwrap();
    writeln!(text, "log_log_n = {}", opt(&regime.log_log_n)).unwrap();
    writeln!(text, "xp_bound = {}", opt(&regime.xp_bound)).unwrap();
    let json = json!({
        "n": f.num_vars(),
        "m": f.num_clauses(),
        "r_max": f.max_width(),
        "asat": ExactValue::from(&asat),
        "regime": regime,
    });
    Ok(Output { text, json, exit: 0 })
}

pub fn solve(f: &CnfFormula) -> Result<Output, CliError> {
    let a = maxsat_aa::derandomized_assignment(f);
    let satisfied = f.count_satisfied(&a)?;
    let asat = f.asat();
    let excess = f.excess(&a)?;
    let lits = a.to_dimacs_literals();
    let mut text = String::new();
    writeln!(text, "{}", model_line(&lits)).unwrap();
    writeln!(text, "satisfied = {satisfied}").unwrap();
    push_exact(&mut text, "asat", &asat);
    push_exact(&mut text, "excess", &excess);
    let json = json!({
        "assignment": lits,
        "satisfied": satisfied,
        "asat": ExactValue::from(&asat),
        "excess": ExactValue::from(&excess),
    });
    Ok(Output { text, json, exit: 0 })
}

pub fn decide(f: &CnfFormula, k: u64, budget: usize) -> Result<Output, CliError> {
    let out = maxsat_aa::decide_above_average(f, k, budget);
    let asat = f.asat();
    let target = &asat + &Dyadic::from(k as i64);
    let witness = out.witness.as_ref().map(|w| w.to_dimacs_literals());
    let mut text = String::new();
    writeln!(text, "answer = {}", out.answer).unwrap();
    writeln!(text, "mechanism = {}", out.mechanism).unwrap();
    writeln!(text, "k = {k}").unwrap();
    push_exact(&mut text, "asat", &asat);
    push_exact(&mut text, "target", &target);
    writeln!(text, "r_used = {}", opt(&out.r_used)).unwrap();
    writeln!(text, "k2 = {}", out.k2).unwrap();
    writeln!(text, "kernel_vars = {}", opt(&out.kernel_vars)).unwrap();
    writeln!(text, "twice_excess_max = {}", opt(&out.twice_excess_max)).unwrap();
    writeln!(text, "witness_scope = {}", opt(&out.witness_scope)).unwrap();
    if let Some(w) = &witness {
        writeln!(text, "{}", model_line(w)).unwrap();
    }
    let json = json!({
        "answer": out.answer,
        "mechanism": out.mechanism,
        "k": k,
        "asat": ExactValue::from(&asat),
        "target": ExactValue::from(&target),
        "r_used": out.r_used,
        "k2": out.k2.to_string(),
        "kernel_vars": out.kernel_vars,
        "twice_excess_max": out.twice_excess_max.as_ref().map(ToString::to_string),
        "witness_scope": out.witness_scope,
        "witness": witness,
    });
    let exit = match out.answer {
        Answer::Yes => 0,
        Answer::No => 1,
        Answer::Unknown => 3,
    };
    debug_assert!(out.answer != Answer::Unknown || out.mechanism == Mechanism::BudgetExceeded);
    debug_assert!(out.witness_scope != Some(WitnessScope::KernelOnly) || out.answer == Answer::Yes);
    Ok(Output { text, json, exit })
}

pub fn reduce(f: &CnfFormula, k: u64, kernel: bool) -> Result<Output, CliError> {
    let r = width_bound(f);
    if r > MAX_EXPANSION_WIDTH {
        return Err(CliError::Budget(format!(
            "clause width {r} exceeds the expansion limit of {MAX_EXPANSION_WIDTH}"
        )));
    }
    let red = maxsat_aa::cnf_to_lin2(f, k);
    let mut text = String::new();
    writeln!(text, "c r_used = {}", red.r_used).unwrap();
    writeln!(text, "c k = {k}").unwrap();
    writeln!(text, "c k2 = k*2^(r_used-1) = {}", red.k2).unwrap();
    let mut json = json!({
        "r_used": red.r_used,
        "k": k,
        "k2": red.k2.to_string(),
        "kernel": kernel,
    });
    let system = if kernel {
        let (reduced, trace) = maxsat_aa::reduce_fixpoint(&red.system);
        let live = reduced.live_vars().len();
        let deleted = trace.deleted_vars();
        let certified = if red.k2 > 0u32.into() {
            Some(maxsat_aa::threshold_yes(&reduced, &red.k2)?)
        } else {
            None
        };
        writeln!(text, "c input_equations = {}", red.system.num_equations()).unwrap();
        writeln!(text, "c merge_steps = {}", trace.merge_steps()).unwrap();
        writeln!(text, "c rank_steps = {}", trace.rank_steps()).unwrap();
        writeln!(text, "c deleted_vars = {deleted:?}").unwrap();
        writeln!(text, "c kernel_vars = {live}").unwrap();
        writeln!(text, "c threshold_yes = {}", opt(&certified)).unwrap();
        json["input_equations"] = json!(red.system.num_equations());
        json["trace"] = json!({
            "merge_steps": trace.merge_steps(),
            "rank_steps": trace.rank_steps(),
            "deleted_vars": deleted,
        });
        json["kernel_vars"] = json!(live);
        json["threshold_yes"] = json!(certified);
        reduced
    } else {
        red.system
    };
    let lin2 = maxsat_aa::serialize_lin2(&system);
    text.push_str(&lin2);
    json["lin2"] = json!(lin2);
    Ok(Output { text, json, exit: 0 })
}

pub fn oracle(f: &CnfFormula, k: Option<u64>, budget: usize) -> Result<Output, CliError> {
    let best = maxsat_aa::oracle_max_sat(f, budget)?;
    let lits = best.witness.to_dimacs_literals();
    let asat = f.asat();
    let mut text = String::new();
    writeln!(text, "max_satisfied = {}", best.max_satisfied).unwrap();
    writeln!(text, "{}", model_line(&lits)).unwrap();
    push_exact(&mut text, "asat", &asat);
    let mut json = json!({
        "max_satisfied": best.max_satisfied,
        "witness": lits,
        "asat": ExactValue::from(&asat),
    });
    let mut exit = 0;
    if let Some(k) = k {
        let target = &asat + &Dyadic::from(k as i64);
        let yes = Dyadic::from(best.max_satisfied as i64) >= target;
        let answer = if yes { Answer::Yes } else { Answer::No };
        writeln!(text, "k = {k}").unwrap();
        push_exact(&mut text, "target", &target);
        writeln!(text, "answer = {answer}").unwrap();
        json["k"] = json!(k);
        json["target"] = json!(ExactValue::from(&target));
        json["answer"] = json!(answer);
        exit = if yes { 0 } else { 1 };
    }
    Ok(Output { text, json, exit })
}

pub fn gen_theorem1(f: &CnfFormula, c: usize, meta_out: Option<&Path>) -> Result<Output, CliError> {
    let (out, meta) = maxsat_aa::gen_theorem1(f, c)?;
    let meta_json = serde_json::to_value(&meta).expect("serializable");
    if let Some(path) = meta_out {
        let doc = serde_json::to_string_pretty(&meta_json).expect("serializable");
        std::fs::write(path, doc + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let dimacs = maxsat_aa::serialize_dimacs(&out);
    let text = format!("c meta {meta_json}\n{dimacs}");
    let json = json!({ "meta": meta_json, "dimacs": dimacs });
    Ok(Output { text, json, exit: 0 })
}

pub fn gen_pad(f: &CnfFormula, extra: usize) -> Result<Output, CliError> {
    let dimacs = maxsat_aa::serialize_dimacs(&maxsat_aa::pad_contradicting_units(f, extra));
    let json = json!({ "extra": extra, "dimacs": dimacs });
    Ok(Output { text: dimacs, json, exit: 0 })
}

pub fn gen_random_cnf(n: usize, m: usize, width: usize, seed: u64) -> Result<Output, CliError> {
    let f = maxsat_aa::gen_random_cnf(n, m, width, seed)?;
    let dimacs = maxsat_aa::serialize_dimacs(&f);
    let text = format!("c random-cnf n={n} m={m} width={width} seed={seed}\n{dimacs}");
    let json = json!({ "seed": seed, "dimacs": dimacs });
    Ok(Output { text, json, exit: 0 })
}

pub fn gen_random_lin2(
    n: usize,
    m: usize,
    arity: usize,
    weight_max: u64,
    seed: u64,
) -> Result<Output, CliError> {
    let s = maxsat_aa::gen_random_lin2(n, m, arity, weight_max, seed)?;
    let lin2 = maxsat_aa::serialize_lin2(&s);
    let text =
        format!("c random-lin2 n={n} m={m} arity={arity} weight_max={weight_max} seed={seed}\n{lin2}");
    let json = json!({ "seed": seed, "lin2": lin2 });
    Ok(Output { text, json, exit: 0 })
}
