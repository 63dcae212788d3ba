//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 budget stop, 3 counterexample found by `check`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::ackermann::DEFAULT_CAP_BITS;
use crate::assignment::{assign_num, ord_simple, AssignError, Map};
use crate::base_change::{base_change, BcOp};
use crate::buchholz::{fund_hb, is_nf, HbTerm, System};
use crate::goodstein::{mr_seed, run, RunConfig, Status, DEFAULT_MAX_TERM_NODES};
use crate::normal_form::{eval_term, hereditary, knf_fin, knf_ord, value_or_term, NfError, Part, DEFAULT_NCAP};
use crate::ordinal_e0::{fund_e0, OrdE0};
use crate::verifier::{run_suite, Params, SuiteId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "goodstein", version, about = "Ackermann Goodstein sequences and their ordinal assignments")]
pub struct Cli {
    /// Bit budget for every evaluated number.
    #[arg(long, global = true, env = "GOODSTEIN_MAX_BITS", default_value_t = DEFAULT_CAP_BITS)]
    pub max_bits: u64,
    /// Node budget for hereditary terms during runs.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERM_NODES)]
    pub max_term_nodes: u64,
    /// Largest ordinal size searched for part-2 normal forms.
    #[arg(long, global = true, default_value_t = DEFAULT_NCAP)]
    pub ncap: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct NumArgs {
    /// Decimal number of any length.
    #[arg(long)]
    pub m: BigUint,
    #[arg(long, default_value_t = 3)]
    pub k: u64,
    #[arg(long, default_value = "1", value_parser = parse_part)]
    pub part: Part,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// k-normal form `A_a(k,b)+l`.
    Nf {
        #[command(flatten)]
        num: NumArgs,
        /// Print the hereditary term instead of the top level.
        #[arg(long)]
        hereditary: bool,
    },
    /// Base change k <- k+1.
    Bc {
        #[command(flatten)]
        num: NumArgs,
        #[arg(long, value_parser = parse_op)]
        op: BcOp,
    },
    /// Ordinal assigned to a number.
    Ord {
        #[command(flatten)]
        num: NumArgs,
        #[arg(long, value_parser = parse_map)]
        map: Map,
    },
    /// Goodstein run from a seed at base 3.
    Run {
        #[arg(long)]
        m: BigUint,
        #[arg(long, default_value = "prime", value_parser = parse_op)]
        variant: BcOp,
        #[arg(long, default_value = "1", value_parser = parse_part)]
        part: Part,
        #[arg(long, default_value_t = 1000)]
        max_steps: u64,
        /// Write the full trace as JSON.
        #[arg(long)]
        trace: Option<std::path::PathBuf>,
    },
    /// Fundamental sequence `alpha[x]`.
    Fund {
        #[arg(long, value_enum)]
        system: FundSystem,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        x: u64,
    },
    /// Verifier suite.
    Check {
        /// S1..S13 or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        m_max: Option<u64>,
        #[arg(long)]
        k_min: Option<u64>,
        #[arg(long)]
        k_max: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Seeds `m(r)`.
    Seed {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value = "1", value_parser = parse_part)]
        part: Part,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FundSystem {
    E0,
    Ot,
    Otp,
}

fn parse_part(s: &str) -> Result<Part, String> {
    s.parse::<u8>().map_err(|e| e.to_string()).and_then(Part::try_from)
}

fn parse_op(s: &str) -> Result<BcOp, String> {
    s.parse()
}

fn parse_map(s: &str) -> Result<Map, String> {
    s.parse()
}

/// Outcome of one command: exit code and the text to print.
enum Failure {
    Usage(String),
    Budget(String),
}

impl From<NfError> for Failure {
    fn from(e: NfError) -> Self {
        match e {
            NfError::Exceeded(_) | NfError::CertificationImpossible(_) => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<AssignError> for Failure {
    fn from(e: AssignError) -> Self {
        match e {
            AssignError::Nf(nf) => nf.into(),
            AssignError::Overflow(_) => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Budget(msg)) => {
            let _ = writeln!(err, "budget: {msg}");
            EXIT_BUDGET
        }
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Usage(e.to_string()))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let cap = cli.max_bits;
    match &cli.command {
        Command::Nf { num, hereditary: full } => {
            let nf = match num.part {
                Part::One => knf_fin(&num.m, num.k, cap)?,
                Part::Two => knf_ord(&num.m, num.k, cli.ncap, cap)?,
            };
            let term = if *full { Some(hereditary(&num.m, num.k, num.part, cap)?) } else { None };
            if cli.json {
                let mut v = json!({
                    "m": num.m.to_string(), "k": num.k, "part": u8::from(num.part),
                    "index": nf.index.to_string(), "b": nf.b.to_string(), "l": nf.l,
                });
                if let Some(t) = &term {
                    v["term"] = json!(t.to_string());
                }
                emit(out, v)?;
            } else {
                match &term {
                    Some(t) => emit(out, t)?,
                    None => emit(out, &nf)?,
                }
            }
        }
        Command::Bc { num, op } => {
            let t = hereditary(&num.m, num.k, num.part, cap)?;
            let changed = base_change(*op, &t);
            let value = eval_term(&changed, cap);
            if !value.is_exact() {
                return Err(Failure::Budget(format!("{changed} exceeds {cap} bits")));
            }
            if cli.json {
                emit(out, json!({ "m": num.m.to_string(), "k": num.k, "op": op, "value": value.to_string(), "term": changed.to_string() }))?;
            } else {
                emit(out, &value)?;
            }
        }
        Command::Ord { num, map } => {
            let ord = if *map == Map::Simple {
                let t = hereditary(&num.m, num.k, num.part, cap)?;
                ord_simple(&t, num.part)?.to_string()
            } else {
                assign_num(*map, &num.m, num.k, num.part, cap)?.to_string()
            };
            if cli.json {
                emit(out, json!({ "m": num.m.to_string(), "k": num.k, "map": map.name(), "ordinal": ord }))?;
            } else {
                emit(out, ord)?;
            }
        }
        Command::Run { m, variant, part, max_steps, trace } => {
            let cfg = RunConfig { max_steps: *max_steps, cap_bits: cap, max_term_nodes: cli.max_term_nodes };
            let tr = run(m, *variant, *part, &cfg)?;
            if let Some(path) = trace {
                std::fs::write(path, tr.to_json()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            if cli.json {
                emit(out, tr.to_json())?;
            } else {
                match tr.status {
                    Status::Zero => emit(out, format!("status zero at l={}", tr.steps.len()))?,
                    Status::MaxSteps => emit(out, format!("status max-steps after l={}", tr.steps.len()))?,
                    Status::Budget => emit(out, format!("status budget at l={}", tr.steps.len()))?,
                }
                let ok = if tr.descends() { "ok" } else { "FAILED" };
                emit(out, format!("descent {ok}"))?;
            }
            if tr.status == Status::Budget {
                return Ok(EXIT_BUDGET);
            }
        }
        Command::Fund { system, alpha, x } => {
            let result = match system {
                FundSystem::E0 => {
                    let a: OrdE0 = alpha.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
                    fund_e0(&a, *x).to_string()
                }
                FundSystem::Ot | FundSystem::Otp => {
                    let a: HbTerm = alpha.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
                    let want = if *system == FundSystem::Ot { System::OT } else { System::OTPrime };
                    if a.system() != Some(want) || !is_nf(&a) {
                        return Err(Failure::Usage(format!("{alpha} is not a normal-form term of {want:?}")));
                    }
                    fund_hb(&a, *x).to_string()
                }
            };
            if cli.json {
                emit(out, json!({ "alpha": alpha, "x": x, "result": result }))?;
            } else {
                emit(out, result)?;
            }
        }
        Command::Check { suite, m_max, k_min, k_max, samples, seed } => {
            let ids: Vec<SuiteId> = if suite.eq_ignore_ascii_case("all") { SuiteId::ALL.to_vec() } else { vec![suite.parse().map_err(Failure::Usage)?] };
            let d = Params::default();
            let params = Params {
                m_max: m_max.unwrap_or(d.m_max),
                k_min: k_min.unwrap_or(d.k_min),
                k_max: k_max.unwrap_or(d.k_max),
                samples: samples.unwrap_or(d.samples),
                seed: seed.unwrap_or(d.seed),
                cap_bits: cap,
                ..d
            };
            if params.k_min < 2 || params.k_min > params.k_max {
                return Err(Failure::Usage("need 2 <= k-min <= k-max".into()));
            }
            let mut failed = false;
            for id in ids {
                let r = run_suite(id, &params);
                failed |= !r.passed();
                if cli.json {
                    emit(out, r.to_json())?;
                } else {
                    emit(out, &r)?;
                }
            }
            if failed {
                return Ok(EXIT_COUNTEREXAMPLE);
            }
        }
        Command::Seed { r, part } => {
            if *r == 0 {
                return Err(Failure::Usage("seeds start at r = 1".into()));
            }
            let t = mr_seed(*r, *part);
            if cli.json {
                let value = eval_term(&t, cap);
                let value = if value.is_exact() { json!(value.to_string()) } else { serde_json::Value::Null };
                emit(out, json!({ "r": r, "part": u8::from(*part), "term": t.to_string(), "value": value }))?;
            } else {
                emit(out, value_or_term(&t))?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with(std::iter::once("goodstein").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn documented_examples() {
        assert_eq!(call(&["nf", "--m", "100", "--k", "3", "--part", "1"]), (0, "A_2(3,0)+61\n".into()));
        assert_eq!(call(&["ord", "--m", "39", "--k", "3", "--map", "psi", "--part", "1"]), (0, "w^(w)\n".into()));
        let (code, text) = call(&["run", "--m", "4", "--variant", "prime", "--max-steps", "100"]);
        assert_eq!(code, 0);
        assert!(text.starts_with("status zero at l=6\n"), "{text}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["nf", "--m", "x"]).0, EXIT_USAGE);
        assert_eq!(call(&["bc", "--m", "5", "--op", "sideways"]).0, EXIT_USAGE);
        assert_eq!(call(&["fund", "--system", "e0", "--alpha", "w^(", "--x", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn budget_stop() {
        let (code, _) = call(&["--max-bits", "12", "run", "--m", "39", "--max-steps", "1000"]);
        assert_eq!(code, EXIT_BUDGET);
    }

    #[test]
    fn fund_systems() {
        assert_eq!(call(&["fund", "--system", "e0", "--alpha", "w^(w)", "--x", "3"]).1, "w^(3)\n");
        assert_eq!(call(&["fund", "--system", "ot", "--alpha", "p(W)", "--x", "2"]).0, 0);
        assert_eq!(call(&["fund", "--system", "otp", "--alpha", "p(W)", "--x", "2"]).0, EXIT_USAGE);
    }
}
