use std::fmt::Write as _;
use std::fs;

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use fihl_core::crit::{crit_set, decode};
use fihl_core::koszul::{euler_check, homology_decomposition};
use fihl_core::linalg::RankPolicy;
use fihl_core::theta::{theta_exact, ThetaContext};
use fihl_core::transfer::{h0_predicted, h0_report};
use fihl_core::young_form::oracle_numeric;
use fihl_core::{DecompositionTable, FihlError};

use crate::cli::{Command, Format, RunConfig};
use crate::sweep;

pub enum Failure {
    Usage(String),
    Internal(String),
}

impl From<FihlError> for Failure {
    fn from(e: FihlError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn emit(config: &RunConfig, text: &str) -> Result<(), Failure> {
    match &config.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn table_out(table: &DecompositionTable, format: Format) -> String {
    match format {
        Format::Json => pretty(&table.to_json_value()),
        Format::Csv => table.to_csv(),
    }
}

pub fn run(config: &RunConfig) -> Result<(), Failure> {
    let policy = config.policy;
    let text = match &config.command {
        Command::H0 {
            a,
            b,
            predicted,
            format,
        } => {
            let table = if *predicted {
                h0_predicted(*a, *b)
            } else {
                h0_report(*a, *b, policy)?.table
            };
            table_out(&table, *format)
        }
        Command::CheckH0 { max_b } => return check_h0(config, *max_b, policy),
        Command::Homology { a, b, n, format } => homology(*a, *b, *n, *format, policy)?,
        Command::Euler { a, b } => {
            let report = euler_check(*a, *b, policy)?;
            pretty(&serde_json::to_value(&report).expect("report serializes"))
        }
        Command::Theta {
            lambda,
            nu,
            kappa,
            oracle,
        } => {
            let ctx = ThetaContext::new(lambda.clone(), nu.clone(), kappa.clone())?;
            let theta = theta_exact(&ctx)?;
            let mut out = Map::new();
            out.insert("theta".into(), json!(theta.to_string()));
            if *oracle {
                let numeric = oracle_numeric(&ctx)?;
                let exact = theta.to_f64().unwrap_or(f64::NAN);
                out.insert("oracle".into(), json!(numeric));
                out.insert("abs_err".into(), json!((numeric - exact).abs()));
            }
            pretty(&Value::Object(out))
        }
        Command::Crit { a, b, gamma_delta } => {
            let mut rows = Vec::new();
            for pair in crit_set(*a, *b) {
                let mut row = json!({
                    "lambda": pair.lambda,
                    "mu": pair.mu,
                    "degree": pair.degree,
                });
                if *gamma_delta {
                    let (g, d) = decode(&pair)?;
                    row["gamma"] = json!(g);
                    row["delta"] = json!(d);
                }
                rows.push(row);
            }
            pretty(&Value::Array(rows))
        }
        Command::Conjecture {
            max_a,
            max_b,
            timing,
        } => {
            let out = config.out.as_ref().expect("validated: conjecture has --out");
            return sweep::run(out, *max_a, *max_b, *timing, policy);
        }
    };
    emit(config, &text)
}

fn homology(a: usize, b: usize, only: Option<usize>, format: Format, policy: RankPolicy) -> Result<String, Failure> {
    let report = homology_decomposition(a, b, policy)?;
    let degrees: Vec<usize> = match only {
        Some(n) => vec![n],
        None => (0..=a).collect(),
    };
    Ok(match format {
        Format::Json => {
            let mut out = Map::new();
            for n in degrees {
                out.insert(n.to_string(), report.degree(n).to_json_value());
            }
            pretty(&Value::Object(out))
        }
        Format::Csv => {
            let mut s = String::from("n;lambda;mu;mult\n");
            for n in degrees {
                for (l, m, v) in report.degree(n).iter() {
                    let _ = writeln!(s, "{n};{l};{m};{v}");
                }
            }
            s
        }
    })
}

fn check_h0(config: &RunConfig, max_b: usize, policy: RankPolicy) -> Result<(), Failure> {
    let mut cells = Vec::new();
    let mut failed = 0;
    for a in 1..=max_b {
        for b in 1..=max_b {
            let report = h0_report(a, b, policy)?;
            let pass = report.table == h0_predicted(a, b);
            if !pass {
                failed += 1;
            }
            cells.push(json!({
                "a": a,
                "b": b,
                "rank": report.rank,
                "mode": report.mode,
                "status": if pass { "pass" } else { "fail" },
            }));
        }
    }
    emit(config, &pretty(&Value::Array(cells)))?;
    if failed > 0 {
        return Err(Failure::Internal(format!("{failed} cells differ from the prediction")));
    }
    Ok(())
}
