//! Grid evaluation. Every cell goes through the same cache entries as the
//! corresponding single command, so a sweep reuses earlier runs.

use std::path::Path;
use std::str::FromStr;

use framed_moduli::localization::Rational;
use framed_moduli::*;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::{self, cached, moduli_request, to_json, with_fields, CliError, Envelope};
use crate::{IndexMethod, SweepMode};

/// Parses `"1,2,5"`, `"1..4"` (inclusive) or a mix such as `"0,2..3"`.
/// Ranges are integer-valued; the empty string is the empty list.
pub fn parse_list<T>(spec: &str, from_int: fn(i64) -> Option<T>) -> Result<Vec<T>, CliError>
where
    T: FromStr,
{
    let bad = |item: &str| CliError::Input(format!("cannot parse grid entry {item:?}"));
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: i64 = lo.trim().parse().map_err(|_| bad(item))?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad(item))?;
            for v in lo..=hi {
                out.push(from_int(v).ok_or_else(|| bad(item))?);
            }
        } else {
            out.push(item.parse().map_err(|_| bad(item))?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    p: u32,
    r: usize,
    k: i64,
    n: Rational,
}

fn mode_name(mode: SweepMode) -> &'static str {
    match mode {
        SweepMode::Poincare => "poincare",
        SweepMode::Check => "check",
        SweepMode::Crosscheck => "crosscheck",
    }
}

pub fn run(dir: Option<&Path>, mode: SweepMode, p: &str, r: &str, k: &str, n: &str) -> Result<Envelope, CliError> {
    let ps: Vec<u32> = parse_list(p, |v| u32::try_from(v).ok())?;
    let rs: Vec<usize> = parse_list(r, |v| usize::try_from(v).ok())?;
    let ks: Vec<i64> = parse_list(k, Some)?;
    let ns: Vec<Rational> = parse_list(n, |v| Some(Rational::from_integer(v)))?;

    let mut cells = Vec::new();
    for &p in &ps {
        for &r in &rs {
            for &k in &ks {
                for &n in &ns {
                    cells.push(Cell { p, r, k, n });
                }
            }
        }
    }
    let rows: Vec<(Value, String)> = cells.par_iter().map(|cell| evaluate(dir, mode, cell)).collect();

    let request = json!({
        "command": "sweep", "mode": mode_name(mode), "p": p, "r": r, "k": k, "n": n,
    });
    let mut text = vec!["p\tr\tk\tn\tvalue".to_owned()];
    text.extend(rows.iter().map(|(_, line)| line.clone()));
    let rows: Vec<Value> = rows.into_iter().map(|(row, _)| row).collect();
    Ok(Envelope {
        request,
        result: json!({ "rows": rows }),
        text: text.join("\n"),
    })
}

fn evaluate(dir: Option<&Path>, mode: SweepMode, cell: &Cell) -> (Value, String) {
    let head = format!("{}\t{}\t{}\t{}", cell.p, cell.r, cell.k, cell.n);
    let mut row = json!({ "p": cell.p, "r": cell.r, "k": cell.k, "n": cell.n.to_string() });
    match evaluate_cell(dir, mode, cell) {
        Ok((status, value, shown)) => {
            row["status"] = Value::from(status);
            row["value"] = value;
            (row, format!("{head}\t{shown}"))
        }
        Err(CliError::Input(msg) | CliError::Internal(msg)) => {
            row["status"] = Value::from("error");
            row["error"] = Value::from(msg.clone());
            (row, format!("{head}\terror: {msg}"))
        }
    }
}

fn evaluate_cell(dir: Option<&Path>, mode: SweepMode, cell: &Cell) -> Result<(&'static str, Value, String), CliError> {
    let params = ModuliParams::new(cell.p, cell.r, cell.k, cell.n)?;
    match mode {
        SweepMode::Poincare => {
            let request = with_fields(
                moduli_request("poincare", cell.p, cell.r, cell.k, cell.n),
                json!({ "method": "closed" }),
            );
            let env = cached(dir, request, || commands::poincare(&params, IndexMethod::Closed))?;
            Ok(("ok", env.result["poincare"].clone(), env.text))
        }
        SweepMode::Check => {
            let request = moduli_request("check", cell.p, cell.r, cell.k, cell.n);
            let env = cached(dir, request, || Ok(commands::check(&params)))?;
            let nonempty = env.result["nonempty"].clone();
            Ok(("ok", nonempty.clone(), nonempty.to_string()))
        }
        SweepMode::Crosscheck => {
            // the oracle only models p = 2 with vanishing first Chern class
            if cell.p != 2 || cell.k != 0 {
                return Ok(("not-applicable", Value::Null, "not applicable".into()));
            }
            let request = moduli_request("crosscheck", cell.p, cell.r, cell.k, cell.n);
            let env = cached(dir, request, || {
                let formula = poincare_polynomial(&params);
                let oracle = ale_poincare(params.r, params.n);
                let verdict = if formula == oracle { "equal" } else { "unequal" };
                let result = json!({
                    "verdict": verdict,
                    "formula": to_json(&formula),
                    "oracle": to_json(&oracle),
                });
                Ok((result, verdict.to_owned()))
            })?;
            let verdict = if env.text == "equal" { "equal" } else { "unequal" };
            Ok((verdict, env.result, env.text))
        }
    }
}
