use std::io::Read;
use std::path::Path;

use framed_moduli::localization::{LocalizationError, Rational};
use framed_moduli::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::{cache, sweep, Cli, Command, IndexMethod, ModuliArgs, OrderingChoice, SeriesMethod, VERSION};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: exit status 2.
    Input(String),
    /// Internal invariant violation: exit status 3.
    Internal(String),
}

impl From<LocalizationError> for CliError {
    fn from(e: LocalizationError) -> Self {
        match e {
            LocalizationError::InvalidParams(_) | LocalizationError::InvalidFixedPoint(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// Request echo, JSON result payload and its text rendering.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub request: Value,
    pub result: Value,
    pub text: String,
}

impl Envelope {
    pub fn json(&self) -> Value {
        json!({ "version": VERSION, "request": self.request, "result": self.result })
    }
}

/// Looks `request` up in the cache, computing and storing it on a miss.
pub fn cached<F>(cache_dir: Option<&Path>, request: Value, compute: F) -> Result<Envelope, CliError>
where
    F: FnOnce() -> Result<(Value, String), CliError>,
{
    if let Some(dir) = cache_dir {
        if let Some(env) = cache::load(dir, &request) {
            return Ok(env);
        }
    }
    let (result, text) = compute()?;
    let env = Envelope { request, result, text };
    if let Some(dir) = cache_dir {
        cache::store(dir, &env);
    }
    Ok(env)
}

pub fn params_of(m: &ModuliArgs) -> Result<ModuliParams, CliError> {
    Ok(ModuliParams::new(m.p, m.r, m.k, m.n)?)
}

pub fn moduli_request(command: &str, p: u32, r: usize, k: i64, n: Rational) -> Value {
    json!({ "command": command, "p": p, "r": r, "k": k, "n": n.to_string() })
}

pub fn with_fields(mut request: Value, extra: Value) -> Value {
    if let (Value::Object(base), Value::Object(more)) = (&mut request, extra) {
        base.extend(more);
    }
    request
}

pub fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

/// Integers as JSON numbers when they fit in `i64`, otherwise decimal strings.
pub fn int_json(x: impl ToString) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn ordering_name(o: OrderingChoice) -> &'static str {
    match o {
        OrderingChoice::Main => "main",
        OrderingChoice::Ale => "ale",
    }
}

fn ordering_spec(o: OrderingChoice, rank: usize) -> OrderingSpec {
    match o {
        OrderingChoice::Main => OrderingSpec::main(rank),
        OrderingChoice::Ale => OrderingSpec::ale(rank),
    }
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().collect::<Vec<_>>().join("\n")
}

pub fn run(cli: &Cli) -> Result<Envelope, CliError> {
    let dir = cli.cache_dir.as_deref();
    match &cli.command {
        Command::FixedPoints { moduli, reduced } => {
            let params = params_of(moduli)?;
            let request = with_fields(
                moduli_request("fixed-points", params.p, params.r, params.k, params.n),
                json!({ "reduced": reduced }),
            );
            cached(dir, request, || Ok(fixed_points(&params, *reduced)))
        }
        Command::Tangent { moduli, reduced, input, ordering } => {
            let params = params_of(moduli)?;
            let source = input.as_deref().map(read_input).transpose()?;
            let mut extra = json!({ "reduced": reduced, "ordering": ordering_name(*ordering) });
            if let Some(bytes) = &source {
                extra["input_sha256"] = Value::String(hex::encode(Sha256::digest(bytes)));
            }
            let request = with_fields(moduli_request("tangent", params.p, params.r, params.k, params.n), extra);
            cached(dir, request, || tangent(&params, *reduced, source.as_deref(), *ordering))
        }
        Command::Poincare { moduli, method } => {
            let params = params_of(moduli)?;
            let method_name = match method {
                IndexMethod::Closed => "closed",
                IndexMethod::Characters => "characters",
            };
            let request = with_fields(
                moduli_request("poincare", params.p, params.r, params.k, params.n),
                json!({ "method": method_name }),
            );
            cached(dir, request, || poincare(&params, *method))
        }
        Command::Series { p, max_order, method } => {
            if *p == 0 {
                return Err(CliError::Input("p must be at least 1".into()));
            }
            let method_name = match method {
                SeriesMethod::Closed => "closed",
                SeriesMethod::Direct => "direct",
            };
            let request = json!({ "command": "series", "p": p, "max_order": max_order, "method": method_name });
            cached(dir, request, || {
                let series = match method {
                    SeriesMethod::Closed => rank2_series_closed(*p, *max_order),
                    SeriesMethod::Direct => rank2_series_direct(*p, *max_order),
                };
                Ok((json!({ "series": to_json(&series) }), series.to_string()))
            })
        }
        Command::Hilbert { p, max_order } => {
            if *p == 0 {
                return Err(CliError::Input("p must be at least 1".into()));
            }
            let request = json!({ "command": "hilbert", "p": p, "max_order": max_order });
            cached(dir, request, || {
                let series = hilbert_series_r1(*p, *max_order);
                Ok((json!({ "series": to_json(&series) }), series.to_string()))
            })
        }
        Command::Ale { r, n, ordering } => {
            if *r == 0 {
                return Err(CliError::Input("r must be at least 1".into()));
            }
            let request = json!({
                "command": "ale", "r": r, "n": n.to_string(), "ordering": ordering_name(*ordering),
            });
            cached(dir, request, || ale(*r, *n, *ordering))
        }
        Command::Check { moduli } => {
            let params = params_of(moduli)?;
            let request = moduli_request("check", params.p, params.r, params.k, params.n);
            cached(dir, request, || Ok(check(&params)))
        }
        Command::Sweep { mode, p, r, k, n } => sweep::run(dir, *mode, p, r, k, n),
    }
}

fn fixed_points(params: &ModuliParams, reduced: bool) -> (Value, String) {
    let points: Vec<Value> = if reduced {
        indexed_reduced_fixed_points(params).iter().map(to_json).collect()
    } else {
        enumerate_fixed_points(params).iter().map(to_json).collect()
    };
    let text = lines(points.iter().map(Value::to_string));
    (json!({ "count": points.len(), "points": points }), text)
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    let mut bytes = Vec::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(path).map(|b| bytes = b)
    };
    read.map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(bytes)
}

enum AnyPoint {
    Full(FixedPointDatum),
    Reduced(ReducedFixedPointDatum),
}

/// Accepts a `fixed-points` envelope, its result, a bare list of records or
/// a single record. Records with `Y1` are full-torus points, records with `Y`
/// are reduced ones; extra fields such as `index` are ignored.
fn parse_points(bytes: &[u8]) -> Result<Vec<AnyPoint>, CliError> {
    let bad = |msg: String| CliError::Input(format!("malformed fixed-point input: {msg}"));
    let value: Value = serde_json::from_slice(bytes).map_err(|e| bad(e.to_string()))?;
    let records = if let Some(points) = value.pointer("/result/points").or_else(|| value.get("points")) {
        points.clone()
    } else if value.is_object() {
        Value::Array(vec![value])
    } else {
        value
    };
    let Value::Array(records) = records else {
        return Err(bad("expected a list of fixed points".into()));
    };
    records
        .into_iter()
        .map(|rec| {
            if rec.get("Y1").is_some() {
                serde_json::from_value(rec).map(AnyPoint::Full)
            } else {
                serde_json::from_value(rec).map(AnyPoint::Reduced)
            }
            .map_err(|e| bad(e.to_string()))
        })
        .collect()
}

fn tangent(
    params: &ModuliParams,
    reduced: bool,
    source: Option<&[u8]>,
    ordering: OrderingChoice,
) -> Result<(Value, String), CliError> {
    let points = match source {
        Some(bytes) => parse_points(bytes)?,
        None if reduced => enumerate_reduced_fixed_points(params).into_iter().map(AnyPoint::Reduced).collect(),
        None => enumerate_fixed_points(params).into_iter().map(AnyPoint::Full).collect(),
    };
    let ord = ordering_spec(ordering, params.r);
    let mut records = Vec::with_capacity(points.len());
    let mut text = Vec::with_capacity(points.len());
    for point in &points {
        let (echo, x) = match point {
            AnyPoint::Full(fp) => (to_json(fp), tangent_character(params, fp)?),
            AnyPoint::Reduced(rfp) => (to_json(rfp), reduced_tangent_character(params, rfp)?),
        };
        let negative = x
            .negative_count(&ord)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        text.push(format!("{echo}: {x}"));
        records.push(json!({
            "point": echo,
            "character": to_json(&x),
            "dimension": int_json(x.dimension()),
            "negative_weights": int_json(negative),
            "zero_weights": int_json(x.zero_weight_count(&ord)),
        }));
    }
    Ok((json!({ "points": records }), lines(text)))
}

pub fn poincare_value(params: &ModuliParams, method: IndexMethod) -> Result<TPolynomial, CliError> {
    match method {
        IndexMethod::Closed => Ok(poincare_polynomial(params)),
        IndexMethod::Characters => Ok(poincare_polynomial_from_characters(params)?),
    }
}

pub fn poincare(params: &ModuliParams, method: IndexMethod) -> Result<(Value, String), CliError> {
    let poly = poincare_value(params, method)?;
    let result = json!({
        "nonempty": check_nonempty(params),
        "poincare": to_json(&poly),
        "euler_characteristic": int_json(poly.eval_at_one()),
    });
    Ok((result, poly.to_string()))
}

fn ale(r: usize, n: Rational, ordering: OrderingChoice) -> Result<(Value, String), CliError> {
    let points = enumerate_colored_fixed_points(r, n);
    let poly = ale_poincare_with(r, n, &ordering_spec(ordering, r)).map_err(|e| CliError::Internal(e.to_string()))?;
    let result = json!({ "fixed_points": points.len(), "poincare": to_json(&poly) });
    Ok((result, poly.to_string()))
}

pub fn check(params: &ModuliParams) -> (Value, String) {
    let nonempty = check_nonempty(params);
    (json!({ "nonempty": nonempty }), format!("nonempty: {nonempty}"))
}
