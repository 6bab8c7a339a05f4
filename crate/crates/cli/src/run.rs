//! Subcommand execution on canonical JSON inputs, shared by direct runs and
//! manifest replay.

use pisotlab::approx::{decay_rate, scan, SearchSpec};
use pisotlab::classify::{classify_number, pisot_power_search, pseudo_pisot_tuple};
use pisotlab::heights::{mahler_measure, weil_height};
use pisotlab::interval::decimal::ball_to_decimal;
use pisotlab::partition::{equivalence_partition, is_nondegenerate, lemma3_check};
use pisotlab::products::{evaluate_product, prefix_for_digits, ProductSpec};
use pisotlab::{AlgebraicNumber, Ctx, Error, RealBall, Tri};
use serde::Deserialize;
use serde_json::{json, Value};

pub const SUBCOMMANDS: [&str; 8] =
    ["classify", "tuple-check", "height", "partition", "pisot-power", "search", "decay", "product"];

pub struct Output {
    pub json: Value,
    pub csv: Option<String>,
    pub undecided: bool,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(e) if e.is_precision() => 3,
            Failure::Core(Error::Parse(_) | Error::InvalidInput(_) | Error::Degenerate(_)) => 2,
            _ => 1,
        }
    }
}

fn field<T: for<'de> Deserialize<'de>>(input: &Value, key: &str) -> Result<T, Failure> {
    let v = input.get(key).ok_or_else(|| Failure::Usage(format!("missing input field {key:?}")))?;
    serde_json::from_value(v.clone()).map_err(|e| Failure::Usage(format!("field {key:?}: {e}")))
}

fn opt_field<T: for<'de> Deserialize<'de>>(input: &Value, key: &str) -> Result<Option<T>, Failure> {
    match input.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => field(input, key).map(Some),
    }
}

fn number(input: &Value, ctx: &Ctx) -> Result<AlgebraicNumber, Failure> {
    Ok(AlgebraicNumber::parse(&field::<String>(input, "number")?, ctx)?)
}

fn numbers(input: &Value, ctx: &Ctx) -> Result<Vec<AlgebraicNumber>, Failure> {
    let lits: Vec<String> = field(input, "numbers")?;
    if lits.is_empty() {
        return Err(Failure::Usage("at least one number is required".into()));
    }
    lits.iter().map(|s| AlgebraicNumber::parse(s, ctx).map_err(Failure::from)).collect()
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn ball_cells(b: &RealBall) -> [String; 2] {
    let (m, r) = ball_to_decimal(b);
    [m, r]
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| Failure::Io(e.to_string()))?;
    for r in rows {
        w.write_record(&r).map_err(|e| Failure::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn execute(cmd: &str, input: &Value, ctx: &Ctx) -> Result<Output, Failure> {
    match cmd {
        "classify" => {
            let c = classify_number(&number(input, ctx)?, ctx)?;
            Ok(Output { undecided: !c.is_decided(), json: to_value(&c), csv: None })
        }
        "tuple-check" => {
            let r = pseudo_pisot_tuple(&numbers(input, ctx)?, ctx)?;
            let undecided = r.is_pseudo_pisot_tuple == Tri::Undecided || r.is_pisot_tuple == Tri::Undecided;
            Ok(Output { undecided, json: to_value(&r), csv: None })
        }
        "height" => {
            let a = number(input, ctx)?;
            let bits = opt_field::<u32>(input, "bits")?.unwrap_or(ctx.prec);
            let v = weil_height(&a, bits, ctx)?;
            let m = mahler_measure(a.minpoly(), bits, ctx)?;
            Ok(Output {
                json: json!({ "number": to_value(&a), "degree": a.degree(), "H": to_value(&v.H), "h": to_value(&v.h), "mahler_measure": to_value(&m) }),
                csv: None,
                undecided: false,
            })
        }
        "partition" => {
            let ts = numbers(input, ctx)?;
            let p = equivalence_partition(&ts, ctx)?;
            let nd = is_nondegenerate(&ts, ctx)?;
            let r = opt_field::<u64>(input, "lemma_r")?.unwrap_or(p.r);
            let l = lemma3_check(&ts, r, ctx)?;
            Ok(Output {
                json: json!({ "partition": to_value(&p), "nondegeneracy": to_value(&nd), "lemma3": to_value(&l) }),
                csv: None,
                undecided: false,
            })
        }
        "pisot-power" => {
            let a = number(input, ctx)?;
            let m_max = opt_field::<u64>(input, "m_max")?.unwrap_or(8);
            let r = pisot_power_search(&a, m_max, ctx)?;
            Ok(Output { undecided: !r.undecided.is_empty(), json: to_value(&r), csv: None })
        }
        "search" => {
            let spec: SearchSpec =
                serde_json::from_value(input.clone()).map_err(|e| Failure::Usage(format!("search spec: {e}")))?;
            let out = scan(&spec, ctx)?;
            let rows = out
                .hits
                .iter()
                .map(|h| {
                    let mut row = vec![h.n.to_string(), h.q.to_string(), h.p.to_string()];
                    for b in [&h.value, &h.distance, &h.bound] {
                        row.extend(ball_cells(b));
                    }
                    row
                })
                .collect();
            let header = ["n", "q", "p", "value_mid", "value_rad", "distance_mid", "distance_rad", "bound_mid", "bound_rad"];
            Ok(Output { undecided: !out.undecided.is_empty(), csv: Some(csv_string(&header, rows)?), json: to_value(&out) })
        }
        "decay" => {
            let a = number(input, ctx)?;
            let n_max = opt_field::<u64>(input, "n_max")?.unwrap_or(60);
            let r = decay_rate(&a, n_max, ctx)?;
            let rows = r
                .points
                .iter()
                .map(|p| {
                    let mut row = vec![p.n.to_string(), p.p.to_string()];
                    row.extend(ball_cells(&p.dist));
                    row.extend(ball_cells(&p.log_dist));
                    row
                })
                .collect();
            let header = ["n", "p", "dist_mid", "dist_rad", "log_dist_mid", "log_dist_rad"];
            Ok(Output { undecided: false, csv: Some(csv_string(&header, rows)?), json: to_value(&r) })
        }
        "product" => {
            let mut spec_v = input.clone();
            let digits = opt_field::<u32>(input, "digits")?;
            if let Some(obj) = spec_v.as_object_mut() {
                obj.remove("digits");
                if digits.is_some() && !obj.contains_key("m") {
                    obj.insert("m".into(), json!(1));
                }
            }
            let mut spec: ProductSpec =
                serde_json::from_value(spec_v).map_err(|e| Failure::Usage(format!("product spec: {e}")))?;
            if let Some(d) = digits {
                spec.m = prefix_for_digits(&spec, d, ctx)?;
            }
            let c = evaluate_product(&spec, ctx)?;
            let undecided = c.pisot_power.as_ref().is_some_and(|p| !p.undecided.is_empty());
            Ok(Output { undecided, json: to_value(&c), csv: None })
        }
        other => Err(Failure::Usage(format!("unknown subcommand {other:?}; expected one of {}", SUBCOMMANDS.join(", ")))),
    }
}
