use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use hbk_core::algebra::parse_coefficients;
use hbk_core::bounds::{gordian_lower_bound, unknotting_lower_bound, DimProfile};
use hbk_core::coloring::{
    coloring_count, coloring_dimension, coloring_matrix, count_colorings_bruteforce,
    relation_residual,
};
use hbk_core::diagram::{catalog, Sign};
use hbk_core::flow::FlowError;
use hbk_core::moves::{apply_move, enumerate_applicable, random_walk, MoveSite, WalkOptions};
use hbk_core::{
    parse_diagram, serialize_diagram, AlexanderBiquandle, Diagram, Error, Flow, FlowSpace,
};
use serde_json::{json, Value};

use crate::{CapArg, Command, FieldArgs};

pub enum Output {
    Json(Value),
    /// A diagram document, printed verbatim.
    Diagram(String),
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Flow(FlowError::TooManyFlows(_))
            | Error::TooLarge(_)
            | Error::NotApplicable(_) => 1,
            Error::EmptyGcdClass(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

macro_rules! impl_from_core {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Failure {
                Error::from(e).into()
            }
        }
    )*};
}
impl_from_core!(hbk_core::FieldError, hbk_core::DiagramError, FlowError);

type Result<T> = std::result::Result<T, Failure>;

fn load(path: &Path) -> Result<Diagram> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    parse_diagram(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<Diagram> {
    let d = load(path)?;
    d.ensure_valid()
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(d)
}

fn biquandle(args: &FieldArgs) -> Result<(AlexanderBiquandle, u64)> {
    let f = parse_coefficients(&args.f)?;
    let s = parse_coefficients(&args.s)?;
    let ab = AlexanderBiquandle::from_params(args.p, &f, &s)?;
    let m = args.m.unwrap_or(ab.biquandle_type());
    ab.require_zm_family(m)?;
    Ok((ab, m))
}

fn field_json(ab: &AlexanderBiquandle, m: u64) -> Value {
    let f = ab.field();
    json!({
        "p": f.characteristic(),
        "f": f.modulus(),
        "s": f.format(ab.s()),
        "order": f.order(),
        "type": ab.biquandle_type(),
        "m": m,
    })
}

/// `semi=value,...`; empty text or absent flag means the zero flow.
fn parse_flow(d: &Diagram, m: u64, text: Option<&str>) -> Result<Flow> {
    let Some(text) = text.filter(|s| !s.trim().is_empty()) else {
        return Ok(Flow::zero(d, m));
    };
    let mut values = BTreeMap::new();
    for part in text.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Failure::input(format!("flow entry {part:?} is not semi=value")))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("flow value {v:?} is not an integer")))?;
        values.insert(k.trim().to_string(), v);
    }
    Ok(Flow::from_semi_values(d, m, &values)?)
}

fn flow_json(d: &Diagram, flow: &Flow) -> Value {
    json!(flow.semi_values(d))
}

fn count_string(ab: &AlexanderBiquandle, dim: usize) -> String {
    format!("{}^{dim}", ab.field().order())
}

fn profile_summary(p: &DimProfile) -> Value {
    let classes: serde_json::Map<String, Value> = p
        .classes
        .iter()
        .map(|(g, dims)| {
            let flows: u128 = dims.values().sum();
            let hist: serde_json::Map<String, Value> = dims
                .iter()
                .map(|(d, n)| (d.to_string(), json!(n.to_string())))
                .collect();
            (
                g.to_string(),
                json!({
                    "flows": flows.to_string(),
                    "min_dim": dims.keys().next(),
                    "max_dim": dims.keys().next_back(),
                    "dims": hist,
                }),
            )
        })
        .collect();
    Value::Object(classes)
}

fn example(name: &str) -> Result<Diagram> {
    let count = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
    };
    Ok(match name {
        "kink" => catalog::one_kink_unknot(),
        "e" => catalog::e_diagram(),
        "trefoil+" => catalog::trefoil(Sign::Positive),
        "trefoil-" => catalog::trefoil(Sign::Negative),
        _ => {
            if let Some(g) = count("trivial-") {
                catalog::trivial_diagram(g)
            } else if let Some(k) = count("link-") {
                catalog::trivial_link(k)
            } else {
                return Err(Failure::input(format!("unknown example {name:?}")));
            }
        }
    })
}

pub fn run(cmd: &Command) -> Result<Output> {
    let value = match cmd {
        Command::Example { name } => {
            return Ok(Output::Diagram(serialize_diagram(&example(name)?)))
        }
        Command::Validate { file } => {
            let d = load(file)?;
            let report = d.validate();
            if !report.is_valid() {
                let issues: Vec<String> = report.issues.iter().map(|i| i.to_string()).collect();
                return Err(Failure::input(format!(
                    "{}: {}",
                    file.display(),
                    issues.join("; ")
                )));
            }
            json!({
                "name": d.name(),
                "valid": true,
                "crossings": report.crossings,
                "vertices": report.vertices,
                "semi_arcs": report.semi_arcs,
                "arcs": report.arcs,
                "faces": report.planar_faces(),
                "components": report.components,
            })
        }
        Command::Flows { file, m, list, cap } => {
            let d = load_valid(file)?;
            let fs = FlowSpace::new(&d, *m)?;
            let mut out = json!({
                "m": m,
                "arcs": d.topology().arcs().len(),
                "rank": fs.rank(),
                "elementary_divisors": fs.elementary_divisors(),
                "generator_orders": fs.orders(),
                "count": fs.count().map(|c| c.to_string()),
            });
            if *list {
                let flows: Vec<Value> = fs
                    .enumerate(cap.cap)?
                    .map(|f| json!({"gcd": f.gcd(), "values": flow_json(&d, &f)}))
                    .collect();
                out["flows"] = Value::Array(flows);
            }
            out
        }
        Command::Color {
            file,
            field,
            flow,
            matrix,
        } => {
            let d = load_valid(file)?;
            let (ab, m) = biquandle(field)?;
            let flow = parse_flow(&d, m, flow.as_deref())?;
            let dim = coloring_dimension(&d, &flow, &ab)?;
            let mut out = json!({
                "dim": dim,
                "count": count_string(&ab, dim),
                "gcd": flow.gcd(),
                "flow": flow_json(&d, &flow),
                "field": field_json(&ab, m),
            });
            if *matrix {
                let mx = coloring_matrix(&d, &flow, &ab)?;
                let f = ab.field();
                let rows: Vec<Value> = mx
                    .entries
                    .iter()
                    .zip(&mx.rows)
                    .map(|(r, p)| {
                        json!({
                            "relation": p.to_string(),
                            "entries": r.iter().map(|&x| f.format(x)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                out["matrix"] = json!({"columns": mx.columns, "rows": rows});
            }
            out
        }
        Command::BoundUnknot { file, field, cap } => {
            let d = load_valid(file)?;
            let (ab, m) = biquandle(field)?;
            let b = unknotting_lower_bound(&d, &ab, m, cap.cap)?;
            json!({
                "bound": b.bound,
                "max_dim": b.bound + 1,
                "flows_examined": b.flows_examined.to_string(),
                "per_gcd_summary": profile_summary(&b.profile),
                "field": field_json(&ab, m),
            })
        }
        Command::BoundDistance {
            first,
            second,
            field,
            cap,
        } => bound_distance(first, second, field, cap)?,
        Command::Oracle {
            file,
            field,
            flow,
            budget,
        } => {
            let d = load_valid(file)?;
            let (ab, m) = biquandle(field)?;
            let flow = parse_flow(&d, m, flow.as_deref())?;
            let dim = coloring_dimension(&d, &flow, &ab)?;
            let expected = coloring_count(&ab, dim);
            let found = count_colorings_bruteforce(&d, &flow, &ab, *budget)?;
            json!({
                "dim": dim,
                "count": count_string(&ab, dim),
                "rank_count": expected.to_string(),
                "brute_force_count": found.to_string(),
                "agree": expected == found,
            })
        }
        Command::CheckRelation {
            file,
            field,
            flow,
            cap,
        } => {
            let d = load_valid(file)?;
            let (ab, m) = biquandle(field)?;
            let flows: Vec<Flow> = match flow {
                Some(text) => vec![parse_flow(&d, m, Some(text))?],
                None => FlowSpace::new(&d, m)?.enumerate(cap.cap)?.collect(),
            };
            let mut failures = Vec::new();
            for f in &flows {
                let r = relation_residual(&d, f, &ab)?;
                if r.iter().any(|x| !x.is_zero()) {
                    failures.push(flow_json(&d, f));
                }
            }
            json!({
                "residual_zero": failures.is_empty(),
                "flows_checked": flows.len(),
                "failures": failures,
            })
        }
        Command::Moves {
            file,
            apply,
            randomize,
            seed,
            list,
            max_crossings,
        } => {
            let d = load_valid(file)?;
            if let Some(site) = apply {
                let site: MoveSite = site
                    .parse()
                    .map_err(|e: Error| Failure::input(e.to_string()))?;
                let next = apply_move(&d, &site)?;
                return Ok(Output::Diagram(serialize_diagram(&next)));
            }
            if let Some(steps) = randomize {
                let opts = WalkOptions {
                    max_crossings: *max_crossings,
                    ..WalkOptions::default()
                };
                let (next, trail) =
                    random_walk(&d, seed.expect("clap requires --seed"), *steps, &opts);
                for s in &trail {
                    eprintln!("applied {s}");
                }
                return Ok(Output::Diagram(serialize_diagram(&next)));
            }
            if *list {
                let sites: Vec<String> = enumerate_applicable(&d)
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                json!({ "sites": sites })
            } else {
                return Err(Failure::input(
                    "moves needs one of --apply, --randomize or --list",
                ));
            }
        }
    };
    Ok(Output::Json(value))
}

fn bound_distance(first: &Path, second: &Path, field: &FieldArgs, cap: &CapArg) -> Result<Value> {
    let d1 = load_valid(first)?;
    let d2 = load_valid(second)?;
    let (ab, m) = biquandle(field)?;
    let b = gordian_lower_bound(&d1, &d2, &ab, m, cap.cap)?;
    Ok(json!({
        "bound": b.bound,
        "direction_details": {
            "forward": b.forward,
            "backward": b.backward,
        },
        "flows_examined": b.flows_examined.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
        "per_gcd_summary": [profile_summary(&b.profiles[0]), profile_summary(&b.profiles[1])],
        "warning": b.warning,
        "field": field_json(&ab, m),
    }))
}
