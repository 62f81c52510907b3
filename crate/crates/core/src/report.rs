//! JSON encodings and the end-to-end gap report.

use std::fmt::Write as _;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::flow::{check_feasible, enumerate_paths, max_multiflow, Flow, Path, DEFAULT_PATH_CAP};
use crate::instance::Instance;
use crate::laminar::laminarize;
use crate::multicut::{verify_multicut, wgmv_multicut};
use crate::oracle::{exact_max_half_integer_flow, exact_max_integer_flow, exact_min_multicut};
use crate::plane::EdgeId;
use crate::rational::{self, from_u64, Rational};
use crate::rounding::{half_integer_round, integer_round, plus_one_round};

/// Paths in their canonical order, each as `{demand, vertices, edges, value}`.
pub fn flow_to_json(f: &Flow) -> Value {
    Value::Array(
        f.iter()
            .map(|(p, v)| {
                json!({
                    "demand": p.demand(),
                    "vertices": p.vertices(),
                    "edges": p.edges(),
                    "value": rational::to_json(v),
                })
            })
            .collect(),
    )
}

/// Reads either a bare path list or a document with a `paths` field. The
/// `edges` field of a path may be omitted when no two supply edges are
/// parallel along it.
pub fn flow_from_json(inst: &Instance, doc: &Value) -> Result<Flow> {
    let list = match doc {
        Value::Array(items) => items,
        Value::Object(map) => map
            .get("paths")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadParameter("flow document has no \"paths\" list".into()))?,
        _ => return Err(Error::BadParameter("flow must be a JSON list or object".into())),
    };
    let mut f = Flow::new();
    for (i, item) in list.iter().enumerate() {
        let bad = |what: &str| Error::BadParameter(format!("path {i}: {what}"));
        let demand = item
            .get("demand")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing demand"))?;
        let ids = |key: &str| -> Option<Vec<usize>> {
            item.get(key)?
                .as_array()?
                .iter()
                .map(|v| v.as_u64().map(|x| x as usize))
                .collect()
        };
        let vertices = ids("vertices").ok_or_else(|| bad("missing vertices"))?;
        let value = item
            .get("value")
            .and_then(rational::from_json)
            .ok_or_else(|| bad("missing or malformed value"))?;
        if value < Rational::zero() {
            return Err(bad("negative value"));
        }
        let path = match ids("edges") {
            Some(edges) => Path::new(inst, demand as EdgeId, vertices, edges)?,
            None => Path::from_vertices(inst, demand as EdgeId, vertices)?,
        };
        f.add(path, value);
    }
    Ok(f)
}

/// One document of the shared schema:
/// `{instance, mode, value, paths, multicut, checks}`.
pub fn document(
    instance: &str,
    mode: &str,
    value: &Rational,
    flow: &Flow,
    multicut: &[EdgeId],
    checks: Map<String, Value>,
) -> Value {
    json!({
        "instance": instance,
        "mode": mode,
        "value": rational::to_json(value),
        "paths": flow_to_json(flow),
        "multicut": multicut,
        "checks": Value::Object(checks),
    })
}

/// A stage of the rounding pipeline, selected by the `solve` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Fractional,
    HalfInteger,
    Integer,
    PlusOne,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Fractional => "frac",
            Stage::HalfInteger => "half",
            Stage::Integer => "int",
            Stage::PlusOne => "plus-one",
        }
    }
}

/// Flow produced by one stage, with named checks. Boolean checks must all be
/// true; the `fractional` entry carries the optimum for reference.
pub fn solve_stage(inst: &Instance, stage: Stage) -> Result<(Flow, Map<String, Value>)> {
    let paths = enumerate_paths(inst, DEFAULT_PATH_CAP)?;
    let frac = max_multiflow(inst, &paths)?;
    let mut checks = Map::new();
    let flow = match stage {
        Stage::Fractional => frac.flow.clone(),
        Stage::HalfInteger | Stage::Integer => {
            let half = half_integer_round(inst, &laminarize(inst, &frac.flow)?)?;
            checks.insert("half_integer".into(), json!(half.is_half_integer()));
            checks.insert(
                "at_least_half_of_fractional".into(),
                json!(half.value() * from_u64(2) >= frac.value),
            );
            if let Stage::Integer = stage {
                let int = integer_round(inst, &half)?;
                checks.insert("integer".into(), json!(int.is_integer()));
                checks.insert(
                    "at_least_half_of_half".into(),
                    json!(int.value() * from_u64(2) >= half.value()),
                );
                int
            } else {
                half
            }
        }
        Stage::PlusOne => {
            let f = plus_one_round(inst, &laminarize(inst, &frac.flow)?)?;
            checks.insert("integer".into(), json!(f.is_integer()));
            checks.insert("at_least_fractional".into(), json!(f.value() >= frac.value));
            f
        }
    };
    let report = check_feasible(inst, &flow)?;
    let extra = if let Stage::PlusOne = stage { 1 } else { 0 };
    checks.insert("feasible".into(), json!(report.feasible_with_extra(extra)));
    checks.insert("fractional".into(), rational::to_json(&frac.value));
    Ok((flow, checks))
}

/// Everything the full pipeline computes on one instance.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub fractional: Rational,
    pub fractional_flow: Flow,
    pub half_output: Rational,
    pub integer_output: Rational,
    pub plus_one_output: Rational,
    pub multicut_cost: u64,
    pub multicut_flow: Rational,
    pub multicut: Vec<EdgeId>,
    pub oracle_min_multicut: Option<u64>,
    pub oracle_half: Option<Rational>,
    pub oracle_integer: Option<Rational>,
    /// Named inequality checks, in the order they were evaluated.
    pub checks: Vec<(String, bool)>,
}

impl PipelineReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    /// Realized ratios `(multicut / fractional, fractional / half output,
    /// half output / integer output)`; `None` where the divisor is zero.
    pub fn ratios(&self) -> [Option<Rational>; 3] {
        let div = |a: &Rational, b: &Rational| (!b.is_zero()).then(|| a / b);
        [
            div(&from_u64(self.multicut_cost), &self.fractional),
            div(&self.fractional, &self.half_output),
            div(&self.half_output, &self.integer_output),
        ]
    }

    pub fn to_text(&self) -> String {
        let r = rational::display;
        let mut out = String::new();
        let _ = writeln!(out, "fractional max        {}", r(&self.fractional));
        let _ = writeln!(out, "half-integer rounding {}", r(&self.half_output));
        let _ = writeln!(out, "integer rounding      {}", r(&self.integer_output));
        let _ = writeln!(out, "plus-one rounding     {}", r(&self.plus_one_output));
        let _ = writeln!(out, "primal-dual multicut  {}", self.multicut_cost);
        let _ = writeln!(out, "primal-dual flow      {}", r(&self.multicut_flow));
        let opt = |v: Option<String>| v.unwrap_or_else(|| "skipped (too large)".into());
        let _ = writeln!(
            out,
            "oracle min multicut   {}",
            opt(self.oracle_min_multicut.map(|v| v.to_string()))
        );
        let _ = writeln!(out, "oracle half-integer   {}", opt(self.oracle_half.as_ref().map(r)));
        let _ = writeln!(
            out,
            "oracle integer        {}",
            opt(self.oracle_integer.as_ref().map(r))
        );
        let names = ["multicut / fractional", "fractional / half", "half / integer"];
        for (name, ratio) in names.iter().zip(self.ratios()) {
            let shown = ratio.map(|q| format!("{} ~ {:.4}", r(&q), rational::to_f64(&q)));
            let _ = writeln!(out, "ratio {name:<22} {}", shown.unwrap_or_else(|| "undefined".into()));
        }
        let _ = writeln!(
            out,
            "chain: {} <= {} <= {} <= 2 * {}",
            r(&self.multicut_flow),
            r(&self.fractional),
            self.multicut_cost,
            r(&self.multicut_flow)
        );
        for (name, ok) in &self.checks {
            let _ = writeln!(out, "[{}] {name}", if *ok { "ok" } else { "FAIL" });
        }
        out
    }

    pub fn to_json(&self, instance: &str) -> Value {
        let q = |v: &Rational| rational::to_json(v);
        let checks: Map<String, Value> = self
            .checks
            .iter()
            .map(|(n, ok)| (n.clone(), Value::Bool(*ok)))
            .collect();
        json!({
            "instance": instance,
            "mode": "report",
            "value": q(&self.fractional),
            "paths": flow_to_json(&self.fractional_flow),
            "multicut": self.multicut,
            "fractional": q(&self.fractional),
            "half_output": q(&self.half_output),
            "integer_output": q(&self.integer_output),
            "plus_one_output": q(&self.plus_one_output),
            "multicut_cost": self.multicut_cost,
            "multicut_flow": q(&self.multicut_flow),
            "oracle_min_multicut": self.oracle_min_multicut,
            "oracle_half": self.oracle_half.as_ref().map(q),
            "oracle_integer": self.oracle_integer.as_ref().map(q),
            "checks": Value::Object(checks),
        })
    }
}

/// Runs every stage and every oracle that fits, and evaluates the
/// inequalities that must hold between them.
pub fn run_pipeline(inst: &Instance) -> Result<PipelineReport> {
    let paths = enumerate_paths(inst, DEFAULT_PATH_CAP)?;
    let frac = max_multiflow(inst, &paths)?;
    let lf = laminarize(inst, &frac.flow)?;
    let half = half_integer_round(inst, &lf)?;
    let integer = integer_round(inst, &half)?;
    let plus_one = plus_one_round(inst, &lf)?;
    let run = wgmv_multicut(inst)?;

    let fits = |e: &Error| matches!(e, Error::TooLarge(_));
    let oracle_cut = match exact_min_multicut(inst) {
        Ok(c) => Some(c.value),
        Err(e) if fits(&e) => None,
        Err(e) => return Err(e),
    };
    let oracle_half = match exact_max_half_integer_flow(inst, &paths) {
        Ok(o) => Some(o.value),
        Err(e) if fits(&e) => None,
        Err(e) => return Err(e),
    };
    let oracle_int = match exact_max_integer_flow(inst, &paths) {
        Ok(o) => Some(o.value),
        Err(e) if fits(&e) => None,
        Err(e) => return Err(e),
    };

    let two = from_u64(2);
    let fv = frac.value.clone();
    let cost = from_u64(run.cost(inst));
    let mut checks = vec![
        (
            "fractional flow feasible".to_string(),
            check_feasible(inst, &frac.flow)?.feasible,
        ),
        (
            "half output half-integer and feasible".into(),
            half.is_half_integer() && check_feasible(inst, &half)?.feasible,
        ),
        ("half output >= fractional / 2".into(), half.value() * &two >= fv),
        (
            "integer output integer and feasible".into(),
            integer.is_integer() && check_feasible(inst, &integer)?.feasible,
        ),
        (
            "integer output >= half output / 2".into(),
            integer.value() * &two >= half.value(),
        ),
        (
            "plus-one output within c + 1".into(),
            plus_one.is_integer() && check_feasible(inst, &plus_one)?.feasible_with_extra(1),
        ),
        ("plus-one output >= fractional".into(), plus_one.value() >= fv),
        ("primal-dual Q is a multicut".into(), verify_multicut(inst, &run.q)),
        (
            "primal-dual flow feasible".into(),
            check_feasible(inst, &run.flow)?.feasible,
        ),
        ("primal-dual flow <= fractional".into(), run.flow.value() <= fv),
        ("fractional <= c(Q)".into(), fv <= cost),
        ("c(Q) <= 2 * primal-dual flow".into(), cost <= &two * run.flow.value()),
    ];
    if let (Some(i), Some(h)) = (&oracle_int, &oracle_half) {
        checks.push(("oracle integer <= oracle half-integer".into(), i <= h));
    }
    if let Some(h) = &oracle_half {
        checks.push(("oracle half-integer <= fractional".into(), *h <= fv));
    }
    if let Some(c) = oracle_cut {
        checks.push(("fractional <= oracle min multicut".into(), fv <= from_u64(c)));
        checks.push(("oracle min multicut <= c(Q)".into(), c <= run.cost(inst)));
    }
    Ok(PipelineReport {
        fractional: fv.clone(),
        fractional_flow: frac.flow,
        half_output: half.value(),
        integer_output: integer.value(),
        plus_one_output: plus_one.value(),
        multicut_cost: run.cost(inst),
        multicut_flow: run.flow.value(),
        multicut: run.q,
        oracle_min_multicut: oracle_cut,
        oracle_half,
        oracle_integer: oracle_int,
        checks,
    })
}
