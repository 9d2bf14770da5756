//! Commands over a configuration and their versioned JSON reports.
//!
//! Every command yields a [`Report`]; its status decides the process exit
//! code: `0` pass, `1` verification failure, `2` invalid configuration or
//! arguments, `3` internal inconsistency.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::certify::{dimension_audit, direct_sum_check};
use crate::checks::Section;
use crate::cocycles::CocycleError;
use crate::comodules::{ComoduleError, SimpleId};
use crate::config::{Config, ConfigError};
use crate::fusion::{FusionError, FusionRing};
use crate::reps::RepError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    InvalidConfig,
    Inconsistent,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InvalidConfig => 2,
            Status::Inconsistent => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Simples,
    Character(SimpleId),
    Fuse(SimpleId, SimpleId),
    Dual(SimpleId),
    Indicators,
    FusionTable,
    CqgCheck,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Simples => "simples",
            Command::Character(_) => "character",
            Command::Fuse(..) => "fuse",
            Command::Dual(_) => "dual",
            Command::Indicators => "indicators",
            Command::FusionTable => "fusion-table",
            Command::CqgCheck => "cqg-check",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Option<String>,
    pub config_hash: Option<String>,
    pub status: Status,
    pub payload: Value,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Report for a configuration that failed to load.
    pub fn invalid_config(command: &str, err: &ConfigError) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config: None,
            config_hash: None,
            status: Status::InvalidConfig,
            payload: config_error_payload(err),
        }
    }

    /// Human-readable rendering of the same report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} [{}] {}",
            self.command,
            self.config.as_deref().unwrap_or("-"),
            status_word(self.status)
        );
        if let Some(h) = &self.config_hash {
            let _ = writeln!(out, "config hash {}", &h[..12.min(h.len())]);
        }
        render_value(&mut out, &self.payload, 0);
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::InvalidConfig => "INVALID CONFIG",
        Status::Inconsistent => "INCONSISTENT",
    }
}

fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_value(out, x, depth + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if let Some(line) = law_line(x) {
                    let _ = writeln!(out, "{pad}{line}");
                    if let Some(ws) = x.get("witnesses").and_then(Value::as_array) {
                        for w in ws {
                            let _ = writeln!(out, "{pad}    witness {}", inline(w));
                        }
                    }
                } else if is_flat(x) {
                    let _ = writeln!(out, "{pad}- {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_value(out, x, depth + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

/// One line per law check: `ok   law (instances, scope)`.
fn law_line(v: &Value) -> Option<String> {
    let law = v.get("law")?.as_str()?;
    let violations = v.get("violations")?.as_u64()?;
    let instances = v.get("instances")?.as_u64()?;
    let scope = v.get("scope").map(inline).unwrap_or_default();
    let mark = if violations == 0 { "ok  " } else { "FAIL" };
    Some(format!("{mark} {law}  ({instances} instances, {scope})"))
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(map) => {
            map.len() <= 6 && map.values().all(|x| !x.is_object() && !x.is_array())
        }
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(inline).collect::<Vec<_>>().join(", ")
        ),
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| format!("{k}={}", inline(x)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn config_error_payload(err: &ConfigError) -> Value {
    match err {
        ConfigError::Syntax {
            line,
            column,
            message,
        } => json!({
            "error": "syntax",
            "line": line,
            "column": column,
            "message": message,
        }),
        ConfigError::Semantic { field, message } => json!({
            "error": "semantic",
            "field": field,
            "message": message,
        }),
        ConfigError::UnknownPreset(name) => json!({
            "error": "unknown_preset",
            "message": format!("unknown preset '{name}'"),
        }),
    }
}

/// Parses a simple id `f,i`; vectors may be written `[a,b],i`.
pub fn parse_simple_id(config: &Config, s: &str) -> Result<SimpleId, String> {
    let (f, i) = s
        .rsplit_once(',')
        .ok_or_else(|| format!("'{s}' is not of the form f,i"))?;
    let index = i
        .trim()
        .parse()
        .map_err(|_| format!("'{i}' is not a character index"))?;
    let f = config.hopf.matched_pair().f().parse_elem(f)?;
    Ok(SimpleId { f, index })
}

fn status_of_error(err: &FusionError) -> Status {
    match err {
        FusionError::Inconsistent(_) => Status::Inconsistent,
        FusionError::NotApplicable(_) => Status::Inconsistent,
        FusionError::BallTooSmall { .. } => Status::InvalidConfig,
        FusionError::Comodule(c) => match c {
            ComoduleError::Inconsistent(_) | ComoduleError::Rep(RepError::Inconsistent(_)) => {
                Status::Inconsistent
            }
            ComoduleError::Cocycle(
                CocycleError::BetaNotCocycle { .. } | CocycleError::BetaNotNormalized { .. },
            ) => Status::Fail,
            _ => Status::InvalidConfig,
        },
    }
}

fn section_status(sections: &[&Section]) -> Status {
    if sections.iter().all(|s| s.passed) {
        Status::Pass
    } else {
        Status::Fail
    }
}

struct Ctx<'a> {
    config: &'a Config,
    ring: FusionRing,
    radius: u32,
}

/// Runs a command; `radius` overrides the configuration's default ball.
pub fn run(command: &Command, config: &Config, radius: Option<u32>) -> Report {
    let ctx = Ctx {
        config,
        ring: FusionRing::new(Arc::new(config.session())),
        radius: radius.unwrap_or(config.radius),
    };
    let result = match command {
        Command::Verify => Ok(verify(&ctx)),
        Command::Simples => simples(&ctx),
        Command::Character(id) => character(&ctx, id),
        Command::Fuse(a, b) => fuse(&ctx, a, b),
        Command::Dual(id) => dual(&ctx, id),
        Command::Indicators => indicators(&ctx),
        Command::FusionTable => fusion_table(&ctx),
        Command::CqgCheck => Ok(cqg_check(&ctx)),
    };
    let (status, payload) = result.unwrap_or_else(|e| {
        (
            status_of_error(&e),
            json!({ "error": error_kind(&e), "message": e.to_string() }),
        )
    });
    Report {
        schema_version: SCHEMA_VERSION,
        command: command.name().to_string(),
        config: Some(config.name.clone()),
        config_hash: Some(config.hash.clone()),
        status,
        payload,
    }
}

fn error_kind(e: &FusionError) -> &'static str {
    match e {
        FusionError::BallTooSmall { .. } => "ball_too_small",
        FusionError::Inconsistent(_) | FusionError::NotApplicable(_) => "inconsistent",
        FusionError::Comodule(ComoduleError::UnknownSimple(_)) => "unknown_simple",
        FusionError::Comodule(_) => "comodule",
    }
}

type Outcome = Result<(Status, Value), FusionError>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn verify(ctx: &Ctx) -> (Status, Value) {
    let h = &ctx.config.hopf;
    let mp = h.matched_pair().verify(ctx.radius);
    let coc = h.cocycles().verify(h.matched_pair(), ctx.radius);
    let hopf = h.verify(ctx.radius);
    let status = section_status(&[&mp, &coc, &hopf]);
    (
        status,
        json!({
            "radius": ctx.radius,
            "level": ctx.config.level,
            "sections": [to_value(&mp), to_value(&coc), to_value(&hopf)],
        }),
    )
}

fn simples(ctx: &Ctx) -> Outcome {
    let session = ctx.ring.session();
    let simples = session.enumerate_simples(ctx.radius)?;
    let audit = dimension_audit(session, ctx.radius)?;
    let blocks = direct_sum_check(session, ctx.radius);
    let list: Vec<Value> = simples
        .iter()
        .map(|d| {
            json!({
                "id": d.id.to_string(),
                "orbit_rep": d.id.f,
                "orbit_size": d.orbit_size(),
                "dim_v": d.dim_v,
                "dim": d.dim_total,
                "stabilizer_character": d.chi,
            })
        })
        .collect();
    let ok = audit.iter().all(|r| r.passed) && blocks.passed();
    Ok((
        if ok { Status::Pass } else { Status::Fail },
        json!({
            "radius": ctx.radius,
            "scope": format!("orbits meeting the ball of radius {}", ctx.radius),
            "simples": list,
            "dimension_audit": audit,
            "direct_sum": blocks,
        }),
    ))
}

fn character(ctx: &Ctx, id: &SimpleId) -> Outcome {
    let session = ctx.ring.session();
    let d = session.simple(id)?;
    let chi = session.irreducible_character(&d);
    Ok((
        Status::Pass,
        json!({
            "id": id.to_string(),
            "dim": d.dim_total,
            "character": &*chi,
        }),
    ))
}

fn fuse(ctx: &Ctx, a: &SimpleId, b: &SimpleId) -> Outcome {
    let row = ctx.ring.decompose(a, b)?;
    let da = ctx.ring.session().simple(a)?.dim_total as u64;
    let db = ctx.ring.session().simple(b)?.dim_total as u64;
    let ok = row.total_dim() == da * db;
    let mut payload = json!({
        "left": a.to_string(),
        "right": b.to_string(),
        "summands": row.summands.iter().map(|s| json!({
            "id": s.id.to_string(),
            "multiplicity": s.multiplicity,
            "dim": s.dim,
        })).collect::<Vec<_>>(),
        "dimension_check": { "product": da * db, "sum": row.total_dim() },
    });
    if ctx.ring.is_abelian_smash() {
        let shortcut = ctx.ring.smash_shortcut(a, b);
        payload["closed_form_agrees"] = match &shortcut {
            Ok(s) => json!(s.summands == row.summands),
            Err(_) => Value::Null,
        };
        if matches!(&shortcut, Ok(s) if s.summands != row.summands) {
            return Ok((Status::Inconsistent, payload));
        }
    }
    Ok((
        if ok {
            Status::Pass
        } else {
            Status::Inconsistent
        },
        payload,
    ))
}

fn dual(ctx: &Ctx, id: &SimpleId) -> Outcome {
    let d = ctx.ring.dual_of(id)?;
    let back = ctx.ring.dual_of(&d)?;
    let criterion = ctx.ring.smash_self_dual_criterion(id)?;
    let self_dual = d == *id;
    let consistent = back == *id && criterion.is_none_or(|c| c == self_dual);
    Ok((
        if consistent {
            Status::Pass
        } else {
            Status::Inconsistent
        },
        json!({
            "id": id.to_string(),
            "dual": d.to_string(),
            "self_dual": self_dual,
            "smash_criterion": criterion,
        }),
    ))
}

fn indicators(ctx: &Ctx) -> Outcome {
    let simples = ctx.ring.session().enumerate_simples(ctx.radius)?;
    let mut rows = Vec::with_capacity(simples.len());
    let mut status = Status::Pass;
    for d in &simples {
        let nu = ctx.ring.fs_indicator(&d.id)?;
        let dual = ctx.ring.dual_of(&d.id)?;
        let self_dual = dual == d.id;
        if (nu != 0) != self_dual || !(-1..=1).contains(&nu) {
            status = Status::Inconsistent;
        }
        rows.push(json!({
            "id": d.id.to_string(),
            "dim": d.dim_total,
            "dual": dual.to_string(),
            "self_dual": self_dual,
            "indicator": nu,
        }));
    }
    Ok((status, json!({ "radius": ctx.radius, "simples": rows })))
}

fn fusion_table(ctx: &Ctx) -> Outcome {
    let table = ctx.ring.fusion_table(ctx.radius)?;
    let based = ctx.ring.verify_based_ring(&table);
    let simples: Vec<Value> = table
        .simples
        .iter()
        .map(|s| {
            json!({
                "id": s.id.to_string(),
                "dim": s.dim,
                "orbit_size": s.orbit_size,
                "dual": s.dual.to_string(),
                "indicator": s.indicator,
            })
        })
        .collect();
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "left": r.left.to_string(),
                "right": r.right.to_string(),
                "summands": r.summands.iter().map(|s| json!([s.id.to_string(), s.multiplicity])).collect::<Vec<_>>(),
            })
        })
        .collect();
    let asym: Vec<Value> = table
        .asymmetric_pairs
        .iter()
        .map(|(a, b)| json!([a.to_string(), b.to_string()]))
        .collect();
    Ok((
        section_status(&[&based]),
        json!({
            "radius": table.radius,
            "simples": simples,
            "rows": rows,
            "asymmetric_pairs": asym,
            "based_ring": based,
        }),
    ))
}

fn cqg_check(ctx: &Ctx) -> (Status, Value) {
    let h = &ctx.config.hopf;
    let (unitary, w) = h.cocycles().is_unitary();
    if !unitary {
        return (
            Status::Fail,
            json!({ "radius": ctx.radius, "unitary": false, "witness": w }),
        );
    }
    match h.verify_star(ctx.radius) {
        Ok(section) => (
            section_status(&[&section]),
            json!({ "radius": ctx.radius, "unitary": true, "section": section }),
        ),
        Err(e) => (
            Status::Fail,
            json!({ "radius": ctx.radius, "unitary": true, "error": e.to_string() }),
        ),
    }
}
