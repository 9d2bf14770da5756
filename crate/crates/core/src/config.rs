//! Declarative configuration: TOML files and the bundled presets.
//!
//! A preset is named `stem` or `stem:arg`; the argument binds the preset's
//! single parameter. Templates reference parameters as `${name}` or
//! `${k*name}`. A config may start from a preset with `extends = "..."`, and
//! its own top-level tables replace the preset's.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cocycles::{CocycleKind, Cocycles, Sigma, Tau};
use crate::comodules::Session;
use crate::cyclotomic::{parse_literal, CycNum};
use crate::groups::{FElem, FGroup, FiniteGroup, DEFAULT_MAX_ORDER};
use crate::hopf::Bicrossed;
use crate::matched_pair::{cyclic_shift_matrix, negation_matrix, MatchedPair};

pub const PRESETS: &[(&str, &str)] = &[
    ("h_z_z2", include_str!("../../../presets/h_z_z2.toml")),
    ("h_z_z2n", include_str!("../../../presets/h_z_z2n.toml")),
    ("z_poly_zp", include_str!("../../../presets/z_poly_zp.toml")),
    ("drinfeld", include_str!("../../../presets/drinfeld.toml")),
    (
        "twisted_klein",
        include_str!("../../../presets/twisted_klein.toml"),
    ),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Semantic { field: String, message: String },
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
}

fn semantic(field: impl Into<String>, message: impl ToString) -> ConfigError {
    ConfigError::Semantic {
        field: field.into(),
        message: message.to_string(),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: Option<String>,
    radius: Option<u32>,
    level: Option<i64>,
    #[serde(default)]
    params: BTreeMap<String, toml::Value>,
    group: GroupSpec,
    f: FSpec,
    action: ActionSpec,
    sigma: Option<CocycleSpec>,
    tau: Option<CocycleSpec>,
    #[serde(default)]
    user_tables: Vec<UserTableSpec>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum GroupSpec {
    Named { name: String },
    Cyclic { order: usize },
    Permutations { generators: Vec<Vec<usize>> },
    Table { rows: Vec<Vec<usize>> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum FSpec {
    FreeAbelian { rank: i64 },
    SameAsG,
    Named { name: String },
    Cyclic { order: usize },
    Permutations { generators: Vec<Vec<usize>> },
    Table { rows: Vec<Vec<usize>> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ActionSpec {
    Trivial,
    Conjugation,
    /// `right[g][f] = g ▷ f`, `left[g][f] = g ⊲ f`.
    Tables {
        right: Vec<Vec<usize>>,
        left: Vec<Vec<usize>>,
    },
    Linear {
        generators: Vec<LinearGen>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LinearGen {
    g: usize,
    matrix: MatrixSpec,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixSpec {
    Builtin(String),
    Rows(Vec<Vec<i64>>),
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum CocycleSpec {
    Trivial,
    Table {
        entries: Vec<EntrySpec>,
    },
    Quotient {
        modulus: Vec<i64>,
        #[serde(default)]
        entries: Vec<EntrySpec>,
    },
}

/// A `σ` entry uses `g, f, f2`; a `τ` entry uses `g, h, f`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntrySpec {
    g: usize,
    h: Option<usize>,
    f: toml::Value,
    f2: Option<toml::Value>,
    value: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UserTableSpec {
    f: toml::Value,
    rows: Vec<UserRow>,
}

/// One character: `values` maps stabilizer element indices to literals.
#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct UserRow {
    pub dim: usize,
    pub values: BTreeMap<String, String>,
}

/// A validated configuration.
pub struct Config {
    pub name: String,
    /// SHA-256 of the resolved configuration.
    pub hash: String,
    pub radius: u32,
    /// Cyclotomic level covering every configured value and `exp(G)`.
    pub level: u32,
    pub hopf: Arc<Bicrossed>,
    user_tables: Vec<(FElem, Vec<Vec<CycNum>>)>,
}

impl std::fmt::Debug for Config {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Config")
            .field("name", &self.name)
            .field("hash", &self.hash)
            .field("radius", &self.radius)
            .field("level", &self.level)
            .finish_non_exhaustive()
    }
}

impl Config {
    /// A fresh session carrying any user-supplied character tables.
    pub fn session(&self) -> Session {
        self.user_tables
            .iter()
            .fold(Session::new(Arc::clone(&self.hopf)), |s, (f, rows)| {
                s.with_user_table(f.clone(), rows.clone())
            })
    }
}

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_table(text: &str) -> Result<toml::Table, ConfigError> {
    text.parse::<toml::Table>().map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| position(text, s.start));
        ConfigError::Syntax {
            line,
            column,
            message: e.message().to_string(),
        }
    })
}

/// Evaluates `name` or `k*name` (or a plain integer) against the parameters.
fn eval_param(expr: &str, params: &BTreeMap<String, toml::Value>) -> Result<String, ConfigError> {
    let mut factor: i64 = 1;
    let mut named: Option<&toml::Value> = None;
    for part in expr.split('*').map(str::trim) {
        if let Ok(k) = part.parse::<i64>() {
            factor *= k;
        } else {
            let v = params
                .get(part)
                .ok_or_else(|| semantic("params", format!("unknown parameter '{part}'")))?;
            named = Some(v);
        }
    }
    match named {
        Some(toml::Value::Integer(n)) => Ok((factor * n).to_string()),
        Some(toml::Value::String(s)) if factor == 1 => Ok(s.clone()),
        Some(other) => Err(semantic(
            "params",
            format!("cannot evaluate '{expr}' with value {other}"),
        )),
        None => Ok(factor.to_string()),
    }
}

fn substitute(
    template: &str,
    params: &BTreeMap<String, toml::Value>,
) -> Result<String, ConfigError> {
    let mut out = String::with_capacity(template.len());
    let mut rest = template;
    while let Some(start) = rest.find("${") {
        out.push_str(&rest[..start]);
        let end = rest[start..]
            .find('}')
            .ok_or_else(|| semantic("params", "unterminated '${'"))?;
        out.push_str(&eval_param(&rest[start + 2..start + end], params)?);
        rest = &rest[start + end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// Resolves a preset reference such as `h_z_z2n:3` to TOML text.
pub fn preset_text(reference: &str) -> Result<String, ConfigError> {
    let (stem, arg) = match reference.split_once(':') {
        Some((s, a)) => (s.trim(), Some(a.trim())),
        None => (reference.trim(), None),
    };
    let template = PRESETS
        .iter()
        .find(|(n, _)| *n == stem)
        .map(|(_, t)| *t)
        .ok_or_else(|| ConfigError::UnknownPreset(reference.to_string()))?;
    // parameters are read from a template with placeholders neutralized
    let neutral = template
        .lines()
        .filter(|l| !l.contains("${"))
        .collect::<Vec<_>>()
        .join("\n");
    let mut params: BTreeMap<String, toml::Value> = parse_table(&neutral)?
        .get("params")
        .and_then(|p| p.as_table())
        .map(|t| t.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
        .unwrap_or_default();
    if let Some(arg) = arg {
        let (key, default) = match params.iter().next() {
            Some((k, v)) if params.len() == 1 => (k.clone(), v.clone()),
            _ => return Err(semantic("preset", format!("'{stem}' takes no argument"))),
        };
        let value = match default {
            toml::Value::Integer(_) => {
                let n: i64 = arg.parse().ok().filter(|n| *n >= 1).ok_or_else(|| {
                    semantic(
                        format!("params.{key}"),
                        format!("'{arg}' is not a positive integer"),
                    )
                })?;
                toml::Value::Integer(n)
            }
            _ => toml::Value::String(arg.to_string()),
        };
        params.insert(key, value);
    }
    substitute(template, &params)
}

/// Parses a configuration file's text (which may extend a preset).
/// User tables given by `file` are resolved against the working directory.
pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    parse_config_in(text, Path::new("."))
}

/// Reads and parses a configuration file; `file` references in
/// `[[user_tables]]` are resolved against its directory.
pub fn parse_config_file(path: &Path) -> Result<Config, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| semantic("config", format!("{}: {e}", path.display())))?;
    parse_config_in(&text, path.parent().unwrap_or(Path::new(".")))
}

fn parse_config_in(text: &str, base: &Path) -> Result<Config, ConfigError> {
    let mut table = parse_table(text)?;
    inline_user_table_files(&mut table, base)?;
    if let Some(base) = table.remove("extends") {
        let base = base
            .as_str()
            .ok_or_else(|| semantic("extends", "expected a preset name"))?;
        let mut merged = parse_table(&preset_text(base)?)?;
        for (k, v) in table {
            merged.insert(k, v);
        }
        table = merged;
    }
    build(table)
}

/// Replaces `file = "rows.json"` in each user table by the rows it holds,
/// so the configuration hash covers the table contents.
fn inline_user_table_files(table: &mut toml::Table, base: &Path) -> Result<(), ConfigError> {
    let Some(toml::Value::Array(tables)) = table.get_mut("user_tables") else {
        return Ok(());
    };
    for t in tables.iter_mut().filter_map(toml::Value::as_table_mut) {
        let Some(file) = t.remove("file") else {
            continue;
        };
        let file = file
            .as_str()
            .ok_or_else(|| semantic("user_tables.file", "expected a path"))?;
        let path = base.join(file);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| semantic("user_tables.file", format!("{}: {e}", path.display())))?;
        let rows: Vec<UserRow> = serde_json::from_str(&text)
            .map_err(|e| semantic("user_tables.file", format!("{}: {e}", path.display())))?;
        let rows = toml::Value::try_from(rows).map_err(|e| semantic("user_tables.file", e))?;
        t.insert("rows".into(), rows);
    }
    Ok(())
}

pub fn load_preset(reference: &str) -> Result<Config, ConfigError> {
    build(parse_table(&preset_text(reference)?)?)
}

fn finite_group(spec: &GroupSpec, field: &str) -> Result<FiniteGroup, ConfigError> {
    let g = match spec {
        GroupSpec::Named { name } => FiniteGroup::named(name),
        GroupSpec::Cyclic { order } if *order >= 1 => Ok(FiniteGroup::cyclic(*order)),
        GroupSpec::Cyclic { order } => {
            return Err(semantic(field, format!("order {order} must be positive")))
        }
        GroupSpec::Permutations { generators } => FiniteGroup::from_permutations(generators),
        GroupSpec::Table { rows } => FiniteGroup::from_table(rows),
    }
    .map_err(|e| semantic(field, e))?;
    if g.order() > DEFAULT_MAX_ORDER {
        return Err(semantic(
            field,
            format!("order {} exceeds the bound {DEFAULT_MAX_ORDER}", g.order()),
        ));
    }
    Ok(g)
}

fn value_text(v: &toml::Value) -> String {
    match v {
        toml::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn f_elem(
    f: &FGroup,
    v: &toml::Value,
    field: &str,
    residues: Option<usize>,
) -> Result<FElem, ConfigError> {
    let text = value_text(v);
    match residues {
        Some(r) => FGroup::FreeAbelian(r).parse_elem(&text),
        None => f.parse_elem(&text),
    }
    .map_err(|e| semantic(field, e))
}

fn literal(s: &str, field: &str) -> Result<CycNum, ConfigError> {
    parse_literal(s).map_err(|e| semantic(field, e))
}

fn build(table: toml::Table) -> Result<Config, ConfigError> {
    let canonical = toml::to_string(&table).map_err(|e| semantic("config", e))?;
    let hash = hex::encode(Sha256::digest(canonical.as_bytes()));
    let raw: RawConfig = table
        .try_into()
        .map_err(|e: toml::de::Error| semantic("config", e.message()))?;
    let _ = &raw.params;

    let g = finite_group(&raw.group, "group")?;
    let f = match &raw.f {
        FSpec::FreeAbelian { rank } if *rank >= 1 => FGroup::FreeAbelian(*rank as usize),
        FSpec::FreeAbelian { rank } => {
            return Err(semantic("f.rank", format!("rank {rank} must be positive")))
        }
        FSpec::SameAsG => FGroup::finite(g.clone()),
        FSpec::Named { name } => {
            FGroup::finite(finite_group(&GroupSpec::Named { name: name.clone() }, "f")?)
        }
        FSpec::Cyclic { order } => {
            FGroup::finite(finite_group(&GroupSpec::Cyclic { order: *order }, "f")?)
        }
        FSpec::Permutations { generators } => FGroup::finite(finite_group(
            &GroupSpec::Permutations {
                generators: generators.clone(),
            },
            "f",
        )?),
        FSpec::Table { rows } => {
            FGroup::finite(finite_group(&GroupSpec::Table { rows: rows.clone() }, "f")?)
        }
    };

    let mp = match (&raw.action, &f) {
        (ActionSpec::Trivial, _) => MatchedPair::trivial(g.clone(), f.clone()),
        (ActionSpec::Conjugation, FGroup::Finite(fg)) if **fg == g => {
            MatchedPair::conjugation(g.clone())
        }
        (ActionSpec::Conjugation, _) => {
            return Err(semantic(
                "action",
                "conjugation needs f.kind = \"same_as_g\"",
            ))
        }
        (ActionSpec::Tables { right, left }, FGroup::Finite(fg)) => {
            let mp = MatchedPair::from_tables(g.clone(), (**fg).clone(), right, left)
                .map_err(|e| semantic("action", e))?;
            let section = mp.verify(0);
            if let Some(c) = section.first_failure() {
                return Err(semantic(
                    "action",
                    format!("not a matched pair: '{}' fails", c.law),
                ));
            }
            mp
        }
        (ActionSpec::Tables { .. }, FGroup::FreeAbelian(_)) => {
            return Err(semantic(
                "action",
                "free abelian F takes a linear action with trivial ⊲; tables need a finite F",
            ))
        }
        (ActionSpec::Linear { generators }, FGroup::FreeAbelian(r)) => {
            let gens = generators
                .iter()
                .map(|lg| {
                    let m = match &lg.matrix {
                        MatrixSpec::Builtin(name) => match name.as_str() {
                            "negation" => negation_matrix(*r),
                            "cyclic_shift" => cyclic_shift_matrix(*r),
                            other => {
                                return Err(semantic(
                                    "action.generators",
                                    format!("unknown matrix '{other}'"),
                                ))
                            }
                        },
                        MatrixSpec::Rows(rows) => {
                            if rows.len() != *r || rows.iter().any(|row| row.len() != *r) {
                                return Err(semantic(
                                    "action.generators",
                                    format!("matrix must be {r}×{r}"),
                                ));
                            }
                            rows.concat()
                        }
                    };
                    Ok((lg.g, m))
                })
                .collect::<Result<Vec<_>, _>>()?;
            MatchedPair::linear_from_generators(g.clone(), *r, &gens)
                .map_err(|e| semantic("action.generators", e))?
        }
        (ActionSpec::Linear { .. }, FGroup::Finite(_)) => {
            return Err(semantic("action", "linear actions need a free abelian F"))
        }
    };

    let mut level = u32::try_from(raw.level.unwrap_or(1))
        .ok()
        .filter(|l| *l >= 1)
        .ok_or_else(|| semantic("level", "must be a positive integer"))?;
    let sigma = match &raw.sigma {
        None | Some(CocycleSpec::Trivial) => Sigma::trivial(),
        Some(spec) => {
            let (kind, entries, residues) = cocycle_kind(spec, &f, "sigma")?;
            let parsed = entries
                .iter()
                .map(|e| {
                    let f2 =
                        e.f2.as_ref()
                            .ok_or_else(|| semantic("sigma.entries", "missing f2"))?;
                    Ok((
                        (
                            e.g,
                            f_elem(&f, &e.f, "sigma.entries.f", residues)?,
                            f_elem(&f, f2, "sigma.entries.f2", residues)?,
                        ),
                        literal(&e.value, "sigma.entries.value")?,
                    ))
                })
                .collect::<Result<Vec<_>, ConfigError>>()?;
            Sigma::table(kind, &f, g.order(), parsed).map_err(|e| semantic("sigma", e))?
        }
    };
    let tau = match &raw.tau {
        None | Some(CocycleSpec::Trivial) => Tau::trivial(),
        Some(spec) => {
            let (kind, entries, residues) = cocycle_kind(spec, &f, "tau")?;
            let parsed = entries
                .iter()
                .map(|e| {
                    let h = e.h.ok_or_else(|| semantic("tau.entries", "missing h"))?;
                    Ok((
                        (e.g, h, f_elem(&f, &e.f, "tau.entries.f", residues)?),
                        literal(&e.value, "tau.entries.value")?,
                    ))
                })
                .collect::<Result<Vec<_>, ConfigError>>()?;
            Tau::table(kind, &f, g.order(), parsed).map_err(|e| semantic("tau", e))?
        }
    };
    let coc = Cocycles { sigma, tau };
    level = num_integer::lcm(num_integer::lcm(level, coc.level()), g.exponent() as u32);

    let mut user_tables = Vec::new();
    for ut in &raw.user_tables {
        let rep = f_elem(&f, &ut.f, "user_tables.f", None)?;
        let orbit = mp.orbit_of(&rep);
        let rows = ut
            .rows
            .iter()
            .map(|row| {
                let mut values = Vec::with_capacity(orbit.stabilizer.len());
                for s in &orbit.stabilizer {
                    let v = row.values.get(&s.to_string()).ok_or_else(|| {
                        semantic(
                            "user_tables.values",
                            format!("missing value at element {s}"),
                        )
                    })?;
                    values.push(literal(v, "user_tables.values")?);
                }
                if row.values.len() != orbit.stabilizer.len() {
                    return Err(semantic(
                        "user_tables.values",
                        "values outside the stabilizer",
                    ));
                }
                if values.first().and_then(CycNum::to_integer) != Some(row.dim.into()) {
                    return Err(semantic(
                        "user_tables.dim",
                        "dim differs from the value at the identity",
                    ));
                }
                Ok(values)
            })
            .collect::<Result<Vec<_>, ConfigError>>()?;
        user_tables.push((rep, rows));
    }

    Ok(Config {
        name: raw.name.unwrap_or_else(|| "config".into()),
        hash,
        radius: raw.radius.unwrap_or(2),
        level,
        hopf: Arc::new(Bicrossed::new(Arc::new(mp), coc)),
        user_tables,
    })
}

fn cocycle_kind<'a>(
    spec: &'a CocycleSpec,
    f: &FGroup,
    field: &str,
) -> Result<(CocycleKind, &'a [EntrySpec], Option<usize>), ConfigError> {
    match spec {
        CocycleSpec::Trivial => Ok((CocycleKind::Trivial, &[], None)),
        CocycleSpec::Table { entries } => Ok((CocycleKind::Table, entries, None)),
        CocycleSpec::Quotient { modulus, entries } => {
            if f.rank().is_none() {
                return Err(semantic(
                    field,
                    "quotient tables apply to free abelian F only",
                ));
            }
            Ok((
                CocycleKind::Quotient(modulus.clone()),
                entries,
                Some(modulus.len()),
            ))
        }
    }
}
