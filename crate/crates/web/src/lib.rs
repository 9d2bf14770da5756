//! Browser bindings. Each export takes a preset name (`h_z_z2n:2`) or TOML
//! text and returns the same JSON report the command line prints.

use bicrossed::config::{self, Config, ConfigError};
use bicrossed::report::{self, Command, Report};
use wasm_bindgen::prelude::*;

fn load(source: &str) -> Result<Config, ConfigError> {
    if source.contains('\n') || source.contains('=') {
        config::parse_config(source)
    } else {
        config::load_preset(source)
    }
}

fn run_with(
    source: &str,
    name: &str,
    radius: u32,
    make: impl FnOnce(&Config) -> Result<Command, String>,
) -> String {
    let report = match load(source) {
        Err(e) => Report::invalid_config(name, &e),
        Ok(cfg) => match make(&cfg) {
            Ok(cmd) => report::run(&cmd, &cfg, Some(radius)),
            Err(message) => Report::invalid_config(
                name,
                &ConfigError::Semantic {
                    field: "arguments".into(),
                    message,
                },
            ),
        },
    };
    report.to_json()
}

/// Simple comodules over the ball, with the dimension audit.
#[wasm_bindgen]
pub fn simples(source: &str, radius: u32) -> String {
    run_with(source, "simples", radius, |_| Ok(Command::Simples))
}

/// Full fusion table over the ball.
#[wasm_bindgen]
pub fn fusion_table(source: &str, radius: u32) -> String {
    run_with(source, "fusion-table", radius, |_| Ok(Command::FusionTable))
}

/// Decomposition of the product of two simples given as `f,i`.
#[wasm_bindgen]
pub fn fuse(source: &str, left: &str, right: &str) -> String {
    run_with(source, "fuse", 0, |cfg| {
        Ok(Command::Fuse(
            report::parse_simple_id(cfg, left)?,
            report::parse_simple_id(cfg, right)?,
        ))
    })
}

#[wasm_bindgen]
pub fn presets() -> String {
    config::preset_names().collect::<Vec<_>>().join(",")
}
