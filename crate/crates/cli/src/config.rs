//! JSON run configs.
//!
//! ```json
//! {
//!   "subcommand": "plan",
//!   "parameters": {"b": "0.2mm", "s": "1.0mm", "lambda": "100nm"},
//!   "output_path": "plan.txt",
//!   "output_format": "text"
//! }
//! ```
//!
//! Parameters map onto the subcommand's flags (`flux_quanta` → `--flux-quanta`)
//! and go through the same parser, so the same units and checks apply.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Parser;
use serde::Deserialize;
use serde_json::Value;

use crate::args::Cli;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    pub output_path: Option<PathBuf>,
    pub output_format: Option<String>,
}

const SUBCOMMANDS: [&str; 6] = ["pattern", "combine", "reeh", "schmudgen", "sector", "plan"];

impl RunConfig {
    pub fn to_args(&self) -> Result<Vec<String>, String> {
        if !SUBCOMMANDS.contains(&self.subcommand.as_str()) {
            return Err(format!(
                "unknown subcommand `{}`; expected one of {}",
                self.subcommand,
                SUBCOMMANDS.join(", ")
            ));
        }
        let mut args = vec!["supersep".to_string(), self.subcommand.clone()];
        for (key, value) in &self.parameters {
            let flag = format!("--{}", key.replace('_', "-"));
            match value {
                Value::Bool(true) => args.push(flag),
                Value::Bool(false) => {}
                Value::String(s) => args.push(format!("{flag}={s}")),
                Value::Number(n) => args.push(format!("{flag}={n}")),
                Value::Array(items) => {
                    let parts: Result<Vec<String>, String> = items
                        .iter()
                        .map(|v| match v {
                            Value::String(s) => Ok(s.clone()),
                            Value::Number(n) => Ok(n.to_string()),
                            _ => Err(format!("parameter `{key}` must hold scalars")),
                        })
                        .collect();
                    args.push(format!("{flag}={}", parts?.join(",")));
                }
                Value::Null | Value::Object(_) => {
                    return Err(format!("parameter `{key}` must be a scalar or a list"))
                }
            }
        }
        if let Some(p) = &self.output_path {
            args.push("--output".into());
            args.push(p.display().to_string());
        }
        if let Some(f) = &self.output_format {
            args.push(format!("--format={f}"));
        }
        Ok(args)
    }

    pub fn to_cli(&self) -> Result<Cli, String> {
        Cli::try_parse_from(self.to_args()?).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(json: &str) -> RunConfig {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn parameters_become_flags() {
        let c = config(
            r#"{"subcommand": "reeh", "parameters": {"flux_quanta": 1, "probe": [1, -1, -2, 2]},
                "output_format": "json"}"#,
        );
        assert_eq!(
            c.to_args().unwrap(),
            [
                "supersep",
                "reeh",
                "--flux-quanta=1",
                "--probe=1,-1,-2,2",
                "--format=json"
            ]
        );
        assert!(c.to_cli().is_ok());
    }

    #[test]
    fn invalid_configs() {
        assert!(config(r#"{"subcommand": "draw"}"#).to_args().is_err());
        assert!(
            config(r#"{"subcommand": "plan", "parameters": {"b": null}}"#)
                .to_args()
                .is_err()
        );
        // bare numbers for lengths are still refused by the parser
        let c = config(
            r#"{"subcommand": "plan", "parameters": {"b": 0.0002, "s": "1mm", "lambda": "100nm"}}"#,
        );
        assert!(c.to_cli().is_err());
        assert!(
            serde_json::from_str::<RunConfig>(r#"{"subcommand": "plan", "colour": 1}"#).is_err()
        );
    }
}
