use std::path::Path;

use serde::Deserialize;

/// Per-run size limits. Absent fields keep each subcommand's default.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    pub basis: Option<u128>,
    pub group: Option<u128>,
    pub gram: Option<u128>,
    pub table: Option<u128>,
    pub tset: Option<usize>,
}

/// A run described in a TOML file. Mirrors the command-line flags.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub m: Option<u32>,
    pub n: Option<usize>,
    #[serde(rename = "char")]
    pub characteristic: Option<u64>,
    /// One entry per loop class; power-basis coordinates separated by commas.
    pub delta: Option<Vec<String>>,
    pub variant: Option<String>,
    pub mu: Option<String>,
    pub a: Option<usize>,
    pub grid: Option<String>,
    pub out: Option<String>,
    pub csv: Option<String>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    #[serde(default)]
    pub caps: Caps,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// The equivalent argument vector. Flags a subcommand does not accept
    /// are rejected by the parser, same as on the command line.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec!["cbrauer".to_string(), self.command.clone()];
        let mut push = |flag: &str, v: Option<String>| {
            if let Some(v) = v {
                args.push(format!("--{flag}"));
                args.push(v);
            }
        };
        push("m", self.m.map(|v| v.to_string()));
        push("n", self.n.map(|v| v.to_string()));
        push("char", self.characteristic.map(|v| v.to_string()));
        push("delta", self.delta.as_ref().map(|d| d.iter().map(|x| x.replace(',', ":")).collect::<Vec<_>>().join(",")));
        push("variant", self.variant.clone());
        push("mu", self.mu.clone());
        push("a", self.a.map(|v| v.to_string()));
        push("grid", self.grid.clone());
        push("out", self.out.clone());
        push("csv", self.csv.clone());
        push("seed", self.seed.map(|v| v.to_string()));
        push("jobs", self.jobs.map(|v| v.to_string()));
        let cap = match self.command.as_str() {
            "dim" => self.caps.basis,
            "group" => self.caps.group,
            "gram" | "cell-gram" => self.caps.gram,
            "oracle" | "concord" => self.caps.table,
            "tset" => self.caps.tset.map(|c| c as u128),
            _ => None,
        };
        push("cap", cap.map(|v| v.to_string()));
        args
    }
}
