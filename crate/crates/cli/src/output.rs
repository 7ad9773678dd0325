use std::path::Path;
use std::time::Duration;

use anyhow::Context;
use serde::Serialize;

use crate::{Cli, Outcome};

pub fn write_text(dir: &Path, name: &str, text: &str) -> anyhow::Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(dir, name, &text)
}

#[derive(Serialize)]
struct Versions {
    pgblock: &'static str,
    arch: &'static str,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: String,
    args: Vec<String>,
    config: String,
    versions: Versions,
    seed: u64,
    threads: usize,
    wall_time_ms: u128,
    exit_code: u8,
    outcome: &'a str,
}

pub fn write_manifest(cli: &Cli, outcome: &Outcome, elapsed: Duration) -> anyhow::Result<()> {
    let command = format!("{:?}", cli.command).split([' ', '(', '{']).next().unwrap_or("").to_lowercase();
    let manifest = Manifest {
        command,
        args: std::env::args().skip(1).collect(),
        config: format!("{:?}", cli.command),
        versions: Versions { pgblock: env!("CARGO_PKG_VERSION"), arch: std::env::consts::ARCH },
        seed: cli.seed,
        threads: cli.threads,
        wall_time_ms: elapsed.as_millis(),
        exit_code: outcome.code,
        outcome: &outcome.summary,
    };
    write_json(&cli.out, "manifest.json", &manifest)
}
