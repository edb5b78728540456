//! Run-configuration files: one `key = value` per line, keys named after
//! long flags. The file is spliced into the argument list ahead of the
//! user's own flags, which therefore win.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::CommandFactory;

use crate::args::Cli;

/// Parsed file contents, keys normalized to `kebab-case`.
pub fn parse(text: &str) -> Result<BTreeMap<String, String>> {
    let mut entries = BTreeMap::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!(
                "config line {}: expected `key = value`, got `{line}`",
                index + 1
            );
        };
        let key = key.trim().replace('_', "-");
        if key.is_empty() {
            bail!("config line {}: empty key", index + 1);
        }
        let value = value
            .split(',')
            .map(str::trim)
            .collect::<Vec<_>>()
            .join(",");
        entries.insert(key, value);
    }
    Ok(entries)
}

fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut iter = argv.iter();
    while let Some(arg) = iter.next() {
        let text = arg.to_string_lossy();
        if text == "--config" {
            return iter.next().cloned();
        }
        if let Some(path) = text.strip_prefix("--config=") {
            return Some(path.into());
        }
    }
    None
}

/// `argv` with the config file's settings inserted after the subcommand.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let entries = parse(&text)?;

    let root = Cli::command();
    let names: Vec<String> = root
        .get_subcommands()
        .map(|c| c.get_name().to_owned())
        .collect();
    let mut argv = argv;
    let position = match argv
        .iter()
        .skip(1)
        .position(|a| names.iter().any(|n| a == n.as_str()))
    {
        Some(i) => i + 1,
        None => {
            let Some(command) = entries.get("command") else {
                return Ok(argv);
            };
            if !names.contains(command) {
                bail!("config: unknown command `{command}`");
            }
            argv.insert(1.min(argv.len()), command.into());
            1
        }
    };
    let command = argv[position].to_string_lossy().into_owned();
    let sub = root.find_subcommand(&command).expect("known subcommand");

    let mut spliced = Vec::new();
    for (key, value) in &entries {
        if key == "command" || key == "config" {
            continue;
        }
        let arg = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()));
        let Some(arg) = arg else {
            let elsewhere = root.get_subcommands().any(|c| {
                c.get_arguments()
                    .any(|a| a.get_long() == Some(key.as_str()))
            });
            if elsewhere {
                continue;
            }
            bail!("config: unknown key `{key}`");
        };
        if arg.get_action().takes_values() {
            spliced.push(OsString::from(format!("--{key}")));
            spliced.push(OsString::from(value));
        } else {
            match value.as_str() {
                "true" | "yes" | "1" => spliced.push(OsString::from(format!("--{key}"))),
                "false" | "no" | "0" => {}
                other => bail!("config: `{key}` expects true or false, got `{other}`"),
            }
        }
    }
    let tail = argv.split_off(position + 1);
    argv.extend(spliced);
    argv.extend(tail);
    Ok(argv)
}
