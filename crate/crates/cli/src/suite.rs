//! Golden files: each starts with `$ hecke ARGS` followed by the exact output.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use clap::Parser;
use hecke_core::algebra::{Engine, RelationTweak};

use crate::{execute, Cli, Outcome, Session};

pub const GOLDENS: [(&str, &str); 13] = [
    ("klr_distant", include_str!("../goldens/v1/klr_distant.txt")),
    ("naive_distant", include_str!("../goldens/v1/naive_distant.txt")),
    ("conv_distant", include_str!("../goldens/v1/conv_distant.txt")),
    ("rmatrix_distant", include_str!("../goldens/v1/rmatrix_distant.txt")),
    ("conv_arrows", include_str!("../goldens/v1/conv_arrows.txt")),
    ("rmatrix_arrows", include_str!("../goldens/v1/rmatrix_arrows.txt")),
    ("renormalized_arrows", include_str!("../goldens/v1/renormalized_arrows.txt")),
    ("rmatrix_adjacent", include_str!("../goldens/v1/rmatrix_adjacent.txt")),
    ("analyze_adjacent", include_str!("../goldens/v1/analyze_adjacent.txt")),
    ("rmatrix_square", include_str!("../goldens/v1/rmatrix_square.txt")),
    ("analyze_point", include_str!("../goldens/v1/analyze_point.txt")),
    ("analyze_mutation", include_str!("../goldens/v1/analyze_mutation.txt")),
    ("ybe_spectral", include_str!("../goldens/v1/ybe_spectral.txt")),
];

/// Splits a golden into its argument list and expected output.
pub fn split_golden(text: &str) -> Result<(Vec<String>, &str)> {
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let cmd = first.strip_prefix("$ hecke ").ok_or_else(|| anyhow!("golden does not start with `$ hecke `"))?;
    Ok((cmd.split_whitespace().map(String::from).collect(), rest))
}

fn replay(engine: Engine, args: &[String], cyclic: Option<u32>) -> String {
    let res = Cli::try_parse_from(std::iter::once("hecke".to_string()).chain(args.iter().cloned()))
        .map_err(|e| anyhow!("{e}"))
        .and_then(|cli| {
            let s = Session::new(engine, None, cyclic.or(cli.cyclic_order))?;
            execute(&s, &cli.command)
        });
    match res {
        Ok(t) => t,
        Err(e) => format!("error: {e:#}\n"),
    }
}

fn first_difference(want: &str, got: &str) -> String {
    let (w, g): (Vec<&str>, Vec<&str>) = (want.lines().collect(), got.lines().collect());
    let k = w.iter().zip(&g).position(|(a, b)| a != b).unwrap_or(w.len().min(g.len()));
    format!(
        "    line {}:\n      expected: {}\n      got:      {}",
        k + 1,
        w.get(k).copied().unwrap_or("<end of output>"),
        g.get(k).copied().unwrap_or("<end of output>")
    )
}

/// Replays every golden. With `cyclic = Some(r)` the orbit is changed, and
/// differences are listed for information without failing the run.
pub fn paper_suite(cyclic: Option<u32>, tweak: Option<RelationTweak>, update: Option<&Path>) -> Result<Outcome> {
    let informational = cyclic.is_some_and(|r| r != 0);
    let mut out = String::new();
    let mut failures = 0;
    if let Some(dir) = update {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for (name, text) in GOLDENS {
        let (args, want) = split_golden(text).with_context(|| format!("golden {name}"))?;
        let engine = tweak.map_or_else(Engine::new, Engine::with_tweak);
        let got = replay(engine, &args, cyclic);
        if let Some(dir) = update {
            let path = dir.join(format!("{name}.txt"));
            std::fs::write(&path, format!("$ hecke {}\n{got}", args.join(" "))).with_context(|| format!("writing {}", path.display()))?;
            let _ = writeln!(out, "wrote {}", path.display());
            continue;
        }
        if got == want {
            let _ = writeln!(out, "PASS {name}");
        } else if informational {
            let _ = writeln!(out, "DIFF {name} (cyclic_order {}; informational)", cyclic.unwrap_or(0));
            let _ = writeln!(out, "{}", first_difference(want, &got));
        } else {
            failures += 1;
            let _ = writeln!(out, "FAIL {name}: hecke {}", args.join(" "));
            let _ = writeln!(out, "{}", first_difference(want, &got));
        }
    }
    if update.is_none() {
        let _ = writeln!(out, "{} of {} golden comparisons pass", GOLDENS.len() - failures, GOLDENS.len());
    }
    Ok(Outcome { text: out, ok: failures == 0 })
}
