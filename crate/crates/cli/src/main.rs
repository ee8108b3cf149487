//! Command-line surface: cycle listings, bad sets, classification,
//! word/plateau reports, staircase sampling, raster rendering, and the
//! verification suites.
//!
//! Exit codes: 0 on success, 1 on usage or domain errors, 2 when a
//! verification suite reports failures.

mod suites;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use doubling_hole::cycles::{
    bad_set_capped, enumerate_cycles_capped, first_avoiding_cycle_capped, CycleRecord, Hole,
    DEFAULT_CYCLE_CAP,
};
use doubling_hole::exact::{parse_rational, Rational};
use doubling_hole::regions::{
    classification_record, d2_classify, d3_classify, kappa, phi, plateau_find, plateau_for,
    RegionClass,
};
use doubling_hole::words::RotationNumber;

const ENV_MAX_N: &str = "DOUBLING_HOLE_MAX_N";

#[derive(Parser)]
#[command(
    name = "doubling-hole",
    version,
    about = "Exact toolkit for cycles of the doubling map that avoid an interval hole"
)]
struct Cli {
    /// TOML config file; recognises the same keys as the global flags
    /// (currently `max_n`).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Cap on enumerated cycle lengths (also env DOUBLING_HOLE_MAX_N).
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all prime n-cycles, optionally flagged against a hole.
    Cycles {
        #[arg(long)]
        n: usize,
        /// Hole `a,b` with rational endpoints, e.g. `2/7,3/7`.
        #[arg(long)]
        hole: Option<String>,
        /// Emit one JSON array instead of aligned text.
        #[arg(long)]
        json: bool,
    },
    /// Bad cycle lengths for the hole (a, b), with witnesses for the rest.
    Badset {
        a: String,
        b: String,
        #[arg(long, default_value_t = 14)]
        nmax: usize,
        /// Emit a single CSV record: a,b,nmax,"bad lengths".
        #[arg(long)]
        csv: bool,
    },
    /// Classify the hole (a, b) against both regions.
    Classify {
        a: String,
        b: String,
        /// Length bound for the reported bad set.
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        #[arg(long)]
        json: bool,
    },
    /// The extremal word pair and plateau values of a rotation number.
    Word { r: String },
    /// Sample the staircase functions over a range of left endpoints (CSV).
    Staircase {
        /// Range `lo:hi` inside [1/4, 1/2].
        #[arg(long, value_name = "LO:HI")]
        range: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Render the regions over a rectangle as an ASCII (P2) PGM image.
    Raster {
        #[arg(long, value_name = "LO:HI")]
        x: String,
        #[arg(long, value_name = "LO:HI")]
        y: String,
        /// Pixel dimensions, e.g. `200x200`.
        #[arg(long, value_name = "WxH")]
        px: String,
        /// `d3,d2` (three classes), `d3`, `d2`, or `bruteforce`.
        #[arg(long, default_value = "d3,d2")]
        layers: String,
        /// Length bound for the bruteforce layer.
        #[arg(long, default_value_t = 12)]
        brute_nmax: usize,
        /// Write to a file instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run a named verification suite; `all` runs every suite.
    Verify { suite: String },
}

#[derive(Deserialize, Default)]
struct FileConfig {
    max_n: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn resolve_cap(cli: &Cli) -> Result<usize, String> {
    if let Some(n) = cli.max_n {
        return Ok(n);
    }
    if let Ok(text) = std::env::var(ENV_MAX_N) {
        return text
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid {ENV_MAX_N} value `{text}`"));
    }
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let config: FileConfig =
            toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if let Some(n) = config.max_n {
            return Ok(n);
        }
    }
    Ok(DEFAULT_CYCLE_CAP)
}

fn parse_point(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn parse_hole(text: &str) -> Result<Hole, String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got `{text}`"))?;
    Hole::new(parse_point(a)?, parse_point(b)?).map_err(|e| e.to_string())
}

fn parse_range(text: &str) -> Result<(Rational, Rational), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("expected `lo:hi`, got `{text}`"))?;
    let (lo, hi) = (parse_point(lo)?, parse_point(hi)?);
    if lo >= hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn run(cli: Cli) -> Result<u8, String> {
    let cap = resolve_cap(&cli)?;
    match &cli.command {
        Command::Cycles { n, hole, json } => {
            cmd_cycles(*n, hole.as_deref(), *json, cap)?;
            Ok(0)
        }
        Command::Badset { a, b, nmax, csv } => {
            cmd_badset(a, b, *nmax, *csv, cap)?;
            Ok(0)
        }
        Command::Classify { a, b, nmax, json } => {
            cmd_classify(a, b, *nmax, *json)?;
            Ok(0)
        }
        Command::Word { r } => {
            cmd_word(r)?;
            Ok(0)
        }
        Command::Staircase { range, samples } => {
            cmd_staircase(range, *samples)?;
            Ok(0)
        }
        Command::Raster {
            x,
            y,
            px,
            layers,
            brute_nmax,
            out,
        } => {
            cmd_raster(x, y, px, layers, *brute_nmax, out.as_deref())?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let claims = suites::run_suite(suite, cap)?;
            let mut failed = 0usize;
            for claim in &claims {
                let status = if claim.ok { "PASS" } else { "FAIL" };
                println!("{status} {}: {}", claim.name, claim.detail);
                if !claim.ok {
                    failed += 1;
                }
            }
            println!("{} claims, {} failed", claims.len(), failed);
            Ok(if failed == 0 { 0 } else { 2 })
        }
    }
}

#[derive(Serialize)]
struct CycleRow {
    #[serde(flatten)]
    record: CycleRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    avoids: Option<bool>,
}

fn cmd_cycles(n: usize, hole: Option<&str>, json: bool, cap: usize) -> Result<(), String> {
    let hole = hole.map(parse_hole).transpose()?;
    let cycles = enumerate_cycles_capped(n, cap).map_err(|e| e.to_string())?;
    let rows: Vec<CycleRow> = cycles
        .iter()
        .map(|c| CycleRow {
            record: c.record(),
            avoids: hole.as_ref().map(|h| doubling_hole::cycles::avoids(c, h)),
        })
        .collect();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())?
        );
    } else {
        println!("{} prime {}-cycles", rows.len(), n);
        for row in &rows {
            let mut line = format!(
                "{}  {{{}}}",
                row.record.representative,
                row.record.points.join(", ")
            );
            if let Some(avoiding) = row.avoids {
                let _ = write!(line, "  {}", if avoiding { "avoid" } else { "hit" });
            }
            println!("{line}");
        }
    }
    Ok(())
}

fn cmd_badset(a: &str, b: &str, nmax: usize, csv: bool, cap: usize) -> Result<(), String> {
    let hole = Hole::new(parse_point(a)?, parse_point(b)?).map_err(|e| e.to_string())?;
    let bad = bad_set_capped(&hole, nmax, cap).map_err(|e| e.to_string())?;
    let list: Vec<String> = bad.iter().map(|n| n.to_string()).collect();
    if csv {
        println!(
            "{},{},{},\"{}\"",
            hole.left(),
            hole.right(),
            nmax,
            list.join(",")
        );
        return Ok(());
    }
    println!(
        "bad lengths for ({}, {}) up to {}: {{{}}}",
        hole.left(),
        hole.right(),
        nmax,
        list.join(", ")
    );
    for n in 3..=nmax {
        if !bad.contains(&n) {
            let witness = first_avoiding_cycle_capped(&hole, n, cap)
                .map_err(|e| e.to_string())?
                .expect("length not bad, so a witness exists");
            println!(
                "  n = {:2}: avoiding cycle {}  {{{}}}",
                n,
                witness.representative(),
                witness.record().points.join(", ")
            );
        }
    }
    Ok(())
}

fn cmd_classify(a: &str, b: &str, nmax: usize, json: bool) -> Result<(), String> {
    let a = parse_point(a)?;
    let b = parse_point(b)?;
    let record = classification_record(&a, &b, nmax).map_err(|e| e.to_string())?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&record).map_err(|e| e.to_string())?
        );
        return Ok(());
    }
    println!("hole ({a}, {b})");
    println!("  corner-table region: {}", record.d3);
    println!("  staircase region:    {}", record.d2);
    if let Ok(plateau) = plateau_find(&a) {
        println!(
            "  plateau r = {} over [{}, {}]",
            plateau.rotation_number(),
            plateau.left(),
            plateau.right()
        );
    }
    if let Ok(value) = kappa(&a) {
        println!("  kappa(a) = {value}");
    }
    if let Ok(value) = phi(&a) {
        println!("  phi(a)   = {value}");
    }
    println!("  bad lengths up to {}: {:?}", record.bad_upto, record.bad);
    Ok(())
}

fn cmd_word(r: &str) -> Result<(), String> {
    let r: RotationNumber = r
        .parse()
        .map_err(|e: doubling_hole::WordError| e.to_string())?;
    let plateau = plateau_for(r).map_err(|e| e.to_string())?;
    let pair = plateau.pair();
    let literal = |pre: &doubling_hole::Word, per: &doubling_hole::Word| {
        doubling_hole::EventuallyPeriodicWord::new(pre.clone(), per.clone())
            .expect("nonempty period")
            .to_string()
    };
    let empty = doubling_hole::Word::empty();
    println!("r = {r}");
    println!("  s = {}", pair.s());
    println!("  t = {}", pair.t());
    println!(
        "  value(s^inf)   = {:8}  {}",
        plateau.left().to_string(),
        literal(&empty, pair.s())
    );
    println!(
        "  value(s t^inf) = {:8}  {}",
        plateau.right().to_string(),
        literal(pair.s(), pair.t())
    );
    println!(
        "  value(t s^inf) = {:8}  {}",
        plateau.kappa().to_string(),
        literal(pair.t(), pair.s())
    );
    println!(
        "  value(t^inf)   = {:8}  {}",
        plateau.phi().to_string(),
        literal(&empty, pair.t())
    );
    Ok(())
}

fn cmd_staircase(range: &str, samples: usize) -> Result<(), String> {
    let (lo, hi) = parse_range(range)?;
    if samples == 0 {
        return Err("need at least one sample".into());
    }
    let quarter = Rational::new(1.into(), 4.into());
    let half = Rational::new(1.into(), 2.into());
    if lo < quarter || hi > half {
        return Err(format!(
            "range {lo}:{hi} leaves the staircase domain [1/4, 1/2]"
        ));
    }
    let mut out = String::from("a,kappa,phi\n");
    let span = &hi - &lo;
    for k in 1..=samples {
        let a = &lo + &span * Rational::new((k as i64).into(), (samples as i64 + 1).into());
        let kappa_value = kappa(&a).map_err(|e| e.to_string())?;
        let phi_value = phi(&a).map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{a},{kappa_value},{phi_value}");
    }
    print!("{out}");
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RasterMode {
    Both,
    D3Only,
    D2Only,
    BruteForce,
}

fn cmd_raster(
    x: &str,
    y: &str,
    px: &str,
    layers: &str,
    brute_nmax: usize,
    out: Option<&std::path::Path>,
) -> Result<(), String> {
    let (x_lo, x_hi) = parse_range(x)?;
    let (y_lo, y_hi) = parse_range(y)?;
    let zero = Rational::new(0.into(), 1.into());
    let one = Rational::new(1.into(), 1.into());
    if x_lo <= zero || x_hi >= one || y_lo <= zero || y_hi >= one {
        return Err("raster ranges must lie strictly inside (0, 1)".into());
    }
    let (w, h) = px
        .split_once('x')
        .and_then(|(w, h)| Some((w.parse::<usize>().ok()?, h.parse::<usize>().ok()?)))
        .ok_or_else(|| format!("expected `WxH`, got `{px}`"))?;
    if w < 2 || h < 2 {
        return Err("raster needs at least 2x2 pixels".into());
    }
    let mode = {
        let mut parts: Vec<&str> = layers.split(',').map(str::trim).collect();
        parts.sort_unstable();
        match parts.as_slice() {
            ["d2", "d3"] => RasterMode::Both,
            ["d3"] => RasterMode::D3Only,
            ["d2"] => RasterMode::D2Only,
            ["bruteforce"] => RasterMode::BruteForce,
            _ => return Err(format!("unsupported layer set `{layers}`")),
        }
    };

    // sample at exact cell centres, top row first
    let x_span = &x_hi - &x_lo;
    let y_span = &y_hi - &y_lo;
    let rows: Vec<String> = (0..h)
        .into_par_iter()
        .map(|row| {
            let b =
                &y_hi - &y_span * Rational::new((2 * row as i64 + 1).into(), (2 * h as i64).into());
            let mut line = String::with_capacity(w * 4);
            for col in 0..w {
                let a = &x_lo
                    + &x_span * Rational::new((2 * col as i64 + 1).into(), (2 * w as i64).into());
                let level = pixel_level(&a, &b, mode, brute_nmax);
                if col > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{level}");
            }
            line
        })
        .collect();

    let mut pgm = format!("P2\n{w} {h}\n255\n");
    for line in rows {
        pgm.push_str(&line);
        pgm.push('\n');
    }
    match out {
        Some(path) => fs::write(path, pgm).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{pgm}"),
    }
    Ok(())
}

fn pixel_level(a: &Rational, b: &Rational, mode: RasterMode, brute_nmax: usize) -> u8 {
    let in_d3 = || d3_classify(a, b).is_member();
    // the staircase region is open, so membership means interior
    let in_d2 = || matches!(d2_classify(a, b), Ok(RegionClass::Interior));
    match mode {
        RasterMode::Both => {
            if in_d3() {
                0
            } else if in_d2() {
                128
            } else {
                255
            }
        }
        RasterMode::D3Only => {
            if in_d3() {
                0
            } else {
                255
            }
        }
        RasterMode::D2Only => {
            if in_d2() {
                0
            } else {
                255
            }
        }
        RasterMode::BruteForce => {
            let Ok(hole) = Hole::new(a.clone(), b.clone()) else {
                return 0; // degenerate hole: nothing is ever bad
            };
            let bad = bad_set_capped(&hole, brute_nmax, brute_nmax)
                .expect("brute_nmax within its own cap");
            match bad.iter().next_back() {
                None => 0,
                Some(&max_bad) if max_bad + 3 <= brute_nmax => 128,
                Some(_) => 255,
            }
        }
    }
}
