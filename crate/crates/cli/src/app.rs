use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use drt_moments::{central_moments, fraction_string, CentralMoments, MomentSet, MAX_DIMENSION, MAX_ORDER};
use drt_moments_bench::{bench_both, build_comment, compute, emit_csv, Method, DEFAULT_REPEATS, DEFAULT_SIZES};
use serde_json::{Map, Value};

use crate::pgm::read_pgm;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "drt-moments", version, about = "Exact raw image moments via discrete Radon projections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the moments of a PGM image.
    Compute {
        path: PathBuf,
        #[arg(long, default_value_t = 4, value_parser = parse_order)]
        order: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Drt)]
        method: MethodArg,
        /// Also print central moments as exact fractions.
        #[arg(long)]
        central: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Time both methods on synthetic images and write CSV.
    Bench {
        /// Comma-separated `WxH` list; defaults to eight sizes from 4032x3024 down to 200x200.
        #[arg(long, value_delimiter = ',', value_parser = parse_size)]
        sizes: Option<Vec<(usize, usize)>>,
        #[arg(long, default_value_t = DEFAULT_REPEATS, value_parser = parse_repeats)]
        repeats: usize,
        #[arg(long, default_value_t = 4, value_parser = parse_order)]
        order: u32,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Drt,
    Naive,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Drt => Method::Drt,
            MethodArg::Naive => Method::Naive,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_order(s: &str) -> Result<u32, String> {
    let order: u32 = s.parse().map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if order > MAX_ORDER {
        return Err(format!("order must be ≤ {MAX_ORDER}"));
    }
    Ok(order)
}

fn parse_repeats(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err("repeats must be a positive integer".into()),
    }
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("invalid size `{s}` (expected WxH with 1 ≤ W, H ≤ {MAX_DIMENSION})");
    let (w, h) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
    let (w, h): (usize, usize) = (w.parse().map_err(|_| bad())?, h.parse().map_err(|_| bad())?);
    if !(1..=MAX_DIMENSION).contains(&w) || !(1..=MAX_DIMENSION).contains(&h) {
        return Err(bad());
    }
    Ok((w, h))
}

/// JSON object with `m{p}{q}` keys (and `mu{p}{q}` when central moments are
/// given). Values are decimal strings, so no consumer loses precision.
pub fn moments_json(ms: &MomentSet, central: Option<&CentralMoments>) -> String {
    let mut obj = Map::new();
    for (p, q, v) in ms.iter() {
        obj.insert(format!("m{p}{q}"), Value::String(v.to_string()));
    }
    if let Some(mu) = central {
        for (p, q, v) in mu.iter() {
            obj.insert(format!("mu{p}{q}"), Value::String(fraction_string(v)));
        }
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("string map serializes");
    text.push('\n');
    text
}

/// `p,q,value` rows, with a fourth `central` column when central moments
/// are given.
pub fn moments_csv(ms: &MomentSet, central: Option<&CentralMoments>) -> String {
    let mut out = String::from(if central.is_some() { "p,q,value,central\n" } else { "p,q,value\n" });
    for (p, q, v) in ms.iter() {
        out.push_str(&format!("{p},{q},{v}"));
        if let Some(mu) = central {
            out.push(',');
            out.push_str(&fraction_string(mu.get(p, q).expect("same order")));
        }
        out.push('\n');
    }
    out
}

fn run_compute(
    path: PathBuf,
    order: u32,
    method: Method,
    central: bool,
    format: Format,
    stdout: &mut dyn Write,
) -> Result<(), String> {
    let img = read_pgm(&path).map_err(|e| e.to_string())?;
    let ms = compute(&img, method, order).map_err(|e| e.to_string())?;
    let mu = if central { Some(central_moments(&ms).map_err(|e| e.to_string())?) } else { None };
    let text = match format {
        Format::Json => moments_json(&ms, mu.as_ref()),
        Format::Csv => moments_csv(&ms, mu.as_ref()),
    };
    stdout.write_all(text.as_bytes()).map_err(|e| e.to_string())
}

fn run_bench(
    sizes: Option<Vec<(usize, usize)>>,
    repeats: usize,
    order: u32,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<(), String> {
    let sizes = sizes.unwrap_or_else(|| DEFAULT_SIZES.to_vec());
    let records = bench_both(&sizes, repeats, order).map_err(|e| e.to_string())?;
    let write = |dest: &mut dyn Write| -> io::Result<()> {
        writeln!(dest, "{}", build_comment())?;
        emit_csv(&records, dest)
    };
    match out {
        Some(path) => {
            let file = File::create(&path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            write(&mut BufWriter::new(file)).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => write(stdout).map_err(|e| e.to_string()),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute { path, order, method, central, format } => {
            run_compute(path, order, method.into(), central, format, stdout)
        }
        Command::Bench { sizes, repeats, order, out } => run_bench(sizes, repeats, order, out, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
    }
}
