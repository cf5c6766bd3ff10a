//! Verification driver: runs the named suite and writes a deterministic
//! report, or renders curve plots.
//!
//! Exit codes: 0 all checks pass, 1 any check fails, 2 usage error,
//! 3 I/O failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde::Deserialize;

use sl2geom_cli::plot::{Chart, CurveKind};
use sl2geom_cli::report::RunConfig;
use sl2geom_cli::{parse_rational_list, plot, suites};

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    about = "Run exact verification suites over the moment-map, triple-tensor, projective-line and trope-geometry kernels",
    after_help = "Suites: moment, exotic, appendix, trope, c4c6, kummer, all.\n\
                  `verify plot --sextic c0,..,c6 --curve both --out file.svg` renders the\n\
                  plane curves on the real slice (x1, i*x2, x3); in that slice the null\n\
                  conic reads x1^2 - x2^2 + x3^2 = 0."
)]
struct Cli {
    /// Suite name, or `plot`.
    command: String,

    /// Seed for the deterministic generator.
    #[arg(long)]
    seed: Option<u64>,

    /// Override per-check trial counts.
    #[arg(long)]
    trials: Option<usize>,

    /// Working precision in bits (default 256).
    #[arg(long)]
    precision: Option<u32>,

    /// Restrict degree-indexed checks to this m.
    #[arg(long)]
    m: Option<usize>,

    /// Sextic coefficients `c0,c1,...,c6` (rationals, ascending).
    #[arg(long, allow_hyphen_values = true)]
    sextic: Option<String>,

    /// Report format.
    #[arg(long, value_parser = ["json", "text"])]
    format: Option<String>,

    /// Write the report (or SVG) here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Optional JSON config file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Plot: which curve(s) to draw.
    #[arg(long, value_parser = ["conic", "sextic", "both"])]
    curve: Option<String>,

    /// Plot: affine chart, one coordinate fixed to 1 (x1, x2 or x3).
    #[arg(long)]
    slice: Option<String>,

    /// Plot: half-width of the sampled square.
    #[arg(long)]
    radius: Option<f64>,
}

#[derive(Deserialize, Default, Debug)]
struct FileConfig {
    seed: Option<u64>,
    trials: Option<usize>,
    precision: Option<u32>,
    m: Option<usize>,
    sextic: Option<String>,
    format: Option<String>,
    out: Option<PathBuf>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn io_error(msg: &str) -> ExitCode {
    eprintln!("i/o error: {msg}");
    ExitCode::from(3)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let file_cfg: FileConfig = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match serde_json::from_str(&text) {
                Ok(cfg) => cfg,
                Err(e) => return usage_error(&format!("bad config file: {e}")),
            },
            Err(e) => return io_error(&format!("cannot read config file: {e}")),
        },
        None => FileConfig::default(),
    };

    let sextic_text = cli.sextic.clone().or(file_cfg.sextic);
    let sextic = match &sextic_text {
        Some(text) => match parse_rational_list(text) {
            Ok(cs) if cs.len() == 7 => Some(cs),
            Ok(cs) => {
                return usage_error(&format!("--sextic needs 7 coefficients, got {}", cs.len()))
            }
            Err(e) => return usage_error(&e),
        },
        None => None,
    };

    if cli.command == "plot" {
        let Some(cs) = sextic else {
            return usage_error("plot requires --sextic c0,c1,...,c6");
        };
        let p = sl2geom::UnivariatePoly::new(cs);
        let curve = match cli.curve.as_deref().unwrap_or("both") {
            "conic" => CurveKind::Conic,
            "sextic" => CurveKind::Sextic,
            _ => CurveKind::Both,
        };
        let chart = match Chart::parse(cli.slice.as_deref().unwrap_or("x3")) {
            Some(c) => c,
            None => return usage_error("--slice must be one of x1, x2, x3"),
        };
        let radius = cli.radius.unwrap_or(3.0);
        let svg = match plot::render_svg(&p, curve, chart, radius) {
            Ok(svg) => svg,
            Err(e) => return usage_error(&format!("cannot plot: {e}")),
        };
        let Some(out) = cli.out.or(file_cfg.out) else {
            return usage_error("plot requires --out PATH");
        };
        return match std::fs::write(&out, svg) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => io_error(&format!("cannot write {}: {e}", out.display())),
        };
    }

    let config = RunConfig {
        seed: cli.seed.or(file_cfg.seed).unwrap_or(0),
        precision_bits: cli
            .precision
            .or(file_cfg.precision)
            .unwrap_or(sl2geom::DEFAULT_PRECISION_BITS),
        trials: cli.trials.or(file_cfg.trials),
        m: cli.m.or(file_cfg.m),
        sextic,
    };
    if config.precision_bits < 64 {
        return usage_error("--precision must be at least 64 bits");
    }

    let report = match suites::run(&config, std::slice::from_ref(&cli.command)) {
        Ok(report) => report,
        Err(e) => return usage_error(&e),
    };

    let format = cli.format.or(file_cfg.format).unwrap_or_else(|| "json".into());
    let rendered = match format.as_str() {
        "text" => report.to_text(),
        _ => {
            let mut s = report.to_json_string();
            s.push('\n');
            s
        }
    };
    match cli.out.or(file_cfg.out) {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                return io_error(&format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{rendered}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
