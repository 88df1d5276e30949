//! `spinring` -- exact-diagonalization scans of the spin-1/2 Heisenberg ring
//! with next-nearest-neighbor coupling, reporting pairwise concurrence.
//!
//! Subcommands: `ground` (J-scan of the ground ensemble), `thermal`
//! ((T, J) concurrence surface), `threshold` (threshold-temperature
//! curves), `validate` (internal cross-check battery).
//!
//! Exit status: 0 success, 1 validation/computation failure, 2 usage error,
//! 3 resource or I/O error.

mod gridspec;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use spinring::{
    ground_scan, run_validation, thermal_grid, threshold_curve, Distance, Error as CoreError,
    ThresholdOptions,
};

use gridspec::parse_grid;
use output::{fmt_num, run_id, write_csv, write_manifest};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "spinring", version, about = "Pairwise concurrence of the J1-J2 Heisenberg ring by exact diagonalization")]
struct Cli {
    /// Worker threads for grid points (default: all cores). Output is
    /// independent of this setting.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the ground ensemble over J: energy, G1, G2, C1, C2, crossings.
    Ground {
        /// Ring size (4..=24; full scans are practical up to 12)
        #[arg(long, alias = "L")]
        l: usize,
        #[arg(long, allow_hyphen_values = true)]
        j_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        j_max: f64,
        /// Number of grid points including both endpoints
        #[arg(long)]
        steps: usize,
        /// Output CSV path; a manifest is written next to it
        #[arg(long)]
        out: PathBuf,
    },
    /// Thermal concurrence C(T, J) at one pair distance, long-format CSV.
    Thermal {
        #[arg(long, alias = "L")]
        l: usize,
        /// J grid as min:max:steps
        #[arg(long, allow_hyphen_values = true)]
        j_grid: String,
        /// T grid as min:max:steps, temperatures strictly positive
        #[arg(long, allow_hyphen_values = true)]
        t_grid: String,
        /// Pair distance: 1 (nearest) or 2 (next-nearest)
        #[arg(long)]
        distance: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Threshold temperature T_th(J) for each requested ring size.
    Threshold {
        /// Comma-separated ring sizes, each in 4..=12
        #[arg(long, alias = "L-list", value_delimiter = ',')]
        l_list: Vec<usize>,
        #[arg(long, allow_hyphen_values = true)]
        j_grid: String,
        /// Pair distance: 1 or 2
        #[arg(long)]
        distance: usize,
        /// Upper end of the threshold search window
        #[arg(long, default_value_t = 20.0)]
        t_max: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the cross-check battery and print a pass/fail table.
    Validate {
        /// Largest ring size used by the heavy comparisons (4..=10)
        #[arg(long, alias = "max-L", default_value_t = 8)]
        max_l: usize,
    },
}

fn exit_code_for(err: &CoreError) -> u8 {
    match err {
        CoreError::Parameter(_) => EXIT_USAGE,
        CoreError::Resource(_) => EXIT_RESOURCE,
        CoreError::Annotated { source, .. } => exit_code_for(source),
        _ => EXIT_FAILURE,
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest")
}

struct Emitted {
    rows: usize,
}

fn emit(
    out: &Path,
    header: &str,
    rows: Vec<Vec<String>>,
    canonical: String,
    mut manifest: Vec<(String, String)>,
    started: Instant,
) -> std::io::Result<Emitted> {
    let id = run_id(&canonical);
    write_csv(out, &id, header, &rows)?;
    let mut entries = vec![
        ("run_id".to_string(), id),
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        (
            "command".to_string(),
            std::env::args().collect::<Vec<_>>().join(" "),
        ),
        ("csv".to_string(), out.display().to_string()),
        ("rows".to_string(), rows.len().to_string()),
    ];
    entries.append(&mut manifest);
    entries.push((
        "duration_seconds".to_string(),
        format!("{:.3}", started.elapsed().as_secs_f64()),
    ));
    write_manifest(&manifest_path(out), &entries)?;
    Ok(Emitted { rows: rows.len() })
}

fn run_ground(l: usize, j_min: f64, j_max: f64, steps: usize, out: &Path) -> Result<Emitted, ExitCode> {
    let started = Instant::now();
    let scan = ground_scan(l, j_min, j_max, steps).map_err(report_core)?;
    let rows: Vec<Vec<String>> = scan
        .points
        .iter()
        .map(|p| {
            vec![
                fmt_num(p.j),
                fmt_num(p.e0),
                fmt_num(p.g1),
                fmt_num(p.g2),
                fmt_num(p.c1),
                fmt_num(p.c2),
                if p.crossing { "1".into() } else { "0".into() },
            ]
        })
        .collect();
    let canonical = format!(
        "ground l={l} j_min={j_min} j_max={j_max} steps={steps} v={}",
        env!("CARGO_PKG_VERSION")
    );
    let manifest = vec![
        ("l".to_string(), l.to_string()),
        ("j_min".to_string(), j_min.to_string()),
        ("j_max".to_string(), j_max.to_string()),
        ("steps".to_string(), steps.to_string()),
        (
            "degeneracy_tol".to_string(),
            format!("{:e}", spinring::DEFAULT_DEGENERACY_TOL),
        ),
    ];
    emit(
        out,
        "J,E0,G1,G2,C1,C2,crossing_flag",
        rows,
        canonical,
        manifest,
        started,
    )
    .map_err(report_io)
}

fn run_thermal(
    l: usize,
    j_spec: &str,
    t_spec: &str,
    distance: usize,
    out: &Path,
) -> Result<Emitted, ExitCode> {
    let started = Instant::now();
    let j_grid = parse_grid(j_spec).map_err(|m| usage_error(&m))?;
    let t_grid = parse_grid(t_spec).map_err(|m| usage_error(&m))?;
    let dist = Distance::from_step(distance).map_err(report_core)?;
    let grid = thermal_grid(l, &j_grid, &t_grid).map_err(report_core)?;
    let c = grid.concurrence(dist);
    let mut rows = Vec::with_capacity(t_grid.len() * j_grid.len());
    for (ti, &t) in t_grid.iter().enumerate() {
        for (ji, &j) in j_grid.iter().enumerate() {
            rows.push(vec![fmt_num(t), fmt_num(j), fmt_num(c[ti][ji])]);
        }
    }
    let canonical = format!(
        "thermal l={l} j={j_spec} t={t_spec} d={distance} v={}",
        env!("CARGO_PKG_VERSION")
    );
    let manifest = vec![
        ("l".to_string(), l.to_string()),
        ("j_grid".to_string(), j_spec.to_string()),
        ("t_grid".to_string(), t_spec.to_string()),
        ("distance".to_string(), distance.to_string()),
    ];
    emit(out, "T,J,C", rows, canonical, manifest, started).map_err(report_io)
}

fn run_threshold(
    l_list: &[usize],
    j_spec: &str,
    distance: usize,
    t_max: f64,
    out: &Path,
) -> Result<Emitted, ExitCode> {
    let started = Instant::now();
    if l_list.is_empty() {
        return Err(usage_error("--l-list needs at least one size"));
    }
    let j_grid = parse_grid(j_spec).map_err(|m| usage_error(&m))?;
    let dist = Distance::from_step(distance).map_err(report_core)?;
    let opts = ThresholdOptions {
        t_max,
        ..ThresholdOptions::default()
    };
    let curves = threshold_curve(l_list, &j_grid, dist, &opts).map_err(report_core)?;
    let mut rows = Vec::new();
    for curve in &curves {
        for (ji, &j) in curve.j_grid.iter().enumerate() {
            rows.push(vec![
                curve.l.to_string(),
                fmt_num(j),
                fmt_num(curve.t_th[ji]),
            ]);
        }
    }
    let canonical = format!(
        "threshold l={l_list:?} j={j_spec} d={distance} t_max={t_max} v={}",
        env!("CARGO_PKG_VERSION")
    );
    let manifest = vec![
        (
            "l_list".to_string(),
            l_list
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
        ("j_grid".to_string(), j_spec.to_string()),
        ("distance".to_string(), distance.to_string()),
        ("t_max".to_string(), t_max.to_string()),
        ("eps".to_string(), format!("{:e}", opts.eps)),
        ("bisection_tol".to_string(), format!("{:e}", opts.tol)),
    ];
    emit(out, "L,J,T_th", rows, canonical, manifest, started).map_err(report_io)
}

fn run_validate(max_l: usize) -> ExitCode {
    let results = match run_validation(max_l) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(10);
    let mut all_passed = true;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{:<width$}  {status}  {}", r.name, r.detail);
        all_passed &= r.passed;
    }
    if all_passed {
        println!("all {} checks passed", results.len());
        ExitCode::SUCCESS
    } else {
        println!("validation FAILED");
        ExitCode::from(EXIT_FAILURE)
    }
}

fn report_core(err: CoreError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(&err))
}

fn report_io(err: std::io::Error) -> ExitCode {
    eprintln!("I/O error: {err}");
    ExitCode::from(EXIT_RESOURCE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(n) = cli.workers {
        if n == 0 {
            return usage_error("--workers must be at least 1");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: could not configure worker pool: {e}");
            return ExitCode::from(EXIT_FAILURE);
        }
    }

    let outcome = match &cli.command {
        Command::Ground {
            l,
            j_min,
            j_max,
            steps,
            out,
        } => run_ground(*l, *j_min, *j_max, *steps, out),
        Command::Thermal {
            l,
            j_grid,
            t_grid,
            distance,
            out,
        } => run_thermal(*l, j_grid, t_grid, *distance, out),
        Command::Threshold {
            l_list,
            j_grid,
            distance,
            t_max,
            out,
        } => run_threshold(l_list, j_grid, *distance, *t_max, out),
        Command::Validate { max_l } => return run_validate(*max_l),
    };

    match outcome {
        Ok(emitted) => {
            eprintln!("wrote {} rows", emitted.rows);
            ExitCode::SUCCESS
        }
        Err(code) => code,
    }
}
