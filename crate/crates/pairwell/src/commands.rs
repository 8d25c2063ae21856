use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use pairwell_core::cimethod::spectrum;
use pairwell_core::numerics::NewtonConfig;
use pairwell_core::solver::{solve_state_detailed, sweep_with, SolveRequest};
use pairwell_core::wavefn::{density_grid, normalize, triplet_density_grid, DensityGrid};
use pairwell_core::{cimethod::DEFAULT_BASIS_CUTOFF, StateLabel};

use crate::args::{Command, Format, SymmetryArg};
use crate::output::{csv_number, CiInputs, CiLevel, OutputRecord, SolveInputs, SolveResults};
use crate::CliError;

type Sink = Box<dyn Write>;

pub fn execute(command: &Command) -> Result<(), CliError> {
    match *command {
        Command::Solve { u, n, m, format, tol, basis } => solve(u, n, m, format, tol, basis),
        Command::Sweep { n, m, u_start, u_end, steps, ref out } => sweep(n, m, u_start, u_end, steps as usize, out.as_deref()),
        Command::Density { u, n, m, grid, symmetry, ref out } => density(u, n, m, grid, symmetry, out.as_deref()),
        Command::Ci { u, basis, levels, format } => ci(u, basis, levels, format),
    }
}

/// Standard output, or a file created before any computation so a bad path fails fast.
fn open_sink(out: Option<&Path>) -> Result<Sink, CliError> {
    match out {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(path) => File::create(path)
            .map(|f| Box::new(BufWriter::new(f)) as Sink)
            .map_err(|source| CliError::Write { path: path.to_path_buf(), source }),
    }
}

fn io_error(out: Option<&Path>) -> impl Fn(io::Error) -> CliError + '_ {
    move |source| match out {
        Some(path) => CliError::Write { path: path.to_path_buf(), source },
        None => CliError::Stdout(source),
    }
}

fn csv_error(out: Option<&Path>) -> impl Fn(csv::Error) -> CliError + '_ {
    move |e| io_error(out)(e.into())
}

fn finite(value: f64, what: &str) -> Result<f64, CliError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Usage(format!("{what} must be finite")))
    }
}

fn solve(u: f64, n: u32, m: u32, format: Format, tol: Option<f64>, basis: Option<u32>) -> Result<(), CliError> {
    finite(u, "--U")?;
    let mut request = SolveRequest::new(u, StateLabel::new(n, m)?);
    if let Some(tol) = tol {
        let cfg = NewtonConfig::default().with_residual_tolerance(tol);
        cfg.validate()?;
        request.newton = Some(cfg);
    }
    request.n_max = basis;
    let outcome = solve_state_detailed(&request)?;
    let pair = outcome.pair;
    let results = SolveResults {
        re_k1: pair.k1.re,
        im_k1: pair.k1.im,
        re_k2: pair.k2.re,
        im_k2: pair.k2.im,
        energy: pair.energy(),
        residual: outcome.residual_norm,
        iterations: outcome.iterations,
        case_sign: pair.case.sign.value() as i8,
    };

    let mut sink = open_sink(None)?;
    let err = io_error(None);
    match format {
        Format::Json => {
            let record = OutputRecord::new("solve", SolveInputs { u, n, m, tol, basis }, results);
            serde_json::to_writer_pretty(&mut sink, &record).map_err(|e| err(e.into()))?;
            writeln!(sink).map_err(&err)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(["U", "n", "m", "re_k1", "im_k1", "re_k2", "im_k2", "E", "residual", "iterations", "s"])
                .map_err(csv_error(None))?;
            w.write_record([
                csv_number(u),
                n.to_string(),
                m.to_string(),
                csv_number(results.re_k1),
                csv_number(results.im_k1),
                csv_number(results.re_k2),
                csv_number(results.im_k2),
                csv_number(results.energy),
                csv_number(results.residual),
                results.iterations.to_string(),
                results.case_sign.to_string(),
            ])
            .map_err(csv_error(None))?;
            sink = w.into_inner().map_err(|e| err(e.into_error()))?;
        }
    }
    sink.flush().map_err(err)
}

fn sweep(n: u32, m: u32, u_start: f64, u_end: f64, steps: usize, out: Option<&Path>) -> Result<(), CliError> {
    finite(u_start, "--U-start")?;
    finite(u_end, "--U-end")?;
    let label = StateLabel::new(n, m)?;
    let sink = open_sink(out)?;
    let result = sweep_with(label, u_start, u_end, steps, &NewtonConfig::default(), DEFAULT_BASIS_CUTOFF)?;

    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["U", "re_k1", "im_k1", "re_k2", "im_k2", "E", "residual"]).map_err(csv_error(out))?;
    for point in &result.points {
        let row = match point.pair {
            Some(p) => [
                csv_number(point.u),
                csv_number(p.k1.re),
                csv_number(p.k1.im),
                csv_number(p.k2.re),
                csv_number(p.k2.im),
                csv_number(p.energy()),
                csv_number(point.residual_norm().unwrap_or(f64::NAN)),
            ],
            None => [csv_number(point.u), String::new(), String::new(), String::new(), String::new(), String::new(), String::new()],
        };
        w.write_record(&row).map_err(csv_error(out))?;
    }
    w.into_inner().map_err(|e| io_error(out)(e.into_error()))?.flush().map_err(io_error(out))
}

fn density(u: f64, n: u32, m: u32, grid: usize, symmetry: SymmetryArg, out: Option<&Path>) -> Result<(), CliError> {
    finite(u, "--U")?;
    let label = StateLabel::new(n, m)?;
    let sink = open_sink(out)?;
    let grid: DensityGrid = match symmetry {
        SymmetryArg::Singlet => {
            let pair = pairwell_core::solver::solve_state(&SolveRequest::new(u, label))?;
            density_grid(&normalize(&pair)?, grid)?
        }
        SymmetryArg::Triplet => triplet_density_grid(label, u, grid)?,
    };

    let meta = &grid.metadata;
    let complex = |z: pairwell_core::Complex64| {
        let im = csv_number(z.im);
        let sign = if im.starts_with('-') { "" } else { "+" };
        format!("{}{sign}{im}i", csv_number(z.re))
    };
    let lines = [
        "x1,x2,density".to_string(),
        format!("# symmetry={}", if meta.sign.is_some() { "singlet" } else { "triplet" }),
        format!("# U={}", csv_number(meta.u)),
        format!("# n={}", meta.label.n()),
        format!("# m={}", meta.label.m()),
        format!("# k1={}", complex(meta.k1)),
        format!("# k2={}", complex(meta.k2)),
        format!("# s={}", meta.sign.map(|s| csv_number(s.value())).unwrap_or_default()),
        format!("# norm={}", csv_number(meta.norm)),
    ];
    let mut sink = sink;
    for line in lines {
        writeln!(sink, "{line}").map_err(io_error(out))?;
    }
    let mut w = csv::Writer::from_writer(sink);
    for i in 0..grid.resolution {
        let x1 = csv_number(grid.coordinate(i));
        for j in 0..grid.resolution {
            w.write_record([x1.as_str(), &csv_number(grid.coordinate(j)), &csv_number(grid.at(i, j))])
                .map_err(csv_error(out))?;
        }
    }
    w.into_inner().map_err(|e| io_error(out)(e.into_error()))?.flush().map_err(io_error(out))
}

fn ci(u: f64, basis: u32, levels: usize, format: Format) -> Result<(), CliError> {
    finite(u, "--U")?;
    let rows: Vec<CiLevel> = spectrum(u, basis, levels)?
        .into_iter()
        .enumerate()
        .map(|(level, s)| CiLevel {
            level,
            energy: s.energy,
            dominant_n: s.dominant_label.n(),
            dominant_m: s.dominant_label.m(),
            leading_coefficient: s.leading_coefficient.abs(),
        })
        .collect();

    let mut sink = open_sink(None)?;
    let err = io_error(None);
    match format {
        Format::Json => {
            let record = OutputRecord::new("ci", CiInputs { u, basis, levels }, rows);
            serde_json::to_writer_pretty(&mut sink, &record).map_err(|e| err(e.into()))?;
            writeln!(sink).map_err(&err)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(["level", "energy", "dominant_n", "dominant_m", "leading_coefficient"])
                .map_err(csv_error(None))?;
            for r in &rows {
                w.write_record([
                    r.level.to_string(),
                    csv_number(r.energy),
                    r.dominant_n.to_string(),
                    r.dominant_m.to_string(),
                    csv_number(r.leading_coefficient),
                ])
                .map_err(csv_error(None))?;
            }
            sink = w.into_inner().map_err(|e| err(e.into_error()))?;
        }
    }
    sink.flush().map_err(err)
}
