use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use nls_core::catalog::{instantiate, list_families, CatalogError, FamilyId, SolutionInstance, SystemKind};
use nls_core::field::Solution;
use nls_core::fd::FdOrder;
use nls_core::geometry::Point;
use nls_core::propagator::{self, box_length, cross_validate, FieldGrid, LadderConfig, PropagatorError};
use nls_core::suite::{coupled_matrix, single_matrix};
use nls_core::symmetry::{SolutionDocument, SymmetryError, SymmetryOp, TransformedSolution};
use nls_core::verify::{params_hash, verify, ReportRow, ResidualReport, SamplingConfig, VerifyError};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::args::{Cli, Command, GridFormat, Kind, SamplingArgs, SuiteKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("InvalidSpec: {path}: {message}")]
    InvalidSpec { path: PathBuf, message: String },
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
    #[error("IoError: {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Propagator(#[from] PropagatorError),
}

pub enum Outcome {
    Pass,
    Fail,
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok { Outcome::Pass } else { Outcome::Fail }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::List { kind } => list(kind),
        Command::Describe { family } => describe(&family),
        Command::Eval { spec, t, x, y } => eval(&spec, Point::new(t, x, y)),
        Command::Verify { spec: Some(spec), sampling, .. } => verify_doc(&spec, None, &sampling),
        Command::Verify { suite: Some(suite), sampling, .. } => verify_suite(suite, &sampling),
        Command::Verify { .. } => Err(CliError::InvalidArgument("either --spec or --suite is required".into())),
        Command::Transform { spec, ops, sampling } => {
            let extra: Vec<SymmetryOp> = match ops {
                Some(text) => serde_json::from_str(&text)
                    .map_err(|e| CliError::InvalidArgument(format!("--ops is not a JSON op list: {e}")))?,
                None => Vec::new(),
            };
            verify_doc(&spec, Some(extra), &sampling)
        }
        Command::Propagate { spec, out, tol, nx, dt, steps, t0, t1, periods, ny } => {
            let t1 = match steps {
                Some(n) => t0 + n as f64 * dt.iter().copied().fold(f64::NAN, f64::max),
                None => t1,
            };
            let cfg = LadderConfig { t0, t1, periods, ny, nx, dt };
            propagate(&spec, out.as_deref(), tol, &cfg)
        }
        Command::Export { spec, out, format, nx, ny, dt, steps, t0, periods, component } => {
            export(&spec, &out, format, [nx, ny, steps, periods, component], dt, t0)
        }
    }
}

fn read_doc(path: &Path) -> Result<SolutionDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::InvalidSpec { path: path.into(), message: e.to_string() })
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(|source| CliError::Io { path: path.into(), source })
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("report serializes") + "\n";
    match out {
        Some(path) => {
            let mut w = create(path)?;
            w.write_all(text.as_bytes()).and_then(|_| w.flush()).map_err(|source| CliError::Io { path: path.into(), source })
        }
        None => stdout(&text),
    }
}

/// A closed pipe (`nls list | head`) is not an error.
fn stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io { path: "<stdout>".into(), source: e }),
        _ => Ok(()),
    }
}

fn list(kind: Option<Kind>) -> Result<Outcome, CliError> {
    let kinds = match kind {
        Some(Kind::Single) => vec![SystemKind::Single],
        Some(Kind::Coupled) => vec![SystemKind::Coupled],
        None => vec![SystemKind::Single, SystemKind::Coupled],
    };
    for k in kinds {
        for d in list_families(k) {
            stdout(&format!("{:<4} {}\n", d.id, d.formula))?;
        }
    }
    Ok(Outcome::Pass)
}

fn describe(family: &str) -> Result<Outcome, CliError> {
    let id: FamilyId = family.parse().map_err(CatalogError::UnknownFamily)?;
    emit_json(id.descriptor(), None)?;
    Ok(Outcome::Pass)
}

fn format_complex(z: Complex64) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re + 0.0, sign, im.abs())
}

fn eval(path: &Path, p: Point) -> Result<Outcome, CliError> {
    let sol = read_doc(path)?.build()?;
    if !sol.in_domain(p) {
        return Err(CatalogError::OutOfDomain { t: sol.base_point(p).t, domain: sol.base().time_domain() }.into());
    }
    let distance = sol.singular_distance(p);
    let exclusion = nls_core::catalog::DEFAULT_EXCLUSION;
    if distance < exclusion {
        return Err(CatalogError::SingularPoint { distance, exclusion }.into());
    }
    for z in sol.value_at(p).to_vec() {
        stdout(&format!("{}\n", format_complex(z)))?;
    }
    Ok(Outcome::Pass)
}

fn sampling_config(args: &SamplingArgs) -> Result<SamplingConfig, CliError> {
    let mut cfg = SamplingConfig::default();
    if let Some(n) = args.points {
        cfg.n_points = n;
    }
    if let Some(order) = args.order {
        cfg.fd_order = FdOrder::try_from(order).map_err(CliError::InvalidArgument)?;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(b) = args.bounds {
        cfg.bounds = b;
    }
    if let Some(e) = args.exclusion {
        cfg.exclusion_radius = e;
    }
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    family: String,
    params_hash: String,
    tolerance: f64,
    pass: bool,
    transforms: &'a [SymmetryOp],
    report: &'a ResidualReport,
}

fn label(doc: &SolutionDocument) -> String {
    match doc.spec.profile {
        Some(p) => format!("{}:{}", doc.spec.family, p.name()),
        None => doc.spec.family.to_string(),
    }
}

fn hash_of(doc: &SolutionDocument) -> String {
    params_hash(&serde_json::to_string(doc).expect("spec serializes"))
}

fn write_rows(rows: &[ReportRow], path: &Path) -> Result<(), CliError> {
    nls_core::verify::write_csv(rows, create(path)?)
        .map_err(|e| CliError::Io { path: path.into(), source: std::io::Error::other(e) })
}

fn verify_doc(path: &Path, extra_ops: Option<Vec<SymmetryOp>>, args: &SamplingArgs) -> Result<Outcome, CliError> {
    let mut doc = read_doc(path)?;
    if let Some(ops) = extra_ops {
        doc.transforms.extend(ops);
    }
    let cfg = sampling_config(args)?;
    let sol: TransformedSolution = doc.build()?;
    let report = verify(&sol, &cfg)?;
    let pass = report.passes(args.tol);
    let (family, hash) = (label(&doc), hash_of(&doc));
    match args.out.as_deref() {
        Some(p) if p.extension().is_some_and(|e| e == "csv") => {
            write_rows(&[ReportRow::new(family.clone(), hash, &report)], p)?;
        }
        out => {
            let output = VerifyOutput {
                family: family.clone(),
                params_hash: hash,
                tolerance: args.tol,
                pass,
                transforms: &doc.transforms,
                report: &report,
            };
            emit_json(&output, out)?;
        }
    }
    eprintln!("{family}: max_rel = {:.3e} ({})", report.max_rel, if pass { "PASS" } else { "FAIL" });
    Ok(pass.into())
}

fn verify_suite(kind: SuiteKind, args: &SamplingArgs) -> Result<Outcome, CliError> {
    let cfg = sampling_config(args)?;
    let mut cases = Vec::new();
    if kind != SuiteKind::Coupled {
        cases.extend(single_matrix());
    }
    if kind != SuiteKind::Single {
        cases.extend(coupled_matrix());
    }
    let mut rows = Vec::with_capacity(cases.len());
    let mut all_pass = true;
    for case in cases {
        let inst = instantiate(&case.spec)?;
        let report = verify(&inst, &cfg)?;
        let pass = report.passes(args.tol);
        all_pass &= pass;
        let hash = params_hash(&serde_json::to_string(&case.spec).expect("spec serializes"));
        stdout(&format!("{:<9} {:.3e} {}\n", case.label, report.max_rel, if pass { "PASS" } else { "FAIL" }))?;
        rows.push(ReportRow::new(case.label, hash, &report));
    }
    if let Some(path) = args.out.as_deref() {
        write_rows(&rows, path)?;
    }
    Ok(all_pass.into())
}

fn plain_instance(path: &Path) -> Result<SolutionInstance, CliError> {
    let doc = read_doc(path)?;
    if !doc.transforms.is_empty() {
        return Err(CliError::InvalidArgument("the propagator takes untransformed catalog specs".into()));
    }
    Ok(instantiate(&doc.spec)?)
}

fn propagate(path: &Path, out: Option<&Path>, tol: f64, cfg: &LadderConfig) -> Result<Outcome, CliError> {
    let inst = plain_instance(path)?;
    let table = cross_validate(&inst, cfg)?;
    emit_json(&table, out)?;
    let finest = table.time.iter().chain(&table.space).map(|r| r.rel_l2).fold(f64::INFINITY, f64::min);
    let pass = finest <= tol;
    eprintln!(
        "{}: finest relative L2 = {:.3e}, dt slope = {} ({})",
        table.family,
        finest,
        table.dt_slope.map_or("n/a".to_string(), |s| format!("{s:.3}")),
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(pass.into())
}

fn export(
    path: &Path,
    out: &Path,
    format: GridFormat,
    [nx, ny, steps, periods, component]: [usize; 5],
    dt: f64,
    t0: f64,
) -> Result<Outcome, CliError> {
    let inst = plain_instance(path)?;
    let lx = box_length(&inst, periods)?;
    let mut grid = FieldGrid::seed(&inst, nx, ny, lx, lx, t0)?;
    if steps > 0 {
        grid = propagator::split_step_evolve(&grid, &inst.physics(), dt, steps)?;
    }
    if component >= grid.values.len() {
        return Err(CliError::InvalidArgument(format!("component {component} does not exist")));
    }
    let io = |source| CliError::Io { path: out.into(), source };
    let w = create(out)?;
    match format {
        GridFormat::Csv => propagator::write_csv(&grid, component, w).map_err(|e| io(std::io::Error::other(e)))?,
        GridFormat::Bin => propagator::write_binary(&grid, component, w).map_err(io)?,
    }
    Ok(Outcome::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(Complex64::new(1.0, 0.0)), "1+0i");
        assert_eq!(format_complex(Complex64::new(1.0, -0.0)), "1+0i");
        assert_eq!(format_complex(Complex64::new(-0.5, -2.25)), "-0.5-2.25i");
    }
}
