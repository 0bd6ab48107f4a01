use std::path::Path;

use clap::ValueEnum;
use sha2::{Digest, Sha256};

use harmonia_core::complex::{parse_filtration_auto, Filtration, TimeValue};
use harmonia_core::exactla::{format_decimal, format_scalar, Scalar};
use harmonia_core::harmonic::{
    canonical_barcode, canonical_barcode_with_representatives, subordinate_as_barcode, subordinate_barcode,
    HarmonicError,
};
use harmonia_core::harness::{
    random_complex, stability_trial, stability_trial_for, stability_trials, Generator, MonotoneFunction, TrialReport,
};
use harmonia_core::metrics::{bottleneck as bottleneck_distance, MetricsError};
use harmonia_core::persistence::{persistence_barcode, Bar, Barcode};

use crate::document::{parse_text_barcode, BarcodeDocument, Provenance};
use crate::svg;

/// Why a command stopped; each kind has its own exit status.
#[derive(Debug, PartialEq, Eq)]
pub enum Failure {
    Io(String),
    Input(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Io(_) => 1,
            Self::Input(_) => 2,
            Self::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Self::Io(m) | Self::Input(m) | Self::Internal(m) => m,
        }
    }
}

impl From<HarmonicError> for Failure {
    fn from(e: HarmonicError) -> Self {
        Self::Internal(e.to_string())
    }
}

/// Text for stdout and the exit status of a finished command.
#[derive(Debug, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub exit: u8,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Self { stdout, exit: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Persistence,
    Canonical,
    Subordinate,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Self::Persistence => "persistence",
            Self::Canonical => "canonical",
            Self::Subordinate => "subordinate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    Simplexwise,
    LowerStar,
}

impl From<GeneratorArg> for Generator {
    fn from(g: GeneratorArg) -> Self {
        match g {
            GeneratorArg::Simplexwise => Generator::Simplexwise,
            GeneratorArg::LowerStar => Generator::LowerStar,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn utf8(path: &Path, bytes: &[u8]) -> Result<String, Failure> {
    String::from_utf8(bytes.to_vec()).map_err(|_| Failure::Input(format!("{} is not UTF-8 text", path.display())))
}

fn load_filtration(path: &Path) -> Result<(Filtration, Vec<u8>), Failure> {
    let bytes = read(path)?;
    let f =
        parse_filtration_auto(&utf8(path, &bytes)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((f, bytes))
}

pub fn validate(path: &Path) -> Result<Report, Failure> {
    let (f, _) = load_filtration(path)?;
    let dim = f.max_dim().map_or("none".to_string(), |d| d.to_string());
    Ok(Report::ok(format!(
        "ok: {} simplices, {} critical times, top dimension {dim}\n",
        f.len(),
        f.critical_times().len()
    )))
}

fn without_representatives(bc: Barcode) -> Barcode {
    let dim = bc.dim();
    Barcode::new(dim, bc.bars().iter().map(|b| Bar::new(dim, b.birth.clone(), b.death.clone())))
}

pub fn compute(f: &Filtration, p: usize, algo: Algorithm, reps: bool) -> Result<Barcode, Failure> {
    let bc = match algo {
        Algorithm::Persistence => persistence_barcode(f, p),
        Algorithm::Canonical if reps => canonical_barcode_with_representatives(f, p)?,
        Algorithm::Canonical => canonical_barcode(f, p)?,
        Algorithm::Subordinate => subordinate_as_barcode(p, &subordinate_barcode(f, p, &persistence_barcode(f, p))?),
    };
    Ok(if reps { bc } else { without_representatives(bc) })
}

pub fn barcode(path: &Path, p: usize, algo: Algorithm, reps: bool, format: Format) -> Result<Report, Failure> {
    let (f, bytes) = load_filtration(path)?;
    let bc = compute(&f, p, algo, reps)?;
    let out = match format {
        Format::Json => BarcodeDocument::new(&[bc], provenance(&bytes, algo)).to_json(),
        Format::Text => {
            let mut out = String::new();
            for bar in bc.bars() {
                out.push_str(&format!("{} {}\n", format_scalar(&bar.birth), bar.death));
                if let Some(rep) = &bar.representative {
                    out.push_str(&format!("# representative: {rep}\n"));
                }
            }
            out
        }
    };
    Ok(Report::ok(out))
}

fn provenance(bytes: &[u8], algo: Algorithm) -> Provenance {
    Provenance {
        input_sha256: hex::encode(Sha256::digest(bytes)),
        algorithm: algo.name().to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

enum Loaded {
    Document(BarcodeDocument),
    Text(String),
}

impl Loaded {
    fn single_dimension(&self, path: &Path) -> Result<Option<usize>, Failure> {
        match self {
            Self::Document(doc) if doc.dimensions.len() == 1 => Ok(Some(doc.dimensions[0])),
            Self::Document(_) => {
                Err(Failure::Input(format!("{} holds several dimensions; choose one with --dim", path.display())))
            }
            Self::Text(_) => Ok(None),
        }
    }

    fn barcode(&self, path: &Path, dim: usize) -> Result<Barcode, Failure> {
        match self {
            Self::Document(doc) => doc.barcode(dim),
            Self::Text(text) => parse_text_barcode(text, dim),
        }
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn load_barcode_file(path: &Path) -> Result<Loaded, Failure> {
    let text = utf8(path, &read(path)?)?;
    if text.trim_start().starts_with('{') {
        BarcodeDocument::from_json(&text)
            .map(Loaded::Document)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    } else {
        Ok(Loaded::Text(text))
    }
}

pub fn format_time(t: &TimeValue, decimal: bool) -> String {
    match t {
        TimeValue::Finite(x) if decimal => format_decimal(x, 12),
        TimeValue::Finite(x) => format_scalar(x),
        TimeValue::Infinite => "inf".to_string(),
    }
}

pub fn bottleneck(a: &Path, b: &Path, dim: Option<usize>, decimal: bool) -> Result<Report, Failure> {
    let (la, lb) = (load_barcode_file(a)?, load_barcode_file(b)?);
    let (da, db) = match dim {
        Some(p) => (p, p),
        None => {
            let (da, db) = (la.single_dimension(a)?, lb.single_dimension(b)?);
            let fallback = da.or(db).unwrap_or(0);
            (da.unwrap_or(fallback), db.unwrap_or(fallback))
        }
    };
    let d = bottleneck_distance(&la.barcode(a, da)?, &lb.barcode(b, db)?).map_err(|e| match e {
        MetricsError::DimensionMismatch(..) => Failure::Input(e.to_string()),
        MetricsError::TooLarge(..) => Failure::Internal(e.to_string()),
    })?;
    Ok(Report::ok(format!("{}\n", format_time(&d, decimal))))
}

pub fn render(path: &Path, p: usize, algo: Algorithm, out: &Path) -> Result<Report, Failure> {
    let (f, _) = load_filtration(path)?;
    let bc = compute(&f, p, algo, false)?;
    let title = format!("{} barcode, dimension {p}", algo.name());
    std::fs::write(out, svg::render(&bc, &title))
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", out.display())))?;
    Ok(Report::ok(String::new()))
}

pub enum StabilitySource<'a> {
    Complex(&'a Path),
    Random { seed: u64, max_vertices: usize, generator: Generator },
}

/// Runs `trials` perturbation trials and prints one JSON report per line,
/// then a summary line. Trials whose perturbation is not below a quarter of
/// the smallest value gap are reported but are not held to the bound.
pub fn stability(source: StabilitySource, eps: &Scalar, trials: u64, p: usize) -> Result<Report, Failure> {
    if eps < &Scalar::from_integer(0.into()) {
        return Err(Failure::Input("--eps must be nonnegative".into()));
    }
    let reports: Vec<TrialReport> = match source {
        StabilitySource::Complex(path) => {
            let (f, _) = load_filtration(path)?;
            let function = MonotoneFunction::from_filtration(&f);
            let seeds: Vec<u64> = (0..trials).collect();
            stability_trials(&seeds, |seed| stability_trial_for(&function, seed, eps, p))?
        }
        StabilitySource::Random { seed, max_vertices, generator } => {
            let seeds: Vec<u64> = (0..trials).map(|k| seed.wrapping_add(k)).collect();
            stability_trials(&seeds, |s| {
                stability_trial(&random_complex(s, max_vertices, 2, 0.5), s, eps, p, generator)
            })?
        }
    };
    let mut out = String::new();
    for r in &reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    let in_regime: Vec<&TrialReport> = reports.iter().filter(|r| r.very_close).collect();
    let failed = in_regime.iter().filter(|r| !r.passed()).count();
    let max_ratio = reports.iter().filter_map(TrialReport::ratio).max();
    let summary = serde_json::json!({
        "summary": {
            "trials": reports.len(),
            "in_regime": in_regime.len(),
            "failed": failed,
            "eps": format_scalar(eps),
            "max_ratio": max_ratio.as_ref().map(format_scalar),
        }
    });
    out.push_str(&summary.to_string());
    out.push('\n');
    Ok(Report { stdout: out, exit: if failed > 0 { 3 } else { 0 } })
}
