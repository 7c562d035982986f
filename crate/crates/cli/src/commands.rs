use std::fs;
use std::path::{Path, PathBuf};

use resonance_core::asymptotics::{
    classify, default_radii, genericity_scan, ClassifyOptions, EmpiricalOptions, ScanOptions,
};
use resonance_core::expoly::{expand, p0_only, CancellationReport, ExpoPolynomial};
use resonance_core::geometry::Point;
use resonance_core::permutations::ENUMERATION_CAP;
use resonance_core::zeros::{counting_function_for, find_resonances, CountOptions, ExpoFunction};
use serde::Serialize;

use crate::config::Validated;
use crate::CliError;

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Numeric(format!("serialization failed: {e}")))
}

fn csv_string<R: Serialize>(rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)
            .map_err(|e| CliError::Numeric(format!("csv: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Numeric(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes through a sibling temp file and a rename so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn function_for(v: &Validated, p0: bool) -> Result<(ExpoPolynomial, Option<CancellationReport>), CliError> {
    if p0 {
        return Ok((p0_only(&v.a), None));
    }
    let (e, report) = expand(&v.a, &v.cfg, &v.raw.tolerances.expand())?;
    Ok((e, Some(report)))
}

#[derive(Serialize)]
struct ExpandOutput {
    n: usize,
    b_nu: f64,
    nu: usize,
    frequencies: Vec<f64>,
    canonical_form: ExpoPolynomial,
    cancellation: Option<CancellationReport>,
}

#[derive(Serialize)]
struct FrequencyRow {
    frequency: f64,
    degree: usize,
}

#[derive(Serialize)]
struct CoefficientRow {
    frequency: f64,
    power: usize,
    re: f64,
    im: f64,
}

pub fn expand_cmd(v: &Validated, p0: bool, csv: bool, out_dir: &Path) -> Result<String, CliError> {
    let (e, cancellation) = function_for(v, p0)?;
    if csv {
        let freq_rows: Vec<FrequencyRow> = e
            .terms()
            .iter()
            .map(|t| FrequencyRow {
                frequency: t.frequency,
                degree: t.coefficients.degree().unwrap_or(0),
            })
            .collect();
        let coeff_rows: Vec<CoefficientRow> = e
            .terms()
            .iter()
            .flat_map(|t| {
                t.coefficients.coeffs().iter().enumerate().map(|(k, c)| CoefficientRow {
                    frequency: t.frequency,
                    power: k,
                    re: c.re,
                    im: c.im,
                })
            })
            .collect();
        let freq_path = out_dir.join("frequencies.csv");
        let coeff_path = out_dir.join("coefficients.csv");
        write_atomic(&freq_path, &csv_string(&freq_rows)?)?;
        write_atomic(&coeff_path, &csv_string(&coeff_rows)?)?;
        return Ok(format!("{}\n{}\n", freq_path.display(), coeff_path.display()));
    }
    to_json(&ExpandOutput {
        n: v.cfg.len(),
        b_nu: e.max_frequency(),
        nu: e.nu(),
        frequencies: e.frequencies(),
        canonical_form: e,
        cancellation,
    })
}

pub fn classify_cmd(v: &Validated, empirical: bool) -> Result<String, CliError> {
    let t = &v.raw.tolerances;
    let empirical = if empirical {
        Some(EmpiricalOptions {
            radii: v.raw.counting.map(|g| g.radii()).transpose()?,
            ..EmpiricalOptions::default()
        })
    } else {
        None
    };
    let opts = ClassifyOptions {
        expand: t.expand(),
        class_tol: t.class_tol,
        gap_tol: t.gap_tol,
        empirical,
    };
    to_json(&classify(&v.a, &v.cfg, &opts)?)
}

#[derive(Serialize)]
struct CountRow {
    #[serde(rename = "R")]
    r: f64,
    count: usize,
    winding_residual: f64,
}

pub fn count_cmd(v: &Validated, p0: bool) -> Result<String, CliError> {
    let (e, _) = function_for(v, p0)?;
    let radii = match v.raw.counting {
        Some(grid) => grid.radii()?,
        None if e.max_frequency() > 0.0 => default_radii(e.max_frequency()),
        None => return Err(CliError::Config("a counting grid is required here".into())),
    };
    let counts = counting_function_for(&ExpoFunction::new(e), &radii, &CountOptions::default())?;
    let rows: Vec<CountRow> = counts
        .iter()
        .map(|c| CountRow {
            r: c.radius,
            count: c.count,
            winding_residual: c.winding_residual,
        })
        .collect();
    csv_string(&rows)
}

#[derive(Serialize)]
struct ResonanceRow {
    re: f64,
    im: f64,
    multiplicity: usize,
    residual: f64,
    cluster: bool,
}

#[derive(Serialize)]
struct ResonanceOutput {
    region_count: usize,
    depth_exhausted: bool,
    resonances: Vec<ResonanceRow>,
}

pub fn resonances_cmd(v: &Validated, p0: bool, csv: bool) -> Result<String, CliError> {
    let region = v
        .raw
        .region
        .ok_or_else(|| CliError::Config("a region is required for resonances".into()))?;
    let rect = region.rect()?;
    let (e, _) = function_for(v, p0)?;
    let search = find_resonances(
        &ExpoFunction::new(e),
        &rect,
        region.max_depth,
        &CountOptions::default(),
    )?;
    let rows: Vec<ResonanceRow> = search
        .resonances
        .iter()
        .map(|r| ResonanceRow {
            re: r.location.re,
            im: r.location.im,
            multiplicity: r.multiplicity,
            residual: r.residual,
            cluster: r.cluster,
        })
        .collect();
    if csv {
        if rows.is_empty() {
            return Ok("re,im,multiplicity,residual,cluster\n".into());
        }
        return csv_string(&rows);
    }
    to_json(&ResonanceOutput {
        region_count: search.region_count,
        depth_exhausted: search.depth_exhausted,
        resonances: rows,
    })
}

pub fn scan_cmd(n: usize, trials: usize, seed: u64) -> Result<String, CliError> {
    if !(2..=ENUMERATION_CAP).contains(&n) {
        return Err(CliError::Config(format!(
            "N must lie in [2, {ENUMERATION_CAP}], got {n}"
        )));
    }
    to_json(&genericity_scan(n, trials, seed, &ScanOptions::default())?)
}

#[derive(Serialize)]
struct ValidateOutput {
    valid: bool,
    n: usize,
    min_distance: f64,
    centers: Vec<Point>,
}

pub fn validate_cmd(v: &Validated) -> Result<String, CliError> {
    to_json(&ValidateOutput {
        valid: true,
        n: v.cfg.len(),
        min_distance: v.cfg.min_distance(),
        centers: v.cfg.centers().to_vec(),
    })
}
