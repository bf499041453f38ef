use serde::Serialize;

use crate::algebra::rational::to_ratio_string;
use crate::algebra::{GaussianRational, Rational};
use crate::crops::{connection_data, verify_structure_equations, VerifyOptions, VerifyReport};
use crate::error::{CrError, Result};
use crate::exec::{with_jobs, Execution};
use crate::harmonics::harmonic_basis;
use crate::linalg::Matrix;
use crate::spectral::{
    generalized_eigenvalues, kohn_min_positive, negative_spectrum_sweep, standard_sphere_report, KohnCutoff,
    MatrixPair, SphereReport, SweepRow,
};

use super::config::{Fault, Format, RunConfig};
use super::{EXIT_IDENTITY, EXIT_OK, EXIT_REPRODUCTION};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Paneitz,
    Sphere,
    Kohn,
    /// `None` dumps every space with `p + q ≤ max_degree`.
    BasisDump {
        pq: Option<(u32, u32)>,
    },
}

/// Rendered report, exit code and an optional diagnostic for stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    pub message: Option<String>,
}

const EXACT: &str = "exact";
const NUMERIC_ONLY: &str = "numeric-only";

fn label(cfg: &RunConfig) -> &'static str {
    if cfg.numeric_only {
        NUMERIC_ONLY
    } else {
        EXACT
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CrError::Inconsistency(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CrError::Inconsistency(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CrError::Inconsistency(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CrError::Inconsistency(e.to_string()))
}

pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Outcome> {
    with_jobs(cfg.jobs, || match command {
        Command::Verify => verify(cfg),
        Command::Paneitz => paneitz(cfg),
        Command::Sphere => sphere(cfg),
        Command::Kohn => kohn(cfg),
        Command::BasisDump { pq } => Ok(basis_dump(cfg, *pq)),
    })
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    command: &'static str,
    label: &'static str,
    reports: &'a [VerifyReport],
    passed: bool,
}

#[derive(Serialize)]
struct VerifyCsvRow<'a> {
    t: &'a str,
    seed: u64,
    kind: &'static str,
    check: &'static str,
    passed: bool,
    cases: usize,
    witness: &'a str,
}

fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let opts = VerifyOptions {
        seed: cfg.sample_seed,
        samples: cfg.samples,
        max_degree: cfg.max_degree,
        basis_degree: cfg.max_degree,
        execution: Execution::default(),
    };
    let mut reports = Vec::with_capacity(cfg.t.len());
    let mut first_failure = None;
    for t in &cfg.t {
        let mut geom = connection_data(t)?;
        if cfg.fault == Some(Fault::CorruptOmega) {
            geom = geom.with_omega(geom.omega() + &GaussianRational::i());
        }
        let report = verify_structure_equations(&geom, &opts);
        if first_failure.is_none() {
            first_failure = report.to_result(t).err();
        }
        reports.push(report);
    }
    let passed = first_failure.is_none();
    let output = match cfg.format {
        Format::Json => json(&VerifyOutput {
            command: "verify",
            label: label(cfg),
            reports: &reports,
            passed,
        })?,
        Format::Csv => {
            let mut rows = Vec::new();
            for r in &reports {
                for s in &r.structure_equations {
                    rows.push(VerifyCsvRow {
                        t: &r.t,
                        seed: r.seed,
                        kind: "structure",
                        check: s.name,
                        passed: s.passed,
                        cases: 1,
                        witness: "",
                    });
                }
                for i in &r.identities {
                    rows.push(VerifyCsvRow {
                        t: &r.t,
                        seed: r.seed,
                        kind: "identity",
                        check: i.identity,
                        passed: i.passed,
                        cases: i.cases,
                        witness: i.witness.as_deref().unwrap_or(""),
                    });
                }
            }
            csv_rows(&rows)?
        }
    };
    Ok(Outcome {
        output,
        code: if passed { EXIT_OK } else { EXIT_IDENTITY },
        message: first_failure.map(|e| format!("error: {e}")),
    })
}

#[derive(Serialize)]
struct PaneitzRecord {
    k: usize,
    t: String,
    det_sign: Option<i32>,
    eigenvalues: Vec<f64>,
    negative_count: usize,
    kernel_dim: usize,
    exact_det: Option<String>,
}

#[derive(Serialize)]
struct PaneitzCsvRow<'a> {
    k: usize,
    t: &'a str,
    det_sign: Option<i32>,
    eigenvalues: String,
    negative_count: usize,
    kernel_dim: usize,
    exact_det: Option<&'a str>,
}

#[derive(Serialize)]
struct MatrixDump {
    k: usize,
    t: String,
    det_sign: i32,
    negative_count: usize,
    exact_det: String,
    operator: Vec<Vec<String>>,
    gram: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct PaneitzOutput<'a> {
    command: &'static str,
    label: &'static str,
    precision: usize,
    seed_choice: &'a str,
    records: Vec<PaneitzRecord>,
    reproduced: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failures: Vec<MatrixDump>,
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

fn paneitz(cfg: &RunConfig) -> Result<Outcome> {
    let mut rows = negative_spectrum_sweep(&cfg.t, cfg.k_max, cfg.precision, &cfg.seed_choice, Execution::default())?;
    if cfg.fault == Some(Fault::NegateOperator) {
        for row in &mut rows {
            let pair = MatrixPair {
                a: row.pair.a.scale(&GaussianRational::from_int(-1)),
                g: row.pair.g.clone(),
            };
            row.spectrum = generalized_eigenvalues(&pair, cfg.precision)?;
            row.pair = pair;
        }
    }
    let exact = !cfg.numeric_only;
    let records: Vec<PaneitzRecord> = rows
        .iter()
        .map(|r| PaneitzRecord {
            k: r.k,
            t: to_ratio_string(&r.t),
            det_sign: exact.then_some(r.spectrum.det_sign),
            eigenvalues: r.spectrum.eigenvalues.clone(),
            negative_count: r.spectrum.negative_count,
            kernel_dim: r.spectrum.kernel_dim,
            exact_det: exact.then(|| r.spectrum.exact_det.clone()),
        })
        .collect();
    let failures: Vec<MatrixDump> = rows
        .iter()
        .filter(|r| !r.reproduces())
        .map(|r: &SweepRow| MatrixDump {
            k: r.k,
            t: to_ratio_string(&r.t),
            det_sign: r.spectrum.det_sign,
            negative_count: r.spectrum.negative_count,
            exact_det: r.spectrum.exact_det.clone(),
            operator: matrix_strings(&r.pair.a),
            gram: matrix_strings(&r.pair.g),
        })
        .collect();
    let reproduced = failures.is_empty();
    let message = (!reproduced).then(|| {
        let ks: Vec<String> = failures.iter().map(|f| format!("(k={}, t={})", f.k, f.t)).collect();
        format!("error: negative eigenvalue claim not reproduced at {}", ks.join(", "))
    });
    let output = match cfg.format {
        Format::Json => json(&PaneitzOutput {
            command: "paneitz",
            label: label(cfg),
            precision: cfg.precision,
            seed_choice: &cfg.seed_label,
            records,
            reproduced,
            failures,
        })?,
        Format::Csv => {
            let rows: Vec<PaneitzCsvRow> = records
                .iter()
                .map(|r| PaneitzCsvRow {
                    k: r.k,
                    t: &r.t,
                    det_sign: r.det_sign,
                    eigenvalues: r.eigenvalues.iter().map(f64::to_string).collect::<Vec<_>>().join(";"),
                    negative_count: r.negative_count,
                    kernel_dim: r.kernel_dim,
                    exact_det: r.exact_det.as_deref(),
                })
                .collect();
            let mut out = csv_rows(&rows)?;
            if !reproduced {
                // The CSV table has no room for matrices; append them as JSON.
                out.push_str(&json(&failures)?);
            }
            out
        }
    };
    Ok(Outcome {
        output,
        code: if reproduced { EXIT_OK } else { EXIT_REPRODUCTION },
        message,
    })
}

#[derive(Serialize)]
struct SphereOutput<'a> {
    command: &'static str,
    #[serde(flatten)]
    report: &'a SphereReport,
}

fn sphere(cfg: &RunConfig) -> Result<Outcome> {
    let report = standard_sphere_report(cfg.max_degree, Execution::default())?;
    let output = match cfg.format {
        Format::Json => json(&SphereOutput {
            command: "sphere",
            report: &report,
        })?,
        Format::Csv => csv_rows(&report.blocks)?,
    };
    let message = (!report.passed).then(|| "error: standard sphere eigenvalue laws violated".to_string());
    Ok(Outcome {
        output,
        code: if report.passed { EXIT_OK } else { EXIT_REPRODUCTION },
        message,
    })
}

#[derive(Serialize)]
struct KohnSeries {
    t: String,
    cutoffs: Vec<KohnCutoff>,
    /// Even cutoffs `N = 2, 4, …`; odd degrees add no new minimum.
    trend: Vec<KohnCutoff>,
    strictly_decreasing: bool,
}

#[derive(Serialize)]
struct KohnOutput<'a> {
    command: &'static str,
    label: &'static str,
    precision: usize,
    series: &'a [KohnSeries],
    passed: bool,
}

#[derive(Serialize)]
struct KohnCsvRow<'a> {
    t: &'a str,
    degree: u32,
    min_positive: f64,
}

fn kohn_series(t: &Rational, cfg: &RunConfig) -> Result<KohnSeries> {
    let cutoffs = kohn_min_positive(t, cfg.max_degree, cfg.precision, Execution::default())?;
    let trend: Vec<KohnCutoff> = cutoffs.iter().filter(|c| c.degree % 2 == 0).cloned().collect();
    let strictly_decreasing = trend.windows(2).all(|w| w[1].min_positive < w[0].min_positive);
    Ok(KohnSeries {
        t: to_ratio_string(t),
        cutoffs,
        trend,
        strictly_decreasing,
    })
}

fn kohn(cfg: &RunConfig) -> Result<Outcome> {
    if let Some(t) = cfg.t.iter().find(|t| t.is_zero()) {
        return Err(CrError::InvalidParameter(format!(
            "t = {t}: the standard sphere has closed range, so no accumulation at 0 is expected; use `sphere`"
        )));
    }
    if cfg.max_degree < 2 {
        return Err(CrError::InvalidParameter("kohn needs max-degree >= 2".into()));
    }
    let series = cfg.t.iter().map(|t| kohn_series(t, cfg)).collect::<Result<Vec<_>>>()?;
    let passed = series.iter().all(|s| s.strictly_decreasing);
    let output = match cfg.format {
        Format::Json => json(&KohnOutput {
            command: "kohn",
            label: label(cfg),
            precision: cfg.precision,
            series: &series,
            passed,
        })?,
        Format::Csv => {
            let rows: Vec<KohnCsvRow> = series
                .iter()
                .flat_map(|s| {
                    s.cutoffs.iter().map(|c| KohnCsvRow {
                        t: &s.t,
                        degree: c.degree,
                        min_positive: c.min_positive,
                    })
                })
                .collect();
            csv_rows(&rows)?
        }
    };
    let message = (!passed).then(|| "error: smallest positive Kohn eigenvalue is not strictly decreasing".to_string());
    Ok(Outcome {
        output,
        code: if passed { EXIT_OK } else { EXIT_REPRODUCTION },
        message,
    })
}

fn basis_dump(cfg: &RunConfig, pq: Option<(u32, u32)>) -> Outcome {
    let spaces: Vec<(u32, u32)> = match pq {
        Some(pq) => vec![pq],
        None => (0..=cfg.max_degree)
            .flat_map(|n| (0..=n).rev().map(move |p| (p, n - p)))
            .collect(),
    };
    let mut output = String::new();
    for (p, q) in spaces {
        let space = harmonic_basis(p, q);
        output.push_str(&format!("# H({p},{q}) dim={}\n", space.dim()));
        for f in &space.basis {
            output.push_str(&format!("{f}\n"));
        }
    }
    Outcome {
        output,
        code: EXIT_OK,
        message: None,
    }
}
