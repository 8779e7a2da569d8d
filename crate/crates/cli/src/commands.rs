//! The four subcommands. Each renders its table into a string so output is
//! identical whether it goes to stdout or a file.

use std::fmt::Write as _;

use mlwkb::reference;
use mlwkb::validity::{self, well_n_window};
use mlwkb::{Error, PotentialModel, RadialKind, SpectrumRow, SpectrumTable};
use serde::{Deserialize, Serialize};

use crate::config::{Format, PlotKind, RunConfig, System};
use crate::{CliError, Output};

pub const SPECTRUM_HEADER: &str = "n,E_numeric,E_reference,abs_err,rel_err,validity";

/// 17 significant digits in scientific notation, which round-trips.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f).unwrap_or_default()
}

fn error_token(error: &str) -> String {
    let kind = error.split_once(':').map_or(error, |(k, _)| k);
    format!("ERROR:{kind}")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("tables serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_principal: Option<u32>,
    #[serde(rename = "E_numeric")]
    pub e_numeric: Option<f64>,
    #[serde(rename = "E_reference")]
    pub e_reference: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub validity: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<R> {
    pub command: String,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_window: Option<(f64, Option<f64>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chang_gap: Option<f64>,
    pub rows: Vec<R>,
}

impl<R> Document<R> {
    fn new(command: &str, cfg: &RunConfig, rows: Vec<R>) -> Self {
        Self { command: command.into(), config: cfg.clone(), n_window: None, chang_gap: None, rows }
    }
}

fn solve_table(cfg: &RunConfig) -> Result<(SpectrumTable, Option<Box<dyn Fn(u32) -> u32>>), CliError> {
    match cfg.system {
        System::OneDimensional { .. } => Ok((cfg.one_dimensional()?.spectrum(cfg.n_max), None)),
        System::Radial { .. } => {
            let rp = cfg.radial()?;
            Ok((rp.spectrum(cfg.n_max), Some(Box::new(move |n| rp.principal_number(n)))))
        }
    }
}

fn spectrum_record(row: &SpectrumRow, principal: Option<u32>) -> SpectrumRecord {
    SpectrumRecord {
        n: row.n,
        n_principal: principal,
        e_numeric: row.e_numeric,
        e_reference: row.e_reference,
        abs_err: row.abs_err,
        rel_err: row.rel_err,
        validity: row.validity.map(|v| v.as_str().to_string()),
        error: row.error.clone(),
    }
}

pub fn spectrum(cfg: &RunConfig) -> Result<Output, CliError> {
    let (table, principal) = solve_table(cfg)?;
    let records: Vec<SpectrumRecord> = table
        .rows
        .iter()
        .map(|r| spectrum_record(r, principal.as_ref().map(|p| p(r.n))))
        .collect();
    let failures = table.failures();
    let text = match cfg.format {
        Format::Json => to_json(&Document::new("spectrum", cfg, records)),
        Format::Csv => {
            let mut s = format!("{SPECTRUM_HEADER}\n");
            for r in &records {
                let status = match (&r.error, &r.validity) {
                    (Some(e), _) => error_token(e),
                    (None, Some(v)) => v.clone(),
                    (None, None) => String::new(),
                };
                writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.n,
                    fmt_opt(r.e_numeric),
                    fmt_opt(r.e_reference),
                    fmt_opt(r.abs_err),
                    fmt_opt(r.rel_err),
                    status
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Output { text, failures })
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct References {
    wkb_closed: Option<f64>,
    exact: Option<f64>,
    linear: Option<f64>,
    predicted_gap: Option<f64>,
}

impl References {
    fn is_empty(&self) -> bool {
        self.wkb_closed.is_none() && self.exact.is_none() && self.linear.is_none()
    }
}

fn references(cfg: &RunConfig, n: u32) -> References {
    let (beta, beta_prime) = (cfg.beta, cfg.beta_prime);
    match cfg.system {
        System::OneDimensional { potential, mass, .. } => {
            let Ok(prob) = cfg.one_dimensional() else { return References::default() };
            if mass != mlwkb::quantizer::DEFAULT_MASS {
                return References::default();
            }
            let smooth = prob.delta == 0.5;
            match potential {
                PotentialModel::Harmonic if smooth => References {
                    wkb_closed: Some(reference::ho_wkb_closed(n, beta)),
                    exact: Some(reference::ho_exact_kempf(n, beta)),
                    linear: reference::anharmonic_linear(n, 1.0, 2, beta).ok(),
                    predicted_gap: Some(reference::ho_gap_prediction(n, beta)),
                },
                PotentialModel::PowerLaw { gamma, power } if smooth => References {
                    linear: reference::anharmonic_linear(n, gamma, power, beta).ok(),
                    ..References::default()
                },
                PotentialModel::InfiniteWell { width } => References {
                    linear: reference::well_wkb(n, width, beta, prob.delta).ok(),
                    ..References::default()
                },
                PotentialModel::InverseSquare { gamma } => References {
                    linear: reference::inverse_square_small_beta(n, gamma, beta, prob.delta).ok(),
                    ..References::default()
                },
                _ => References::default(),
            }
        }
        System::Radial { kind, l } => {
            let Ok(rp) = cfg.radial() else { return References::default() };
            let principal = rp.principal_number(n);
            match kind {
                RadialKind::Hydrogen { gamma } => References {
                    linear: reference::hydrogen_linear(principal, l, gamma, beta, beta_prime).ok(),
                    predicted_gap: reference::benczik_extra_term(principal, l, gamma, beta, beta_prime).ok(),
                    ..References::default()
                },
                RadialKind::Oscillator => References {
                    linear: reference::osc3d_linear(principal, l, beta, beta_prime).ok(),
                    predicted_gap: Some(reference::chang_gap(beta, beta_prime)),
                    ..References::default()
                },
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub energy: f64,
    /// `E_reference − E_numeric`.
    pub gap: Option<f64>,
    pub rel_gap: Option<f64>,
}

impl Gap {
    fn new(reference: Option<f64>, numeric: Option<f64>) -> Option<Self> {
        let energy = reference?;
        let gap = numeric.map(|e| energy - e);
        Some(Self { energy, gap, rel_gap: gap.map(|g| g / energy.abs()) })
    }

    fn csv(gap: &Option<Self>) -> String {
        match gap {
            Some(g) => format!("{},{},{}", fmt_f(g.energy), fmt_opt(g.gap), fmt_opt(g.rel_gap)),
            None => ",,".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRecord {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_principal: Option<u32>,
    #[serde(rename = "E_numeric")]
    pub e_numeric: Option<f64>,
    pub wkb_closed: Option<Gap>,
    pub exact: Option<Gap>,
    pub linear: Option<Gap>,
    pub predicted_gap: Option<f64>,
    pub error: Option<String>,
}

pub fn compare(cfg: &RunConfig) -> Result<Output, CliError> {
    let (table, principal) = solve_table(cfg)?;
    if table.rows.iter().all(|r| references(cfg, r.n).is_empty()) {
        return Err(Error::NoReferenceAvailable(
            "no closed-form or external reference applies to this configuration".into(),
        )
        .into());
    }
    let records: Vec<CompareRecord> = table
        .rows
        .iter()
        .map(|r| {
            let refs = references(cfg, r.n);
            CompareRecord {
                n: r.n,
                n_principal: principal.as_ref().map(|p| p(r.n)),
                e_numeric: r.e_numeric,
                wkb_closed: Gap::new(refs.wkb_closed, r.e_numeric),
                exact: Gap::new(refs.exact, r.e_numeric),
                linear: Gap::new(refs.linear, r.e_numeric),
                predicted_gap: refs.predicted_gap,
                error: r.error.clone(),
            }
        })
        .collect();
    let chang = match cfg.system {
        System::Radial { kind: RadialKind::Oscillator, .. } => Some(reference::chang_gap(cfg.beta, cfg.beta_prime)),
        _ => None,
    };
    let failures = table.failures();
    let text = match cfg.format {
        Format::Json => {
            let mut doc = Document::new("compare", cfg, records);
            doc.chang_gap = chang;
            to_json(&doc)
        }
        Format::Csv => {
            let mut s = String::new();
            if let Some(c) = chang {
                writeln!(s, "# chang_gap = {}", fmt_f(c)).unwrap();
            }
            let radial = principal.is_some();
            s.push_str(if radial { "n,n_principal," } else { "n," });
            s.push_str(
                "E_numeric,E_wkb_closed,gap_wkb_closed,rel_gap_wkb_closed,E_exact,gap_exact,rel_gap_exact,\
                 E_linear,gap_linear,rel_gap_linear,predicted_gap\n",
            );
            for r in &records {
                let numeric = match &r.error {
                    Some(e) => error_token(e),
                    None => fmt_opt(r.e_numeric),
                };
                if let Some(p) = r.n_principal {
                    write!(s, "{},{p},", r.n).unwrap();
                } else {
                    write!(s, "{},", r.n).unwrap();
                }
                writeln!(
                    s,
                    "{numeric},{},{},{},{}",
                    Gap::csv(&r.wkb_closed),
                    Gap::csv(&r.exact),
                    Gap::csv(&r.linear),
                    fmt_opt(r.predicted_gap)
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Output { text, failures })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityRecord {
    pub n: u32,
    #[serde(rename = "E_numeric")]
    pub e_numeric: Option<f64>,
    pub max_metric: Option<f64>,
    pub lambda: Option<f64>,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub window_empty: Option<bool>,
    pub metric_verdict: Option<String>,
    pub window_verdict: Option<String>,
    pub verdict: Option<String>,
    pub driver: Option<String>,
    pub error: Option<String>,
}

impl ValidityRecord {
    fn failed(n: u32, e_numeric: Option<f64>, err: &Error) -> Self {
        Self {
            n,
            e_numeric,
            max_metric: None,
            lambda: None,
            lambda_min: None,
            lambda_max: None,
            window_empty: None,
            metric_verdict: None,
            window_verdict: None,
            verdict: None,
            driver: None,
            error: Some(format!("{}: {err}", err.kind())),
        }
    }
}

pub fn validity(cfg: &RunConfig) -> Result<Output, CliError> {
    let prob = cfg
        .one_dimensional()
        .map_err(|_| CliError::Config("validity diagnostics apply to one-dimensional problems".into()))?;
    let n_window = match prob.potential {
        PotentialModel::InfiniteWell { width } => Some(well_n_window(width, cfg.beta)),
        _ => None,
    };
    let records: Vec<ValidityRecord> = (prob.first_level()..=cfg.n_max)
        .map(|n| {
            let e = match prob.solve_level(n) {
                Ok(e) => e,
                Err(err) => return ValidityRecord::failed(n, None, &err),
            };
            match validity::assess(&prob, e) {
                Ok(r) => ValidityRecord {
                    n,
                    e_numeric: Some(e),
                    max_metric: Some(r.max_metric),
                    lambda: Some(r.lambda),
                    lambda_min: Some(r.window.lambda_min),
                    lambda_max: Some(r.window.lambda_max),
                    window_empty: Some(r.window.empty),
                    metric_verdict: Some(r.metric_verdict.as_str().into()),
                    window_verdict: Some(r.window_verdict.as_str().into()),
                    verdict: Some(r.verdict.as_str().into()),
                    driver: Some(
                        match r.driver {
                            validity::Driver::LocalMetric => "local_metric",
                            validity::Driver::LambdaWindow => "lambda_window",
                        }
                        .into(),
                    ),
                    error: None,
                },
                Err(err) => ValidityRecord::failed(n, Some(e), &err),
            }
        })
        .collect();
    let failures = records.iter().filter(|r| r.error.is_some()).count();
    let text = match cfg.format {
        Format::Json => {
            let mut doc = Document::new("validity", cfg, records);
            doc.n_window = n_window.map(|(lo, hi)| (lo, hi.is_finite().then_some(hi)));
            to_json(&doc)
        }
        Format::Csv => {
            let mut s = String::new();
            if let Some((lo, hi)) = n_window {
                writeln!(s, "# n_window = ({lo}, {hi})").unwrap();
            }
            if let PotentialModel::InverseSquare { .. } = prob.potential {
                s.push_str("# the metric grows without bound near x = 0; levels are reported regardless\n");
            }
            s.push_str(
                "n,E_numeric,max_metric,lambda,lambda_min,lambda_max,window_empty,\
                 metric_verdict,window_verdict,verdict,driver\n",
            );
            for r in &records {
                let verdict = match &r.error {
                    Some(e) => error_token(e),
                    None => r.verdict.clone().unwrap_or_default(),
                };
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    fmt_opt(r.e_numeric),
                    fmt_opt(r.max_metric),
                    fmt_opt(r.lambda),
                    fmt_opt(r.lambda_min),
                    fmt_opt(r.lambda_max),
                    r.window_empty.map(|b| b.to_string()).unwrap_or_default(),
                    r.metric_verdict.clone().unwrap_or_default(),
                    r.window_verdict.clone().unwrap_or_default(),
                    verdict,
                    r.driver.clone().unwrap_or_default()
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Output { text, failures })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionPlot {
    pub n: u32,
    pub energy: f64,
    pub samples: Vec<(f64, f64)>,
}

pub fn plotdata(cfg: &RunConfig) -> Result<Output, CliError> {
    match cfg.plot.kind {
        PlotKind::Series => {
            let (table, _) = solve_table(cfg)?;
            let failures = table.failures();
            let text = match cfg.format {
                Format::Json => {
                    let records: Vec<SpectrumRecord> = table.rows.iter().map(|r| spectrum_record(r, None)).collect();
                    to_json(&Document::new("plotdata", cfg, records))
                }
                Format::Csv => {
                    let mut s = String::from("n,E_numeric,E_reference\n");
                    for r in &table.rows {
                        let numeric = match &r.error {
                            Some(e) => error_token(e),
                            None => fmt_opt(r.e_numeric),
                        };
                        writeln!(s, "{},{numeric},{}", r.n, fmt_opt(r.e_reference)).unwrap();
                    }
                    s
                }
            };
            Ok(Output { text, failures })
        }
        PlotKind::Wavefunction => {
            let prob = cfg.one_dimensional().map_err(|_| {
                CliError::Config("wavefunction samples apply to one-dimensional problems".into())
            })?;
            let n = cfg.plot.level.unwrap_or(prob.first_level());
            let energy = prob.solve_level(n)?;
            let samples = prob.wkb_wavefunction_samples(energy, cfg.plot.samples)?;
            let text = match cfg.format {
                Format::Json => {
                    let doc = Document::new("plotdata", cfg, vec![WavefunctionPlot { n, energy, samples }]);
                    to_json(&doc)
                }
                Format::Csv => {
                    let mut s = format!("# n = {n}, E = {}\nx,psi\n", fmt_f(energy));
                    for (x, psi) in samples {
                        writeln!(s, "{},{}", fmt_f(x), fmt_f(psi)).unwrap();
                    }
                    s
                }
            };
            Ok(Output { text, failures: 0 })
        }
    }
}
