use std::process::{Command, Output};

use mlwkb_cli::commands::{Document, SpectrumRecord};
use mlwkb_cli::config::RunConfig;

fn mlwkb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlwkb")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV document, skipping comments and the header.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(field: &str) -> f64 {
    field.parse().unwrap()
}

#[test]
fn harmonic_spectrum_csv() {
    let out = mlwkb(&["spectrum", "--potential", "harmonic", "--beta", "0.1", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,E_numeric,E_reference,abs_err,rel_err,validity\n"));
    assert!(!text.contains('\r'));
    for (row, want) in rows(&text).iter().zip([1.025, 3.225, 5.625]) {
        assert!((num(&row[1]) - want).abs() < 1e-9);
        assert!((num(&row[2]) - want).abs() < 1e-12);
        // 17 significant digits in scientific notation.
        assert_eq!(row[1].split('e').next().unwrap().len(), 18);
    }
}

#[test]
fn well_and_hydrogen_examples() {
    let text = stdout(&mlwkb(&["spectrum", "--potential", "well", "--width", "1", "--beta", "0", "--delta", "0", "--n-max", "3"]));
    let r = rows(&text);
    assert_eq!(r[0][0], "1");
    for (i, row) in r.iter().enumerate() {
        let k = std::f64::consts::PI * (i + 1) as f64;
        assert!((num(&row[1]) - k * k).abs() < 1e-8);
    }
    let text = stdout(&mlwkb(&[
        "spectrum", "--radial", "hydrogen", "--gamma", "1", "--l", "0", "--beta", "0", "--beta-prime", "0", "--n-max", "2",
    ]));
    let e: Vec<f64> = rows(&text).iter().map(|r| num(&r[1])).collect();
    for (i, got) in e.iter().enumerate() {
        let n = (i + 1) as f64;
        assert!((got + 0.25 / (n * n)).abs() < 1e-10);
    }
}

#[test]
fn partial_failure_exit_code() {
    let out = mlwkb(&["spectrum", "--potential", "well", "--beta", "0.01", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 6);
    assert_eq!(r[5][5], "ERROR:NoBoundRegion");
    assert!(r[5][1].is_empty());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(mlwkb(&["spectrum"]).status.code(), Some(1));
    assert_eq!(mlwkb(&["spectrum", "--potential", "nope"]).status.code(), Some(1));
    assert_eq!(mlwkb(&["spectrum", "--radial", "hydrogen", "--delta", "0"]).status.code(), Some(1));
    assert_eq!(mlwkb(&["validity", "--radial", "oscillator"]).status.code(), Some(1));
    assert_eq!(mlwkb(&["compare", "--potential", "harmonic", "--mass", "2"]).status.code(), Some(1));
    assert_eq!(mlwkb(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(mlwkb(&["--help"]).status.code(), Some(0));
    assert_eq!(mlwkb(&["--version"]).status.code(), Some(0));
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# harmonic run\npotential = harmonic\nbeta = 0.5\nn_max = 1\n").unwrap();
    let path = cfg.to_str().unwrap();
    let from_file = stdout(&mlwkb(&["spectrum", "--config", path]));
    assert!((num(&rows(&from_file)[0][1]) - (1.0 + 0.5 * 0.25)).abs() < 1e-9);
    let overridden = stdout(&mlwkb(&["spectrum", "--config", path, "--beta", "0.1"]));
    assert!((num(&rows(&overridden)[0][1]) - 1.025).abs() < 1e-9);

    std::fs::write(&cfg, "potential = harmonic\ncolour = blue\n").unwrap();
    let out = mlwkb(&["spectrum", "--config", path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown key"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("spectrum.csv");
    let args = ["spectrum", "--potential", "power", "--power-n", "4", "--beta", "0.01", "--n-max", "4"];
    let printed = mlwkb(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", file.to_str().unwrap()]);
    let out = mlwkb(&with_out);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&file).unwrap(), printed);
}

#[test]
fn json_matches_csv_and_round_trips() {
    let base = ["spectrum", "--radial", "oscillator", "--l", "1", "--beta", "0.01", "--beta-prime", "0.005", "--n-max", "3"];
    let csv = stdout(&mlwkb(&base));
    let mut json_args = base.to_vec();
    json_args.extend(["--format", "json"]);
    let json = stdout(&mlwkb(&json_args));
    let doc: Document<SpectrumRecord> = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.command, "spectrum");
    let csv_rows = rows(&csv);
    assert_eq!(csv_rows.len(), doc.rows.len());
    for (c, j) in csv_rows.iter().zip(&doc.rows) {
        assert_eq!(num(&c[0]) as u32, j.n);
        assert_eq!(num(&c[1]), j.e_numeric.unwrap());
        assert_eq!(num(&c[2]), j.e_reference.unwrap());
        assert_eq!(num(&c[3]), j.abs_err.unwrap());
        assert_eq!(j.n_principal, Some(2 * j.n + 1));
    }
    let config_json = serde_json::to_string(&doc.config).unwrap();
    let back: RunConfig = serde_json::from_str(&config_json).unwrap();
    assert_eq!(back, doc.config);
}

#[test]
fn compare_examples() {
    let text = stdout(&mlwkb(&["compare", "--potential", "harmonic", "--beta", "1e-3", "--n-max", "20"]));
    let r = rows(&text);
    assert_eq!(r.len(), 21);
    for row in &r {
        // gap_exact column, about β/4.
        assert!((num(&row[6]) - 2.5e-4).abs() < 1e-5);
        assert!((num(&row[6]) - num(&row[11])).abs() < 1e-9);
    }
    let text = stdout(&mlwkb(&["compare", "--radial", "hydrogen", "--l", "1", "--beta", "1e-3", "--n-max", "0"]));
    let r = rows(&text);
    assert_eq!(r[0][1], "2");
    assert!((num(r[0].last().unwrap()) - 5.208e-6).abs() < 1e-9);
    let out = mlwkb(&["compare", "--radial", "oscillator", "--beta", "0.01", "--beta-prime", "0.005", "--n-max", "1"]);
    assert!(stdout(&out).starts_with("# chang_gap = 1.75"));
}

#[test]
fn validity_examples() {
    let text = stdout(&mlwkb(&["validity", "--potential", "well", "--width", "1", "--beta", "1e-4", "--n-max", "5"]));
    assert!(text.starts_with("# n_window = (1, 2500)\n"));
    for row in rows(&text) {
        assert_eq!(num(&row[2]), 0.0);
        assert_eq!(row[10], "lambda_window");
    }
    let text = stdout(&mlwkb(&["validity", "--potential", "harmonic", "--beta", "0", "--n-max", "0"]));
    assert_ne!(rows(&text)[0][9], "Valid");
    let json = stdout(&mlwkb(&["validity", "--potential", "well", "--beta", "0", "--n-max", "2", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["n_window"], serde_json::json!([1.0, null]));
}

#[test]
fn plotdata_examples() {
    let text = stdout(&mlwkb(&["plotdata", "--potential", "harmonic", "--level", "3", "--samples", "400"]));
    let psi: Vec<f64> = rows(&text).iter().map(|r| num(&r[1])).collect();
    assert_eq!(psi.len(), 400);
    assert_eq!(psi.windows(2).filter(|w| w[0].signum() != w[1].signum()).count(), 3);

    let text = stdout(&mlwkb(&["plotdata", "--potential", "harmonic", "--kind", "series", "--n-max", "6"]));
    for row in rows(&text) {
        assert!((num(&row[1]) - (2.0 * num(&row[0]) + 1.0)).abs() < 1e-9);
    }

    let text = stdout(&mlwkb(&["plotdata", "--potential", "well", "--beta", "0.01", "--kind", "series", "--n-max", "4"]));
    let e: Vec<f64> = rows(&text).iter().map(|r| num(&r[1])).collect();
    let k2: Vec<f64> = (1..=4).map(|n| (std::f64::consts::PI * n as f64).powi(2)).collect();
    // Residual after removing the undeformed n² law has nonzero curvature.
    let d: Vec<f64> = e.iter().zip(&k2).map(|(a, b)| a - b).collect();
    assert!((d[2] - 2.0 * d[1] + d[0]).abs() > 1.0);

    assert_eq!(mlwkb(&["plotdata", "--radial", "hydrogen"]).status.code(), Some(1));
    assert_eq!(mlwkb(&["plotdata", "--potential", "invsq", "--beta", "0.01"]).status.code(), Some(1));
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["spectrum", "--potential", "invsq", "--gamma", "4", "--beta", "0.01", "--delta", "0", "--n-max", "3"];
    assert_eq!(mlwkb(&args).stdout, mlwkb(&args).stdout);
}
