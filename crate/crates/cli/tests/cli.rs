use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use supersep_core::combine::{combine_coherent, combine_incoherent, InterferometerLayout};
use supersep_core::optics::BeamGeometry;

fn supersep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supersep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

const COMBINE: &[&str] = &[
    "combine",
    "--mode",
    "both",
    "--b",
    "0.2mm",
    "--s",
    "1.0mm",
    "--lambda",
    "100nm",
    "--x",
    "1.8m",
    "--window",
    "-2.7mm:4.5mm",
];

/// Parses a CSV artifact into (comment, columns, rows).
fn parse_csv(text: &str) -> (String, Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let comment = lines.next().unwrap().to_string();
    let columns = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (comment, columns, rows)
}

#[test]
fn combine_round_trips_bit_exactly() {
    let (comment, columns, rows) = parse_csv(&stdout(&supersep(COMBINE)));
    assert!(comment.starts_with("# supersep combine v"));
    assert_eq!(
        columns,
        ["u_m", "intensity_superseparable", "intensity_coherent"]
    );
    assert_eq!(rows.len(), 4096);
    assert_eq!(rows[0][0], -2.7e-3);
    assert_eq!(rows[4095][0], 4.5e-3);

    let g = BeamGeometry::new(100e-9, 1.8, 1.0).unwrap();
    let layout =
        InterferometerLayout::two_plus_one(0.2e-3, 1.0e-3, g, (-2.7e-3, 4.5e-3), 4096).unwrap();
    let inc = combine_incoherent(&layout).unwrap();
    let coh = combine_coherent(&layout).unwrap();
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row[0].to_bits(), inc.coords()[k].to_bits());
        assert_eq!(row[1].to_bits(), inc.intensities().unwrap()[k].to_bits());
        assert_eq!(row[2].to_bits(), coh.intensities().unwrap()[k].to_bits());
    }
}

#[test]
fn combine_modes_select_columns() {
    let mut args = COMBINE.to_vec();
    args[2] = "coherent";
    args.extend(["--samples", "16"]);
    let (_, columns, rows) = parse_csv(&stdout(&supersep(&args)));
    assert_eq!(columns, ["u_m", "intensity_coherent"]);
    assert_eq!(rows.len(), 16);
}

#[test]
fn identical_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str| {
        let path = dir.path().join(name);
        let mut args = COMBINE.to_vec();
        let p = path.to_str().unwrap().to_string();
        args.extend(["--output", &p]);
        assert!(supersep(&args).status.success());
        fs::read(path).unwrap()
    };
    assert_eq!(write("a.csv"), write("b.csv"));

    let schmudgen = |name: &str| {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap().to_string();
        let args = [
            "schmudgen",
            "--z-angle",
            "1rad",
            "--field",
            "random",
            "--seed",
            "3",
            "--radius",
            "32",
            "--output",
            &p,
        ];
        assert!(supersep(&args).status.success());
        fs::read(path).unwrap()
    };
    assert_eq!(schmudgen("c.csv"), schmudgen("d.csv"));
}

#[test]
fn pattern_defaults_to_two_lobes_about_the_centre() {
    let out = supersep(&[
        "pattern",
        "--n",
        "2",
        "--b",
        "0.2mm",
        "--s",
        "1mm",
        "--lambda",
        "100nm",
        "--x",
        "1.8m",
        "--samples",
        "101",
    ]);
    let (comment, columns, rows) = parse_csv(&stdout(&out));
    assert!(comment.starts_with("# supersep pattern v"));
    assert_eq!(columns, ["u_m", "intensity"]);
    assert_eq!(rows.len(), 101);
    // central sample is the peak 4(b/x)²
    let peak = 4.0 * (0.2e-3f64 / 1.8).powi(2);
    assert!((rows[50][1] - peak).abs() / peak < 1e-12);
    assert!(rows[0][0] < 0.0 && (rows[0][0] + rows[100][0]).abs() < 1e-15);
}

#[test]
fn reeh_examples() {
    let crossing = json(&supersep(&[
        "reeh",
        "--flux-quanta",
        "1",
        "--probe",
        "1,1,-2,2",
    ]));
    assert_eq!(crossing["alpha"], 0.5);
    assert_eq!(crossing["weyl"], false);
    assert_eq!(crossing["phase"], "-1+0i");
    assert_eq!(crossing["bracket_product"], 4);

    // x crosses the axis but y does not, so the phase is trivial
    let half = json(&supersep(&[
        "reeh",
        "--flux-quanta",
        "1",
        "--probe",
        "1,-1,-2,2",
    ]));
    assert_eq!(half["phase"], "1+0i");
    assert_eq!(half["bracket_product"], 0);

    let even = json(&supersep(&[
        "reeh",
        "--flux-quanta",
        "2",
        "--probe",
        "1,1,-2,2",
    ]));
    assert_eq!(even["weyl"], true);
    assert_eq!(even["phase"], "1+0i");

    let quarter = json(&supersep(&[
        "reeh",
        "--alpha",
        "0.25",
        "--probe",
        "1,-1,-2,-2",
    ]));
    assert_eq!(quarter["bracket_product"], -4);
    assert_eq!(quarter["phase"], "0-1i");
}

#[test]
fn plan_reports_detector_distance() {
    let text = stdout(&supersep(&[
        "plan", "--b", "0.2mm", "--s", "1.0mm", "--lambda", "100nm",
    ]));
    assert!(text.lines().any(|l| l == "x_detector_m=1.8"), "{text}");
    assert!(text.lines().any(|l| l == "delta_m=0.0018"));

    let exact = json(&supersep(&[
        "plan", "--b", "0.2mm", "--s", "1.0mm", "--lambda", "100nm", "--format", "json",
    ]));
    assert!((exact["x_detector_m"].as_f64().unwrap() - 1.8).abs() < 1e-12);

    let rb = json(&supersep(&[
        "plan",
        "--b",
        "0.2mm",
        "--s",
        "1.0mm",
        "--lambda",
        "100nm",
        "--species",
        "rb85",
        "--velocity",
        "2m/s",
        "--format",
        "json",
    ]));
    let l = rb["de_broglie_wavelength_m"].as_f64().unwrap();
    assert!((l - 2.35e-9).abs() / 2.35e-9 < 0.01);
}

#[test]
fn sector_report() {
    let r = json(&supersep(&[
        "sector",
        "--box1",
        "1/2*sqrt(8)",
        "--box2",
        "sqrt(2)",
    ]));
    assert_eq!(r["box1"], "sqrt(2)");
    assert_eq!(r["equivalent"], true);
    assert_eq!(r["cross_sector_inner"], "0+0i");
    let r = json(&supersep(&[
        "sector", "--box1", "1", "--box2", "sqrt(2)", "--levels", "2",
    ]));
    assert_eq!(r["equivalent"], false);
    assert_eq!(r["box1_levels"].as_array().unwrap().len(), 2);
}

#[test]
fn schmudgen_summary_meets_the_defect_contract() {
    for angle in ["1.5707963267948966rad", "1.0471975511965976rad"] {
        let r = json(&supersep(&[
            "schmudgen",
            "--z-angle",
            angle,
            "--field",
            "random",
            "--format",
            "json",
        ]));
        assert_eq!(r["grid_size"], 257);
        assert_eq!(r["nonzero_outside_rectangle"], 0);
        assert!(r["max_deviation_in_rectangle"].as_f64().unwrap() < 1e-12);
        assert_eq!(r["weyl"], false);
    }
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn config_runs_match_direct_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plan.json");
    let cfg = write_config(
        dir.path(),
        "plan.json.cfg",
        &format!(
            r#"{{"subcommand": "plan", "parameters": {{"b": "0.2mm", "s": "1.0mm", "lambda": "100nm"}},
                "output_path": {:?}, "output_format": "json"}}"#,
            out.to_str().unwrap()
        ),
    );
    assert!(supersep(&["run", "--config", &cfg]).status.success());
    let direct = stdout(&supersep(&[
        "plan", "--b", "0.2mm", "--s", "1.0mm", "--lambda", "100nm", "--format", "json",
    ]));
    assert_eq!(fs::read_to_string(out).unwrap(), direct);

    let reeh = write_config(
        dir.path(),
        "reeh.cfg",
        r#"{"subcommand": "reeh", "parameters": {"flux_quanta": 1, "probe": [1, 1, -2, 2]}}"#,
    );
    assert_eq!(
        json(&supersep(&["run", "--config", &reeh]))["phase"],
        "-1+0i"
    );
}

#[test]
fn validation_failures_exit_with_status_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<String>> = vec![
        // bare number
        vec!["plan", "--b", "0.2", "--s", "1mm", "--lambda", "100nm"],
        // wavelength not below the slit width
        vec!["plan", "--b", "100nm", "--s", "1mm", "--lambda", "200nm"],
        // probe on an axis
        vec!["reeh", "--alpha", "0.5", "--probe", "0,1,1,1"],
        vec!["reeh", "--alpha", "0.5", "--probe", "1,1,1"],
        vec!["sector", "--box1", "0", "--box2", "1"],
        vec!["schmudgen", "--z-angle", "0rad"],
        vec!["schmudgen", "--z-angle", "1rad", "--s-steps", "100"],
        vec![
            "plan", "--b", "0.2mm", "--s", "1mm", "--lambda", "100nm", "--format", "csv",
        ],
        vec!["run", "--config", "/nonexistent/config.json"],
        vec![
            "plan",
            "--b",
            "0.2mm",
            "--s",
            "1mm",
            "--lambda",
            "100nm",
            "--output",
            "/nonexistent/dir/out.txt",
        ],
        vec!["frobnicate"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = supersep(&refs);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let bad = write_config(
        dir.path(),
        "bad.cfg",
        r#"{"subcommand": "plan", "parameters": {"b": "1parsec"}}"#,
    );
    assert_eq!(supersep(&["run", "--config", &bad]).status.code(), Some(2));
    let nested = write_config(dir.path(), "nested.cfg", r#"{"subcommand": "run"}"#);
    assert_eq!(
        supersep(&["run", "--config", &nested]).status.code(),
        Some(2)
    );
}
