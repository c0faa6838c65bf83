use std::fs;
use std::process::{Command, Output};

use rydgate::cli::output::{read_csv, write_trajectory, SWEEP_HEADER, TRAJECTORY_HEADER};
use rydgate::gate::{run_gate, GateConfig, GateResult, InitialState};
use rydgate::model::{SystemParams, ONE_ONE};

fn rydgate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rydgate"))
        .args(args)
        .env_remove("RYDGATE_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn trajectory_csv_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = rydgate(&[
        "simulate",
        "--pulse",
        "gaussian",
        "--ratio",
        "1.3",
        "--initial",
        "1m1a",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());

    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().nth(1) == Some(TRAJECTORY_HEADER));
    let table = read_csv(&text).unwrap();
    assert_eq!(table.meta_value("initial"), Some("1m1a"));

    let expected = run_gate(
        &GateConfig::gsc(SystemParams::ideal(1.0), 1.3).with_initial(InitialState::Basis(ONE_ONE)),
    )
    .unwrap();
    assert_eq!(table.rows.len(), expected.times.len());
    for (row, (t, pops)) in table
        .rows
        .iter()
        .zip(expected.times.iter().zip(&expected.populations))
    {
        assert_eq!(row[0].unwrap().to_bits(), t.to_bits());
        for k in 0..8 {
            assert_eq!(row[1 + k].unwrap().to_bits(), pops[k].to_bits());
        }
        assert_eq!(row[10], None);
    }
    let phases = table.column("phase").unwrap();
    for (got, want) in phases.iter().zip(expected.tracked_phase.as_ref().unwrap()) {
        assert_eq!(got.map(f64::to_bits), want.map(f64::to_bits));
    }
}

#[test]
fn empty_trajectory_is_meta_plus_header() {
    let config = GateConfig::gsc(SystemParams::ideal(1.0), 1.3);
    let result = GateResult {
        config,
        duration: 0.0,
        dt: 1e-3,
        steps: 0,
        times: vec![],
        populations: vec![],
        tracked_phase: None,
        fidelity: Some(vec![]),
    };
    let mut buf = Vec::new();
    write_trajectory(&mut buf, &result).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("# meta: "));
    assert_eq!(lines[1], TRAJECTORY_HEADER);
}

#[test]
fn detuning_sweep_has_one_row_per_point() {
    let out = rydgate(&[
        "sweep", "--axis", "detuning", "--min", "-1", "--max", "1", "--points", "101",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().nth(1), Some(SWEEP_HEADER));
    let table = read_csv(&text).unwrap();
    assert_eq!(table.rows.len(), 101);
    assert!(table.rows.iter().all(|r| r[1].is_some() && r[2].is_none()));
    assert_eq!(table.rows[100][0], Some(1.0));
}

#[test]
fn output_is_identical_across_worker_counts() {
    let args = [
        "sweep",
        "--axis",
        "rel-err-g",
        "--min",
        "-0.1",
        "--max",
        "0.1",
        "--points",
        "9",
    ];
    let one = rydgate(&[&["--workers", "1"], &args[..]].concat());
    let four = rydgate(&[&args[..], &["--workers", "4"]].concat());
    let env = Command::new(env!("CARGO_BIN_EXE_rydgate"))
        .args(args)
        .env("RYDGATE_WORKERS", "2")
        .output()
        .unwrap();
    assert!(one.status.success() && four.status.success() && env.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, env.stdout);
    assert_eq!(one.stdout, rydgate(&args).stdout);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "# rectangular gate\npulse = rect\nratio = 2.9\npolar-ratio = 10\n",
    )
    .unwrap();

    let out = rydgate(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let table = read_csv(&stdout(&out)).unwrap();
    assert_eq!(table.meta_value("pulse"), Some("rectangular"));
    assert_eq!(table.meta_value("polar_ratio"), Some("1e1"));
    let peak: f64 = table.meta_value("peak_rabi").unwrap().parse().unwrap();
    assert!((peak - 1.0 / 2.9).abs() < 1e-15);

    let out = rydgate(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--ratio",
        "2",
    ]);
    let table = read_csv(&stdout(&out)).unwrap();
    let peak: f64 = table.meta_value("peak_rabi").unwrap().parse().unwrap();
    assert_eq!(peak, 0.5);
}

#[test]
fn bad_config_exits_one() {
    let out = rydgate(&["simulate", "--config", "/definitely/not/here.cfg"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "warp = 9\n").unwrap();
    let out = rydgate(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warp"));
}

#[test]
fn usage_errors_are_reported_on_stderr() {
    for args in [
        vec!["simulate", "--no-such-flag"],
        vec!["simulate", "--ratio", "abc"],
        vec!["sweep"],
    ] {
        let out = rydgate(&args);
        assert_ne!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = rydgate(&["simulate", "--initial", "2m1a"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn example_prints_one_fidelity_line() {
    let out = rydgate(&["example"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    let f: f64 = text.trim().parse().unwrap();
    assert!(f > 0.98 && f < 1.0);
}

#[test]
fn help_mentions_every_subcommand() {
    let out = rydgate(&["--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for sub in ["simulate", "sweep", "figures", "example", "--workers"] {
        assert!(text.contains(sub), "{sub}");
    }
}
