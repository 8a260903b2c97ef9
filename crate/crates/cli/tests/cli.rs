use std::path::Path;
use std::process::{Command, Output};

fn zeno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeno")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Data rows of the table titled `title`, as strings.
fn table<'a>(csv: &'a str, title: &str) -> Vec<Vec<&'a str>> {
    let marker = format!("# table: {title}");
    let mut lines = csv.lines().skip_while(|l| *l != marker).skip(2);
    let mut rows = Vec::new();
    for l in lines.by_ref() {
        if l.is_empty() || l.starts_with('#') {
            break;
        }
        rows.push(l.split(',').collect());
    }
    rows
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn demo_default() {
    let o = zeno(&["demo"]);
    assert!(o.status.success());
    assert_eq!(table(&stdout(&o), "zeno demo")[0][..2], ["10", "0.780546069781"]);
    assert!(stderr(&o).is_empty());
}

#[test]
fn minimal_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"command":"demo","parameters":{"N":{"value":1,"unit":"dimensionless"}}}"#);
    let o = zeno(&["--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(table(&stdout(&o), "zeno demo")[0][1], "0");
}

#[test]
fn unit_mismatch_names_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"command":"demo","parameters":{"N":{"value":1,"unit":"eV"}}}"#);
    let o = zeno(&["--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`N`"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let o = zeno(&["demo", "--N", "3 eV"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`N`"));
}

#[test]
fn strict_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "a.json", r#"{"command":"demo","colour":"blue"}"#);
    let o = zeno(&["--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"));
    let cfg = write(dir.path(), "b.json", r#"{"command":"demo","parameters":{"kappa":{"value":1,"unit":"dimensionless"}}}"#);
    let o = zeno(&["--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`kappa`"));
    let cfg = write(dir.path(), "c.json", r#"{"command":"demo","parameters":{"N":{"value":1,"unit":"dimensionless","x":0}}}"#);
    assert_eq!(zeno(&["--config", &cfg]).status.code(), Some(2));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(zeno(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(zeno(&[]).status.code(), Some(2));
    assert_eq!(zeno(&["gate", "--branches", "4"]).status.code(), Some(2));
    assert_eq!(zeno(&["absorber", "--preset", "x-ray"]).status.code(), Some(2));
    assert_eq!(zeno(&["demo", "--N", "0"]).status.code(), Some(2));
    assert!(zeno(&["--help"]).status.success());
}

#[test]
fn infeasible_design_exit_three() {
    let o = zeno(&["design", "--P", "0.5", "--N_max", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("infeasible"));
}

#[test]
fn io_failure_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/out.csv");
    let o = zeno(&["demo", "--output", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let o = zeno(&["--config", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn print_config_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["gate", "--N", "25", "--kappa", "300", "--control"],
        vec!["enhance", "phases", "--emitters", "500", "--trials", "20", "--seed", "9"],
        vec!["absorber", "--preset", "lambda", "--delta", "2e9 s^-1", "--kappa", "54"],
        vec!["curve", "--samples", "5", "--format", "json"],
    ] {
        let direct = zeno(&args);
        assert!(direct.status.success(), "{args:?}: {}", stderr(&direct));
        let mut pc = args.clone();
        pc.push("--print-config");
        let printed = zeno(&pc);
        assert!(printed.status.success());
        let cfg = write(dir.path(), "effective.json", &stdout(&printed));
        let replay = zeno(&["--config", &cfg]);
        assert!(replay.status.success(), "{}", stderr(&replay));
        assert_eq!(stdout(&direct), stdout(&replay), "{args:?}");
    }
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"command":"demo","parameters":{"N":{"value":4,"unit":"dimensionless"}},"seed":5}"#);
    let o = zeno(&["demo", "--config", &cfg, "--N", "10"]);
    let out = stdout(&o);
    assert_eq!(table(&out, "zeno demo")[0][0], "10");
    assert!(out.contains("# seed: 5"));
    let o = zeno(&["gate", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn byte_identical_reruns() {
    let a = zeno(&["enhance", "phases", "--emitters", "300", "--trials", "30", "--seed", "77"]);
    let b = zeno(&["enhance", "phases", "--emitters", "300", "--trials", "30", "--seed", "77"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let rows = table(&text, "random phase sum");
    assert_eq!(rows[0][2], "77");
    let c = zeno(&["enhance", "phases", "--emitters", "300", "--trials", "30", "--seed", "78"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = zeno(&["gate", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), zeno(&["gate"]).stdout);
}

#[test]
fn every_column_has_a_unit() {
    for args in [vec!["gate"], vec!["absorber"], vec!["tables"], vec!["curve", "--samples", "3"], vec!["enhance", "pump"]] {
        let out = stdout(&zeno(&args));
        let mut lines = out.lines().peekable();
        while let Some(l) = lines.next() {
            if l.starts_with("# table:") {
                let header = lines.next().unwrap();
                for col in header.split(',') {
                    assert!(col.ends_with(']') && col.contains(" ["), "{args:?}: {col}");
                }
            }
        }
    }
}

#[test]
fn single_segment_control_changes_errors() {
    let on = stdout(&zeno(&["gate", "--branches", "3", "--N", "1", "--kappa", "1e9", "--control"]));
    let off = stdout(&zeno(&["gate", "--branches", "3", "--N", "1", "--kappa", "1e9"]));
    let header: Vec<&str> = on.lines().find(|l| l.starts_with("branches")).unwrap().split(',').collect();
    let col = header.iter().position(|c| c.starts_with("p_error_exact")).unwrap();
    let eps = std::f64::consts::PI / 2f64.sqrt();
    let p_on: f64 = table(&on, "gate")[0][col].parse().unwrap();
    let p_off: f64 = table(&off, "gate")[0][col].parse().unwrap();
    // opaque absorber: the photon stays only through the cos(eps) arm
    assert!((p_on - eps.sin().powi(2)).abs() < 1e-11);
    assert!((p_off - (1.0 - eps.sin().powi(4))).abs() < 1e-3);
}

#[test]
fn tables_match_published_kappa() {
    let out = stdout(&zeno(&["tables", "--format", "csv"]));
    assert_eq!(out.matches("# table:").count(), 4);
    let published = [
        (0.5, 8, 22.0),
        (0.5, 10, 12.0),
        (0.5, 40, 8.0),
        (0.25, 20, 120.0),
        (0.25, 25, 76.0),
        (0.25, 70, 55.0),
        (0.1, 50, 1430.0),
        (0.1, 60, 760.0),
        (0.1, 160, 440.0),
    ];
    let rows = table(&out, "kappa by error and segments");
    assert_eq!(rows.len(), published.len());
    for (row, (p, n, k)) in rows.iter().zip(published) {
        assert_eq!(row[0].parse::<f64>().unwrap(), p);
        assert_eq!(row[1].parse::<u32>().unwrap(), n);
        let kappa: f64 = row[2].parse().unwrap();
        assert!((kappa / k - 1.0).abs() <= 0.2, "{row:?}");
    }
}

#[test]
fn json_output_parses() {
    let o = zeno(&["design", "--P", "0.25", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["strategy"], "min_N");
    assert_eq!(rows[0]["N"], 18);
    assert_eq!(v["provenance"]["seed"], "0");
    assert!(v["provenance"]["config_sha256"].as_str().unwrap().len() == 64);
}
