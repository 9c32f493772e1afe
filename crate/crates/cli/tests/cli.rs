use std::collections::HashMap;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fluxhoop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout).unwrap()
}

/// Data rows after the column header, split on commas.
fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

fn columns(text: &str) -> Vec<String> {
    let line = text.lines().find(|l| !l.starts_with('#')).unwrap();
    line.split(',').map(String::from).collect()
}

fn key_values(text: &str) -> HashMap<String, String> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["phase-scan", "--grid", "0.5:1.5:4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["phase-scan", "--grid", "garbage"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["estimate", "--alpha", "-1"]).status.code(), Some(2));
    assert_eq!(
        run(&["phase-scan", "--trunc", "N=1,L=2"]).status.code(),
        Some(2)
    );
    let closed = run(&[
        "static-scan",
        "--axis",
        "energy",
        "--grid",
        "15.5:16:2",
        "--trunc",
        "N=6,L=7",
    ]);
    assert_eq!(closed.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&closed.stderr).contains("closed"));
    assert_eq!(
        run(&["phase-scan", "--grid", "1.1:1.2:2"]).status.code(),
        Some(0)
    );
}

#[test]
fn header_echoes_effective_configuration() {
    let out = stdout(&["phase-scan", "--grid", "1.1:1.2:3"]);
    let head: Vec<&str> = out.lines().take_while(|l| l.starts_with('#')).collect();
    assert_eq!(head[0], format!("# fluxhoop {}", env!("CARGO_PKG_VERSION")));
    assert!(head.contains(&"# command=phase-scan"));
    assert!(head.contains(&"# grid=1.1:1.2:3"));
    assert!(head.contains(&"# units=natural"));
    assert_eq!(
        columns(&out),
        ["E_over_W", "k1R", "delta_rad", "sin2_delta", "re_S", "im_S"]
    );
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# sweep\ngrid = 1.01:1.02:3\nunits = natural\n").unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = stdout(&["phase-scan", "--config", c]);
    assert_eq!(rows(&from_file).len(), 3);
    assert!(from_file.contains("# grid=1.01:1.02:3"));
    let overridden = stdout(&["phase-scan", "--config", c, "--grid", "1.1:1.2:5"]);
    assert_eq!(rows(&overridden).len(), 5);
    assert!(overridden.contains("# grid=1.1:1.2:5"));
    std::fs::write(&cfg, "bogus-key = 1\n").unwrap();
    assert_eq!(run(&["phase-scan", "--config", c]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let args = ["phase-scan", "--grid", "1.001:1.1:7"];
    let direct = stdout(&args);
    let o = run(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}

#[test]
fn phase_scan_rows_are_unitary() {
    let out = stdout(&["phase-scan"]);
    let r = rows(&out);
    assert_eq!(r.len(), 400);
    for row in &r {
        assert!((row[4] * row[4] + row[5] * row[5] - 1.0).abs() < 1e-12);
    }
    // delta passes pi/2 near E/W = 1.013
    let peak = r.iter().max_by(|a, b| a[3].total_cmp(&b[3])).unwrap();
    assert!((peak[0] - 1.013).abs() < 0.003);
}

#[test]
fn static_scan_l1_equals_phase_scan() {
    let grid = "1.05:5.5:25";
    let ps = rows(&stdout(&["phase-scan", "--grid", grid]));
    let st = stdout(&[
        "static-scan",
        "--axis",
        "energy",
        "--grid",
        grid,
        "--trunc",
        "N=0,L=1",
    ]);
    assert_eq!(
        columns(&st),
        [
            "E_over_W",
            "L",
            "re_c1",
            "im_c1",
            "chi",
            "sum_abs_cl_sq_above_1"
        ]
    );
    let st = rows(&st);
    assert_eq!(ps.len(), st.len());
    for (a, b) in ps.iter().zip(&st) {
        assert_eq!(a[0], b[0]);
        assert!((a[4] - b[2]).abs() < 1e-10 && (a[5] - b[3]).abs() < 1e-10);
    }
}

#[test]
fn static_scan_high_energy_rows() {
    let out = stdout(&["static-scan", "--grid", "50:60:2"]);
    assert_eq!(columns(&out)[0], "k1R");
    let r = rows(&out);
    assert_eq!(r.len(), 10);
    for row in r {
        assert!(((row[2] + 1.0).powi(2) + row[3] * row[3]).sqrt() < 0.05);
        assert!(row[4] >= -1e-6);
    }
}

#[test]
fn potential_shape() {
    let r = rows(&stdout(&["potential", "--grid", "0.1:200:2000"]));
    let inner: Vec<_> = r.iter().filter(|x| x[1] == 0.0).collect();
    let outer: Vec<_> = r.iter().filter(|x| x[1] == 1.0).collect();
    assert!(inner.iter().all(|x| x[2] == 0.0 && x[0] <= 1.0));
    assert!(outer.iter().all(|x| x[0] >= 1.0 && x[2] >= 1.0));
    assert!((outer.last().unwrap()[2] - 1.0).abs() < 1e-4);
    let at_r = rows(&stdout(&[
        "potential",
        "--grid",
        "0.5:1:2",
        "--l-values",
        "1",
    ]));
    assert_eq!(at_r.len(), 1);
    assert!((at_r[0][2] - 1.5).abs() < 1e-15);
}

#[test]
fn simple_trial_slope_is_positive() {
    let out = stdout(&["variational", "--trial", "simple"]);
    let kv: HashMap<_, _> = out
        .lines()
        .filter_map(|l| l.strip_prefix("# "))
        .filter_map(|l| l.split_once('='))
        .collect();
    assert!(kv["slope"].parse::<f64>().unwrap() > 0.0);
    assert!(kv["r2"].parse::<f64>().unwrap() > 0.9);
    assert_eq!(
        columns(&out),
        [
            "L",
            "ln_L",
            "channel_energy",
            "cumulative_energy",
            "quotient"
        ]
    );
}

#[test]
fn resonance_report() {
    let kv = key_values(&stdout(&["resonance"]));
    let f = |k: &str| kv[k].parse::<f64>().unwrap();
    assert!((f("tau_times_FWHM_over_hbar") - 1.0).abs() < 1e-15);
    assert!((1.010..=1.016).contains(&f("E_peak_over_W")));
    assert_eq!(kv["tau_abs_unit"], "m_H R^2/hbar");
    let si = key_values(&stdout(&["resonance", "--units", "si"]));
    assert_eq!(si["tau_abs_unit"], "s");
    let tau_si: f64 = si["tau_abs"].parse().unwrap();
    let est = key_values(&stdout(&["estimate"]));
    let m: f64 = est["hoop_mass_kg"].parse().unwrap();
    let r: f64 = est["hoop_radius_m"].parse().unwrap();
    let hbar = 1.054_571_817e-34;
    let expect = f("tau_mH_R2_over_hbar") * m * r * r / hbar;
    assert!((tau_si / expect - 1.0).abs() < 1e-6);
}

#[test]
fn estimate_report() {
    let kv = key_values(&stdout(&["estimate"]));
    let f = |k: &str| kv[k].parse::<f64>().unwrap();
    assert!(f("temperature_K") <= 1e-13);
    assert_eq!(f("lifetime_exponent_n"), 2.5);
    let doubled = key_values(&stdout(&["estimate", "--n", "100"]));
    let t2: f64 = doubled["lifetime_s"].parse().unwrap();
    assert!((t2 / f("lifetime_s") - 2f64.powf(2.5)).abs() < 1e-12);
}
