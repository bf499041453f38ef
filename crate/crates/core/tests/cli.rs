use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cr-spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn verify_default_passes_and_names_identities() {
    let out = run(&["verify", "--samples", "4", "--max-degree", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    let reports = v["reports"].as_array().unwrap();
    let ts: Vec<&str> = reports.iter().map(|r| r["t"].as_str().unwrap()).collect();
    assert_eq!(ts, ["0/1", "1/2", "-1/3"]);
    assert_eq!(reports[0]["seed"], 20);
    let names: Vec<&str> = reports[1]["identities"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["identity"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"paneitz_routes") && names.contains(&"self_adjoint"));
}

#[test]
fn verify_rejects_non_pseudoconvex_t() {
    let out = run(&["verify", "--t", "3/2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("1 − t² > 0"));
}

#[test]
fn verify_fault_injection_exits_2() {
    let out = run(&[
        "verify",
        "--t",
        "1/2",
        "--samples",
        "2",
        "--max-degree",
        "2",
        "--inject-fault",
        "corrupt-omega",
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["passed"], false);
    let help = run(&["verify", "--help"]);
    assert!(!String::from_utf8_lossy(&help.stdout).contains("inject-fault"));
}

#[test]
fn paneitz_half_has_ten_rows() {
    let out = run(&["paneitz", "--t", "1/2", "--kmax", "10"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 10);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["k"], i + 1);
        assert_eq!(r["t"], "1/2");
        assert_eq!(r["det_sign"], -1);
        assert_eq!(r["negative_count"], 1);
        assert_eq!(r["kernel_dim"], 0);
        assert_eq!(r["eigenvalues"].as_array().unwrap().len(), i + 1);
        assert!(r["exact_det"].as_str().unwrap().starts_with('-'));
    }
    assert_eq!(records[0]["exact_det"], "-3/4");
}

#[test]
fn paneitz_exit_codes() {
    assert_eq!(code(&run(&["paneitz", "--t", "0"])), 1);
    assert_eq!(code(&run(&["paneitz", "--t", "1/3", "--kmax", "5"])), 0);
    assert_eq!(code(&run(&["paneitz", "--kmax", "0"])), 1);
    assert_eq!(code(&run(&["paneitz", "--precision", "32"])), 1);
    assert_eq!(code(&run(&["paneitz", "--t", "0.5"])), 1);
    assert_eq!(code(&run(&["paneitz", "--format", "xml"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn paneitz_failure_dumps_matrices() {
    let out = run(&[
        "paneitz",
        "--t",
        "1/2",
        "--kmax",
        "2",
        "--inject-fault",
        "negate-operator",
    ]);
    assert_eq!(code(&out), 3);
    let v = stdout_json(&out);
    assert_eq!(v["reproduced"], false);
    let failure = &v["failures"][0];
    assert_eq!(failure["k"], 1);
    assert_eq!(failure["operator"][0][0], "3/8");
    assert_eq!(failure["gram"][0][0], "1/2");
}

#[test]
fn float_t_is_numeric_only() {
    let out = run(&["paneitz", "--t", "0.5", "--float-t", "--kmax", "2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["label"], "numeric-only");
    assert!(v["records"][0]["det_sign"].is_null());
    assert!(v["records"][0]["exact_det"].is_null());
}

#[test]
fn csv_mirrors_json() {
    let out = run(&["paneitz", "--t", "1/3", "--kmax", "2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,t,det_sign,eigenvalues,negative_count,kernel_dim,exact_det");
    assert_eq!(lines[1], "1,1/3,-1,-0.3333333333333333,1,0,-1/3");
    assert_eq!(lines.len(), 3);
}

#[test]
fn sphere_and_kohn() {
    let out = run(&["sphere", "--max-degree", "8"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["kohn_min_positive"], "1/1");
    let kernel: Vec<(u64, u64)> = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b["in_kernel"] == true)
        .map(|b| (b["p"].as_u64().unwrap(), b["q"].as_u64().unwrap()))
        .collect();
    assert!(kernel.iter().all(|(p, q)| p * q == 0));
    assert_eq!(kernel.len(), 17);

    assert_eq!(code(&run(&["kohn", "--t", "0"])), 1);
    let out = run(&["kohn", "--t", "1/2,9/10"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    for s in v["series"].as_array().unwrap() {
        assert_eq!(s["strictly_decreasing"], true);
        assert_eq!(s["trend"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn basis_dump_format() {
    let out = run(&["basis", "dump", "--p", "2", "--q", "1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# H(2,1) dim=4");
    assert_eq!(lines.len(), 5);
    for l in &lines[1..] {
        let f: cr_spectra::algebra::Polynomial = l.parse().unwrap();
        assert!(f.is_homogeneous_of(2, 1));
    }
    let all = String::from_utf8(run(&["basis", "dump", "--max-degree", "2"]).stdout).unwrap();
    assert_eq!(all.lines().filter(|l| l.starts_with("# H(")).count(), 6);
    assert_eq!(code(&run(&["basis", "dump", "--p", "2"])), 1);
}

#[test]
fn config_file_with_overrides_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    fs::write(&cfg, "# sweep\nt = 1/3, -1/2\nkmax = 6\nprecision = 192\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = run(&[
        "paneitz",
        "--config",
        cfg,
        "--kmax",
        "3",
        "--out",
        a.to_str().unwrap(),
        "--jobs",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let out = run(&[
        "paneitz",
        "--config",
        cfg,
        "--kmax",
        "3",
        "--out",
        b.to_str().unwrap(),
        "--jobs",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let (a, b) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["precision"], 192);
    assert_eq!(v["records"].as_array().unwrap().len(), 6);
    assert_eq!(v["records"][3]["t"], "-1/2");

    let bad = dir.path().join("bad.conf");
    fs::write(&bad, "colour = red\n").unwrap();
    assert_eq!(code(&run(&["paneitz", "--config", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["paneitz", "--config", "/nonexistent/run.conf"])), 1);
}

#[test]
fn seed_choices() {
    let dir = tempfile::tempdir().unwrap();
    let seeds = dir.path().join("seeds.txt");
    fs::write(&seeds, "z\n(0)+(1)i*z^3 + 2*w^3\nz^5 - w^5\n").unwrap();
    let choice = format!("file:{}", seeds.display());
    let out = run(&["paneitz", "--kmax", "3", "--seed-choice", &choice]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["seed_choice"], choice);
    assert_eq!(code(&run(&["paneitz", "--kmax", "4", "--seed-choice", &choice])), 1);
    assert_eq!(code(&run(&["paneitz", "--kmax", "3", "--seed-choice", "random:7"])), 0);
    assert_eq!(code(&run(&["paneitz", "--seed-choice", "bogus"])), 1);
}
