use std::process::{Command, Output};

use dcech::cli::{CatalogJson, CohomologyJson};
use dcech::scalar::parse_rational;
use dcech::sl2cat::{identify, make_catalog, CatalogName};
use dcech::WeightWindow;

fn dcech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcech"))
        .args(args)
        .env_remove("DCECH_WINDOW")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cohomology_json(args: &[&str]) -> CohomologyJson {
    let mut all = vec!["cohomology"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--format", "json"]);
    let o = dcech(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn mixed_extension_report() {
    let r = cohomology_json(&[
        "--lambda",
        "3",
        "--extension",
        "j_shriek_x_dot_z",
        "--alpha",
        "-2",
        "--window",
        "24",
    ]);
    assert_eq!(r.h0.identified, "R(3,<)");
    assert_eq!(r.h1.identified, "Zero");
    assert_eq!(r.input.lambda, 3);
    assert_eq!(r.input.alpha.as_deref(), Some("-2"));
    assert_eq!(r.input.window, 24);
    assert_eq!(r.h0.casimir.as_deref(), Some("3/2"));
    assert!(r.h1.dims.is_empty());
}

#[test]
fn omega_report() {
    let r = cohomology_json(&["--lambda", "0", "--extension", "omega"]);
    assert_eq!(r.h0.identified, "Zero");
    assert_eq!(r.h1.identified, "L(0)");
    assert_eq!(r.input.window, 24);
    assert_eq!(r.input.alpha, None);
    // single weight 0 = offset + 2n
    let offset = parse_rational(&r.input.offset).unwrap();
    assert_eq!(r.h1.dims.len(), 1);
    let (n, d) = r.h1.dims[0];
    assert_eq!(d, 1);
    assert_eq!(offset + dcech::scalar::q(2 * n), dcech::scalar::q(0));
}

#[test]
fn json_round_trips_through_identification() {
    for (lambda, ext, alpha) in [
        ("2", "j_dot", Some("1/3")),
        ("1", "j_dot", Some("0")),
        ("-2", "iota_x", None),
        ("3", "j_dot_x_shriek_z", Some("-1")),
        ("0", "j_shriek", Some("0")),
    ] {
        let mut args = vec!["--lambda", lambda, "--extension", ext, "--window", "12"];
        if let Some(a) = alpha {
            args.extend_from_slice(&["--alpha", a]);
        }
        let r = cohomology_json(&args);
        let text = serde_json::to_string(&r).unwrap();
        let back: CohomologyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let l: i64 = lambda.parse().unwrap();
        let offset = parse_rational(&r.input.offset).unwrap();
        for h in [&r.h0, &r.h1] {
            let name: CatalogName = h.identified.parse().unwrap();
            let w = WeightWindow::centered(&offset, 12);
            let m = make_catalog(&name, &w).unwrap();
            assert_eq!(identify(&m, l).unwrap(), name, "{ext} λ={lambda}");
        }
    }
}

#[test]
fn module_table() {
    let o = dcech(&["module", "--name", "R(1,>)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("R(1,>)"));
    assert!(text.contains("simple in window: false"));

    let o = dcech(&["module", "--name", "R(1,>)", "--format", "json"]);
    let r: CatalogJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.dims.iter().all(|&(_, d)| d == 1));
    // exactly one rung where e vanishes
    let zero_e: Vec<_> = r.e_ranks.iter().filter(|&&(_, k)| k == 0).collect();
    assert_eq!(zero_e.len(), 1);
    assert!(r.f_ranks.iter().all(|&(_, k)| k == 1));
}

#[test]
fn invalid_arguments_exit_2() {
    let cases: &[&[&str]] = &[
        &["cohomology", "--lambda", "0", "--extension", "nope"],
        &["cohomology", "--lambda", "0", "--extension", "j_dot"],
        &[
            "cohomology",
            "--lambda",
            "0",
            "--extension",
            "omega",
            "--alpha",
            "1/2",
        ],
        &[
            "cohomology",
            "--lambda",
            "0",
            "--extension",
            "j_dot",
            "--alpha",
            "1 / 2",
        ],
        &[
            "cohomology",
            "--lambda",
            "0",
            "--extension",
            "omega",
            "--window",
            "7",
        ],
        &["cohomology", "--lambda", "x", "--extension", "omega"],
        &["module", "--name", "Q(3)"],
        &["verify", "--criterion", "12"],
        &["verify", "--lambda-min", "2", "--lambda-max", "1"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = dcech(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn window_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dcech"))
        .args([
            "cohomology",
            "--lambda",
            "0",
            "--extension",
            "omega",
            "--format",
            "json",
        ])
        .env("DCECH_WINDOW", "10")
        .output()
        .unwrap();
    let r: CohomologyJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.input.window, 10);

    let o = Command::new(env!("CARGO_BIN_EXE_dcech"))
        .args(["cohomology", "--lambda", "0", "--extension", "omega"])
        .env("DCECH_WINDOW", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = [
        "verify",
        "--lambda-min",
        "-1",
        "--lambda-max",
        "1",
        "--criterion",
        "4",
        "--window",
        "10",
        "--format",
        "json",
    ];
    let a = dcech(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    let b = Command::new(env!("CARGO_BIN_EXE_dcech"))
        .args(args)
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&a), stdout(&b));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(!rows.is_empty());
    assert!(rows
        .iter()
        .all(|r| r["passed"] == true && r["criterion"] == 4));
}
