use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recinacc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_rows(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is a JSON object"))
        .collect()
}

fn single_value(args: &[&str]) -> f64 {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = json_rows(&o);
    assert_eq!(rows.len(), 1);
    rows[0]["value"].as_f64().unwrap()
}

#[test]
fn compute_examples() {
    let v = single_value(&[
        "compute", "--dist", "exponential", "--param", "theta=2", "--measure", "kerridge", "--side", "upper", "--n", "3", "--k", "2",
    ]);
    assert!((v - 0.806_852_819_4).abs() < 1e-10);
    let v = single_value(&["compute", "--dist", "uniform", "--measure", "cri", "--side", "upper", "--n", "2", "--k", "1"]);
    assert!((v - 0.5).abs() < 1e-12);
    let v = single_value(&["compute", "--dist", "uniform", "--measure", "kerridge", "--side", "lower", "--n", "4", "--k", "3"]);
    assert!(v.abs() < 1e-12);
}

#[test]
fn methods_agree() {
    let base = ["compute", "--dist", "weibull", "--param", "lambda=2", "--param", "beta=0.5", "--measure", "kerridge", "--n", "3", "--k", "2"];
    let closed = single_value(&[&base[..], &["--method", "closed"]].concat());
    for m in ["quad", "gamma"] {
        let v = single_value(&[&base[..], &["--method", m]].concat());
        assert!((v - closed).abs() < 1e-7, "{m}: {v} vs {closed}");
    }
}

#[test]
fn mc_rows_carry_seed_and_generator() {
    let o = run(&["compute", "--dist", "exponential", "--measure", "kerridge", "--n", "2", "--method", "mc", "--seed", "5", "--samples", "50000"]);
    assert!(o.status.success());
    let row = &json_rows(&o)[0];
    assert_eq!(row["method"], "mc");
    assert_eq!(row["seed"], 5);
    assert!(row["generator"].is_string());
    let (v, err) = (row["value"].as_f64().unwrap(), row["abs_error_estimate"].as_f64().unwrap());
    assert!((v - 2.0).abs() <= err);
}

#[test]
fn table_examples() {
    let o = run(&["table", "--dist", "exponential", "--param", "theta=1", "--measure", "kerridge", "--n", "1..5", "--k", "1..3"]);
    assert!(o.status.success());
    let rows = json_rows(&o);
    assert_eq!(rows.len(), 15);
    let mut i = 0;
    for n in 1..=5 {
        for k in 1..=3 {
            assert_eq!(rows[i]["n"], n);
            assert_eq!(rows[i]["k"], k);
            let v = rows[i]["value"].as_f64().unwrap();
            assert!((v - n as f64 / k as f64).abs() < 1e-12);
            i += 1;
        }
    }

    let o = run(&["table", "--dist", "uniform", "--measure", "cri", "--n", "1..3", "--k", "1"]);
    let values: Vec<f64> = json_rows(&o).iter().map(|r| r["value"].as_f64().unwrap()).collect();
    // partial sums of (i+1)/2^(i+2)
    assert_eq!(values.len(), 3);
    for (v, want) in values.iter().zip([0.25, 0.5, 0.6875]) {
        assert!((v - want).abs() < 1e-12);
    }
}

#[test]
fn csv_header_and_grid_order() {
    let o = run(&[
        "table", "--dist", "pareto", "--measure", "kerridge", "--n", "1..2", "--k", "1", "--param-grid", "theta=5,0.5,2", "--format", "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "measure,dist,params,side,n,k,method,value,abs_error_estimate,seed");
    let rest: Vec<&str> = lines.collect();
    assert_eq!(rest.len(), 6);
    assert!(rest[0].starts_with("kerridge,pareto,theta=0.5,upper,1,1,closed,"));
    assert!(rest[2].starts_with("kerridge,pareto,theta=5,upper,1,1,closed,"));
    assert!(rest[3].starts_with("kerridge,pareto,theta=0.5,upper,2,1,closed,"));
}

#[test]
fn failed_cells_become_error_rows() {
    // pareto(0.5) has divergent cri at k = 1 but not at k = 3
    let o = run(&["table", "--dist", "pareto", "--param", "theta=0.5", "--measure", "cri", "--n", "1", "--k", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_rows(&o);
    assert_eq!(rows[0]["method"], "error");
    assert!(rows[0]["value"].is_null());
    assert!(rows[0]["error"].as_str().unwrap().contains("divergent"));
    assert!(rows[2]["value"].as_f64().is_some());

    let all_fail = run(&["table", "--dist", "pareto", "--param", "theta=0.5", "--measure", "cri", "--n", "1..2", "--k", "1"]);
    assert_eq!(all_fail.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let divergent = run(&["compute", "--dist", "pareto", "--param", "theta=0.5", "--measure", "cri"]);
    assert_eq!(divergent.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&divergent.stderr).contains("divergent"));

    for args in [
        &["table", "--dist", "uniform", "--measure", "cri", "--n", "3..1"][..],
        &["compute", "--dist", "uniform", "--measure", "cri", "--side", "lower"],
        &["compute", "--dist", "uniform", "--measure", "cpi", "--side", "upper"],
        &["compute", "--dist", "exponential", "--param", "theta=-1", "--measure", "kerridge"],
        &["compute", "--dist", "exponential", "--param", "lambda=1", "--measure", "kerridge"],
        &["compute", "--dist", "power-inc", "--param", "m=2.5", "--measure", "kerridge"],
        &["compute", "--dist", "uniform", "--measure", "kl", "--method", "mc"],
        &["compute", "--dist", "power-inc", "--measure", "kerridge", "--method", "closed"],
        &["compute", "--dist", "uniform", "--measure", "kerridge", "--n", "0"],
        &["compute", "--dist", "nope", "--measure", "kerridge"],
        &["verify", "--suite", "nope"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{}", args.join(" "));
    }
}

#[test]
fn generic_measures_compare_record_with_parent() {
    // KL between a law and itself vanishes: the n = 1, k = 1 upper record is the parent
    let v = single_value(&["compute", "--dist", "weibull", "--param", "beta=2", "--measure", "kl"]);
    assert!(v.abs() < 1e-9);
    let v = single_value(&["compute", "--dist", "exponential", "--measure", "kl", "--n", "3"]);
    assert!(v > 0.0);
}

#[test]
fn verify_reports() {
    let dir = std::env::temp_dir().join(format!("recinacc-report-{}", std::process::id()));
    let path = dir.with_extension("json");
    let o = run(&["verify", "--suite", "symmetry", "--report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS symmetry"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(report["suite"], "symmetry");
    assert_eq!(report["passed"], true);
    assert!(report["checks"].as_array().unwrap().len() > 30);
}

#[test]
fn output_is_byte_identical() {
    let args = ["table", "--dist", "exponential", "--measure", "cri", "--n", "1..3", "--k", "1..2", "--method", "mc", "--seed", "9", "--samples", "5000"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suites_pass() {
    for args in [&["verify", "--suite", "propositions"][..], &["verify", "--suite", "oracle", "--seed", "42"]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
}
