use std::path::PathBuf;
use std::process::{Command, Output};

fn game(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("games");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn tpass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpass"))
        .args(args)
        .output()
        .expect("run tpass")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn solve_pd_finds_defect_defect() {
    let o = tpass(&["solve", &game("pd.json")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("p          (1, 0)"), "{out}");
    assert!(out.contains("q          (1, 0)"), "{out}");
    assert!(out.contains("alpha      0.5"), "{out}");
    assert!(out.contains("beta       0.5"), "{out}");
    assert!(out.contains("oracle         confirmed"), "{out}");
}

#[test]
fn fractions_and_decimals_give_identical_output() {
    let dec = game("pd.json");
    let frac = game("pd_fractions.json");
    for args in [vec!["solve"], vec!["solve", "--format", "json"], vec!["enumerate"]] {
        let mut a = args.clone();
        a.push(&dec);
        let x = tpass(&a);
        let mut b = args.clone();
        b.push(&frac);
        let y = tpass(&b);
        assert_eq!(code(&x), 0);
        assert_eq!(stdout(&x), stdout(&y));
    }
}

#[test]
fn prop3_reports_zero_optimum() {
    let o = tpass(&["solve", &game("pd.json"), "--method", "prop3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("p          (1, 0)"), "{out}");
    assert!(out.contains("objective  0\n"), "{out}");
}

#[test]
fn exit_codes_do_not_depend_on_format() {
    for file in ["pd.json", "pd_misprinted.json", "pd_bimatrix.json"] {
        for cmd in ["solve", "decompose"] {
            let t = code(&tpass(&[cmd, &game(file)]));
            let j = code(&tpass(&[cmd, &game(file), "--format", "json"]));
            assert_eq!(t, j, "{cmd} {file}");
        }
    }
}

#[test]
fn solve_json_has_required_keys() {
    for method in ["lp1", "prop3"] {
        let o = tpass(&["solve", &game("pd.json"), "--method", method, "--format", "json"]);
        assert_eq!(code(&o), 0);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        for key in ["status", "p", "q", "alpha", "beta", "objective", "residuals", "checks"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["status"], "optimal");
        assert_eq!(v["p"], serde_json::json!([1.0, 0.0]));
        assert_eq!(v["checks"]["oracle"], true);
    }
}

#[test]
fn solve_bimatrix_input_is_decomposed_with_notice() {
    let o = tpass(&["solve", &game("pd_bimatrix.json")]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("decomposed"));
    assert!(stdout(&o).contains("p          (1, 0)"));
}

#[test]
fn solve_non_separable_bimatrix_exits_1() {
    let o = tpass(&["solve", &game("pd_misprinted.json")]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
}

#[test]
fn solve_matching_pennies_mixes_evenly() {
    let o = tpass(&["solve", &game("matching_pennies.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("p          (0.5, 0.5)"));
}

#[test]
fn solve_one_by_one() {
    let o = tpass(&["solve", &game("one_by_one.json")]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("alpha      3"), "{out}");
    assert!(out.contains("beta       -3"), "{out}");
}

#[test]
fn verify_cooperate_cooperate_fails() {
    let o = tpass(&["verify", &game("pd.json"), "--p", "0,1", "--q", "0,1"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("row_violation 0.75"), "{out}");
    assert!(out.contains("joint program   FAIL"), "{out}");
}

#[test]
fn verify_defect_defect_passes() {
    let o = tpass(&["verify", &game("pd.json"), "--p", "1,0", "--q", "1/1,0"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("pass").count(), 3);
}

#[test]
fn verify_rejects_bad_strategies() {
    for (p, q) in [("0.6,0.5", "1,0"), ("1,0", "0.5,0.6"), ("1,0", "-0.5,1.5"), ("1,0,0", "1,0"), ("x,1", "1,0")] {
        let o = tpass(&["verify", &game("pd.json"), "--p", p, "--q", q]);
        assert_eq!(code(&o), 2, "p={p} q={q}: {}", stderr(&o));
    }
}

#[test]
fn decompose_misprinted_matrices() {
    let o = tpass(&["decompose", &game("pd_misprinted.json")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("tetrad residual 1.5"));
}

#[test]
fn decompose_recovers_pd() {
    let o = tpass(&["decompose", &game("pd_bimatrix.json"), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["separable"], true);
    assert_eq!(v["A"], serde_json::json!([[0.0, 1.0], [-1.0, 0.0]]));
    assert_eq!(v["pi"], serde_json::json!([0.5, 0.75]));
    assert_eq!(v["rho"], serde_json::json!([0.5, 0.75]));
}

#[test]
fn decompose_one_by_one_is_separable() {
    let o = tpass(&["decompose", &game("one_by_one_bimatrix.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("separable       yes"));
}

#[test]
fn decompose_rejects_tpass_file() {
    assert_eq!(code(&tpass(&["decompose", &game("pd.json")])), 2);
}

#[test]
fn enumerate_line_counts() {
    for (file, lines) in [
        ("matching_pennies.json", 1),
        ("coordination.json", 3),
        ("pd.json", 1),
        ("coordination3.json", 7),
    ] {
        let o = tpass(&["enumerate", &game(file)]);
        assert_eq!(code(&o), 0, "{file}");
        assert_eq!(stdout(&o).lines().count(), lines, "{file}");
    }
    let out = stdout(&tpass(&["enumerate", &game("coordination.json")]));
    assert_eq!(
        out.lines().collect::<Vec<_>>(),
        [
            "p=(1, 0) q=(1, 0) payoffs=(1, 1)",
            "p=(0.5, 0.5) q=(0.5, 0.5) payoffs=(0.5, 0.5)",
            "p=(0, 1) q=(0, 1) payoffs=(1, 1)",
        ]
    );
}

#[test]
fn enumerate_over_cap_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    let path = path.to_str().unwrap();
    assert_eq!(code(&tpass(&["random", "-m", "6", "-n", "2", "-o", path])), 0);
    assert_eq!(code(&tpass(&["enumerate", path])), 2);
}

#[test]
fn demo_pd_reports_equilibrium_and_pareto_cell() {
    let o = tpass(&["demo", "pd"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("p=(1, 0) q=(1, 0) payoffs=(0.5, 0.5)"), "{out}");
    assert!(out.contains("(row 2, col 2) payoffs=(0.75, 0.75)"), "{out}");
    assert!(out.contains("tetrad residual 1.5"), "{out}");

    let o = tpass(&["demo", "pd", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["B"], serde_json::json!([[0.5, 1.5], [-0.25, 0.75]]));
    assert_eq!(v["misprint"]["separable"], false);
}

#[test]
fn demo_unknown_exits_2() {
    assert_eq!(code(&tpass(&["demo", "nope"])), 2);
}

#[test]
fn missing_or_malformed_file_exits_2() {
    assert_eq!(code(&tpass(&["solve", "/nonexistent/game.json"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"kind": "tpass", "A": [[1]], "pi": ["1/0"], "rho": [0]}"#).unwrap();
    let o = tpass(&["solve", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("pi"));
}

#[test]
fn nonpositive_tol_exits_2() {
    assert_eq!(code(&tpass(&["solve", &game("pd.json"), "--tol", "0"])), 2);
}

#[test]
fn random_is_reproducible_and_solvable() {
    let a = tpass(&["random", "-m", "4", "-n", "3", "--seed", "99"]);
    let b = tpass(&["random", "-m", "4", "-n", "3", "--seed", "99"]);
    let c = tpass(&["random", "-m", "4", "-n", "3", "--seed", "100"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));

    let dir = tempfile::tempdir().unwrap();
    for seed in 0..10 {
        let path = dir.path().join(format!("g{seed}.json"));
        let path = path.to_str().unwrap();
        let s = seed.to_string();
        assert_eq!(code(&tpass(&["random", "-m", "4", "-n", "5", "--seed", &s, "-o", path])), 0);
        let o = tpass(&["solve", path, "--format", "json"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["checks"]["best_response"], true);
        assert_eq!(v["checks"]["oracle"], true);
    }
}

#[test]
fn random_one_by_one_is_valid() {
    let o = tpass(&["random", "-m", "1", "-n", "1", "--seed", "5"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "tpass");
    assert_eq!(v["A"].as_array().unwrap().len(), 1);
}

#[test]
fn random_write_failure_exits_3() {
    let o = tpass(&["random", "-m", "2", "-n", "2", "-o", "/nonexistent/dir/g.json"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn random_rejects_bad_bounds() {
    assert_eq!(code(&tpass(&["random", "-m", "0", "-n", "2"])), 2);
    assert_eq!(code(&tpass(&["random", "-m", "2", "-n", "2", "--lo", "1", "--hi", "-1"])), 2);
}
