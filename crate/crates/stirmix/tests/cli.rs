use std::process::{Command, Output};

fn stirmix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stirmix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = stirmix(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn compute_prints_one_value() {
    assert_eq!(
        stdout(&["compute", "--family", "mixed", "--n", "6", "--k", "3", "--r", "2"]),
        "780\n"
    );
    for alg in [
        "convolution",
        "element-recurrence",
        "three-case",
        "egf",
        "oracle",
    ] {
        let args = [
            "compute",
            "--family",
            "mixed",
            "--n",
            "6",
            "--k",
            "3",
            "--r",
            "2",
            "--algorithm",
            alg,
        ];
        assert_eq!(stdout(&args), "780\n", "{alg}");
    }
    assert_eq!(
        stdout(&["compute", "--family", "stirling", "--n", "10", "--k", "4"]),
        "34105\n"
    );
    assert_eq!(
        stdout(&[
            "compute",
            "--family",
            "r-stirling",
            "--n",
            "4",
            "--k",
            "3",
            "--r",
            "2"
        ]),
        "5\n"
    );
    assert_eq!(stdout(&["compute", "--family", "bell", "--n", "5"]), "52\n");
}

#[test]
fn oracle_counts_and_lists() {
    let relaxed = [
        "oracle",
        "--n",
        "3",
        "--cells",
        "2,1",
        "--max",
        "2",
        "--label1-empty-ok",
    ];
    assert_eq!(stdout(&relaxed), "9\n");
    let listing = stdout(&[
        "oracle", "--n", "3", "--cells", "2,1", "--max", "2", "--list",
    ]);
    assert_eq!(listing, "{1}{2} | {3}\n{1}{3} | {2}\n{2}{3} | {1}\n3\n");
}

#[test]
fn table_matches_reference_layout() {
    let csv = stdout(&[
        "table", "--family", "mixed", "--r", "3", "--n", "3..7", "--k", "1..5", "--format", "csv",
    ]);
    assert!(csv.starts_with("n,k,value\n3,1,1\n4,1,6\n4,2,4\n"));
    assert!(csv.ends_with("7,4,2520\n7,5,840\n"));
    let text = stdout(&[
        "table", "--family", "mixed", "--k", "2", "--n", "2..4", "--r", "1..3",
    ]);
    assert_eq!(
        text,
        "n\\r   1   2  3\n2     2\n3     6   3\n4    14  18  4\n"
    );
}

#[test]
fn egf_dumps_coefficients() {
    let counts = stdout(&[
        "egf", "--family", "mixed", "--k", "2", "--r", "2", "--order", "5", "--counts",
    ]);
    assert_eq!(counts.lines().nth(4), Some("18"));
    let coeffs = stdout(&["egf", "--family", "stirling", "--k", "2", "--order", "4"]);
    assert_eq!(coeffs.lines().nth(4), Some("7/24"));
}

#[test]
fn invalid_arguments_fail_with_usage() {
    for args in [
        &["compute", "--family", "mixed", "--n", "6", "--k", "3"][..],
        &[
            "table", "--family", "mixed", "--n", "2..6", "--k", "1..5", "--r", "1..5",
        ],
        &[
            "compute", "--family", "stirling", "--n", "4", "--k", "2", "--min", "3", "--max", "2",
        ],
        &["oracle", "--n", "30", "--cells", "2"],
        &["verify", "--max-n", "20"],
        &["frobnicate"],
    ] {
        let out = stirmix(args);
        assert!(!out.status.success(), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("Usage"), "{args:?}: {err}");
    }
}

#[test]
fn strict_verify_passes_on_small_grid() {
    let out = stirmix(&[
        "verify", "--max-n", "6", "--max-k", "3", "--max-r", "3", "--format", "json", "--strict",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["engine_version", "grid", "cases", "timestamp", "digest"] {
        assert!(report.get(key).is_some(), "{key}");
    }
    let case = &report["cases"][0];
    for key in ["id", "status", "points_checked", "counterexamples"] {
        assert!(case.get(key).is_some(), "{key}");
    }
}
