use std::path::PathBuf;
use std::process::{Command, Output};

fn hankel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn list_names_every_identity() {
    let o = hankel(&["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for id in [
        "catalan-hankel",
        "gen-catalan-adjacent",
        "path-families",
        "ternary:c",
        "ternary:2-5-1",
        "product-lemma",
    ] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
}

#[test]
fn verify_passes_and_exits_zero() {
    let o = hankel(&["verify", "catalan-pair-fibonacci", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[n=3] = 13"));
    assert!(text.ends_with("5 cases: 5 pass, 0 fail, 0 rhs-undefined, 0 skipped\n"));
}

#[test]
fn json_reports_are_reproducible() {
    let args = [
        "verify",
        "gen-catalan-row-shift",
        "--n-max",
        "3",
        "--samples",
        "3",
        "--format",
        "json",
        "--seed",
        "11",
    ];
    let a = hankel(&args);
    let b = hankel(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("\"run_meta\""));
    assert!(text.contains("\"elapsed_ms\": null"));
    assert!(text.contains("\"seed\": 11"));
    let other = hankel(&[
        "verify",
        "gen-catalan-row-shift",
        "--n-max",
        "3",
        "--samples",
        "3",
        "--format",
        "json",
        "--seed",
        "12",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn csv_to_file() {
    let out = std::env::temp_dir().join(format!("hankel-cli-{}.csv", std::process::id()));
    let o = hankel(&[
        "verify",
        "catalan-hankel-2",
        "--n-max",
        "4",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).ok();
    assert!(text.starts_with("id,params,lhs,rhs,status,engine,elapsed_ms,note\n"));
    assert!(text.contains("catalan-hankel-2,n=4,5,5,pass,fraction-free,,"));
}

#[test]
fn singular_closed_form_is_not_a_failure() {
    let o = hankel(&["verify", "catalan-row-pair", "--alpha", "0,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("RHS-UNDEFINED"));
}

#[test]
fn parameter_errors_exit_two() {
    assert_eq!(
        hankel(&["verify", "gen-catalan-adjacent", "--k", "3", "--beta", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hankel(&["verify", "no-such-identity"]).status.code(),
        Some(2)
    );
    assert_eq!(
        hankel(&["verify", "catalan-hankel", "--engine", "gauss"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hankel(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hankel(&["det"]).status.code(), Some(2));
}

#[test]
fn explicit_path_family_and_product() {
    let o = hankel(&[
        "verify",
        "path-families",
        "--a",
        "0",
        "--b",
        "0",
        "--c",
        "2",
        "--alpha",
        "0,2,3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("via enumeration"));
    let o = hankel(&[
        "verify",
        "product-lemma",
        "--x",
        "1/2,-3,2/3",
        "--upper",
        "1,5/4",
        "--lower",
        "-2,7/3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn det_from_file_with_every_engine() {
    let o = hankel(&["det", "--file", &data("hollow.txt"), "--engine", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text
        .lines()
        .all(|l| l.split_whitespace().nth(1) == Some("60")));
    assert!(text.contains("condensation   60  (row swaps 0, fallbacks 1)"));

    let o = hankel(&["det", "--file", &data("halves.txt"), "--engine", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.contains("13/12")));
    assert!(!stdout(&o).contains("fraction-free"));
}

#[test]
fn malformed_matrix_names_the_position() {
    let o = hankel(&["det", "--file", &data("ragged.txt")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3, column 5"), "{err}");
}

#[test]
fn det_of_identity_matrix() {
    let o = hankel(&[
        "det",
        "--identity",
        "gen-catalan-adjacent",
        "--n",
        "4",
        "--k",
        "3",
        "--beta",
        "1",
        "--show",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("4\n2 3 5 10\n"));
    assert!(text.ends_with("fraction-free  28  (row swaps 0, fallbacks 0)\n"));
    assert_eq!(
        hankel(&["det", "--identity", "path-families", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn path_subcommands() {
    let pts = ["--starts", "0,0;-2,-1", "--ends", "2,1;3,1", "--mu", "2"];
    let run = |sub: &str, extra: &[&str]| {
        let mut args = vec!["paths", sub];
        args.extend_from_slice(&pts);
        args.extend_from_slice(extra);
        hankel(&args)
    };
    assert_eq!(
        stdout(&run("count", &[])),
        "(0,0) -> (2,1): 1\n(-2,-1) -> (3,1): 7\n"
    );
    let listed = stdout(&run("enumerate", &[]));
    assert!(listed.starts_with("(0,0) -> (2,1): 1 paths\n  RRU\n"));
    assert_eq!(
        stdout(&run("families", &[])),
        "families: 1\ndeterminant: 1\n"
    );
    let drawn = stdout(&run("render", &["--family", "0"]));
    assert!(drawn.starts_with("constraint: x >= 2 y\n"));
    assert_eq!(run("render", &["--family", "5"]).status.code(), Some(2));
    assert_eq!(run("enumerate", &["--cap", "2"]).status.code(), Some(2));
    assert_eq!(
        hankel(&["paths", "count", "--starts", "0,0", "--ends", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bench_table() {
    let o = hankel(&[
        "bench",
        "--family",
        "gen-catalan-adjacent",
        "--n-max",
        "8",
        "--engines",
        "laplace,fraction-free",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n,engine,value,median_ms\n"));
    assert!(text.contains("8,laplace,"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("8,laplace,") && l.ends_with(',')));
}
