use std::path::PathBuf;

use diffrest::cli::run;
use diffrest::format::parse_concrete;
use diffrest::representations::{verify_representation, Representation};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

/// Runs the CLI in process; returns the exit code, stdout and stderr.
fn diffrest(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("diffrest").chain(args.iter().copied());
    let code = run(argv.map(String::from), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn verdict_lines(out: &str) -> Vec<&str> {
    out.lines()
        .filter(|l| ["PASS", "FAIL", "INCONCLUSIVE"].iter().any(|t| l.starts_with(t)))
        .collect()
}

#[test]
fn check_passes_on_a_functional_algebra() {
    let (code, out, _) = diffrest(&["check", &data("f2.alg")]);
    assert_eq!(code, 0);
    let lines = verdict_lines(&out);
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().all(|l| l.starts_with("PASS Ax.")));
}

#[test]
fn check_reports_the_ax5_witness() {
    let (code, out, _) = diffrest(&["check", &data("n1.alg")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL Ax.5: (a ⊓ b) ▷ a = a ⊓ b witness a=c b=d"), "{out}");
    assert_eq!(verdict_lines(&out).iter().filter(|l| l.starts_with("FAIL")).count(), 1);
}

#[test]
fn every_output_line_in_structured_mode_is_a_record() {
    for args in [
        vec!["--format", "structured", "check", "f2.alg"],
        vec!["--format", "structured", "laws", "f3.alg"],
        vec!["--format", "structured", "represent", "--mode", "eta", "f4.alg"],
        vec!["--format", "structured", "complete", "f2.alg"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".alg") { data(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, first, _) = diffrest(&args);
        assert_eq!(code, 0, "{args:?}");
        let (_, second, _) = diffrest(&args);
        assert_eq!(first, second, "output differs between runs");
        for line in first.lines() {
            assert!(line.contains('='), "not a record: {line}");
        }
        assert!(!verdict_lines(&first).is_empty());
    }
}

#[test]
fn empty_algebra_has_an_empty_base() {
    let (code, out, _) = diffrest(&["represent", &data("f0.alg")]);
    assert_eq!(code, 0);
    assert!(out.contains("base 1..0"), "{out}");
    assert!(verdict_lines(&out).iter().all(|l| l.starts_with("PASS")));
}

#[test]
fn input_errors_exit_with_2() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let bad = dir.join("bad.alg");
    std::fs::write(&bad, "size 2\nminus\n0 0\n1 7\n").unwrap();
    let (code, _, err) = diffrest(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");

    let (code, _, _) = diffrest(&["check", dir.join("missing.alg").to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _, _) = diffrest(&["check"]);
    assert_eq!(code, 2);
    let (code, _, _) = diffrest(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn emitted_concrete_file_reloads_and_verifies() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    for mode in ["theta", "eta", "atomic-theta", "atomic-eta"] {
        let path = dir.join(format!("{mode}.concrete"));
        let (code, _, _) = diffrest(&[
            "represent",
            "--mode",
            mode,
            "--emit-concrete",
            path.to_str().unwrap(),
            &data("f3.alg"),
        ]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(&path).unwrap();
        let c = parse_concrete(&text).unwrap();
        assert!(verify_representation(&Representation::from_concrete(&c)).passed());
        let (code, out, _) = diffrest(&["check", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
    }
}

#[test]
fn embedding_search_rejects_n1() {
    let (code, out, _) = diffrest(&["search", "embed", "--file", &data("n1.alg"), "--max-base", "3"]);
    assert_eq!(code, 1, "{out}");
    let (code, _, _) = diffrest(&["search", "embed", "--file", &data("f2.alg")]);
    assert_eq!(code, 0);
}

#[test]
fn sampled_completeness_is_inconclusive() {
    let (code, out, _) = diffrest(&["complete", "--exhaustive-cap", "1", "--samples", "50", &data("f4.alg")]);
    assert_eq!(code, 3, "{out}");
    assert!(out.lines().any(|l| l.starts_with("INCONCLUSIVE")));
}

#[test]
fn node_limit_makes_search_inconclusive() {
    let (code, _, _) = diffrest(&["search", "models", "--size", "6", "--node-limit", "10"]);
    assert_eq!(code, 3);
}

#[test]
fn model_search_and_boolean_interpretation() {
    let (code, out, _) = diffrest(&["--format", "structured", "search", "models", "--size", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("check=models size=4 count=4 exhaustive=true"), "{out}");
    let (code, _, _) = diffrest(&["interp-boolean", "--universe", "3"]);
    assert_eq!(code, 0);
}

#[test]
fn random_differential_check_agrees() {
    let (code, out, _) = diffrest(&["--seed", "7", "diff", "--random", "30"]);
    assert_eq!(code, 0, "{out}");
}
