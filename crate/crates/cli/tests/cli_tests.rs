//! End-to-end tests of the `lowerk` binary: output formats, exit codes, and
//! agreement between the CLI surface and the library API.

use std::process::{Command, Output};

use lowerk::assembly::assemble;
use lowerk::catalog;
use lowerk::KValue;

fn lowerk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowerk"))
        .args(args)
        .output()
        .expect("failed to launch the lowerk binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is not UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is not UTF-8")
}

#[test]
fn compute_text_matches_the_reference_line() {
    let out = lowerk(&["compute", "[3,5,3]", "--format", "text"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "Wh = Z^3 + infZ2; K0t = infZ2; Km1 = Z^4; K<=-2 = 0\n"
    );
}

#[test]
fn compute_json_round_trips_through_the_library_types() {
    let out = lowerk(&["compute", "[3,5,3]", "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("invalid JSON");
    assert_eq!(value["group"], "[3,5,3]");

    let expected = assemble(&catalog::lookup("[3,5,3]").unwrap().diagram())
        .unwrap()
        .normalized();
    for (key, want) in [
        ("Wh", &expected.wh),
        ("K0t", &expected.k0_tilde),
        ("Km1", &expected.k_minus1),
        ("Kbelow", &expected.k_below),
    ] {
        let got: KValue = serde_json::from_value(value[key].clone())
            .unwrap_or_else(|e| panic!("field {key} does not deserialize: {e}"));
        assert_eq!(&got, want, "field {key}");
    }
}

#[test]
fn exact_mode_keeps_multiplicities_that_normalization_collapses() {
    let normalized = stdout(&lowerk(&["compute", "[(3,4)^[2]]", "--format", "text"]));
    let exact = stdout(&lowerk(&[
        "compute",
        "[(3,4)^[2]]",
        "--exact",
        "--format",
        "text",
    ]));
    assert!(exact.contains("infZ2^2"), "exact output: {exact}");
    assert!(exact.contains("Nil1^2"), "exact output: {exact}");
    assert!(
        !normalized.contains("infZ2^2"),
        "normalized output: {normalized}"
    );
    assert!(
        normalized.contains("infZ2"),
        "normalized output: {normalized}"
    );
}

#[test]
fn unknown_names_exit_with_usage_error() {
    let out = lowerk(&["compute", "[bogus]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("UnknownName"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn missing_arguments_exit_with_usage_error() {
    let out = lowerk(&[]);
    assert_eq!(out.status.code(), Some(2));

    let out = lowerk(&["compute"]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
}

#[test]
fn verify_all_reports_the_three_known_divergences() {
    let out = lowerk(&["verify", "--all"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("29/32 pass"), "output: {text}");
    assert!(text.contains("[6,3,6]: MISMATCH"), "output: {text}");
    assert!(text.contains("[5,3^[3]]: MISMATCH"), "output: {text}");
    assert!(text.contains("[3,3^[3]]: MISMATCH"), "output: {text}");
    assert!(text.contains("[4,3,5]: ok"), "output: {text}");
}

#[test]
fn verify_single_entry_succeeds_for_a_clean_row() {
    let out = lowerk(&["verify", "[4,3,5]"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "[4,3,5]: ok\n");
}

#[test]
fn list_names_every_catalog_entry_grouped_by_ideal_vertices() {
    let out = lowerk(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for entry in catalog::entries() {
        assert!(text.contains(&entry.name), "missing {}", entry.name);
    }
    assert!(text.contains("# no ideal vertices"), "output: {text}");
    assert!(text.contains("# four ideal vertices"), "output: {text}");
}

#[test]
fn stabilizers_render_amalgams_with_multiplicities() {
    let out = lowerk(&["stabilizers", "[3,5,3]", "--format", "text"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("(D_3 x Z/2) *_{D_3} D_6 (twice)"),
        "output: {}",
        stdout(&out)
    );
}

#[test]
fn oracle_reports_component_counts_for_d5() {
    let out = lowerk(&["oracle", "D_5"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("invalid JSON");
    assert_eq!(value["order"], 10);
    assert_eq!(value["r"], 4);
    assert_eq!(value["q"], 3);
    assert_eq!(value["wh_rank"], 1);
    assert_eq!(value["carter_k_minus1_rank"], 0);
    assert_eq!(value["k_classes"]["Q"], 3);
    assert_eq!(value["k_classes"]["Qp(2)"], 3);
    assert_eq!(value["k_classes"]["Qp(5)"], 3);
    assert_eq!(value["k_classes"]["F(2)"], 2);
    assert_eq!(value["k_classes"]["F(5)"], 2);
}

#[test]
fn matrix_file_input_recovers_the_named_group() {
    let path = std::env::temp_dir().join(format!("lowerk-cli-test-{}.txt", std::process::id()));
    std::fs::write(&path, "rank 4\n1 3 2 2\n3 1 5 2\n2 5 1 3\n2 2 3 1\n").unwrap();
    let out = lowerk(&[
        "compute",
        "--matrix",
        path.to_str().unwrap(),
        "--format",
        "text",
    ]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "Wh = Z^3 + infZ2; K0t = infZ2; Km1 = Z^4; K<=-2 = 0\n"
    );
}

#[test]
fn tables_render_the_noncocompact_k_rows() {
    let out = lowerk(&["tables", "--which", "7"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("[5,3,6] | Z^5 | infZ2 | Z^3 + infZ2"),
        "output: {}",
        stdout(&out)
    );

    let out = lowerk(&["tables", "--which", "9"]);
    assert_eq!(out.status.code(), Some(2));
}
