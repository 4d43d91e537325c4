use std::process::{Command, Output};

fn tracecount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracecount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn count_prints_the_exact_value() {
    let out = tracecount(&["count", "P", "--q", "4", "--n", "3", "--t", "0", "--s", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
    assert!(stderr(&out).contains("modulus 0x7"));

    let out = tracecount(&["count", "F", "--q", "4", "--n", "3", "--t", "2", "--s", "3"]);
    assert_eq!(stdout(&out), "7\n");
    let out = tracecount(&[
        "count", "Fstar", "--q", "2", "--n", "2", "--t", "1", "--s", "0",
    ]);
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn count_handles_large_degrees_exactly() {
    let out = tracecount(&[
        "count", "P", "--k", "8", "--n", "40", "--t", "0", "--s", "0",
    ]);
    assert!(out.status.success());
    let f = tracecount::FieldParams::new(8, None).unwrap();
    let zero = tracecount::FieldElement::ZERO;
    let want = tracecount::counting::p_count(f, 40, zero, zero).unwrap();
    assert_eq!(stdout(&out).trim(), want.to_string());
    assert_eq!(want.to_string().len(), 90);
}

#[test]
fn count_json_reports_oracle_agreement() {
    let out = tracecount(&[
        "count", "P", "--q", "8", "--n", "4", "--t", "3", "--s", "5", "--oracle", "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["match"], true);
    assert_eq!(v["count"], v["oracle"]);
    assert_eq!(v["modulus"], 11);
}

#[test]
fn table_pretty_mirrors_the_grid() {
    let out = tracecount(&["table", "F", "--q", "4", "--n", "3", "--format", "pretty"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(3).collect();
    assert_eq!(
        rows,
        [
            "  0 | 7 3 3 3",
            "  1 | 3 7 3 3",
            "  2 | 3 3 3 7",
            "  3 | 3 3 7 3"
        ]
    );
    assert!(text.starts_with("F(3, t, s) over GF(4), modulus 0x7"));
}

#[test]
fn table_csv_for_binary_quartics() {
    let out = tracecount(&["table", "P", "--q", "2", "--n", "4", "--format", "csv"]);
    assert_eq!(stdout(&out), "t,s,count\n0,0,1\n0,1,0\n1,0,1\n1,1,1\n");
}

#[test]
fn json_output_is_stable_across_thread_counts() {
    let args = [
        "table", "F", "--q", "2", "--n", "14", "--oracle", "--format", "json",
    ];
    let one = tracecount(&[&args[..], &["--threads", "1"]].concat());
    let four = tracecount(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn enumerate_lists_in_canonical_order() {
    let out = tracecount(&["enumerate", "--q", "2", "--n", "4"]);
    let text = stdout(&out);
    let polys: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(
        polys,
        ["x^4+x^3+1", "x^4+x+1", "x^4+x^3+x^2+x+1", "count 3"]
    );

    let out = tracecount(&["enumerate", "--q", "2", "--n", "4", "--t", "0", "--s", "0"]);
    assert!(stdout(&out).ends_with("x^4+x+1\ncount 1\n"));
    let out = tracecount(&["enumerate", "--q", "2", "--n", "2"]);
    assert!(stdout(&out).ends_with("x^2+x+1\ncount 1\n"));
    let out = tracecount(&["enumerate", "--q", "4", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 6);
}

#[test]
fn modulus_override_changes_element_names() {
    let out = tracecount(&[
        "show-elements",
        "--k",
        "3",
        "--modulus",
        "0xd",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("modulus 0xd"));
    assert!(stdout(&out).contains("\n6,a^2+a\n"));
    let out = tracecount(&["show-elements", "--k", "3", "--modulus", "0x9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_grid_passes() {
    let out = tracecount(&[
        "verify",
        "--max-k",
        "2",
        "--max-points",
        "16",
        "--max-poly",
        "16",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["totals"]["fail"], 0);
    let grid = v["grid"].as_array().unwrap();
    for n in 2..=4 {
        assert!(grid.iter().any(|g| g["q"] == 2 && g["n"] == n));
    }
}

#[test]
fn verify_rejects_csv() {
    let out = tracecount(&["verify", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let bad_index = tracecount(&["count", "F", "--q", "4", "--n", "3", "--t", "9", "--s", "0"]);
    assert_eq!(bad_index.status.code(), Some(2));
    let missing = tracecount(&["count", "F", "--q", "4"]);
    assert_eq!(missing.status.code(), Some(2));
    let budget = tracecount(&["enumerate", "--q", "2", "--n", "30"]);
    assert_eq!(budget.status.code(), Some(3));
    assert!(stderr(&budget).contains("budget"));
    let sweep = tracecount(&[
        "count", "F", "--q", "4", "--n", "12", "--t", "0", "--s", "0", "--oracle",
    ]);
    assert_eq!(sweep.status.code(), Some(3));
}

#[test]
fn raising_a_budget_is_announced() {
    let out = tracecount(&[
        "count",
        "F",
        "--n",
        "3",
        "--t",
        "0",
        "--s",
        "0",
        "--max-points",
        "99999999",
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("budget raised"));
}

#[test]
fn help_lists_commands_and_flags() {
    let out = tracecount(&["--help"]);
    let text = stdout(&out);
    for word in [
        "count",
        "table",
        "enumerate",
        "verify",
        "show-elements",
        "--ext-modulus",
        "--max-poly",
    ] {
        assert!(text.contains(word), "{word} missing from help");
    }
}

/// Object keys must be exactly the schema's properties, with every required key present.
fn conforms(value: &serde_json::Value, schema: &serde_json::Value) {
    let Some(props) = schema.get("properties") else {
        return;
    };
    let obj = value.as_object().expect("object");
    for key in obj.keys() {
        assert!(props.get(key).is_some(), "unexpected key {key}");
    }
    for key in schema["required"].as_array().unwrap() {
        assert!(obj.contains_key(key.as_str().unwrap()), "missing key {key}");
    }
    for (key, sub) in obj {
        let sub_schema = &props[key];
        match sub {
            serde_json::Value::Object(_) => conforms(sub, sub_schema),
            serde_json::Value::Array(items) => {
                for item in items.iter().filter(|i| i.is_object()) {
                    conforms(item, &sub_schema["items"]);
                }
            }
            _ => {}
        }
    }
}

fn schema(name: &str) -> serde_json::Value {
    let path = format!("{}/../../docs/schemas/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn json_outputs_match_shipped_schemas() {
    let out = tracecount(&["table", "P", "--q", "8", "--n", "3", "--format", "json"]);
    conforms(
        &serde_json::from_slice(&out.stdout).unwrap(),
        &schema("count_table.schema.json"),
    );

    let out = tracecount(&[
        "verify",
        "--max-k",
        "1",
        "--max-points",
        "16",
        "--max-poly",
        "16",
    ]);
    conforms(
        &serde_json::from_slice(&out.stdout).unwrap(),
        &schema("verify_report.schema.json"),
    );
}
