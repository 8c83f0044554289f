//! End-to-end tests of the `vfsig` binary: exit codes, output schemas,
//! format consistency, and byte-level determinism.

use std::process::{Command, Output};

fn vfsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vfsig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn decompose_table_matches_worked_example() {
    let out = vfsig(&["decompose", "--n", "2", "--d", "2", "--p", "3", "--e", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0      5"), "{text}");
    assert!(text.contains("1      4"), "{text}");
}

#[test]
fn decompose_degree_one_single_row() {
    let out = vfsig(&[
        "decompose",
        "--n",
        "2",
        "--d",
        "1",
        "--p",
        "3",
        "--e",
        "2",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "class,multiplicity\n0,81\n");
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let base = [
        "signature",
        "--n",
        "2",
        "--d",
        "3",
        "--p",
        "7",
        "--e-max",
        "3",
    ];
    let json_out = vfsig(&[&base[..], &["--format", "json"]].concat());
    let csv_out = vfsig(&[&base[..], &["--format", "csv"]].concat());
    assert!(json_out.status.success() && csv_out.status.success());

    let json: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert_eq!(json["schema_version"], serde_json::json!(1));
    assert_eq!(json["command"], serde_json::json!("signature"));
    assert_eq!(json["params"]["e_max"], serde_json::json!(3));
    let rows = json["results"]["rows"].as_array().unwrap();

    let csv = stdout(&csv_out);
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "e,rank,upper,lower,upper_normalized,lower_normalized,gap_normalized,\
         closed_form_limit,closed_form_alt,closed_forms_agree"
    );
    for (row, line) in rows.iter().zip(lines) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], row["e"].as_u64().unwrap().to_string());
        assert_eq!(fields[1], row["rank"].as_str().unwrap());
        assert_eq!(fields[2], row["upper"].as_str().unwrap());
        assert_eq!(fields[3], row["lower"].as_str().unwrap());
        assert_eq!(fields[4], row["upper_normalized"].as_str().unwrap());
        assert_eq!(fields[5], row["lower_normalized"].as_str().unwrap());
    }
}

#[test]
fn signature_final_row_close_to_limit_form() {
    // |upper/rank - 1/2| <= 1e-3 at e = 4 for n=2 d=3 p=7
    let out = vfsig(&[
        "signature",
        "--n",
        "2",
        "--d",
        "3",
        "--p",
        "7",
        "--e-max",
        "4",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = json["results"]["rows"].as_array().unwrap();
    let last = rows.last().unwrap();
    assert_eq!(
        last["upper_normalized"],
        serde_json::json!("2882401/5764801")
    );
    assert_eq!(
        last["lower_normalized"],
        serde_json::json!("2882401/5764801")
    );
    // 2882401/5764801 - 1/2 = 1/11529602, well under 1e-3
    assert_eq!(
        json["results"]["closed_form_limit"],
        serde_json::json!("1/2")
    );
    assert_eq!(
        json["paper_flags"]["closed_forms_agree"],
        serde_json::json!(false)
    );
}

#[test]
fn signature_agreement_flag_when_n_equals_d() {
    let out = vfsig(&[
        "signature",
        "--n",
        "3",
        "--d",
        "3",
        "--p",
        "2",
        "--e-max",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        json["paper_flags"]["closed_forms_agree"],
        serde_json::json!(true)
    );
    assert_eq!(
        json["results"]["closed_form_limit"],
        json["results"]["closed_form_alt"]
    );
}

#[test]
fn chain_examples() {
    let out = vfsig(&["chain", "--n", "3", "--d", "3", "--format", "csv"]);
    assert_eq!(
        stdout(&out),
        "class,source_copies,target_copies,ratio\n0,1,1,1\n"
    );
    let out = vfsig(&["chain", "--n", "2", "--d", "3", "--format", "csv"]);
    assert_eq!(
        stdout(&out),
        "class,source_copies,target_copies,ratio\n0,2,1,1/2\n1,1,1,1\n"
    );
    let out = vfsig(&["chain", "--n", "3", "--d", "5", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let recs = json["results"]["records"].as_array().unwrap();
    assert_eq!(recs[0]["source_copies"], serde_json::json!("12"));
    assert_eq!(recs[0]["target_copies"], serde_json::json!("2"));
}

#[test]
fn verify_minors_examples_and_certificates() {
    let out = vfsig(&["verify-minors", "--n", "2", "--r", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("rank 3/3"));

    let out = vfsig(&["verify-minors", "--n", "1", "--r", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("rank 1/1"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certs.json");
    let out = vfsig(&[
        "verify-minors",
        "--n",
        "3",
        "--r",
        "3",
        "--certificates",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        json["results"]["certificates"]["count"],
        serde_json::json!(10)
    );
    assert_eq!(
        json["results"]["certificates"]["all_verified"],
        serde_json::json!(true)
    );
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let certs = file["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 10);
    assert!(certs
        .iter()
        .all(|c| c["verified"] == serde_json::json!(true)));
    assert!(certs
        .iter()
        .all(|c| c["target_sign"] == serde_json::json!(1)));
}

#[test]
fn fsig_worked_example() {
    let out = vfsig(&[
        "fsig", "--n", "2", "--d", "2", "--p", "3", "--e", "1", "--format", "csv",
    ]);
    assert_eq!(
        stdout(&out),
        "n,d,p,e,rank,splitting_number,estimate\n2,2,3,1,9,5,5/9\n"
    );
}

#[test]
fn invalid_input_exits_2() {
    // p not prime
    let out = vfsig(&["decompose", "--n", "2", "--d", "3", "--p", "9", "--e", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // bad source class
    let out = vfsig(&[
        "decompose",
        "--n",
        "2",
        "--d",
        "3",
        "--p",
        "2",
        "--e",
        "1",
        "--source-class",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // signature requires coprime p, d
    let out = vfsig(&[
        "signature",
        "--n",
        "2",
        "--d",
        "4",
        "--p",
        "2",
        "--e-max",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guard_exceeded_exits_3() {
    let out = vfsig(&[
        "verify-minors",
        "--n",
        "4",
        "--r",
        "5",
        "--max-minors",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = vfsig(&[
        "decompose",
        "--n",
        "2",
        "--d",
        "100",
        "--p",
        "3",
        "--e",
        "1",
        "--max-enum",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn experimental_route_for_shared_factor() {
    let out = vfsig(&[
        "decompose",
        "--n",
        "2",
        "--d",
        "2",
        "--p",
        "2",
        "--e",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["results"]["experimental"], serde_json::json!(true));
    // 32 of the 64 vectors pass the mod-p^s filter, all assigned to class 0
    assert_eq!(json["results"]["total"], serde_json::json!("32"));
    assert_eq!(
        json["results"]["classes"][0]["multiplicity"],
        serde_json::json!("32")
    );
    assert_eq!(
        json["results"]["classes"][1]["multiplicity"],
        serde_json::json!("0")
    );
    // table output carries the marker
    let out = vfsig(&["decompose", "--n", "2", "--d", "2", "--p", "2", "--e", "3"]);
    assert!(stdout(&out).contains("[EXPERIMENTAL]"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for format in ["table", "csv", "json"] {
        let args = [
            "signature",
            "--n",
            "3",
            "--d",
            "4",
            "--p",
            "5",
            "--e-max",
            "2",
            "--format",
            format,
        ];
        let a = vfsig(&args);
        let b = vfsig(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let args = [
        "decompose",
        "--n",
        "2",
        "--d",
        "3",
        "--p",
        "2",
        "--e",
        "4",
        "--format",
        "csv",
    ];
    let direct = vfsig(&args);
    let with_out = vfsig(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert!(with_out.status.success());
    assert!(stdout(&with_out).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&direct));
}
