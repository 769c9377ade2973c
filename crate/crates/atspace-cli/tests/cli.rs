//! End to end tests of the atspace binary: exit codes, document shapes,
//! and byte stability of the JSON output.

use std::process::{Command, Output};

fn atspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a json document")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn section_names(doc: &serde_json::Value) -> Vec<String> {
    doc["sections"]
        .as_array()
        .expect("sections array")
        .iter()
        .map(|s| s["name"].as_str().expect("section name").to_owned())
        .collect()
}

fn section<'a>(doc: &'a serde_json::Value, name: &str) -> &'a serde_json::Value {
    doc["sections"]
        .as_array()
        .expect("sections array")
        .iter()
        .find(|s| s["name"] == name)
        .unwrap_or_else(|| panic!("section {name} present"))
}

#[test]
fn verify_passes_on_the_29_vertex_instance() {
    let out = atspace(&["verify", "--q", "2", "--N", "2", "--M", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));

    let doc = json_of(&out);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["params"]["q"], 2);
    assert_eq!(doc["params"]["N"], 2);
    assert_eq!(doc["params"]["M"], 2);
    assert_eq!(
        section_names(&doc),
        [
            "counting",
            "relations",
            "spectrum",
            "band_profile",
            "decomposition",
            "psi_sums",
            "leonard_profiles"
        ]
    );

    assert_eq!(section(&doc, "counting")["details"]["vertices"], 29);
    let identities = section(&doc, "relations")["details"]["identities"]
        .as_array()
        .unwrap();
    assert_eq!(identities.len(), 27);
    let records = section(&doc, "spectrum")["details"]["records"]
        .as_array()
        .unwrap();
    assert_eq!(records.len(), 5);
    let witnesses = section(&doc, "decomposition")["details"]["witnesses"]
        .as_array()
        .unwrap();
    assert_eq!(witnesses.len(), 18);
    let profiles = section(&doc, "leonard_profiles")["details"]["profiles"]
        .as_array()
        .unwrap();
    assert_eq!(profiles.len(), 18);
}

#[test]
fn composite_q_is_refused() {
    let out = atspace(&["verify", "--q", "4", "--N", "2", "--M", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("q must be prime"));
    assert!(out.stdout.is_empty());
}

#[test]
fn oversized_instances_are_refused_with_the_predicted_count() {
    let out = atspace(&["verify", "--q", "2", "--N", "5", "--M", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("71299041"));
}

#[test]
fn spectrum_emits_exact_eigenvalue_pairs() {
    let out = atspace(&["spectrum", "--q", "2", "--N", "2", "--M", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let records = section(&doc, "spectrum")["details"]["records"]
        .as_array()
        .unwrap();
    assert_eq!(records.len(), 5);
    assert_eq!(records[1]["index"], "1/2");
    assert_eq!(records[1]["theta"]["a"], "0");
    assert_eq!(records[1]["theta"]["b"], "2");
    assert_eq!(records[1]["dim"], 9);

    let band = &section(&doc, "band_profile")["details"];
    assert_eq!(band["adjacency"], true);
    assert_eq!(band["integers_then_halves"]["banded"], true);
    assert_eq!(band["halves_then_integers"]["banded"], true);
    // Natural order couples indices two apart, so it is not banded.
    assert_eq!(band["nonzero"][0][2], true);
    assert_eq!(band["nonzero"][0][1], false);
}

#[test]
fn spectrum_of_the_three_vertex_instance_has_a_zero_middle_eigenvalue() {
    let out = atspace(&["spectrum", "--q", "2", "--N", "1", "--M", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let records = section(&doc, "spectrum")["details"]["records"]
        .as_array()
        .unwrap();
    assert_eq!(records.len(), 3);
    assert_eq!(records[1]["theta"]["a"], "0");
    assert_eq!(records[1]["theta"]["b"], "0");
}

#[test]
fn decompose_reports_the_module_diagram() {
    let out = atspace(&["decompose", "--q", "2", "--N", "2", "--M", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let classes = section(&doc, "diagram")["details"]["classes"]
        .as_array()
        .unwrap();
    let rows: Vec<(String, u64)> = classes
        .iter()
        .map(|c| {
            (
                c["predicted"].as_str().unwrap().to_owned(),
                c["observed"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        rows,
        [
            ("1".to_owned(), 1),
            ("9".to_owned(), 9),
            ("2".to_owned(), 2),
            ("6".to_owned(), 6)
        ]
    );
    let samples = section(&doc, "modules")["details"]["samples"]
        .as_array()
        .unwrap();
    assert_eq!(samples.len(), 4);

    let out = atspace(&["decompose", "--q", "3", "--N", "2", "--M", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let classes = section(&doc, "diagram")["details"]["classes"]
        .as_array()
        .unwrap();
    let observed: Vec<u64> = classes
        .iter()
        .map(|c| c["observed"].as_u64().unwrap())
        .collect();
    assert_eq!(observed, [1, 8, 3]);
}

#[test]
fn verify_passes_on_a_surd_instance() {
    let out = atspace(&["verify", "--q", "3", "--N", "2", "--M", "1"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let doc = json_of(&out);
    assert_eq!(doc["pass"], true);
    let records = section(&doc, "spectrum")["details"]["records"]
        .as_array()
        .unwrap();
    // theta_0 = 4 sqrt(3) on this instance.
    assert_eq!(records[0]["theta"]["a"], "0");
    assert_eq!(records[0]["theta"]["b"], "4");
}

#[test]
fn json_documents_are_byte_stable_and_match_the_out_file() {
    let args = ["verify", "--q", "2", "--N", "2", "--M", "1"];
    let first = atspace(&args);
    let second = atspace(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let path = std::env::temp_dir().join("atspace-cli-out-test.json");
    let path_text = path.to_str().expect("utf8 temp path");
    let third = atspace(&["verify", "--q", "2", "--N", "2", "--M", "1", "--out", path_text]);
    assert_eq!(third.status.code(), Some(0));
    assert!(third.stdout.is_empty(), "--out leaves stdout empty");
    let written = std::fs::read(&path).expect("out file written");
    assert_eq!(written, first.stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn tables_carry_the_same_sections_with_surds_spelled_out() {
    let out = atspace(&[
        "verify", "--q", "2", "--N", "2", "--M", "2", "--format", "table",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("overall: PASS"));
    for name in [
        "counting",
        "relations",
        "spectrum",
        "band_profile",
        "decomposition",
        "psi_sums",
        "leonard_profiles",
    ] {
        assert!(text.contains(&format!("== {name}: PASS ==")));
    }
    assert!(text.contains("2*sqrt(2)"));
}

#[test]
fn report_appends_the_sample_section() {
    let out = atspace(&["report", "--q", "2", "--N", "1", "--M", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let names = section_names(&doc);
    assert_eq!(names.last().map(String::as_str), Some("samples"));
    assert_eq!(names.len(), 8);
}

#[test]
fn build_emits_the_vertex_list() {
    let out = atspace(&["build", "--q", "2", "--N", "1", "--M", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let vertices = section(&doc, "poset")["details"]["vertices"]
        .as_array()
        .unwrap();
    assert_eq!(vertices.len(), 3);
    assert_eq!(vertices[0]["dim"], 0);
    assert_eq!(vertices[1]["u"][0][0], 1);
    let covers = section(&doc, "poset")["details"]["covers_down"]
        .as_array()
        .unwrap();
    assert_eq!(covers[1][0], 0, "rank one vertices cover the empty space");
}

#[test]
fn sweeps_stop_at_the_first_capacity_refusal() {
    let out = atspace(&["verify", "--all", "--cap", "50"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(
        err.contains("[q=3 N=2 M=1] leonard_profiles: PASS"),
        "instances under the cap still run: {err}"
    );
    assert!(err.contains("predicted vertex count 205 exceeds the cap of 50"));
}
