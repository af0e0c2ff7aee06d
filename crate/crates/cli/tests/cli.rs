mod common;

use common::*;
use serde_json::Value;

fn json_of(o: &std::process::Output) -> Value {
    assert!(o.status.success(), "{}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn preprocess_reports_counts_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let f = fixture("regular-16");
    let o = run(&["preprocess", f.to_str().unwrap(), "-o", a.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("visibility pairs |E|: 120"), "{text}");
    assert!(text.contains("cells: ") && text.contains("critical values |D|: ") && text.contains("wall time: "));
    run(&["preprocess", f.to_str().unwrap(), "-o", b.to_str().unwrap()]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn corrupted_or_mismatched_artifacts_are_refused() {
    let dir = tempfile::tempdir().unwrap();
    let a = artifact(dir.path(), "unit-square");
    let text = std::fs::read_to_string(&a).unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, text.replacen("\"version\": 1", "\"version\": 7", 1)).unwrap();
    let o = run(&["query-single", "-a", bad.to_str().unwrap(), "-d", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("version"));
    std::fs::write(&bad, text.replacen("\"right\": 0", "\"right\": 1", 1)).unwrap();
    let o = run(&["query-single", "-a", bad.to_str().unwrap(), "-d", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("hash"), "{}", stderr(&o));
    let o = run(&["query-single", "-a", a.to_str().unwrap(), "-d", "0.5", "--workspace", fixture("triangle").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("different workspace"));
    let o = run(&["query-single", "-a", a.to_str().unwrap(), "-d", "0.5", "--workspace", fixture("unit-square").to_str().unwrap()]);
    assert!(o.status.success());
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    let out = dir.path().join("out.json");
    std::fs::write(&ws, "{\"outer\": [[0, 0], [1, 0],\n [1, 0], [0, 1]]}").unwrap();
    let o = run(&["preprocess", ws.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid polygon"), "{}", stderr(&o));
    std::fs::write(&ws, "{\"outer\": [[0, 0], [1, 0],\n [1, \"1/0\"], [0, 1]]}").unwrap();
    let o = run(&["preprocess", ws.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = run(&["preprocess", dir.path().join("missing.json").to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let a = artifact(dir.path(), "unit-square");
    let o = run(&["query-single", "-a", a.to_str().unwrap(), "-d", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("positive"));
    let o = run(&["query-antipodal", "-a", a.to_str().unwrap(), "--d1", "0", "--d2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_env(&["query-single", "-a", a.to_str().unwrap(), "-d", "0.5"], &[("LOCALIZER_EPS", "-3")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_env(&["query-single", "-a", a.to_str().unwrap(), "-d", "0.5", "--json"], &[("LOCALIZER_EPS", "1e-7")]);
    assert_eq!(json_of(&o)["eps"], 1e-7);
}

#[test]
fn unit_square_band() {
    let dir = tempfile::tempdir().unwrap();
    let a = artifact(dir.path(), "unit-square");
    let svg = dir.path().join("band.svg");
    let o = run(&["query-single", "-a", a.to_str().unwrap(), "-d", "0.15", "--json", "--regions", "--svg", svg.to_str().unwrap()]);
    let v = json_of(&o);
    assert_valid(&schema("single-report.schema.json"), &v);
    assert!(v["region_count"].as_u64().unwrap() > 0);
    assert_eq!(v["regions"].as_array().unwrap().len() as u64, v["region_count"].as_u64().unwrap());
    let svg = std::fs::read_to_string(svg).unwrap();
    assert!(svg.contains("class=\"regions\""));
    assert_eq!(svg.matches("data-cell").count() as u64, v["region_count"].as_u64().unwrap());
    // plain text listing
    let o = run(&["query-single", "-a", a.to_str().unwrap(), "-d", "0.15"]);
    assert!(stdout(&o).starts_with("d = 0.15: "));
}

#[test]
fn too_long_reading_has_no_poses() {
    let dir = tempfile::tempdir().unwrap();
    let a = artifact(dir.path(), "unit-square");
    let svg = dir.path().join("empty.svg");
    let o = run(&["query-single", "-a", a.to_str().unwrap(), "-d", "1.5", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no poses"));
    assert!(!std::fs::read_to_string(svg).unwrap().contains("regions"));
    let o = run(&["query-single", "-a", a.to_str().unwrap(), "-d", "1.5", "--json"]);
    let v = json_of(&o);
    assert_eq!(v["notice"], "no poses");
    assert!(stderr(&o).contains("no poses"));
    assert_valid(&schema("single-report.schema.json"), &v);
    let o = run(&["query-antipodal", "-a", a.to_str().unwrap(), "--d1", "1", "--d2", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no poses"));
}

#[test]
fn simple_polygon_pictures_differ() {
    let dir = tempfile::tempdir().unwrap();
    let a = artifact(dir.path(), "simple-polygon");
    let mut pics = Vec::new();
    for d in ["0.3", "4", "5"] {
        let svg = dir.path().join(format!("{d}.svg"));
        let o = run(&["query-single", "-a", a.to_str().unwrap(), "-d", d, "--svg", svg.to_str().unwrap()]);
        assert!(o.status.success());
        let s = std::fs::read_to_string(svg).unwrap();
        assert!(s.contains("data-cell"), "d = {d}");
        pics.push(s);
    }
    assert!(pics[0] != pics[1] && pics[1] != pics[2] && pics[0] != pics[2]);
}

fn intervals(v: &Value) -> Value {
    serde_json::json!([v["intervals"], v["bands"]])
}

#[test]
fn antipodal_engines_agree_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let schema = schema("antipodal-report.schema.json");
    for (name, d1, d2) in [("three-rooms", "0.4", "0.9"), ("simple-polygon", "1", "1"), ("simple-polygon", "1", "1.2"), ("unit-square", "0.5", "0.5")] {
        let a = artifact(dir.path(), name);
        let q = |engine: &str| {
            let o = run(&["query-antipodal", "-a", a.to_str().unwrap(), "--d1", d1, "--d2", d2, "--engine", engine, "--json"]);
            let v = json_of(&o);
            assert_valid(&schema, &v);
            v
        };
        let (r, p) = (q("rtd"), q("opt"));
        assert_eq!(intervals(&r), intervals(&p), "{name} {d1} {d2}");
        assert!(!r["intervals"].as_array().unwrap().is_empty() || !r["bands"].as_array().unwrap().is_empty(), "{name}");
    }
    let a = artifact(dir.path(), "simple-polygon");
    let q = |d2: &str| {
        let svg = dir.path().join(format!("{d2}.svg"));
        let o = run(&["query-antipodal", "-a", a.to_str().unwrap(), "--d1", "1", "--d2", d2, "--json", "--svg", svg.to_str().unwrap()]);
        assert!(std::fs::read_to_string(svg).unwrap().contains("class=\"arc\""));
        json_of(&o)
    };
    assert_ne!(intervals(&q("1")), intervals(&q("1.2")));
}

#[test]
fn oracle_command() {
    let dir = tempfile::tempdir().unwrap();
    let a = artifact(dir.path(), "triangle");
    let schema = schema("oracle-report.schema.json");
    let o = run(&["oracle", "-a", a.to_str().unwrap(), "--resolution", "60", "--angles", "180", "single", "-d", "1"]);
    let v = json_of(&o);
    assert_valid(&schema, &v);
    assert_eq!(v["passed"], true);
    assert!(v["oracle_poses"].as_u64().unwrap() > 0);
    let o = run(&["oracle", "-a", a.to_str().unwrap(), "--resolution", "60", "--angles", "180", "antipodal", "--d1", "0.5", "--d2", "0.7"]);
    let v = json_of(&o);
    assert_valid(&schema, &v);
    assert_eq!(v["passed"], true, "{v}");
}

#[test]
fn shipped_files_match_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let ws_schema = schema("workspace.schema.json");
    let art_schema = schema("artifact.schema.json");
    for name in ["unit-square", "square-hole", "triangle", "three-rooms", "simple-polygon", "comb", "spiky-16", "regular-16"] {
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_valid(&ws_schema, &doc);
        let a = artifact(dir.path(), name);
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(a).unwrap()).unwrap();
        assert_valid(&art_schema, &doc);
    }
    assert!(!ws_schema.is_valid(&serde_json::json!({"outer": [["1/", "0"], [1, 0], [0, 1]]})));
    assert!(ws_schema.is_valid(&serde_json::json!({"outer": [["1/3", "-2.5e3"], [1, 0], [0, 1]]})));
}
