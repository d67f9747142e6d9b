use std::process::Command;

use clap::Parser;
use twisted_pairing::cli::{fixtures_dir, run, Cli, FIXTURES_ENV};
use twisted_pairing::document::Document;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twisted-pairing"))
}

fn report(args: &[&str]) -> twisted_pairing::cli::Report {
    let mut full = vec!["twisted-pairing"];
    full.extend_from_slice(args);
    run(&Cli::try_parse_from(full).unwrap())
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

#[test]
fn figure_eight_prints_two_except_in_characteristic_two() {
    for f in ["q", "p:3", "p:5", "p:7"] {
        let r = report(&["--field", f, "bullet", "--records", "figure_eight.json"]);
        assert_eq!(r.exit, 0);
        assert_eq!(line(&r.text, "bullet"), "2");
    }
    let r = report(&["--field", "p:2", "bullet", "figure_eight.json"]);
    assert_eq!(line(&r.text, "bullet"), "0");
}

#[test]
fn empty_records_give_zero() {
    let r = report(&["bullet", "--records", "empty_records.json"]);
    assert_eq!(r.exit, 0);
    assert_eq!(line(&r.text, "bullet"), "0");
}

#[test]
fn bullet_agrees_with_pair_on_the_surface_fixtures() {
    for (file, a, b) in [("torus.json", "a", "b"), ("genus2.json", "a2", "b2"), ("genus2.json", "b5", "a2")] {
        let bullet = report(&["bullet", file, "--cycles", &format!("{a},{b}")]);
        let pair = report(&["pair", file, "--class", a, "--class", b]);
        assert_eq!(pair.exit, 0, "{}", pair.text);
        assert_eq!(line(&pair.text, "consistent"), "true");
        assert_eq!(line(&bullet.text, "bullet"), line(&pair.text, "cover"));
        assert_eq!(line(&bullet.text, "bullet"), line(&pair.text, "bullet"));
    }
    let r = report(&["pair", "genus2.json", "--class", "a2", "--class", "b2"]);
    assert_ne!(line(&r.text, "bullet"), "0");
}

#[test]
fn cover_is_free_over_the_group_ring() {
    let r = report(&["cover", "torus.json", "--p", "3", "--beta", "twisted"]);
    assert_eq!(r.exit, 0);
    assert_eq!(line(&r.text, "free"), "true");
    assert_eq!(line(&r.text, "cover_cells"), "[21, 63, 42]");
    let r = report(&["cover", "torus.json", "--p", "3"]);
    assert_eq!(r.exit, 2, "two classes β need --beta");
}

#[test]
fn cohomology_of_the_torus() {
    let r = report(&["cohomology", "torus.json"]);
    assert_eq!(line(&r.text, "H^1"), "2");
    assert_eq!(line(&r.text, "cone[twisted]"), "[1, 2, 1]");
    let r = report(&["cohomology", "torus_complex.json"]);
    assert_eq!(line(&r.text, "euler"), "1");
}

#[test]
fn cone_check_passes_on_bundled_models() {
    for file in ["torus_model.json", "synthetic_model.json"] {
        let r = report(&["cone-check", file]);
        assert_eq!(r.exit, 0, "{}", r.text);
        assert_eq!(line(&r.text, "chain_map"), "true");
    }
}

#[test]
fn bound_reports() {
    let r = report(&["bound", "spheres_family.json"]);
    assert_eq!(r.exit, 0);
    assert_eq!(line(&r.text, "independent"), "true");
    let r = report(&["bound", "tori_family.json"]);
    assert_eq!(line(&r.text, "independent"), "n/a");
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("tp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"version": 1, "kind": "records"}"#).unwrap();
    let out = bin().args(["bullet", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let model = dir.join("open.json");
    std::fs::write(
        &model,
        r#"{"version": 1, "kind": "floer_model", "source": "simplicial",
            "complex": {"facets": [[0, 1], [1, 2], [0, 2]], "oriented": false},
            "beta": ["0", "0", "0"]}"#,
    )
    .unwrap();
    let out = bin().args(["cone-check", model.to_str().unwrap()]).output().unwrap();
    assert_ne!(out.status.code(), Some(0));

    let family = dir.join("family.json");
    std::fs::write(
        &family,
        r#"{"version": 1, "kind": "family", "n": 2, "members": [{"label": "x", "chi": 2}, {"label": "y", "chi": 2}],
            "gram": [["1", "0"], ["0", "1"]],
            "classes": [["1", "0"], ["0", "1"], ["0", "0"], ["0", "0"]],
            "form": {"n": 2, "matrix": [["1","0","0","0"],["0","1","0","0"],["0","0","0","1"],["0","0","1","0"]]},
            "isotropic": [["1"], ["0"], ["0"], ["0"]]}"#,
    )
    .unwrap();
    let out = bin().args(["bound", family.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(4), "a non-isotropic subspace is a defect");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["--report", "json", "bullet", "figure_eight.json"],
        vec!["--report", "json", "pair", "genus2.json", "--class", "a2", "--class", "b2"],
        vec!["--report", "json", "--seed", "3", "cone-check", "torus_model.json"],
        vec!["bound", "spheres_family.json"],
    ] {
        let a = bin().args(&args).output().unwrap();
        let b = bin().args(&args).output().unwrap();
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn json_reports_use_scalar_strings() {
    let out = bin()
        .args(["--report", "json", "--field", "p:5", "bullet", "figure_eight.json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bullet"], "2 mod 5");
}

#[test]
fn fixtures_round_trip() {
    let mut seen = 0;
    for entry in std::fs::read_dir(fixtures_dir()).unwrap() {
        let path = entry.unwrap().path();
        let doc = Document::load(&path).unwrap();
        let text = doc.to_canonical();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back, doc, "{}", path.display());
        assert_eq!(back.to_canonical(), text);
        seen += 1;
    }
    assert!(seen >= 8);
}

#[test]
fn fixture_directory_can_be_overridden() {
    let dir = std::env::temp_dir().join(format!("tp-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("figure_eight.json"),
        r#"{"version": 1, "kind": "records", "records": [{"sign": 1, "gamma1": "5", "gamma0": "0"}]}"#,
    )
    .unwrap();
    let out = bin()
        .env(FIXTURES_ENV, &dir)
        .args(["bullet", "figure_eight.json"])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("bullet 5"));
    std::fs::remove_dir_all(&dir).unwrap();
}
