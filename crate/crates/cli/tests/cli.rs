use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

const L02: &str = r#"{"actions":{"pi":[["0","1","0","0"],["1","0","0","0"],["0","0","0","1"],["0","0","1","0"]],"sigma1":[["0","0","0","0"],["0","0","1","0"],["0","1","0","0"],["0","0","0","0"]],"x1":[["0","0","0","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]],"x2":[["0","0","0","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]]},"algebra":{"cfg":{"cyclic_order":0},"kind":"VV","weight":[[{"k":0,"sign":"+"},1],[{"k":2,"sign":"+"},1],[{"k":-2,"sign":"-"},1],[{"k":0,"sign":"-"},1]]},"basis":[{"degree":0,"label":[{"k":0,"sign":"+"},{"k":2,"sign":"+"}]},{"degree":0,"label":[{"k":0,"sign":"-"},{"k":2,"sign":"+"}]},{"degree":0,"label":[{"k":2,"sign":"+"},{"k":0,"sign":"-"}]},{"degree":0,"label":[{"k":-2,"sign":"-"},{"k":0,"sign":"-"}]}]}"#;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("running hecke")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_config(dir: &Path, modules: Value) -> String {
    let p = dir.join("workspace.json");
    std::fs::write(&p, json!({"orbit": {"cyclic_order": 0}, "modules": modules}).to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn line_with<'a>(text: &'a str, prefix: &str) -> &'a str {
    text.lines().find(|l| l.starts_with(prefix)).unwrap_or_else(|| panic!("no line starting with {prefix:?} in\n{text}"))
}

#[test]
fn define_accepts_expressions_and_module_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("l02.json"), L02).unwrap();
    let cfg = write_config(dir.path(), json!({"A": "L(0)", "B": {"file": "l02.json"}, "C": "conv(A,B)"}));
    let o = hecke(&["define", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("modules: 3"));
    assert!(out.contains("A: W[0+0̄] dimension 2"));
    assert!(out.contains("B: W[0+2+-2̄+0̄] dimension 4"));
    assert!(line_with(&out, "C: ").ends_with("dimension 24"));

    let o = hecke(&["--config", &cfg, "conv", "A", "B"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(line_with(&stdout(&o), "dimension:"), "dimension: 24");
}

#[test]
fn theta_asymmetric_weight_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut m: Value = serde_json::from_str(L02).unwrap();
    m["algebra"]["weight"].as_array_mut().unwrap().remove(2);
    let cfg = write_config(dir.path(), json!({"B": m}));
    let o = hecke(&["define", &cfg]);
    assert!(!o.status.success());
    let err = stderr(&o);
    assert!(err.contains("modules.B") && err.contains("module.algebra"), "{err}");
}

#[test]
fn sigma_of_the_wrong_degree_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut m: Value = serde_json::from_str(L02).unwrap();
    m["basis"][2]["degree"] = json!(5);
    let cfg = write_config(dir.path(), json!({"B": m}));
    let o = hecke(&["define", &cfg]);
    assert!(!o.status.success());
    let err = stderr(&o);
    assert!(err.contains("modules.B") && err.contains("verification"), "{err}");
}

#[test]
fn duplicate_and_unknown_names_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("dup.json");
    std::fs::write(&p, r#"{"modules": {"A": "L(0)", "A": "L(2)"}}"#).unwrap();
    let o = hecke(&["define", p.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("duplicate name `A`"));

    let o = hecke(&["conv", "A", "L(0)"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("unknown module `A`"));
}

#[test]
fn convolution_dimensions() {
    for (args, dim) in [
        (vec!["conv", "L(0)", "L(4)"], 8),
        (vec!["conv", "L(0)", "L(4)", "--klr"], 2),
        (vec!["conv", "L(0)", "L(4)", "--naive"], 8),
        (vec!["conv", "L(02)", "L(0)"], 24),
    ] {
        let o = hecke(&args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        assert_eq!(line_with(&stdout(&o), "dimension:"), format!("dimension: {dim}"), "{args:?}");
    }
}

#[test]
fn naive_convolution_of_adjacent_supports_is_refused() {
    let o = hecke(&["conv", "L(0)", "L(2)", "--naive"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("joined by an arrow"));
}

#[test]
fn rmatrix_of_a_point_with_itself_is_the_identity() {
    let o = hecke(&["rmatrix", "L(0)", "L(0)"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .skip_while(|l| !l.starts_with("matrix"))
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows.len(), 8, "{out}");
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            assert_eq!(*x, if i == j { "1" } else { "0" }, "{out}");
        }
    }
}

#[test]
fn zero_module_has_empty_structure() {
    let o = hecke(&["analyze", "zero(L(0))"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("dimension: 0"));
    assert!(out.contains("composition length: 0"));
    assert!(out.contains("simple: no"));
    assert!(out.contains("socle: dimension 0, simple: no"));
}

#[test]
fn paper_suite_passes() {
    let o = hecke(&["paper-suite"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("13 of 13 golden comparisons pass"));
}

#[test]
fn paper_suite_detects_a_tweaked_relation() {
    let o = hecke(&["paper-suite", "--tweak", "flip-x-sigma"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL "));
}

#[test]
fn paper_suite_on_a_finite_orbit_is_informational() {
    let o = hecke(&["--cyclic-order", "3", "paper-suite"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("DIFF ") && out.contains("informational"));
    assert!(!out.contains("FAIL "));
}

#[test]
fn paper_suite_update_writes_identical_goldens() {
    let dir = tempfile::tempdir().unwrap();
    let o = hecke(&["paper-suite", "--update", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("goldens/v1");
    let mut n = 0;
    for e in std::fs::read_dir(&shipped).unwrap() {
        let e = e.unwrap();
        let fresh = std::fs::read_to_string(dir.path().join(e.file_name())).unwrap();
        assert_eq!(fresh, std::fs::read_to_string(e.path()).unwrap(), "{:?}", e.file_name());
        n += 1;
    }
    assert_eq!(n, 13);
}

#[test]
fn output_is_byte_stable() {
    for args in [vec!["rmatrix", "L(02)", "L(0)", "--renormalized", "--spectral"], vec!["analyze", "conv(L(0),L(2))"]] {
        let (a, b) = (hecke(&args), hecke(&args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
