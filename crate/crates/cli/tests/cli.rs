use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const P5_42: &str = include_str!("../../core/fixtures/p5_42_partition.json");
const TRAPEZOID: &str = include_str!("../../core/fixtures/trapezoid_subdivision.json");

fn nefdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nefdisc")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = nefdisc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Exit code plus the parsed stderr error object.
fn failure(args: &[&str]) -> (i32, Value) {
    let out = nefdisc(args);
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    let code = out.status.code().unwrap();
    assert_eq!(err["exit_code"], code);
    (code, err)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn census_of_the_quartic_quadric_intersection() {
    let v = json_ok(&["census", "--degrees", "4,2", "--ambient", "5"]);
    assert_eq!(v["euler"], -176);
    assert_eq!(v["positive"], 32);
    assert_eq!(v["negative"], 208);
    assert_eq!(v["from_strata"], -176);
    assert_eq!(v["curves"][0]["genus"], 9);
    assert!(v.get("strata").map_or(true, |s| s.as_array().unwrap().is_empty()));

    let with = json_ok(&["census", "--degrees", "4,2", "--strata"]);
    assert!(!with["strata"].as_array().unwrap().is_empty());

    let k3 = json_ok(&["census", "--degrees", "4"]);
    assert_eq!(k3["k3_points"], 24);
}

#[test]
fn dual_of_the_projective_simplex() {
    let v = json_ok(&["dual", "--ambient", "5"]);
    assert_eq!(v["side"], "M");
    let verts = v["vertices"].as_array().unwrap();
    assert_eq!(verts.len(), 6);
    // (1, .., 1) and the five points with a single coordinate -5, the rest 1
    let count = |want: i64| verts.iter().filter(|p| p.as_array().unwrap().iter().filter(|x| **x == want).count() == 1).count();
    assert_eq!(count(-5), 5);
    assert!(verts.iter().any(|p| p.as_array().unwrap().iter().all(|x| *x == 1)));

    let dir = tempfile::tempdir().unwrap();
    let once = write(dir.path(), "d.json", &serde_json::to_string(&v).unwrap());
    let back = json_ok(&["dual", "-i", &once]);
    assert_eq!(back["side"], "N");
    assert_eq!(back["vertices"].as_array().unwrap().len(), 6);
    assert!(back["vertices"].as_array().unwrap().iter().any(|p| p.as_array().unwrap().iter().all(|x| *x == -1)));
}

#[test]
fn discriminant_of_the_bundled_instance() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let v = json_ok(&["discriminant", "--degrees", "4,2", "--dot", dot.to_str().unwrap()]);
    assert_eq!((v["positive"].clone(), v["negative"].clone(), v["euler"].clone()), (32.into(), 208.into(), (-176).into()));
    assert_eq!(v["sigma_euler"], 0);
    assert_eq!(v["graph"]["summary"]["bivalent"], 0);

    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph discriminant {"));
    assert_eq!(text.matches("kind=\"positive\"").count(), 32);
    assert_eq!(text.matches("kind=\"negative\"").count(), 208);
    let edges = v["graph"]["edges"].as_array().unwrap().len();
    assert_eq!(text.matches(" -- ").count(), edges);

    let out = nefdisc(&["discriminant", "--degrees", "4,2", "--format", "dot"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);
}

#[test]
fn discriminant_from_files_matches_bundled() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", P5_42);
    let subs = write(dir.path(), "s.json", include_str!("../../core/fixtures/p5_42_subdivisions.json"));
    let from_files = json_ok(&["discriminant", "-i", &p, "-i", &subs]);
    let bundled = json_ok(&["discriminant", "--degrees", "4,2"]);
    assert_eq!(from_files, bundled);
}

#[test]
fn unsigned_graph_for_surfaces() {
    let v = json_ok(&["discriminant", "--degrees", "3,2"]);
    assert_eq!(v["n"], 2);
    assert!(v.get("positive").is_none());
    assert_eq!(v["graph"]["summary"]["vertices"], 24);
    assert_eq!(v["sigma_euler"], 2);
}

#[test]
fn sigma_summary() {
    let v = json_ok(&["sigma", "--degrees", "4,2"]);
    assert_eq!(v["euler"], 0);
    let f: Vec<i64> = v["f_vector"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(f.iter().enumerate().map(|(k, x)| if k % 2 == 0 { *x } else { -x }).sum::<i64>(), 0);
    assert_eq!(v["cells"].as_array().unwrap().len() as i64, f.iter().sum::<i64>());
    assert_eq!(v["adjoint_pairs"].as_array().unwrap().len(), v["s_faces"].as_u64().unwrap() as usize);
}

#[test]
fn nefcheck_and_mirror_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", P5_42);
    let report = json_ok(&["nefcheck", "-i", &p]);
    assert_eq!(report["r"], 2);
    assert_eq!(report["cy_dim"], 3);
    assert_eq!(report["irreducible"], true);
    assert_eq!(report["part_sizes"], serde_json::json!([4, 2]));
    let by_degrees = json_ok(&["nefcheck", "--degrees", "4,2"]);
    assert_eq!(by_degrees, report);

    let mirror = nefdisc(&["mirror", "-i", &p]);
    assert!(mirror.status.success());
    let m = write(dir.path(), "m.json", &String::from_utf8(mirror.stdout).unwrap());
    let back = json_ok(&["mirror", "-i", &m]);
    let original: Value = serde_json::from_str(P5_42).unwrap();
    assert_eq!(back, original);
}

#[test]
fn bare_polytope_with_parts() {
    let dir = tempfile::tempdir().unwrap();
    let diamond = write(dir.path(), "di.json", r#"{"dim":2,"side":"N","vertices":[[1,0],[-1,0],[0,1],[0,-1]]}"#);
    let ok = json_ok(&["nefcheck", "-i", &diamond, "--parts", "0,3;1,2"]);
    assert_eq!(ok["cy_dim"], 0);
    assert_eq!(ok["part_sizes"], serde_json::json!([2, 2]));

    let square = write(dir.path(), "sq.json", r#"{"dim":2,"side":"N","vertices":[[1,1],[-1,-1],[1,-1],[-1,1]]}"#);

    // opposite corners in one part: not nef
    let (code, err) = failure(&["nefcheck", "-i", &square, "--parts", "0,3;1,2"]);
    assert_eq!(code, 1);
    assert_eq!(err["error"], "NotNef");

    let (code, _) = failure(&["nefcheck", "-i", &square]);
    assert_eq!(code, 2);
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = write(dir.path(), "g.json", "not json");
    let (code, err) = failure(&["dual", "-i", &garbage]);
    assert_eq!((code, err["error"].as_str().unwrap()), (2, "Json"));

    let (code, err) = failure(&["dual", "-i", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!((code, err["error"].as_str().unwrap()), (2, "Io"));

    let empty = write(dir.path(), "e.json", r#"{"dim":2,"side":"N"}"#);
    let (code, err) = failure(&["dual", "-i", &empty]);
    assert_eq!((code, err["error"].as_str().unwrap()), (2, "NoData"));

    // a segment in the plane has no bounded polar
    let segment = write(dir.path(), "s.json", r#"{"dim":2,"side":"N","vertices":[[1,0],[-1,0]]}"#);
    assert_eq!(failure(&["dual", "-i", &segment]).0, 1);

    let (code, err) = failure(&["census", "--degrees", "1,5"]);
    assert_eq!((code, err["error"].as_str().unwrap()), (1, "InvalidDescriptor"));

    assert_eq!(failure(&["census"]).0, 2);
    assert_eq!(failure(&["frobnicate"]).0, 2);
    assert_eq!(failure(&["census", "--degrees", "4,2", "--format", "svg"]).0, 2);
    assert_eq!(failure(&["discriminant", "--degrees", "9,9"]).0, 2);
    assert!(nefdisc(&["--help"]).status.success());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["discriminant", "--degrees", "3,3"][..],
        &["census", "--degrees", "3,2,2", "--strata"],
        &["plot", "--tropical-degree", "4"],
    ] {
        let a = nefdisc(args);
        let b = nefdisc(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let run = nefdisc(&["census", "--degrees", "5", "-o", out.to_str().unwrap()]);
    assert!(run.status.success());
    assert!(run.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["euler"], -200);
}

#[test]
fn plots() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", TRAPEZOID);
    let out = nefdisc(&["plot", "-i", &t]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("class=\"cell "));

    let tropical = String::from_utf8(nefdisc(&["plot", "--tropical-degree", "3"]).stdout).unwrap();
    // nine triangles, nine rays crossing the boundary
    assert_eq!(tropical.matches("class=\"node\"").count(), 9);
    assert_eq!(tropical.matches("class=\"ray\"").count(), 9);
}

#[test]
fn monodromy_triples() {
    for kind in ["positive", "negative"] {
        let v = json_ok(&["monodromy", "--kind", kind]);
        assert_eq!(v["consistent"], true, "{kind}");
        assert_eq!(v["conjugate_to_standard"], serde_json::json!([true, true, true]));
    }
    let expected = [("positive", 2), ("negative", 1)];
    for (kind, dim) in expected {
        assert_eq!(json_ok(&["monodromy", "--kind", kind])["common_fixed_dim"], dim);
    }

    let dir = tempfile::tempdir().unwrap();
    let identity = "[[1,0,0],[0,1,0],[0,0,1]]";
    let triple = write(dir.path(), "i.json", &format!("[{identity},{identity},{identity}]"));
    let v = json_ok(&["monodromy", "--kind", "positive", "-i", &triple]);
    assert_eq!(v["consistent"], false);

    let not_unipotent = write(dir.path(), "n.json", &format!("[[[2,0,0],[0,1,0],[0,0,1]],{identity},{identity}]"));
    assert_eq!(failure(&["monodromy", "--kind", "negative", "-i", &not_unipotent]).0, 1);
    let two = write(dir.path(), "two.json", &format!("[{identity},{identity}]"));
    assert_eq!(failure(&["monodromy", "--kind", "negative", "-i", &two]).0, 2);
}
