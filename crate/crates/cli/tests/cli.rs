use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

use homcode::hsc::build_ktc;
use homcode::lattices::{generate, map_to_value};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn bin(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_homcode"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Feeds each stage's standard output into the next one.
fn pipe(stages: &[&[&str]]) -> Run {
    let mut data = String::new();
    let mut last = None;
    for args in stages {
        let r = bin(args, &data);
        assert!(r.code == 0 || std::ptr::eq(args, stages.last().unwrap()), "{args:?}: {}", r.stderr);
        data = r.stdout.clone();
        last = Some(r);
    }
    last.unwrap()
}

fn in_process(stages: &[&[&str]]) -> homcode_cli::Outcome {
    let mut data = String::new();
    let mut last = None;
    for args in stages {
        let argv = std::iter::once("homcode").chain(args.iter().copied());
        let o = homcode_cli::run(argv, &mut data.as_bytes());
        data = o.stdout.clone();
        last = Some(o);
    }
    last.unwrap()
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

#[test]
fn ktc_params_pipeline() {
    let r = pipe(&[&["gen", "square_torus:L=4"], &["build", "ktc"], &["params", "--distance-cap", "4"]]);
    assert_eq!(r.code, 0);
    let v = json(&r.stdout);
    assert_eq!((v["n"].as_u64(), v["k"].as_u64(), v["d"].as_u64()), (Some(16), Some(2), Some(4)));
    assert_eq!(r.stderr, "[[16, 2, 4]]\n");
}

#[test]
fn hex_torus_classifies_as_tcc() {
    let r = pipe(&[&["gen", "hex_torus:a=3,b=3"], &["classify"]]);
    assert_eq!(r.code, 0);
    let v = json(&r.stdout);
    assert_eq!(v["family"], "TCC");
    assert_eq!(v["classes"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["params"]["k"], 4);
}

#[test]
fn medial_of_tetrahedron_is_ktc() {
    let r = pipe(&[&["gen", "tetrahedron"], &["transform", "medial"], &["classify"]]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r.stdout)["family"], "KTC");
}

#[test]
fn piped_equals_in_process() {
    let pipelines: [&[&[&str]]; 6] = [
        &[&["gen", "square_torus:L=4"], &["build", "ktc"], &["params", "--distance-cap", "4"]],
        &[&["gen", "hex_torus:a=3,b=3"], &["classify"]],
        &[&["gen", "cube"], &["transform", "dual"], &["transform", "medial"], &["color"]],
        &[&["gen", "torus_488:L=2"], &["build", "tcc:2"], &["punch", "--hole", "0:0", "--hole", "3"]],
        &[&["gen", "mixed_strip:w=4,hex=2,square=2"], &["density"]],
        &[&["gen", "icosahedron"], &["classify"]],
    ];
    for p in pipelines {
        let a = pipe(p);
        let b = in_process(p);
        assert_eq!((a.code, &a.stdout), (b.exit_code, &b.stdout), "{p:?}");
    }
}

#[test]
fn cli_matches_library() {
    let r = bin(&["gen", "square_torus:L=4"], "");
    let m = generate(&"square_torus:L=4".parse().unwrap()).unwrap();
    assert_eq!(r.stdout, format!("{}\n", serde_json::to_string(&map_to_value(&m)).unwrap()));
    let code = bin(&["build", "ktc"], &r.stdout);
    let lib = build_ktc(&m).unwrap().to_json();
    assert_eq!(code.stdout, format!("{}\n", serde_json::to_string(&lib).unwrap()));
}

#[test]
fn rejections_exit_one() {
    let r = pipe(&[&["gen", "icosahedron"], &["classify"]]);
    assert_eq!(r.code, 1);
    let v = json(&r.stdout);
    assert_eq!(v["rejected"], "valence_five_or_more");
    assert_eq!(v["witness"]["valence"], 5);

    let r = pipe(&[&["gen", "dodecahedron"], &["classify"]]);
    assert_eq!((r.code, json(&r.stdout)["rejected"].as_str()), (1, Some("four_colorable")));

    let r = pipe(&[&["gen", "cube"], &["build", "ktc"]]);
    assert_eq!(r.code, 1);

    // all-X on the square torus fails rule IIA
    let code = bin(&["build", "ktc"], &bin(&["gen", "square_torus:L=2"], "").stdout).stdout;
    let all_x = code.replace("ZZZZ", "XXXX");
    let r = bin(&["check"], &all_x);
    assert_eq!(r.code, 1);
    let v = json(&r.stdout);
    assert_eq!(v["rejected"], "IIA");
    assert_eq!(v["witness"]["kind"], "vertex");
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(bin(&["classify"], "not json").code, 2);
    assert_eq!(bin(&["classify"], r#"{"alpha":[1,0,3],"sigma":[0,1,2]}"#).code, 2);
    assert_eq!(bin(&["gen", "hex_torus"], "").code, 2);
    assert_eq!(bin(&["build", "tcc:x"], &bin(&["gen", "cube"], "").stdout).code, 2);
    assert_eq!(bin(&["params"], r#"{"alpha":[1,0],"sigma":[1,0],"faces":[{"face":7,"gens":["X"]}]}"#).code, 2);
    assert_eq!(bin(&[], "").code, 2);
}

#[test]
fn check_and_homology() {
    let code = pipe(&[&["gen", "square_torus:L=4"], &["build", "ktc"]]).stdout;
    let r = bin(&["check"], &code);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r.stdout)["admissible"], true);
    let h = pipe(&[&["gen", "square_torus:L=4"], &["homology"]]);
    let v = json(&h.stdout);
    assert_eq!((v["cycle_dimension"].as_u64(), v["facial_rank"].as_u64(), v["b1"].as_u64()), (Some(17), Some(15), Some(2)));
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
    let h = pipe(&[&["gen", "octahedron"], &["homology"]]);
    assert_eq!(json(&h.stdout)["b1"], 0);
}

#[test]
fn boundary_favg_density() {
    let r = bin(&["boundary", "planar_ktc_patch:rows=4,cols=5,boundaries=6"], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r.stdout);
    assert_eq!((v["rank_k"].as_u64(), v["boundaries"].as_u64()), (Some(2), Some(6)));
    assert_eq!(v["formula_matches_rank"], true);
    let r = bin(&["boundary", "planar_tcc_triangle:d=5"], "");
    assert_eq!(json(&r.stdout)["rank_k"], 1);
    assert_eq!(bin(&["boundary", "cube"], "").code, 1);

    let r = bin(&["favg", "--valence", "3", "--genus", "1", "--vertices", "18"], "");
    assert_eq!(json(&r.stdout)["F_avg"], "6");
    let r = bin(&["favg", "--valence", "4", "--genus", "0", "--vertices", "6"], "");
    assert_eq!(json(&r.stdout)["F_avg"], "3");
    assert_eq!(bin(&["favg", "--valence", "4", "--genus", "2", "--vertices", "1"], "").code, 1);

    let r = pipe(&[&["gen", "hex_torus:a=3,b=3"], &["density", "--m", "2"]]);
    let v = json(&r.stdout);
    assert_eq!((v["density"].as_str(), v["verdict"].as_str()), (Some("0"), Some("vanishing")));
    for key in ["family", "genus", "V", "E", "F", "F_avg", "m_max", "density", "verdict", "formula_vs_rank"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn punch_and_twist() {
    let code = pipe(&[&["gen", "square_torus:L=4"], &["build", "ktc"]]).stdout;
    let v = json(&code);
    let colors = v["coloring"].as_array().unwrap();
    let red: Vec<String> = (0..colors.len()).filter(|&f| colors[f] == "red").map(|f| f.to_string()).collect();
    let r = bin(&["punch", "--hole", &red[0], "--hole", &red[1]], &code);
    let p = json(&r.stdout);
    assert_eq!((p["base_k"].as_u64(), p["rank_k"].as_u64()), (Some(2), Some(3)));
    assert_eq!(p["formula_matches_rank"], true);
    assert_eq!(bin(&["punch", "--hole", "0:5"], &code).code, 1);
    let t = json(&bin(&["twist"], &code).stdout);
    assert_eq!(t["sites"], serde_json::json!([]));
}

#[test]
fn dot_and_files() {
    let map = bin(&["gen", "cube"], "").stdout;
    let dot = bin(&["export-dot", "--color"], &map);
    assert!(dot.stdout.starts_with("graph map {"));
    assert!(dot.stdout.contains("face_colors"));

    let dir = std::env::temp_dir().join(format!("homcode-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    let output = dir.join("out.json");
    std::fs::write(&input, &map).unwrap();
    let r = bin(
        &["classify", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap(), "--json-only"],
        "",
    );
    assert_eq!((r.code, r.stdout.as_str(), r.stderr.as_str()), (0, "", ""));
    assert_eq!(json(&std::fs::read_to_string(&output).unwrap())["family"], "TCC");
    assert_eq!(bin(&["classify", "--input", dir.join("missing.json").to_str().unwrap()], "").code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
