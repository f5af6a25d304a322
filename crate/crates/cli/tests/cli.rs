use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_motifkit"));
    c.env_remove("MOTIFKIT_MAX_MASK_BITS");
    c
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

struct Fixtures {
    _dir: tempfile::TempDir,
    k4: String,
    p3: String,
    k3: String,
    b22: String,
    path_bip: String,
    colouring: String,
}

fn fixtures() -> Fixtures {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let s = |p: PathBuf| p.to_str().unwrap().to_string();
    Fixtures {
        k4: s(write(
            d,
            "k4.g",
            "graph 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n",
        )),
        p3: s(write(d, "p3.g", "graph 3 2\n0 1\n1 2\n")),
        k3: s(write(d, "k3.g", "# triangle\ngraph 3 3\n0 1\n1 2\n2 0\n")),
        b22: s(write(d, "b22.b", "bipgraph 2 2 4\n0 0\n0 1\n1 0\n1 1\n")),
        path_bip: s(write(d, "g.b", "bipgraph 3 3 4\n0 0\n1 1\n2 0\n2 2\n")),
        colouring: s(write(d, "c.col", "colouring 4\n0 1 2 3\n")),
        _dir: dir,
    }
}

#[test]
fn count_example() {
    let f = fixtures();
    let v = ok_json(&[
        "count",
        "--property",
        "builtin:triangle-free",
        "--graph",
        &f.k4,
        "--k",
        "3",
    ]);
    assert_eq!(v["output"]["count"], "0");
    assert_eq!(v["subcommand"], "count");
}

#[test]
fn classify_example() {
    let f = fixtures();
    let v = ok_json(&["classify", "--forbidden", &f.p3]);
    assert_eq!(v["output"]["row"], "forall-cliques-and-independents");
    assert_eq!(v["output"]["witness"]["verified"], true);
    let v = ok_json(&["classify", "--forbidden", &format!("{},{}", f.k4, f.k3)]);
    // K_4 contains K_3, so only K_3 survives minimalisation.
    assert_eq!(v["output"]["members"].as_array().unwrap().len(), 1);
    assert_eq!(v["output"]["row"], "otherwise");
}

#[test]
fn coeffs_example() {
    let v = ok_json(&[
        "coeffs",
        "--psi",
        "builtin-bip:has-edge",
        "--host-biclique",
        "2",
    ]);
    assert_eq!(v["output"]["full_edge_set"], "-1");
    let entries = v["output"]["table"]["entries"].as_array().unwrap();
    let full = entries.iter().find(|e| e["key"] == "15").unwrap();
    assert_eq!(
        (full["numerator"].as_str(), full["denominator"].as_str()),
        (Some("-1"), Some("1"))
    );
}

#[test]
fn counting_subcommands_check_bruteforce() {
    let f = fixtures();
    for prop in [
        "builtin:claw-free",
        "builtin:cluster",
        &format!("forbidden:{}", f.p3),
    ] {
        for method in ["auto", "basis", "brute"] {
            let v = ok_json(&[
                "count",
                "--property",
                prop,
                "--graph",
                &f.k4,
                "--k",
                "3",
                "--method",
                method,
                "--check-bruteforce",
            ]);
            assert_eq!(v["output"]["checked"], true);
        }
    }
    let meagre = format!(
        "forbidden:{},{}",
        f.k3,
        write(f._dir.path(), "i3.g", "graph 3 0\n").display()
    );
    let v = ok_json(&[
        "count",
        "--property",
        &meagre,
        "--graph",
        &f.k4,
        "--k",
        "2",
        "--check-bruteforce",
    ]);
    assert_eq!(v["output"]["method"], "meagre");
    assert_eq!(v["output"]["count"], "6");

    let v = ok_json(&[
        "count-bip",
        "--psi",
        "builtin-bip:has-edge",
        "--graph",
        &f.b22,
        "--k",
        "2",
        "--check-bruteforce",
    ]);
    assert_eq!(v["output"]["count"], "4");
    let v = ok_json(&[
        "count-cp",
        "--psi",
        "builtin-bip:perfect-matching",
        "--pattern",
        &f.b22,
        "--graph",
        &f.b22,
        "--colouring",
        &f.colouring,
        "--check-bruteforce",
    ]);
    assert_eq!(v["output"]["count"], "1");
    let v = ok_json(&[
        "extract",
        "--psi",
        "builtin-bip:has-edge",
        "--pattern",
        &f.b22,
        "--graph",
        &f.b22,
        "--colouring",
        &f.colouring,
        "--check-bruteforce",
    ]);
    assert_eq!(v["output"]["queries"].as_array().unwrap().len(), 16);
}

#[test]
fn structural_subcommands() {
    let f = fixtures();
    let v = ok_json(&["quotient", "--graph", &f.p3]);
    assert_eq!(v["output"]["edges"], 1);
    let v = ok_json(&["treewidth", "--graph", &f.k4]);
    assert_eq!(v["output"]["treewidth"], 3);
    assert_eq!(v["output"]["valid"], true);
    let v = ok_json(&[
        "implant", "--host", &f.k3, "--b1", "0", "--b2", "1", "--bip", &f.b22,
    ]);
    assert_eq!(v["output"]["implant"]["edges"].as_array().unwrap().len(), 8);
    let v = ok_json(&["witness", "--forbidden", &f.k3]);
    assert_eq!(
        v["output"]["witness"]["verified_k"],
        serde_json::json!([4, 5, 6])
    );
    let v = ok_json(&["witness-twin", "--property", "builtin:disconnected"]);
    assert_eq!(v["output"]["witness"]["verified"], true);
    let v = ok_json(&[
        "reduce-verify",
        "--forbidden",
        &f.k4,
        "--graph",
        &f.path_bip,
        "--k",
        "3",
    ]);
    assert_eq!(v["output"]["agree"], true);
    assert_eq!(v["output"]["reduction"]["oracle_calls"], 4);
    let v = ok_json(&[
        "orbits",
        "--k",
        "3",
        "--psi",
        "builtin-bip:perfect-matching",
    ]);
    assert_eq!(v["output"]["group_order"], 9);
    assert_eq!(v["output"]["fixed_points"], serde_json::json!([0, 511]));
    let v = ok_json(&["orbits", "--k", "2", "--group", "full"]);
    assert_eq!(v["output"]["orbit_count"], 7);
    let v = ok_json(&["basis", "--property", "builtin:edgeless", "--k", "2"]);
    assert_eq!(v["output"]["support_size"], 3);
    let v = ok_json(&["tphi", "--property", "builtin:triangle-free", "--k", "3"]);
    assert_eq!(v["output"]["t_phi"], 2);
    let v = ok_json(&["selftest", "--rounds", "3", "--seed", "9"]);
    assert_eq!(v["output"]["all_passed"], true);
}

#[test]
fn exit_codes() {
    let f = fixtures();
    let d = f._dir.path();
    let bad = write(d, "loop.g", "graph 2 1\n0 0\n");
    let out = run(&["quotient", "--graph", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = run(&[
        "count",
        "--property",
        "nope:x",
        "--graph",
        &f.k4,
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args([
            "coeffs",
            "--psi",
            "builtin-bip:has-edge",
            "--host-biclique",
            "2",
        ])
        .env("MOTIFKIT_MAX_MASK_BITS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["orbits", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "count",
        "--property",
        "builtin:true",
        "--graph",
        &f.k4,
        "--k",
        "2",
        "--max-enumeration",
        "2",
        "--method",
        "brute",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn records_are_deterministic_modulo_timing() {
    let f = fixtures();
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    for args in [
        vec!["selftest", "--rounds", "2", "--seed", "5"],
        vec!["classify", "--forbidden", &f.p3],
        vec![
            "count",
            "--property",
            "builtin:cluster",
            "--graph",
            &f.k4,
            "--k",
            "3",
        ],
    ] {
        assert_eq!(strip(ok_json(&args)), strip(ok_json(&args)));
    }
    let a = ok_json(&["selftest", "--rounds", "2", "--seed", "5"]);
    let b = ok_json(&["selftest", "--rounds", "2", "--seed", "6"]);
    assert_ne!(a["inputs_digest"], b["inputs_digest"]);
}

#[test]
fn output_path() {
    let f = fixtures();
    let out = f._dir.path().join("out.json");
    let status = bin()
        .args([
            "quotient",
            "--graph",
            &f.k3,
            "--output",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["output"]["edges"], 3);
}
