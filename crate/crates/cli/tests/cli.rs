use std::path::PathBuf;
use std::process::{Command, Output};

use eqpencil::catalog::pencil_from_json;
use eqpencil::combinatorics::Partition;
use eqpencil::field::DEFAULT_PRIME;
use eqpencil::pencil::{build_gl_pencil, build_spin_pencil};
use eqpencil::rank::{constant_rank_verdict, Mode};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqpencil")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eqpencil-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_then_verify_matches_in_memory_report() {
    let path = scratch("gl.json");
    let out = bin(&["build", "gl", "--mu", "2", "--nu", "2,1", "--n", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let mu: Partition = "2".parse().unwrap();
    let nu: Partition = "2,1".parse().unwrap();
    let p = build_gl_pencil(&mu, &nu, 3).unwrap();
    assert_eq!(pencil_from_json(&std::fs::read_to_string(&path).unwrap()).unwrap(), p);
    assert_eq!((p.nvars, p.target_dim, p.source_dim), (3, 8, 6));

    let cases: [(&[&str], Mode); 3] = [
        (&["--mode", "sampled", "--seed", "7", "--trials", "50"], Mode::Sampled { prime: DEFAULT_PRIME, trials: 50, seed: 7 }),
        (&["--mode", "exhaustive", "--prime", "5"], Mode::Exhaustive { prime: 5, budget: 1_000_000 }),
        (&["--mode", "transitivity"], Mode::Transitivity { prime: DEFAULT_PRIME }),
    ];
    for (flags, mode) in cases {
        let mut args = vec!["verify", path.to_str().unwrap()];
        args.extend_from_slice(flags);
        let out = bin(&args);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let cli: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let mem = serde_json::to_value(constant_rank_verdict(&p, mode).unwrap()).unwrap();
        assert_eq!(cli, mem, "{flags:?}");
    }
}

#[test]
fn documented_builds() {
    let out = bin(&["build", "sp", "--mu", "1,1", "--nu", "1,1,1", "--N", "6"]);
    assert!(out.status.success());
    let p = pencil_from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!((p.nvars, p.target_dim, p.source_dim), (6, 14, 14));

    let out = bin(&["build", "spin", "--n", "5"]);
    assert!(out.status.success());
    let p = pencil_from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(p, build_spin_pencil(5).unwrap());
    assert_eq!((p.nvars, p.target_dim, p.source_dim), (16, 16, 10));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["build", "gl", "--mu", "2", "--nu", "3,1", "--n", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["build", "gl", "--mu", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"nvars\": 1,\n").unwrap();
    assert_eq!(bin(&["verify", bad.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(bin(&["fixture", "missing"]).status.code(), Some(3));

    // a plain pencil has no certificate to rebuild
    let fx = scratch("fx.json");
    assert!(bin(&["fixture", "gl3-s2-s21", "--out", fx.to_str().unwrap()]).status.success());
    assert_eq!(bin(&["verify", fx.to_str().unwrap(), "--mode", "transitivity"]).status.code(), Some(2));
    let out = bin(&["verify", fx.to_str().unwrap(), "--mode", "exhaustive", "--prime", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "constant");
    assert_eq!(v["generic_rank"], 5);
}

#[test]
fn catalog_filter_and_status() {
    let out = bin(&["catalog", "--filter", "gl-2-f*"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|o| o["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["gl-2-family", "gl-2-fixture", "gl-2-flattening"]);
    assert_eq!(v[0]["config"]["seed"], 0);

    let out = bin(&["catalog", "--filter", "spin-10-fixture", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS spin-10-fixture"), "{text}");

    assert_eq!(bin(&["catalog", "--filter", "nothing-*"]).status.code(), Some(2));
}
