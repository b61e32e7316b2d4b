//! End-to-end tests of the mimsolve binary: subcommand behavior, the JSON
//! result shapes, and the fixed exit-code taxonomy.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const P4: &str = "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n";
const P4_LAYOUT: &str = "(((1,2),3),4);\n";
const C5: &str = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
const C5_LAYOUT: &str = "((((1,2),3),4),5);\n";
const C7: &str = "p edge 7 7\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 1\n";

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// Run the binary with a clean thread environment so ambient settings do not
/// leak into the tests.
fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mimsolve"))
        .args(args)
        .env_remove("MIMSOLVE_THREADS")
        .output()
        .unwrap()
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mimsolve"))
        .args(args)
        .env(key, value)
        .output()
        .unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_reports_cluster_size_on_path() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p4.col", P4);
    let l = write(dir.path(), "p4.nwk", P4_LAYOUT);
    let out = run(&[
        "solve",
        "--problem",
        "cluster",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["problem"], "cluster");
    assert_eq!(json["connected"], false);
    assert_eq!(json["size"], 3);
    assert_eq!(json["certified"], true);
    assert_eq!(json["vertices"].as_array().unwrap().len(), 3);
    for field in ["nodes", "states", "runtime_ms"] {
        assert!(json["stats"][field].is_u64(), "stats.{field} missing");
    }
}

#[test]
fn solve_writes_output_file_when_asked() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p4.col", P4);
    let l = write(dir.path(), "p4.nwk", P4_LAYOUT);
    let result = dir.path().join("result.json");
    let out = run(&[
        "solve",
        "--problem",
        "bipartite",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
        "--output",
        path_str(&result),
    ]);
    assert_eq!(exit_code(&out), 0);
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&result).unwrap()).unwrap();
    assert_eq!(json["size"], 4, "a path is bipartite");
}

#[test]
fn connected_clique_flag_is_idempotent() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p4.col", P4);
    let l = write(dir.path(), "p4.nwk", P4_LAYOUT);
    let base = run(&[
        "solve",
        "--problem",
        "clique",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
    ]);
    let flagged = run(&[
        "solve",
        "--problem",
        "clique",
        "--connected",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
    ]);
    assert_eq!(exit_code(&base), 0);
    assert_eq!(exit_code(&flagged), 0);
    let a = stdout_json(&base);
    let b = stdout_json(&flagged);
    assert_eq!(a["size"], b["size"]);
    assert_eq!(a["size"], 2);
    assert_eq!(b["connected"], true);
}

#[test]
fn malformed_graph_file_exits_with_parse_code() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "bad.col", "p edge 4 1\ne 1 99\n");
    let l = write(dir.path(), "p4.nwk", P4_LAYOUT);
    let out = run(&[
        "solve",
        "--problem",
        "cluster",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn unknown_problem_name_exits_with_parse_code() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p4.col", P4);
    let l = write(dir.path(), "p4.nwk", P4_LAYOUT);
    let out = run(&[
        "solve",
        "--problem",
        "chordal",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_accepts_width_one_and_reports_failing_cut() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p4.col", P4);
    let l = write(dir.path(), "p4.nwk", P4_LAYOUT);
    let ok = run(&["verify", "--graph", path_str(&g), "--layout", path_str(&l)]);
    assert_eq!(exit_code(&ok), 0);
    assert!(String::from_utf8_lossy(&ok.stdout).contains("ok"));

    let g5 = write(dir.path(), "c5.col", C5);
    let l5 = write(dir.path(), "c5.nwk", C5_LAYOUT);
    let bad = run(&["verify", "--graph", path_str(&g5), "--layout", path_str(&l5)]);
    assert_eq!(exit_code(&bad), 3);
    let err = String::from_utf8_lossy(&bad.stderr);
    assert!(err.contains("tree node"), "failing cut named: {err}");

    let wide = run(&[
        "verify",
        "--graph",
        path_str(&g5),
        "--layout",
        path_str(&l5),
        "--width",
        "2",
    ]);
    assert_eq!(exit_code(&wide), 0, "a cycle has mim-width 2");
}

#[test]
fn gen_hardness_emits_certified_instance() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "c7.col", C7);
    let out_dir = dir.path().join("instance");
    let gen = run(&[
        "gen-hardness",
        "--vc-graph",
        path_str(&h),
        "--preset",
        "clique",
        "--out-dir",
        path_str(&out_dir),
    ]);
    assert_eq!(exit_code(&gen), 0, "stderr: {}", String::from_utf8_lossy(&gen.stderr));

    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["preset"], "clique");
    assert_eq!(manifest["n"], 7);
    assert_eq!(manifest["ell"], 1);
    assert_eq!(manifest["threshold_map"]["multiplier"], 7);
    assert_eq!(manifest["certified_width"], 2);

    let graph_path = out_dir.join("graph.col");
    let layout_path = out_dir.join("layout.nwk");
    let verify = run(&[
        "verify",
        "--graph",
        path_str(&graph_path),
        "--layout",
        path_str(&layout_path),
        "--width",
        "2",
    ]);
    assert_eq!(exit_code(&verify), 0);
}

#[test]
fn gen_hardness_rejects_girth_below_seven() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "c5.col", C5);
    let out_dir = dir.path().join("instance");
    let gen = run(&[
        "gen-hardness",
        "--vc-graph",
        path_str(&h),
        "--preset",
        "cluster",
        "--out-dir",
        path_str(&out_dir),
    ]);
    assert_eq!(exit_code(&gen), 4);
    assert!(!out_dir.exists(), "no files on a rejected input");
}

#[test]
fn build_interval_model_gives_verified_layout() {
    let dir = TempDir::new().unwrap();
    let model = write(dir.path(), "nested.iv", "a 0 10\nb 1 9\nc 2 8\n");
    let g_out = dir.path().join("nested.col");
    let l_out = dir.path().join("nested.nwk");
    let build = run(&[
        "build",
        "--kind",
        "interval",
        "--input",
        path_str(&model),
        "--graph-out",
        path_str(&g_out),
        "--layout-out",
        path_str(&l_out),
    ]);
    assert_eq!(exit_code(&build), 0);
    let dimacs = std::fs::read_to_string(&g_out).unwrap();
    assert!(
        dimacs.starts_with("p edge 3 3"),
        "nested intervals pairwise intersect: {dimacs}"
    );
    let verify = run(&["verify", "--graph", path_str(&g_out), "--layout", path_str(&l_out)]);
    assert_eq!(exit_code(&verify), 0);
}

#[test]
fn build_permutation_reversal_gives_complete_graph() {
    let dir = TempDir::new().unwrap();
    let model = write(dir.path(), "rev.perm", "5 4 3 2 1\n");
    let g_out = dir.path().join("k5.col");
    let l_out = dir.path().join("k5.nwk");
    let build = run(&[
        "build",
        "--kind",
        "permutation",
        "--input",
        path_str(&model),
        "--graph-out",
        path_str(&g_out),
        "--layout-out",
        path_str(&l_out),
    ]);
    assert_eq!(exit_code(&build), 0);
    let dimacs = std::fs::read_to_string(&g_out).unwrap();
    assert!(dimacs.starts_with("p edge 5 10"), "reversal crosses every pair: {dimacs}");
    let verify = run(&["verify", "--graph", path_str(&g_out), "--layout", path_str(&l_out)]);
    assert_eq!(exit_code(&verify), 0);
}

#[test]
fn build_cotree_join_of_unions_gives_biclique() {
    let dir = TempDir::new().unwrap();
    let model = write(dir.path(), "k22.ct", "J(U(a,b),U(c,d))\n");
    let g_out = dir.path().join("k22.col");
    let l_out = dir.path().join("k22.nwk");
    let build = run(&[
        "build",
        "--kind",
        "cotree",
        "--input",
        path_str(&model),
        "--graph-out",
        path_str(&g_out),
        "--layout-out",
        path_str(&l_out),
    ]);
    assert_eq!(exit_code(&build), 0);
    let dimacs = std::fs::read_to_string(&g_out).unwrap();
    let edges: Vec<&str> = dimacs.lines().filter(|ln| ln.starts_with("e ")).collect();
    assert_eq!(edges, vec!["e 1 3", "e 1 4", "e 2 3", "e 2 4"]);
    let verify = run(&["verify", "--graph", path_str(&g_out), "--layout", path_str(&l_out)]);
    assert_eq!(exit_code(&verify), 0);
}

#[test]
fn build_order_kind_needs_a_graph() {
    let dir = TempDir::new().unwrap();
    let model = write(dir.path(), "p4.ord", "1 2 3 4\n");
    let l_out = dir.path().join("p4.nwk");
    let missing = run(&[
        "build",
        "--kind",
        "order",
        "--input",
        path_str(&model),
        "--layout-out",
        path_str(&l_out),
    ]);
    assert_eq!(exit_code(&missing), 2);

    let g = write(dir.path(), "p4.col", P4);
    let built = run(&[
        "build",
        "--kind",
        "order",
        "--input",
        path_str(&model),
        "--graph",
        path_str(&g),
        "--layout-out",
        path_str(&l_out),
    ]);
    assert_eq!(exit_code(&built), 0);
    assert_eq!(std::fs::read_to_string(&l_out).unwrap().trim(), "(((1,2),3),4);");
}

#[test]
fn oracle_answers_match_known_values() {
    let dir = TempDir::new().unwrap();
    let p4 = write(dir.path(), "p4.col", P4);
    let c5 = write(dir.path(), "c5.col", C5);

    let size = run(&[
        "oracle",
        "max-induced",
        "--problem",
        "cluster",
        "--graph",
        path_str(&p4),
    ]);
    assert_eq!(exit_code(&size), 0);
    assert_eq!(stdout_json(&size)["size"], 3);

    let deletion = run(&[
        "oracle",
        "min-deletion",
        "--problem",
        "cluster",
        "--graph",
        path_str(&p4),
    ]);
    assert_eq!(stdout_json(&deletion)["size"], 1);

    let cover = run(&["oracle", "vertex-cover", "--graph", path_str(&c5)]);
    assert_eq!(stdout_json(&cover)["size"], 3);

    let mim = run(&[
        "oracle",
        "mimwidth-le",
        "--graph",
        path_str(&c5),
        "--width",
        "1",
    ]);
    assert_eq!(stdout_json(&mim)["answer"], false);

    let mim2 = run(&[
        "oracle",
        "mimwidth-le",
        "--graph",
        path_str(&c5),
        "--width",
        "2",
    ]);
    assert_eq!(stdout_json(&mim2)["answer"], true);
}

#[test]
fn oracle_guard_exits_with_guard_code() {
    let dir = TempDir::new().unwrap();
    let p9 = write(
        dir.path(),
        "p9.col",
        "p edge 9 8\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 8\ne 8 9\n",
    );
    let out = run(&["oracle", "mimwidth-le", "--graph", path_str(&p9), "--width", "1"]);
    assert_eq!(exit_code(&out), 5);
}

#[test]
fn solve_output_is_byte_identical_modulo_runtime() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p4.col", P4);
    let l = write(dir.path(), "p4.nwk", P4_LAYOUT);
    let args = [
        "solve",
        "--problem",
        "polar",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
    ];
    let normalize = |out: &Output| -> String {
        String::from_utf8(out.stdout.clone())
            .unwrap()
            .lines()
            .map(|ln| {
                if ln.trim_start().starts_with("\"runtime_ms\"") {
                    "    \"runtime_ms\": 0".to_string()
                } else {
                    ln.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = run(&args);
    let second = run(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(normalize(&first), normalize(&second));
}

#[test]
fn chain_orders_dump_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p4.col", P4);
    let l = write(dir.path(), "p4.nwk", P4_LAYOUT);
    let dump = dir.path().join("p4.orders");
    let emit = run(&[
        "chain-orders",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
        "--output",
        path_str(&dump),
    ]);
    assert_eq!(exit_code(&emit), 0);

    let ok = run(&[
        "verify",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
        "--chain-orders",
        path_str(&dump),
    ]);
    assert_eq!(exit_code(&ok), 0);

    let text = std::fs::read_to_string(&dump).unwrap();
    assert!(text.contains("node 2 lower: 1 2"), "dump layout changed: {text}");
    let corrupted = write(
        dir.path(),
        "corrupted.orders",
        &text.replace("node 2 lower: 1 2", "node 2 lower: 2 1"),
    );
    let bad = run(&[
        "verify",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
        "--chain-orders",
        path_str(&corrupted),
    ]);
    assert_eq!(exit_code(&bad), 3);
    let err = String::from_utf8_lossy(&bad.stderr);
    assert!(err.contains("condition"), "violated condition named: {err}");
}

#[test]
fn chain_orders_refuses_layouts_above_width_one() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c5.col", C5);
    let l = write(dir.path(), "c5.nwk", C5_LAYOUT);
    let out = run(&["chain-orders", "--graph", path_str(&g), "--layout", path_str(&l)]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn thread_cap_flag_and_env_are_honored() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p4.col", P4);
    let l = write(dir.path(), "p4.nwk", P4_LAYOUT);

    let flagged = run(&[
        "solve",
        "--threads",
        "2",
        "--problem",
        "split",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
    ]);
    assert_eq!(exit_code(&flagged), 0);
    assert_eq!(stdout_json(&flagged)["size"], 4, "P4 is itself a split graph");

    let solve_args = [
        "solve",
        "--problem",
        "split",
        "--graph",
        path_str(&g),
        "--layout",
        path_str(&l),
    ];
    let via_env = run_env(&solve_args, "MIMSOLVE_THREADS", "2");
    assert_eq!(exit_code(&via_env), 0);

    let bad_env = run_env(&solve_args, "MIMSOLVE_THREADS", "plenty");
    assert_eq!(exit_code(&bad_env), 2);
}
