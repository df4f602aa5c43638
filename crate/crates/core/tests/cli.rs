use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use psi_score::synth::random_graph;
use psi_score::write_edge_list;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_psi-score"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn psi-score")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn write_random_graph(
    dir: &TempDir,
    name: &str,
    n: usize,
    p: f64,
    seed: u64,
    complete: bool,
) -> PathBuf {
    let g = random_graph(n, p, seed, complete).unwrap();
    let mut buf = Vec::new();
    write_edge_list(&g, &mut buf).unwrap();
    write(dir, name, std::str::from_utf8(&buf).unwrap())
}

fn ranking_rows(csv: &str) -> Vec<(u64, f64, usize)> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("label"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                f[0].parse().unwrap(),
                f[1].parse().unwrap(),
                f[2].parse().unwrap(),
            )
        })
        .collect()
}

fn labels_in_order(csv: &str) -> Vec<u64> {
    ranking_rows(csv).into_iter().map(|r| r.0).collect()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn rank_chain_graph() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "chain.txt", "% chain\n0 1\n");
    let out = run(&[
        "rank",
        "--edges",
        p(&edges),
        "--homogeneous",
        "0.5",
        "0.5",
        "--method",
        "power-psi",
        "--tol",
        "1e-12",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert_eq!(
        text,
        "label,psi,rank\n1,3.7500000000000000e-1,1\n0,2.5000000000000000e-1,2\n"
    );
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("nodes=2 edges=1"), "{stderr}");
    assert!(stderr.contains("converged=true"), "{stderr}");
}

#[test]
fn exact_and_power_psi_rank_alike() {
    let dir = TempDir::new().unwrap();
    let edges = write_random_graph(&dir, "g.txt", 10, 0.3, 5, false);
    let common = ["--edges", p(&edges), "--random-seed", "9", "--tol", "1e-12"];
    let exact = run(&[&["rank", "--method", "exact"][..], &common].concat());
    let fast = run(&[&["rank", "--method", "power-psi"][..], &common].concat());
    assert!(exact.status.success() && fast.status.success());
    assert_eq!(
        labels_in_order(&stdout(&exact)),
        labels_in_order(&stdout(&fast))
    );
    for (a, b) in ranking_rows(&stdout(&exact))
        .iter()
        .zip(ranking_rows(&stdout(&fast)))
    {
        assert!((a.1 - b.1).abs() < 1e-12);
    }
}

#[test]
fn power_nf_writes_output_file() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "chain.txt", "0 1\n");
    let out_path = dir.path().join("rank.csv");
    let out = run(&[
        "rank",
        "--edges",
        p(&edges),
        "--homogeneous",
        "0.5",
        "0.5",
        "--method",
        "power-nf",
        "--tol",
        "1e-14",
        "--parallel",
        "-o",
        p(&out_path),
    ]);
    assert!(out.status.success());
    let rows = ranking_rows(&fs::read_to_string(out_path).unwrap());
    assert_eq!(rows[0].0, 1);
    assert!((rows[0].1 - 0.375).abs() < 1e-12);
    assert!((rows[1].1 - 0.25).abs() < 1e-12);
}

#[test]
fn pagerank_three_cycle() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "cycle.txt", "1 2\n2 3\n3 1\n");
    let out = run(&["pagerank", "--edges", p(&edges), "--alpha", "0.85"]);
    assert!(out.status.success());
    let rows = ranking_rows(&stdout(&out));
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), vec![1, 2, 3]);
    for r in rows {
        assert!((r.1 - 1.0 / 3.0).abs() < 1e-12);
    }
}

#[test]
fn homogeneous_psi_ranks_like_pagerank() {
    let dir = TempDir::new().unwrap();
    let edges = write_random_graph(&dir, "g.txt", 40, 0.15, 12, true);
    let psi = run(&[
        "rank",
        "--edges",
        p(&edges),
        "--homogeneous",
        "0.15",
        "0.85",
        "--tol",
        "1e-12",
    ]);
    let pr = run(&[
        "pagerank",
        "--edges",
        p(&edges),
        "--alpha",
        "0.85",
        "--tol",
        "1e-12",
    ]);
    assert!(psi.status.success() && pr.status.success());
    assert_eq!(
        labels_in_order(&stdout(&psi)),
        labels_in_order(&stdout(&pr))
    );
}

#[test]
fn invalid_alpha_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.txt", "0 1\n");
    let out = run(&["pagerank", "--edges", p(&edges), "--alpha", "1.2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_decade_grid_has_eighteen_rows() {
    let dir = TempDir::new().unwrap();
    let edges = write_random_graph(&dir, "g.txt", 30, 0.2, 3, false);
    let out = run(&[
        "bench",
        "--edges",
        p(&edges),
        "--random-seed",
        "4",
        "--methods",
        "power-psi,power-nf",
        "--tolerances",
        "1e-1:1e-9",
        "--reference",
        "exact",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("# graph: "));
    assert!(text.contains("# activity: random uniform (0,1), seed 4"));
    assert!(text.contains("# reference: exact"));
    assert!(text.contains("# machine: "));
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(
        body[0],
        "method,tolerance,matvecs,iterations,seconds,error,converged"
    );
    assert_eq!(body.len(), 1 + 18);
    assert!(body[1..10].iter().all(|l| l.starts_with("power-nf,")));
    assert!(body[10..].iter().all(|l| l.starts_with("power-psi,")));
}

#[test]
fn bench_rejects_infeasible_reference() {
    let dir = TempDir::new().unwrap();
    let edges = write_random_graph(&dir, "g.txt", 30, 0.2, 3, false);
    let out = run(&["bench", "--edges", p(&edges), "--dense-cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    let out = run(&["bench", "--edges", p(&edges), "--tolerances", "1e-1:abc"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_activity_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.txt", "10 20\n20 30\n");
    let a = run(&["gen-activity", "--edges", p(&edges), "--seed", "42"]);
    let b = run(&["gen-activity", "--edges", p(&edges), "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().next(), Some("label,lambda,mu"));
    assert_eq!(text.lines().count(), 4);

    // the generated file feeds straight back into rank
    let act = write(&dir, "act.csv", &text);
    let out = run(&["rank", "--edges", p(&edges), "--activity", p(&act)]);
    assert!(out.status.success());
}

#[test]
fn gen_activity_homogeneous_and_usage_errors() {
    let out = run(&[
        "gen-activity",
        "--nodes",
        "3",
        "--homogeneous",
        "0.15",
        "0.85",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    for (k, row) in rows.iter().enumerate() {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[0], k.to_string());
        assert_eq!(f[1].parse::<f64>().unwrap(), 0.15);
        assert_eq!(f[2].parse::<f64>().unwrap(), 0.85);
    }
    assert_eq!(run(&["gen-activity", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["gen-activity", "--nodes", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn ranking_output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let edges = write_random_graph(&dir, "g.txt", 50, 0.1, 8, false);
    let args = ["rank", "--edges", p(&edges), "--random-seed", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.txt");
    assert_eq!(
        run(&["rank", "--edges", p(&missing)]).status.code(),
        Some(3)
    );

    let bad = write(&dir, "bad.txt", "0 1\n2\n");
    let out = run(&["rank", "--edges", p(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let edges = write(&dir, "g.txt", "0 1\n1 0\n");
    let out = run(&[
        "rank",
        "--edges",
        p(&edges),
        "--tol",
        "1e-15",
        "--max-iter",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).starts_with("# not converged after 1 iterations\nlabel,psi,rank\n"));

    let out = run(&["rank", "--edges", p(&edges), "--homogeneous", "0", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "rank",
        "--edges",
        p(&edges),
        "--random-seed",
        "1",
        "--homogeneous",
        "0.1",
        "0.2",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let act = write(&dir, "act.csv", "0,0.1,0.2\n");
    let out = run(&["rank", "--edges", p(&edges), "--activity", p(&act)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("label 1"));
}
