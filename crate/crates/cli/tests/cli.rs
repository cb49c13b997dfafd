use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use pangenome_lcs::report::{AlignmentReport, ChainReport};
use pangenome_lcs::{Instance, ReachMatrix};
use pangenome_lcs_cli::{run, Output, EXIT_INPUT, EXIT_OK, EXIT_USAGE};
use tempfile::TempDir;

const TWO_VERTEX: &str = "V a ab\nV b ba\nE a b\n";

fn pglcs(args: &[&str]) -> Output {
    pglcs_stdin(args, "")
}

fn pglcs_stdin(args: &[&str], stdin: &str) -> Output {
    let argv = std::iter::once("pglcs").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes(), false)
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert_eq!(out.code, EXIT_OK, "stderr: {}", out.stderr);
    serde_json::from_str(out.stdout.trim()).unwrap()
}

fn binary(args: &[&str], stdin: &[u8]) -> std::process::Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pglcs"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn lcs_on_two_vertex_example() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.tsv", TWO_VERTEX);
    let v = json(&pglcs(&["lcs", "--graph", s(&g), "--query", "aba", "--json"]));
    assert_eq!(v["problem"], "lcs-sg");
    assert_eq!(v["score"], 3);
    assert_eq!(v["subsequence"], "aba");
    assert_eq!(v["embedding"].as_array().unwrap().len(), 3);
}

#[test]
fn emitted_alignment_revalidates() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.tsv", TWO_VERTEX);
    let out = pglcs(&["fglcs", "--graph", s(&g), "--query", "abab", "--k1", "2", "--k2", "2", "--json"]);
    let rep: AlignmentReport = serde_json::from_str(out.stdout.trim()).unwrap();
    let graph = pangenome_lcs::graph::parse_tsv(TWO_VERTEX.as_bytes()).unwrap();
    let cd = pangenome_lcs::graph::CharDistMatrix::new(&pangenome_lcs::graph::CharGraph::new(&graph));
    let k = pangenome_lcs::GapParams::new(
        pangenome_lcs::GapLimit::Bounded(2),
        pangenome_lcs::GapLimit::Bounded(2),
    );
    rep.to_gap_alignment(b"abab", &graph)
        .unwrap()
        .validate(b"abab", &graph, k, &ReachMatrix::new(&graph), &cd)
        .unwrap();
}

#[test]
fn unbounded_fglcs_equals_lcs() {
    for seed in 0..20u64 {
        let bundle = pglcs(&["gen", "--seed", &seed.to_string()]).stdout;
        let lcs = json(&pglcs_stdin(&["lcs", "--instance", "-", "--json"], &bundle));
        let gap = json(&pglcs_stdin(
            &["fglcs", "--instance", "-", "--k1", "inf", "--k2", "inf", "--json"],
            &bundle,
        ));
        assert_eq!(lcs["score"], gap["score"], "seed {seed}");
    }
}

#[test]
fn generated_instance_passes_oracle_check_through_a_pipe() {
    let gen = binary(&["gen", "--seed", "7"], b"");
    assert!(gen.status.success());
    for cmd in [
        vec!["lcs", "--instance", "-", "--oracle-check"],
        vec!["fglcs", "--instance", "-", "--k1", "2", "--k2", "3", "--oracle-check"],
        vec!["chain", "--instance", "-", "--oracle-check"],
        vec!["chain", "--instance", "-", "--objective", "count", "--oracle-check"],
    ] {
        let out = binary(&cmd, &gen.stdout);
        assert_eq!(out.status.code(), Some(0), "{cmd:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn gen_is_reproducible() {
    let a = pglcs(&["gen"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, pglcs(&["gen"]).stdout);
    let b = pglcs(&["gen", "--seed", "3", "--vertices", "5", "--cyclic"]);
    assert_eq!(b.stdout, pglcs(&["gen", "--seed", "3", "--vertices", "5", "--cyclic"]).stdout);
    assert_ne!(a.stdout, b.stdout);
    Instance::parse_bundle(b.stdout.as_bytes()).unwrap();
}

#[test]
fn gen_warns_outside_budget() {
    let out = pglcs(&["gen", "--vertices", "20", "--total-len", "40"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stderr.contains("budget"));
    let out = pglcs(&["gen", "--vertices", "5", "--total-len", "3"]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.tsv", TWO_VERTEX);
    assert_eq!(pglcs(&[]).code, EXIT_USAGE);
    assert_eq!(pglcs(&["lcs", "--query", "a"]).code, EXIT_USAGE);
    assert_eq!(pglcs(&["fglcs", "--graph", s(&g), "--query", "a", "--k1", "1"]).code, EXIT_USAGE);
    assert_eq!(
        pglcs(&["fglcs", "--graph", s(&g), "--query", "a", "--k1", "0", "--k2", "1"]).code,
        EXIT_USAGE
    );
    assert_eq!(pglcs(&["lcs", "--graph", s(&g)]).code, EXIT_USAGE);
    assert_eq!(pglcs(&["lcs", "--graph", "-", "--query-file", "-"]).code, EXIT_USAGE);
    assert_eq!(pglcs(&["--help"]).code, EXIT_OK);

    let bad = write(&dir, "bad.tsv", "V a ab\nE a zz\n");
    let out = pglcs(&["lcs", "--graph", s(&bad), "--query", "a"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("zz"));
    assert_eq!(pglcs_stdin(&["lcs", "--graph", "-", "--query", "a"], "V a\n").code, EXIT_INPUT);
    let cyc = write(&dir, "c.tsv", "V a ab\nE a a\n");
    // The oracle refuses cyclic graphs; that is an input error, not a mismatch.
    assert_eq!(
        pglcs(&["lcs", "--graph", s(&cyc), "--query", "ab", "--oracle-check"]).code,
        EXIT_INPUT
    );
    assert_eq!(pglcs(&["lcs", "--graph", s(&cyc), "--query", "ab"]).code, EXIT_OK);
}

#[test]
fn query_file_and_jobs_keep_input_order() {
    let dir = TempDir::new().unwrap();
    let bundle = pglcs(&["gen", "--seed", "11", "--total-len", "16"]).stdout;
    let inst = write(&dir, "inst.txt", &bundle);
    let queries: Vec<String> = (0..24)
        .map(|i| ["ACG", "GATTACA", "", "CCCC", "AGCAGT", "T"][i % 6].repeat(1 + i % 3))
        .collect();
    let qf = write(&dir, "q.txt", &(queries.join("\n") + "\n"));
    let one = pglcs(&["lcs", "--instance", s(&inst), "--query-file", s(&qf), "--json"]);
    let four = pglcs(&["lcs", "--instance", s(&inst), "--query-file", s(&qf), "--json", "--jobs", "4"]);
    assert_eq!(one.code, EXIT_OK);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout.lines().count(), queries.len());
}

#[test]
fn gfa_input_by_extension() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.gfa",
        "H\tVN:Z:1.0\nS\ta\tab\nS\tb\tba\nL\ta\t+\tb\t+\t0M\nP\tp\ta+,b+\t*\n",
    );
    let out = pglcs(&["lcs", "--graph", s(&g), "--query", "aba", "--output", "tsv"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("3\taba\t"));
    assert!(out.stderr.contains("skipped 2"));
    let rev = write(&dir, "r.gfa", "S\ta\tab\nS\tb\tba\nL\ta\t+\tb\t-\t0M\n");
    assert_eq!(pglcs(&["lcs", "--graph", s(&rev), "--query", "a"]).code, EXIT_INPUT);
}

#[test]
fn chain_tsv_is_a_seed_file() {
    let dir = TempDir::new().unwrap();
    let bundle = pglcs(&["gen", "--seed", "5"]).stdout;
    let inst = write(&dir, "inst.txt", &bundle);
    let first = pglcs(&["chain", "--instance", s(&inst), "--output", "tsv"]);
    assert_eq!(first.code, EXIT_OK);
    assert!(first.stdout.starts_with("# memc score "));

    let instance = Instance::parse_bundle(bundle.as_bytes()).unwrap();
    let g = write(&dir, "g.tsv", &pangenome_lcs::graph::write_tsv(&instance.graph));
    let seeds = write(&dir, "chain.tsv", &first.stdout);
    let again = json(&pglcs(&["chain", "--graph", s(&g), "--seeds", s(&seeds), "--json"]));
    let rep: ChainReport = serde_json::from_value(again).unwrap();
    let want = first.stdout.lines().next().unwrap().rsplit(' ').next().unwrap();
    assert_eq!(rep.score.to_string(), want);
    let chained = rep.to_seeds(&instance.graph).unwrap();
    assert_eq!(chained.len(), first.stdout.lines().count() - 1);
}

#[test]
fn chain_validates_seeds_against_query() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.tsv", TWO_VERTEX);
    let seeds = write(&dir, "s.tsv", "a 0 1 0 1\nb 0 1 2 3\n");
    let ok = json(&pglcs(&["chain", "--graph", s(&g), "--seeds", s(&seeds), "--json"]));
    assert_eq!(ok["score"], 4);
    let count = json(&pglcs(&[
        "chain", "--graph", s(&g), "--seeds", s(&seeds), "--objective", "count", "--json",
    ]));
    assert_eq!(count["problem"], "msp");
    assert_eq!(count["score"], 2);
    // "ab" then "ba" reads "abba"; a query spelling something else is rejected.
    let out = pglcs(&["chain", "--graph", s(&g), "--seeds", s(&seeds), "--query", "abab"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert_eq!(
        pglcs(&["chain", "--graph", s(&g), "--seeds", s(&seeds), "--query", "abba"]).code,
        EXIT_OK
    );
}

#[test]
fn lp_on_debug_dag() {
    let dir = TempDir::new().unwrap();
    let dag = write(&dir, "d.tsv", "N 0 1\nN 1 5\nN 2 2\nN 3 4\nA 0 1\nA 0 2\nA 2 3\n");
    let v = json(&pglcs(&["lp", "--dag", s(&dag), "--json"]));
    assert_eq!(v["score"], 7);
    assert_eq!(v["path"], serde_json::json!([0, 2, 3]));
    let edge = write(&dir, "e.tsv", "N 0 0\nN 1 0\nN 2 0\nA 0 1 3\nA 1 2 4\n");
    let v = json(&pglcs(&["lp", "--dag", s(&edge), "--mode", "edge", "--json"]));
    assert_eq!(v["score"], 7);
    let cyc = write(&dir, "c.tsv", "N 0 1\nN 1 1\nA 0 1\nA 1 0\n");
    assert_eq!(pglcs(&["lp", "--dag", s(&cyc)]).code, EXIT_INPUT);
}

#[test]
fn dumped_h_solves_to_the_lcs() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.tsv", TWO_VERTEX);
    let h = pglcs(&["dump", "--what", "h", "--graph", s(&g), "--query", "aba"]);
    let dag = write(&dir, "h.tsv", &h.stdout);
    let v = json(&pglcs(&["lp", "--dag", s(&dag), "--json"]));
    assert_eq!(v["score"], 3);

    let reach = pglcs(&["dump", "--what", "reach", "--graph", s(&g)]);
    assert_eq!(reach.stdout, "a\tb\n");
    let chars = pglcs(&["dump", "--what", "chars", "--graph", s(&g)]);
    assert!(chars.stdout.contains("a\t1\tb\t0\t1\n"));
    assert!(chars.stdout.contains("a\t0\tb\t1\t3\n"));
    assert_eq!(pglcs(&["dump", "--what", "hgap", "--graph", s(&g), "--query", "a"]).code, EXIT_USAGE);
}

#[test]
fn oracle_and_mems_subcommands() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.tsv", TWO_VERTEX);
    let out = pglcs(&["oracle", "--problem", "lcs", "--graph", s(&g), "--query", "aba"]);
    assert_eq!(out.stdout, "3\n");
    let v = json(&pglcs(&[
        "oracle", "--problem", "fglcs", "--graph", s(&g), "--query", "aba", "--k1", "1", "--k2", "1",
        "--json",
    ]));
    assert_eq!(v["problem"], "fglcs-sg");
    assert_eq!(pglcs(&["oracle", "--problem", "fglcs", "--graph", s(&g), "--query", "a"]).code, EXIT_USAGE);

    let mems = pglcs(&["mems", "--graph", s(&g), "--query", "ba"]);
    assert_eq!(mems.code, EXIT_OK);
    let seeds = write(&dir, "m.tsv", &mems.stdout);
    let v = json(&pglcs(&["oracle", "--problem", "memc", "--graph", s(&g), "--seeds", s(&seeds), "--json"]));
    let solved = json(&pglcs(&["chain", "--graph", s(&g), "--seeds", s(&seeds), "--json"]));
    assert_eq!(v["score"], solved["score"]);
}

#[test]
fn color_only_when_enabled() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.tsv", TWO_VERTEX);
    let args = ["pglcs", "lcs", "--graph", s(&g), "--query", "aba"];
    assert!(run(args, &mut &b""[..], true).stdout.contains("\x1b[1m"));
    assert!(!run(args, &mut &b""[..], false).stdout.contains('\x1b'));
    let json_args = ["pglcs", "lcs", "--graph", s(&g), "--query", "aba", "--json"];
    assert!(!run(json_args, &mut &b""[..], true).stdout.contains('\x1b'));
}

#[test]
fn binary_honours_no_color() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.tsv", TWO_VERTEX);
    // Piped stdout is never colored, with or without NO_COLOR.
    let out = Command::new(env!("CARGO_BIN_EXE_pglcs"))
        .args(["lcs", "--graph", s(&g), "--query", "aba"])
        .env("NO_COLOR", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!String::from_utf8_lossy(&out.stdout).contains('\x1b'));
}
