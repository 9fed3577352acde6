use std::fs;
use std::path::{Path, PathBuf};

use bnconsensus::io::parse_dag;
use bnconsensus_cli::run;
use tempfile::TempDir;

const FIVE: &str = "node I 2\nnode J 2\nnode K 2\nnode L 2\nnode M 2\narc I K\narc J K\narc J L\narc L M\n";

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn bn(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bnconsensus").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p: PathBuf = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn five_node_files() -> (TempDir, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let dag = write(dir.path(), "five.dag", FIVE);
    let ord = write(dir.path(), "five.ord", "M I K J L\n");
    (dir, dag, ord)
}

#[test]
fn mdi_legacy_and_corrected() {
    let (_d, dag, ord) = five_node_files();
    let legacy = bn(&["mdi", &dag, &ord, "--method", "b2", "--tie", "legacy-trace"]);
    assert_eq!(legacy.code, 0, "{}", legacy.stderr);
    let (g, _) = parse_dag(&legacy.stdout).unwrap();
    assert_eq!(g.arc_count(), 8);
    assert!(g.has_arc(4, 0), "legacy output keeps M -> I");

    let corrected = bn(&["mdi", &dag, &ord, "--tie", "corrected"]);
    assert_eq!(corrected.code, 0);
    let (h, _) = parse_dag(&corrected.stdout).unwrap();
    assert_eq!(h.arc_count(), 7);
    let brute = bn(&["mdi", &dag, &ord, "--method", "bruteforce"]);
    assert_eq!(brute.stdout, corrected.stdout);
    let iamb = bn(&["mdi", &dag, &ord, "--method", "iamb"]);
    assert_eq!(iamb.stdout, corrected.stdout);
}

#[test]
fn mdi_trace_goes_to_stderr() {
    let (_d, dag, ord) = five_node_files();
    let r = bn(&["mdi", &dag, &ord, "--method", "a", "--tie", "legacy-trace", "--trace"]);
    assert_eq!(r.code, 0);
    let first: Vec<&str> = r.stderr.lines().take(3).collect();
    assert_eq!(first, ["ADD I J", "REVERSE J K", "SWAP J K"]);
    assert!(r.stdout.starts_with("node I 2\n"));
}

#[test]
fn dsep_answers() {
    let (_d, dag, _) = five_node_files();
    let r = bn(&["dsep", &dag, "--x", "I", "--y", "M", "--z"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "SEPARATED\n"));
    let r = bn(&["dsep", &dag, "--x", "I", "--y", "J", "--z", "K"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "CONNECTED\n"));
    let r = bn(&["dsep", &dag, "--x", "I", "--y", "Q"]);
    assert_eq!(r.code, 2);
    let r = bn(&["dsep", &dag, "--x", "I", "--y", "I"]);
    assert_eq!(r.code, 2);
}

#[test]
fn params_counts() {
    let (d, dag, _) = five_node_files();
    assert_eq!(bn(&["params", &dag]).stdout, "10\n");
    let other = write(d.path(), "x.dag", "node A 3\nnode B 2\narc A B\n");
    assert_eq!(bn(&["params", &other]).stdout, "5\n");
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write(dir.path(), "g1.dag", "node A 2\nnode B 2\nnode C 2\narc A B\n");
    let complete = write(
        dir.path(),
        "complete.dag",
        "node A 2\nnode B 2\nnode C 2\narc A B\narc A C\narc B C\n",
    );
    let r = bn(&["verify", &complete, &g1, "--bound", "1"]);
    assert_eq!(r.code, 1, "{}", r.stdout);
    assert!(r.stdout.contains("independence map: yes"));
    assert!(r.stdout.contains("within bound 1: no"));
    assert_eq!(bn(&["verify", &complete, &g1, "--bound", "7"]).code, 0);
    assert_eq!(bn(&["verify", &complete, &g1]).code, 0);

    let empty = write(dir.path(), "empty.dag", "node A 2\nnode B 2\nnode C 2\n");
    let r = bn(&["verify", &empty, &g1]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("violates"));
    assert_eq!(bn(&["verify", &complete, &g1, "--bound", "x"]).code, 2);
}

#[test]
fn consensus_commands() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write(
        dir.path(),
        "g1.dag",
        "node I 2\nnode J 2\nnode K 2\nnode L 2\narc J I\narc I K\narc K L\n",
    );
    // Same graph family, nodes declared in a different order.
    let g2 = write(
        dir.path(),
        "g2.dag",
        "node L 2\nnode K 2\nnode J 2\nnode I 2\narc I J\narc J L\narc L K\n",
    );
    let ord = write(dir.path(), "o.ord", "I J K L\n");
    let r = bn(&["consensus", &g1, &g2, "--order", &ord]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("# parameters: "));
    let (u, _) = parse_dag(&r.stdout).unwrap();
    assert_eq!(u.names(), &["I", "J", "K", "L"]);

    let exact = bn(&["consensus-exact", &g1, &g2]);
    assert_eq!(exact.code, 0, "{}", exact.stderr);
    assert!(exact.stdout.contains("# optimum 2 of"));

    let args = [
        "consensus-search",
        &g1,
        &g2,
        "--strategy",
        "annealing",
        "--seed",
        "3",
        "--iters",
        "50",
    ];
    let a = bn(&args);
    let b = bn(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains("# order: "));
    assert_eq!(bn(&["consensus-search", &g1, "--iters", "0"]).code, 2);
    assert_eq!(bn(&["consensus-exact", &g1, "--limit", "3"]).code, 2);
}

#[test]
fn mismatched_inputs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write(dir.path(), "g1.dag", "node A 2\nnode B 2\n");
    let g2 = write(dir.path(), "g2.dag", "node A 2\nnode C 2\n");
    let g3 = write(dir.path(), "g3.dag", "node A 2\nnode B 3\n");
    let ord = write(dir.path(), "o.ord", "A B\n");
    assert_eq!(bn(&["consensus", &g1, &g2, "--order", &ord]).code, 2);
    assert_eq!(bn(&["consensus", &g1, &g3, "--order", &ord]).code, 2);
    assert_eq!(bn(&["params", "/nonexistent/file.dag"]).code, 2);
    let bad = write(dir.path(), "bad.dag", "arc A B\n");
    let r = bn(&["params", &bad]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 1"));
}

#[test]
fn g2h_and_trace_validation() {
    let (d, dag, ord) = five_node_files();
    let legacy = bn(&["mdi", &dag, &ord, "--tie", "legacy-trace"]).stdout;
    let h = write(d.path(), "h.dag", &legacy);
    let trace = d.path().join("t.trace");
    let trace_s = trace.to_str().unwrap();
    let r = bn(&["g2h", &dag, &h, "--emit-trace", trace_s]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, legacy);
    let body = fs::read_to_string(&trace).unwrap();
    assert_eq!(body.lines().filter(|l| l.starts_with("ADD")).count(), 4);
    assert_eq!(bn(&["validate-trace", &dag, &h, trace_s]).code, 0);

    let bogus = write(d.path(), "bogus.trace", "REVERSE I K\n");
    let r = bn(&["validate-trace", &dag, &h, &bogus]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("INVALID"));

    // The reverse direction is not an independence map.
    assert_eq!(bn(&["g2h", &h, &dag]).code, 2);
}

#[test]
fn gen_fas_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let edges = write(dir.path(), "g.edges", "V1 V2\n");
    let prefix = dir.path().join("red");
    let prefix = prefix.to_str().unwrap();
    let r = bn(&["gen-fas", &edges, "--out-prefix", prefix, "--k", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let counts: Vec<usize> = (1..=3)
        .map(|i| {
            let text = fs::read_to_string(format!("{prefix}-c{i}.dag")).unwrap();
            let (g, c) = parse_dag(&text).unwrap();
            assert_eq!(c.as_slice(), &[9, 9, 9, 2, 3, 9, 2, 2, 9]);
            g.arc_count()
        })
        .collect();
    assert_eq!(counts, [7, 2, 2]);
    assert_eq!(r.stdout.lines().count(), 3);
}

#[test]
fn usage_errors() {
    assert_eq!(bn(&["frobnicate"]).code, 2);
    assert_eq!(bn(&["mdi"]).code, 2);
    let help = bn(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("consensus-search"));
}

#[test]
fn binary_exit_status() {
    let (_d, dag, _) = five_node_files();
    let bin = env!("CARGO_BIN_EXE_bnconsensus");
    let ok = std::process::Command::new(bin).args(["params", &dag]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "10\n");
    let bad = std::process::Command::new(bin)
        .args(["params", "/nonexistent"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
