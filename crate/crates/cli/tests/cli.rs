use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolpres"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn close_prints_transitive_consequence() {
    let ws = Workspace::new();
    let r = ws.file("r.txt", "geq 0 1\ngeq 1 2\n");
    let o = run(&["close", p(&r)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "geq 0 2"));
}

#[test]
fn close_flags_inconsistent_sets() {
    let ws = Workspace::new();
    let r = ws.file("r.txt", "geq 1 0\n");
    let o = run(&["close", p(&r)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("inconsistent"));
}

#[test]
fn check_reports_violating_triple() {
    let ws = Workspace::new();
    let t = ws.file("t.txt", "dom: 0 1 2\n0 1 GEQ\n1 2 GEQ\n");
    let o = run(&["check", p(&t)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(0, 1, 2)"));
    let ok = ws.file("ok.txt", "dom: 0 1 2\n0 1 GEQ\n1 2 GEQ\n0 2 GEQ\n");
    assert_eq!(run(&["check", p(&ok)]).status.code(), Some(0));
}

#[test]
fn parse_errors_exit_with_two() {
    let ws = Workspace::new();
    let t = ws.file("t.txt", "dom: 0 1\n0 1 SOMETIMES\n");
    let o = run(&["check", p(&t)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(run(&["check", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["close", p(&t), "--unknown"]).status.code(), Some(2));
}

#[test]
fn extend_then_algebra_lists_atoms() {
    let ws = Workspace::new();
    let r = ws.file("r.txt", "geq 0 1\nperp 0 2\n");
    let o = run(&["extend", p(&r)]);
    assert_eq!(o.status.code(), Some(0));
    let ext = stdout(&o);
    assert_eq!(ext, "dom: 0 1 2\n0 1 GEQ\n0 2 PERP\n1 2 PERP\n");
    let v = ws.file("v.txt", &ext);
    let o = run(&["algebra", p(&v)]);
    assert_eq!(o.status.code(), Some(0));
    let atoms: Vec<String> = stdout(&o)
        .lines()
        .filter_map(|l| l.strip_prefix("#   ").map(str::to_string))
        .collect();
    assert_eq!(atoms, ["000", "001", "100", "110"]);

    let o = run(&["extend", p(&r), "--dom", "0,1,2,3"]);
    assert!(stdout(&o).starts_with("dom: 0 1 2 3\n"));
}

#[test]
fn merge_combines_domains() {
    let ws = Workspace::new();
    let a = ws.file("a.txt", "dom: 0 1\n0 1 GEQ\n");
    let b = ws.file("b.txt", "dom: 1 2\n1 2 GEQ\n");
    let o = run(&["merge", p(&a), p(&b)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 2 GEQ"));
}

#[test]
fn invariants_line() {
    let ws = Workspace::new();
    let pres = ws.file("p.txt", "gens: 0 1\nforbid 0=0 1=1\n");
    let o = run(&["invariants", p(&pres)]);
    assert_eq!(stdout(&o), "atoms=3 d=3 pi=3 end=27 ideals=8\n");
}

#[test]
fn theory_standard_model_round_trips_through_check() {
    let ws = Workspace::new();
    let v = ws.file("v.txt", "dom: 0 1\n0 1 PERP\n");
    let o = run(&["theory-t", "standard", p(&v), "--block", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let m = ws.file("m.txt", &stdout(&o));
    let o = run(&["theory-t", "check", p(&m)]);
    let report = stdout(&o);
    assert!(
        report.contains("(a) pass") && report.contains("waived"),
        "{report}"
    );
}

#[test]
fn sampler_output_is_deterministic() {
    let ws = Workspace::new();
    let s = ws.file("s.txt", "dom 0\ndom 1\ndense 4 0=1 1=0\n");
    let args = [
        "sample-generic",
        "--lambda",
        "8",
        "--mu",
        "4",
        "--seed",
        "7",
        "--schedule",
        p(&s),
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&run(&args)));
    let out = stdout(&first);
    assert!(out.contains("0 4 GEQ") && out.contains("1 4 PERP"), "{out}");

    let bad = ws.file("bad.txt", "dense 4 0=1 0=0\n");
    let o = run(&[
        "sample-generic",
        "--lambda",
        "8",
        "--mu",
        "4",
        "--schedule",
        p(&bad),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn product_over_principal_and_trivial_filters() {
    let ws = Workspace::new();
    let a = ws.file("a.txt", "gens: 0 1\nforbid 0=0 1=1\n");
    let b = ws.file("b.txt", "gens: 0\n");
    let f = ws.file("f.txt", "principal 0\n");
    let o = run(&["product", "--filter", p(&f), p(&a), p(&b)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isomorphic to factor 0"));
    let t = ws.file("t.txt", "trivial\n");
    let o = run(&["product", "--filter", p(&t), p(&a), p(&b)]);
    assert!(stdout(&o).contains("# atoms: 5"));
}

#[test]
fn theorem_b_checks() {
    let ws = Workspace::new();
    let br = ws.file("b.txt", "(0,0)\n(1,0)\n(1,1)\n");
    let base = [
        "theorem-b",
        "--depth",
        "2",
        "--widths",
        "2,2",
        "--branches",
        p(&br),
        "--seed",
        "1",
    ];
    let o = run(&base);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("partition").count(), 3);
    assert_eq!(out.matches("witness").count(), 3);
    let o = run(&[&base[..], &["--check", "partition"]].concat());
    assert_eq!(stdout(&o).matches("witness").count(), 0);

    let dup = ws.file("d.txt", "(0,0)\n(0,0)\n");
    let o = run(&[
        "theorem-b",
        "--depth",
        "2",
        "--widths",
        "2,2",
        "--branches",
        p(&dup),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn version_and_help() {
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    let help = stdout(&run(&["--help"]));
    for sub in [
        "check",
        "close",
        "extend",
        "merge",
        "algebra",
        "invariants",
        "theory-t",
        "sample-generic",
        "product",
        "theorem-b",
    ] {
        assert!(help.contains(sub), "missing {sub}");
    }
}
