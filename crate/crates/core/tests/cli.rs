use std::path::PathBuf;

use stallings::cli::{run, Output};
use stallings::random::hypercube_graph;
use tempfile::TempDir;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn write(&self, name: &str, text: &str) -> String {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn stallings(args: &[&str]) -> Output {
    run(std::iter::once("stallings").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let o = stallings(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    o.stdout
}

const CYCLE: &str = "vertices: 1\nbase: 0\n0 a 0\n";

#[test]
fn commensurator_of_a_squared() {
    let f = Files::new();
    let h = f.write("h_a2.sub", "rank: 1\naa\n");
    assert_eq!(ok(&["commensurator", &h]), CYCLE);
}

#[test]
fn hypercube_extensions() {
    let f = Files::new();
    let h = f.write("hypercube2.graph", &hypercube_graph(2).unwrap().to_text());
    let out = ok(&["fi-extensions", &h]);
    assert!(out.starts_with("count: 5\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("member: ")).count(), 5);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("vertices: ")).count(),
        5
    );
    let indices: Vec<&str> = out.lines().filter(|l| l.starts_with("index: ")).collect();
    assert_eq!(
        indices,
        ["index: 1", "index: 2", "index: 2", "index: 2", "index: 4"]
    );
    assert_eq!(out.lines().filter(|l| l.starts_with("hasse: ")).count(), 6);
    assert_eq!(ok(&["fi-extensions", "--sequential", &h]), out);

    // the same subgroup given by generators
    let kernel = f.write("kernel.sub", "rank: 2\naa\nbb\nbaBA\nabaB\nabbA\n");
    assert_eq!(ok(&["fi-extensions", &kernel]), out);

    let capped = stallings(&["fi-extensions", "--cap", "3", &h]);
    assert_eq!(capped.code, 2);
    assert!(capped.stderr.starts_with("error: "));
}

#[test]
fn membership() {
    let f = Files::new();
    let h = f.write("h_a2.sub", "rank: 2\naa\n");
    assert_eq!(ok(&["member", &h, "aaa"]), "member: false\n");
    assert_eq!(ok(&["member", &h, "a^4"]), "member: true\n");
    assert_eq!(ok(&["member", &h, "aBbA^-1"]), "member: true\n");
    assert_eq!(stallings(&["member", &h, "az"]).code, 1);
}

#[test]
fn decomposition_of_a_conjugate() {
    let f = Files::new();
    let h = f.write("h.sub", "rank: 2\nbaB\n");
    assert_eq!(
        ok(&["decompose", &h]),
        "tail: b\nentry: 1\ncore: 1\ntail-vertices: 0\n"
    );
    let c = f.write("c.sub", "rank: 2\nab\n");
    assert_eq!(
        ok(&["decompose", &c]),
        "tail: 1\nentry: 0\ncore: 0 1\ntail-vertices: \n"
    );
}

#[test]
fn indices() {
    let f = Files::new();
    let even = f.write("even.sub", "rank: 2\naa\nb\naba^-1\n");
    let a = f.write("a.sub", "rank: 2\na\n");
    let a2 = f.write("a2.sub", "rank: 2\naa\n");
    assert_eq!(ok(&["index", &even]), "index: 2\n");
    assert_eq!(ok(&["index", &a]), "index: infinite\n");
    assert_eq!(ok(&["index", &a2, &a]), "index: 2\n");
    assert_eq!(
        ok(&["is-fi-ext", &a2, &a]),
        "fi-extension: true\nindex: 2\n"
    );
    assert_eq!(ok(&["is-fi-ext", &a, &a2]), "fi-extension: false\n");
}

#[test]
fn counting_commands() {
    assert_eq!(ok(&["fi-bound", "4"]), "closed-form: 8\nrecurrence: 8\n");
    let out = ok(&["subspace-count", "3"]);
    assert_eq!(
        out,
        "count: 16\ndimension 0: 1\ndimension 1: 7\ndimension 2: 7\ndimension 3: 1\n"
    );
    assert_eq!(stallings(&["subspace-count", "0"]).code, 2);
    assert_eq!(stallings(&["fi-bound", "x"]).code, 1);
}

#[test]
fn fi_equality() {
    let f = Files::new();
    let a2 = f.write("a2.sub", "rank: 2\naa\n");
    let a3 = f.write("a3.sub", "rank: 2\naaa\n");
    let b = f.write("b.sub", "rank: 2\nb\n");
    assert_eq!(ok(&["fi-equal", &a2, &a3]), "fi-equal: true\n");
    assert_eq!(ok(&["fi-equal", &a2, &b]), "fi-equal: false\n");
}

#[test]
fn language_validation() {
    let f = Files::new();
    let h = f.write("h.sub", "rank: 2\naa\nbaB\n");
    let out = ok(&["validate-language", &h]);
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().take(8).all(|l| l.ends_with(": pass")));
    assert!(out.ends_with("valid: true\n"));
    let trivial = f.write("t.sub", "rank: 2\n");
    assert_eq!(stallings(&["validate-language", &trivial]).code, 2);
}

#[test]
fn lattice_operations() {
    let f = Files::new();
    let a = f.write("a.sub", "rank: 2\na\n");
    let a2 = f.write("a2.sub", "rank: 2\naa\n");
    let a3 = f.write("a3.sub", "rank: 2\naaa\n");
    let a6 = f.write("a6.sub", "rank: 2\na^6\n");
    assert_eq!(ok(&["intersect", &a2, &a3]), ok(&["build", &a6]));
    assert_eq!(ok(&["join", &a2, &a3]), ok(&["build", &a]));
    let conj = f.write("conj.sub", "rank: 2\nBab\n");
    assert_eq!(ok(&["conjugate", &a, "b"]), ok(&["build", &conj]));
}

#[test]
fn index_r_round_trip() {
    let f = Files::new();
    let a = f.write("a.sub", "rank: 2\na\n");
    let sub = ok(&["index-r", &a, "3"]);
    let sub = f.write("sub.graph", &sub);
    assert_eq!(
        ok(&["is-fi-ext", &sub, &a]),
        "fi-extension: true\nindex: 3\n"
    );
    let trivial = f.write("t.sub", "rank: 2\n");
    assert_eq!(stallings(&["index-r", &trivial, "2"]).code, 2);
}

#[test]
fn malnormality() {
    let f = Files::new();
    let a = f.write("a.sub", "rank: 2\na\n");
    let a2 = f.write("a2.sub", "rank: 2\naa\n");
    assert_eq!(ok(&["is-malnormal", &a]), "malnormal: true\n");
    assert_eq!(ok(&["is-malnormal", &a2]), "malnormal: false\n");
    assert_eq!(
        ok(&["malnormal-closure", &a2]),
        format!("rounds: 1\n{}", ok(&["build", &a]))
    );
    let trace = ok(&["malnormal-closure", "--trace", &a2]);
    assert_eq!(
        trace,
        format!(
            "rounds: 1\nstep: 0\n{}step: 1\n{}",
            ok(&["build", &a2]),
            ok(&["build", &a])
        )
    );
}

#[test]
fn dot_export() {
    let f = Files::new();
    let a2 = f.write("a2.sub", "rank: 2\naa\n");
    let dot = f.path("out.dot");
    let dot_arg = dot.to_string_lossy().into_owned();
    assert_eq!(ok(&["commensurator", &a2, "--dot", &dot_arg]), CYCLE);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("0 -> 0 [label=\"a\"]"));
}

#[test]
fn random_files() {
    let a = ok(&[
        "random",
        "--rank",
        "2",
        "--gens",
        "3",
        "--max-len",
        "8",
        "--seed",
        "42",
    ]);
    assert_eq!(
        a,
        ok(&[
            "random",
            "--rank",
            "2",
            "--gens",
            "3",
            "--max-len",
            "8",
            "--seed",
            "42"
        ])
    );
    assert_eq!(a.lines().count(), 4);
    assert_eq!(ok(&["random", "--gens", "0"]), "rank: 2\n");
    assert_eq!(stallings(&["random", "--rank", "27"]).code, 1);
}

#[test]
fn bench_report() {
    let out = ok(&["bench", "--sizes", "100,1000"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("size: 100 vertices: "));
    assert!(lines[1].starts_with("size: 1000 vertices: "));
}

#[test]
fn parse_errors() {
    let f = Files::new();
    for (name, text) in [
        ("rank.sub", "rank: x\n"),
        ("range.sub", "rank: 1\nb\n"),
        ("graph.graph", "vertices: 2\nbase: 0\n0 a 1\n0 a 0\n"),
        ("cut.graph", "vertices: 3\nbase: 0\n0 a 1\n"),
    ] {
        let path = f.write(name, text);
        let o = stallings(&["build", &path]);
        assert_eq!(o.code, 1, "{name}");
        assert_eq!(o.stderr.lines().count(), 1, "{name}: {}", o.stderr);
    }
    assert_eq!(stallings(&["build"]).code, 1);
}

#[test]
fn output_is_deterministic() {
    let f = Files::new();
    let h = f.write("h.sub", "rank: 2\nabAB\naab\nbbaBA\n");
    let k = f.write("k.sub", "rank: 2\naa\nbab\n");
    let commands: [&[&str]; 10] = [
        &["build", &h],
        &["decompose", &h],
        &["commensurator", &h],
        &["fi-extensions", &k],
        &["validate-language", &h],
        &["intersect", &h, &k],
        &["join", &h, &k],
        &["conjugate", &h, "ab"],
        &["malnormal-closure", "--trace", &h],
        &["index-r", &k, "2"],
    ];
    for args in commands {
        assert_eq!(stallings(args), stallings(args), "{args:?}");
    }
}
