use std::fs;
use std::path::Path;
use std::process::Command;

use tempfile::TempDir;

const OK: i32 = 0;
const USAGE: i32 = 1;
const NO: i32 = 2;
const BUDGET: i32 = 3;

fn caconj(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_caconj"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// A scratch directory holding the generated rules used below.
fn corpus() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("f.ca", vec!["rule", "gen-example021"]),
        ("finv.ca", vec!["rule", "gen-example021", "--inverse"]),
        ("and.ca", vec!["rule", "gen-and"]),
        ("chain.ca", vec!["rule", "gen-chain"]),
        ("f2.ca", vec!["rule", "gen-product", "-k", "1"]),
    ] {
        let (code, text, _) = caconj(dir.path(), &args);
        assert_eq!(code, OK);
        fs::write(dir.path().join(name), text).unwrap();
    }
    fs::write(
        dir.path().join("id.ca"),
        "ca v1\nsides: one\nstates: 3\nneighborhood: 0 0\ntable:\n0 -> 0\n1 -> 1\n2 -> 2\n",
    )
    .unwrap();
    // The example rule with the symbols 1 and 2 swapped.
    fs::write(
        dir.path().join("g.ca"),
        "ca v1\nsides: one\nstates: 3\nneighborhood: 0 1\ntable:\n\
         00 -> 0\n01 -> 0\n02 -> 2\n10 -> 2\n11 -> 2\n12 -> 0\n20 -> 1\n21 -> 1\n22 -> 1\n",
    )
    .unwrap();
    fs::write(dir.path().join("full.m"), "2\n1 1\n1 1\n").unwrap();
    fs::write(dir.path().join("two.m"), "1\n2\n").unwrap();
    fs::write(dir.path().join("gm.m"), "2\n1 1\n1 0\n").unwrap();
    dir
}

#[test]
fn rule_show_round_trips() {
    let d = corpus();
    for name in ["f.ca", "finv.ca", "and.ca", "chain.ca", "f2.ca", "g.ca"] {
        let original = fs::read_to_string(d.path().join(name)).unwrap();
        let (code, shown, _) = caconj(d.path(), &["rule", "show", name]);
        assert_eq!(code, OK);
        assert_eq!(shown, original, "{name}");
        fs::write(d.path().join("again.ca"), &shown).unwrap();
        assert_eq!(caconj(d.path(), &["rule", "show", "again.ca"]).1, shown);
    }
    let (code, text, _) = caconj(d.path(), &["rule", "check", "f.ca"]);
    assert_eq!(code, OK);
    assert!(text.starts_with("ok: one-sided, 3 -> 3 states"));
}

#[test]
fn decisions_and_exit_codes() {
    let d = corpus();
    let (code, text, _) = caconj(d.path(), &["decide", "inj", "f.ca"]);
    assert_eq!((code, text.as_str()), (OK, "injective\n"));
    assert_eq!(caconj(d.path(), &["decide", "surj", "f.ca"]).0, OK);
    let (code, text, _) = caconj(d.path(), &["decide", "inj", "and.ca"]);
    assert_eq!(code, NO);
    assert_eq!(text.lines().filter(|l| l.starts_with("witness: ")).count(), 2);
    let (code, text, _) = caconj(d.path(), &["decide", "surj", "and.ca"]);
    assert_eq!((code, text.as_str()), (NO, "not surjective\norphan: 101\n"));
    let (code, text, _) = caconj(d.path(), &["decide", "inverse", "--max-width", "2", "f.ca"]);
    assert_eq!(code, OK);
    assert_eq!(text, fs::read_to_string(d.path().join("finv.ca")).unwrap());
    assert_eq!(caconj(d.path(), &["decide", "inverse", "and.ca"]).0, NO);
    let (code, text, _) = caconj(d.path(), &["decide", "nilpotent", "--q", "0", "--nmax", "4", "chain.ca"]);
    assert_eq!((code, text.as_str()), (OK, "nilpotent: n = 2\n"));
    assert_eq!(caconj(d.path(), &["decide", "nilpotent", "--q", "0", "--nmax", "4", "and.ca"]).0, NO);
    assert_eq!(caconj(d.path(), &["decide", "nilpotent", "--q", "1", "--nmax", "4", "chain.ca"]).0, USAGE);
    assert_eq!(caconj(d.path(), &["decide", "periodic", "--nmax", "3", "id.ca"]).0, OK);
    assert_eq!(caconj(d.path(), &["decide", "periodic", "--nmax", "4", "f.ca"]).0, NO);
}

#[test]
fn usage_and_budget_errors() {
    let d = corpus();
    fs::write(d.path().join("bad.ca"), "3\n").unwrap();
    let (code, _, err) = caconj(d.path(), &["rule", "check", "bad.ca"]);
    assert_eq!(code, USAGE);
    assert!(err.contains("line 1"));
    assert_eq!(caconj(d.path(), &["rule", "check", "missing.ca"]).0, USAGE);
    assert_eq!(caconj(d.path(), &["no-such-command"]).0, USAGE);
    let (code, _, err) = caconj(d.path(), &["--max-table", "10", "decide", "inverse", "--max-width", "3", "f.ca"]);
    assert_eq!(code, BUDGET);
    assert!(err.contains("limit is 10"));
    let (code, _, err) = caconj(d.path(), &["--max-window", "100", "trace", "complexity", "-k", "1", "-L", "12", "f2.ca"]);
    assert_eq!(code, BUDGET);
    assert!(err.contains("budget"));
}

#[test]
fn trace_outputs() {
    let d = corpus();
    assert_eq!(caconj(d.path(), &["trace", "complexity", "-k", "1", "-L", "2", "f.ca"]).1, "5\n");
    assert_eq!(caconj(d.path(), &["trace", "words", "-k", "1", "-L", "2", "f.ca"]).1, "00\n01\n12\n20\n21\n");
    let (code, tsv, _) = caconj(d.path(), &["trace", "entropy", "-k", "1", "-L", "4", "f.ca"]);
    assert_eq!(code, OK);
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines[0], "L\tp_L\tlog2pL_over_L");
    assert_eq!(lines[2], "2\t5\t1.16096404744");
    assert_eq!(lines[4], "4\t11\t0.864857904659");
}

#[test]
fn simulation_outputs() {
    let d = corpus();
    assert_eq!(caconj(d.path(), &["sim", "f.ca", "--steps", "1", "--init", "10"]).1, "10\n2\n");
    assert_eq!(
        caconj(d.path(), &["sim", "and.ca", "--steps", "3", "--init", "111101"]).1,
        "111101\n11100\n1100\n100\n"
    );
    let a = caconj(d.path(), &["sim", "f.ca", "--steps", "4", "--init", "random:9", "--width", "12"]);
    let b = caconj(d.path(), &["sim", "f.ca", "--steps", "4", "--init", "random:9", "--width", "12"]);
    assert_eq!(a, b);
    let c = caconj(d.path(), &["--seed", "9", "sim", "f.ca", "--steps", "4", "--init", "random", "--width", "12"]);
    assert_eq!(c.1.lines().count(), 5);
    let (code, _, _) = caconj(
        d.path(),
        &["sim", "f.ca", "--steps", "2", "--init", "0120", "--render", "pgm", "--out", "st.pgm"],
    );
    assert_eq!(code, OK);
    let pgm = fs::read(d.path().join("st.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n4 3\n255\n"));
    assert_eq!(&pgm[11..15], &[0, 127, 255, 0]);
}

#[test]
fn reduction_pipeline() {
    let d = corpus();
    let (code, text, _) = caconj(
        d.path(),
        &["reduce", "build", "--H", "and.ca", "--q", "0", "-k", "1", "--out-F", "F.ca", "--out-G", "G.ca"],
    );
    assert_eq!(code, OK);
    assert!(text.contains("18 states"));
    assert!(text.starts_with("warning: k = 1 does not exceed log2 |B|"));
    assert_eq!(caconj(d.path(), &["trace", "complexity", "-k", "1", "-L", "8", "G.ca"]).1, "81\n");
    let args = ["reduce", "phi", "--H", "and.ca", "--q", "0", "-k", "1", "--nmax", "3", "--out", "x.bm"];
    assert_eq!(caconj(d.path(), &args).0, USAGE);

    let build = ["reduce", "build", "--H", "chain.ca", "--q", "0", "-k", "1", "--out-F", "cF.ca", "--out-G", "cG.ca"];
    assert_eq!(caconj(d.path(), &build).0, OK);
    let (code, text, _) = caconj(d.path(), &["reduce", "phi", "--H", "chain.ca", "--q", "0", "-k", "1", "--out", "phi.bm"]);
    assert_eq!(code, OK);
    assert!(text.contains("horizon n = 2"));
    let (code, text, _) = caconj(d.path(), &["verify", "conj", "--phi", "phi.bm", "--F", "cF.ca", "--G", "cG.ca"]);
    assert_eq!(code, OK);
    assert!(text.ends_with("VALID\n"));
    let (code, text, _) = caconj(d.path(), &["reduce", "verify", "--H", "chain.ca", "--q", "0", "-k", "1"]);
    assert_eq!(code, OK);
    assert!(text.ends_with("VALID\n"));
}

#[test]
fn verification_refutes() {
    let d = corpus();
    fs::write(
        d.path().join("id.bm"),
        fs::read_to_string(d.path().join("id.ca")).unwrap(),
    )
    .unwrap();
    let (code, text, _) = caconj(d.path(), &["verify", "conj", "--phi", "id.bm", "--F", "f.ca", "--G", "id.ca"]);
    assert_eq!(code, NO);
    assert!(text.contains("homomorphism: no"));
    assert!(text.ends_with("REFUTED\n"));
}

#[test]
fn conjugacy_search() {
    let d = corpus();
    let (code, text, _) = caconj(
        d.path(),
        &["search", "conj", "--F", "f.ca", "--G", "g.ca", "--max-width", "1", "--out", "found.bm"],
    );
    assert_eq!(code, OK);
    assert!(text.contains("VALID"));
    let found = fs::read_to_string(d.path().join("found.bm")).unwrap();
    assert!(found.ends_with("0 -> 0\n1 -> 2\n2 -> 1\n"));
    let (code, text, _) = caconj(d.path(), &["search", "conj", "--F", "f.ca", "--G", "id.ca", "--max-width", "2"]);
    assert_eq!(code, NO);
    assert!(text.contains("p_8(tau_1(F)) = 47 > p_8(tau_2(G)) = 9: rules out every inverse of width <= 2"));
}

#[test]
fn sft_commands() {
    let d = corpus();
    let (code, text, _) = caconj(d.path(), &["sft", "amalgamate", "full.m"]);
    assert_eq!(code, OK);
    assert!(text.ends_with("1\n2\n"));
    let (code, text, _) = caconj(d.path(), &["sft", "conjugate", "full.m", "two.m"]);
    assert_eq!((code, text.as_str()), (OK, "conjugate\n"));
    let (code, text, _) = caconj(d.path(), &["sft", "conjugate", "full.m", "gm.m"]);
    assert_eq!((code, text.as_str()), (NO, "not conjugate\n"));
    let (code, text, _) = caconj(d.path(), &["sft", "graph", "--rule", "f.ca"]);
    assert_eq!(code, OK);
    assert!(text.starts_with("# states: (0,0) (0,1) (1,2) (2,0) (2,1)\n5\n"));
    let (code, text, _) = caconj(d.path(), &["sft", "trace-approx", "f.ca", "-k", "1", "-L", "2"]);
    assert_eq!(code, OK);
    assert!(text.ends_with("# exact: false\n"));
    fs::write(d.path().join("ragged.m"), "2\n1 1\n1\n").unwrap();
    assert_eq!(caconj(d.path(), &["sft", "amalgamate", "ragged.m"]).0, USAGE);
}
