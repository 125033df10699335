use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn revkit(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_revkit"))
        .args(args)
        .output()
        .expect("binary runs");
    Out {
        code: o.status.code().expect("exit code"),
        stdout: String::from_utf8(o.stdout).expect("utf-8"),
        stderr: String::from_utf8(o.stderr).expect("utf-8"),
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests").join(name);
    fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn write(dir: &Path, file: &str, text: &str) -> String {
    let p = dir.join(file);
    fs::write(&p, text).expect("write");
    p.to_string_lossy().into_owned()
}

fn g_file(dir: &Path) -> String {
    let shown = revkit(&["corpus", "show", "g"]);
    assert_eq!(shown.code, 0);
    write(dir, "g.tm", &shown.stdout)
}

#[test]
fn run_g_from_file() {
    let dir = scratch("run");
    let g = g_file(&dir);
    let o = revkit(&["run", "--machine", &g, "--input", "00000000"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "000\n"));
    let o = revkit(&["run", "--machine", &g, "--input", "000"]);
    assert_eq!((o.code, o.stdout.as_str()), (1, "reject\n"));
}

#[test]
fn check_injective() {
    let dir = scratch("check");
    let g = g_file(&dir);
    let o = revkit(&["check", "--machine", &g, "--injective"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "injective: yes\n"));
    let o = revkit(&["check", "--machine", "drop_last", "--injective"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.starts_with("injective: no\n"));
}

#[test]
fn member_universal() {
    let o = revkit(&["member", "--oracle", "universal", "--string", "11"]);
    assert_eq!((o.code, o.stdout.as_str()), (1, "false\n"));
    let word = revkit(&["encode", "universal", "--verifier", "has_one", "--input", "01"]);
    let o = revkit(&["member", "--oracle", "universal", "--string", word.stdout.trim()]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "true\n"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(revkit(&["run", "--machine", "g", "--input", "012"]).code, 2);
    assert_eq!(revkit(&["run", "--machine", "nope", "--input", "0"]).code, 2);
    assert_eq!(revkit(&["frobnicate"]).code, 2);
    assert_eq!(revkit(&["member", "--oracle", "nope", "--string", "0"]).code, 2);
    let dir = scratch("bad");
    let bad = write(&dir, "bad.tm", "machine x\nstart: nowhere\n");
    let o = revkit(&["run", "--machine", &bad, "--input", "0"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.starts_with("revkit: "));
}

#[test]
fn reverse_round_trip() {
    let dir = scratch("reverse");
    let r = revkit(&["reverse", "--machine", "inc"]);
    assert_eq!(r.code, 0);
    let inc_rev = write(&dir, "inc_rev.tm", &r.stdout);
    let y = revkit(&["run", "--machine", "inc", "--input", "0110"]);
    let x = revkit(&["run", "--machine", &inc_rev, "--input", y.stdout.trim()]);
    assert_eq!(x.stdout, "0110\n");
    assert_eq!(revkit(&["reverse", "--machine", "drop_last"]).code, 1);
}

#[test]
fn bennett_and_chain() {
    let dir = scratch("bennett");
    let b = revkit(&["bennett", "--machine", "drop_last"]);
    assert_eq!(b.code, 0);
    let garbage = write(&dir, "garbage.tm", &b.stdout);
    assert_eq!(revkit(&["check", "--machine", &garbage, "--injective"]).code, 0);
    let pair = revkit(&["encode", "pair", "011", "01"]);
    let o = revkit(&["run", "--machine", &garbage, "--input", "011"]);
    assert_eq!(o.stdout, pair.stdout);
    let c = revkit(&["bennett", "--machine", "inc", "--inverse", "dec"]);
    assert_eq!(c.code, 0);
    let clean = write(&dir, "clean.tm", &c.stdout);
    assert_eq!(revkit(&["run", "--machine", &clean, "--input", "011"]).stdout, "100\n");
    assert_eq!(revkit(&["bennett", "--machine", "inc", "--inverse", "inc"]).code, 1);
    let ch = revkit(&["chain", "--first", "inc", "--second", "dec"]);
    let both = write(&dir, "both.tm", &ch.stdout);
    assert_eq!(revkit(&["run", "--machine", &both, "--input", "101"]).stdout, "101\n");
}

#[test]
fn encode_round_trip() {
    assert_eq!(revkit(&["encode", "code", "101"]).stdout, "010001\n");
    assert_eq!(revkit(&["encode", "pair", "101", "01"]).stdout, "0100011101\n");
    assert_eq!(revkit(&["encode", "unpair", "0100011101"]).stdout, "101\n01\n");
    assert_eq!(revkit(&["encode", "unpair", "010"]).code, 2);
}

#[test]
fn invert_modes() {
    let o = revkit(&["invert", "--mode", "fmin", "--machine", "drop_last", "--output", "01"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "010\n"));
    let o = revkit(&["invert", "--mode", "fmin", "--machine", "append0", "--output", "01"]);
    assert_eq!(o.code, 1);

    let dir = scratch("levin");
    let reg = dir.join("registry");
    fs::create_dir_all(&reg).unwrap();
    let g_rev = revkit(&["reverse", "--machine", "g"]);
    write(&reg, "g_rev.tm", &g_rev.stdout);
    let o = revkit(&[
        "invert",
        "--mode",
        "levin",
        "--machine",
        "g",
        "--output",
        "0000",
        "--registry",
        reg.to_str().unwrap(),
        "--stats",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let mut lines = o.stdout.lines();
    assert_eq!(lines.next(), Some("0".repeat(16).as_str()));
    assert!(o.stdout.contains("winner: 1:"));
}

#[test]
fn eval_inj() {
    let o = revkit(&["eval", "inj", "--program", "complement", "--input", "0110"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.trim_end().ends_with("111001"));
    let o = revkit(&["eval", "inj", "--program", "complement", "--input", "0", "--q", "0,1"]);
    assert_eq!(o.code, 2);
}

#[test]
fn lab_tables() {
    let dir = scratch("lab");
    let f = write(&dir, "f.fn", "0 -> 0\n1 -> 0\n");
    let fp = write(&dir, "fp.fn", "# choice\n0 -> 0\n");
    let o = revkit(&["lab", "fmin", &f]);
    assert_eq!(o.stdout, "0 -> 0\n");
    assert_eq!(revkit(&["lab", "is", "mutual", &fp, &f]).code, 0);
    let swap = write(&dir, "swap.fn", "0 -> 1\n1 -> 0\n");
    assert_eq!(revkit(&["lab", "is", "inverse", &swap, &f]).code, 0);
    assert_eq!(revkit(&["lab", "is", "mutual", &swap, &f]).code, 1);
    let o = revkit(&["lab", "pad", &f]);
    assert_eq!(o.stdout, "00 -> 10\n01 -> 10\n");
    let o = revkit(&["lab", "group-inverse", &f, &fp]);
    assert_eq!(o.stdout, "00 -> 10\n10 -> 00\n");
    let part = write(&dir, "part.fn", "0 -> 0\n");
    let o = revkit(&["lab", "monoid", &swap, &part]);
    assert!(o.stdout.contains("elements: 7\n") && o.stdout.contains("D-classes: 3\n"), "{}", o.stdout);
    let bad = write(&dir, "bad.fn", "0 -> 2\n");
    assert_eq!(revkit(&["lab", "fmin", &bad]).code, 2);
}

#[test]
fn seeded_output_is_reproducible() {
    let a = revkit(&["lab", "random", "--seed", "7", "--max-len", "3"]);
    let b = revkit(&["lab", "random", "--seed", "7", "--max-len", "3"]);
    let c = revkit(&["lab", "random", "--seed", "8", "--max-len", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn reduce_check() {
    let o = revkit(&["reduce", "--check", "--map", "append0", "--from", "even", "--to", "even"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let o = revkit(&["reduce", "--check", "--map", "append1", "--from", "even", "--to", "even"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.starts_with("reduction: fails"));
    let dir = scratch("reduce");
    let stanzas = write(&dir, "oracles.txt", "oracle parity\nalias odd\n");
    let o = revkit(&[
        "reduce", "--check", "--map", "append1", "--from", "even", "--to", "parity", "--oracles", &stanzas,
    ]);
    assert_eq!(o.code, 0, "{}", o.stdout);
}

#[test]
fn corpus_commands() {
    let o = revkit(&["corpus", "list"]);
    assert!(o.stdout.lines().any(|l| l == "g"));
    assert_eq!(revkit(&["corpus", "show", "nope"]).code, 2);
    let o = revkit(&["corpus", "verify", "monoid"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("PASS monoid"));
    assert_eq!(revkit(&["corpus", "verify", "nope"]).code, 2);
}
