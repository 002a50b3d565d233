use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_galdioph");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn group_file(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/groups").join(format!("{name}.grp")).display().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn encode(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut all = vec!["encode"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--output", out.to_str().unwrap()]);
    let r = run(&all);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    out
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn prime_field_c2_is_found_by_brute_force() {
    let dir = TempDir::new().unwrap();
    let sys = encode(&dir, "c2.sys", &["--problem", "igp", "--ring", "Fp p=5", &group_file("C2")]);
    let wit = dir.path().join("c2.wit");
    let r = run(&["brute-force", p(&sys), "--output", p(&wit)]);
    assert_eq!(code(&r), 0);
    assert!(stdout(&r).contains("solvable-with-witness"));
    let v = run(&["verify", p(&sys), p(&wit)]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
}

#[test]
fn trivial_group_over_rationals() {
    let dir = TempDir::new().unwrap();
    let sys = encode(&dir, "c1.sys", &["--ring", "Q", "C1"]);
    let wit = write(&dir, "c1.wit", "witness v1\na[0][0] = 5\n");
    assert_eq!(code(&run(&["verify", p(&sys), p(&wit)])), 0);
}

#[test]
fn quadratic_witnesses() {
    let dir = TempDir::new().unwrap();
    let sys = encode(&dir, "c2.sys", &["--ring", "Q", &group_file("C2")]);
    let good = write(&dir, "good.wit", "witness v1\na[0][0] = -2\na[1][0] = 0\nb[2][0][0] = 0\nb[2][1][0] = -1\nt = 1\n");
    let r = run(&["verify", p(&sys), p(&good)]);
    assert_eq!(code(&r), 0, "{}", stdout(&r));
    assert!(stdout(&r).contains("verdict accepted"));
    let bad = write(&dir, "bad.wit", "witness v1\na[0][0] = -4\na[1][0] = 0\nb[2][0][0] = 0\nb[2][1][0] = -1\nt = 1\n");
    let r = run(&["verify", p(&sys), p(&bad)]);
    assert_eq!(code(&r), 1);
    assert!(stdout(&r).contains("pred irreducible(2) FAILS"));
}

#[test]
fn cubic_bundle_verifies() {
    let dir = TempDir::new().unwrap();
    let sys = encode(&dir, "c3.sys", &["--ring", "Q", "C3.grp"]);
    let wit = write(
        &dir,
        "c3.wit",
        "witness v1\na[0][0] = -1\na[1][0] = -3\na[2][0] = 0\n\
         b[2][0][0] = 2\nb[2][1][0] = 0\nb[2][2][0] = -1\n\
         b[3][0][0] = -2\nb[3][1][0] = -1\nb[3][2][0] = 1\nt = 1\n",
    );
    let r = run(&["verify", p(&sys), p(&wit)]);
    assert_eq!(code(&r), 0, "{}", stdout(&r));
}

#[test]
fn subgroup_sentinel() {
    let dir = TempDir::new().unwrap();
    let sys = encode(&dir, "s.sys", &["--problem", "subgroup", "--ring", "Q", "C4", "C3"]);
    let wit = write(&dir, "empty.wit", "witness v1\n");
    let r = run(&["verify", p(&sys), p(&wit)]);
    assert_eq!(code(&r), 1);
    assert!(stdout(&r).contains("verdict rejected"));
}

#[test]
fn encoding_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for args in [
        vec!["--ring", "Q", "C4"],
        vec!["--ring", "Fp p=3", "--single-equation", "C2"],
        vec!["--problem", "automorphism", "--ring", "Fp p=3", "--degree", "2", "C2"],
    ] {
        let a = std::fs::read(encode(&dir, "a.sys", &args)).unwrap();
        let b = std::fs::read(encode(&dir, "b.sys", &args)).unwrap();
        assert_eq!(a, b, "{args:?}");
        let r = run(&[&["encode"], &args[..]].concat());
        assert_eq!(r.stdout, a);
    }
}

#[test]
fn single_equation_appends_the_conjunction() {
    let dir = TempDir::new().unwrap();
    let sys = encode(&dir, "single.sys", &["--ring", "Q", "--single-equation", "--splice", "C2"]);
    let text = std::fs::read_to_string(sys).unwrap();
    assert!(text.contains("conjoin-single"));
    assert!(!text.lines().any(|l| l.starts_with("neq")));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let garbage = write(&dir, "bad.grp", "group X order 2\n1 2\n");
    assert_eq!(code(&run(&["validate-group", p(&garbage)])), 2);
    let latin = write(&dir, "latin.grp", "group X order 3\n1 2 3\n2 1 3\n3 3 1\n");
    assert_eq!(code(&run(&["validate-group", p(&latin)])), 2);
    assert_eq!(code(&run(&["validate-group", &group_file("D4")])), 0);
    assert_eq!(code(&run(&["encode", "--ring", "Q", "--bogus", "C2"])), 2);
    assert_eq!(code(&run(&["encode", "--ring", "Fp p=4", "C2"])), 4);
    assert_eq!(code(&run(&["encode", "--ring", "Q", "NoSuchGroup"])), 2);
    assert_eq!(code(&run(&["encode", "--problem", "automorphism", "--ring", "Fp p=5", "--degree", "3", "C2"])), 4);
    let sys = encode(&dir, "c2.sys", &["--ring", "Fp p=5", "C2"]);
    assert_eq!(code(&run(&["brute-force", p(&sys), "--cap", "10"])), 3);
    let partial = write(&dir, "partial.wit", "witness v1\nt = 1\n");
    assert_eq!(code(&run(&["verify", p(&sys), p(&partial)])), 2);
    let bad_sys = write(&dir, "bad.sys", "not a system\n");
    assert_eq!(code(&run(&["verify", p(&bad_sys), p(&partial)])), 2);
}

#[test]
fn demo_passes() {
    let r = run(&["demo"]);
    assert_eq!(code(&r), 0, "{}", stdout(&r));
    let lines = stdout(&r);
    let listed = stdout(&run(&["demo", "--list"]));
    assert_eq!(lines.lines().count(), listed.lines().count());
    assert!(lines.lines().all(|l| l.starts_with("ok")));
}
