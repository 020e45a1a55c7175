use std::path::PathBuf;
use std::process::{Command, Output};

fn tenfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tenfold")).args(args).output().expect("run binary")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tenfold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn classify(name: &str, body: &str, extra: &[&str]) -> Output {
    let p = scratch(name, body);
    let mut args = vec!["classify", "--spec", p.to_str().unwrap()];
    args.extend_from_slice(extra);
    tenfold(&args)
}

#[test]
fn classify_examples() {
    let o = classify("aii.spec", "T = -1\nlattice_dims = 3\n", &[]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Z + Z_2^4");
    assert_eq!(stdout(&classify("empty.spec", "# nothing\n", &[])), "Z");
    assert_eq!(stdout(&classify("aiii.spec", "S = +1\ncontinuous_dims = 1\n", &[])), "Z");
}

#[test]
fn machine_output_round_trips() {
    let o = classify("m.spec", "T = -1\nlattice_dims = 3\n", &["--format", "machine"]);
    let text = stdout(&o);
    assert_eq!(text, "free_rank=1 torsion=2,2,2,2");
    let g: tenfold::groups::AbelianGroup = text.parse().unwrap();
    assert_eq!(g.to_string(), "Z + Z_2^4");
}

#[test]
fn classify_error_codes() {
    assert_eq!(classify("bad.spec", "T = maybe\n", &[]).status.code(), Some(2));
    assert_eq!(classify("unknown.spec", "spin = 1/2\n", &[]).status.code(), Some(2));
    let o = classify("both.spec", "T = +1\nC = +1\nS = +1\n", &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("S must not be specified alongside both T and C"));
    assert_eq!(classify("inv.spec", "T = -1\ninversion = yes\n", &[]).status.code(), Some(3));
    assert_eq!(tenfold(&["classify", "--spec", "/nonexistent/x.spec"]).status.code(), Some(2));
}

#[test]
fn winding_codes() {
    let family = |k: f64, m: usize| -> String {
        (0..m).map(|j| format!("f {}\n", k * std::f64::consts::TAU * j as f64 / m as f64)).collect()
    };
    let run = |name: &str, body: &str| {
        let p = scratch(name, body);
        tenfold(&["winding", "--input", p.to_str().unwrap()])
    };
    assert_eq!(stdout(&run("two.fam", &family(2.0, 256))), "2");
    assert_eq!(stdout(&run("zero.fam", &family(0.0, 64))), "0");
    assert_eq!(run("coarse.fam", &family(3.0, 8)).status.code(), Some(4));
    assert_eq!(run("even.fam", "1 0 0 0 0 0 -1 0\n").status.code(), Some(5));
    assert_eq!(run("junk.fam", "f one\n").status.code(), Some(2));
}

#[test]
fn table_and_verify() {
    let o = tenfold(&["table", "--which", "zero-d"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 12);
    assert_eq!(tenfold(&["table", "--which", "periodic", "--dmax", "40"]).status.code(), Some(2));
    let o = tenfold(&["verify", "--suite", "wedderburn"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("10/10 checks passed"));
    let o = tenfold(&["verify", "--suite", "repr"]);
    assert!(stdout(&o).ends_with("8/8 checks passed"));
}
