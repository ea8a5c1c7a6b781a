//! End-to-end checks of the command-line surface: output values, file
//! round trips through the binary, and the exit-code contract (0 success,
//! 1 verification failure, 2 usage error).

use std::path::PathBuf;
use std::process::{Command, Output};

fn xorcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xorcc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("xorcc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn complexity_values_on_the_family() {
    let out = xorcc(&["nadt", "--fk", "--n", "10", "--k", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "4");

    let out = xorcc(&["owcc", "--fk", "--n", "7", "--k", "4", "--exact"]);
    assert_eq!(stdout(&out).trim(), "4");

    let out = xorcc(&["dtp", "--fk", "--n", "6", "--k", "2"]);
    assert_eq!(stdout(&out).trim(), "3");

    let out = xorcc(&["owcc", "--fk", "--n", "9", "--k", "2", "--bounds"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut parts = text.trim().split('\t');
    let lo: usize = parts.next().unwrap().parse().unwrap();
    let hi: usize = parts.next().unwrap().parse().unwrap();
    assert!(lo <= hi);
    assert!(hi <= 3, "coset bound gives at most k+1");
}

#[test]
fn function_file_golden_and_round_trip() {
    let path = tmp("f1.fn");
    std::fs::write(&path, "xorcc-fn v1\nn 3\ndefined 97\nvalue 80\n").unwrap();
    let out = xorcc(&["nadt", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2", "f_1 at n=3 takes two queries");
}

#[test]
fn protocol_synth_verify_loop_and_failure_exit() {
    let proto = tmp("f14.nadt");
    let out = xorcc(&[
        "protocol", "synth", "--model", "nadt", "--fk", "--n", "4", "--k", "1", "--output",
        proto.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // verifying against the source function passes...
    let out = xorcc(&[
        "protocol", "verify", "--model", "nadt", "--fk", "--n", "4", "--k", "1", "--protocol",
        proto.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // ...and against a different function exits 1
    let out = xorcc(&[
        "protocol", "verify", "--model", "nadt", "--fk", "--n", "4", "--k", "2", "--protocol",
        proto.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("INVALID"));
}

#[test]
fn oneway_protocol_through_files() {
    let proto = tmp("f23.ow");
    let out = xorcc(&[
        "protocol", "synth", "--model", "oneway", "--fk", "--n", "3", "--k", "1", "--output",
        proto.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&proto).unwrap();
    assert!(text.starts_with("xorcc-ow v1\nn 3\nt 2\n"), "width 2 for f_1 at n=3");
    let out = xorcc(&[
        "protocol", "verify", "--model", "oneway", "--fk", "--n", "3", "--k", "1", "--protocol",
        proto.to_str().unwrap(),
    ]);
    assert!(out.status.success());
}

#[test]
fn code_pipeline_through_files() {
    let h3 = tmp("h3.code");
    let cube2 = tmp("cube2.code");
    let sum = tmp("sum9.code");
    assert!(xorcc(&["code", "build", "--family", "hamming", "--m", "3", "--output", h3.to_str().unwrap()])
        .status
        .success());
    assert!(xorcc(&["code", "build", "--family", "cube", "--n", "2", "--output", cube2.to_str().unwrap()])
        .status
        .success());
    let out = xorcc(&[
        "code", "sum", "--input", h3.to_str().unwrap(), "--input2", cube2.to_str().unwrap(),
        "--output", sum.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&sum).unwrap();
    assert!(text.starts_with("xorcc-code v1\nn 9 K 64 R 1\n"));

    let out = xorcc(&["code", "verify", "--input", sum.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("exact_radius\t1"));

    // round trip: re-emission through sum with a radius-0 singleton on the
    // other side keeps codeword order
    let reread = xorcc(&["code", "verify", "--input", h3.to_str().unwrap()]);
    assert!(reread.status.success());
}

#[test]
fn usage_errors_exit_two() {
    // unknown flag
    let out = xorcc(&["nadt", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // k out of range for the family
    let out = xorcc(&["nadt", "--fk", "--n", "3", "--k", "5"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed function file
    let path = tmp("broken.fn");
    std::fs::write(&path, "xorcc-fn v1\nn 3\ndefined zz\nvalue 00\n").unwrap();
    let out = xorcc(&["nadt", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":3:"), "diagnostic names the line: {err}");
    // adaptive-tree cap
    let out = xorcc(&["dtp", "--fk", "--n", "8", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn iso_and_fourier_surface() {
    let out = xorcc(&["iso", "harper", "--m", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("violations\t0"));

    let out = xorcc(&["iso", "boundary", "--m", "4", "--a", "5"]);
    assert_eq!(stdout(&out).trim(), "gamma\t11\ngamma_prime\t6");

    let out = xorcc(&["iso", "lemma-checks", "--m", "4", "--k", "4"]);
    assert!(out.status.success());

    let out = xorcc(&["iso", "segment", "--m-max", "8"]);
    assert!(out.status.success());

    // fourier of the pure parity h(x) = x_1 on 3 bits: one row
    let path = tmp("parity.fn");
    std::fs::write(&path, "xorcc-fn v1\nn 3\ndefined ff\nvalue aa\n").unwrap();
    let out = xorcc(&["fourier", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "s\tnumerator\tdenominator\n1\t8\t8\n");
}

#[test]
fn suite_reports_are_tsv() {
    let out = xorcc(&[
        "suite", "equality", "--n-max", "5", "--samples", "50", "--seed", "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("check\tparams\tverdict\tdetail\n"));
    assert_eq!(text.lines().count(), 9, "header + 8 legs");
    assert!(text.lines().skip(1).all(|l| l.contains("\tpass\t")));
}
