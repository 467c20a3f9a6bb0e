use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blackbox"))
        .args(args)
        .env_remove("BLACKBOX_SAMPLE_POINTS")
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_blackbox"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn series_equivalent_to_single_resistor() {
    let o = run(&["equiv", &path("series_1_1.net"), &path("resistor_2.net")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "equivalent");
}

#[test]
fn parallel_equivalent_to_half_resistor() {
    let o = run(&["equiv", &path("parallel_2_2.net"), &path("resistor_1.net")]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["equiv", &path("parallel_2_2.net"), &path("resistor_2.net")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn rlc_impedance() {
    let o = run(&["blackbox", &path("rlc.net"), "--as-impedance"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(3*s^2+2*s+2)/(s)");
}

#[test]
fn impedance_of_non_two_terminal_fails() {
    let o = run(&["blackbox", &path("fork.net"), "--as-impedance"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not the graph"));
}

#[test]
fn behavior_json_schema() {
    let o = run(&["--json", "blackbox", &path("resistor_2.net")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["inputs"], serde_json::json!(["A"]));
    assert_eq!(v["outputs"], serde_json::json!(["B"]));
    assert_eq!(
        v["generators"],
        serde_json::json!([["1", "0", "1", "0"], ["0", "1", "2", "1"]])
    );
}

#[test]
fn pretty_behavior_has_headers() {
    let o = run(&["blackbox", &path("resistor_2.net")]);
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split_whitespace().collect();
    assert_eq!(header, ["phi(x0)", "i(x0)", "phi(y0)", "i(y0)"]);
}

#[test]
fn dagger_round_trip_through_stdin() {
    let once = run(&["dagger", &path("rlc.net")]);
    let twice = run_stdin(&["dagger", "-"], &stdout(&once));
    let dir = tempfile::tempdir().unwrap();
    let back = dir.path().join("back.net");
    std::fs::write(&back, stdout(&twice)).unwrap();
    let o = run(&["equiv", back.to_str().unwrap(), &path("rlc.net")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn compose_emits_canonical_netlist() {
    let o = run(&["compose", &path("resistor_1.net"), &path("resistor_2.net")]);
    assert_eq!(
        stdout(&o),
        "nodes: A A' B'\ninputs: A\noutputs: B'\nR A A' 1\nR A' B' 2\n"
    );
    let dir = tempfile::tempdir().unwrap();
    let composite = dir.path().join("c.net");
    std::fs::write(&composite, stdout(&o)).unwrap();
    let three = dir.path().join("three.net");
    std::fs::write(&three, "nodes: p q\ninputs: p\noutputs: q\nR p q 3\n").unwrap();
    let o = run(&[
        "equiv",
        composite.to_str().unwrap(),
        three.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn compose_port_mismatch_is_an_error() {
    let o = run(&["compose", &path("star.net"), &path("resistor_1.net")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tensor_of_two_resistors() {
    let o = run(&["tensor", &path("resistor_1.net"), &path("resistor_2.net")]);
    assert_eq!(
        stdout(&o),
        "nodes: A A' B B'\ninputs: A A'\noutputs: B B'\nR A B 1\nR A' B' 2\n"
    );
}

#[test]
fn eliminate_prints_both_forms() {
    let o = run(&["eliminate", &path("series_1_1.net")]);
    assert_eq!(
        stdout(&o),
        "P = (1/2)(psi_a - psi_b)^2 + (1/2)(psi_b - psi_c)^2\nQ = (1/4)(psi_a - psi_c)^2\n"
    );
    let o = run(&["--json", "eliminate", &path("series_1_1.net")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["Q"],
        serde_json::json!([{ "i": "a", "j": "c", "coeff": "1/4" }])
    );
}

#[test]
fn eval_at_a_frequency() {
    let o = run(&["--json", "eval", &path("rlc.net"), "--at", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["generators"],
        serde_json::json!([["1", "0", "1", "0"], ["0", "1", "9", "1"]])
    );
    // A capacitor has a pole at s = 0.
    let o = run(&["eval", &path("rlc.net"), "--at", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_corpus_passes() {
    let dir = data("");
    let o = run(&["check", "--corpus", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("ok")));
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn wire_directive_merges() {
    let o = run(&["equiv", &path("wired.net"), &path("resistor_2.net")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_exit_two() {
    let o = run_stdin(&["blackbox", "-"], "nodes: a b\nR a b 0\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = run_stdin(&["blackbox", "-"], "nodes: a b\nZ a b s+1\n");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["blackbox", "/nonexistent/file.net"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn raw_impedance_with_sample_override() {
    let net = "nodes: a b\ninputs: a\noutputs: b\nZ a b (s^2+1)/(s+2)\n";
    let o = run_stdin(&["--allow-raw-z", "blackbox", "-", "--as-impedance"], net);
    assert_eq!(stdout(&o).trim(), "(s^2+1)/(s+2)");

    // s - 1 is negative at 1/2 but positive on the override grid.
    let net = "nodes: a b\ninputs: a\noutputs: b\nZ a b s-1\n";
    let o = run_stdin(&["--allow-raw-z", "blackbox", "-"], net);
    assert_eq!(o.status.code(), Some(2));
    let mut child = Command::new(env!("CARGO_BIN_EXE_blackbox"))
        .args(["--allow-raw-z", "blackbox", "-", "--as-impedance"])
        .env("BLACKBOX_SAMPLE_POINTS", "2, 3")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(net.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "s-1");
}

#[test]
fn equiv_is_reflexive_and_symmetric_on_corpus() {
    let names = ["series_1_1.net", "resistor_2.net", "wired.net", "rlc.net"];
    for a in names {
        assert_eq!(run(&["equiv", &path(a), &path(a)]).status.code(), Some(0));
        for b in names {
            let ab = run(&["equiv", &path(a), &path(b)]).status.code();
            let ba = run(&["equiv", &path(b), &path(a)]).status.code();
            assert_eq!(ab, ba, "{a} vs {b}");
        }
    }
}
