use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn vabc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vabc")).args(args).env_remove("VABC_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vabc-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn axioms_pass_on_default_instance() {
    let o = vabc(&["axioms"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("graded dimensions: 1 1 2 3\n"));
    assert!(out.contains("[pass]") && !out.contains("[fail]"));
}

#[test]
fn configuration_errors_exit_with_two() {
    assert_eq!(vabc(&["axioms", "--nmax", "1"]).status.code(), Some(2));
    assert_eq!(vabc(&["axioms", "--order", "0"]).status.code(), Some(2));
    assert_eq!(vabc(&["axioms", "--nmax", "2", "--probe", "3"]).status.code(), Some(2));
    assert_eq!(vabc(&["frobnicate"]).status.code(), Some(2));
    let dir = scratch("config");
    let bad = dir.join("bad.cfg");
    fs::write(&bad, "nmax = two\n").unwrap();
    assert_eq!(vabc(&["axioms", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    let inst = dir.join("instance.txt");
    fs::write(&inst, "kind=heisenberg\nn_max=three\n").unwrap();
    assert_eq!(vabc(&["axioms", "--instance", inst.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = scratch("flags");
    let cfg = dir.join("run.cfg");
    fs::write(&cfg, "# small instance\nnmax=3\nprobe=1\n").unwrap();
    let out = stdout(&vabc(&["axioms", "--config", cfg.to_str().unwrap()]));
    assert!(out.contains("graded dimensions: 1 1 2 3\n"));
    let out = stdout(&vabc(&["axioms", "--config", cfg.to_str().unwrap(), "--nmax", "2"]));
    assert!(out.contains("graded dimensions: 1 1 2\n"));
}

#[test]
fn two_point_function_of_the_boson() {
    let o = vabc(&["correlate", "a", "a", "--nmax", "3", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "<|0>'> : (z1-z2)^-2"), "{out}");
    assert!(out.contains("[pass] correlate.duality"));
}

#[test]
fn vacuum_input_echoes_the_anchor() {
    let out = stdout(&vabc(&["correlate", "1", "--w", "a", "--nmax", "3"]));
    assert!(out.lines().any(|l| l == "<a(-1)|0>'> : 1"), "{out}");
    assert!(out.contains("[pass] correlate.truncation"));
}

#[test]
fn truncation_is_flagged_without_failing() {
    let o = vabc(&["correlate", "a", "a", "--nmax", "2", "--order", "2", "--machine"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("correlate.truncation|flag|"));
}

#[test]
fn unparsable_input_is_a_usage_error() {
    assert_eq!(vabc(&["correlate", "b(-1)|0>", "--nmax", "2"]).status.code(), Some(2));
}

#[test]
fn complex_on_small_families() {
    let dir = scratch("complex");
    let good = dir.join("good.txt");
    fs::write(&good, "# vacuum anchor\n(gen 1 2 \"1\")\n(gen 2 1 \"1\")\n").unwrap();
    let o = vabc(&["complex", "--nmax", "2", "--probe", "1", "--family", good.to_str().unwrap(), "--machine"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("complex.0.dd|pass|") && out.contains("complex.1.shuffle|pass|"));

    let broken = dir.join("broken.txt");
    fs::write(&broken, "(fake-mulvar 0 (gen 2 1 \"1\"))\n").unwrap();
    let o = vabc(&["complex", "--nmax", "2", "--probe", "1", "--family", broken.to_str().unwrap(), "--machine"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("complex.0.l0|fail|"));

    let empty = dir.join("empty.txt");
    fs::write(&empty, "# nothing\n").unwrap();
    let o = vabc(&["complex", "--nmax", "2", "--family", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: 0 pass, 0 fail"));

    let garbled = dir.join("garbled.txt");
    fs::write(&garbled, "(gen 1 2\n").unwrap();
    assert_eq!(vabc(&["complex", "--nmax", "2", "--family", garbled.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn half_index_scenario_reports_the_grading() {
    let o = vabc(&["algebra", "--scenario", "c2half", "--nmax", "3", "--probe", "1"]);
    let out = stdout(&o);
    // The Leibniz combination does not vanish for these factors, so the
    // run reports exactly that failure.
    let fails: Vec<&str> = out.lines().filter(|l| l.starts_with("[fail]")).collect();
    assert_eq!(fails.len(), 1, "{out}");
    assert!(fails[0].starts_with("[fail] algebra.laws.leibniz"));
    assert_eq!(o.status.code(), Some(1));
    assert!(out.contains("[pass] algebra.model.0: [H, X+2] == 0"));
    assert!(out.contains("grading: 3=n+n'-r: 3 = 2 + 2 - 1"));
    assert!(out.contains("grading: 0=m+m'-t: 0 = 0 + 0 - 0"));
    assert!(out.contains("[pass] algebra.laws.self-dot"));
}

#[test]
fn short_sequence_scenario_records_the_jacobi_outcome() {
    let o = vabc(&["algebra", "--scenario", "shortseq", "--nmax", "3", "--probe", "1", "--eps-eval", "--machine"]);
    let out = stdout(&o);
    assert!(out.contains("|pass|[X+(v1), X-(v2)] == H"), "{out}");
    assert!(out.contains("|pass|[X+(v1), Y-(v1)] == [X-(v2), Y+(v1)]"));
    let jacobi_fail = out.lines().any(|l| l.starts_with("algebra.jacobi.") && l.contains("|fail|"));
    assert_eq!(o.status.code(), Some(if jacobi_fail { 1 } else { 0 }));
}

#[test]
fn unknown_scenario_is_a_usage_error() {
    assert_eq!(vabc(&["algebra", "--scenario", "nope", "--nmax", "2"]).status.code(), Some(2));
}

#[test]
fn reports_are_written_and_deterministic() {
    let a = scratch("out-a");
    let b = scratch("out-b");
    let o = vabc(&["correlate", "a", "a", "--nmax", "3", "--order", "3", "--out", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_vabc"))
        .args(["correlate", "a", "a", "--nmax", "3", "--order", "3", "--out", "ignored"])
        .env("VABC_OUT_DIR", &b)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(!PathBuf::from("ignored").exists());
    for f in ["correlate.txt", "correlate.checks"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap());
    }
    assert!(fs::read_to_string(a.join("correlate.checks")).unwrap().contains("correlate.duality|pass|"));
}
