use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clustercat")).args(args).output().expect("spawn clustercat")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn ext_is_directional_on_the_disk() {
    let s = data("disk1.json");
    assert_eq!(stdout(&["ext", "-s", &s, "p0:0-a0", "p0:1-a0"]), "1");
    assert_eq!(stdout(&["ext", "-s", &s, "p0:1-a0", "p0:0-a0"]), "0");
    assert_eq!(stdout(&["ext", "-v", "-s", &s, "p0:0-a0", "p0:1-a0"]), "1 (case: rotation)");
}

#[test]
fn surface_can_come_from_a_tilting_file() {
    assert_eq!(stdout(&["hom", "-s", &data("one_acc.json"), "p0:0-a0", "p0:0-a0"]), "1");
}

#[test]
fn ext_json() {
    let out = stdout(&["--json", "ext", "-s", &data("disk1.json"), "p0:0-p0:2", "p0:1-p0:3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim"], 1);
    assert_eq!(v["case"], "crossing");
}

#[test]
fn triangles_for_a_crossing() {
    let out = stdout(&["triangles", "-s", &data("disk1.json"), "p0:0-p0:2", "p0:1-p0:3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, ["p0:0-p0:2 -> p0:0-p0:3 -> p0:1-p0:3 -> p0:0-p0:2[1]", "p0:1-p0:3 -> 0 -> p0:0-p0:2 -> p0:1-p0:3[1]"]);
}

#[test]
fn check_ct_exit_codes() {
    assert_eq!(code(&["check-ct", &data("one_acc.json")]), 0);
    assert_eq!(code(&["check-ct", "-t", &data("two_acc.json")]), 0);
    let out = run(&["check-ct", &data("untriangulated.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("p0:0-p0:2"));
    assert_eq!(code(&["check-ct", &data("malformed.json")]), 2);
    assert_eq!(code(&["check-ct", &data("missing.json")]), 2);
}

#[test]
fn module_and_indices() {
    let t = data("one_acc.json");
    assert_eq!(stdout(&["module", "-t", &t, "p0:1-a0"]), "{alpha1:0, z:1 | tails: L=1, R=0}");
    assert_eq!(stdout(&["index", "-t", &t, "p0:1-a0"]), "-[P_alpha1] + [P_z]");
    assert_eq!(stdout(&["coindex", "-t", &t, "p0:1-a0"]), "[P_alpha2] - [P_z]");
    assert_eq!(stdout(&["index", "-t", &t, "p0:0-a0[1]"]), "-[P_z]");
}

#[test]
fn submodules_end_with_a_family() {
    let out = stdout(&["submodules", "-t", &data("one_acc.json"), "p0:1-a0"]);
    assert!(out.starts_with("0: <>"));
    assert!(out.lines().last().unwrap().contains("f0L(n), n >= 7"), "{out}");
}

#[test]
fn characters() {
    let t = data("one_acc.json");
    assert_eq!(stdout(&["character", "-t", &t, "p0:0-a0[1]"]), "1*x(z)");
    assert_eq!(
        stdout(&["character", "-t", &t, "p0:0-a0"]),
        "1*x(alpha1)^-1*x(z) + 1*x(z)^-1 + 1*x(z)*sum{n in [1,inf)} x(f0L(n))^-1*x(f0L(n+1))^-1"
    );
    let expanded = stdout(&["character", "-t", &t, "p0:1-a0", "--expand", "1,2,3,z"]);
    assert_eq!(expanded.split(" + ").count(), 3);
    assert_eq!(stdout(&["character", "-t", &t, "p0:1-a0", "--window", "alpha1,alpha2,alpha3,z"]), expanded);
}

#[test]
fn multiplication_and_exchange() {
    let t = data("one_acc.json");
    assert_eq!(code(&["check-mult", "-t", &t, "p0:1-a0", "p0:2-a0"]), 0);
    assert_eq!(code(&["check-exchange", "-t", &t, "p0:0-p0:3", "p0:1-p0:4", "--window", "1,2,3,4,5,z"]), 0);
}

#[test]
fn oracle_agrees_and_refuses_short_truncations() {
    let t = data("one_acc.json");
    let out = stdout(&["oracle", "-t", &t, "p0:1-a0", "--truncate", "6"]);
    assert_eq!(out.lines().last(), Some("PASS"));
    assert_eq!(code(&["oracle", "-t", &t, "p0:1-a0", "--truncate", "3"]), 2);
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(code(&["ext", "-s", &data("disk1.json"), "p0:0-a0", "nonsense"]), 2);
    assert_eq!(code(&["ext", "-s", &data("disk1.json"), "p0:0-a3", "p0:1-a0"]), 2);
    assert_eq!(code(&["character", "-t", &data("one_acc.json"), "p0:0-a0[x]"]), 2);
}
