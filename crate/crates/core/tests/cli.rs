use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_simplicial-cobar"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin()
        .args(args)
        .env_remove("COBAR_REWRITE_STEPS")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn fundamental_algebra_json() {
    let (code, out) = run(&[
        "fundamental-algebra",
        "nerve_z2.json",
        "--ring",
        "z",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["algebra"]["rank"], 2);
    assert_eq!(v["group_likes"]["count"], 2);
    assert_eq!(v["trust"]["max_trusted_degree"], 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["universal-cover", "z3.json", "--format", "json"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn local_homology_sign() {
    let (code, out) = run(&[
        "local-homology",
        "nerve_z2.json",
        "--module",
        "sign.json",
        "--degrees",
        "0..2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "H_0 = Z/2\nH_1 = 0\nH_2 = Z/2\n");
}

#[test]
fn verify_all_passes() {
    let (code, out) = run(&["verify", "--suite", "all"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["homology", "bad_faces.json"]).0, 2);
    assert_eq!(run(&["homology", "no-such-file.json"]).0, 2);
    assert_eq!(run(&["fundamental-algebra", "circle.json"]).0, 3);
    assert_eq!(run(&["fundamental-algebra", "wedge2.json"]).0, 3);
    let budget = bin()
        .args(["fundamental-algebra", "s3.json"])
        .env("COBAR_REWRITE_STEPS", "3")
        .output()
        .unwrap();
    assert_eq!(budget.status.code(), Some(3));
    assert_eq!(run(&["verify", "--suite", "nope"]).0, 2);
}
