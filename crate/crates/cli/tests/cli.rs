use std::process::{Command, Output};

use serde_json::Value;

fn fptool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fptool"))
        .args(args)
        .env_remove("FPT_E_MAX")
        .env_remove("FPT_CELL_CAP")
        .output()
        .expect("run fptool")
}

fn json(args: &[&str]) -> Value {
    let out = fptool(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn introduction_example() {
    let v = json(&[
        "fpt",
        "--field",
        "p=5,deg=3,mod=a^3+a+1",
        "--poly",
        "x^420*y^419*(x+y)^417*(x+a*y)^390*(x+a^2*y)^402*(x+a^3*y)^438",
    ]);
    let den = num_bigint::BigUint::from(2u32 * 3 * 73) * num_bigint::BigUint::from(5u32).pow(76);
    let want = format!("46636216675556057485911762783799675605705641779512143/{den}");
    assert_eq!(v["value"], want.as_str());
    assert_eq!(v["provenance"]["kind"], "CriticalPoint");
    assert_eq!(v["denominator_analysis"]["k"], "438");
    assert_eq!(v["denominator_analysis"]["p_power"], 76);
}

#[test]
fn seven_example() {
    let v = json(&["fpt", "--field", "p=7", "--poly", "(x*y)^49*((x+y)*(x+2*y)*(x+4*y))^13"]);
    assert_eq!(v["value"], "4/343");
    assert_eq!(v["critical_point"]["a"], serde_json::json!(["4", "4", "1", "1", "1"]));
    assert_eq!(v["critical_point"]["q"], "7");
}

#[test]
fn twenty_five_examples() {
    let v = json(&["fpt", "--field", "q=25", "--poly", "x^2*y^2*(x^2+2*x*y+3*y^2)^7"]);
    assert_eq!(v["value"], "97/875");
    let v = json(&["fpt", "--field", "q=25", "--poly", "x^2*y^2*(x^2+2*x*y+3*y^2)"]);
    assert_eq!(v["value"], "1/3");
    assert_eq!(v["provenance"]["kind"], "TrivialRegion");
}

#[test]
fn degenerate_example() {
    let v = json(&["fpt", "--field", "p=5", "--poly", "x*(x+y)^2"]);
    assert_eq!(v["value"], "1/2");
    assert_eq!(v["provenance"]["kind"], "Degenerate");
}

#[test]
fn general_ideal_example() {
    let v = json(&["ft", "--field", "p=5", "--ell", "x,y,x+y,x+2*y", "--a", "7,10,13,16", "--ideal", "x,y^2"]);
    assert_eq!(v["value"], "1/16");
    let v = json(&["critical", "--field", "p=5", "--ell", "x,y,x+y,x+2*y", "--ideal", "x,y^2", "--q", "5", "--box", "2/5:2/5,3/5:3/5,4/5:4/5,1:1"]);
    assert_eq!(v["critical_points"].as_array().unwrap().len(), 1);
}

#[test]
fn integer_critical_points() {
    let v = json(&["critical", "--field", "p=5", "--ell", "x,y", "--ideal", "x^3+y^3+x*y^2,x^2*y^3", "--q", "1", "--box", "0:8,0:8"]);
    let pts: Vec<(u64, u64)> = v["critical_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["a"][0].as_u64().unwrap(), c["a"][1].as_u64().unwrap()))
        .collect();
    assert_eq!(pts, vec![(0, 7), (1, 6), (2, 3), (5, 1), (7, 0)]);
    let delta = v["critical_points"][2]["delta"].as_str().unwrap();
    assert_eq!(delta, "3/1");
}

#[test]
fn quasi_homogeneous_cusp() {
    let v = json(&["fpt", "--field", "p=5", "--poly", "x^2+y^3", "--weights", "3,2"]);
    assert_eq!(v["value"], "4/5");
}

#[test]
fn factor_report() {
    let v = json(&["factor", "--field", "p=7", "--poly", "x*(x+y)*(x+6*y)^2"]);
    let f = v["factors"].as_array().unwrap();
    assert_eq!(f.len(), 3);
    assert_eq!(f[2]["mult"], 2);
}

#[test]
fn oracle_table() {
    let v = json(&["oracle", "--field", "p=3", "--poly", "x^2", "--e", "2"]);
    assert_eq!(v["table"][0]["nu"], 1);
    assert_eq!(v["table"][1]["nu"], 4);
}

#[test]
fn staircase_picture_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.pgm");
    let b = dir.path().join("b.pgm");
    let args = ["grid", "--field", "p=2", "--ell", "x,y,x+y", "--ideal", "x,y", "--q", "16", "--box", "0:1,0:1,0:1"];
    for path in [&a, &b] {
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--out", path.to_str().unwrap()]);
        assert!(fptool(&full).status.success());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert!(text.starts_with("P2\n17 17\n255\n"));
    let px: Vec<u8> = text.lines().skip(3).flat_map(|l| l.split(' ').map(|v| v.parse::<u8>().unwrap()).collect::<Vec<_>>()).collect();
    assert_eq!(px.len(), 17 * 17);
    assert_eq!(px.iter().filter(|&&v| v != 128).count(), 153);
    // (1,1,0) lies on the boundary: column 16, row 16
    assert_eq!(px[16 * 17 + 16], 0);

    let out = fptool(&["staircase", "--field", "p=2", "--ell", "x,y,x+y", "--q", "16", "--box", "0:1,0:1,0:1", "--format", "csv"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 154);
    assert!(csv.contains("\n16,16,0,16,1\n"));
}

#[test]
fn grid_csv_and_binary_pgm() {
    let out = fptool(&["grid", "--field", "p=2", "--ell", "x,y", "--q", "4", "--box", "0:2,0:2", "--format", "csv"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("a1,a2,q,delta_num,delta_den,region"));
    assert_eq!(lines.next(), Some("0,0,4,0,1,L"));
    assert_eq!(csv.lines().count(), 82);
    let out = fptool(&["grid", "--field", "p=2", "--ell", "x,y", "--q", "4", "--box", "0:2,0:2", "--binary"]);
    assert!(out.stdout.starts_with(b"P5\n9 9\n255\n"));
    assert_eq!(out.stdout.len(), "P5\n9 9\n255\n".len() + 81);
}

#[test]
fn exit_codes() {
    let out = fptool(&["fpt", "--field", "p=5", "--poly", "x+y^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
    let out = fptool(&["fpt", "--field", "p=4", "--poly", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fptool(&["fpt", "--field", "p=5", "--poly", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fptool(&["grid", "--field", "p=2", "--ell", "x,y", "--q", "4", "--box", "0:2,0:2", "--cell-cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_fptool"))
        .args(["grid", "--field", "p=2", "--ell", "x,y", "--q", "4", "--box", "0:2,0:2"])
        .env("FPT_CELL_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = fptool(&["oracle", "--field", "p=3", "--poly", "x", "--e", "12"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn e_max_override() {
    // λ = 3/8 has a power of p = 2 in its denominator
    let run = |e: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_fptool"))
            .args(["ft", "--field", "p=2", "--ell", "x,y,x+y", "--a", "3,3,2", "--ideal", "x,y^2"])
            .env("FPT_E_MAX", e)
            .output()
            .unwrap();
        assert!(out.status.success());
        serde_json::from_slice::<Value>(&out.stdout).unwrap()
    };
    let v = run("0");
    assert_eq!(v["e_used"].as_u64().unwrap(), 0);
    let v = run("40");
    assert!(v["value"].is_string());
}
