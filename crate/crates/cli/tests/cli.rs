use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corkatlas"))
        .args(args)
        .env("CORKATLAS_FIXTURES", fixtures())
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn invariants_examples() {
    let a = stdout(&["invariants", "A(2,0)"]);
    assert!(a.contains("casson: -4\n"));
    assert!(a.contains("mazur_type: true\n"));
    assert!(a.contains("versus A(2,1): not distinguished by implemented invariants\n"));
    let b = stdout(&["invariants", "B(0,-1,-1)"]);
    assert!(b.contains("cork_regime: true\n"));
    assert!(b.contains("W̄₁"));
    let z = stdout(&["invariants", "A(0,3)"]);
    assert!(z.contains("mazur_type: false\n"));
    assert!(z.contains("no evidence: λ = 0"));
}

#[test]
fn bad_notation_is_a_usage_error() {
    let out = run(&["invariants", "A(1,"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column"));
    assert_eq!(code(&["invariants", "At(1,2)"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn atlas_of_the_abalone_family() {
    let text = stdout(&["atlas", "A", "-m", "-3..3", "-n", "-1..1"]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 18);
    for r in &rows {
        let inst = &r[0];
        let m: i64 = inst[2..inst.find(',').unwrap()].parse().unwrap();
        assert_eq!(r[1], (-2 * m).to_string());
    }
    let mut sorted = rows.clone();
    sorted.sort_by_key(|r| {
        let body = &r[0][2..r[0].len() - 1];
        body.split(',').map(|v| v.parse::<i64>().unwrap()).collect::<Vec<_>>()
    });
    assert_eq!(sorted, rows);
}

#[test]
fn atlas_of_the_bing_cork_regime() {
    let rows = csv_rows(&stdout(&["atlas", "B", "-l", "0..0", "-m", "-4..-1", "-n", "-4..-1"]));
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r[3] == "true" && r[4] == "2"));
}

#[test]
fn empty_atlas_has_only_a_header() {
    let text = stdout(&["atlas", "A", "-m", "1..0", "-n", "0..0"]);
    assert_eq!(text, "instance,casson,mazur_verdict,cork_regime,tb,sl2_min,homology\n");
    assert_eq!(code(&["atlas", "B", "-m", "1..2"]), 2);
}

#[test]
fn atlas_cells_agree_with_single_instances() {
    let rows = csv_rows(&stdout(&["atlas", "At", "-m", "-2..2", "-n", "-1..0"]));
    for r in rows {
        let single = stdout(&["invariants", &r[0]]);
        assert!(single.contains(&format!("casson: {}\n", r[1])), "{}", r[0]);
        assert!(single.contains(&format!("mazur_type: {}\n", r[2])));
        assert!(single.contains(&format!("cork_regime: {}\n", r[3])));
    }
}

#[test]
fn atlas_writes_files_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("one.csv");
    let p2 = dir.path().join("two.csv");
    for p in [&p1, &p2] {
        stdout(&["atlas", "W-", "-l", "-2..2", "-k", "-1..1", "-o", p.to_str().unwrap()]);
    }
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());
    let rows = csv_rows(std::str::from_utf8(&a).unwrap());
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r[1] == "-2"));
}

#[test]
fn oracle_reports() {
    let k = stdout(&["oracle", "K_m1_n0.pd"]);
    assert!(k.contains("closed_form: match (A, m=1)\n"));
    assert!(k.contains("delta''(1): 4\n"));
    assert!(k.contains("fox_milnor: t^2 - t + 1\n"));
    assert!(k.contains("ribbon: asserted by diagram inspection, not computed\n"));
    let u = stdout(&["oracle", "unknot.pd"]);
    assert!(u.contains("alexander: [(0,1)]\n"));
    let t = stdout(&["oracle", "trefoil.pd"]);
    assert!(t.contains("fox_milnor: none\n"));
    let direct = fixtures().join("pd/trefoil.pd");
    assert_eq!(stdout(&["oracle", direct.to_str().unwrap()]), t);
    assert_eq!(code(&["oracle", "twist_link_m1.pd"]), 3);
    assert_eq!(code(&["oracle", "missing.pd"]), 2);
}

#[test]
fn gleam_solve_examples() {
    assert!(stdout(&["gleam-solve", "A", "-m", "2", "-n", "0"]).ends_with("M=2\nN=1\n"));
    assert!(stdout(&["gleam-solve", "At", "-m", "-1", "-n", "-1"]).ends_with("M=-1\nN=0\n"));
    assert!(stdout(&["gleam-solve", "B", "-l", "0", "-m", "-1", "-n", "-1"]).ends_with("L=0\nM=-1\nN=-1\n"));
    assert_eq!(code(&["gleam-solve", "B", "-m", "1", "-n", "1"]), 2);
}

#[test]
fn stein_check_of_the_shipped_front() {
    let out = stdout(&["stein-check", "atilde_m-2.front"]);
    assert!(out.contains("tb: 2\n"));
    assert!(out.contains("stein_ok: true\n"));
}

#[test]
fn kirby_replay_keeps_monitors() {
    let out = stdout(&["kirby", "replay", "twisting_base.kmoves"]);
    assert!(out.contains("expect mazur_shape"));
    assert!(out.ends_with("kirby v1\n# name: twisting base diagram\nH1 x\nH2 K n\nPASS K x +-+\n"));
}

#[test]
fn kirby_replay_violation_exits_with_four() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixtures().join("kirby/twisting_base.kirby"), dir.path().join("base.kirby")).unwrap();
    let script = dir.path().join("bad.kmoves");
    std::fs::write(&script, "kmoves v1\nload base.kirby\nparams n=1\nblowup + E\nexpect mazur_shape\n").unwrap();
    let out = run(&["kirby", "replay", script.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5"));
    assert!(err.contains("- true\n+ false"));
    std::fs::write(&script, "kmoves v1\nload base.kirby\nblowdown K\n").unwrap();
    assert_eq!(code(&["kirby", "replay", script.to_str().unwrap()]), 3);
}

#[test]
fn shadow_info_reports() {
    let out = stdout(&["shadow-info", "bings_house", "-g", "e3=0", "-g", "e4=2", "-g", "e5=3"]);
    assert!(out.contains("euler_characteristic: 1\n"));
    assert!(out.contains("homology: (Z, 0, 0)\n"));
    assert!(out.contains("sl2 e4: 17\n"));
    assert!(out.contains("hyperbolic: false\n"));
    let at = stdout(&["shadow-info", "a_tilde.poly", "-g", "e1=1", "-g", "e2=-3/2"]);
    assert!(at.contains("parity: true\n"));
    let bad = stdout(&["shadow-info", "a_tilde", "-g", "e1=1", "-g", "e2=-1"]);
    assert!(bad.contains("parity: false\n"));
    assert_eq!(code(&["shadow-info", "abalone", "-g", "e1=1"]), 3);
    assert_eq!(code(&["shadow-info", "abalone", "-g", "e1"]), 2);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["atlas", "B", "-l", "-1..1", "-m", "-3..3", "-n", "2..3"];
    assert_eq!(stdout(&args), stdout(&args));
}
