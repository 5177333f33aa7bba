use std::fs;
use std::process::{Command, Output};

fn covtype(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covtype"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn homology_of_projective_plane() {
    let o = covtype(&["homology", "corpus:rp2_6", "--coeff", "z"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1: betti=0 torsion=[2]"));

    let f2 = stdout(&covtype(&["homology", "corpus:rp2_6", "--coeff", "f2"]));
    assert_eq!(f2, "0: betti=0\n1: betti=1\n2: betti=1\n");
}

#[test]
fn moore_prints_ct_and_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.cplx");
    let o = covtype(&[
        "moore",
        "--rank",
        "7",
        "--degree",
        "1",
        "--witness",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("ct = 6"));
    assert!(text.contains("vertices: 6"));
    assert!(text.contains("verified: true"));

    let h = stdout(&covtype(&["homology", path.to_str().unwrap()]));
    assert!(h.contains("1: betti=7 torsion=[]"));
    assert!(fs::read_to_string(&path).unwrap().lines().count() >= 7);
}

#[test]
fn projective_table_rows() {
    let text = stdout(&covtype(&["table", "projective", "--max-n", "4"]));
    let rule = |space: &str| -> Vec<u64> {
        text.lines()
            .filter(|l| l.starts_with(space))
            .map(|l| l.split_whitespace().nth(2).unwrap().parse().unwrap())
            .collect()
    };
    assert_eq!(rule("RP^"), vec![3, 6, 10, 15]);
    assert_eq!(rule("CP^"), vec![4, 9, 16, 25]);
    assert_eq!(rule("HP^"), vec![6, 15, 28, 45]);
}

#[test]
fn unitary_table_marks_su2() {
    let text = stdout(&covtype(&["table", "unitary", "--max-n", "3"]));
    let su2 = text.lines().find(|l| l.starts_with("SU(2)")).unwrap();
    assert!(su2.contains("5 [2]"));
    assert!(text.contains("[2] closed form gives 6"));
}

#[test]
fn records_are_json_lines() {
    let o = covtype(&["homology", "corpus:torus_7", "--format", "records"]);
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1]["betti"], 2);
    assert_eq!(lines[2]["betti"], 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["bounds", "--complex", "corpus:torus_7"];
    let a = covtype(&args);
    assert_eq!(a.stdout, covtype(&args).stdout);
    assert!(stdout(&a).contains("best: ct >= 6"));
}

#[test]
fn bounds_from_profile_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.toml");
    fs::write(&path, "hdim = 4\ncat_lower = 3\n[essential]\nQ = [[2, 2]]\n").unwrap();
    let text = stdout(&covtype(&["bounds", "--profile", path.to_str().unwrap()]));
    assert!(text.contains("best: ct >= 9"), "{text}");

    fs::write(&path, "hdim = 4\ncat_lower = 0\n").unwrap();
    let o = covtype(&["bounds", "--profile", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("InvalidProfile"));
}

#[test]
fn nerve_and_good_cover_check() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("circle.cplx");
    let cover = dir.path().join("cover.txt");
    fs::write(&k, "0 1\n1 2\n0 2\n").unwrap();
    fs::write(&cover, "0\n1 2\n").unwrap();
    let o = covtype(&[
        "nerve",
        k.to_str().unwrap(),
        "--cover",
        cover.to_str().unwrap(),
        "--check-good",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("0 1\n"));
    assert!(text.contains("good cover (acyclicity check, not contractibility): no"));

    fs::write(&cover, "0 9\n").unwrap();
    let o = covtype(&["nerve", k.to_str().unwrap(), "--cover", cover.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("InvalidCover"));
}

#[test]
fn search_commands() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("target.txt");
    fs::write(&p, "# two circles\n1: betti=2 torsion=[]\n").unwrap();
    let text = stdout(&covtype(&[
        "search",
        "--vertices",
        "3",
        "--profile",
        p.to_str().unwrap(),
    ]));
    assert!(text.contains("outcome: exhausted-none"));
    assert!(text.contains("nodes_explored:"));
    let text = stdout(&covtype(&[
        "search",
        "--vertices",
        "4",
        "--profile",
        p.to_str().unwrap(),
    ]));
    assert!(text.contains("outcome: found"));

    let text = stdout(&covtype(&["search", "--vertices", "5", "--max-betti", "1"]));
    assert!(text.trim_end().ends_with(": 6"));
}

#[test]
fn suspend_and_wedge() {
    let text = stdout(&covtype(&["suspend", "corpus:rp2_6"]));
    assert!(text.starts_with("# 8 vertices"));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.cplx");
    let o = covtype(&[
        "wedge",
        "corpus:torus_7",
        "corpus:rp2_6",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let h = stdout(&covtype(&["homology", out.to_str().unwrap()]));
    assert!(h.contains("1: betti=2 torsion=[2]"));
    assert!(h.contains("2: betti=1 torsion=[]"));
}

#[test]
fn usage_and_computation_errors() {
    assert_eq!(covtype(&["homology"]).status.code(), Some(2));
    assert_eq!(
        covtype(&["homology", "corpus:rp2_6", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(covtype(&["bounds"]).status.code(), Some(2));
    let o = covtype(&["homology", "corpus:nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("UnknownName"));
    let o = covtype(&["search", "--vertices", "9", "--max-betti", "1"]);
    assert_eq!(o.status.code(), Some(1));
}
