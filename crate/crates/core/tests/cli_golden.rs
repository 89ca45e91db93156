//! Golden outputs for every CLI verb. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

const CASES: &[(&str, &[&str])] = &[
    ("orbits_s22", &["orbits", "--tree", "(()())"]),
    ("orbits_s22_csv", &["orbits", "--tree", "(()())", "--format", "csv"]),
    ("tiling_star332_ascii", &["tiling", "--family", "star:3,3,2", "--format", "ascii"]),
    ("tiling_star332_orbit0", &["tiling", "--family", "star:3,3,2", "--orbit", "0"]),
    ("stats_c3_csv", &["stats", "--family", "comb:3", "--format", "csv", "--per-node"]),
    ("stats_tk2", &["stats", "--family", "tk:2"]),
    ("homomesy_star332", &["homomesy", "--family", "star:3,3,2", "--stat", "3*chi_x:2+chi_x:0"]),
    ("homomesy_star332_chi", &["homomesy", "--family", "star:3,3,2", "--stat", "chi"]),
    ("homometry_cbt3_chi", &["homometry", "--family", "cbt:3", "--stat", "chi"]),
    ("homometry_c3_hatchi", &["homometry", "--family", "comb:3", "--stat", "hatchi"]),
    ("verify_star332", &["verify", "--family", "star:3,3,2", "--format", "ascii"]),
    ("verify_zipper2", &["verify", "--family", "zipper:2"]),
    ("birational_grid22", &["birational", "--family", "grid:2,2", "--seed", "1", "--starts", "2"]),
    ("birational_modp", &["birational", "--family", "grid:3,2", "--mode", "modp:", "--seed", "5"]),
    ("pl_grid32", &["pl", "--family", "grid:3,2", "--seed", "2"]),
    ("render_star332_svg", &["render", "--family", "star:3,3,2", "--orbit", "2", "--format", "svg"]),
    ("render_from_file", &["render", "--family", "star:3,3,2", "--tiling", "GOLDEN/star332_orbit2_tiling.json"]),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> (i32, String) {
    let dir = golden_dir();
    let args: Vec<String> = std::iter::once("rowmotion".to_string())
        .chain(args.iter().map(|a| a.replace("GOLDEN", dir.to_str().unwrap())))
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = rowmotion::cli::run(args, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn every_verb_matches_its_golden_file() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in CASES {
        let (code, out) = run(args);
        let actual = format!("exit {code}\n{out}");
        let path = golden_dir().join(format!("{name}.txt"));
        if update {
            std::fs::write(&path, &actual).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(actual, expected, "golden mismatch for {name}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for (_, args) in CASES {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_rowmotion");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["verify", "--family", "star:3,3,2"]);
    assert_eq!(ok.status.code(), Some(0));
    let usage = status(&["orbits", "--tree", "(("]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(!usage.stderr.is_empty() && usage.stdout.is_empty());
    let budget = status(&["orbits", "--family", "zipper:3", "--budget", "100"]);
    assert_eq!(budget.status.code(), Some(3));
    let cbt = status(&["homometry", "--family", "cbt:3", "--stat", "chi"]);
    assert_eq!(cbt.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&cbt.stdout).unwrap();
    assert_eq!(v["isHomometric"], false);
    assert_eq!(v["witness"][0]["sum"], 15);
    assert_eq!(v["witness"][1]["sum"], 14);
}

#[test]
fn render_rejects_a_broken_tiling() {
    let mut t: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(golden_dir().join("star332_orbit2_tiling.json")).unwrap())
            .unwrap();
    t[0]["tiling"]["tiles"][0]["width"] = 1.into();
    let path = std::env::temp_dir().join(format!("rowmotion-broken-{}.json", std::process::id()));
    std::fs::write(&path, t.to_string()).unwrap();
    let (code, out) = run(&["render", "--family", "star:3,3,2", "--tiling", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 2);
    assert!(out.is_empty());
}
