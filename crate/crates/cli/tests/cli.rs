use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qsudoku::fixtures::{self, overlay_grid};
use qsudoku::io::{from_json, sidecar_path, Bundle, OaDoc};
use qsudoku::{fixture_catalog, MolsSet, VerificationReport};

/// Runs the binary with a whitespace-separated argument line.
fn run_in(dir: &Path, line: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsudoku"))
        .current_dir(dir)
        .args(line.split_whitespace())
        .output()
        .unwrap()
}

fn run(line: &str) -> Output {
    run_in(Path::new("."), line)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn mols_order_three_matches_fixture() {
    let out = run("mols --order 3");
    assert!(out.status.success());
    let set: MolsSet = from_json(&stdout(&out)).unwrap();
    assert_eq!(set, fixture_catalog("fig2-order3").unwrap());
}

#[test]
fn mols_count_and_csv() {
    let out = run("mols --order 5 --count 2 --format csv");
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10);
    assert!(text.starts_with("0,0,1,2,3,4\n"));
    assert_eq!(run("mols --order 5 --count 5").status.code(), Some(2));
}

#[test]
fn mols_refuses_order_six() {
    let out = run("mols --order 6");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("order 6"));
}

#[test]
fn construct_reproduces_modular_overlay() {
    let out = run("construct --m 4 --n 3 --projection modular");
    assert!(out.status.success(), "{}", stderr(&out));
    let bundle: Bundle = from_json(&stdout(&out)).unwrap();
    assert_eq!(bundle.overlay.rows, overlay_grid(fixtures::MODULAR_OVERLAY).rows);
    assert!(bundle.report.passed());
    assert!(stderr(&out).contains("PASS"));
}

#[test]
fn construct_generated_source_still_verifies() {
    let out = run("construct --m 4 --n 3 --projection coordinate --generated");
    assert!(out.status.success());
    let bundle: Bundle = from_json(&stdout(&out)).unwrap();
    assert!(bundle.report.passed());
}

#[test]
fn construct_rejects_bad_requests() {
    for args in [
        "construct --m 3 --n 3 --projection modular",
        "construct --m 4 --n 2 --projection modular",
        "construct --m 6 --n 3 --projection coordinate",
        "construct --m 5 --n 3 --projection modular --fixture",
        "construct --m 4 --n 3 --projection coordinate --count 3",
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn construct_three_squares_for_equal_orders() {
    let out = run("construct --m 4 --n 4 --projection coordinate --count 3");
    assert!(out.status.success(), "{}", stderr(&out));
    let bundle: Bundle = from_json(&stdout(&out)).unwrap();
    assert_eq!(bundle.array.levels, vec![16; 5]);
}

#[test]
fn construct_csv_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        "construct --m 5 --n 3 --projection modular --format csv --output a.csv",
    );
    assert!(out.status.success());
    assert!(sidecar_path(&dir.path().join("a.csv")).exists());
    for kind in ["oa", "sliced-oa"] {
        let out = run_in(dir.path(), &format!("verify --kind {kind} a.csv"));
        assert!(out.status.success(), "{kind}: {}", stdout(&out));
    }
}

#[test]
fn user_supplied_squares() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("m.json"), stdout(&run("mols --order 5"))).unwrap();
    fs::write(dir.path().join("n.json"), stdout(&run("mols --order 3"))).unwrap();
    let out = run_in(
        dir.path(),
        "construct --m 5 --n 3 --projection coordinate --m-squares m.json --n-squares n.json",
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let out = run_in(
        dir.path(),
        "construct --m 4 --n 3 --projection coordinate --m-squares m.json --n-squares n.json",
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sfd_csv_and_json_verify() {
    let dir = tempfile::tempdir().unwrap();
    let base = "sfd --m 4 --n 3 --projection modular --seed 11";
    let out = run_in(dir.path(), &format!("{base} --output d.csv"));
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("d.csv")).unwrap();
    assert_eq!(text.lines().count(), 144);
    assert_eq!(text.lines().next().unwrap().split(',').count(), 5);

    let out = run_in(dir.path(), &format!("{base} --format json --output d.json"));
    assert!(out.status.success());
    for file in ["d.csv", "d.json"] {
        let out = run_in(dir.path(), &format!("verify --kind design {file} --format json"));
        assert!(out.status.success(), "{file}");
        let report: VerificationReport = from_json(&stdout(&out)).unwrap();
        assert!(report.passed());
    }
}

#[test]
fn sfd_csv_needs_output() {
    let out = run("sfd --m 4 --n 3 --projection modular --seed 1");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--output"));
}

#[test]
fn sfd_seeds_differ() {
    let dir = tempfile::tempdir().unwrap();
    for seed in ["1", "2"] {
        let out = run_in(
            dir.path(),
            &format!("sfd --m 4 --n 3 --projection coordinate --seed {seed} --output {seed}.csv"),
        );
        assert!(out.status.success());
    }
    let a = fs::read(dir.path().join("1.csv")).unwrap();
    let b = fs::read(dir.path().join("2.csv")).unwrap();
    assert_ne!(a, b);
}

#[test]
fn verify_fixtures() {
    for (kind, name) in [
        ("mols", "fig2-order3"),
        ("mols", "fig2-order4"),
        ("quasi-sudoku", "fig4-a"),
        ("quasi-sudoku", "fig4-b"),
        ("overlay", "fig6"),
        ("overlay", "fig8"),
        ("oa", "fig7"),
    ] {
        let out = run(&format!("verify --kind {kind} --fixture {name}"));
        assert!(out.status.success(), "{name}: {}", stdout(&out));
        assert!(stdout(&out).contains("PASS"));
    }
}

#[test]
fn verify_kind_mismatch_and_bad_input() {
    let out = run("verify --kind overlay --fixture fig7");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run("verify --kind oa --fixture nope").status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
    let out = run_in(dir.path(), "verify --kind latin bad.json");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("does not parse"));
}

#[test]
fn verify_reports_located_violations() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("l.json"), "[[0,1,2],[1,2,0],[1,0,2]]").unwrap();
    let out = run_in(dir.path(), "verify --kind latin l.json");
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    assert!(stdout(&out).contains("column"), "{}", stdout(&out));

    let mut rows = fixtures::collapsed_slice_0_rows();
    rows[0][3] = (rows[0][3] + 1) % 3;
    let doc = OaDoc {
        levels: vec![3, 3, 4, 3],
        strength: 2,
        rows,
        slice_labels: None,
        projections: None,
    };
    fs::write(dir.path().join("o.json"), qsudoku::io::to_json(&doc)).unwrap();
    let out = run_in(dir.path(), "verify --kind oa o.json");
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("columns 0,3"), "{}", stdout(&out));

    // a level count that is too small is a structural failure, not a crash
    let out = run_in(dir.path(), "verify --kind oa o.json --levels 3,3,3,3");
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("structure"));
}

#[test]
fn plot_data_projects_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        "sfd --m 4 --n 3 --projection modular --seed 3 --output d.csv",
    );
    assert!(out.status.success());
    let out = run_in(dir.path(), "plot-data d.csv --columns 2,3 --slice 1");
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,slice"));
    let rest: Vec<&str> = lines.collect();
    assert_eq!(rest.len(), 36);
    assert!(rest.iter().all(|l| l.ends_with(",1")));

    let all = stdout(&run_in(dir.path(), "plot-data d.csv --columns 0,1"));
    assert_eq!(all.lines().count(), 145);

    for args in [
        "plot-data d.csv --columns 0,4",
        "plot-data d.csv --columns 0,1 --slice 4",
        "plot-data d.csv --columns 0",
    ] {
        assert_eq!(run_in(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}
