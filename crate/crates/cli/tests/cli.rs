use std::fs;
use std::path::Path;

use kcenter_cli::commands::SolutionOutput;
use kcenter_cli::RunManifest;
use tempfile::TempDir;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn kc(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kcenter").chain(args.iter().copied());
    let code = kcenter_cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

const COLLINEAR: &str = r#"{"k":1,"customers":[[0,0],[50,0],[100,0]]}"#;

#[test]
fn collinear_triple_every_solver() {
    let tmp = TempDir::new().unwrap();
    let inst = write(tmp.path(), "c.json", COLLINEAR);
    for solver in ["dragoon", "two-approx", "macqueen", "greedy", "backtrack"] {
        let o = kc(&["solve", &inst, "--solver", solver]);
        assert_eq!(o.code, 0, "{solver}: {}", o.stderr);
        let s: SolutionOutput = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(s.objective, 50.0, "{solver}");
        assert_eq!(s.centers, vec![1]);
    }
}

#[test]
fn k_equal_n_is_zero() {
    let tmp = TempDir::new().unwrap();
    let inst = write(
        tmp.path(),
        "c.json",
        r#"{"k":3,"customers":[[1,2],[30,4],[5,60]]}"#,
    );
    for solver in ["dragoon", "two-approx", "macqueen", "greedy", "backtrack"] {
        let o = kc(&["solve", &inst, "--solver", solver]);
        let s: SolutionOutput = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(s.objective, 0.0);
        assert_eq!(s.centers, vec![0, 1, 2]);
    }
}

#[test]
fn missing_k_is_invalid_input() {
    let tmp = TempDir::new().unwrap();
    let inst = write(tmp.path(), "bad.json", r#"{"customers":[[0,0],[1,1]]}"#);
    let o = kc(&["solve", &inst, "--solver", "dragoon"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("`k`"), "{}", o.stderr);
}

#[test]
fn invalid_k_and_coordinates() {
    let tmp = TempDir::new().unwrap();
    let big_k = write(tmp.path(), "a.json", r#"{"k":3,"customers":[[0,0],[1,1]]}"#);
    assert_eq!(kc(&["exact", &big_k]).code, 2);
    let unknown = write(
        tmp.path(),
        "b.json",
        r#"{"k":1,"customers":[[0,0]],"extra":1}"#,
    );
    assert_eq!(kc(&["exact", &unknown]).code, 2);
    let o = kc(&["exact", &p(tmp.path(), "missing.json")]);
    assert_eq!(o.code, 2);
}

#[test]
fn unknown_solver_and_bad_flags() {
    let tmp = TempDir::new().unwrap();
    let inst = write(tmp.path(), "c.json", COLLINEAR);
    assert_eq!(kc(&["solve", &inst, "--solver", "annealing"]).code, 2);
    assert_eq!(kc(&["solve", &inst]).code, 2);
    assert_eq!(
        kc(&[
            "--seed",
            "1",
            "--entropy",
            "solve",
            &inst,
            "--solver",
            "greedy"
        ])
        .code,
        2
    );
    assert_eq!(kc(&["--help"]).code, 0);
}

#[test]
fn exact_cap_exceeded() {
    let tmp = TempDir::new().unwrap();
    let inst = write(
        tmp.path(),
        "c.json",
        r#"{"k":2,"customers":[[0,0],[1,0],[2,0],[3,0],[4,0]]}"#,
    );
    let o = kc(&["exact", &inst, "--cap", "9"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("--cap"));
    assert_eq!(kc(&["exact", &inst, "--cap", "10"]).code, 0);
}

#[test]
fn exact_four_point_line() {
    let tmp = TempDir::new().unwrap();
    let inst = write(
        tmp.path(),
        "c.json",
        r#"{"k":2,"customers":[[0,0],[10,0],[11,0],[21,0]]}"#,
    );
    let o = kc(&["exact", &inst]);
    let s: SolutionOutput = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(s.centers, vec![0, 2]);
    assert_eq!(s.objective, 10.0);
    assert!(s.trace.is_none());
}

#[test]
fn solve_is_seeded() {
    let tmp = TempDir::new().unwrap();
    let inst = write(
        tmp.path(),
        "c.json",
        r#"{"k":2,"customers":[[0,0],[10,0],[0,10],[10,10],[5,5],[20,20]]}"#,
    );
    for solver in ["greedy", "macqueen"] {
        let a = kc(&["--seed", "7", "solve", &inst, "--solver", solver]).stdout;
        let b = kc(&["--seed", "7", "solve", &inst, "--solver", solver]).stdout;
        assert_eq!(a, b);
    }
}

#[test]
fn solve_writes_out_file_and_geometry_reads_it() {
    let tmp = TempDir::new().unwrap();
    let inst = write(tmp.path(), "c.json", COLLINEAR);
    let sol = p(tmp.path(), "sol.json");
    let o = kc(&["--out", &sol, "solve", &inst, "--solver", "backtrack"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());

    let o = kc(&["dump-geometry", &inst, &sol]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "kind,index,owner,x,y,x2,y2,length");
    assert_eq!(lines.len(), 1 + 3 + 1 + 3);
    assert!(lines.contains(&"center,1,1,50,0,,,"));
}

#[test]
fn geometry_rejects_mismatched_solution() {
    let tmp = TempDir::new().unwrap();
    let inst = write(tmp.path(), "c.json", COLLINEAR);
    for bad in [
        r#"{"centers":[0,1]}"#,
        r#"{"centers":[7]}"#,
        r#"{"centers":[1],"objective":49.0}"#,
        r#"{"objective":50.0}"#,
    ] {
        let sol = write(tmp.path(), "s.json", bad);
        let o = kc(&["dump-geometry", &inst, &sol]);
        assert_eq!(o.code, 2, "{bad}");
    }
    let sol = write(tmp.path(), "s.json", r#"{"centers":[1],"objective":50.0}"#);
    assert_eq!(kc(&["dump-geometry", &inst, &sol]).code, 0);
}

#[test]
fn average_self_comparison_is_zero() {
    let tmp = TempDir::new().unwrap();
    let out = p(tmp.path(), "avg");
    let o = kc(&[
        "--out",
        &out,
        "average",
        "--setup",
        "II",
        "--instances",
        "15",
        "--challengers",
        "dragoon",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(
        lines[0],
        "setup,customers,centers,challenged,instances,dragoon"
    );
    assert_eq!(lines[1], "II,25,4,dragoon,15,0");
    let records = fs::read_to_string(tmp.path().join("avg/records.csv")).unwrap();
    assert_eq!(records.lines().count(), 16);
    assert!(records.lines().skip(1).all(|l| l.ends_with(",0")));
}

#[test]
fn average_custom_setup_and_validation() {
    let tmp = TempDir::new().unwrap();
    let out = p(tmp.path(), "avg");
    let o = kc(&[
        "--out",
        &out,
        "average",
        "--customers",
        "12",
        "--centers",
        "3",
        "--instances",
        "4",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o
        .stdout
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("12/3,12,3,dragoon,4,"));
    assert_eq!(kc(&["--out", &out, "average", "--customers", "12"]).code, 2);
    assert_eq!(kc(&["--out", &out, "average", "--setup", "VII"]).code, 2);
    assert_eq!(kc(&["--out", &out, "average", "--instances", "0"]).code, 2);
    assert_eq!(
        kc(&[
            "--out",
            &out,
            "average",
            "--challengers",
            "greedy,greedy",
            "--instances",
            "2"
        ])
        .code,
        2
    );
}

#[test]
fn adversary_self_pair_is_zero() {
    let tmp = TempDir::new().unwrap();
    let out = p(tmp.path(), "adv");
    let o = kc(&[
        "--out",
        &out,
        "adversary",
        "--challengers",
        "greedy",
        "--challenged",
        "greedy",
        "--generations",
        "3",
        "--population",
        "6",
        "--seeds",
        "1,2",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rows: Vec<&str> = o.stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert_eq!(r.split(',').nth(6), Some("0"));
    }
}

#[test]
fn adversary_zero_generations_and_instance_files() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path().join("adv");
    let out = dir.to_str().unwrap();
    let o = kc(&[
        "--seed",
        "5",
        "--out",
        out,
        "adversary",
        "--setup",
        "10/2",
        "--generations",
        "0",
        "--population",
        "4",
        "--runs",
        "2",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let m = RunManifest::read(&dir.join("manifest.json")).unwrap();
    for a in &m.artifacts {
        assert!(dir.join(a).exists(), "{a}");
    }
    assert!(dir.join("best_macqueen_vs_dragoon_seed5.json").exists());
    assert!(dir.join("best_macqueen_vs_dragoon_seed6.json").exists());
    let history = fs::read_to_string(dir.join("history.csv")).unwrap();
    assert_eq!(history.lines().count(), 1 + 2);

    // the stored instance reproduces the recorded ΔD through `solve`
    let row: Vec<String> = o
        .stdout
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(String::from)
        .collect();
    let file = p(&dir, &row[7]);
    let solve = |solver: &str, seed: &str| -> f64 {
        let o = kc(&["--seed", seed, "solve", &file, "--solver", solver]);
        serde_json::from_str::<SolutionOutput>(&o.stdout)
            .unwrap()
            .objective
    };
    let delta = solve("macqueen", &row[4]) - solve("dragoon", &row[5]);
    assert_eq!(delta.to_string(), row[6]);
}

#[test]
fn adversary_rejects_bad_ea_parameters() {
    let tmp = TempDir::new().unwrap();
    let out = p(tmp.path(), "adv");
    assert_eq!(
        kc(&["--out", &out, "adversary", "--population", "0"]).code,
        2
    );
    assert_eq!(
        kc(&["--out", &out, "adversary", "--recombination-prob", "1.5"]).code,
        2
    );
    assert_eq!(kc(&["--out", &out, "adversary", "--runs", "0"]).code, 2);
}

#[test]
fn matrix_two_kinds_fill_two_cells() {
    let tmp = TempDir::new().unwrap();
    let out = p(tmp.path(), "mx");
    let o = kc(&[
        "--out",
        &out,
        "matrix",
        "--setup",
        "I",
        "--kinds",
        "greedy,dragoon",
        "--generations",
        "2",
        "--population",
        "4",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<Vec<&str>> = o.stdout.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(lines[0], vec!["challenger", "greedy", "dragoon"]);
    assert_eq!(lines[1][1], "");
    assert_eq!(lines[2][2], "");
    assert!(!lines[1][2].is_empty() && !lines[2][1].is_empty());
}

#[test]
fn matrix_default_shape_and_duplicates() {
    let tmp = TempDir::new().unwrap();
    let out = p(tmp.path(), "mx");
    let o = kc(&[
        "--out",
        &out,
        "matrix",
        "--setup",
        "I",
        "--generations",
        "0",
        "--population",
        "2",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), 6);
    let empty: usize = lines[1..]
        .iter()
        .map(|l| l.split(',').skip(1).filter(|c| c.is_empty()).count())
        .sum();
    assert_eq!(empty, 5);
    assert_eq!(
        kc(&["--out", &out, "matrix", "--kinds", "greedy,greedy"]).code,
        2
    );
    assert_eq!(kc(&["--out", &out, "matrix", "--kinds", "greedy"]).code, 2);
}

#[test]
fn replay_rewrites_identical_files() {
    let tmp = TempDir::new().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    let o = kc(&[
        "--seed",
        "11",
        "--jobs",
        "3",
        "--out",
        a.to_str().unwrap(),
        "adversary",
        "--generations",
        "4",
        "--population",
        "6",
        "--runs",
        "2",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let manifest = p(&a, "manifest.json");
    let r = kc(&[
        "--jobs",
        "1",
        "--out",
        b.to_str().unwrap(),
        "replay",
        &manifest,
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(o.stdout, r.stdout);
    let m = RunManifest::read(&a.join("manifest.json")).unwrap();
    for f in &m.artifacts {
        assert_eq!(
            fs::read(a.join(f)).unwrap(),
            fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn replay_rejects_garbage() {
    let tmp = TempDir::new().unwrap();
    let m = write(tmp.path(), "manifest.json", "{}");
    assert_eq!(kc(&["replay", &m]).code, 2);
}
