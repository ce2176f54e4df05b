use std::path::Path;
use std::process::{Command, Output};

use pkp_core::Instance;

fn pkp(args: &[&str], extra: &[&Path]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pkp"))
        .args(args)
        .args(extra)
        .output()
        .expect("spawn pkp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_instance(dir: &Path, name: &str, inst: &Instance) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, inst.to_text()).unwrap();
    path
}

#[test]
fn solve_worked_instance() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_instance(dir.path(), "worked.txt", &Instance::from_triples(&[(10, 5, 1), (6, 4, 2)], 7).unwrap());
    for algo in ["exact", "dp1", "brute"] {
        let out = pkp(&["solve", "--selected", "--algorithm", algo], &[&f]);
        assert!(out.status.success(), "{algo}");
        let text = stdout(&out);
        let mut lines = text.lines();
        let head: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
        assert_eq!(head.len(), 5);
        // input position 0 is the (10, 5, 1) item
        assert_eq!(&head[..3], ["9", "0", "certified"], "{algo}");
        assert_eq!(lines.next(), Some("0"));
    }
}

#[test]
fn brute_force_refuses_large_instances() {
    let dir = tempfile::tempdir().unwrap();
    let items: Vec<(i64, i64, i64)> = (0..30).map(|k| (k + 1, k % 7 + 1, k % 5)).collect();
    let f = write_instance(dir.path(), "big.txt", &Instance::from_triples(&items, 40).unwrap());
    let out = pkp(&["solve", "--algorithm", "brute"], &[&f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("brute force"));
}

#[test]
fn unreadable_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    std::fs::write(&f, "2 7\n10 5\n").unwrap();
    assert_eq!(pkp(&["solve"], &[&f]).status.code(), Some(1));
    assert_eq!(pkp(&["solve"], &[&dir.path().join("missing.txt")]).status.code(), Some(1));
}

#[test]
fn approx_within_bound_of_exact() {
    let dir = tempfile::tempdir().unwrap();
    let items: Vec<(i64, i64, i64)> = (0..40).map(|k| (20 + (k * 37) % 50, 1 + (k * 13) % 30, (k * 7) % 20)).collect();
    let f = write_instance(dir.path(), "pd.txt", &Instance::from_triples(&items, 200).unwrap());
    let out = pkp(&["approx", "--epsilon", "0.1", "--case", "profit-dominates", "--compare"], &[&f]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("within_bound=true"));

    let out = pkp(&["solve", "--algorithm", "approx", "--case", "penalty-bounded"], &[&f]);
    assert_eq!(out.status.code(), Some(1), "missing --bound");
}

#[test]
fn generate_rejects_unknown_classes() {
    let dir = tempfile::tempdir().unwrap();
    let out = pkp(&["generate", "--penalty", "pi9", "--out-dir"], &[dir.path()]);
    assert_eq!(out.status.code(), Some(1));
    let out = pkp(&["generate", "--weight", "a3", "--out-dir"], &[dir.path()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_is_deterministic_and_seeded() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let args = [
        "generate", "--n", "5", "--R", "100", "--weight", "a1", "--penalty", "pi6", "--profit", "p6", "--tau", "0.5",
        "--seed", "1", "--out-dir",
    ];
    for d in &dirs {
        assert!(pkp(&args, &[d.path()]).status.success());
    }
    let name = "n5_R100_a1_pi6_p6_tau0.5_s1.txt";
    let a = std::fs::read(dirs[0].path().join(name)).unwrap();
    assert_eq!(a, std::fs::read(dirs[1].path().join(name)).unwrap());
    let inst = Instance::read_text(a.as_slice()).unwrap();
    assert_eq!(inst.len(), 5);
    // subset-sum profits and penalties equal the weights
    assert!(inst.items().iter().all(|it| it.profit == it.weight && it.penalty == it.weight));
}

#[test]
fn suite_preset_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = pkp(&["generate", "--suite", "paper1000", "--count", "1", "--out-dir"], &[dir.path()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 336);
}

#[test]
fn bench_summary_and_empty_directory() {
    let empty = tempfile::tempdir().unwrap();
    assert_eq!(pkp(&["bench"], &[empty.path()]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let gen = [
        "generate", "--n", "60", "--R", "100", "--weight", "a2", "--penalty", "pi3", "--profit", "p2", "--tau", "0.1",
        "--count", "4", "--out-dir",
    ];
    assert!(pkp(&gen, &[dir.path()]).status.success());
    let out = pkp(&["bench", "--group-by", "profit,weight,penalty"], &[dir.path()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with(
        "profit_class,weight_type,penalty_class,tau,avg_time_ms,max_time_ms,n_opt,step1_only_pct,step1_time_pct,step2_time_pct,states_max_avg,states_max_max"
    ));
    let row: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&row[..4], ["p2", "a2", "pi3", "*"]);
    assert_eq!(row[6], "4");

    // same summary modulo the timing columns
    let again = stdout(&pkp(&["bench", "--group-by", "profit,weight,penalty"], &[dir.path()]));
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                l.split(',')
                    .enumerate()
                    .filter(|(k, _)| ![4, 5, 8, 9].contains(k))
                    .map(|(_, f)| f.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    };
    assert_eq!(strip(&text), strip(&again));
}
