use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ddm_core::benchmarks::model_rmse;
use ddm_core::{make_dataset_pair, train, Activation, TargetFunction, TrainConfig};

fn ddm(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddm"))
        .args(args)
        .current_dir(dir)
        .env_remove("DDM_SEED")
        .output()
        .expect("run ddm")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn train_then_predict() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("two.csv"), "x,y\n0,0\n1,1\n").unwrap();
    let o = ddm(
        &["train", "--data", "two.csv", "--af", "sigu", "--m", "1", "--k", "1", "--out", "m.txt"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("rmse_train="));

    let o = ddm(&["predict", "--model", "m.txt", "--data", "two.csv", "--out", "p.csv"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = fs::read_to_string(dir.path().join("p.csv")).unwrap();
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("x,prediction"));
    assert_eq!(lines.count(), 2);
    assert!(stdout(&o).contains("rmse="));
}

#[test]
fn missing_target_column() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("one.csv"), "x\n0.1\n0.2\n0.3\n").unwrap();
    let o = ddm(&["train", "--data", "one.csv", "--m", "2", "--k", "1", "--out", "m.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("found 1 column"), "{}", stderr(&o));
}

#[test]
fn k_below_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let rows: String = (0..10).map(|i| format!("{},{},{}\n", i, i * i % 7, i % 3)).collect();
    fs::write(dir.path().join("d.csv"), format!("a,b,y\n{rows}")).unwrap();
    let o = ddm(&["train", "--data", "d.csv", "--m", "3", "--k", "1", "--out", "m.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("k must be ≥ input dimension"), "{}", stderr(&o));
}

#[test]
fn malformed_csv_names_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.csv"), "x,y\n0,0\n0.5,abc\n1,1\n").unwrap();
    let o = ddm(&["train", "--data", "bad.csv", "--m", "1", "--k", "1", "--out", "m.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn unknown_preset_lists_choices() {
    let dir = tempfile::tempdir().unwrap();
    let o = ddm(&["bench", "--preset", "tf9"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("tf1-n1") && e.contains("tf5-n10"), "{e}");
}

#[test]
fn empty_seed_list() {
    let dir = tempfile::tempdir().unwrap();
    let o = ddm(&["bench", "--preset", "tf1-n1", "--seed", ","], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("seed list is empty"), "{}", stderr(&o));
}

#[test]
fn tf1_preset_has_one_row_per_activation() {
    let dir = tempfile::tempdir().unwrap();
    let o = ddm(&["bench", "--preset", "tf1-n1"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = report_rows(&dir.path().join("tf1-n1.csv"));
    assert_eq!(rows.len(), 7);
    for r in &rows {
        assert_eq!(r[9], "ok");
        assert!(r[7].parse::<f64>().unwrap().is_finite());
        assert_eq!(r[8], "");
    }
}

#[test]
fn naive_softplus_overflow_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let o = ddm(
        &["bench", "--preset", "tf3-n2", "--softplus-naive", "--af", "soft,relu", "--seed", "7", "--out", "r.csv"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = report_rows(&dir.path().join("r.csv"));
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][2].as_str(), rows[0][9].as_str()), ("soft", "overflow"));
    assert_eq!(rows[0][7], "");
    assert_eq!((rows[1][2].as_str(), rows[1][9].as_str()), ("relu", "ok"));
}

#[test]
fn curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = ddm(
        &["curve", "--tf", "tf1", "--m", "10", "--train-size", "500", "--test-size", "300", "--out", "c.csv"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let fit = fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert_eq!(fit.lines().next(), Some("x,y_true,y_fit"));
    assert_eq!(fit.lines().count(), 301);
    let nodes = fs::read_to_string(dir.path().join("c_nodes.csv")).unwrap();
    assert!(nodes.lines().next().unwrap().ends_with(",node_10"));
    assert_eq!(nodes.lines().count(), 301);

    let o = ddm(&["curve", "--tf", "tf1", "--m", "0", "--out", "z.csv"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = ddm(&["curve", "--tf", "tf3", "--n", "2", "--out", "z.csv"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("one-dimensional"), "{}", stderr(&o));
    assert!(!dir.path().join("z.csv").exists());
}

#[test]
fn single_cell_sweep_matches_direct_training() {
    let dir = tempfile::tempdir().unwrap();
    let o = ddm(
        &[
            "sweep", "--tf", "tf4", "--n", "2", "--af", "sin", "--m", "40", "--seed", "3",
            "--train-size", "800", "--test-size", "400", "--data-seed", "5", "--out", "s.csv",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = report_rows(&dir.path().join("s.csv"));
    assert_eq!(rows.len(), 1);

    let (tr, te) = make_dataset_pair(TargetFunction::Tf4, 2, 800, 400, 5).unwrap();
    let model = train(&tr, &TrainConfig::new(Activation::Sine, 40, 2, 3)).unwrap();
    assert_eq!(rows[0][6].parse::<f64>().unwrap(), model_rmse(&model, &tr));
    assert_eq!(rows[0][7].parse::<f64>().unwrap(), model_rmse(&model, &te));
}
