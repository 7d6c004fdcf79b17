use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn frechet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frechet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path: PathBuf = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn wasserstein_self_distance_is_zero() {
    let dir = TempDir::new().unwrap();
    let a = write(
        dir.path(),
        "a.json",
        r#"{"atoms": [0, 1, 4], "weights": [0.25, 0.5, 0.25]}"#,
    );
    let o = frechet(&["law-dist", "wasserstein", "--p", "2", &a, &a]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.000000000000\n");
}

#[test]
fn segment_pair_closed_form() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "seg1.csv", "# x,y\n0,0\n1,0\n");
    let q = write(dir.path(), "seg2.csv", "0,1\n1,2\n");
    let o = frechet(&["curve-dist", "frechet", &p, &q, "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2.000000000000\n");
}

#[test]
fn json_output_schema() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "p.csv", "0,0\n1,1\n2,0\n");
    let q = write(dir.path(), "q.csv", "0,0.5\n2,0.5\n");
    let o = frechet(&["--format", "json", "curve-dist", "frechet", &p, &q]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["metric"], "frechet");
    let value = v["value"].as_f64().unwrap();
    let bracket = v["bracket"].as_array().unwrap();
    assert!(bracket[0].as_f64().unwrap() <= value && value <= bracket[1].as_f64().unwrap());
    assert_eq!(v["params"]["tol"], 1e-9);

    let o = frechet(&["--format", "json", "curve-dist", "dtw", &p, &q]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.get("bracket").is_none());
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["metric", "value", "params"]);
}

#[test]
fn refused_metrics_exit_3() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", r#"{"support": [[0]], "weights": [1]}"#);
    for (cmd, metric) in [
        ("div", "prokhorov"),
        ("law-dist", "prokhorov"),
        ("curve-dist", "skorokhod"),
    ] {
        let o = frechet(&[cmd, metric, &a, &a]);
        assert_eq!(o.status.code(), Some(3), "{cmd} {metric}");
        assert!(stderr(&o).contains(metric));
        assert!(stderr(&o).contains("unimplemented"));
    }
}

#[test]
fn computation_errors_exit_1_with_kind() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "p.json", r#"{"atoms": [0, 1], "weights": [0.5, 0.5]}"#);
    let q = write(dir.path(), "q.json", r#"{"atoms": [5], "weights": [1]}"#);
    let o = frechet(&["div", "kl", &p, &q]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotAbsolutelyContinuous"));

    let o = frechet(&["law-dist", "wasserstein", "--p", "0.5", &p, &q]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("InvalidParameter"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "p.csv", "0,0\n1,x\n");
    let q = write(dir.path(), "q.csv", "0,0\n1,1\n");
    let o = frechet(&["curve-dist", "frechet", &p, &q]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));

    assert_eq!(frechet(&["curve-dist", "nope", &q, &q]).status.code(), Some(2));
    assert_eq!(frechet(&["curve-dist", "wasserstein", &q, &q]).status.code(), Some(2));
    assert_eq!(frechet(&["curve-dist", "frechet", &q]).status.code(), Some(2));
    let missing = dir.path().join("missing.csv");
    assert_eq!(
        frechet(&["curve-dist", "frechet", &q, missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let o = frechet(&["div", "mmd", &q, &q]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn every_subcommand_runs() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let c1 = write(d, "c1.csv", "0,0\n1,0\n1,1\n0,1\n0,0\n");
    let c2 = write(d, "c2.csv", "0.1,0\n1.1,0\n1.1,1\n0.1,1\n0.1,0\n");
    for m in [
        "frechet",
        "discrete-frechet",
        "dtw",
        "hausdorff",
        "closed-frechet",
        "shortest",
        "maxmin",
    ] {
        let o = frechet(&["curve-dist", m, &c1, &c2, "--resolution", "0.01"]);
        assert_eq!(o.status.code(), Some(0), "{m}: {}", stderr(&o));
    }
    let l1 = write(d, "l1.json", r#"{"atoms": [0, 1], "weights": [0.5, 0.5]}"#);
    let l2 = write(d, "l2.csv", "10\n20\n");
    for m in [
        "wasserstein",
        "w1-area",
        "winf",
        "kolmogorov",
        "levy1",
        "levy2",
        "frechet1957",
    ] {
        let o = frechet(&["law-dist", m, &l1, &l2]);
        assert_eq!(o.status.code(), Some(0), "{m}: {}", stderr(&o));
    }
    let o = frechet(&["law-dist", "frechet1957", &l1, &l2]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 230.5f64.sqrt()).abs() < 1e-9);
    let g1 = write(d, "g1.csv", "1\n0\n");
    let g2 = write(d, "g2.csv", "20\n10\n");
    let o = frechet(&["law-dist", "gini", "--alpha", "2", &g1, &g2]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 230.5f64.sqrt()).abs() < 1e-9);

    let b1 = write(d, "b1.csv", "f1,f2\n0,0\n2,0\n1,3\n");
    let b2 = write(d, "b2.csv", "1,-2\n3,-2\n2,1\n");
    let o = frechet(&["gauss", "fid", &b1, &b2]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 5.0).abs() < 1e-9);
    let n1 = write(d, "n1.json", r#"{"mean": [0], "cov": [[1]]}"#);
    let n2 = write(d, "n2.json", r#"{"mean": [3], "cov": [[25]]}"#);
    let o = frechet(&["gauss", "w2", &n1, &n2]);
    assert_eq!(stdout(&o), "5.000000000000\n");
    let o = frechet(&["gauss", "gelbrich", &n1, &n2]);
    assert_eq!(stdout(&o), "25.000000000000\n");

    let p = write(d, "p.json", r#"{"support": [[0, 0], [1, 0]], "weights": [0.5, 0.5]}"#);
    let q = write(d, "q.json", r#"{"support": [[0, 0], [1, 1]], "weights": [0.2, 0.8]}"#);
    for m in ["tv", "js", "hellinger", "bhattacharyya", "bc", "energy"] {
        let o = frechet(&["div", m, &p, &q]);
        assert_eq!(o.status.code(), Some(0), "{m}: {}", stderr(&o));
    }
    let o = frechet(&["div", "mmd", "--sigma", "1", &p, &q]);
    assert_eq!(o.status.code(), Some(0));
    let o = frechet(&["div", "sinkhorn", "--eps", "0.1", &p, &p]);
    assert_eq!(stdout(&o), "0.000000000000\n");
    // half of |0.5 - 0.2| + 0.5 + 0.8
    let o = frechet(&["div", "tv", &p, &q]);
    assert_eq!(stdout(&o), "0.800000000000\n");
}

#[test]
fn freespace_decision_and_svg() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "p.csv", "0,0\n1,0\n");
    let q = write(dir.path(), "q.csv", "0,1\n1,1\n");
    assert_eq!(stdout(&frechet(&["freespace", &p, &q, "--eps", "1"])), "true\n");
    assert_eq!(stdout(&frechet(&["freespace", &p, &q, "--eps", "0.5"])), "false\n");
    let o = frechet(&["freespace", &p, &q, "--eps", "1", "--svg"]);
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg") && svg.contains("corner end reachable"));
    let file = dir.path().join("fs.svg");
    let o = frechet(&["freespace", &p, &q, "--eps", "0.5", "--svg", file.to_str().unwrap()]);
    assert_eq!(stdout(&o), "false\n");
    assert!(fs::read_to_string(file).unwrap().contains("corner end unreachable"));
}

#[test]
fn matrix_is_symmetric_deterministic_and_thread_independent() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().join("curves");
    fs::create_dir(&d).unwrap();
    write(&d, "a.csv", "0,0\n1,0\n2,1\n");
    write(&d, "b.csv", "0,1\n2,1\n");
    write(&d, "c.csv", "0,0\n1,2\n2,0\n3,0\n");
    let dir_s = d.to_str().unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_frechet"))
            .args(["matrix", "--metric", "frechet", dir_s])
            .env("FRECHET_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
    assert_eq!(one.stdout, four.stdout);
    let text = stdout(&one);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,a.csv,b.csv,c.csv"));
    let m: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').skip(1).map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(m.len(), 3);
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row[i], 0.0);
        for (j, &x) in row.iter().enumerate() {
            assert!((x - m[j][i]).abs() <= 3e-9 * x.max(1.0));
        }
    }
    assert_eq!(run("0").status.code(), Some(2));
}
