use std::path::Path;
use std::process::{Command, Output};

fn netstrings(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netstrings"))
        .args(args)
        .current_dir(dir)
        .env_remove("NETSTRINGS_MAX_Q")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn lattice_has_twenty_edges() {
    let dir = tempfile::tempdir().unwrap();
    let out = netstrings(
        dir.path(),
        &[
            "generate", "--model", "nw", "--n", "10", "--kbase", "2", "--alpha", "0", "--seed",
            "1", "-o", "g.el",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("g.el")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 20);
    assert!(text.contains("# seed = 1"));
}

#[test]
fn bad_exponent_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = netstrings(dir.path(), &["generate", "--model", "sf", "--gamma", "0.5"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("gamma"));
    assert!(out.stdout.is_empty());
}

#[test]
fn triangle_metrics() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k3.el"), "0 1\n1 2\n2 0\n").unwrap();
    let out = netstrings(dir.path(), &["metrics", "-i", "k3.el", "--qmax", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = csv_rows(&stdout(&out));
    let header = &rows[0];
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let q3 = rows.iter().find(|r| r[0] == "3").unwrap();
    assert_eq!(q3[col("C_q")], "1");
    assert_eq!(q3[col("Delta_q")], "1");
    assert_eq!(rows.len(), 3);
}

#[test]
fn path_metrics_flag_vanishing_denominators() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p.el"), "0 1\n1 2\n2 3\n").unwrap();
    let out = netstrings(dir.path(), &["metrics", "-i", "p.el", "--qmax", "5"]);
    let rows = csv_rows(&stdout(&out));
    let col = |name: &str| rows[0].iter().position(|h| h == name).unwrap();
    for r in &rows[2..] {
        assert_eq!(r[col("C_q")], "0");
    }
    let q5 = rows.iter().find(|r| r[0] == "5").unwrap();
    assert_eq!(q5[col("C_q_degenerate")], "true");
    let q3 = rows.iter().find(|r| r[0] == "3").unwrap();
    assert_eq!(q3[col("C_q_degenerate")], "false");
}

#[test]
fn malformed_edge_list_cites_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.el"), "a b\n").unwrap();
    let out = netstrings(dir.path(), &["metrics", "-i", "bad.el"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn fit_examples() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("line.csv"), "x,y\n0,1\n1,3\n2,5\n3,7\n").unwrap();
    let out = netstrings(dir.path(), &["fit", "-i", "line.csv", "--model", "linear"]);
    let text = stdout(&out);
    assert!(
        text.contains("A = 2\n") && text.contains("B = 1\n") && text.contains("r_squared = 1\n"),
        "{text}"
    );

    std::fs::write(dir.path().join("neg.csv"), "x,y\n1,1\n-2,3\n4,5\n").unwrap();
    let out = netstrings(
        dir.path(),
        &["fit", "-i", "neg.csv", "--model", "loglinear"],
    );
    assert!(!out.status.success());
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    std::fs::write(dir.path().join("two.csv"), "x,y\n1,1\n2,2\n").unwrap();
    assert!(!netstrings(dir.path(), &["fit", "-i", "two.csv"])
        .status
        .success());

    std::fs::write(dir.path().join("nox.csv"), "a,y\n1,1\n2,2\n3,3\n").unwrap();
    let out = netstrings(dir.path(), &["fit", "-i", "nox.csv"]);
    assert!(stderr(&out).contains("missing column"));
}

#[test]
fn zero_trials_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = netstrings(dir.path(), &["sweep", "--trials", "0", "-o", "out"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("trials"));
}

#[test]
fn sweep_outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.conf"),
        "command = sweep\nmodel = nw\nn = 60\ntrials = 3\nqmax = 5\nalpha-grid = 0.2, 0.6, 1.0\nplot = true\n",
    )
    .unwrap();
    let out = netstrings(
        dir.path(),
        &["--config", "run.conf", "--trials", "4", "-o", "out"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let out_dir = dir.path().join("out");
    for name in [
        "trials.csv",
        "aggregate.csv",
        "failures.csv",
        "fits.txt",
        "milgram.svg",
        "xy.svg",
    ] {
        assert!(out_dir.join(name).exists(), "{name}");
    }
    let aggregate = std::fs::read_to_string(out_dir.join("aggregate.csv")).unwrap();
    let rows = csv_rows(&aggregate);
    assert!(rows[1..].iter().all(|r| r[3] == "4"), "flag overrides file");
    assert_eq!(rows.len(), 1 + 3 * 4);

    let fits = std::fs::read_to_string(out_dir.join("fits.txt")).unwrap();
    assert!(fits.contains("[loglinear q=3]") && fits.contains("[loglinear pooled]"));

    let trials = std::fs::read_to_string(out_dir.join("trials.csv")).unwrap();
    std::fs::write(out_dir.join("q3.csv"), {
        let mut lines = trials.lines();
        let mut kept = vec![lines.next().unwrap().to_owned()];
        kept.extend(
            lines
                .filter(|l| l.split(',').nth(3) == Some("3"))
                .map(str::to_owned),
        );
        kept.join("\n") + "\n"
    })
    .unwrap();
    let fit = netstrings(&out_dir, &["fit", "-i", "q3.csv", "--model", "loglinear"]);
    assert!(fit.status.success(), "{}", stderr(&fit));
    assert!(stdout(&fit).contains("n_points = 12"));

    let svg = std::fs::read_to_string(out_dir.join("milgram.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"class="threshold""#));
    let first = &rows[1];
    let marker = format!(r#"data-x="{}" data-y="{}""#, first[2], first[6]);
    assert!(svg.contains(&marker), "{marker}");

    let plot = netstrings(
        &out_dir,
        &[
            "plot",
            "-i",
            "aggregate.csv",
            "--figure",
            "xy",
            "-o",
            "again.svg",
        ],
    );
    assert!(plot.status.success());
    let again = std::fs::read_to_string(out_dir.join("again.svg")).unwrap();
    assert_eq!(
        again,
        std::fs::read_to_string(out_dir.join("xy.svg")).unwrap()
    );
}

#[test]
fn q_ceiling_is_bounded() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k4.el"), "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let out = netstrings(dir.path(), &["metrics", "-i", "k4.el", "--qmax", "9"]);
    assert!(!out.status.success());
    let raised = Command::new(env!("CARGO_BIN_EXE_netstrings"))
        .args(["metrics", "-i", "k4.el", "--qmax", "9"])
        .current_dir(dir.path())
        .env("NETSTRINGS_MAX_Q", "10")
        .output()
        .unwrap();
    assert!(raised.status.success(), "{}", stderr(&raised));
    let capped = Command::new(env!("CARGO_BIN_EXE_netstrings"))
        .args(["metrics", "-i", "k4.el"])
        .current_dir(dir.path())
        .env("NETSTRINGS_MAX_Q", "11")
        .output()
        .unwrap();
    assert!(!capped.status.success());
}
