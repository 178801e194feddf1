use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_citegraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["study", "--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["pagerank"]).status.code(), Some(1));
    let bad_value = run(&[
        "pagerank",
        "--edges",
        &fixture("cycle5_edges.csv"),
        "--damping",
        "high",
    ]);
    assert_eq!(bad_value.status.code(), Some(1));
}

#[test]
fn data_errors_exit_two() {
    let missing = run(&["pagerank", "--edges", "/nonexistent/edges.csv"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).starts_with("error:"));

    let bad_damping = run(&[
        "pagerank",
        "--edges",
        &fixture("cycle5_edges.csv"),
        "--damping",
        "1.5",
    ]);
    assert_eq!(bad_damping.status.code(), Some(2));

    // JA and JS give no references in the window, so influence is undefined.
    let no_refs = run(&[
        "influence",
        "--edges",
        &fixture("if_edges.csv"),
        "--docs",
        &fixture("if_docs.csv"),
        "--cite-year",
        "1970",
    ]);
    assert_eq!(no_refs.status.code(), Some(2));
    assert!(stdout(&no_refs).is_empty());
}

#[test]
fn non_convergence_exits_three_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("edges.csv");
    std::fs::write(&edges, "citing_id,cited_id\na,b\nb,c\nc,a\na,c\n").unwrap();
    let o = run(&[
        "pagerank",
        "--edges",
        edges.to_str().unwrap(),
        "--max-iter",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("converged: no"), "{out}");
    assert_eq!(
        out.lines()
            .filter(|l| l.starts_with(['1', '2', '3']))
            .count(),
        3
    );
    assert!(stderr(&o).contains("convergence"));
}

#[test]
fn cycle_pagerank_is_uniform() {
    let o = run(&[
        "pagerank",
        "--edges",
        &fixture("cycle5_edges.csv"),
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("Rank,Id,Score"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(
        rows,
        [
            "1,c1,0.200000000000",
            "2,c2,0.200000000000",
            "3,c3,0.200000000000",
            "4,c4,0.200000000000",
            "5,c5,0.200000000000"
        ]
    );
}

#[test]
fn symmetric_pair_has_unit_weights() {
    let o = run(&[
        "influence",
        "--matrix",
        &fixture("symmetric_matrix.csv"),
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("1,JA,1.000000000000,10,5,0.500000000000,5.000000000000"),
        "{out}"
    );
    assert!(
        out.contains("2,JB,1.000000000000,10,5,0.500000000000,5.000000000000"),
        "{out}"
    );
}

#[test]
fn lenient_skips_bad_rows_and_strict_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("edges.csv");
    std::fs::write(&edges, "citing_id,cited_id\na,b\nb\nb,c\n,c\nc,a\n").unwrap();
    let e = edges.to_str().unwrap();

    let lenient = run(&["pagerank", "--edges", e]);
    assert_eq!(lenient.status.code(), Some(0));
    let warnings = stderr(&lenient);
    assert_eq!(warnings.lines().count(), 2, "{warnings}");
    assert!(
        warnings.contains("edges.csv:3:") && warnings.contains("edges.csv:5:"),
        "{warnings}"
    );

    let strict = run(&["pagerank", "--edges", e, "--strict"]);
    assert_eq!(strict.status.code(), Some(2));
    assert!(stderr(&strict).contains(":3:"));
}

#[test]
fn self_loops_need_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("edges.csv");
    std::fs::write(&edges, "citing_id,cited_id\na,a\na,b\nb,a\n").unwrap();
    let e = edges.to_str().unwrap();
    assert_eq!(
        run(&["pagerank", "--edges", e, "--strict"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["pagerank", "--edges", e, "--strict", "--allow-self-loops"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn out_dir_writes_each_format() {
    let dir = tempfile::tempdir().unwrap();
    let out: PathBuf = dir.path().join("reports");
    let o = run(&[
        "bradford",
        "--counts",
        &fixture("bradford_counts.csv"),
        "--yields",
        "249,499,404",
        "--out-dir",
        out.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(out.join("bradford.csv")).unwrap();
    assert!(csv.starts_with("Zone,Journals,% Journals,Items,% Items,First,Last\n"));
    assert!(csv.contains("\n1,9,2.8%,249,21.6%,G001,G009\n"), "{csv}");
    let text = std::fs::read_to_string(out.join("bradford.txt")).unwrap();
    assert!(text.contains("estimated multiplier"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("bradford.json")).unwrap()).unwrap();
    assert_eq!(json["rows"][2][1], "258");
}

#[test]
fn hand_tallied_impact_factor() {
    let args = |items: &'static str| {
        let mut v = vec![
            "impact-factor".to_string(),
            "--edges".into(),
            fixture("if_edges.csv"),
            "--docs".into(),
            fixture("if_docs.csv"),
            "--cite-year".into(),
            "1970".into(),
            "--format".into(),
            "csv".into(),
        ];
        if !items.is_empty() {
            v.extend(["--items".into(), items.into()]);
        }
        v
    };
    let o = run(&args("").iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(
        stdout(&o),
        "Rank,Journal,Cites to Window,Items in Window,Impact Factor\n1,JA,5,4,1.250000\n2,JC,0,1,0.000000\n"
    );
    let o = run(&args("article,review")
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>());
    assert!(stdout(&o).contains("1,JA,5,3,1.666667\n"));

    let single = run(&[
        "impact-factor",
        "--edges",
        &fixture("if_edges.csv"),
        "--docs",
        &fixture("if_docs.csv"),
        "--cite-year",
        "1970",
        "--journal",
        "JS",
    ]);
    assert_eq!(single.status.code(), Some(2));

    let tc = run(&[
        "total-cites",
        "--edges",
        &fixture("if_edges.csv"),
        "--docs",
        &fixture("if_docs.csv"),
        "--cite-year",
        "1970",
        "--journal",
        "JS",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&tc), "Rank,Journal,Total Cites\n1,JS,4\n");
}

#[test]
fn stability_and_share_curve() {
    let o = run(&[
        "stability",
        "--a",
        &fixture("counts_a.csv"),
        "--b",
        &fixture("counts_b.csv"),
        "--top",
        "3",
    ]);
    assert!(stdout(&o).contains("2 of 3 on both lists (66.7%)"));
    let o = run(&[
        "share-curve",
        "--counts",
        &fixture("counts_a.csv"),
        "--share",
        "0.5",
        "--threshold",
        "60",
    ]);
    let out = stdout(&o);
    assert!(out.contains("entries for share 0.5: 3"), "{out}");
    assert!(out.contains("entries with count >= 60: 4"), "{out}");
}

#[test]
fn correlate_methods() {
    let p = run(&[
        "correlate",
        "--pairs",
        &fixture("pairs.csv"),
        "--format",
        "csv",
    ]);
    // Ranks of y are 2,1,4,3,5,6 against 1..6: 1 - 6*4/(6*35).
    assert_eq!(
        stdout(&p),
        "Method,Pairs,Coefficient\nspearman,6,0.885714285714\n"
    );
    let p = run(&[
        "correlate",
        "--pairs",
        &fixture("pairs.csv"),
        "--method",
        "pearson",
        "--json",
    ]);
    let json: serde_json::Value = serde_json::from_slice(&p.stdout).unwrap();
    assert_eq!(json["rows"][0][0], "pearson");
}

#[test]
fn h_index_from_docs_and_from_edges() {
    let docs = fixture("laureates/docs.csv");
    let o = run(&[
        "h-index",
        "--docs",
        &docs,
        "--author",
        " e.  NEGISHI",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "Subject,h-index,Maximum Cites,Cites Range,h-core Total Cites,Publications\n e.  NEGISHI,49,797,748,6692,55\n"
    );

    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("docs.csv");
    let e = dir.path().join("edges.csv");
    std::fs::write(
        &d,
        "id,venue,year,doc_type,cites,authors\nx1,J,2000,article,0,A. Writer\nx2,J,2001,article,0,A. Writer;B. Other\ny1,J,2002,article,0,B. Other\ny2,J,2003,article,0,C. Third\n",
    )
    .unwrap();
    std::fs::write(
        &e,
        "citing_id,cited_id\ny1,x1\ny2,x1\ny2,x2\nx2,x1\ny1,x2\n",
    )
    .unwrap();
    let o = run(&[
        "h-index",
        "--docs",
        d.to_str().unwrap(),
        "--author",
        "A. Writer",
        "--edges",
        e.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o).lines().nth(1), Some("A. Writer,2,3,1,5,2"));
}
