mod common;

use common::{body, completion, data, mcda, mcda_env, serve, stderr, stdout};

fn p(path: &std::path::Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn rank_topsis_golden() {
    let cs1 = data("cs1.csv");
    let out = mcda(&["rank", "--problem", p(&cs1), "--method", "topsis"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("# mcda "));
    assert!(text.contains("# seed: 42\n"));
    assert!(text.contains("# param: method = TOPSIS\n"));
    let ranks: Vec<String> = body(&text)[1..].iter().map(|l| l.rsplit(',').next().unwrap().to_string()).collect();
    assert_eq!(ranks, ["5", "6", "1", "4", "2", "3", "7"]);
}

#[test]
fn rank_text_format() {
    let out = mcda(&["rank", "--problem", p(&data("cs1.csv")), "--method", "saw", "--format", "text"]);
    assert!(out.status.success());
    let lines = body(&stdout(&out));
    assert!(lines[0].starts_with("alternative"));
    assert!(lines[3].starts_with("a3 ") && lines[3].ends_with(" 1"), "{lines:?}");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(mcda(&[]).status.code(), Some(1));
    let out = mcda(&["rank", "--method", "topsis"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--problem"));
    let cs1 = data("cs1.csv");
    assert_eq!(mcda(&["rank", "--problem", p(&cs1), "--method", "nope"]).status.code(), Some(1));
    assert_eq!(mcda(&["rank", "--problem", p(&cs1), "--method", "entropy"]).status.code(), Some(1));
    assert_eq!(mcda(&["aggregate", "--rule", "plurality", p(&data("table4_published.csv"))]).status.code(), Some(1));
    assert_eq!(mcda(&["rank", "--problem", p(&cs1), "--method", "topsis", "--format", "xml"]).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(mcda(&["--help"]).status.code(), Some(0));
    let v = mcda(&["--version"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn data_and_method_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    assert_eq!(mcda(&["rank", "--problem", p(&missing), "--method", "topsis"]).status.code(), Some(2));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "c1,c2\nmax,sideways\na1,1,2\n").unwrap();
    let out = mcda(&["rank", "--problem", p(&bad), "--method", "topsis"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sideways"));

    // no weight row: scoring needs weights
    let unweighted = dir.path().join("unweighted.csv");
    std::fs::write(&unweighted, "c1,c2\nmax,min\na1,1,2\na2,2,1\n").unwrap();
    assert_eq!(mcda(&["rank", "--problem", p(&unweighted), "--method", "topsis"]).status.code(), Some(3));

    // BWM without comparisons
    assert_eq!(mcda(&["weights", "--problem", p(&data("cs2.csv")), "--method", "bwm"]).status.code(), Some(3));
}

#[test]
fn ec_promethee_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("ec.spec");
    std::fs::write(
        &config,
        "ec.custom_set = 0.5\nec.iterations = 2000\npromethee.q = 5, 10, 1.7, 0.02, 0.01, 0.01, 0.01\n\
         promethee.p = 9, 20, 2.5, 0.04, 0.03, 0.03, 0.03\n",
    )
    .unwrap();
    let cs1 = data("cs1.csv");
    let run = |name: &str, seed: &str| {
        let out = dir.path().join(name);
        let o = mcda(&[
            "rank", "--problem", p(&cs1), "--method", "ec_promethee", "--config", p(&config), "--seed", seed, "--out", p(&out),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        std::fs::read(out).unwrap()
    };
    let a = run("a.csv", "42");
    let b = run("b.csv", "42");
    let c = run("c.csv", "7");
    let body_of = |bytes: &[u8]| body(std::str::from_utf8(bytes).unwrap());
    assert_eq!(body_of(&a), body_of(&b));
    assert_ne!(body_of(&a), body_of(&c));
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("# seed: 42\n"));
    assert!(text.contains("freq_7"));
}

#[test]
fn compare_aggregate_correlate_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table4_out.csv");
    let external = format!("{},{}", p(&data("rao.csv")), p(&data("manshadi.csv")));
    let o = mcda(&[
        "compare", "--problem", p(&data("cs1.csv")), "--spec", p(&data("table4.spec")), "--external", &external, "--out",
        p(&table),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t = mcda::analysis::read_table(&table).unwrap();
    assert_eq!(t.rows.len(), 31);
    assert_eq!(t.external_rows.len(), 2);
    assert!(t.diagnostics.is_empty());

    for rule in ["mode", "borda", "copeland"] {
        let o = mcda(&["aggregate", "--rule", rule, p(&table)]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("# consensus: a3, a5, a6, a4, a1, a2, a7\n"), "{rule}: {}", stdout(&o));
    }

    let corr = dir.path().join("kendall.csv");
    let o = mcda(&["correlate", "--coefficient", "kendall", p(&table), "--out", p(&corr)]);
    assert!(o.status.success());
    let m = mcda::analysis::parse_correlation_csv(&std::fs::read_to_string(&corr).unwrap()).unwrap();
    assert_eq!(m.labels.len(), 33);
    let v = m.get("Rao (2006)", "Manshadi et al. (2007)").unwrap();
    assert!((v - 17.0 / 21.0).abs() < 1e-12);

    let stem = dir.path().join("fig");
    let o = mcda(&["heatmap", p(&corr), "--out", p(&stem)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = std::fs::read_to_string(stem.with_extension("svg")).unwrap();
    assert!(svg.contains("<svg") && svg.contains("Rao (2006)"));
    assert!(std::fs::read_to_string(stem.with_extension("csv")).unwrap().contains("# coefficient=kendall"));
}

#[test]
fn compare_records_failed_methods() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("s.spec");
    // the published bounds exclude a3 without the `extend` policy
    std::fs::write(
        &spec,
        "methods = topsis, spotis\nspotis.smin = 70, 90, 50, 2.7, 9.0, 0.01, 0.05\n\
         spotis.smax = 780, 1200, 220, 9.7, 24.0, 0.41, 0.25\n",
    )
    .unwrap();
    let o = mcda(&["compare", "--problem", p(&data("cs1.csv")), "--spec", p(&spec)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("# failed SPOTIS: "), "{text}");
    assert!(stderr(&o).contains("SPOTIS failed"));
    assert_eq!(body(&text).len(), 2);
}

#[test]
fn weights_all_reproduces_the_computed_rows() {
    let o = mcda(&[
        "weights", "--problem", p(&data("cs2.csv")), "--all", "--mic", "2,4,5,3,1,6", "--lic", "6,1,3,5,4,2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t = mcda::analysis::parse_table(&stdout(&o)).unwrap();
    assert_eq!(t.labels(), ["BWM", "CILOS", "CRITIC", "Entropy", "IDOCRIW", "MEREC"]);
    let published = mcda::datasets::published_weights();
    for label in ["CRITIC", "Entropy", "IDOCRIW", "MEREC"] {
        let ours = &t.row(label).unwrap().values;
        let theirs = &published.row(label).unwrap().values;
        for (a, b) in ours.iter().zip(theirs) {
            assert!((a - b).abs() <= 0.01, "{label}: {ours:?} vs {theirs:?}");
        }
    }
}

#[test]
fn correlate_empty_table_fails() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "# kind=ranks\nlabel,a1,a2,a3\n").unwrap();
    let o = mcda(&["correlate", "--coefficient", "kendall", p(&empty)]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("fewer than 2 rows"));
}

#[test]
fn outputs_are_replaced_whole() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    std::fs::write(&out, "stale content that is much longer than the real output would ever be ".repeat(200)).unwrap();
    let o = mcda(&["rank", "--problem", p(&data("cs1.csv")), "--method", "saw", "--out", p(&out)]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(!text.contains("stale"));
    // no temp files left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

fn case_study_tables(dir: &std::path::Path) -> (std::path::PathBuf, std::path::PathBuf) {
    let ranks = dir.join("ranks.csv");
    let external = format!("{},{}", p(&data("rao.csv")), p(&data("manshadi.csv")));
    let o = mcda(&[
        "compare", "--problem", p(&data("cs1.csv")), "--spec", p(&data("table4.spec")), "--external", &external, "--out",
        p(&ranks),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let weights = dir.join("weights.csv");
    let external = format!("{},{}", p(&data("bottero.csv")), p(&data("rodrigues.csv")));
    let o = mcda(&[
        "compare", "--problem", p(&data("cs2.csv")), "--spec", p(&data("table7.spec")), "--external", &external, "--out",
        p(&weights),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    (ranks, weights)
}

#[test]
fn prompts_dump_writes_all_templates() {
    let dir = tempfile::tempdir().unwrap();
    let (ranks, weights) = case_study_tables(dir.path());
    let bundle = dir.path().join("prompts");
    let o = mcda(&["prompts", "--ranks", p(&ranks), "--weights", p(&weights), "--dump", p(&bundle)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let files: Vec<_> = std::fs::read_dir(&bundle).unwrap().collect();
    assert_eq!(files.len(), 24);
    for t in mcda::llm::TEMPLATES.iter() {
        let text = std::fs::read_to_string(bundle.join(format!("{}.txt", t.id))).unwrap();
        assert_eq!(text.lines().last().unwrap(), t.question);
    }

    // only rank contexts: 11 templates
    let o = mcda(&["prompts", "--ranks", p(&ranks), "--dump", p(&dir.path().join("r"))]);
    assert_eq!(stdout(&o).lines().count(), 11);
    // nothing to render
    assert_eq!(mcda(&["prompts"]).status.code(), Some(1));
}

#[test]
fn chat_against_mock_endpoint() {
    let dir = tempfile::tempdir().unwrap();
    let (ranks, _) = case_study_tables(dir.path());
    let server = serve(vec![(200, completion("OK"))]);
    let transcripts = dir.path().join("transcripts");
    let o = mcda_env(
        &[
            "chat", "--ranks", p(&ranks), "--template", "rank_compare.q1", "--endpoint", &server.url, "--model", "test-model",
            "--transcripts-dir", p(&transcripts), "--api-key-env", "MCDA_TEST_CLI_KEY",
        ],
        &[("MCDA_TEST_CLI_KEY", Some("sk-secret-value"))],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "OK\n");
    let files: Vec<_> = std::fs::read_dir(&transcripts).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let text = std::fs::read_to_string(&files[0]).unwrap();
    assert!(!text.contains("sk-secret-value"));
    let t: mcda::llm::Transcript = serde_json::from_str(&text).unwrap();
    assert_eq!(t.response, "OK");
    assert!(t.prompt.ends_with("Which methods are more similar and which ones are more dissimilar?\n"));
    let req = &server.requests.lock().unwrap()[0];
    assert!(req.head.to_ascii_lowercase().contains("authorization: bearer sk-secret-value"));
}

#[test]
fn chat_missing_key_exits_before_network() {
    let dir = tempfile::tempdir().unwrap();
    let prompt = dir.path().join("p.txt");
    std::fs::write(&prompt, "hello").unwrap();
    let server = serve(vec![(200, completion("OK"))]);
    let o = mcda_env(
        &[
            "chat", "--prompt-file", p(&prompt), "--endpoint", &server.url, "--model", "m", "--api-key-env",
            "MCDA_TEST_UNSET_KEY",
        ],
        &[("MCDA_TEST_UNSET_KEY", None)],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("MCDA_TEST_UNSET_KEY"));
    assert!(server.requests.lock().unwrap().is_empty());
}

#[test]
fn chat_server_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let prompt = dir.path().join("p.txt");
    std::fs::write(&prompt, "hello").unwrap();
    let server = serve(vec![(500, "{\"error\":\"boom\"}".into())]);
    let o = mcda_env(
        &["chat", "--prompt-file", p(&prompt), "--endpoint", &server.url, "--model", "m", "--api-key-env", "MCDA_TEST_K"],
        &[("MCDA_TEST_K", Some("k"))],
    );
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("HTTP 500"), "{}", stderr(&o));
    assert_eq!(server.requests.lock().unwrap().len(), 3);
}
