mod common;

use common::{bcm, stderr, stdout, CORPUS};

#[test]
fn corpus_exit_codes() {
    for (args, code) in CORPUS {
        let o = bcm(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}\n{}", stderr(&o));
    }
}

#[test]
fn evict_prints_base_set_and_count() {
    let o = bcm(&[
        "prop",
        "evict",
        "--atoms",
        "p,q",
        "--base",
        "prop_base.txt",
        "--models",
        "{tt}",
    ]);
    let text = stdout(&o);
    assert!(text.contains("target: {tf,ft}"));
    assert!(text.contains("candidates: 1"));
    assert!(text.contains("chosen: {tf,ft}"));
    let base: Vec<&str> = text.lines().skip_while(|l| *l != "result base:").skip(1).collect();
    assert_eq!(base.len(), 1);
}

#[test]
fn compat_lines() {
    let line = |args: &[&str]| stdout(&bcm(args)).trim().to_string();
    assert!(
        line(&["p3", "compat"]).starts_with("eviction: no (all-u model uu in every representable set), reception: yes")
    );
    assert!(line(&["ltlx", "compat"]).starts_with("eviction: no (universal model witness"));
    assert!(line(&["ltlx", "compat"]).ends_with("reception: yes (rcp_x construction)"));
    let horn = line(&["horn", "compat", "--atoms", "p,q"]);
    assert!(horn.starts_with("eviction: yes") && horn.contains("reception: yes"));
    let q = line(&["qint", "compat"]);
    assert!(q.starts_with("eviction: no") && q.contains("reception: no"));
}

#[test]
fn postulate_summaries() {
    assert!(stdout(&bcm(&["prop", "postulates", "--atoms", "p,q"])).ends_with("10/10 postulates pass\n"));
    assert!(stdout(&bcm(&["k3", "postulates", "--atoms", "p"])).ends_with("10/10 postulates pass\n"));
}

#[test]
fn lattice_dot_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.dot");
    let o = bcm(&[
        "horn",
        "lattice",
        "--atoms",
        "p,q",
        "--highlight",
        "{hb,hc}",
        "--dot",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 16);
    assert_eq!(dot.matches("shape=box").count(), 14);
    assert_eq!(dot.matches("penwidth=3").count(), 2);
}

#[test]
fn parse_errors_report_position() {
    let o = bcm(&["prop", "evict", "--base", "bad_base.txt", "--models", "{tt}"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 1, column 7"));
    let o = bcm(&["prop", "evict", "-f", "p", "--models", "{tt,zz}"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("column 5"));
    let o = bcm(&["k3", "evict", "-f", "p & T", "--models", "{tt}"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn incompatible_prints_witness() {
    let o = bcm(&["qint", "evict", "-f", "[0,1]", "--models", "{1}"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("witness: [0,0] < [0,1/2]"));
    let o = bcm(&["ltlx", "evict", "-f", "p", "--models", "mod-of: q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("witness: state u"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["prop", "compat", "--theta", "1/2"][..],
        &["goedel", "compat", "--theta", "2"],
        &["ltlx", "lattice"],
        &["qint", "postulates"],
        &["prop", "evict"],
        &["nosuch", "compat"],
        &["prop", "evict", "--models", "{tt}", "--select", "best"],
    ] {
        assert_eq!(bcm(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn json_lines_parse() {
    for args in [
        &["prop", "evict", "--base", "prop_base.txt", "--models", "{tt}", "--json"][..],
        &["horn", "catalog", "--format", "json"],
        &["prop-t", "postulates", "--json"],
        &["qint", "compat", "--json"],
        &["horn", "audit", "--json"],
    ] {
        let text = stdout(&bcm(args));
        assert!(!text.is_empty());
        for line in text.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v["type"].is_string(), "{line}");
        }
    }
    let catalog = stdout(&bcm(&["horn", "catalog", "--json"]));
    assert_eq!(catalog.lines().count(), 14);
}

#[test]
fn keep_mode_returns_the_base() {
    let o = bcm(&[
        "qint",
        "evict",
        "-f",
        "[0,1]",
        "--models",
        "{1}",
        "--on-incompatible",
        "keep",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("result base:\n[0,1]\n"));
}

#[test]
fn sequential_flag_gives_identical_output() {
    for args in [&["horn", "audit", "--atoms", "p,q,r"][..], &["prop", "postulates"]] {
        let mut seq = args.to_vec();
        seq.push("--sequential");
        assert_eq!(bcm(args).stdout, bcm(&seq).stdout);
    }
}
