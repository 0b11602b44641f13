#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Output;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

/// Run the binary from the corpus directory.
pub fn bcm(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_bcm"))
        .args(args)
        .current_dir(corpus_dir())
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

/// Every command of the corpus with its expected exit code.
pub const CORPUS: &[(&[&str], i32)] = &[
    (
        &[
            "prop",
            "evict",
            "--atoms",
            "p,q",
            "--base",
            "prop_base.txt",
            "--models",
            "{tt}",
        ],
        0,
    ),
    (
        &[
            "prop",
            "receive",
            "--base",
            "prop_base.txt",
            "--models",
            "mod-of: !p & !q",
        ],
        0,
    ),
    (
        &["prop", "evict", "--base", "prop_base.txt", "--models", "{tt}", "--json"],
        0,
    ),
    (&["prop", "postulates", "--atoms", "p,q"], 0),
    (&["prop", "compat"], 0),
    (&["prop", "audit"], 0),
    (&["prop", "catalog", "--atoms", "p"], 0),
    (&["prop-t", "compat"], 0),
    (&["prop-t", "evict", "--models", "all"], 2),
    (&["prop-t", "evict", "--models", "all", "--on-incompatible", "keep"], 0),
    (&["prop-t", "postulates", "--json"], 0),
    (&["prop-p", "probe"], 0),
    (&["prop-p", "receive", "--models", "{tf,ft}", "--select", "lexmax"], 0),
    (&["horn", "compat", "--atoms", "p,q"], 0),
    (&["horn", "lattice", "--atoms", "p,q", "--highlight", "{hb,hc}"], 0),
    (&["horn", "lattice", "--atoms", "p,q", "--json"], 0),
    (&["horn", "evict", "--base", "horn_base.txt", "--models", "{ha,hd}"], 0),
    (&["horn", "evict", "--models", "{ha}", "--select", "rank:{tt,ft}"], 0),
    (&["horn", "audit", "--atoms", "p,q"], 0),
    (&["horn", "catalog", "--atoms", "p,q"], 0),
    (&["horn", "postulates", "--atoms", "p,q"], 0),
    (&["k3", "compat", "--atoms", "p"], 0),
    (&["k3", "postulates", "--atoms", "p"], 0),
    (
        &[
            "k3",
            "evict",
            "--atoms",
            "p",
            "--base",
            "k3_base.txt",
            "--models",
            "{t}",
        ],
        0,
    ),
    (&["p3", "compat"], 0),
    (&["p3", "catalog", "--atoms", "p"], 0),
    (&["goedel", "compat", "--atoms", "a"], 0),
    (&["goedel", "catalog", "--atoms", "a", "--theta", "1"], 0),
    (&["goedel", "postulates", "--atoms", "a", "--theta", "0.3"], 0),
    (
        &[
            "goedel",
            "receive",
            "--atoms",
            "a,b",
            "--base",
            "goedel_base.txt",
            "--models",
            "all",
        ],
        0,
    ),
    (&["goedel", "compat", "--atoms", "a", "--excluded-middle"], 0),
    (&["ltlx", "compat"], 0),
    (
        &["ltlx", "evict", "--base", "ltl_base.txt", "--models-file", "kripke.txt"],
        2,
    ),
    (
        &[
            "ltlx",
            "receive",
            "--base",
            "ltl_base.txt",
            "--models-file",
            "kripke.txt",
        ],
        0,
    ),
    (
        &[
            "ltlx",
            "receive",
            "--base",
            "ltl_base.txt",
            "--models",
            "mod-of: p, X^2 q",
        ],
        0,
    ),
    (&["qint", "compat"], 0),
    (&["qint", "evict", "--base", "qint_base.txt", "--models", "(1,3)"], 0),
    (&["qint", "evict", "-f", "[0,1]", "--models", "{1}"], 2),
    (&["qint", "receive", "-f", "[1,1]", "--models", "(0,sqrt(2))"], 2),
    (&["qint", "receive", "-f", "[0,1]", "--models", "[3,4]"], 0),
    (&["prop", "evict", "--base", "bad_base.txt", "--models", "{tt}"], 3),
    (&["horn", "catalog", "--atoms", "p,q,r,s,t"], 4),
];
