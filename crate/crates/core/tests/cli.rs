mod common;

use std::process::Command;

use bs_decomp::cli::json::{parse_document, Payload};
use bs_decomp::greedy::normalize_terms;
use bs_decomp::{DegreeSequence, Rational, Term};
use common::*;

fn text_terms(out: &str) -> Vec<(Rational, Vec<i64>)> {
    out.lines()
        .filter_map(|l| {
            let (c, rest) = l.split_once(" * pi(")?;
            let seq = rest.split(')').next()?;
            let c = c.rsplit(' ').next()?;
            Some((
                bs_decomp::rational::parse(c)?,
                seq.split(',').map(|x| x.parse().unwrap()).collect(),
            ))
        })
        .collect()
}

fn sorted(mut v: Vec<(Rational, Vec<i64>)>) -> Vec<(Rational, Vec<i64>)> {
    v.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    v
}

#[test]
fn betti_table_layout() {
    let (code, out, _) = cli(&["betti", "2,2,2"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "   0 1 2 3\n0: 1 . . .\n1: . 3 . .\n2: . . 3 .\n3: . . . 1\n"
    );
    let (_, spaced, _) = cli(&["betti", "2 2 2"]);
    let (_, split, _) = cli(&["betti", "2", "2", "2"]);
    assert_eq!(spaced, out);
    assert_eq!(split, out);
}

#[test]
fn decompose_json_round_trip() {
    let (code, text, _) = cli(&["decompose", "2,3,4"]);
    assert_eq!(code, 0);
    let (code, json, _) = cli(&["decompose", "2,3,4", "--json"]);
    assert_eq!(code, 0);
    let doc = parse_document(&json).unwrap();
    assert_eq!(doc.command, vec!["decompose", "2,3,4", "--json"]);
    let Payload::Decomposition(dec) = &doc.payload else {
        panic!("wrong payload {:?}", doc.payload)
    };
    assert_eq!(dec.coords, "column-degree");
    assert_eq!(dec.elimination_size, 5);
    assert_eq!(dec.mass_elimination, None);
    let from_json: Vec<(Rational, Vec<i64>)> = dec
        .terms
        .iter()
        .map(|t| (t.coefficient.0.clone(), t.seq.clone()))
        .collect();
    assert_eq!(sorted(from_json), sorted(text_terms(&text)));
    // Reserializing gives the same document.
    assert_eq!(parse_document(&doc.to_json()).unwrap(), doc);
}

#[test]
fn betti_json_keeps_exact_values() {
    let (_, json, _) = cli(&["betti", "1,2", "--json"]);
    let doc = parse_document(&json).unwrap();
    let Payload::Diagram(d) = doc.payload else {
        panic!()
    };
    assert_eq!(d.to_diagram().unwrap(), koszul_oracle(&[1, 2]));
}

#[test]
fn elimination_table_flag() {
    let (code, out, _) = cli(&["decompose", "2,3,5,7", "--elim-table"]);
    assert_eq!(code, 0);
    assert!(out.contains("elimsize = 10"));
    assert!(out.contains("mass elimination at step 4 (2 positions)"));
    let (_, json, _) = cli(&["decompose", "2,3,5,7", "--json"]);
    let Payload::Decomposition(d) = parse_document(&json).unwrap().payload else {
        panic!()
    };
    assert_eq!(d.mass_elimination, Some((4, 2)));
    assert_eq!(d.elimination[3].positions.len(), 2);
}

#[test]
fn recursive_text_and_json_agree() {
    let (code, text, _) = cli(&["recursive", "2,3,4", "13"]);
    assert_eq!(code, 0);
    assert!(text.contains("stability_bound = 12"));
    let (_, json, _) = cli(&["recursive", "2,3,4", "13", "--json"]);
    let Payload::Recursive(r) = parse_document(&json).unwrap().payload else {
        panic!()
    };
    assert!(r.error_is_zero && r.above_bound && r.flags.agrees_with_standard);
    assert_eq!(r.phase_boundaries, (5, 7));
    assert_eq!(
        r.terms.iter().map(|t| t.phase).collect::<Vec<_>>(),
        [1, 1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 3]
    );
    let from_json: Vec<(Rational, Vec<i64>)> = r
        .terms
        .iter()
        .map(|t| (t.coefficient.0.clone(), t.seq.clone()))
        .collect();
    assert_eq!(sorted(from_json), sorted(text_terms(&text)));
    assert_eq!(
        r.remainders
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>(),
        ["-294", "36", "-378", "144", "204"]
    );
}

#[test]
fn bound_and_conjecture() {
    let (_, out, _) = cli(&["bound", "2,3,4"]);
    assert!(out.contains("ratios = (-7, 3, -21/2, 12, 34/7)"));
    let (_, json, _) = cli(&["bound", "2,3,4", "--json"]);
    let Payload::Bound(b) = parse_document(&json).unwrap().payload else {
        panic!()
    };
    assert_eq!(b.ratios[2].0, qf(-21, 2));
    let (code, out, _) = cli(&["conjecture", "2,3,4", "13"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("predicted 1584, actual 1584  ok").count(), 2);
}

#[test]
fn codim4_cross_check() {
    let (code, out, _) = cli(&["codim4", "2", "2", "5", "10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Case 2 (a1=a2<a3), requires a4 >= 9"));
    assert!(out.contains("600 * pi(0,2,4,9,19)"));
    assert!(out.contains("agrees with greedy: true"));
    let (_, json, _) = cli(&["codim4", "2,3,4,13", "--json"]);
    let Payload::Codim4(d) = parse_document(&json).unwrap().payload else {
        panic!()
    };
    assert!(d.certified && d.agrees_with_decompose && d.agrees_with_recursive == Some(true));
    let terms: Vec<Term> = d
        .terms
        .iter()
        .map(|t| Term {
            coefficient: t.coefficient.0.clone(),
            seq: DegreeSequence::new(t.seq.clone()).unwrap(),
        })
        .collect();
    assert_eq!(normalize_terms(terms.clone()), terms);
    let (_, below, _) = cli(&["codim4", "2,3,4,12"]);
    assert!(below.contains("certified: false"));
    assert_eq!(cli(&["codim4", "2,3,4"]).0, 2);
}

#[test]
fn errors_and_exit_codes() {
    let (code, _, err) = cli(&["recursive", "5", "7"]);
    assert_eq!(code, 1);
    assert!(err.contains("BaseTooShort"));
    let (code, _, err) = cli(&["bound", "2,3,5,7"]);
    assert_eq!(code, 1, "{err}");
    assert!(err.contains("MassEliminationUnsupported"), "{err}");
    assert_eq!(cli(&["betti", "a,b"]).0, 2);
    assert_eq!(cli(&["sweep", "--codim", "2"]).0, 2);
    assert_eq!(cli(&["recursive", "2,3,4"]).0, 2);
}

#[test]
fn sweep_writes_sorted_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.jsonl");
    let (code, out, _) = cli(&[
        "sweep",
        "--codim",
        "2",
        "--max-degree",
        "4",
        "--jobs",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("0 counterexamples"));
    let lines = std::fs::read_to_string(&path).unwrap();
    let docs: Vec<_> = lines.lines().map(|l| parse_document(l).unwrap()).collect();
    assert_eq!(docs.len(), 1);
    let Payload::SweepSummary(s) = &docs[0].payload else {
        panic!()
    };
    assert_eq!(s.bases, 10);
    assert_eq!(s.counterexamples, 0);

    let (_, one, _) = cli(&["sweep", "--codim", "3", "--max-degree", "4", "--jobs", "1"]);
    let (_, many, _) = cli(&["sweep", "--codim", "3", "--max-degree", "4", "--jobs", "4"]);
    let payload = |s: &str| parse_document(s.trim()).unwrap().payload;
    assert_eq!(payload(&one), payload(&many));
}

#[test]
fn binary_exit_codes_and_env() {
    let bin = env!("CARGO_BIN_EXE_bs-decomp");
    let out = Command::new(bin)
        .args(["decompose", "2,3,4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("42 * pi(0,2,5,9)\n"));
    let out = Command::new(bin)
        .args(["recursive", "2,3,4", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin)
        .args(["sweep", "--codim", "2", "--max-degree", "3"])
        .env("BS_DECOMP_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin)
        .args(["sweep", "--codim", "2", "--max-degree", "3"])
        .env("BS_DECOMP_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
