use hecke_core::combin::Partition;
use hecke_core::pipeline::{
    certify, emit_certificate, emit_sweep, emit_table, ktype_table, lines_cross_check, parse_table_json, sweep, Format,
    SweepConfig, Verdict,
};
use hecke_core::scalar::{int, rat};
use hecke_core::segments::{enumerate_by_starts, is_generic, Multisegment};
use hecke_core::HeckeError;
use std::time::Duration;

fn ms(s: &str) -> Multisegment {
    s.parse().unwrap()
}

fn label(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

#[test]
fn unlinked_points_in_rank_three() {
    let t = ktype_table(&ms("[0,0];[2,2];[4,4]"), &int(3)).unwrap();
    let got: Vec<(String, u64)> = t.entries.iter().map(|(l, m)| (l.to_string(), *m)).collect();
    let expected = [("[3]", 1), ("[2,1]", 2), ("[1,1,1]", 1)].map(|(l, m)| (l.to_string(), m));
    assert_eq!(got, expected);
    assert_eq!(t.quotient_dim, 6);
    assert_eq!(t.verdict(), Verdict::Pass);
    assert_eq!(t.multisegment.to_string(), "[4,4];[2,2];[0,0]");
}

#[test]
fn linked_pair_loses_the_sign_type() {
    let t = ktype_table(&ms("[0,0];[1,1]"), &int(3)).unwrap();
    assert!(!t.generic());
    assert_eq!(t.sign_multiplicity(), 0);
    assert_eq!(t.get(&label(&[1, 1])), 1);
    assert_eq!(t.quotient_dim, 1);

    let t = ktype_table(&ms("[0,1];[1,2]"), &int(3)).unwrap();
    assert!(!t.generic());
    assert_eq!(t.sign_multiplicity(), 0);
    assert_eq!(t.verdict(), Verdict::Pass);
}

#[test]
fn nested_segments_are_generic() {
    let c = certify(&ms("[0,2];[1,1]"), &int(3)).unwrap();
    assert!(c.generic);
    assert_eq!(c.sign_multiplicity, 1);
    assert_eq!(c.verdict, Verdict::Pass);
}

#[test]
fn json_round_trip_without_timing() {
    let t = ktype_table(&ms("[0,1];[3,3]"), &rat(5, 2)).unwrap();
    let json = emit_table(&t, Format::Json, None).unwrap();
    assert!(!json.contains("timing_ms"));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["q"], "5/2");
    assert_eq!(v["multisegment"], "[3,3];[0,1]");
    assert_eq!(v["multiplicities"]["[2,1]"], t.get(&label(&[2, 1])));
    assert_eq!(parse_table_json(&json).unwrap(), t);

    let timed = emit_table(&t, Format::Json, Some(Duration::from_millis(4))).unwrap();
    assert!(timed.contains("timing_ms"));
    assert_eq!(parse_table_json(&timed).unwrap(), t);
}

#[test]
fn tampered_json_is_rejected() {
    let t = ktype_table(&ms("[0,0];[1,1]"), &int(3)).unwrap();
    let json = emit_table(&t, Format::Json, None).unwrap().replace("\"generic\": false", "\"generic\": true");
    assert!(matches!(parse_table_json(&json), Err(HeckeError::Usage(_))));
}

#[test]
fn csv_rows_follow_descending_partitions() {
    let t = ktype_table(&ms("[0,0];[2,2];[4,4];[6,6]"), &int(3)).unwrap();
    let csv = emit_table(&t, Format::Csv, None).unwrap();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["partition", "dimension", "multiplicity"]);
    let rows: Vec<Vec<String>> = reader.records().map(|r| r.unwrap().iter().map(str::to_string).collect()).collect();
    let labels: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(labels, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
    assert_eq!(rows[1], ["[3,1]", "3", "3"]);
}

#[test]
fn text_table_has_one_row_per_partition() {
    let t = ktype_table(&ms("[0,0];[2,2];[4,4]"), &int(3)).unwrap();
    let text = emit_table(&t, Format::Text, None).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .filter(|w| w.first().is_some_and(|x| x.starts_with('[') && !x.contains(';')))
        .collect();
    assert_eq!(rows, [vec!["[3]", "1", "1"], vec!["[2,1]", "2", "2"], vec!["[1,1,1]", "1", "1"]]);
    assert!(!text.contains("time:"));
}

#[test]
fn sweep_results_do_not_depend_on_workers() {
    let key = |jobs| {
        let r = sweep(&SweepConfig { jobs, ..SweepConfig::new(3) }).unwrap();
        r.certificates
            .iter()
            .map(|c| (c.multisegment.clone(), c.sign_multiplicity, c.quotient_dim, c.verdict))
            .collect::<Vec<_>>()
    };
    assert_eq!(key(1), key(4));
}

#[test]
fn sweep_counts_and_generic_census() {
    for (n, total) in [(2, 9), (3, 40)] {
        let report = sweep(&SweepConfig::new(n)).unwrap();
        assert_eq!(report.certificates.len(), total);
        assert_eq!(report.exit_code(), 0);
        let generic = enumerate_by_starts(n, 0..=n as i64).iter().filter(|m| is_generic(m)).count();
        let signed = report.certificates.iter().filter(|c| c.sign_multiplicity == 1).count();
        assert_eq!(signed, generic);
    }
    assert_eq!(enumerate_by_starts(4, 0..=4).len(), 190);
}

#[test]
fn sweep_json_summarizes() {
    let report = sweep(&SweepConfig::new(2)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&emit_sweep(&report, Format::Json, false).unwrap()).unwrap();
    assert_eq!(v["total"], 9);
    assert_eq!(v["passed"], 9);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 9);
    assert!(v["certificates"][0].get("timing_ms").is_none());
}

#[test]
fn certificate_json_fields() {
    let c = certify(&ms("[0,0];[1,1]"), &int(3)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&emit_certificate(&c, Format::Json, false).unwrap()).unwrap();
    assert_eq!(v["multisegment"], "[1,1];[0,0]");
    assert_eq!(v["generic"], false);
    assert_eq!(v["sign_multiplicity"], 0);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn lines_multiply() {
    for m in ["[0,1]@0;[0,0]@1", "[1,1]@0;[0,0]@0;[0,0]@1", "[0,0]@0;[0,0]@1;[0,0]@2", "[0,1]@1;[1,2]@1"] {
        let check = lines_cross_check(&ms(m), &int(3)).unwrap();
        assert!(check.consistent(), "{m}: {check:?}");
    }
    let check = lines_cross_check(&ms("[0,0]@0;[1,1]@1"), &int(3)).unwrap();
    assert_eq!(check.full.sign_multiplicity(), 1);
    assert_eq!(check.full.quotient_dim, 2);
}

#[test]
fn parameter_guards() {
    let m = ms("[0,0];[1,1]");
    assert!(matches!(ktype_table(&m, &int(1)), Err(HeckeError::Parameter(_))));
    assert!(matches!(ktype_table(&m, &int(-1)), Err(HeckeError::Parameter(_))));
    assert!(matches!(ktype_table(&m, &int(0)), Err(HeckeError::Parameter(_))));
    let lines = ms("[0,0]@0;[0,0]@1");
    assert!(matches!(ktype_table(&lines, &rat(5, 7)), Err(HeckeError::Parameter(_))));
    assert!(ktype_table(&lines, &int(3)).is_ok());
}

#[test]
fn sweep_guards() {
    assert!(matches!(sweep(&SweepConfig::new(5)), Err(HeckeError::Usage(_))));
    assert!(matches!(sweep(&SweepConfig::new(0)), Err(HeckeError::Usage(_))));
    assert!(matches!(sweep(&SweepConfig { jobs: 0, ..SweepConfig::new(2) }), Err(HeckeError::Usage(_))));
    #[allow(clippy::reversed_empty_ranges)]
    let empty = SweepConfig { starts: 2..=1, ..SweepConfig::new(2) };
    assert!(matches!(sweep(&empty), Err(HeckeError::Usage(_))));
}

#[test]
fn other_q_values_agree() {
    let m = ms("[0,1];[1,1];[3,3]");
    let base = ktype_table(&m, &int(3)).unwrap();
    for q in [int(2), int(5), rat(7, 2), int(-3)] {
        let t = ktype_table(&m, &q).unwrap();
        assert_eq!(t.entries, base.entries, "q = {q}");
    }
}

#[test]
fn report_exit_codes() {
    let mut report = sweep(&SweepConfig::new(2)).unwrap();
    assert_eq!(report.exit_code(), 0);
    let mut bad = report.certificates[0].clone();
    bad.verdict = Verdict::Fail;
    report.certificates.push(bad);
    assert_eq!(report.failed(), 1);
    assert_eq!(report.exit_code(), 1);
    report.errors.push((ms("[0,0];[0,0]"), "broken".into()));
    assert_eq!(report.exit_code(), 3);
}
