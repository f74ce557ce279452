use std::io::Write;
use std::process::{Command, Stdio};

use biform_cli::{parse_form, run, Cli, Record};
use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn biform(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_biform"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn in_process(args: &[&str], stdin: &str) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("biform").chain(args.iter().copied())).unwrap();
    let mut out = Vec::new();
    let code = run(&cli, &mut stdin.as_bytes(), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn records(text: &str) -> Vec<Record> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn decide_exit_codes() {
    let (c, out) = biform(&["decide", "--p", "5", "1", "0", "0", "0", "0", "0", "0", "0", "-1"], "");
    assert_eq!(c, 0);
    assert!(out.contains("\tsoluble\t"));
    let (c, out) = biform(&["decide", "--p", "3", "1", "0", "1", "0", "0", "0", "1", "0", "1"], "");
    assert_eq!(c, 1);
    assert!(out.contains("\tinsoluble\t"));
    // (X0Y0 + X1Y1)^2 mod 2 has only singular points, and nothing more is known
    let (c, _) = biform(&["decide", "--p", "2", "--precision", "1", "1", "0", "0", "0", "0", "0", "0", "0", "1"], "");
    assert_eq!(c, 2);
    assert_eq!(biform(&["decide", "--p", "3", "1", "0", "x"], "").0, 64);
    assert_eq!(biform(&["decide", "--p", "3", "1", "2", "3"], "").0, 64);
    assert_eq!(biform(&["decide", "--p", "4", "1", "0", "0", "0", "0", "0", "0", "0", "-1"], "").0, 64);
    assert_eq!(biform(&["decide", "1", "0", "0", "0", "0", "0", "0", "0", "-1"], "").0, 64);
    assert_eq!(biform(&["frobnicate"], "").0, 64);
    assert_eq!(biform(&["--help"], "").0, 0);
}

#[test]
fn els_exit_codes() {
    // (X0^2+X1^2)(Y0^2+Y1^2) is singular
    let (c, out) = biform(&["els", "1", "0", "1", "0", "0", "0", "1", "0", "1"], "");
    assert_eq!(c, 3);
    assert!(out.lines().any(|l| l.starts_with("error\t")));
    assert_eq!(biform(&["els", "1", "0", "0", "0", "0", "0", "0", "0", "-1"], "").0, 3);
    let (c, out) = biform(&["els", "--json", "1", "0", "1", "0", "1", "0", "1", "0", "3"], "");
    assert_eq!(c, 1);
    let Record::Els(e) = &records(&out)[1] else { panic!("{out}") };
    assert_eq!((e.verdict.as_str(), e.place.as_deref()), ("not_els", Some("inf")));
    assert_eq!(biform(&["els", "1", "0", "1", "0", "1", "0", "1", "0", "-1"], "").0, 0);
}

#[test]
fn batch_streams_and_summarises() {
    let input = "# comment\n1 0 1 0 1 0 1 0 -1\n\nbad line\n1 0 0 0 0 0 0 0 -1\n1 0 1 0 1 0 1 0 3\n";
    let (c, out) = biform(&["els", "--json"], input);
    assert_eq!(c, 64);
    let recs = records(&out);
    assert!(matches!(recs[0], Record::Config(_)));
    let Record::Summary(s) = recs.last().unwrap() else { panic!() };
    assert_eq!((s.forms, s.malformed, s.degenerate, s.positive, s.negative), (4, 1, 1, 1, 1));
    assert_eq!(s.rate, Some(0.5));
    let errors: Vec<_> = recs
        .iter()
        .filter_map(|r| if let Record::Error(e) = r { Some((e.line, e.exit_code)) } else { None })
        .collect();
    assert_eq!(errors, vec![(Some(4), 64), (Some(5), 3)]);

    let (c, out) = biform(&["decide", "--p", "3"], "1 0 1 0 0 0 1 0 1\n1 0 0 0 0 0 0 0 -1\n");
    assert_eq!(c, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("decide\t")).count(), 2);
}

#[test]
fn batch_from_file_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("biform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("forms.txt");
    std::fs::write(&input, "1 0 1 0 0 0 1 0 1\n").unwrap();
    let out = dir.join("out.tsv");
    let (c, stdout) =
        biform(&["decide", "--p", "3", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()], "");
    assert_eq!(c, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.contains(&format!("#out={}", out.to_str().unwrap())));
    assert!(written.contains("\tinsoluble\t"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn every_output_carries_the_header() {
    for args in [
        vec!["rho", "--p", "2"],
        vec!["table", "--p", "3"],
        vec!["mc", "--p", "2", "--samples", "200", "--seed", "9"],
        vec!["mc", "--p", "2", "--samples", "200", "--case", "Case5"],
        vec!["product", "--pmax", "1000"],
        vec!["real", "--samples", "500", "--seed", "4"],
        vec!["global", "--pmax", "1000", "--samples", "500"],
        vec!["census", "--q", "2"],
        vec!["scan", "--kmax", "2", "--nmax", "3", "--dmax", "3"],
    ] {
        let (c, tsv) = in_process(&args, "");
        assert_eq!(c, 0, "{args:?}");
        assert!(tsv.starts_with("#bounds"), "{args:?}");
        assert!(tsv.contains(&format!("#command={}", args[0])));
        assert!(tsv.contains("#seed="));
        let mut j = vec!["--json"];
        j.extend(&args);
        let (_, json) = in_process(&j, "");
        let recs = records(&json);
        let Record::Config(cfg) = &recs[0] else { panic!() };
        assert_eq!(cfg.command, args[0]);
        assert!(recs.len() >= 2);
    }
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["--json", "rho", "--p", "5"],
        vec!["--json", "table", "--p", "2"],
        vec!["--json", "mc", "--p", "3", "--samples", "300"],
        vec!["--json", "product", "--pmax", "500"],
        vec!["--json", "real", "--samples", "300"],
        vec!["--json", "global", "--pmax", "500", "--samples", "300"],
        vec!["--json", "census", "--q", "3"],
        vec!["--json", "scan", "--kmax", "2", "--nmax", "2", "--dmax", "2"],
        vec!["--json", "decide", "--p", "2", "3", "1", "4", "1", "5", "9", "2", "6", "5"],
        vec!["--json", "els", "1", "0", "0", "0", "0", "0", "0", "0", "-1"],
    ] {
        let (_, out) = in_process(&args, "");
        for line in out.lines() {
            let rec: Record = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&rec).unwrap(), line, "{args:?}");
        }
    }
}

#[test]
fn examples_from_the_commands() {
    let (_, out) = in_process(&["--json", "rho", "--p", "2"], "");
    let Record::Rho(r) = &records(&out)[1] else { panic!() };
    assert!(r.equal);
    assert_eq!(r.closed.to_string(), densities::rho_closed(2).unwrap().to_string());

    let (_, out) = in_process(&["--json", "census", "--q", "2"], "");
    let Record::Census(c) = &records(&out)[1] else { panic!() };
    assert_eq!((c.total, c.mismatches), (511, 0));

    let (_, out) = in_process(&["--json", "product", "--pmax", "100000"], "");
    let Record::Product(p) = &records(&out)[1] else { panic!() };
    // overlaps the five-place rounding cell of 0.90592
    assert!(p.full.lo <= 0.905925 && p.full.hi >= 0.905915, "{:?}", p.full);
    assert!(p.full.width() < 1e-3);

    let (c, out) = in_process(&["scan"], "");
    assert_eq!(c, 0);
    assert!(out.lines().any(|l| l == "excluded\t1\t2\t2\t1"));
    assert!(!out.lines().any(|l| l.starts_with("violation\t")));
}

#[test]
fn identical_config_identical_bytes() {
    let a = biform(&["mc", "--p", "2", "--samples", "3000", "--seed", "11", "--threads", "1"], "");
    let b = biform(&["mc", "--p", "2", "--samples", "3000", "--seed", "11", "--threads", "1"], "");
    assert_eq!(a, b);
    let c = biform(&["mc", "--p", "2", "--samples", "3000", "--seed", "11", "--threads", "3"], "");
    let body = |s: &str| s.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&a.1), body(&c.1));
    let d = biform(&["real", "--samples", "3000", "--seed", "2", "--threads", "2"], "");
    let e = biform(&["real", "--samples", "3000", "--seed", "2", "--threads", "1"], "");
    assert_eq!(body(&d.1), body(&e.1));
}

#[test]
fn parse_form_rejects_bad_input() {
    assert!(parse_form("1 2 3 4 5 6 7 8 9").is_ok());
    assert!(parse_form("1 2 3 4 5 6 7 8 123456789012345678901234567890").is_ok());
    assert!(parse_form("1 2 3 4 5 6 7 8").is_err());
    assert!(parse_form("1 2 3 4 5 6 7 8 9 10").is_err());
    assert!(parse_form("1 2 3 4 5 6 7 8 9.5").is_err());
}

#[test]
fn small_height_batch_rate() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut input = String::new();
    for _ in 0..400 {
        let c: Vec<String> = (0..9).map(|_| rng.gen_range(-10i32..=10).to_string()).collect();
        input.push_str(&c.join(" "));
        input.push('\n');
    }
    let (c, out) = in_process(&["--json", "els"], &input);
    assert_eq!(c, 0);
    let Record::Summary(s) = records(&out).pop().unwrap() else { panic!() };
    assert_eq!(s.forms, 400);
    assert_eq!(s.undetermined, 0);
    let rate = s.rate.unwrap();
    // binomial sd at n = 400 is about 0.016
    assert!((rate - 0.885).abs() < 0.065, "{rate}");
}
