use super::*;

fn cfg(command: Command) -> RunConfig {
    RunConfig::new(command)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn short_form_fields() {
    for (q, n, qq, nn) in [(3, 1, 3, 1), (3, 4, 3, 4), (9, 1, 9, 1), (9, 2, 9, 2), (25, 3, 25, 3)] {
        let l = parse_poly(&json!({"q": q, "n": n, "coeffs": [1]})).unwrap();
        assert_eq!((l.q(), l.n()), (qq, nn));
    }
    assert!(parse_poly(&json!({"q": 6, "n": 1, "coeffs": [1]})).is_err());
    assert!(parse_poly(&json!({"q": 3, "n": 0, "coeffs": [1]})).is_err());
    assert!(parse_poly(&json!({"q": 3, "n": 1, "coeffs": [3]})).is_err());
    assert!(parse_poly(&json!({"q": 3, "n": 1, "coefs": [1]})).is_err());
}

#[test]
fn full_form_round_trips() {
    let l = parse_poly(&json!({"q": 9, "n": 2, "coeffs": [5, 0, 1]})).unwrap();
    let back = parse_poly(&to_value(&l.to_json())).unwrap();
    assert_eq!(back, l);
}

#[test]
fn check_is_deterministic_and_verifiable() {
    let dir = tempfile::tempdir().unwrap();
    let poly = write(dir.path(), "l.json", r#"{"q": 3, "n": 2, "coeffs": [1, 0, 1]}"#);
    let c = cfg(Command::Check { poly, t: 1, m: 2 });
    let a = run(&c).unwrap();
    let b = run(&c).unwrap();
    assert_eq!(a.json(), b.json());
    let v = verify_report(&a.report).unwrap();
    assert!(v.valid, "{v:?}");
    assert_eq!(a.exit == Exit::Affirmative, a.report["report"]["witness"].is_null());
}

#[test]
fn timestamp_and_seed_are_opt_in() {
    let c = cfg(Command::Kummer { q: 3, n: 1, m: 1, t: 3 });
    let plain = run(&c).unwrap().report;
    assert!(plain.get("generated_at").is_none() && plain.get("seed").is_none());
    let stamped = run(&RunConfig { timestamp: true, seed: Some(7), ..c }).unwrap().report;
    assert!(stamped["generated_at"].is_u64());
    assert_eq!(stamped["seed"], json!(7));
}

#[test]
fn budget_errors_exit_distinctly() {
    let dir = tempfile::tempdir().unwrap();
    let poly = write(dir.path(), "x.json", r#"{"q": 3, "n": 1, "coeffs": [1]}"#);
    let c = RunConfig { max_specializations: 26, ..cfg(Command::Check { poly, t: 3, m: 3 }) };
    assert_eq!(run(&c).unwrap_err().exit(), Exit::Budget);
}

#[test]
fn missing_file_is_an_error() {
    let c = cfg(Command::Mrd { poly: PathBuf::from("/nonexistent/poly.json") });
    let e = run(&c).unwrap_err();
    assert_eq!(e.exit(), Exit::Error);
    assert!(matches!(e, CliError::Io { .. }));
}

#[test]
fn verify_rejects_tampered_witnesses() {
    let c = cfg(Command::Groups(GroupsCommand::Zsigmondy { b: 5, n: 4 }));
    let mut report = run(&c).unwrap().report;
    assert!(verify_report(&report).unwrap().valid);
    let r = report["report"]["r"].as_u64().unwrap();
    report["report"]["r"] = json!(r + 2);
    assert!(!verify_report(&report).unwrap().valid);
    report["command"] = json!("verify");
    assert!(verify_report(&report).is_err());
}

#[test]
fn even_q_is_flagged() {
    let c = cfg(Command::Kummer { q: 4, n: 1, m: 1, t: 3 });
    let report = run(&c).unwrap().report;
    assert_eq!(report["notes"].as_array().unwrap().len(), 1);
}

#[test]
fn args_are_unwrapped() {
    let c = cfg(Command::Groups(GroupsCommand::Orders { d: 3, q: 5 }));
    let report = run(&c).unwrap().report;
    assert_eq!(report["command"], json!("groups orders"));
    assert_eq!(report["args"], json!({"d": 3, "q": 5}));
}
