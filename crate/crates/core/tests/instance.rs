use beurling_core::beurling::{Mode, Verdict};
use beurling_core::instance::{run_instance, InstanceSpec, Status};
use beurling_core::Tolerances;

fn spec(json: &str) -> InstanceSpec {
    InstanceSpec::from_json(json).unwrap()
}

#[test]
fn ex_11_1_float_and_exact_reports_match() {
    let mut s = spec(r#"{"space": {"kind": "H2_POLYDISK", "n": 2, "D": 4}, "subspace": {"preset": "EX_11_1"}, "checks": ["beurling", "wandering"]}"#);
    let float = run_instance(&s, None).unwrap().report;
    s.mode = Mode::Exact;
    let exact = run_instance(&s, None).unwrap().report;
    for r in [&float, &exact] {
        let b = r.beurling.as_ref().unwrap();
        assert_eq!(b.verdicts(), (Verdict::Fail, Verdict::Pass, Verdict::Fail));
        assert_eq!(r.status, Status::Failures);
        assert_eq!(r.wandering.as_ref().unwrap().dim, 2);
    }
    assert_eq!(exact.beurling.as_ref().unwrap().mode, Mode::Exact);
}

#[test]
fn generators_and_reconstruction() {
    // V generated by z1^2 - z2, reconstruct z2 times the first W element
    let s = spec(
        r#"{"space": {"kind": "H2_BALL", "n": 2, "D": 4},
            "subspace": {"preset": {"SUBMODULE": [[{"exponents": [2, 0], "re": 1}, {"exponents": [0, 1], "re": "-1"}]]}},
            "checks": ["beurling", {"reconstruct": {"r": [0, 1]}}, "series", "decompose"]}"#,
    );
    let out = run_instance(&s, None).unwrap();
    let r = &out.report;
    assert_eq!(r.status, Status::AllPass, "{:?}", r.errors);
    let rec = &r.reconstructions[0];
    assert!(rec.final_residual <= 1e-9);
    assert!(rec.bessel_holds);
    assert!(out.csv.iter().any(|(name, _)| name == "decomposition.csv"));
}

#[test]
fn truncation_limited_verdicts_come_with_truncation_flags() {
    for preset in [r#""EX_11_1""#, r#"{"EX_11_7": {"a": {"re": "1/3", "im": "1/3"}}}"#] {
        let n = if preset.contains("11_1") { 2 } else { 1 };
        let json = format!(
            r#"{{"space": {{"kind": "H2_POLYDISK", "n": {n}, "D": 6}}, "subspace": {{"preset": {preset}}}, "checks": ["invariant", "r1inner", "fullproj"]}}"#
        );
        let r = run_instance(&spec(&json), None).unwrap().report;
        for o in [&r.invariant, &r.r1_inner, &r.full_projection].into_iter().flatten() {
            if o.verdict == Verdict::TruncationLimited {
                assert!(o.truncation_touched);
            }
            if o.truncation_touched {
                assert!(r.truncation_touched);
            }
        }
    }
}

#[test]
fn blaschke_parameter_is_validated() {
    for a in [r#"{"re": 0}"#, r#"{"re": 1}"#, r#"{"re": "3/5", "im": "4/5"}"#] {
        let json = format!(r#"{{"space": {{"kind": "H2_POLYDISK", "n": 1, "D": 6}}, "subspace": {{"preset": {{"EX_11_7": {{"a": {a}}}}}}}, "checks": ["beurling"]}}"#);
        assert!(run_instance(&spec(&json), None).is_err(), "{a}");
    }
}

#[test]
fn unknown_fields_and_checks_are_rejected() {
    assert!(InstanceSpec::from_json(r#"{"space": {"kind": "H2_POLYDISK", "n": 1, "D": 2}, "subspace": {}, "checks": ["bogus"]}"#).is_err());
    assert!(InstanceSpec::from_json(r#"{"space": {"kind": "H2_POLYDISK", "n": 1, "D": 2, "x": 1}, "subspace": {}, "checks": []}"#).is_err());
}

#[test]
fn generators_must_fit_the_truncation() {
    let s = spec(r#"{"space": {"kind": "H2_POLYDISK", "n": 1, "D": 2}, "subspace": {"generators": [[{"exponents": [3], "re": 1}]]}, "checks": ["beurling"]}"#);
    assert!(run_instance(&s, None).is_err());
}

#[test]
fn reports_are_deterministic() {
    let s = spec(
        r#"{"space": {"kind": "H2_POLYDISK", "n": 2, "D": 6}, "subspace": {"preset": "EX_18_7"}, "seed": 4,
            "checks": [{"inner": {}}, {"boundary": {"grid": {"kind": "SPHERE", "n": 2, "samples": 64, "seed": 4}}}]}"#,
    );
    let a = run_instance(&s, None).unwrap();
    let b = run_instance(&s, None).unwrap();
    assert_eq!(serde_json::to_string(&a.report).unwrap(), serde_json::to_string(&b.report).unwrap());
    assert_eq!(a.csv, b.csv);
}

#[test]
fn loose_tolerances_surface_as_integrity_problems() {
    let s = spec(r#"{"space": {"kind": "H2_POLYDISK", "n": 1, "D": 12}, "subspace": {"preset": {"EX_11_7": {"a": {"re": "1/2"}}}}, "checks": ["beurling"]}"#);
    let tight = run_instance(&s, None).unwrap().report;
    assert_ne!(tight.status, Status::Integrity);
    let loose = run_instance(&s, Some(Tolerances::uniform(0.5)));
    // either the run refuses, or the report is flagged; it never passes silently
    if let Ok(out) = loose {
        assert_ne!(out.report.status, Status::AllPass);
    }
}
