use amplab::genfun::GenPoly;
use amplab::group::Element;
use amplab::matching::{Bounds, SubsetPair};
use amplab::verifier::*;

fn bounds() -> Bounds {
    Bounds::default()
}

fn coprime6_evidence(c: &Certificate) -> &Coprime6Evidence {
    match &c.evidence {
        Evidence::Coprime6(e) => e,
        other => panic!("expected coprime6 evidence, got {}", other.kind()),
    }
}

#[test]
fn coprime6_n7() {
    let c = certify_coprime6(7, &bounds()).unwrap();
    assert!(c.verified, "{:?}", c.notes);
    assert_eq!(c.verdict, Verdict::Fails);
    let e = coprime6_evidence(&c);
    assert_eq!((e.case, e.m), (1, 2));
    assert_eq!(e.polynomial, GenPoly::mono(2, 1, 1, 2));
    assert_eq!(e.polynomial.to_string(), "2*c0*c1*c3^2");
    assert_eq!(e.min_coefficient, 2);
    let ob = e.case1.as_ref().unwrap();
    assert_eq!((ob.rhs, ob.rhs_mod_2, ob.rhs_mod_3), (5, 1, 2));
    assert!(ob.boundary_terms.is_empty());
    let table = e.enumeration.as_ref().unwrap();
    assert_eq!(table.total_matchings, 2);
    assert_eq!(table.classes.len(), 1);
}

#[test]
fn coprime6_n11_uses_m6_and_enumerates() {
    let c = certify_coprime6(11, &bounds()).unwrap();
    assert!(c.verified, "{:?}", c.notes);
    let e = coprime6_evidence(&c);
    assert_eq!((e.case, e.m), (2, 6));
    assert!(e.min_coefficient >= 2);
    assert!(e.enumeration.is_some());
    assert!(e
        .case2
        .as_ref()
        .unwrap()
        .iter()
        .all(|t| !t.parts.contains(&1)));
}

#[test]
fn coprime6_above_enumeration_limit() {
    // 25 ≡ 1 and 23 ≡ 5 (mod 6)
    for (n, case, m) in [(25, 1, 2), (23, 2, 6)] {
        let c = certify_coprime6(n, &bounds()).unwrap();
        assert!(c.verified, "{:?}", c.notes);
        let e = coprime6_evidence(&c);
        assert_eq!((e.case, e.m), (case, m));
        assert!(e.enumeration.is_none());
        assert!(e.min_coefficient >= 2);
    }
}

#[test]
fn coprime6_range() {
    for n in (7..=35).filter(|n| n % 2 == 1 && n % 3 != 0) {
        let c = certify_coprime6(n, &bounds()).unwrap();
        assert!(c.verified, "n={n}: {:?}", c.notes);
        assert!(coprime6_evidence(&c).min_coefficient >= 2);
    }
}

#[test]
fn coprime6_preconditions() {
    for n in [5, 6, 9, 15, 1] {
        assert!(certify_coprime6(n, &bounds()).is_err(), "n={n}");
    }
}

#[test]
fn tampered_polynomial_fails_recheck() {
    let mut c = certify_coprime6(13, &bounds()).unwrap();
    if let Evidence::Coprime6(e) = &mut c.evidence {
        let (t, _) = e.polynomial.terms().next().unwrap();
        e.polynomial.add_term(t, 1).unwrap();
    }
    c.notes.clear();
    c.recheck(&bounds()).unwrap();
    assert!(!c.verified);
    assert!(c.notes.iter().any(|n| n.contains("transfer matrix")));
}

#[test]
fn missing_enumeration_fails_recheck_within_limit() {
    let mut c = certify_coprime6(11, &bounds()).unwrap();
    if let Evidence::Coprime6(e) = &mut c.evidence {
        e.enumeration = None;
    }
    c.recheck(&bounds()).unwrap();
    assert!(!c.verified);
}

#[test]
fn nonprime_examples() {
    let cases: [(u32, &[i64], &[i64]); 3] = [
        (9, &[0, 3, 6], &[1, 3, 6]),
        (4, &[0, 2], &[1, 2]),
        (6, &[0, 2, 4], &[1, 2, 4]),
    ];
    for (n, a, b) in cases {
        let c = nonprime_counterexample(n).unwrap();
        assert!(c.verified, "n={n}: {:?}", c.notes);
        let Evidence::Nonprime(e) = &c.evidence else {
            panic!()
        };
        let el = |v: &[i64]| v.iter().copied().map(Element).collect::<Vec<_>>();
        assert_eq!(e.pair.a(), &el(a)[..]);
        assert_eq!(e.pair.b(), &el(b)[..]);
        assert!(!e.matching_exists);
    }
}

#[test]
fn nonprime_composites_up_to_16() {
    for n in (4..=16u32).filter(|&n| (2..n).any(|d| n % d == 0)) {
        let c = nonprime_counterexample(n).unwrap();
        assert!(c.verified, "n={n}");
    }
    for n in [1, 2, 3, 5, 7, 13] {
        assert!(nonprime_counterexample(n).is_err(), "n={n}");
    }
}

#[test]
fn tampered_nonprime_pair_fails_recheck() {
    let mut c = nonprime_counterexample(9).unwrap();
    if let Evidence::Nonprime(e) = &mut c.evidence {
        e.pair = SubsetPair::new(*e.pair.group(), [0, 3, 6], [1, 2, 4]).unwrap();
    }
    c.recheck(&bounds()).unwrap();
    assert!(!c.verified);
}

#[test]
fn classify_examples() {
    let opts = ClassifyOptions::default();
    let c5 = classify("5".parse().unwrap(), &opts).unwrap();
    assert!(c5.verified);
    assert_eq!(c5.verdict, Verdict::Holds);
    assert_eq!(c5.evidence.kind(), "exhaustive");

    let c7 = classify("7".parse().unwrap(), &opts).unwrap();
    assert!(c7.verified);
    assert_eq!(c7.verdict, Verdict::Fails);
    assert_eq!(c7.evidence.kind(), "coprime6");

    let c12 = classify("12".parse().unwrap(), &opts).unwrap();
    assert_eq!(c12.verdict, Verdict::Fails);
    assert_eq!(c12.evidence.kind(), "nonprime");

    let cz = classify("Z".parse().unwrap(), &opts).unwrap();
    assert!(cz.verified);
    assert_eq!(cz.verdict, Verdict::Holds);
    assert_eq!(cz.evidence.kind(), "sampled");

    let c1 = classify("1".parse().unwrap(), &opts).unwrap();
    assert!(c1.verified);
    assert_eq!(c1.verdict, Verdict::VacuousHolds);

    assert!("0".parse::<GroupDescriptor>().is_err());
    assert!("x".parse::<GroupDescriptor>().is_err());
}

#[test]
fn classify_agrees_with_exhaustive_ground_truth() {
    let opts = ClassifyOptions::default();
    for n in 1..=8u32 {
        let verdict = classify(GroupDescriptor::Cyclic { n }, &opts).unwrap();
        assert!(verdict.verified, "n={n}");
        let truth = certify_amp(n, false, &bounds()).unwrap();
        let holds = |v: Verdict| v != Verdict::Fails;
        assert_eq!(holds(verdict.verdict), holds(truth.verdict), "n={n}");
    }
}

#[test]
fn amp_certificate_for_z7_carries_counterexample() {
    let c = certify_amp(7, true, &bounds()).unwrap();
    assert!(c.verified);
    assert_eq!(c.verdict, Verdict::Fails);
    let Evidence::Exhaustive(e) = &c.evidence else {
        panic!()
    };
    let ce = e.counterexample.as_ref().unwrap();
    assert_eq!(ce.len(), 3);
    assert_eq!(ce.a(), &[Element(0), Element(1), Element(3)]);
    assert_eq!(ce.b(), &[Element(1), Element(2), Element(4)]);
    let table = e.counterexample_classes.as_ref().unwrap();
    assert_eq!(table.total_matchings, 2);
    assert_eq!(table.min_class_size(), Some(2));
}

#[test]
fn tampered_digest_fails_recheck() {
    let mut c = certify_amp(5, true, &bounds()).unwrap();
    if let Evidence::Exhaustive(e) = &mut c.evidence {
        e.digest
            .replace_range(0..1, if e.digest.starts_with('0') { "1" } else { "0" });
    }
    c.recheck(&bounds()).unwrap();
    assert!(!c.verified);
}

#[test]
fn certificates_round_trip_through_json() {
    for c in [
        certify_coprime6(11, &bounds()).unwrap(),
        nonprime_counterexample(10).unwrap(),
        certify_amp(3, true, &bounds()).unwrap(),
        classify(GroupDescriptor::Integers, &ClassifyOptions::default()).unwrap(),
    ] {
        let json = c.to_json_pretty();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema_version"], CERTIFICATE_SCHEMA_VERSION);
        let mut back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        back.verified = false;
        back.recheck(&bounds()).unwrap();
        assert!(back.verified, "{}", c.summary());
    }
}

#[test]
fn wrong_schema_version_is_rejected() {
    let mut c = nonprime_counterexample(4).unwrap();
    c.schema_version = 99;
    c.recheck(&bounds()).unwrap();
    assert!(!c.verified);
}
