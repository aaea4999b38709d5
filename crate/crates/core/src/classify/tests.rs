use super::*;
use crate::ring::{realize_str, Limits};

fn report(spec: &str) -> ClassificationReport {
    classify(&realize_str(spec).unwrap(), ClassifyOptions::default()).unwrap()
}

fn verdict(r: &ClassificationReport, p: Property) -> Verdict {
    r.properties.get(p).unwrap().verdict
}

#[test]
fn z2_is_strongly_regular_with_index_one() {
    let r = report("Z2");
    assert_eq!(verdict(&r, Property::StronglyRegular), Verdict::Holds);
    assert_eq!(verdict(&r, Property::Drnc), Verdict::Holds);
    assert_eq!(r.drnc_index, Some(1));
    assert_eq!(r.properties.0.len(), 16);
}

#[test]
fn m2_z2_report() {
    let r = report("M(2,Z2)");
    for p in [Property::Regular, Property::UnitRegular, Property::NilClean] {
        assert_eq!(verdict(&r, p), Verdict::Holds, "{p}");
    }
    assert_eq!(r.drnc_index, Some(2));
    assert_eq!(verdict(&r, Property::StronglyRegular), Verdict::Fails);
    assert_eq!(verdict(&r, Property::Abelian), Verdict::Fails);
}

#[test]
fn m2_z4_report() {
    let r = report("M(2,Z4)");
    for p in [
        Property::PiRegular,
        Property::StronglyPiRegular,
        Property::NilClean,
        Property::StronglyClean,
    ] {
        assert_eq!(verdict(&r, p), Verdict::Holds, "{p}");
    }
    assert_eq!(verdict(&r, Property::Regular), Verdict::Fails);
    assert!(r.drnc_index.unwrap() <= 4);
    assert!(r.caveats.iter().any(|c| c.starts_with("finite truncation")));
}

#[test]
fn products_carry_a_truncation_caveat() {
    let r = report("prod(Z2,Z4)");
    assert!(r.caveats.iter().any(|c| c.starts_with("truncated product")));
    assert!(!report("Z4").caveats.iter().any(|c| c.starts_with("truncated product")));
}

#[test]
fn oversized_rings_are_skipped() {
    let ring = realize_str("M(3,Z2)").unwrap();
    let limits = Limits {
        max_classify_size: 256,
        ..Limits::default()
    };
    let ring = Ring::realize(ring.spec(), limits).unwrap();
    let r = classify(&ring, ClassifyOptions::default()).unwrap();
    assert!(r.properties.0.iter().all(|(_, p)| p.verdict == Verdict::Skipped));
    assert!(r.caveats.iter().any(|c| c.starts_with("skipped")));
    assert_eq!(r.drnc_index, None);
}

#[test]
fn json_round_trip_reverifies() {
    let r = report("Z6");
    let json = render_json(&r).unwrap();
    let back: ClassificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["properties"]["drnc"]["verdict"], "holds");
    let summary = verify_document(&json, Limits::default()).unwrap();
    assert!(summary.ok(), "{:?}", summary.failures);
    let expected: usize = r
        .properties
        .0
        .iter()
        .map(|(_, p)| match p.verdict {
            Verdict::Holds => p.witnesses.as_ref().unwrap().len(),
            Verdict::Fails => 1,
            Verdict::Skipped => 0,
        })
        .sum();
    assert_eq!(summary.checked, expected);
}

#[test]
fn json_keys_follow_report_order() {
    let json = render_json(&report("Z2")).unwrap();
    let pos = |k: &str| json.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("ring") < pos("size") && pos("size") < pos("properties"));
    assert!(pos("regular") < pos("unit_regular") && pos("drnc") < pos("abelian"));
}

#[test]
fn tampered_witness_is_rejected() {
    let r = report("M(2,Z2)");
    let mut json: serde_json::Value = serde_json::from_str(&render_json(&r).unwrap()).unwrap();
    json["properties"]["drnc"]["witnesses"][5]["e"] = "[1,1;1,1]".into();
    let summary = verify_document(&json.to_string(), Limits::default()).unwrap();
    assert!(!summary.ok());

    let mut json: serde_json::Value = serde_json::from_str(&render_json(&r).unwrap()).unwrap();
    json["properties"]["abelian"]["counterexample"] = "[1,0;0,1]".into();
    assert!(!verify_document(&json.to_string(), Limits::default()).unwrap().ok());
}

#[test]
fn element_certificates() {
    let z4 = realize_str("Z4").unwrap();
    let c = certify_element(&z4, z4.from_int(2), Property::Regular, false).unwrap();
    assert_eq!(c.verdict, Verdict::Fails);
    let json = serde_json::to_string(&c).unwrap();
    assert!(verify_document(&json, Limits::default()).unwrap().ok());

    let c = certify_element(&z4, z4.from_int(2), Property::Drnc, false).unwrap();
    assert_eq!(c.verdict, Verdict::Holds);
    let list = serde_json::to_string(&vec![c.clone(), c]).unwrap();
    let s = verify_document(&list, Limits::default()).unwrap();
    assert!(s.ok() && s.checked == 2);

    // a false "fails" claim is caught by the independent confirmer
    let bogus = ElementCertificate {
        ring: "Z4".into(),
        property: Property::Regular,
        element: "3".into(),
        verdict: Verdict::Fails,
        witness: None,
    };
    assert!(!verify_document(&serde_json::to_string(&bogus).unwrap(), Limits::default())
        .unwrap()
        .ok());
}

#[test]
fn lattice_violation_is_a_defect() {
    let mut r = report("Z4");
    for (p, rep) in r.properties.0.iter_mut() {
        if *p == Property::ExchangeKln {
            rep.verdict = Verdict::Fails;
        }
    }
    assert!(matches!(render_json(&r), Err(Error::Defect(_))));
    assert!(matches!(render_text(&r), Err(Error::Defect(_))));
}

#[test]
fn text_render_lists_every_property() {
    let text = render_text(&report("Z4")).unwrap();
    for p in Property::ALL {
        assert!(text.lines().any(|l| l.starts_with(p.name())), "{p}");
    }
    assert!(text.contains("drnc index: 2"));
}

fn job(template: &str, range: &str, property: Property) -> ScanJob {
    ScanJob {
        template: template.into(),
        ranges: vec![range.parse().unwrap()],
        property,
        mode: ScanMode::Holds,
        limits: Limits::default(),
        options: ClassifyOptions::default(),
    }
}

#[test]
fn scan_matrix_families() {
    let out = scan(&job("M(n,Z2)", "n=1..3", Property::Drnc)).unwrap();
    let idx: Vec<Option<u32>> = out.iter().map(|e| e.index).collect();
    assert_eq!(idx, [Some(1), Some(2), Some(2)]);
    assert!(out.iter().all(|e| e.matches));

    let out = scan(&job("M(n,Z4)", "n=1..2", Property::Drnc)).unwrap();
    assert!(out.iter().all(|e| e.verdict == Verdict::Holds && e.index.unwrap() <= 4));
}

#[test]
fn scan_zm_utumi_symmetric() {
    let out = scan(&job("Zm", "m=2..12", Property::UtumiSymmetric)).unwrap();
    assert_eq!(out.len(), 11);
    assert!(out.iter().all(|e| e.verdict == Verdict::Holds));
    assert_eq!(out[0].spec, "Z2");
}

#[test]
fn scan_records_oversized_instances() {
    let mut j = job("M(n,Z2)", "n=3,4,5", Property::Regular);
    j.mode = ScanMode::Fails;
    let out = scan(&j).unwrap();
    assert_eq!(out[0].verdict, Verdict::Holds);
    assert!(!out[0].matches);
    assert_eq!(out[1].verdict, Verdict::Skipped);
    assert!(out[2].reason.as_ref().unwrap().contains("exceeds"));
}

#[test]
fn scan_ranges_parse() {
    let r: ScanRange = "m=2..4".parse().unwrap();
    assert_eq!(r.values, [2, 3, 4]);
    let r: ScanRange = "n = 1,3".parse().unwrap();
    assert_eq!((r.var.as_str(), r.values), ("n", vec![1, 3]));
    assert!("n=3..1".parse::<ScanRange>().is_err());
    assert!("=1..2".parse::<ScanRange>().is_err());
}
