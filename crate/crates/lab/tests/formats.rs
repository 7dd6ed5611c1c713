use alcove_core::rational::{int, rat, RationalVector};
use alcove_core::roots::{standard_root_system, validate_root_system, Family, RootCandidate};
use alcove_core::shapes;
use alcove_core::spectra::{spectrum, Cutoff};
use alcove_core::tessellation::{is_strict_tessellation_default, reflection_closure, Region};
use alcove_lab::formats::*;

fn json_round<T: serde::Serialize + serde::de::DeserializeOwned>(x: &T) -> T {
    serde_json::from_str(&serde_json::to_string(x).unwrap()).unwrap()
}

#[test]
fn every_named_shape_round_trips() {
    for name in shapes::NAMES {
        let p = shapes::by_name(name).unwrap();
        let dto = json_round(&PolytopeJson::from_core(&p));
        assert_eq!(dto.to_core().unwrap(), p, "{name}");
    }
}

#[test]
fn integers_and_fraction_strings_are_both_accepted() {
    let dto: PolytopeJson = serde_json::from_str(r#"{"vertices": [[0, "0"], ["1", 0], ["1/2", "1/2"]]}"#).unwrap();
    let p = dto.to_core().unwrap();
    assert!(p.vertices().contains(&RationalVector::new(vec![rat(1, 2), rat(1, 2)])));
    let bad: PolytopeJson = serde_json::from_str(r#"{"vertices": [[0, "x"], [1, 0], [0, 1]]}"#).unwrap();
    assert!(bad.to_core().is_err());
    let flat: PolytopeJson = serde_json::from_str(r#"{"vertices": [[0, 0], [1, 1], [2, 2]]}"#).unwrap();
    assert!(flat.to_core().is_err());
}

#[test]
fn spectrum_csv_keeps_multiplicities_and_weights() {
    let r = standard_root_system(Family::A1xA1, 2).unwrap();
    let entries = spectrum(&r, Cutoff::NormSq(rat(50, 4)));
    let e = entries.iter().find(|e| e.q_norm_sq == rat(50, 4)).unwrap();
    assert_eq!(e.multiplicity, 3);
    let csv = spectrum_csv(&entries).unwrap();
    assert_eq!(spectrum_from_csv(&csv).unwrap(), entries);
}

#[test]
fn witnesses_round_trip() {
    let v = |c: &[i64]| RationalVector::from_ints(c);
    let candidates = [
        RootCandidate::euclidean(vec![v(&[0, 0]), v(&[1, 0]), v(&[-1, 0])]),
        RootCandidate::euclidean(vec![v(&[1, 0]), v(&[-1, 0])]),
        RootCandidate::euclidean(vec![v(&[1, 0]), v(&[-1, 0]), v(&[2, 0]), v(&[-2, 0]), v(&[0, 1]), v(&[0, -1])]),
        RootCandidate::euclidean(vec![v(&[1, 0]), v(&[-1, 0]), v(&[1, 1]), v(&[-1, -1])]),
        RootCandidate::euclidean(vec![v(&[1, 0]), v(&[-1, 0]), v(&[1, 2]), v(&[-1, -2])]),
    ];
    for c in &candidates {
        let report = validate_root_system(c);
        assert!(!report.all_passed());
        let dto = json_round(&ValidationJson::from_core(&report));
        assert_eq!(dto.to_core().unwrap(), report);
    }
}

#[test]
fn verdicts_and_closures_round_trip() {
    for p in [shapes::regular_hexagon(), shapes::triangle_50_60_70(), shapes::unit_square()] {
        let v = is_strict_tessellation_default(&p);
        let dto = json_round(&VerdictJson::from_core(&v));
        let back = dto.to_core().unwrap();
        assert_eq!(back, v);
        if let Some(c) = &back.certificate {
            assert!(c.revalidate(&p));
        }
    }
    let sq = shapes::unit_square();
    let region = Region::new(RationalVector::from_ints(&[-1, -1]), RationalVector::from_ints(&[2, 2]));
    let c = reflection_closure(&sq, &region, 100);
    let dto = json_round(&ClosureJson::from_core(&c));
    assert_eq!(dto.region.to_core().unwrap(), region);
    assert_eq!(dto.copies.len(), 9);
    let planes: std::collections::BTreeSet<_> = dto.planes.iter().map(|p| p.to_core().unwrap()).collect();
    assert_eq!(planes, c.planes_in_region());
}

#[test]
fn num_conversion() {
    assert_eq!(Num::Int(-3).to_rational().unwrap(), int(-3));
    assert_eq!(Num::Text("-7/14".into()).to_rational().unwrap(), rat(-1, 2));
    assert_eq!(Num::from(&rat(3, 6)), Num::Text("1/2".into()));
}
