use albanese_core::analysis::analyze;
use albanese_core::catalog;
use albanese_core::document::{export_document, parse_document, InputDocument};
use albanese_core::{Error, ErrorClass};

const RAW_BIELLIPTIC: &str = r#"{
  "mode": "raw",
  "name": "hand-written",
  "rank": 4,
  "generators": [
    {
      "name": "g",
      "matrix": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
      "translation": ["1/2", "0", "0", "0"],
      "eigenvalues": ["1", "-1"]
    }
  ],
  "form": [["0", "1", "0", "0"], ["-1", "0", "0", "0"], ["0", "0", "0", "1"], ["0", "0", "-1", "0"]]
}"#;

#[test]
fn catalog_exports_round_trip() {
    for name in catalog::list_entries() {
        let doc = catalog::export_entry(name).unwrap();
        let text = doc.to_json();
        let parsed = parse_document(&text).unwrap();
        assert_eq!(parsed, doc, "{name}");
        let d = parsed.to_datum().unwrap();
        let again = export_document(&d, Some(name.to_string()));
        assert_eq!(again.to_datum().unwrap().group.elements, d.group.elements, "{name}");
    }
}

#[test]
fn raw_export_gives_the_same_answers() {
    for name in ["bielliptic-2", "z4-threefold", "zmzm-threefold-m2"] {
        let mut d = catalog::entry(name).unwrap().input().to_datum().unwrap();
        let builder = analyze(&d, false).unwrap();
        d.builder_mode = false;
        let raw = export_document(&d, None);
        assert!(matches!(raw, InputDocument::Raw(_)));
        let back = parse_document(&raw.to_json()).unwrap().to_datum().unwrap();
        let a = analyze(&back, false).unwrap();
        assert_eq!(a.albanese.q, builder.albanese.q);
        assert_eq!(
            a.albanese.albanese_isogeny_factors(),
            builder.albanese.albanese_isogeny_factors()
        );
        assert_eq!(a.albanese.subgroup_h_labels, builder.albanese.subgroup_h_labels);
        assert_eq!(a.invariants.diamond, builder.invariants.diamond);
        assert!(a.albanese.j_stability_assumed);
    }
}

#[test]
fn hand_written_raw_document() {
    let d = parse_document(RAW_BIELLIPTIC).unwrap().to_datum().unwrap();
    let a = analyze(&d, false).unwrap();
    assert_eq!(a.albanese.q, 1);
    assert_eq!(a.albanese.albanese_isogeny_factors(), vec![2]);
    assert!(a.albanese.fiber_class.is_abelian());
}

#[test]
fn raw_document_without_form_has_no_provenance() {
    let mut v: serde_json::Value = serde_json::from_str(RAW_BIELLIPTIC).unwrap();
    v.as_object_mut().unwrap().remove("form");
    let err = parse_document(&v.to_string()).unwrap().to_datum().unwrap_err();
    assert!(matches!(err, Error::NoProvenance));
}

#[test]
fn non_unimodular_matrix_is_rejected() {
    let text = RAW_BIELLIPTIC.replace("[1, 0, 0, 0], [0, 1, 0, 0]", "[2, 0, 0, 0], [0, 1, 0, 0]");
    let err = parse_document(&text).unwrap().to_datum().unwrap_err();
    assert!(err.to_string().starts_with("LatticeNotPreserved"), "{err}");
    assert_eq!(err.class(), ErrorClass::Validation);
}

#[test]
fn malformed_input_is_a_parse_error() {
    for bad in [
        RAW_BIELLIPTIC.replace("\"1/2\"", "\"1/0\""),
        RAW_BIELLIPTIC.replace("\"1/2\"", "\"one half\""),
        RAW_BIELLIPTIC.replace("\"raw\"", "\"cooked\""),
        RAW_BIELLIPTIC.replace("\"rank\"", "\"rnak\""),
        "{".to_string(),
    ] {
        let err = parse_document(&bad).unwrap_err();
        assert_eq!(err.class(), ErrorClass::Parse, "{err}");
    }
}

#[test]
fn wrong_sizes_are_dimension_mismatches() {
    let text = RAW_BIELLIPTIC.replace("[\"1/2\", \"0\", \"0\", \"0\"]", "[\"1/2\", \"0\"]");
    let err = parse_document(&text).unwrap().to_datum().unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch(_)), "{err}");
}

#[test]
fn trivial_group_is_a_degenerate_datum() {
    let mut v: serde_json::Value = serde_json::from_str(RAW_BIELLIPTIC).unwrap();
    v["generators"] = serde_json::json!([]);
    let mut d = parse_document(&v.to_string()).unwrap().to_datum().unwrap();
    let report = d.validate();
    assert!(report.passed && !report.is_hyperelliptic());
    let a = analyze(&d, false).unwrap();
    assert_eq!(a.albanese.q, 2);
    assert_eq!(a.albanese.fiber_class.dim(), 0);
}
