use congruence_core::io::json::{canonical_json, parse_rational, rational_string};
use congruence_core::io::record::digest_of;
use congruence_core::io::{
    instance_to_file, instance_to_json, parse_eigenvalue_table, parse_instance, parse_instance_value, random_instance, IngestMode,
    ResultRecord,
};
use congruence_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use serde_json::{json, Value};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn instance_round_trip_is_stable(seed in 0u64..10_000, dim in 2usize..=6, ops in 1usize..=3, plant in prop::option::of(prop::sample::select(vec![2u64, 3, 5]))) {
        let file = random_instance(seed, dim, ops, plant).unwrap();
        let text = instance_to_json(&file);
        let inst = parse_instance(text.as_bytes()).unwrap();
        let again = instance_to_file(&inst.system, inst.pairing.as_ref(), inst.metadata.clone());
        prop_assert_eq!(instance_to_json(&again), text.clone());
        // wrapped in a result record, the instance is still found
        let record = ResultRecord::new("gen", &json!({}), json!({}), json!({ "instance": serde_json::from_str::<Value>(&text).unwrap() }));
        let wrapped = parse_instance_value(&record.to_value()).unwrap();
        prop_assert_eq!(wrapped.system, inst.system);
    }

    #[test]
    fn rationals_survive_their_string_form(n in -10_000i64..10_000, d in 1i64..500) {
        let x = BigRational::new(BigInt::from(n), BigInt::from(d));
        prop_assert_eq!(parse_rational(&rational_string(&x)).unwrap(), x);
    }

    #[test]
    fn digest_ignores_key_order(a in -100i64..100, b in "[a-z]{0,8}") {
        let v1: Value = serde_json::from_str(&format!(r#"{{"x": {a}, "y": {{"b": "{b}", "a": [1, 2]}}}}"#)).unwrap();
        let v2: Value = serde_json::from_str(&format!(r#"{{"y": {{"a": [1,2], "b": "{b}"}},   "x": {a}}}"#)).unwrap();
        prop_assert_eq!(canonical_json(&v1), canonical_json(&v2));
        prop_assert_eq!(digest_of(&v1), digest_of(&v2));
    }
}

#[test]
fn generator_is_deterministic() {
    let a = instance_to_json(&random_instance(42, 5, 2, Some(3)).unwrap());
    let b = instance_to_json(&random_instance(42, 5, 2, Some(3)).unwrap());
    assert_eq!(a, b);
    assert_ne!(a, instance_to_json(&random_instance(43, 5, 2, Some(3)).unwrap()));
}

#[test]
fn desk_scale_bound_is_enforced() {
    assert!(matches!(random_instance(1, 13, 1, None), Err(Error::DeskScale(_))));
}

#[test]
fn schema_errors_name_the_offending_field() {
    let cases: [(&str, &str); 4] = [
        (r#"{"dim":2,"basis":[[1,0],[0,1]],"operators":[{"name":"T","matrix":[[1,0],[0,1.5]]}]}"#, "operators[0].matrix[1][1]"),
        (r#"{"dim":2,"basis":[[1,0],[0,1]],"operators":[{"name":"T","matrix":[[1,0],[0]]}]}"#, "operators[0].matrix[1]"),
        (r#"{"dim":2,"basis":[[1,0]],"operators":[],"pairing_gram":[[1,0],[0,"x"]]}"#, "pairing_gram[1][1]"),
        (r#"{"dim":2,"basis":[[1,0],[0,1]]}"#, "."),
    ];
    for (text, path) in cases {
        match parse_instance(text.as_bytes()) {
            Err(Error::Schema { path: p, .. }) => assert_eq!(p, path, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn table_modes_differ_on_prime_powers() {
    let text = br#"{"label":"x","n":1,"entries":[{"l":2,"q":6,"chi":[1]}]}"#;
    assert!(parse_eigenvalue_table(text, IngestMode::Strict).is_err());
    let t = parse_eigenvalue_table(text, IngestMode::Trusted).unwrap();
    assert_eq!(t.warnings.len(), 1);
    let unsorted = br#"{"label":"x","n":1,"entries":[{"l":3,"q":3,"chi":[1]},{"l":2,"q":2,"chi":[1]}]}"#;
    assert!(parse_eigenvalue_table(unsorted, IngestMode::Trusted).is_err());
}
