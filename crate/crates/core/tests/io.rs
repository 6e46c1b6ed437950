//! JSON round trips and schema errors.

use bollobas::constructions::{classical_pairs, modular_k2};
use bollobas::covering::{exact_min_cover, random_cover, RandomCoverConfig};
use bollobas::io::{emit_cover, emit_system, parse_cover, parse_system};
use bollobas::{Error, FamilySystem, Guard};
use proptest::prelude::*;

fn systems() -> impl Strategy<Value = (usize, usize, Vec<Vec<Vec<usize>>>)> {
    (2usize..=4, 1usize..=12, 1usize..=5).prop_flat_map(|(k, n, m)| {
        let set = proptest::collection::btree_set(0..n, 0..=n).prop_map(|s| s.into_iter().collect::<Vec<_>>());
        (Just(n), 2..=k, proptest::collection::vec(proptest::collection::vec(set, m), k))
    })
}

proptest! {
    #[test]
    fn system_round_trip((n, t, fams) in systems()) {
        let sys = FamilySystem::from_elements(n, &fams).unwrap();
        let text = emit_system(&sys, t);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(&back.system, &sys);
        prop_assert_eq!(back.t, t);
        prop_assert_eq!(emit_system(&back.system, back.t), text);
    }
}

#[test]
fn constructions_round_trip_byte_for_byte() {
    for (sys, t) in [(classical_pairs(2, 3).unwrap(), 2), (modular_k2(3, 2, Guard::default()).unwrap(), 2)] {
        let text = emit_system(&sys, t);
        assert!(text.ends_with("}\n"));
        assert_eq!(emit_system(&parse_system(&text).unwrap().system, t), text);
    }
}

#[test]
fn unsorted_input_is_canonicalized() {
    let text = r#"{"n":3,"k":2,"m":1,"t":2,"families":[[[2,0]],[[1]]]}"#;
    let parsed = parse_system(text).unwrap();
    assert_eq!(emit_system(&parsed.system, 2), "{\"n\":3,\"k\":2,\"m\":1,\"t\":2,\"families\":[[[0,2]],[[1]]]}\n");
}

#[test]
fn covers_round_trip() {
    let exact = exact_min_cover(2, 2, 5, Guard::default()).unwrap().certificate;
    let random = random_cover(3, 2, 12, &RandomCoverConfig::default()).unwrap().cover;
    for cover in [exact, random] {
        let text = emit_cover(&cover);
        let back = parse_cover(&text).unwrap();
        assert_eq!(back, cover);
        assert_eq!(emit_cover(&back), text);
    }
}

#[test]
fn schema_errors_name_the_field() {
    let cases = [
        (r#"{"n":3,"k":2,"m":1,"t":3,"families":[[[0]],[[1]]]}"#, "`t`"),
        (r#"{"n":3,"k":2,"m":2,"t":2,"families":[[[0]],[[1]]]}"#, "families[0]"),
        (r#"{"n":3,"k":3,"m":1,"t":2,"families":[[[0]],[[1]]]}"#, "`families`"),
    ];
    for (text, field) in cases {
        match parse_system(text) {
            Err(Error::Schema(msg)) => assert!(msg.contains(field), "{msg}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    assert!(matches!(parse_system(r#"{"n":3,"k":2,"m":1,"t":2,"families":[[[5]],[[1]]]}"#), Err(Error::Range { .. })));
    assert!(matches!(parse_system(r#"{"n":3,"k":2,"m":1,"t":2,"families":[[[0,0]],[[1]]]}"#), Err(Error::Duplicate { .. })));
    assert!(matches!(parse_system(r#"{"n":3,"k":2,"m":1,"t":2,"extra":1,"families":[[[0]],[[1]]]}"#), Err(Error::Json(_))));
    assert!(matches!(parse_system("not json"), Err(Error::Json(_))));

    let bad_cover = r#"{"k":2,"t":2,"n":2,"blocks":[{"parts":[[0],[]]}]}"#;
    assert!(matches!(parse_cover(bad_cover), Err(Error::Schema(m)) if m.contains("blocks[0].parts[1]")));
}
