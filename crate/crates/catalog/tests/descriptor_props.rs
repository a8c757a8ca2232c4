use liecraft_catalog::Descriptor;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Descriptor> {
    prop_oneof![
        Just(Descriptor::P1),
        (1usize..9, 0usize..20).prop_map(|(r, i)| Descriptor::out(r, i)),
        (2usize..6).prop_map(Descriptor::SeriesA),
        (2usize..6).prop_map(Descriptor::SeriesC),
    ]
}

fn descriptor() -> impl Strategy<Value = Descriptor> {
    leaf().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (2usize..4, inner.clone()).prop_map(|(d, x)| Descriptor::veronese(d, x)),
            proptest::collection::vec(inner, 2..4).prop_map(Descriptor::segre),
        ]
    })
}

proptest! {
    #[test]
    fn display_parses_back(d in descriptor()) {
        let s = d.to_string();
        prop_assert_eq!(s.parse::<Descriptor>().unwrap(), d);
    }

    #[test]
    fn spaces_are_ignored_or_rejected_consistently(d in descriptor()) {
        let s = d.to_string().replace(',', ", ");
        if let Ok(back) = s.parse::<Descriptor>() {
            prop_assert_eq!(back, d);
        }
    }

    #[test]
    fn truncation_fails_within_the_input(d in descriptor(), cut in 0usize..40) {
        let s = d.to_string();
        prop_assume!(cut < s.len());
        let prefix = &s[..cut];
        if let Err(e) = prefix.parse::<Descriptor>() {
            prop_assert!(e.position <= prefix.len());
        }
    }

    #[test]
    fn json_round_trip(d in descriptor()) {
        let json = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<Descriptor>(&json).unwrap(), d);
    }
}
