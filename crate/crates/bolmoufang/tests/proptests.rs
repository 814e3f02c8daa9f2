//! Randomized invariants: serialization round-trips, parser robustness, and
//! isomorphism invariance under arbitrary relabelings.

use bolmoufang::magma::Magma;
use proptest::prelude::*;

fn arb_table() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(0..n, n), n)
    })
}

fn arb_table_and_perm() -> impl Strategy<Value = (Vec<Vec<usize>>, Vec<usize>)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::collection::vec(0..n, n), n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
    })
}

proptest! {
    #[test]
    fn display_parse_round_trip(rows in arb_table()) {
        let m = Magma::from_rows(&rows).unwrap();
        let text = m.to_string();
        prop_assert_eq!(Magma::parse_table(&text).unwrap(), m);
    }

    #[test]
    fn parser_never_panics(text in "\\PC*") {
        let _ = Magma::parse_table(&text);
    }

    #[test]
    fn analysis_is_relabeling_invariant((rows, perm) in arb_table_and_perm()) {
        let m = Magma::from_rows(&rows).unwrap();
        let relabeled = m.relabel(&perm);
        let a = m.analyze();
        let b = relabeled.analyze();
        prop_assert_eq!(a.is_latin, b.is_latin);
        prop_assert_eq!(a.is_loop, b.is_loop);
        prop_assert_eq!(a.is_associative, b.is_associative);
        prop_assert_eq!(a.is_group, b.is_group);
        prop_assert_eq!(a.left_neutrals.len(), b.left_neutrals.len());
        prop_assert_eq!(a.right_neutrals.len(), b.right_neutrals.len());
        prop_assert_eq!(a.lip_map.is_some(), b.lip_map.is_some());
        prop_assert_eq!(a.rip_map.is_some(), b.rip_map.is_some());
        prop_assert_eq!(
            a.inverse_map_two_sided.is_some(),
            b.inverse_map_two_sided.is_some()
        );
    }

    #[test]
    fn canonical_form_is_relabeling_invariant((rows, perm) in arb_table_and_perm()) {
        let m = Magma::from_rows(&rows).unwrap();
        prop_assert_eq!(m.relabel(&perm).canonical_form(), m.canonical_form());
    }

    #[test]
    fn report_fields_are_definitionally_consistent(rows in arb_table()) {
        let m = Magma::from_rows(&rows).unwrap();
        let r = m.analyze();
        prop_assert_eq!(
            r.is_latin,
            r.left_translations_bijective && r.right_translations_bijective
        );
        prop_assert_eq!(r.is_loop, r.is_latin && r.two_sided_neutral.is_some());
        prop_assert_eq!(r.is_group, r.is_loop && r.is_associative);
        // The two inverse-property maps agree whenever a two-sided neutral
        // exists alongside both of them.
        if r.two_sided_neutral.is_some() {
            if let (Some(lip), Some(rip)) = (&r.lip_map, &r.rip_map) {
                prop_assert_eq!(lip, rip);
            }
        }
        // The two-sided neutral is in both one-sided neutral sets.
        if let Some(e) = r.two_sided_neutral {
            prop_assert!(r.left_neutrals.contains(&e));
            prop_assert!(r.right_neutrals.contains(&e));
        }
    }
}
