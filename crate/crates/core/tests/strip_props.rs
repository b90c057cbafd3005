use frieze_core::{
    count_by_recurrence, count_matchings, count_matchings_naive, entry_recurrence, realize_strip, QuiddityRow,
    StripError, StripTriangulation,
};
use proptest::prelude::*;

fn accepted(q: &QuiddityRow) -> Option<StripTriangulation> {
    match realize_strip(q) {
        Ok(t) => Some(t),
        Err(StripError::AdjacentOnes { .. } | StripError::ZeroEntry { .. }) => None,
        Err(e) => panic!("unexpected failure {e}"),
    }
}

fn windows() -> impl Strategy<Value = QuiddityRow> {
    (-5i64..5, prop::collection::vec(1u64..=5, 1..=7))
        .prop_map(|(lo, e)| QuiddityRow::windowed(lo, e).unwrap())
        .prop_filter("accepted", |q| accepted(q).is_some())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strips_realize_their_window(q in windows()) {
        let t = realize_strip(&q).unwrap();
        prop_assert!(t.check().is_ok());
        prop_assert_eq!(t.spill, 0);
        let (lo, hi) = t.core;
        let (wlo, whi) = q.window().unwrap();
        prop_assert!(lo < wlo && whi < hi);
        let expect: Vec<u64> = (lo..=hi).map(|i| q.get(i)).collect();
        prop_assert_eq!(t.strip_quiddity(lo, hi).unwrap(), expect);
    }

    #[test]
    fn matchings_are_frieze_entries(q in windows()) {
        let t = realize_strip(&q).unwrap();
        let (lo, hi) = t.core;
        for i in lo..=hi {
            for j in i - 2..=(i + 5).min(hi) {
                let counted = count_matchings(&t, i, j).unwrap();
                prop_assert_eq!(&counted, &entry_recurrence(&q, i, j).unwrap());
                if j - i <= 3 {
                    prop_assert_eq!(&counted, &count_matchings_naive(&t, i, j).unwrap());
                }
                if !t.has_lower_peripheral() {
                    prop_assert_eq!(&counted, &count_by_recurrence(&t, i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn windows_with_adjacent_ones_are_rejected(lo in -3i64..3, pre in prop::collection::vec(2u64..=5, 0..3)) {
        let mut e = pre.clone();
        e.extend([1, 1]);
        e.extend(pre.iter().rev());
        let rejected = matches!(realize_strip(&QuiddityRow::windowed(lo, e).unwrap()), Err(StripError::AdjacentOnes { .. }));
        prop_assert!(rejected);
    }
}
