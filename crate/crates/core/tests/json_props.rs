use frieze_core::annulus::realize;
use frieze_core::json::{parse, to_json, Surface};
use frieze_core::{classify, realize_strip, svg, Outcome, QuiddityRow};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn annulus_json_roundtrips(q in prop::collection::vec(1u64..=6, 1..=6)) {
        let infinite = matches!(classify(&q).unwrap().outcome, Outcome::Infinite { .. });
        prop_assume!(infinite);
        let s: Surface = realize(&q).unwrap().into();
        let text = to_json(&s);
        prop_assert_eq!(&parse(&text).unwrap(), &s);
        let drawing = svg::render(&s);
        let Surface::Annulus(t) = &s else { unreachable!() };
        prop_assert_eq!(drawing.matches("<path ").count(), t.arcs.len());
        prop_assert_eq!(drawing.matches("<line class=\"boundary\"").count(), 2);
    }

    #[test]
    fn strip_json_roundtrips(lo in -4i64..4, e in prop::collection::vec(1u64..=5, 1..=6)) {
        let Ok(t) = realize_strip(&QuiddityRow::windowed(lo, e).unwrap()) else { return Ok(()) };
        let s: Surface = t.into();
        let text = to_json(&s);
        prop_assert_eq!(parse(&text).unwrap(), s);
    }
}
