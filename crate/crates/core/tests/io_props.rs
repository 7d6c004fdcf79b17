use frechet_core::io::{parse_batch_csv, parse_curve_csv, parse_discrete_law_json, parse_law};
use frechet_core::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parsers_never_panic(text in ".{0,200}") {
        let _ = parse_curve_csv(&text);
        let _ = parse_law(&text);
        let _ = parse_batch_csv(&text);
        let _ = parse_discrete_law_json(&text);
    }

    #[test]
    fn csv_like_text_never_panics(text in "[0-9eE.,+\\-# \\n]{0,120}") {
        let _ = parse_curve_csv(&text);
        let _ = parse_law(&text);
        let _ = parse_batch_csv(&text);
    }

    #[test]
    fn curve_round_trip(rows in prop::collection::vec(prop::collection::vec(-1e6..1e6f64, 3), 1..10)) {
        let text: String = rows.iter().map(|r| format!("{},{},{}\n", r[0], r[1], r[2])).collect();
        let p = parse_curve_csv(&text).unwrap();
        prop_assert_eq!(p.first(), &rows[0][..]);
        prop_assert_eq!(p.last(), &rows[rows.len() - 1][..]);
    }

    #[test]
    fn bad_row_reports_its_line(good in 0usize..5) {
        let mut text: String = (0..good).map(|i| format!("{i},{i}\n")).collect();
        text.push_str("1,oops\n");
        match parse_curve_csv(&text) {
            Err(Error::Parse { line, .. }) => prop_assert_eq!(line, good + 1),
            other => prop_assert!(false, "{:?}", other),
        }
    }
}
