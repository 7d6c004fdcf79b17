use frechet_core::curve::{
    directed_maxmin, discrete_frechet, dtw, frechet_decision, frechet_distance, hausdorff, shortest_distance, Polyline,
};
use proptest::prelude::*;

const TOL: f64 = 1e-9;
const RESOLUTION: f64 = 1e-2;

fn polyline(dim: usize) -> impl Strategy<Value = Polyline> {
    prop::collection::vec(prop::collection::vec(-5.0..5.0f64, dim), 1..7)
        .prop_map(|rows| Polyline::from_rows(rows).unwrap())
}

fn slack(d: f64) -> f64 {
    TOL * d.max(1.0)
}

fn norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn symmetric(p in polyline(2), q in polyline(2)) {
        let a = frechet_distance(&p, &q, TOL).unwrap().value;
        let b = frechet_distance(&q, &p, TOL).unwrap().value;
        prop_assert!((a - b).abs() <= 2.0 * slack(a.max(b)), "{a} vs {b}");
    }

    #[test]
    fn identity(p in polyline(3)) {
        prop_assert!(frechet_distance(&p, &p, TOL).unwrap().value <= TOL);
        prop_assert_eq!(discrete_frechet(&p, &p).unwrap(), 0.0);
        prop_assert_eq!(dtw(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn triangle(p in polyline(2), q in polyline(2), r in polyline(2)) {
        let pr = frechet_distance(&p, &r, TOL).unwrap().value;
        let pq = frechet_distance(&p, &q, TOL).unwrap().value;
        let qr = frechet_distance(&q, &r, TOL).unwrap().value;
        prop_assert!(pr <= pq + qr + 3.0 * slack(pr.max(pq + qr)));
    }

    #[test]
    fn inserted_vertex_changes_nothing(p in polyline(2), q in polyline(2), at in 0.0..1.0f64, edge in 0usize..6) {
        prop_assume!(p.edge_count() > 0);
        let i = edge % p.edge_count();
        let mut rows: Vec<Vec<f64>> = p.vertices().map(<[f64]>::to_vec).collect();
        rows.insert(i + 1, p.point_at(i as f64 + at));
        let refined = Polyline::from_rows(rows).unwrap();
        let a = frechet_distance(&p, &q, TOL).unwrap().value;
        let b = frechet_distance(&refined, &q, TOL).unwrap().value;
        prop_assert!((a - b).abs() <= slack(a), "{a} vs {b}");
    }

    #[test]
    fn decision_is_monotone(p in polyline(2), q in polyline(2), eps in 0.0..10.0f64, extra in 0.0..5.0f64) {
        if frechet_decision(&p, &q, eps).unwrap() {
            prop_assert!(frechet_decision(&p, &q, eps + extra).unwrap());
        }
    }

    #[test]
    fn decision_agrees_with_distance(p in polyline(2), q in polyline(2)) {
        let r = frechet_distance(&p, &q, TOL).unwrap();
        prop_assert!(frechet_decision(&p, &q, r.hi).unwrap());
        prop_assert!(r.lo <= r.value && r.value <= r.hi);
    }

    #[test]
    fn ordering_chain(p in polyline(2), q in polyline(2)) {
        let f = frechet_distance(&p, &q, TOL).unwrap().value;
        let lambda = shortest_distance(&p, &q, RESOLUTION).unwrap();
        let mu = directed_maxmin(&p, &q, RESOLUTION).unwrap();
        prop_assert!(lambda <= mu && mu <= f + 1e-12, "{lambda} {mu} {f}");
        let h = hausdorff(&p, &q, RESOLUTION).unwrap();
        prop_assert!(h <= f + RESOLUTION);
        let ends = norm(p.first(), q.first()).max(norm(p.last(), q.last()));
        prop_assert!(ends <= f + 1e-12 && f <= discrete_frechet(&p, &q).unwrap() + 1e-12);
    }

    #[test]
    fn densifying(p in polyline(2), q in polyline(2)) {
        let f = frechet_distance(&p, &q, TOL).unwrap().value;
        let mut prev = discrete_frechet(&p, &q).unwrap();
        for k in [2, 4, 8] {
            let (pk, qk) = (p.subdivide(k), q.subdivide(k));
            let fk = frechet_distance(&pk, &qk, TOL).unwrap().value;
            prop_assert!((fk - f).abs() <= slack(f), "k={k}: {fk} vs {f}");
            let dk = discrete_frechet(&pk, &qk).unwrap();
            prop_assert!(dk <= prev + 1e-12 && dk >= f - slack(f), "k={k}: {dk} after {prev}");
            prev = dk;
        }
    }

    #[test]
    fn translation_invariant(p in polyline(2), q in polyline(2), v in prop::collection::vec(-3.0..3.0f64, 2)) {
        let a = frechet_distance(&p, &q, TOL).unwrap().value;
        let b = frechet_distance(&p.translate(&v).unwrap(), &q.translate(&v).unwrap(), TOL).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-6 * a.max(1.0));
    }

    #[test]
    fn reversal_invariant(p in polyline(2), q in polyline(2)) {
        let a = frechet_distance(&p, &q, TOL).unwrap().value;
        let b = frechet_distance(&p.reversed(), &q.reversed(), TOL).unwrap().value;
        prop_assert!((a - b).abs() <= 2.0 * slack(a.max(b)));
        prop_assert!((dtw(&p, &q).unwrap() - dtw(&p.reversed(), &q.reversed()).unwrap()).abs() <= 1e-9);
    }
}
