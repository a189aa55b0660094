use num_complex::Complex64;
use proptest::prelude::*;
use sinkhop_core::elliptic::{carlson_rf, ellip_e, ellip_f};
use sinkhop_core::hop::hop_distribution;
use sinkhop_core::measure::q_rescaled;
use sinkhop_core::model::{circle_intersection, sink_angle};
use sinkhop_core::qmc::{halton_point, korobov_vector, lattice_point, ImportanceSampler};
use sinkhop_core::sim::{route_seeded, Outcome};
use sinkhop_core::{MeasureMode, ModelParams, PolarPoint};

const R: f64 = 1.0;

fn params() -> ModelParams {
    ModelParams::new(30.0, R, 10.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sink_angle_shrinks_with_distance(g2 in 1.05f64..20.0, d in 0.0f64..5.0, s in 0.0f64..=1.0) {
        let g1 = g2 + d;
        let lo = g1 - R;
        let hi = g2.min(g1);
        prop_assume!(hi > lo);
        let u = lo + s * (hi - lo);
        prop_assert!(sink_angle(g1, u, R).unwrap() <= sink_angle(g2, u, R).unwrap() + 1e-15);
    }

    #[test]
    fn sink_angle_rises_to_tangent(g in 1.05f64..30.0, s in 0.0f64..0.999) {
        let top = (g * g - R * R).sqrt();
        let u = g - R + s * (top - (g - R));
        let h = 1e-3 * (top - u);
        prop_assert!(sink_angle(g, u + h, R).unwrap() >= sink_angle(g, u, R).unwrap());
    }

    #[test]
    fn circle_crossing_is_on_both_circles(u0 in 2.0f64..20.0, s in 0.01f64..1.0, w in -1.0f64..1.0, t0 in -3.0f64..3.0) {
        let u1 = u0 - s * R;
        let x0 = PolarPoint::new(u0, t0);
        let x1 = PolarPoint::new(u1, t0 + w * sink_angle(u0, u1, R).unwrap());
        let geo = circle_intersection(x0, x1, R).unwrap();
        prop_assert!((geo.point.distance(x0) - R).abs() <= 1e-10);
        prop_assert!((geo.point.distance(x1) - R).abs() <= 1e-10);
    }

    #[test]
    fn carlson_rf_is_homogeneous(x in 0.01f64..10.0, y in 0.01f64..10.0, z in 0.01f64..10.0, t in 0.1f64..10.0) {
        let c = |v: f64| Complex64::new(v, 0.0);
        let base = carlson_rf(c(x), c(y), c(z)).unwrap();
        let scaled = carlson_rf(c(t * x), c(t * y), c(t * z)).unwrap();
        prop_assert!((scaled - base / t.sqrt()).norm() <= 1e-10 * base.norm());
    }

    #[test]
    fn legendre_integrals_are_odd(phi in 0.0f64..1.5, k in 0.0f64..0.99) {
        prop_assert!((ellip_f(-phi, k).unwrap() + ellip_f(phi, k).unwrap()).norm() < 1e-14);
        prop_assert!((ellip_e(-phi, k).unwrap() + ellip_e(phi, k).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn measures_nondecreasing(g in 4.0f64..30.0, s in 0.0f64..0.99, m in 0usize..4) {
        let mode = [MeasureMode::ExactElliptic, MeasureMode::Quadrature, MeasureMode::Asymptotic2, MeasureMode::Asymptotic3][m];
        let u = g - R + s * R;
        let a = q_rescaled(g, u, R, mode).unwrap();
        let b = q_rescaled(g, u + 0.01 * R, R, mode).unwrap();
        prop_assert!(b >= a);
    }

    #[test]
    fn nearer_nodes_hop_further(g2 in 2.05f64..15.0, d in 0.0f64..10.0, c in 0.001f64..0.999) {
        let p = params();
        let near = hop_distribution(g2, &p, MeasureMode::ExactElliptic).unwrap();
        let far = hop_distribution(g2 + d, &p, MeasureMode::ExactElliptic).unwrap();
        prop_assert!(far.cdf(c).unwrap() >= near.cdf(c).unwrap() - 1e-12);
    }

    #[test]
    fn hop_cdf_is_a_distribution(g in 1.5f64..15.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let d = hop_distribution(g, &params(), MeasureMode::ExactElliptic).unwrap();
        let (lo, hi) = (a.min(b), a.max(b));
        let (fl, fh) = (d.cdf(lo).unwrap(), d.cdf(hi).unwrap());
        prop_assert!((0.0..=1.0).contains(&fl) && (0.0..=1.0).contains(&fh));
        prop_assert!(fh >= fl);
        prop_assert!(d.void_atom() > 0.0);
        prop_assert!(d.cdf(-1e-12).unwrap() == 0.0);
    }

    #[test]
    fn halton_points_in_unit_cube(i in 1u64..1_000_000, dim in 1usize..12) {
        for x in halton_point(i, dim, 409).unwrap() {
            prop_assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn lattice_points_in_unit_cube(k in 1u64..=1024, shift in proptest::collection::vec(0.0f64..1.0, 4)) {
        let z = [1u64, 433, 229, 671];
        for x in lattice_point(k, &z, 1024, &shift).unwrap() {
            prop_assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn importance_round_trip(g in 4.0f64..20.0, lambda in 1.0f64..100.0, cm in 0.05f64..=1.0, s in 0.0f64..=1.0) {
        let smp = ImportanceSampler::new(g, lambda, R, cm).unwrap();
        let c = s * cm;
        prop_assert!((smp.inverse(smp.cdf(c).unwrap()).unwrap() - c).abs() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn greedy_paths_descend(seed in any::<u64>(), idx in 0u64..1000, lambda in 5.0f64..40.0) {
        let p = ModelParams::new(lambda, R, 6.0).unwrap();
        let rec = route_seeded(&p, seed, idx, false);
        for w in rec.path.windows(2) {
            prop_assert!(w[1].u < w[0].u);
            prop_assert!(w[0].distance(w[1]) <= R + 1e-12);
        }
        if let Outcome::Delivered { hops } = rec.outcome {
            prop_assert_eq!(hops, rec.hops.len() + 1);
            prop_assert!(rec.path.last().unwrap().u <= R);
        }
        prop_assert_eq!(&rec, &route_seeded(&p, seed, idx, false));
    }
}

#[test]
fn korobov_generator_is_coprime() {
    let z = korobov_vector(1024, 4).unwrap();
    assert_eq!(z[0], 1);
    assert!(z.iter().all(|v| v % 2 == 1));
}

#[test]
fn asymptotic_moments_track_exact() {
    let p = params();
    for gamma in [4.0, 6.0, 10.0, 20.0] {
        for m in [1, 2] {
            let e = sinkhop_core::hop::moment_numeric(gamma, m, &p, MeasureMode::ExactElliptic).unwrap();
            let a = sinkhop_core::hop::moment_numeric(gamma, m, &p, MeasureMode::Asymptotic3).unwrap();
            assert!((a - e).abs() <= 1e-3 * e, "γ={gamma} m={m}: {a} vs {e}");
        }
    }
}
