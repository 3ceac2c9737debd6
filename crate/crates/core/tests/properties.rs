use proptest::prelude::*;
use zbc_core::capacity::{
    boundary_residual, mu1_lower, optimal_for_lambda, rates_general, rates_independent, solve_mu2,
    trace_boundary,
};
use zbc_core::math::{entropy_nats, phi, psi, solve_monotone_root};
use zbc_core::oracle::{
    directional_deltas, g_value, m_value, random_channel, random_interior_strategy, verify_theorem3,
};
use zbc_core::{BroadcastZChannel, RngStream};

fn channel() -> impl Strategy<Value = BroadcastZChannel> {
    (0.01f64..0.97, 0.01f64..0.99).prop_map(|(a, t)| {
        let hi = a + 0.005 + (0.995 - a - 0.005) * t;
        BroadcastZChannel::new(a, hi).unwrap()
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn entropy_is_symmetric(p in 0.0f64..=1.0) {
        prop_assert!((entropy_nats(p) - entropy_nats(1.0 - p)).abs() <= 1e-15);
    }

    #[test]
    fn entropy_is_concave(p in 0.0f64..=1.0, q in 0.0f64..=1.0, t in 0.0f64..=1.0) {
        let lhs = entropy_nats(t * p + (1.0 - t) * q);
        prop_assert!(lhs >= t * entropy_nats(p) + (1.0 - t) * entropy_nats(q) - 1e-12);
    }

    #[test]
    fn phi_is_strictly_increasing(ch in channel(), x in 0.0f64..1.0, d in 1e-6f64..1.0) {
        let y = (x + d).min(1.0);
        prop_assume!(y > x);
        prop_assert!(phi(x, &ch).unwrap() < phi(y, &ch).unwrap());
    }

    #[test]
    fn psi_is_a_probability(x in 1e-6f64..=1.0) {
        let v = psi(x).unwrap();
        prop_assert!(v > 0.0 && v < 1.0);
    }

    #[test]
    fn root_finder_inverts_phi(ch in channel(), t in 0.001f64..0.999) {
        let (lo, hi) = (phi(0.0, &ch).unwrap(), phi(1.0, &ch).unwrap());
        let lambda = lo + t * (hi - lo);
        let x = solve_monotone_root(|x| phi(x, &ch).unwrap() - lambda, 0.0, 1.0, 1e-13).unwrap();
        prop_assert!((phi(x, &ch).unwrap() - lambda).abs() <= 1e-9);
    }

    #[test]
    fn gamma_zero_reduces_to_independent(ch in channel(), mu1 in 0.0f64..=1.0, mu2 in 0.0f64..=1.0) {
        let a = rates_general(&zbc_core::Strategy::new(mu1, mu2, 0.0).unwrap(), &ch);
        let b = rates_independent(mu1, mu2, &ch);
        prop_assert!((a.r1.get() - b.r1.get()).abs() <= 1e-14, "{a:?} {b:?}");
        prop_assert!((a.r2.get() - b.r2.get()).abs() <= 1e-14, "{a:?} {b:?}");
    }

    #[test]
    fn relabeling_preserves_rates(ch in channel(), mu1 in 0.0f64..=1.0, mu2 in 0.0f64..=1.0, g in 0.0f64..=1.0) {
        let s = zbc_core::Strategy::new(mu1, mu2, g).unwrap();
        let a = rates_general(&s, &ch);
        let b = rates_general(&s.relabeled(), &ch);
        prop_assert!((a.r1.get() - b.r1.get()).abs() <= 1e-14);
        prop_assert!((a.r2.get() - b.r2.get()).abs() <= 1e-14);
    }

    #[test]
    fn rates_are_nonnegative_and_bounded(ch in channel(), mu1 in 0.0f64..=1.0, mu2 in 0.0f64..=1.0, g in 0.0f64..=1.0) {
        let (r1, r2) = rates_general(&zbc_core::Strategy::new(mu1, mu2, g).unwrap(), &ch).bits();
        prop_assert!((0.0..=1.0).contains(&r1));
        prop_assert!((0.0..=1.0).contains(&r2));
    }

    #[test]
    fn m_is_increasing_with_root_at_closed_form(ch in channel(), t in 0.0f64..=1.0, u in 0.01f64..0.99, v in 0.01f64..0.99) {
        let mu1 = mu1_lower(&ch) + t * (1.0 - mu1_lower(&ch));
        let (x, y) = if u < v { (u, v) } else { (v, u) };
        prop_assume!(y - x > 1e-6);
        prop_assert!(m_value(x, mu1, &ch).unwrap() < m_value(y, mu1, &ch).unwrap());
        let mu2 = solve_mu2(mu1, &ch).unwrap();
        prop_assume!(mu2 < 1.0 - 1e-6);
        let root = solve_monotone_root(|m| m_value(m, mu1, &ch).unwrap(), 1e-12, 1.0, 1e-13).unwrap();
        prop_assert!(close(root, mu2, 1e-8), "root {root} closed form {mu2}");
    }

    #[test]
    fn directional_signs_and_slope_inequality(seed in any::<u64>()) {
        let mut rng = RngStream::new(seed, 0);
        let ch = random_channel(&mut rng);
        let s = random_interior_strategy(&mut rng, 1e-3);
        let r = directional_deltas(&s, &ch, 1e-6).unwrap();
        prop_assert!(r.signs_ok(), "{s:?} {r:?}");
        prop_assert!(r.slope_inequality_holds(), "{s:?} {r:?}");
    }

    #[test]
    fn g_derivative_in_a_is_positive(b in 0.01f64..0.98, t in 0.01f64..0.99) {
        let a = b + t * (0.99 - b);
        let h = 1e-6;
        let d = (g_value(a + h, b).unwrap() - g_value(a - h, b).unwrap()) / (2.0 * h);
        prop_assert!(d > 0.0, "a={a} b={b} dg/da={d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn traced_boundary_satisfies_the_optimality_condition(ch in channel()) {
        for p in trace_boundary(&ch, 50).unwrap() {
            prop_assert!(boundary_residual(p.mu1, p.mu2, &ch).abs() <= 1e-9, "{p:?}");
        }
    }

    #[test]
    fn boundary_beats_every_weighted_objective(ch in channel(), lambda in 0.0f64..20.0, mu1 in 0.0f64..=1.0, mu2 in 0.0f64..=1.0) {
        let best = optimal_for_lambda(lambda, &ch).unwrap().point.rates.weighted(lambda);
        let other = rates_independent(mu1, mu2, &ch).weighted(lambda);
        prop_assert!(other <= best + 1e-12);
    }
}

#[test]
fn g_is_positive_on_the_strict_grid() {
    for i in 1..100 {
        for j in 1..i {
            let (a, b) = (i as f64 / 100.0, j as f64 / 100.0);
            assert!(g_value(a, b).unwrap() > 0.0, "g({a}, {b})");
        }
    }
}

#[test]
fn weighted_sum_grid_agrees_with_closed_form() {
    let ch = BroadcastZChannel::new(0.15, 0.6).unwrap();
    let hi = phi(1.0, &ch).unwrap();
    let mut seen = [false; 3];
    for k in 0..20 {
        // Spread over [0, 1.3 * phi(1)] so both threshold regions are hit.
        let lambda = 1.3 * hi * k as f64 / 19.0;
        let r = verify_theorem3(lambda, &ch, 1e-3).unwrap();
        assert!(r.agree, "{r:?}");
        assert!(r.grid_objective <= r.closed_objective + 1e-12, "{r:?}");
        seen[r.case as usize - 1] = true;
    }
    assert_eq!(seen, [true; 3]);
}
