//! Invariants over random inputs.

use greywolf::dist::{box_di, cdf_g, mn_params, pdf_h, GridSpec};
use greywolf::gwo::{update_agent, update_leaders, LeaderTriple, Position};
use greywolf::moments::{
    central_moment_step, moment_trajectory, raw_from_central, stability_bounds, variance_sequence, PTriple,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coord() -> impl Strategy<Value = f64> {
    -5.0..5.0f64
}

fn triple() -> impl Strategy<Value = PTriple> {
    (coord(), coord(), coord()).prop_map(|(a, b, c)| PTriple::new(a, b, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cdf_is_monotone_and_symmetric(a in 0.05..2.0f64, p in coord(), x in coord(), y in 0.0..12.0f64, dy in 0.0..1.0f64) {
        let sp = mn_params(a, p, x).unwrap();
        prop_assume!(!sp.is_degenerate());
        let g = |u| cdf_g(u, &sp).unwrap();
        prop_assert!((g(p + y) + g(p - y) - 1.0).abs() < 1e-14);
        prop_assert!(g(p + y + dy) >= g(p + y));
        prop_assert!((0.0..=1.0).contains(&g(p + y)));
    }

    #[test]
    fn update_density_normalized_and_symmetric(a in 0.1..2.0f64, p in triple(), x in coord()) {
        let h = pdf_h(&GridSpec::fixed(512), a, p.as_array(), x).unwrap();
        prop_assert!((h.integral() - 1.0).abs() < 1e-6);
        let v = h.values();
        let n = v.len();
        for i in 0..n / 2 {
            prop_assert!((v[i] - v[n - 1 - i]).abs() <= 1e-9 * h.max());
        }
        prop_assert!((0.5 * (h.lo() + h.hi()) - p.center()).abs() < 1e-12 * (1.0 + p.center().abs()));
    }

    #[test]
    fn updated_agent_stays_in_box(
        a in 0.0..2.0f64,
        leaders in prop::collection::vec((coord(), coord(), coord()), 1..5),
        x in prop::collection::vec(coord(), 5),
        seed in any::<u64>(),
    ) {
        let d = leaders.len();
        let x = &x[..d];
        let p: [Vec<f64>; 3] = [
            leaders.iter().map(|l| l.0).collect(),
            leaders.iter().map(|l| l.1).collect(),
            leaders.iter().map(|l| l.2).collect(),
        ];
        let triple = LeaderTriple::frozen(
            Position::new(p[0].clone()).unwrap(),
            Position::new(p[1].clone()).unwrap(),
            Position::new(p[2].clone()).unwrap(),
        ).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let next = update_agent(x, &triple, a, &mut rng).unwrap();
        prop_assume!(a > 0.0);
        let b = box_di(a, &p[0], &p[1], &p[2], x).unwrap();
        for (j, side) in b.sides().iter().enumerate() {
            prop_assert!(next[j] >= side.lo() - 1e-12 && next[j] <= side.hi() + 1e-12);
        }
    }

    #[test]
    fn leader_cascade_keeps_order(f in prop::collection::vec(-10.0..10.0f64, 3..40)) {
        let mut init = f[..3].to_vec();
        init.sort_by(f64::total_cmp);
        let pos = |v: f64| Position::new(vec![v]).unwrap();
        let mut leaders = LeaderTriple::new([pos(init[0]), pos(init[1]), pos(init[2])], [init[0], init[1], init[2]]).unwrap();
        for &v in &f[3..] {
            let before = leaders.fitness();
            leaders = update_leaders(&leaders, &pos(v), v);
            let after = leaders.fitness();
            prop_assert!(after[0] <= before[0]);
            prop_assert!(after.iter().zip(before).filter(|&(&x, y)| x != y).count() <= 1);
            prop_assert!(after[0] <= after[1] && after[1] <= after[2]);
        }
    }

    #[test]
    fn terminal_variance_below_bound(p in triple(), total in 20usize..500) {
        let d = variance_sequence(&p, total, (-4.0, 4.0)).unwrap();
        let (_, bound) = stability_bounds(d.at(1), total, &p, total).unwrap();
        prop_assert!(d.terminal() < bound);
        prop_assert!(d.d.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn trajectory_odd_moments_vanish(p in triple(), total in 2usize..40) {
        let traj = moment_trajectory(4, &p, total, (-4.0, 4.0)).unwrap();
        for t in 2..=total {
            prop_assert_eq!(traj.central(t, 1), 0.0);
            prop_assert_eq!(traj.central(t, 3), 0.0);
            prop_assert_eq!(traj.mean(t), p.center());
        }
        let dyn_ = variance_sequence(&p, total, (-4.0, 4.0)).unwrap();
        for t in 2..=total {
            let (x, y) = (traj.variance(t), dyn_.at(t));
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-300));
        }
    }

    #[test]
    fn odd_order_step_is_zero(a in 0.1..2.0f64, p in triple(), m in coord()) {
        let raw: Vec<f64> = (0..=5).map(|l| m.powi(l)).collect();
        prop_assert_eq!(central_moment_step(3, a, &p, &raw).unwrap(), 0.0);
        prop_assert_eq!(central_moment_step(5, a, &p, &raw).unwrap(), 0.0);
    }

    #[test]
    fn raw_of_centered_values(c in coord(), v in 0.0..5.0f64) {
        let central = [1.0, 0.0, v];
        prop_assert_eq!(raw_from_central(0, c, &central).unwrap(), 1.0);
        prop_assert!((raw_from_central(1, c, &central).unwrap() - c).abs() < 1e-15);
        prop_assert!((raw_from_central(2, c, &central).unwrap() - (c * c + v)).abs() < 1e-12);
    }
}
