use proptest::prelude::*;

use tpass::equilibrium::{build_dual_lp1, build_lp1, build_prop3_lp, feasible_scalars};
use tpass::lp::{dualize, solve_default};
use tpass::oracle::{enumerate_equilibria, is_bimatrix_equilibrium};
use tpass::rng::SplitMix64;
use tpass::{
    check_prop3, compose, cross_check, random_tpass, solve_equilibrium, solve_prop3,
    verify_prop2, BimatrixGame, Matrix, MixedStrategy, TpassGame,
};

fn game_strategy(max: usize) -> impl Strategy<Value = (TpassGame, u64)> {
    (1usize..=max, 1usize..=max, any::<u64>())
        .prop_map(|(m, n, seed)| (random_tpass(m, n, -1.0, 1.0, seed).unwrap(), seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_builder_is_the_dual((g, _) in game_strategy(8)) {
        prop_assert!(dualize(&build_lp1(&g)).equivalent(&build_dual_lp1(&g), 0.0));
    }

    #[test]
    fn lp_equilibrium_is_certified((g, _) in game_strategy(8)) {
        let e = solve_equilibrium(&g, 1e-8).unwrap();
        let r = g.is_equilibrium(&e.p, &e.q, 1e-8).unwrap();
        prop_assert!(r.is_equilibrium);
        prop_assert!((e.alpha - g.payoff_row(&e.p, &e.q).unwrap()).abs() <= 1e-8);
        prop_assert!((e.beta - g.payoff_col(&e.p, &e.q).unwrap()).abs() <= 1e-8);
        prop_assert!(e.slackness_residual <= 1e-8);
        prop_assert!(verify_prop2(&g, &e.p, &e.q, 1e-8).unwrap().passed);
        prop_assert!(check_prop3(&g, &e.p, &e.q, 1e-8).unwrap());
    }

    #[test]
    fn primal_and_dual_values_agree((g, _) in game_strategy(8)) {
        let p = solve_default(&build_lp1(&g)).unwrap();
        let d = solve_default(&build_dual_lp1(&g)).unwrap();
        prop_assert!((p.objective_value - d.objective_value).abs() <= 1e-8);
    }

    #[test]
    fn joint_program_optimum_is_zero((g, _) in game_strategy(8)) {
        let (e, v) = solve_prop3(&g, 1e-8).unwrap();
        prop_assert!(v.abs() <= 1e-8);
        prop_assert!(g.is_equilibrium(&e.p, &e.q, 1e-8).unwrap().is_equilibrium);
    }

    #[test]
    fn joint_program_objective_never_positive((g, seed) in game_strategy(6)) {
        let mut rng = SplitMix64::new(seed ^ 0xBEEF);
        let model = build_prop3_lp(&g);
        for _ in 0..20 {
            let p = MixedStrategy::new(rng.simplex_point(g.m())).unwrap();
            let q = MixedStrategy::new(rng.simplex_point(g.n())).unwrap();
            let (a, b) = feasible_scalars(&g, &p, &q);
            let (a, b) = (a + rng.next_f64(), b + rng.next_f64());
            let mut x = p.weights().to_vec();
            x.extend_from_slice(q.weights());
            x.extend([a, b]);
            prop_assert!(model.primal_violation(&x) <= 1e-12);
            prop_assert!(model.objective_at(&x) <= 1e-12);
        }
    }

    #[test]
    fn check_prop3_matches_best_response((g, seed) in game_strategy(6)) {
        let mut rng = SplitMix64::new(seed ^ 0xF00D);
        for _ in 0..20 {
            let p = MixedStrategy::new(rng.simplex_point(g.m())).unwrap();
            let q = MixedStrategy::new(rng.simplex_point(g.n())).unwrap();
            let a = g.is_equilibrium(&p, &q, 1e-8).unwrap().is_equilibrium;
            prop_assert_eq!(a, check_prop3(&g, &p, &q, 1e-8).unwrap());
            prop_assert_eq!(a, verify_prop2(&g, &p, &q, 1e-8).unwrap().passed);
        }
    }

    #[test]
    fn oracle_equilibria_are_sound((g, _) in game_strategy(4)) {
        for e in enumerate_equilibria(&compose(&g), 1e-9).unwrap() {
            prop_assert!(g.is_equilibrium(&e.p, &e.q, 1e-8).unwrap().is_equilibrium);
            prop_assert!(verify_prop2(&g, &e.p, &e.q, 1e-8).unwrap().passed);
        }
    }

    #[test]
    fn oracle_confirms_lp((g, _) in game_strategy(4)) {
        let e = solve_equilibrium(&g, 1e-8).unwrap();
        prop_assert!(cross_check(&g, &e, 1e-8).unwrap());
    }

    #[test]
    fn zero_sum_payoffs_are_opposite((g, _) in game_strategy(6)) {
        let z = TpassGame::new(g.kernel().clone(), vec![0.0; g.m()], vec![0.0; g.n()]).unwrap();
        let e = solve_equilibrium(&z, 1e-8).unwrap();
        prop_assert!((e.alpha + e.beta).abs() <= 1e-9);
    }
}

/// Random general bimatrix games with distinct payoffs are nondegenerate
/// with probability one and then have an odd number of equilibria.
#[test]
fn oracle_counts_are_odd_on_generic_games() {
    let mut rng = SplitMix64::new(2024);
    for _ in 0..300 {
        let m = 1 + rng.below(4);
        let n = 1 + rng.below(4);
        let b = Matrix::from_fn(m, n, |_, _| rng.uniform(-1.0, 1.0));
        let c = Matrix::from_fn(m, n, |_, _| rng.uniform(-1.0, 1.0));
        let mut all: Vec<f64> = b.as_slice().iter().chain(c.as_slice()).copied().collect();
        all.sort_by(f64::total_cmp);
        if all.windows(2).any(|w| w[1] - w[0] < 1e-9) {
            continue;
        }
        let bg = BimatrixGame::new(b, c).unwrap();
        let eqs = enumerate_equilibria(&bg, 1e-9).unwrap();
        assert_eq!(eqs.len() % 2, 1, "{bg:?} -> {eqs:?}");
        for e in &eqs {
            assert!(is_bimatrix_equilibrium(&bg, e.p.weights(), e.q.weights(), 1e-9));
        }
    }
}

#[test]
fn oracle_output_is_sorted_by_support() {
    let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let bg = BimatrixGame::from_rows(&id, &id).unwrap();
    let eqs = enumerate_equilibria(&bg, 1e-9).unwrap();
    // 3 pure, 3 two-strategy mixes, 1 full mix.
    assert_eq!(eqs.len(), 7);
    assert!(eqs.windows(2).all(|w| w[0].support <= w[1].support));
}

#[test]
fn zero_game_oracle_and_lp() {
    let z = TpassGame::zero(2, 3).unwrap();
    let e = solve_equilibrium(&z, 1e-8).unwrap();
    assert!(e.alpha.abs() < 1e-12 && e.beta.abs() < 1e-12);
    assert!(cross_check(&z, &e, 1e-8).unwrap());
    // Every pure pair is an equilibrium of the zero game.
    assert_eq!(enumerate_equilibria(&compose(&z), 1e-9).unwrap().len(), 6);
}
