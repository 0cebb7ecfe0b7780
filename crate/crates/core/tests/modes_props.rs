use dce_core::modes::{
    matching_residual, mode_from_amplitudes, robin_dirichlet_residual, solve_modes, solve_scattering,
    u_matrix_residual, Incidence,
};
use dce_core::scattering::{amplitudes, MirrorModel};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn draw_lambda(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let l: f64 = rng.random_range(-3.0..=3.0);
        if (l.abs() - 1.0).abs() > 1e-6 {
            return l;
        }
    }
}

#[test]
fn solver_reproduces_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = [0.0f64; 3];
    for _ in 0..500 {
        let mu = 10.0 - rng.random_range(0.0..10.0);
        let lambda = draw_lambda(&mut rng);
        let omega = 10.0 - rng.random_range(0.0..10.0);
        let got = solve_scattering(mu, lambda, omega).unwrap();
        let want = amplitudes(&MirrorModel::DeltaDeltaPrime { mu, lambda }, omega).unwrap();
        for z in [
            got.s_plus - want.s_plus,
            got.s_minus - want.s_minus,
            got.r_plus - want.r_plus,
            got.r_minus - want.r_minus,
        ] {
            worst[0] = worst[0].max(z.norm());
        }
        for mode in solve_modes(mu, lambda, omega).unwrap() {
            let (a, b) = matching_residual(mu, lambda, &mode.boundary_values()).unwrap();
            worst[1] = worst[1].max(a).max(b);
            worst[2] = worst[2].max(u_matrix_residual(mu, lambda, &mode));
        }
    }
    assert!(worst.iter().all(|&w| w <= 1e-12), "amplitude / matching / U residuals: {worst:?}");
}

#[test]
fn matching_floor_tracks_transfer_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let mu = 10.0 - rng.random_range(0.0..10.0);
        let omega = 10.0 - rng.random_range(0.0..10.0);
        let gap = 10f64.powf(rng.random_range(-6.0..-1.0));
        for lambda in [1.0 - gap, 1.0 + gap, -1.0 + gap, -1.0 - gap] {
            let k: f64 = (1.0 + lambda) / (1.0 - lambda);
            let kappa = 1f64.max(k.abs()).max(1.0 / k.abs());
            for mode in solve_modes(mu, lambda, omega).unwrap() {
                let (a, b) = matching_residual(mu, lambda, &mode.boundary_values()).unwrap();
                assert!(a.max(b) <= 1e-12 * kappa, "mu={mu} lambda={lambda} omega={omega}: {a} {b}");
            }
        }
    }
}

#[test]
fn unit_lambda_boundary_conditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let mu = 10.0 - rng.random_range(0.0..10.0);
        let omega = 10.0 - rng.random_range(0.0..10.0);
        let sa = amplitudes(&MirrorModel::DeltaDeltaPrime { mu, lambda: 1.0 }, omega).unwrap();
        for inc in [Incidence::Left, Incidence::Right] {
            let (robin, dirichlet) = robin_dirichlet_residual(mu, &mode_from_amplitudes(&sa, inc)).unwrap();
            assert!(robin <= 1e-12 && dirichlet <= 1e-12, "mu={mu} omega={omega}: {robin} {dirichlet}");
        }
    }
}

proptest! {
    #[test]
    fn flux_is_conserved(mu in 0.0f64..10.0, lambda in -3.0f64..3.0, omega in 1e-3f64..10.0) {
        prop_assume!((lambda.abs() - 1.0).abs() > 1e-6);
        for mode in solve_modes(mu, lambda, omega).unwrap() {
            prop_assert!(mode.flux_defect().abs() <= 1e-12);
        }
    }

    #[test]
    fn singularity_is_removable(mu in 0.01f64..10.0, omega in 0.01f64..10.0, sign in prop::bool::ANY) {
        let one = if sign { 1.0 } else { -1.0 };
        let closed = amplitudes(&MirrorModel::DeltaDeltaPrime { mu, lambda: one }, omega).unwrap();
        for l in [one - 1e-6, one + 1e-6] {
            let sa = solve_scattering(mu, l, omega).unwrap();
            prop_assert!((sa.s_plus - closed.s_plus).norm() < 1e-4);
            prop_assert!((sa.r_plus - closed.r_plus).norm() < 1e-4);
            prop_assert!((sa.r_minus - closed.r_minus).norm() < 1e-4);
        }
    }
}
