use std::f64::consts::PI;

use molsim::micromaser::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use qdyn_core::{eig_decompose_matrix, rk4_integrate, Tolerances, C64};

/// Truncated single-mode micromaser distribution `P(n) ∝ Π_{k≤n} N_ex sin²(θ_k)/k`.
fn detailed_balance(n_ex: f64, chi_tau: f64, n_max: usize) -> Vec<f64> {
    let mut p = vec![1.0];
    for k in 1..=n_max {
        let last = p[k - 1];
        p.push(last * n_ex * (chi_tau * (k as f64).sqrt()).sin().powi(2) / k as f64);
    }
    let z: f64 = p.iter().sum();
    p.iter().map(|x| x / z).collect()
}

fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

fn random_state(n_max: usize, seed: u64) -> TwoModeDensityMatrix {
    let space = TwoModeSpace::new(n_max);
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    let blocks: Vec<DMatrix<C64>> = (0..space.num_blocks())
        .map(|n| {
            let d = space.block_dim(n);
            let a = DMatrix::from_fn(d, d, |_, _| C64::new(next(), next()));
            &a * a.adjoint()
        })
        .collect();
    let tr: f64 = blocks.iter().map(|m| m.trace().re).sum();
    let blocks = blocks.into_iter().map(|m| m / C64::from(tr)).collect();
    TwoModeDensityMatrix::from_blocks(n_max, blocks).unwrap()
}

#[test]
fn gain_map_is_completely_positive_and_trace_preserving() {
    for (theta, eta, beta) in [(1.1, 0.0, 0.0), (PI, 0.0, 0.0), (2.3, 0.4, -0.2)] {
        let n_max = 4;
        let params = MicromaserParams { theta, eta, beta, n_max, ..Default::default() };
        let space = TwoModeSpace::new(n_max);
        let dim = space.basis().dim();
        // Choi matrix over block-diagonal inputs E_ij.
        let mut offsets = vec![0];
        for n in 0..space.num_blocks() {
            offsets.push(offsets[n] + space.block_dim(n));
        }
        let mut choi = DMatrix::<C64>::zeros(dim * dim, dim * dim);
        for n in 0..space.num_blocks() {
            let d = space.block_dim(n);
            for i in 0..d {
                for j in 0..d {
                    let mut blocks: Vec<DMatrix<C64>> =
                        (0..space.num_blocks()).map(|m| DMatrix::zeros(space.block_dim(m), space.block_dim(m))).collect();
                    blocks[n][(i, j)] = C64::from(1.0);
                    let input = TwoModeDensityMatrix::from_blocks(n_max, blocks).unwrap();
                    let image = gain_map(&input, Well::Left, &params).unwrap();
                    let (gi, gj) = (offsets[n] + i, offsets[n] + j);
                    for (m, b) in image.blocks().iter().enumerate() {
                        for p in 0..b.nrows() {
                            for q in 0..b.ncols() {
                                choi[(gi * dim + offsets[m] + p, gj * dim + offsets[m] + q)] = b[(p, q)];
                            }
                        }
                    }
                }
            }
        }
        let e = eig_decompose_matrix(&choi, &Tolerances::default()).unwrap();
        assert!(e.values[0] > -1e-12, "Choi eigenvalue {}", e.values[0]);

        let rho = random_state(n_max, 99);
        let out = gain_map(&rho, Well::Right, &params).unwrap();
        assert!((out.trace() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn damping_alone_decays_mean_exponentially() {
    let params = MicromaserParams { theta: 0.0, n_max: 6, dt: 1e-3, ..Default::default() };
    let initial = TwoModeDensityMatrix::number_state(6, 4, 0).unwrap();
    let traj = integrate_master_equation(&params, &initial, 3.0, 0.25).unwrap();
    for (t, rho) in &traj {
        let exact = 4.0 * (-t).exp();
        assert!(((mean_occupation(rho) - exact) / exact).abs() < 1e-6, "t = {t}");
    }
    let rho = TwoModeDensityMatrix::number_state(3, 1, 0).unwrap();
    let d = damping_superoperator(&rho, 1.0);
    let rate: f64 = (0..d.len())
        .map(|n| {
            let lo = rho.space().left_offset(n);
            (0..d[n].nrows()).map(|i| (lo + i) as f64 * d[n][(i, i)].re).sum::<f64>()
        })
        .sum();
    assert!((rate + 1.0).abs() < 1e-14);
}

#[test]
fn tunneling_swaps_single_molecule_at_twice_the_coupling() {
    let t_j = 0.9;
    let rho0 = TwoModeDensityMatrix::number_state(2, 1, 0).unwrap();
    let flat0: Vec<C64> = rho0.block(1).as_slice().to_vec();
    let traj = rk4_integrate(
        |y: &[C64], out: &mut [C64]| {
            let mut blocks = rho0.blocks().to_vec();
            blocks[1] = DMatrix::from_column_slice(2, 2, y);
            let rho = TwoModeDensityMatrix::from_blocks(2, blocks).unwrap();
            out.copy_from_slice(hb_commutator(&rho, 0.0, t_j)[1].as_slice());
        },
        &flat0,
        5.0,
        1e-3,
        100,
    )
    .unwrap();
    for (t, y) in traj.times.iter().zip(&traj.states) {
        // P_left = cos²(J t) = (1 + cos 2Jt)/2.
        assert!((y[3].re - (t_j * t).cos().powi(2)).abs() < 1e-9);
    }
}

#[test]
fn collision_phases_in_two_molecule_block() {
    let u_b = 1.7;
    let rho = {
        let mut blocks: Vec<DMatrix<C64>> = TwoModeDensityMatrix::vacuum(2).blocks().to_vec();
        blocks[0][(0, 0)] = C64::from(0.0);
        blocks[2] = DMatrix::from_element(3, 3, C64::from(1.0 / 3.0));
        TwoModeDensityMatrix::from_blocks(2, blocks).unwrap()
    };
    let d = &hb_commutator(&rho, u_b, 0.0)[2];
    // Block order |0,2⟩, |1,1⟩, |2,0⟩ with energies u_b, 0, u_b.
    assert!(d[(2, 0)].norm() < 1e-15);
    let expected = C64::new(0.0, -u_b) * rho.block(2)[(2, 1)];
    assert!((d[(2, 1)] - expected).norm() < 1e-14);
    assert!(d.iter().map(|z| z.re).all(|x| x.abs() < 1e-15));
}

#[test]
fn direct_and_integrated_steady_states_agree_and_trajectory_stays_physical() {
    let params = MicromaserParams { theta: 2.0, t_j: 1.5, u_b: 1.0, n_max: 6, dt: 2e-3, ..Default::default() };
    let direct = solve_steady_state(&params).unwrap();
    let rk = evolve_to_steady_state(&params).unwrap();
    assert!(rk.converged, "residual {}", rk.residual);
    let diff: f64 = direct
        .rho
        .blocks()
        .iter()
        .zip(rk.rho.blocks())
        .map(|(a, b)| (a - b).iter().map(|z| z.norm()).sum::<f64>())
        .sum();
    assert!(diff < 1e-6, "{diff}");
    assert!(rk.samples.len() > 3);
    for s in &rk.samples {
        assert!((s.trace - 1.0).abs() < 1e-8);
        assert!(s.hermiticity < 1e-10);
        assert!(s.min_eigenvalue > -1e-6);
        assert!(s.exchange_asymmetry < 1e-8);
    }
}

#[test]
fn steady_state_symmetries() {
    for (u_b, t_j) in [(0.0, 2.5), (1.4, 2.5), (30.0, 1.0)] {
        let params = MicromaserParams { theta: PI, u_b, t_j, n_max: 8, ..Default::default() };
        let s = solve_steady_state(&params).unwrap();
        let j = angular_momentum(&s.rho).unwrap();
        assert!(j.jy.abs() < 1e-8 && j.jz.abs() < 1e-8);
        assert!(s.rho.exchange_asymmetry() < 1e-8);
        assert!(j.jx.abs() <= 0.5 * j.total + 1e-12);
        if u_b == 0.0 {
            assert!(j.jx.abs() < 1e-6);
        }
        let pl = single_well_distribution(&s.rho, Well::Left);
        let pr = single_well_distribution(&s.rho, Well::Right);
        assert!(total_variation(&pl, &pr) < 1e-10);
        assert!((pl.iter().sum::<f64>() - 1.0).abs() < 1e-8);
    }
}

#[test]
fn truncation_is_converged_at_coherence_points() {
    // Weak collisions let tunneling pile photons above the single-well trap,
    // so that point needs far more headroom than the default.
    for (theta, u_b, t_j) in [(PI, 1.4, 2.5), (PI, 0.008, 2.5), (5f64.sqrt() * PI, 0.0, 5.0)] {
        let base = MicromaserParams { theta, u_b, t_j, ..Default::default() };
        let a = steady_state_with_headroom(&base, SteadyStateMethod::Direct, 40).unwrap();
        assert!(a.warnings.is_empty(), "{:?}", a.warnings);
        let b = solve_steady_state(&MicromaserParams { n_max: a.rho.space().n_max() + 2, ..base }).unwrap();
        let diff = (mean_occupation(&a.rho) - mean_occupation(&b.rho)).abs();
        assert!(diff < 1e-4, "theta {theta} u_b {u_b} t_j {t_j} n_max {}: {diff:e}", a.rho.space().n_max());
    }
}

#[test]
fn unpumped_cavity_relaxes_to_vacuum() {
    let s = solve_steady_state(&MicromaserParams { theta: 0.0, t_j: 3.0, u_b: 2.0, ..Default::default() }).unwrap();
    assert_eq!(mean_occupation(&s.rho), 0.0);
    let rows = theta_sweep(&MicromaserParams { n_max: 4, ..Default::default() }, &[0.0], SteadyStateMethod::Direct);
    assert_eq!(rows[0].mean, 0.0);
    assert!(rows[0].q.is_none());
}

#[test]
fn sweep_reports_failing_points() {
    let rows = theta_sweep(&MicromaserParams { n_ex: -1.0, n_max: 3, ..Default::default() }, &[1.0, 0.5], SteadyStateMethod::Direct);
    assert!(rows.iter().all(|r| r.error.is_some() && !r.converged));
    assert!(rows[0].theta < rows[1].theta);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn uncoupled_wells_follow_detailed_balance(theta in 0.05f64..8.0, n_ex in 1.0f64..20.0) {
        let n_max = 6;
        let params = MicromaserParams { theta, n_ex, n_max, ..Default::default() };
        let s = solve_steady_state(&params).unwrap();
        let p = single_well_distribution(&s.rho, Well::Left);
        prop_assert!(total_variation(&p, &detailed_balance(n_ex, params.chi_tau(), n_max)) < 1e-10);
    }

    #[test]
    fn generator_preserves_trace_and_hermiticity(seed in any::<u64>(), theta in 0.0f64..6.0, u_b in -5.0f64..5.0, t_j in 0.0f64..5.0) {
        let params = MicromaserParams { theta, u_b, t_j, n_max: 4, ..Default::default() };
        let g = Generator::new(&params).unwrap();
        let rho = random_state(4, seed);
        let d = g.apply(rho.blocks());
        let tr: C64 = d.iter().map(|m| m.trace()).sum();
        prop_assert!(tr.norm() < 1e-12);
        for m in &d {
            prop_assert!((m - m.adjoint()).norm() < 1e-12);
        }
        let dh = hb_commutator(&rho, u_b, t_j);
        prop_assert!(dh.iter().map(|m| m.trace()).sum::<C64>().norm() < 1e-13);
        let dd = damping_superoperator(&rho, 1.0);
        prop_assert!(dd.iter().map(|m| m.trace()).sum::<C64>().norm() < 1e-12);
    }

    #[test]
    fn phase_distribution_is_normalized(seed in any::<u64>()) {
        let rho = random_state(3, seed);
        let p = relative_phase_distribution(&rho, DEFAULT_GRID);
        prop_assert!((p.integral() - 1.0).abs() < 1e-6);
        prop_assert!(p.density.iter().all(|&x| x >= -1e-12));
    }
}
