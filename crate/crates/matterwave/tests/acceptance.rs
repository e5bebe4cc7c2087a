//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (visible with `cargo test --test acceptance -- --nocapture`).
//! Oracles used here (dense Jacobi diagonalization, fixed-stride RK4,
//! Kolmogorov-Smirnov) are implemented in this file, independent of the
//! library paths they check.
#![allow(clippy::needless_range_loop)]

use matterwave::beamoptics as bo;
use matterwave::constants::{Species, EV, HBAR, H_PLANCK};
use matterwave::fringelab as fl;
use matterwave::luttinger as lt;
use matterwave::meanfield as mf;
use matterwave::tofexpand as tof;
use matterwave::twomode as tm;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::f64::consts::PI;

// ---------------------------------------------------------------- oracles

/// Cyclic Jacobi eigenvalue iteration for small dense symmetric matrices.
fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..200 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Asymptotic Kolmogorov-Smirnov p-value with the small-sample correction.
fn ks_p_value(d: f64, n: usize) -> f64 {
    let n = n as f64;
    let lambda = (n.sqrt() + 0.12 + 0.11 / n.sqrt()) * d;
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        sum += 2.0 * (-1.0f64).powi(k + 1) * (-2.0 * kf * kf * lambda * lambda).exp();
    }
    sum.clamp(0.0, 1.0)
}

fn rb_system(l_sys: f64) -> lt::LuttingerSystem {
    lt::LuttingerSystem::new(
        Species::Rb87.mass(),
        5.2e-9,
        2.0 * PI * 2.0e3,
        35e6,
        27e-9,
        l_sys,
    )
    .unwrap()
}

// -------------------------------------------------------------- criteria

#[test]
fn criterion_01_eikonal_phase_benchmark() {
    let beam = bo::BeamParams::new(Species::Na.mass(), 1000.0, 0.0).unwrap();
    let phase = bo::eikonal_phase(6.6e-12 * EV, 0.10, &beam).phase;
    assert!(
        (phase.abs() - 1.0).abs() < 0.01,
        "|phase| = {} not within 1% of 1.00 rad",
        phase.abs()
    );
    let n = bo::index_from_potential(6.6e-12 * EV, &beam);
    let one_minus_n = (1.0 - n).abs();
    assert!(
        (one_minus_n - 2.7e-11).abs() / 2.7e-11 < 0.05,
        "|1-n| = {one_minus_n} not within 5% of 2.7e-11"
    );
    println!("criterion 01 (eikonal phase benchmark): PASS");
}

#[test]
fn criterion_02_contrast_ratio_benchmark() {
    // intensity ratio 1e-2 -> amplitude ratio 0.1
    let c1 = fl::two_beam_contrast(1.0, 0.1).unwrap().unwrap();
    assert!((c1 - 2.0 * 0.1 / 1.01).abs() <= 1e-12);
    assert!((c1 - 0.198).abs() < 5e-4);
    let c2 = fl::two_beam_contrast(1.0, 0.01).unwrap().unwrap();
    assert!((c2 - 2.0 * 0.01 / 1.0001).abs() <= 1e-12);
    assert!((c2 - 0.0200).abs() < 5e-5);
    println!("criterion 02 (contrast-ratio benchmark): PASS");
}

#[test]
fn criterion_03_two_mode_spectra_vs_oracles() {
    // N = 1 reproduces the closed-form two-level eigenvalues exactly
    for (j, delta) in [(1.0, 0.0), (3.0, 8.0), (0.4, -1.3)] {
        let params = tm::BoseHubbardParams::new(j, 0.0, delta, 1).unwrap();
        let eig = tm::eigensystem(&params, tm::DEFAULT_DIM_CAP).unwrap();
        let split = tm::split_eigensystem(j, delta).unwrap();
        assert!((eig.energies[0] - split.e_ground).abs() < 1e-12);
        assert!((eig.energies[1] - split.e_excited).abs() < 1e-12);
    }
    // N = 2 interacting ground energy: closed-form (1 - sqrt(17))/2
    let params = tm::BoseHubbardParams::new(1.0, 1.0, 0.0, 2).unwrap();
    let eig = tm::eigensystem(&params, tm::DEFAULT_DIM_CAP).unwrap();
    assert!((eig.energies[0] - 0.5 * (1.0 - 17.0f64.sqrt())).abs() < 1e-12);
    // N in {1,2,3}: full spectra against the dense Jacobi oracle
    for n in 1..=3usize {
        for (j, u, delta) in [
            (1.0, 0.0, 0.0),
            (0.7, 0.3, 0.2),
            (0.0, 0.0, 2.0),
            (1.3, -0.4, -0.9),
        ] {
            let params = tm::BoseHubbardParams::new(j, u, delta, n).unwrap();
            let matrix = tm::build_hamiltonian(&params);
            let dense: Vec<Vec<f64>> = (0..=n)
                .map(|r| {
                    (0..=n)
                        .map(|c| {
                            if r == c {
                                matrix.diag[r]
                            } else if c == r + 1 {
                                matrix.off_diag[r]
                            } else if r == c + 1 {
                                matrix.off_diag[c]
                            } else {
                                0.0
                            }
                        })
                        .collect()
                })
                .collect();
            let oracle = jacobi_eigenvalues(dense);
            let eig = tm::eigensystem(&params, tm::DEFAULT_DIM_CAP).unwrap();
            for (a, b) in eig.energies.iter().zip(&oracle) {
                assert!(
                    (a - b).abs() < 1e-12,
                    "N={n} J={j} U={u} delta={delta}: {a} vs {b}"
                );
            }
        }
    }
    println!("criterion 03 (two-mode spectra vs oracles): PASS");
}

#[test]
fn criterion_04_linear_dynamics_equivalence() {
    // U = 0, N = 50: exact quantum <S_z(t)> equals the mean-field z(t) N/2
    let n = 50usize;
    let j = 1.0;
    let params = tm::BoseHubbardParams::new(j, 0.0, 0.0, n).unwrap();
    let (theta0, phi0) = (1.2, 0.7);
    let initial = tm::coherent_state(tm::BlochAngle::new(theta0, phi0).unwrap(), n).unwrap();
    let t_end = 5.0 * 2.0 * PI / params.omega_rabi(); // five Rabi periods
    let samples = 200;

    let mf_initial = mf::MeanFieldState::new(theta0.cos(), phi0).unwrap();
    let traj = mf::integrate(&mf_initial, &params, t_end, 1e-11, samples).unwrap();

    let mut worst = 0.0f64;
    for (i, &t) in traj.times.iter().enumerate() {
        let state = tm::evolve(&initial, &params, t, tm::EvolveMethod::Spectral).unwrap();
        let sz = tm::spin_observables(&state).unwrap().sz;
        let rel = (sz - traj.states[i].z * n as f64 / 2.0).abs() / (n as f64 / 2.0);
        worst = worst.max(rel);
    }
    assert!(worst < 1e-8, "worst relative deviation {worst}");
    println!("criterion 04 (linear quantum/mean-field equivalence, worst {worst:.2e}): PASS");
}

#[test]
fn criterion_05_harmonic_approximation_agreement() {
    // N = 100, gamma N in [1, 30]: exact Delta S_z within 5% of the harmonic form
    let n = 100usize;
    for gn in [1.0, 2.0, 5.0, 10.0, 20.0, 30.0] {
        let params = tm::BoseHubbardParams::new(1.0, 2.0 * gn / n as f64, 0.0, n).unwrap();
        let (state, _) = tm::ground_state(&params).unwrap();
        let obs = tm::spin_observables(&state).unwrap();
        let harmonic = 0.5 * (n as f64).sqrt() * (1.0 + gn).powf(-0.25);
        let rel = (obs.var_sz.sqrt() - harmonic).abs() / harmonic;
        assert!(
            rel < 0.05,
            "gamma N = {gn}: exact {} vs harmonic {harmonic}",
            obs.var_sz.sqrt()
        );
    }
    println!("criterion 05 (harmonic-approximation agreement): PASS");
}

#[test]
fn criterion_06_spin_squeezing_floor() {
    // scan over gamma across all three regimes; the minimum must sit within a
    // factor 1.5 of sqrt(2/N), and near-optimal squeezing must already be
    // reached inside the Josephson window 1/N < gamma < N (the exact curve
    // decreases monotonically towards sqrt(2/(N+2)), see the project notes)
    let n = 100usize;
    let floor = (2.0 / n as f64).sqrt();
    let mut best_global = f64::INFINITY;
    let mut best_window = (0.0f64, f64::INFINITY);
    let mut gamma = 1e-3;
    while gamma < 1e3 {
        let params = tm::BoseHubbardParams::new(1.0, 2.0 * gamma, 0.0, n).unwrap();
        let (state, _) = tm::ground_state(&params).unwrap();
        if let Some(xi_s) = tm::spin_observables(&state).unwrap().xi_s {
            best_global = best_global.min(xi_s);
            if gamma > 1.0 / n as f64 && gamma < n as f64 && xi_s < best_window.1 {
                best_window = (gamma, xi_s);
            }
        }
        gamma *= 1.25;
    }
    assert!(
        best_global < 1.5 * floor && best_global > floor / 1.5,
        "global min xi_S = {best_global} vs floor {floor}"
    );
    assert!(
        best_window.1 < 1.5 * floor,
        "best xi_S inside the Josephson window = {} vs floor {floor}",
        best_window.1
    );
    assert!(best_window.0 > 1.0 / n as f64 && best_window.0 < n as f64);
    println!(
        "criterion 06 (spin-squeezing floor: global {best_global:.4}, window {:.4} at gamma {:.1}): PASS",
        best_window.1, best_window.0
    );
}

#[test]
fn criterion_07_mean_field_conservation_and_bifurcation() {
    // energy drift below 1e-8 relative over 100 Rabi periods
    let params = mf::junction_params(1.0, 8.0, 100).unwrap();
    let t_end = 100.0 * 2.0 * PI / params.omega_rabi();
    let initial = mf::MeanFieldState::new(0.6, 0.0).unwrap();
    let traj = mf::integrate(&initial, &params, t_end, 1e-10, 4096).unwrap();
    let drift = traj.energy_drift() / traj.energy[0].abs();
    assert!(drift < 1e-8, "relative energy drift {drift}");

    // z0 = 0.6 oscillates at Lambda = 8 and self-traps at Lambda = 12
    let z: Vec<f64> = traj.states.iter().map(|s| s.z).collect();
    assert!(
        !mf::zero_crossings(&traj.times, &z).is_empty(),
        "Lambda = 8 should produce Josephson oscillations"
    );
    let trapped_params = mf::junction_params(1.0, 12.0, 100).unwrap();
    let trapped = mf::integrate(&initial, &trapped_params, 60.0, 1e-10, 4096).unwrap();
    assert!(
        trapped.states.iter().all(|s| s.z > 0.0),
        "Lambda = 12 should self-trap"
    );
    println!("criterion 07 (mean-field conservation and bifurcation, drift {drift:.2e}): PASS");
}

#[test]
fn criterion_08_plasma_frequency() {
    let params = mf::junction_params(1.0, 3.0, 100).unwrap();
    let expected = mf::characteristic_frequencies(&params)
        .unwrap()
        .omega_plasma;
    let traj = mf::integrate(
        &mf::MeanFieldState::new(0.01, 0.0).unwrap(),
        &params,
        100.0,
        1e-10,
        8192,
    )
    .unwrap();
    let z: Vec<f64> = traj.states.iter().map(|s| s.z).collect();
    let measured = mf::oscillation_frequency(&traj.times, &z).unwrap();
    let rel = (measured - expected).abs() / expected;
    assert!(rel < 0.01, "measured {measured} vs omega_p {expected}");
    println!("criterion 08 (plasma frequency within 1%): PASS");
}

#[test]
fn criterion_09_tof_fringe_spacing() {
    let m = Species::Na.mass();
    let omega = 2.0 * PI * 2000.0;
    let params = {
        let sigma0 = (HBAR / (m * omega)).sqrt();
        tof::TofParams::new(m, omega, 10.0 * sigma0).unwrap()
    };
    let t = 50.0 / params.omega; // omega t = 50
    assert!(tof::gaussian_width(t, &params) > 3.0 * params.d);
    let k = tof::fringe_wavevector(t, &params).k;
    let lambda_k = PI / k;

    let span = 1.2 * tof::gaussian_width(t, &params);
    let n = 24001;
    let grid: Vec<f64> = (0..n)
        .map(|i| -span + 2.0 * span * i as f64 / (n - 1) as f64)
        .collect();
    let pattern = tof::density_pattern(&grid, t, 0.4, &params, 0.0).unwrap();

    // balanced envelopes leave the oscillation zeros untouched
    let sigma_t = tof::gaussian_width(t, &params);
    let env: Vec<f64> = grid
        .iter()
        .map(|&x| {
            let l = (-(x + 0.5 * params.d) * (x + 0.5 * params.d) / (sigma_t * sigma_t)).exp();
            let r = (-(x - 0.5 * params.d) * (x - 0.5 * params.d) / (sigma_t * sigma_t)).exp();
            l + r
        })
        .collect();
    let ratio: Vec<f64> = pattern
        .density
        .iter()
        .zip(&env)
        .map(|(d, e)| d / e)
        .collect();
    let mean = ratio.iter().sum::<f64>() / ratio.len() as f64;
    let osc: Vec<f64> = ratio.iter().map(|r| r - mean).collect();
    let crossings = mf::zero_crossings(&grid, &osc);
    assert!(crossings.len() > 6);
    let measured = 2.0 * (crossings.last().unwrap() - crossings[0]) / (crossings.len() - 1) as f64;

    let rel_k = (measured - lambda_k).abs() / lambda_k;
    assert!(
        rel_k < 5e-3,
        "measured spacing {measured} vs pi/k {lambda_k}"
    );
    let lambda_long = H_PLANCK * t / (m * params.d);
    let rel_long = (measured - lambda_long).abs() / lambda_long;
    assert!(
        rel_long < 5e-3,
        "measured spacing {measured} vs h t/(m d) {lambda_long}"
    );
    println!("criterion 09 (TOF fringe spacing, {rel_k:.2e} / {rel_long:.2e}): PASS");
}

#[test]
fn criterion_10_thermal_stationarity() {
    let sys = rb_system(100e-6);
    let ens = lt::initial_covariance(&sys, lt::EnsembleKind::Thermal);
    for t in [1e-4, 2.3e-3, 0.4] {
        let evolved = lt::evolve_covariance(&ens, &sys, t).unwrap();
        for j in 0..ens.n_modes() {
            let rel_phi = (evolved.var_phi[j] - ens.var_phi[j]).abs() / ens.var_phi[j];
            let rel_nu = (evolved.var_nu[j] - ens.var_nu[j]).abs() / ens.var_nu[j];
            assert!(rel_phi <= 1e-12 && rel_nu <= 1e-12, "mode {j} at t = {t}");
        }
    }
    println!("criterion 10 (thermal covariance stationarity at 1e-12): PASS");
}

#[test]
fn criterion_11_equilibrium_correlation() {
    // lambda_T for Rb-87 at n1d = 35/um, T = 27 nK is 14.5 um
    let sys = rb_system(400e-6);
    let derived = lt::derive_params(&sys);
    assert!(
        (derived.lambda_t - 14.5e-6).abs() < 0.2e-6,
        "lambda_T = {} m",
        derived.lambda_t
    );
    let ens = lt::initial_covariance(&sys, lt::EnsembleKind::Thermal);

    // analytic curve decays as exp(-2 z/lambda_T): fit the rate over z <= lambda_T
    let zs: Vec<f64> = (1..=24).map(|i| i as f64 * 0.6e-6).collect();
    let log_c: Vec<f64> = zs
        .iter()
        .map(|&z| lt::correlation_analytic(z, &ens, &sys).ln())
        .collect();
    let (rate, _) = lt::linear_fit(&zs, &log_c).unwrap();
    let expected_rate = -2.0 / derived.lambda_t;
    assert!(
        (rate - expected_rate).abs() / expected_rate.abs() < 0.10,
        "decay rate {rate} vs -2/lambda_T {expected_rate}"
    );

    // Monte-Carlo with 1e4 realizations matches the analytic curve within
    // three standard errors at 20 separations (fixed seed)
    let seps: Vec<f64> = (1..=20).map(|i| i as f64 * 1.5e-6).collect();
    let mc = lt::sample_correlation(&ens, &sys, &seps, 10_000, 20260808).unwrap();
    for (sep, mean, stderr) in mc {
        let analytic = lt::correlation_analytic(sep, &ens, &sys);
        assert!(
            (mean - analytic).abs() <= 3.0 * stderr + 1e-4,
            "sep {sep}: MC {mean} vs analytic {analytic} (stderr {stderr})"
        );
    }
    println!(
        "criterion 11 (equilibrium correlation, lambda_T = {:.3e} m): PASS",
        derived.lambda_t
    );
}

#[test]
fn criterion_12_light_cone() {
    // quench with the sound speed set to 1.2 mm/s
    let c_target = 1.2e-3;
    let m = Species::Rb87.mass();
    let (a_s, n1d) = (5.2e-9, 35e6);
    let omega_perp = c_target * c_target * m / (2.0 * HBAR * a_s * n1d);
    let sys = lt::LuttingerSystem::new(m, a_s, omega_perp, n1d, 30e-9, 120e-6).unwrap();
    assert!((sys.sound_speed() - c_target).abs() / c_target < 1e-12);

    let ens = lt::initial_covariance(&sys, lt::EnsembleKind::Quench);
    let zs: Vec<f64> = (0..500).map(|i| i as f64 * 0.1e-6).collect();
    let mut ts = Vec::new();
    let mut zcs = Vec::new();
    for i in 1..=9 {
        let t = i as f64 * 1e-3;
        let evolved = lt::evolve_covariance(&ens, &sys, t).unwrap();
        let curve: Vec<f64> = zs
            .iter()
            .map(|&z| lt::correlation_analytic(z, &evolved, &sys))
            .collect();
        let zc = lt::crossover_distance(&zs, &curve, 0.02).unwrap();
        ts.push(t);
        zcs.push(zc);
    }
    let (slope, _) = lt::linear_fit(&ts, &zcs).unwrap();
    let rel = (slope - 2.0 * c_target).abs() / (2.0 * c_target);
    assert!(rel < 0.15, "z_c(t) slope {slope} vs 2c {}", 2.0 * c_target);

    // the effective temperature derived from typical atom-chip trap
    // parameters lands in [10, 25] nK, the same range as reported
    // measurements (about 14 nK)
    let t_eff = lt::derive_params(&rb_system(100e-6)).t_eff;
    assert!((10e-9..=25e-9).contains(&t_eff), "T_eff = {t_eff}");
    println!(
        "criterion 12 (light cone: slope/2c = {:.3}, T_eff = {:.1} nK): PASS",
        slope / (2.0 * c_target),
        t_eff * 1e9
    );
}

fn thermal_alpha_samples(n_samples: usize) -> (fl::ContrastSamples, f64) {
    let sys = rb_system(300e-6);
    let lambda_t = sys.thermal_coherence_length();
    let l = 5.0 * lambda_t;
    let ens = lt::initial_covariance(&sys, lt::EnsembleKind::Thermal);
    let points = 290;
    let grid: Vec<f64> = (0..points)
        .map(|i| -0.5 * l + l * i as f64 / (points - 1) as f64)
        .collect();
    let profiles = lt::sample_profiles(&ens, &sys, &grid, n_samples, 0xfdf).unwrap();
    let contrasts: Vec<f64> = profiles
        .iter()
        .map(|p| fl::contrast_operator(p, l, sys.n1d).unwrap().c)
        .collect();
    (
        fl::ContrastSamples::from_contrasts(&contrasts, l).unwrap(),
        l,
    )
}

/// KNOWN RED by design: at L = 5 λ_T the true
/// squared-contrast distribution still deviates from Exp(1) by a systematic
/// Kolmogorov-Smirnov distance D ≈ 0.05 — confirmed by an independent
/// Brownian-phase oracle (the thermal relative phase is a Wiener process in
/// z), which gives D ≈ 0.053 at κL = 10, falling off only like ~0.5/(κL).
/// A 5000-sample KS test at p > 0.01 needs D < 0.023, so the criterion as
/// stated cannot pass; it would pass with ~500 samples or at L ≳ 12 λ_T.
#[test]
fn criterion_13a_fdf_thermal_ks_as_stated() {
    let (samples, _l) = thermal_alpha_samples(5000);
    let mut alpha = samples.alpha.clone();
    alpha.sort_by(f64::total_cmp);
    let n = alpha.len() as f64;
    let mut d_stat = 0.0f64;
    for (i, &a) in alpha.iter().enumerate() {
        let cdf = 1.0 - (-a).exp();
        d_stat = d_stat.max(
            (cdf - i as f64 / n)
                .abs()
                .max(((i + 1) as f64 / n - cdf).abs()),
        );
    }
    let p = ks_p_value(d_stat, alpha.len());
    // the exponential limit (moments m!) is approached from below; at
    // kappa L = 10 both the pipeline and the Brownian oracle give a second
    // moment near 2 (1 - 1.6/kappa L) = 1.67
    let (moments, _) = fl::fdf_moments(&samples, 3).unwrap();
    assert!(
        (1.4..2.1).contains(&moments[1]),
        "second moment {}",
        moments[1]
    );
    println!(
        "criterion 13a (FDF thermal KS at L = 5 lambda_T, n = 5000): D = {d_stat:.4}, p = {p:.2e} -> {}",
        if p > 0.01 { "PASS" } else { "FAIL (unreachable target, by design)" }
    );
    assert!(
        p > 0.01,
        "KS p = {p} (D = {d_stat}); unreachable target, see this test's doc comment"
    );
}

#[test]
fn criterion_13b_fdf_coherent_moments() {
    // fully coherent ensemble: every normalized moment equals 1 within 3 sigma
    let sys = rb_system(300e-6);
    let l = 5.0 * sys.thermal_coherence_length();
    let grid: Vec<f64> = (0..290).map(|i| -0.5 * l + l * i as f64 / 289.0).collect();
    let mut coherent = lt::initial_covariance(&sys, lt::EnsembleKind::Quench);
    coherent.var_phi.iter_mut().for_each(|v| *v = 0.0);
    let profiles = lt::sample_profiles(&coherent, &sys, &grid, 500, 7).unwrap();
    let contrasts: Vec<f64> = profiles
        .iter()
        .map(|p| fl::contrast_operator(p, l, sys.n1d).unwrap().c)
        .collect();
    let samples = fl::ContrastSamples::from_contrasts(&contrasts, l).unwrap();
    let (moments, _) = fl::fdf_moments(&samples, 4).unwrap();
    for (m, value) in moments.iter().enumerate() {
        let sigma_stat = samples
            .alpha
            .iter()
            .map(|a| (a.powi(m as i32 + 1) - value) * (a.powi(m as i32 + 1) - value))
            .sum::<f64>()
            .sqrt()
            / samples.alpha.len() as f64;
        assert!(
            (value - 1.0).abs() <= 3.0 * sigma_stat + 1e-9,
            "moment {} = {value}",
            m + 1
        );
    }
    println!("criterion 13b (FDF coherent moments all 1 within 3 sigma): PASS");
}

#[test]
fn criterion_14_fringe_fit_round_trip() {
    // noiseless round trip exact to 1e-6
    let n = 4800usize;
    let span = 60e-6;
    let x: Vec<f64> = (0..n)
        .map(|i| -span + 2.0 * span * i as f64 / (n - 1) as f64)
        .collect();
    let truth = (5.0, 2.0e-6, 18e-6, 0.42, 16e-6, -0.4);
    let model = |xi: f64| {
        truth.0
            * (-(xi - truth.1) * (xi - truth.1) / (2.0 * truth.2 * truth.2)).exp()
            * (1.0 + truth.3 * (2.0 * PI * (xi - truth.1) / truth.4 + truth.5).cos())
    };
    let clean: Vec<f64> = x.iter().map(|&xi| model(xi)).collect();
    let fit = fl::fit_fringe(&x, &clean, truth.4 * 1.4).unwrap();
    assert!((fit.c - truth.3).abs() / truth.3 < 1e-6);
    assert!((fit.phi - truth.5).abs() < 1e-6);
    assert!((fit.lambda_f - truth.4).abs() / truth.4 < 1e-6);

    // C = 0.42 at SNR = 20 over 100 seeds: within 0.02 / 0.05 rad in >= 95
    let mut ok = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noise = Normal::new(0.0, truth.0 / 20.0).unwrap();
        let y: Vec<f64> = clean.iter().map(|&v| v + noise.sample(&mut rng)).collect();
        let fit = match fl::fit_fringe(&x, &y, truth.4 * 1.4) {
            Ok(f) => f,
            Err(fl::FringeError::FitFailure { last }) => *last,
            Err(e) => panic!("{e}"),
        };
        if (fit.c - truth.3).abs() <= 0.02 && (fit.phi - truth.5).abs() <= 0.05 {
            ok += 1;
        }
    }
    assert!(ok >= 95, "only {ok}/100 within tolerance");
    println!("criterion 14 (fringe-fit round trip, {ok}/100): PASS");
}

#[test]
fn criterion_15_talbot_lau_identities() {
    let l_t = 1.25e-3;
    let d = 100e-9;
    let g = bo::talbot_lau(l_t / 2.0, l_t, 1, 2, d).unwrap();
    assert!((g.l2 - l_t / 2.0).abs() <= 1e-15 * l_t);
    assert!((g.d_prime - d).abs() <= 1e-15 * d.max(1.0));
    assert_eq!(
        bo::talbot_lau(l_t / 4.0, l_t, 1, 2, d).unwrap_err(),
        bo::BeamOpticsError::TalbotLauPole
    );
    println!("criterion 15 (Talbot-Lau identities): PASS");
}

#[test]
fn criterion_16_phase_diffusion_identity() {
    for (xi_n, n, u, t, var0) in [
        (1.0, 100usize, 0.01, 10.0, 0.0),
        (0.45, 400, 2.4e-3, 87.0, 0.04),
        (0.2, 10, 1.0, 0.3, 1.0),
    ] {
        let a = tm::phase_diffusion_variance(t, xi_n, n, u, var0);
        let delta_sz = xi_n * (n as f64).sqrt() / 2.0;
        let b = tm::phase_diffusion_variance_from_sz(t, delta_sz, u, var0);
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{a} vs {b}");
    }
    println!("criterion 16 (phase-diffusion identity at 1e-12): PASS");
}

#[test]
fn criterion_17_cli_determinism() {
    let base = std::env::temp_dir().join(format!("mw_accept_cli_{}", std::process::id()));
    std::fs::remove_dir_all(&base).ok();
    let args = |out: &std::path::Path| -> Vec<String> {
        [
            "luttinger",
            "equilibrium",
            "--as",
            "5.2nm",
            "--omega-perp",
            "12566.37",
            "--n1d",
            "35/um",
            "--T",
            "27nK",
            "--length",
            "80um",
            "--z-points",
            "12",
            "--realizations",
            "200",
            "--seed",
            "42",
            "--out",
        ]
        .iter()
        .map(|s| s.to_string())
        .chain([out.display().to_string()])
        .collect()
    };
    let bin = env!("CARGO_BIN_EXE_matterwave");
    for run in ["a", "b"] {
        let dir = base.join(run);
        std::fs::create_dir_all(&dir).unwrap();
        let status = std::process::Command::new(bin)
            .args(args(&dir))
            .status()
            .expect("spawn matterwave");
        assert!(status.success());
    }
    for file in ["correlation.csv", "ensemble.csv"] {
        let a = std::fs::read(base.join("a").join(file)).unwrap();
        let b = std::fs::read(base.join("b").join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
        assert!(!a.is_empty());
    }
    std::fs::remove_dir_all(&base).ok();
    println!("criterion 17 (CLI determinism, byte-identical outputs): PASS");
}
