//! A pair of 1D quasicondensates in thermal equilibrium: derived Luttinger
//! parameters, the exponentially decaying relative-phase correlation
//! C(z) = exp(-2 z / lambda_T), and a Monte-Carlo cross-check from sampled
//! phase profiles.
//!
//! Run with: cargo run --release --example luttinger_equilibrium

use matterwave::constants::Species;
use matterwave::luttinger::{
    correlation_analytic, derive_params, initial_covariance, sample_correlation, EnsembleKind,
    LuttingerSystem,
};
use std::f64::consts::PI;

fn main() {
    // Rb-87 quasicondensate on an atom chip
    let sys = LuttingerSystem::new(
        Species::Rb87.mass(),
        5.2e-9,         // s-wave scattering length
        2.0 * PI * 2e3, // transverse trap, 2 kHz
        35e6,           // line density 35 per um
        27e-9,          // 27 nK
        400e-6,         // box length
    )
    .unwrap();
    let p = derive_params(&sys);
    println!("# Rb-87, n1d = 35/um, T = 27 nK, omega_perp = 2 pi 2 kHz");
    println!("1D coupling g        = {:.4e} J m", p.g);
    println!("speed of sound c     = {:.4} mm/s", p.c * 1e3);
    println!("Luttinger K          = {:.1}", p.k_luttinger);
    println!("Lieb-Liniger gamma   = {:.2e}", p.gamma_ll);
    println!("healing length xi_h  = {:.3} um", p.xi_h * 1e6);
    println!("lambda_T             = {:.2} um", p.lambda_t * 1e6);
    println!("T_degeneracy         = {:.1} nK", p.t_degeneracy * 1e9);
    println!("prethermal T_eff     = {:.1} nK", p.t_eff * 1e9);
    println!(
        "1D validity          = {} / {}",
        p.scattering_1d_ok, p.one_d_ok
    );

    let ens = initial_covariance(&sys, EnsembleKind::Thermal);
    let seps: Vec<f64> = (1..=12).map(|i| i as f64 * 2.5e-6).collect();
    let mc = sample_correlation(&ens, &sys, &seps, 4000, 1).unwrap();

    println!(
        "\n{:>10} {:>12} {:>12} {:>12} {:>12}",
        "z/um", "analytic", "exp(-2z/lT)", "MC", "stderr"
    );
    for (sep, mean, stderr) in mc {
        println!(
            "{:>10.1} {:>12.5} {:>12.5} {:>12.5} {:>12.5}",
            sep * 1e6,
            correlation_analytic(sep, &ens, &sys),
            (-2.0 * sep / p.lambda_t).exp(),
            mean,
            stderr,
        );
    }
}
