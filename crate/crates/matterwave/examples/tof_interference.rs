//! Time-of-flight recombination of a split condensate: free Gaussian
//! expansion, the emerging double-slit fringe pattern with its chirped wave
//! vector k(t), and the de Broglie interpretation of the long-time fringe
//! spacing h t/(m d).
//!
//! Run with: cargo run --release --example tof_interference

use matterwave::constants::{Species, H_PLANCK};
use matterwave::tofexpand::{
    accumulated_phase, density_pattern, fringe_wavevector, gaussian_width, recombination_imbalance,
    TofParams,
};
use std::f64::consts::PI;

fn main() {
    let m = Species::Na.mass();
    let omega = 2.0 * PI * 2000.0;
    let params = TofParams::new(m, omega, 5e-6).unwrap();
    println!("# Na released from omega = 2 pi 2 kHz wells, d = 5 um");
    println!("ground-state width sigma0 = {:.3e} m", params.sigma0);
    println!(
        "envelope-overlap threshold omega t = {:.1}\n",
        params.long_time_threshold()
    );

    println!(
        "{:>8} {:>12} {:>12} {:>14} {:>14}",
        "omega t", "sigma(t)/um", "overlap", "lambda_F/um", "h t/(m d)/um"
    );
    for wt in [0.0, 5.0, 20.0, 50.0, 200.0] {
        let t = wt / omega;
        let k = fringe_wavevector(t, &params);
        println!(
            "{wt:>8.0} {:>12.3} {:>12} {:>14} {:>14.3}",
            gaussian_width(t, &params) * 1e6,
            gaussian_width(t, &params) > params.d,
            k.fringe_spacing()
                .map_or("-".into(), |l| format!("{:.3}", l * 1e6)),
            H_PLANCK * t / (m * params.d) * 1e6,
        );
    }

    // a slice of the interference pattern at omega t = 50, phi = pi/2
    let t = 50.0 / omega;
    let span = gaussian_width(t, &params);
    let grid: Vec<f64> = (0..61)
        .map(|i| -span + 2.0 * span * i as f64 / 60.0)
        .collect();
    let pattern = density_pattern(&grid, t, PI / 2.0, &params, 0.0).unwrap();
    let peak = pattern.density.iter().cloned().fold(f64::MIN, f64::max);
    println!("\n# density slice at omega t = 50, phi = pi/2 (ASCII, +-sigma(t))");
    for (x, d) in pattern.x.iter().zip(&pattern.density) {
        let bars = "#".repeat((d / peak * 50.0).round() as usize);
        println!("{:>8.2} um |{bars}", x * 1e6);
    }

    // the Mach-Zehnder readout z = C sin(phi) after in-trap recombination
    println!("\n# in-trap recombination fringe: z = C sin(phi), C = 0.42");
    let phases: Vec<f64> = (0..9).map(|i| i as f64 * PI / 4.0).collect();
    for phi in phases {
        let z = recombination_imbalance(0.42, phi).unwrap();
        println!("phi = {phi:>6.3} -> z = {z:+.4}");
    }

    // phase accumulation under a force: slope F d / hbar
    let d = params.d;
    let force = 1e-28; // N
    println!("\n# phase accumulated under F = {force:.1e} N (plus 3 Hz trap mismatch)");
    for t_ms in [0.0, 2.0, 4.0, 8.0] {
        let phi = accumulated_phase(force, d, t_ms * 1e-3, 2.0 * PI * 3.0).unwrap();
        println!("t = {t_ms:>4.1} ms -> phi = {phi:.4} rad");
    }
}
