//! Interaction-driven phase diffusion of a split condensate: the relative
//! phase variance grows as var0 + R² t² with R = ξ_N sqrt(N) U, so number
//! squeezing (ξ_N < 1) directly extends the interferometer's coherence time.
//! The exact quantum evolution of a decoupled junction shows the same
//! quadratic growth.
//!
//! Run with: cargo run --release --example phase_diffusion

use matterwave::twomode::{
    coherent_state, evolve, phase_diffusion_variance, phase_distribution, BlochAngle,
    BoseHubbardParams, EvolveMethod,
};
use std::f64::consts::PI;

/// Circular variance of the operational phase distribution of a state.
fn quantum_phase_variance(state: &matterwave::twomode::TwoModeState) -> f64 {
    let dist = phase_distribution(state, 512).unwrap();
    let dphi = 2.0 * PI / 512.0;
    let (mut re, mut im) = (0.0, 0.0);
    for (phi, p) in dist {
        re += p * phi.cos() * dphi;
        im += p * phi.sin() * dphi;
    }
    let r = (re * re + im * im).sqrt().min(1.0);
    -2.0 * r.ln()
}

fn main() {
    let n = 60;
    let u = 0.02;

    println!("# analytic diffusion law for N = {n}, U = {u}");
    println!(
        "{:>6} {:>16} {:>16}",
        "t", "var (xi_N = 1)", "var (xi_N = 0.3)"
    );
    for i in 0..=6 {
        let t = i as f64 * 2.0;
        println!(
            "{t:>6.1} {:>16.6} {:>16.6}",
            phase_diffusion_variance(t, 1.0, n, u, 0.0),
            phase_diffusion_variance(t, 0.3, n, u, 0.0),
        );
    }

    // exact quantum check: decoupled wells (J = 0), coherent initial state
    let params = BoseHubbardParams::new(0.0, u, 0.0, n).unwrap();
    let initial = coherent_state(BlochAngle::new(PI / 2.0, 0.0).unwrap(), n).unwrap();
    let var0 = quantum_phase_variance(&initial);
    println!("\n# exact quantum phase variance after full splitting (J = 0)");
    println!("{:>6} {:>16} {:>16}", "t", "measured", "var0 + R^2 t^2");
    for i in 0..=6 {
        let t = i as f64 * 2.0;
        let state = evolve(&initial, &params, t, EvolveMethod::Spectral).unwrap();
        let measured = quantum_phase_variance(&state);
        let predicted = phase_diffusion_variance(t, 1.0, n, u, var0);
        println!("{t:>6.1} {measured:>16.6} {predicted:>16.6}");
    }
    println!("\n(the quadratic law holds while the distribution stays narrow)");
}
