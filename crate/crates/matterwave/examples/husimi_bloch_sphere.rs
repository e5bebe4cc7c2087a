//! Husimi quasiprobability of two-mode states on the generalized Bloch
//! sphere, rendered as a coarse ASCII density map over (θ, φ). A coherent
//! state shows an isotropic spot; the interacting ground state is squeezed
//! along the number direction (narrow in θ, wide in φ).
//!
//! Run with: cargo run --release --example husimi_bloch_sphere

use matterwave::twomode::{
    coherent_state, ground_state, husimi_q, phase_distribution, BlochAngle, BoseHubbardParams,
    TwoModeState,
};
use std::f64::consts::PI;

fn render(label: &str, state: &TwoModeState) {
    println!("\n# {label}");
    let (n_theta, n_phi) = (21, 64);
    let ramp = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    let mut q_max = 0.0f64;
    let mut grid = vec![vec![0.0; n_phi]; n_theta];
    for (it, row) in grid.iter_mut().enumerate() {
        let theta = PI * it as f64 / (n_theta - 1) as f64;
        for (ip, cell) in row.iter_mut().enumerate() {
            let phi = -PI + 2.0 * PI * ip as f64 / n_phi as f64;
            *cell = husimi_q(state, BlochAngle::new(theta, phi).unwrap()).unwrap();
            q_max = q_max.max(*cell);
        }
    }
    println!("theta runs top to bottom, phi runs -pi..pi left to right, peak Q = {q_max:.3}");
    for row in &grid {
        let line: String = row
            .iter()
            .map(|q| ramp[((q / q_max) * (ramp.len() - 1) as f64).round() as usize])
            .collect();
        println!("|{line}|");
    }
}

fn main() {
    let n = 40;

    let coherent = coherent_state(BlochAngle::new(PI / 2.0, 0.0).unwrap(), n).unwrap();
    render(
        "coherent state |pi/2, 0>: isotropic uncertainty spot",
        &coherent,
    );

    let params = BoseHubbardParams::new(1.0, 2.0 * 0.5, 0.0, n).unwrap();
    let (squeezed, _) = ground_state(&params).unwrap();
    render(
        "interacting ground state (gamma N = 20): number squeezed",
        &squeezed,
    );

    println!("\n# operational phase distribution P(phi) of both states");
    println!("{:>8} {:>14} {:>14}", "phi", "coherent", "squeezed");
    let pc = phase_distribution(&coherent, 16).unwrap();
    let ps = phase_distribution(&squeezed, 16).unwrap();
    for (c, s) in pc.iter().zip(&ps) {
        println!("{:>8.3} {:>14.6} {:>14.6}", c.0, c.1, s.1);
    }
}
