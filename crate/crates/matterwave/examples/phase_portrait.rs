//! Phase portrait of the bosonic Josephson junction: a grid of initial
//! conditions integrated and tagged as Rabi-like, Josephson oscillation,
//! pi-mode or self-trapped. Emits orbit-indexed CSV on stdout, ready for
//! plotting (e.g. gnuplot: plot "portrait.csv" using 5:4).
//!
//! Run with: cargo run --release --example phase_portrait > portrait.csv

use matterwave::meanfield::{junction_params, phase_portrait, MeanFieldState};
use std::f64::consts::PI;

fn main() {
    let lambda = 1.8; // pi-modes and self-trapping both present
    let params = junction_params(1.0, lambda, 100).unwrap();

    let mut grid = Vec::new();
    for i in 0..7 {
        let z0 = -0.9 + 1.8 * i as f64 / 6.0;
        for phi0 in [0.0, PI / 2.0, PI] {
            grid.push(MeanFieldState::new(z0, phi0).unwrap());
        }
    }

    let orbits = phase_portrait(&params, &grid, 40.0, 1e-9, 400).unwrap();
    println!("orbit,class,t,z,phi_unwrapped,energy");
    for (idx, orbit) in orbits.iter().enumerate() {
        for i in 0..orbit.trajectory.len() {
            println!(
                "{idx},{},{},{},{},{}",
                orbit.class,
                orbit.trajectory.times[i],
                orbit.trajectory.states[i].z,
                orbit.trajectory.states[i].phi,
                orbit.trajectory.energy[i],
            );
        }
    }

    eprintln!("# Lambda = {lambda}, {} orbits:", orbits.len());
    for (idx, orbit) in orbits.iter().enumerate() {
        eprintln!(
            "#   orbit {idx:>2}: (z0 = {:+.2}, phi0 = {:.2}) -> {}",
            orbit.initial.z, orbit.initial.phi, orbit.class
        );
    }
}
