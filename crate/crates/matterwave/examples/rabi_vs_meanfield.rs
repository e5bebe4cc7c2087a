//! Without interactions the exact quantum dynamics of N atoms reduces to the
//! mean-field Josephson equations: <S_z(t)> equals z(t) N/2 to machine-level
//! accuracy. With interactions switched on, the two visibly part ways.
//!
//! Run with: cargo run --release --example rabi_vs_meanfield

use matterwave::meanfield::{integrate, MeanFieldState};
use matterwave::twomode::{
    coherent_state, evolve, spin_observables, BlochAngle, BoseHubbardParams, EvolveMethod,
};

fn compare(u: f64, label: &str) {
    let n = 50;
    let params = BoseHubbardParams::new(1.0, u, 0.0, n).unwrap();
    let (theta0, phi0) = (1.2, 0.7);
    let initial = coherent_state(BlochAngle::new(theta0, phi0).unwrap(), n).unwrap();
    let t_end = 2.0 * std::f64::consts::TAU / params.omega_rabi();

    let traj = integrate(
        &MeanFieldState::new(theta0.cos(), phi0).unwrap(),
        &params,
        t_end,
        1e-11,
        9,
    )
    .unwrap();

    println!("\n# {label} (U = {u})");
    println!(
        "{:>8} {:>14} {:>14} {:>12}",
        "t", "<Sz> quantum", "z N/2 meanfield", "difference"
    );
    for (i, &t) in traj.times.iter().enumerate() {
        let state = evolve(&initial, &params, t, EvolveMethod::Spectral).unwrap();
        let sz = spin_observables(&state).unwrap().sz;
        let mf = traj.states[i].z * n as f64 / 2.0;
        println!("{t:>8.3} {sz:>14.8} {mf:>14.8} {:>12.2e}", (sz - mf).abs());
    }
}

fn main() {
    compare(0.0, "linear Rabi dynamics: exact equivalence");
    compare(
        0.04,
        "interacting junction: mean field is only an approximation",
    );
}
