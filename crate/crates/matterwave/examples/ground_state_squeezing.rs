//! Ground-state fluctuations of the two-site Bose-Hubbard model across the
//! Rabi, Josephson and Fock regimes: number squeezing, coherence and spin
//! squeezing from exact diagonalization, next to the harmonic approximation.
//!
//! Run with: cargo run --release --example ground_state_squeezing

use matterwave::twomode::{
    ground_state, harmonic_ground_fluctuations, spin_observables, BoseHubbardParams,
};

fn main() {
    let n = 100;
    println!("# two-site Bose-Hubbard ground state, N = {n}, delta = 0");
    println!(
        "{:>12} {:>10} {:>10} {:>10} {:>10} {:>12} {:>12}",
        "gamma", "regime", "xi_N", "coherence", "xi_S", "dSz exact", "dSz harmonic"
    );

    let mut gamma = 1e-4;
    while gamma < 2e3 {
        let params = BoseHubbardParams::new(1.0, 2.0 * gamma, 0.0, n).unwrap();
        let (state, _energy) = ground_state(&params).unwrap();
        let obs = spin_observables(&state).unwrap();
        let harmonic = harmonic_ground_fluctuations(&params).unwrap();
        let regime = if gamma < 1.0 / n as f64 {
            "Rabi"
        } else if gamma <= n as f64 {
            "Josephson"
        } else {
            "Fock"
        };
        println!(
            "{:>12.4e} {:>10} {:>10.4} {:>10.4} {:>10} {:>12.4} {:>12.4}",
            gamma,
            regime,
            obs.xi_n,
            obs.coherence,
            obs.xi_s.map_or("undef".to_string(), |x| format!("{x:.4}")),
            obs.var_sz.sqrt(),
            harmonic.delta_sz,
        );
        gamma *= 10.0f64.powf(0.5);
    }

    let floor = (2.0 / n as f64).sqrt();
    println!("\nadiabatic spin-squeezing floor sqrt(2/N) = {floor:.4}");
    println!(
        "(the exact curve approaches sqrt(2/(N+2)) = {:.4} from above)",
        (2.0 / (n as f64 + 2.0)).sqrt()
    );
}
