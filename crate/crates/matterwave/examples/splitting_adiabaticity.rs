//! Coherent splitting of a double well: the two-level eigensystem under a
//! bias, the adiabaticity margin along an exponential tunnel-coupling ramp
//! (which always breaks down at late times), and the number squeezing frozen
//! in when tunneling stops.
//!
//! Run with: cargo run --release --example splitting_adiabaticity

use matterwave::twomode::{
    adiabaticity_margin, ground_state, spin_observables, split_eigensystem, BoseHubbardParams,
};

fn main() {
    println!("# two-level eigensystem vs bias (J = 1)");
    println!(
        "{:>8} {:>10} {:>10} {:>10}",
        "delta", "E_g", "E_e", "theta_mix"
    );
    for delta in [0.0, 0.5, 2.0, 10.0] {
        let s = split_eigensystem(1.0, delta).unwrap();
        println!(
            "{delta:>8.1} {:>10.4} {:>10.4} {:>10.4}",
            s.e_ground, s.e_excited, s.theta_mix
        );
    }
    println!("(theta_mix -> 0: the ground state collapses into the lower well)");

    // exponential ramp J(t) = J0 exp(-t/tau): the margin grows without bound
    let (j0, tau) = (1.0, 20.0);
    println!("\n# adiabaticity margin along J(t) = J0 exp(-t/tau), tau = {tau}");
    println!("{:>6} {:>12} {:>14}", "t", "J(t)", "margin");
    for i in 0..=8 {
        let t = i as f64 * 25.0;
        let j = j0 * (-t / tau).exp();
        let margin = adiabaticity_margin(j, 0.0, -j / tau, 0.0).unwrap();
        println!("{t:>6.0} {j:>12.4e} {:>14.4e}", margin);
    }
    println!("(margin >= 1 means the splitting can no longer follow adiabatically)");

    // squeezing frozen at the point where tunneling effectively stops
    println!("\n# ground-state number squeezing at the freeze-out coupling");
    let n = 100;
    println!("{:>12} {:>10} {:>10}", "J_freeze", "gamma", "xi_N");
    for j_freeze in [1.0, 0.1, 0.01, 0.001] {
        let params = BoseHubbardParams::new(j_freeze, 0.01, 0.0, n).unwrap();
        let (state, _) = ground_state(&params).unwrap();
        let obs = spin_observables(&state).unwrap();
        println!(
            "{j_freeze:>12.3} {:>10.3} {:>10.4}",
            params.gamma().unwrap(),
            obs.xi_n
        );
    }
    println!("(slower ramps freeze out later, at larger gamma, hence more squeezing)");
}
