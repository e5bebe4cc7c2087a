//! The bosonic Josephson junction: plasma oscillations, the self-trapping
//! bifurcation at the separatrix, and the characteristic frequencies.
//!
//! Run with: cargo run --release --example josephson_self_trapping

use matterwave::meanfield::{
    characteristic_frequencies, classify_regime, fixed_points, integrate, junction_params,
    oscillation_frequency, z_max, MeanFieldState,
};

fn main() {
    // z0 = 0.6, phi0 = 0: the analytic separatrix sits at Lambda = 10
    let z0 = 0.6;
    println!("# launch point (z0 = {z0}, phi0 = 0); separatrix at Lambda = 10");
    println!(
        "{:>8} {:>12} {:>12} {:>14}",
        "Lambda", "min z", "max z", "behavior"
    );
    for lambda in [2.0, 8.0, 9.5, 10.5, 12.0, 20.0] {
        let params = junction_params(1.0, lambda, 100).unwrap();
        let traj = integrate(
            &MeanFieldState::new(z0, 0.0).unwrap(),
            &params,
            60.0,
            1e-10,
            2048,
        )
        .unwrap();
        let min_z = traj.states.iter().map(|s| s.z).fold(f64::MAX, f64::min);
        let behavior = if min_z > 0.0 {
            "self-trapped"
        } else {
            "oscillating"
        };
        println!(
            "{lambda:>8.1} {min_z:>12.4} {:>12.4} {:>14}",
            traj.max_abs_z(),
            behavior
        );
    }

    // small oscillations around (0,0) run at the plasma frequency
    println!("\n# small-amplitude frequency vs omega_p = Omega_R sqrt(1 + Lambda)");
    println!(
        "{:>8} {:>12} {:>12} {:>10}",
        "Lambda", "measured", "omega_p", "regime"
    );
    for lambda in [0.0, 1.0, 3.0, 8.0] {
        let params = junction_params(1.0, lambda, 100).unwrap();
        let freqs = characteristic_frequencies(&params).unwrap();
        let traj = integrate(
            &MeanFieldState::new(0.01, 0.0).unwrap(),
            &params,
            120.0,
            1e-10,
            8192,
        )
        .unwrap();
        let z: Vec<f64> = traj.states.iter().map(|s| s.z).collect();
        let measured = oscillation_frequency(&traj.times, &z).unwrap();
        println!(
            "{lambda:>8.1} {measured:>12.5} {:>12.5} {:>10}",
            freqs.omega_plasma,
            classify_regime(&params).unwrap()
        );
    }

    // fixed-point structure and the largest Josephson amplitude
    println!("\n# fixed points and z_max across the pi-mode bifurcation");
    for lambda in [0.5, 1.0, 2.0, 4.0] {
        let params = junction_params(1.0, lambda, 100).unwrap();
        let pts = fixed_points(&params).unwrap();
        let z_pi: Vec<String> = pts.iter().skip(2).map(|p| format!("{:+.3}", p.z)).collect();
        println!(
            "Lambda = {lambda:>4}: {} fixed points, pi-branch z = [{}], z_max = {}",
            pts.len(),
            z_pi.join(", "),
            z_max(lambda).map_or("-".into(), |z| format!("{z:.4}")),
        );
    }
}
