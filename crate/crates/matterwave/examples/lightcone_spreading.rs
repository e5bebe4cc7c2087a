//! Light-cone spreading of thermal correlations after a coherent splitting
//! quench: the relative-phase correlation function decays up to a crossover
//! distance z_c(t) = 2 c t and stays coherent beyond it, until the
//! prethermalized state with effective temperature k_B T_eff = g n1d / 2 is
//! reached across the whole system.
//!
//! Run with: cargo run --release --example lightcone_spreading

use matterwave::constants::{Species, HBAR};
use matterwave::luttinger::{
    correlation_analytic, crossover_distance, derive_params, evolve_covariance, initial_covariance,
    linear_fit, EnsembleKind, LuttingerSystem,
};

fn main() {
    // tune the transverse trap so the sound speed is 1.2 mm/s
    let c_target = 1.2e-3;
    let m = Species::Rb87.mass();
    let (a_s, n1d) = (5.2e-9, 35e6);
    let omega_perp = c_target * c_target * m / (2.0 * HBAR * a_s * n1d);
    let sys = LuttingerSystem::new(m, a_s, omega_perp, n1d, 30e-9, 120e-6).unwrap();
    let p = derive_params(&sys);
    println!(
        "# quench of a Rb-87 pair, c = {:.2} mm/s, T_eff = {:.1} nK",
        p.c * 1e3,
        p.t_eff * 1e9
    );

    let ens = initial_covariance(&sys, EnsembleKind::Quench);
    let zs: Vec<f64> = (0..500).map(|i| i as f64 * 0.1e-6).collect();

    // correlation curves at a few times
    println!(
        "\n{:>8} {:>10} {:>10} {:>10} {:>10}",
        "z/um", "t=1ms", "t=3ms", "t=6ms", "t=9ms"
    );
    for &z in &[2e-6, 5e-6, 10e-6, 15e-6, 20e-6, 30e-6, 45e-6] {
        let row: Vec<String> = [1e-3, 3e-3, 6e-3, 9e-3]
            .iter()
            .map(|&t| {
                let evolved = evolve_covariance(&ens, &sys, t).unwrap();
                format!("{:>10.4}", correlation_analytic(z, &evolved, &sys))
            })
            .collect();
        println!("{:>8.1} {}", z * 1e6, row.join(" "));
    }

    // crossover distances and the fitted front velocity
    let mut ts = Vec::new();
    let mut zcs = Vec::new();
    println!("\n{:>8} {:>10}", "t/ms", "z_c/um");
    for i in 1..=9 {
        let t = i as f64 * 1e-3;
        let evolved = evolve_covariance(&ens, &sys, t).unwrap();
        let curve: Vec<f64> = zs
            .iter()
            .map(|&z| correlation_analytic(z, &evolved, &sys))
            .collect();
        let zc = crossover_distance(&zs, &curve, 0.02).unwrap();
        println!("{:>8.0} {:>10.2}", t * 1e3, zc * 1e6);
        ts.push(t);
        zcs.push(zc);
    }
    let (slope, _) = linear_fit(&ts, &zcs).unwrap();
    println!(
        "\nfitted z_c(t) slope = {:.3} mm/s, 2c = {:.3} mm/s",
        slope * 1e3,
        2.0 * p.c * 1e3
    );
}
