//! Design calculators for beam interferometry: diffraction angles, Talbot-Lau
//! geometry, Bragg angles, grating recoil energy, eikonal and Stark phases,
//! gas refractive index and coherence lengths — the numbers one works out
//! before building a grating interferometer.
//!
//! Run with: cargo run --release --example beam_optics_design

use matterwave::beamoptics::*;
use matterwave::constants::{Species, EV};

fn main() {
    // a 1000 m/s sodium beam on 100 nm gratings
    let beam = BeamParams::new(Species::Na.mass(), 1000.0, 30.0).unwrap();
    let grating = GratingParams::new(100e-9, Some(40e-9)).unwrap();
    println!(
        "# Na beam, v = 1000 m/s: lambda_dB = {:.2} pm",
        beam.lambda_db * 1e12
    );

    println!("\n## diffraction orders off a 100 nm grating");
    for order in diffraction_orders(&beam, &grating, &[0, 1, 2, 3]) {
        println!(
            "n = {}: delta_p = {:.3e} kg m/s, theta = {:.3e} rad",
            order.n, order.delta_p, order.theta
        );
    }

    let talbot = talbot_lengths(beam.lambda_db, grating.d).unwrap();
    println!(
        "\n## Talbot lengths: d^2/lambda = {:.3} mm, 2d^2/lambda = {:.3} mm",
        talbot.l_talbot * 1e3,
        talbot.l_t * 1e3
    );
    let tl = talbot_lau(talbot.l_t / 2.0, talbot.l_t, 1, 2, grating.d).unwrap();
    println!(
        "canonical Talbot-Lau (L1 = L_T/2): L2 = {:.3} mm, d' = {:.0} nm",
        tl.l2 * 1e3,
        tl.d_prime * 1e9
    );

    let mask = moire_mask(40e-9, grating.d).unwrap();
    println!(
        "moire mask with 40 nm slits: intensity x{:.2}, contrast x{:.3}",
        mask.intensity_factor, mask.contrast_factor
    );

    let recoil = grating_recoil_energy(&grating, beam.m).unwrap();
    println!(
        "\n## grating energy scale E_G = {:.3e} J = {:.2e} eV ({} recoil frequencies)",
        recoil.e_g,
        recoil.e_g / EV,
        4
    );
    println!(
        "omega_rec = 2 pi x {:.1} kHz",
        recoil.omega_rec / (2.0 * std::f64::consts::PI) / 1e3
    );

    let theta_b = bragg_angle(beam.lambda_db, 589e-9, 1).unwrap();
    println!(
        "first-order Bragg angle on a 589 nm standing wave: {:.2e} rad",
        theta_b
    );

    println!("\n## phase shifts");
    let eik = eikonal_phase(6.6e-12 * EV, 0.10, &beam);
    println!(
        "V = 6.6e-12 eV over 10 cm: phase = {:.3} rad, |1 - n| = {:.2e}",
        eik.phase,
        (1.0 - index_from_potential(6.6e-12 * EV, &beam)).abs()
    );
    let alpha_na_si =
        24.11e-24 * 4.0 * std::f64::consts::PI * matterwave::constants::EPSILON_0 * 1e-6;
    let stark = stark_phase(alpha_na_si, 3e5, 0.05, &beam);
    println!("Stark phase at 3e5 V/m over 5 cm: {:.3} rad", stark.phase);
    let back = polarizability_from_phase(stark.phase, 600.0, 2e-3, 0.05, beam.v).unwrap();
    println!(
        "(recovered alpha from a 600 V measurement: {:.2e} cm^3)",
        back.cgs_cm3
    );

    println!("\n## gas cell in one interferometer arm");
    let f = s_wave_amplitude(3e-9, 1e7);
    let gas = gas_index(1e20, f.re, f.im, 1e7, 1e7).unwrap();
    println!(
        "n - 1 = {:.3e} + {:.3e} i, sigma_tot = {:.3e} m^2, rho = {:.2}",
        gas.n.re - 1.0,
        gas.n.im,
        gas.sigma_tot,
        gas.rho.unwrap()
    );

    println!("\n## coherence lengths (sigma_v = 30 m/s, 10 urad collimation)");
    let coh = coherence_lengths(&beam, Some(10e-6), Some((1.0, 50e-6)));
    println!("longitudinal: {:.1} pm", coh.longitudinal.unwrap() * 1e12);
    println!(
        "transverse (collimation): {:.2} um",
        coh.transverse_from_angle.unwrap() * 1e6
    );
    println!(
        "transverse (source): {:.2} um",
        coh.transverse_from_source.unwrap() * 1e6
    );

    let (v_ph, v_g) = velocities(&beam, 1.0);
    println!("\nphase velocity {v_ph} m/s, group velocity {v_g} m/s (vacuum is dispersive)");
}
