//! Closed-form design calculators for beam interferometry.
//!
//! Everything here is a stateless scalar function working in SI units:
//! de Broglie relations, grating diffraction, Talbot and Talbot-Lau
//! geometry, the Bragg condition, grating recoil energy, three-grating
//! phase and moiré masking, eikonal/Stark phase shifts, polarizability
//! extraction, the complex gas refractive index, coherence lengths and
//! wave-packet spreading.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::constants::{EPSILON_0, HBAR, H_PLANCK};

#[derive(Debug, Clone, PartialEq)]
pub enum BeamOpticsError {
    /// A constructor or operation received an out-of-range parameter.
    InvalidParameter(String),
    /// Talbot-Lau geometry hit the pole L1 = L_T n/(2m).
    TalbotLauPole,
    /// The Bragg condition N λ_dB / λ_ph > 1 has no solution.
    NoBraggSolution { argument: f64 },
    /// Division by a zero applied voltage in the polarizability formula.
    ZeroVoltage,
}

impl std::fmt::Display for BeamOpticsError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BeamOpticsError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            BeamOpticsError::TalbotLauPole => {
                write!(f, "Talbot-Lau geometry diverges: L1 = L_T n/(2m)")
            }
            BeamOpticsError::NoBraggSolution { argument } => {
                write!(
                    f,
                    "no Bragg solution: N*lambda_dB/lambda_ph = {argument} > 1"
                )
            }
            BeamOpticsError::ZeroVoltage => write!(f, "polarizability undefined for V = 0"),
        }
    }
}

impl std::error::Error for BeamOpticsError {}

/// An atomic or molecular beam: mass, mean speed and rms speed spread.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamParams {
    /// Mass (kg).
    pub m: f64,
    /// Mean speed (m/s).
    pub v: f64,
    /// rms speed spread (m/s).
    pub sigma_v: f64,
    /// de Broglie wavelength h/(m v) (m), cached at construction.
    pub lambda_db: f64,
}

impl BeamParams {
    pub fn new(m: f64, v: f64, sigma_v: f64) -> Result<Self, BeamOpticsError> {
        if !(m > 0.0) || !(v > 0.0) {
            return Err(BeamOpticsError::InvalidParameter(format!(
                "beam needs m > 0 and v > 0, got m = {m}, v = {v}"
            )));
        }
        if !(sigma_v >= 0.0) {
            return Err(BeamOpticsError::InvalidParameter(format!(
                "sigma_v must be >= 0, got {sigma_v}"
            )));
        }
        Ok(BeamParams {
            m,
            v,
            sigma_v,
            lambda_db: H_PLANCK / (m * v),
        })
    }

    /// Kinetic energy m v^2 / 2 (J).
    pub fn kinetic_energy(&self) -> f64 {
        0.5 * self.m * self.v * self.v
    }
}

/// A diffraction grating of period `d`; `w3` is the open-slit width of a
/// third, masking grating when present.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GratingParams {
    /// Period (m).
    pub d: f64,
    /// Reciprocal lattice vector 2π/d (rad/m), cached.
    pub g: f64,
    /// Open-slit width of the masking grating (m), if any.
    pub w3: Option<f64>,
}

impl GratingParams {
    pub fn new(d: f64, w3: Option<f64>) -> Result<Self, BeamOpticsError> {
        if !(d > 0.0) {
            return Err(BeamOpticsError::InvalidParameter(format!(
                "grating period must be > 0, got {d}"
            )));
        }
        if let Some(w) = w3 {
            if !(0.0..=d).contains(&w) {
                return Err(BeamOpticsError::InvalidParameter(format!(
                    "open-slit width must satisfy 0 <= w3 <= d, got w3 = {w}, d = {d}"
                )));
            }
        }
        Ok(GratingParams {
            d,
            g: 2.0 * PI / d,
            w3,
        })
    }
}

/// One diffraction order: momentum kick, angle, and a small-angle validity flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffractionOrder {
    pub n: i32,
    /// Momentum transfer n ħ G (kg m/s).
    pub delta_p: f64,
    /// Diffraction angle n λ_dB / d (rad).
    pub theta: f64,
    /// False when |θ| > 0.1 rad and the small-angle form is suspect.
    pub small_angle_ok: bool,
}

/// Momentum kicks δp_n = n ħ G and angles θ_n = n λ_dB/d for the requested orders.
pub fn diffraction_orders(
    beam: &BeamParams,
    grating: &GratingParams,
    n_list: &[i32],
) -> Vec<DiffractionOrder> {
    n_list
        .iter()
        .map(|&n| {
            let delta_p = n as f64 * HBAR * grating.g;
            let theta = n as f64 * beam.lambda_db / grating.d;
            DiffractionOrder {
                n,
                delta_p,
                theta,
                small_angle_ok: theta.abs() <= 0.1,
            }
        })
        .collect()
}

/// Both Talbot-length conventions, named explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TalbotLengths {
    /// d²/λ_dB, the convention used for thin/thick grating classification.
    pub l_talbot: f64,
    /// 2 d²/λ_dB, the convention used in Talbot-Lau geometry.
    pub l_t: f64,
}

pub fn talbot_lengths(lambda_db: f64, d: f64) -> Result<TalbotLengths, BeamOpticsError> {
    if !(lambda_db > 0.0) || !(d > 0.0) {
        return Err(BeamOpticsError::InvalidParameter(format!(
            "talbot lengths need lambda_dB > 0 and d > 0, got {lambda_db}, {d}"
        )));
    }
    let l_talbot = d * d / lambda_db;
    Ok(TalbotLengths {
        l_talbot,
        l_t: 2.0 * l_talbot,
    })
}

/// Talbot-Lau fringe geometry behind a grating pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TalbotLauGeometry {
    /// Distance of the fringe plane behind the second grating (m).
    pub l2: f64,
    /// Fringe period at that plane (m).
    pub d_prime: f64,
    /// Set when L2 < 0: the requested revival lies upstream.
    pub unphysical: bool,
}

/// Fringe plane L2 and period d' for the n-th revival of the m-th Fourier image.
pub fn talbot_lau(
    l1: f64,
    l_t: f64,
    n: u32,
    m_order: u32,
    d: f64,
) -> Result<TalbotLauGeometry, BeamOpticsError> {
    if !(l1 > 0.0) || !(l_t > 0.0) || !(d > 0.0) || m_order == 0 {
        return Err(BeamOpticsError::InvalidParameter(format!(
            "talbot_lau needs L1, L_T, d > 0 and m >= 1, got L1 = {l1}, L_T = {l_t}, d = {d}, m = {m_order}"
        )));
    }
    let revival = l_t * n as f64 / (2.0 * m_order as f64);
    let denom = l1 - revival;
    if denom.abs() <= 1e-12 * l1.max(revival) {
        return Err(BeamOpticsError::TalbotLauPole);
    }
    let l2 = l1 * revival / denom;
    let d_prime = d * (l2 + l1) / (m_order as f64 * l1);
    Ok(TalbotLauGeometry {
        l2,
        d_prime,
        unphysical: l2 < 0.0,
    })
}

/// Bragg angle θ_B = arcsin(N λ_dB / λ_ph) for diffraction order N.
pub fn bragg_angle(lambda_db: f64, lambda_ph: f64, order: u32) -> Result<f64, BeamOpticsError> {
    if !(lambda_db > 0.0) || !(lambda_ph > 0.0) {
        return Err(BeamOpticsError::InvalidParameter(format!(
            "bragg_angle needs positive wavelengths, got {lambda_db}, {lambda_ph}"
        )));
    }
    let arg = order as f64 * lambda_db / lambda_ph;
    if arg > 1.0 {
        return Err(BeamOpticsError::NoBraggSolution { argument: arg });
    }
    Ok(arg.asin())
}

/// Characteristic grating energy E_G = ħ²G²/2m and the recoil frequency E_G/(4ħ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GratingEnergy {
    /// E_G (J).
    pub e_g: f64,
    /// ω_rec = E_G/(4ħ) (rad/s).
    pub omega_rec: f64,
}

pub fn grating_recoil_energy(
    grating: &GratingParams,
    m: f64,
) -> Result<GratingEnergy, BeamOpticsError> {
    if !(m > 0.0) {
        return Err(BeamOpticsError::InvalidParameter(format!(
            "mass must be > 0, got {m}"
        )));
    }
    let e_g = HBAR * HBAR * grating.g * grating.g / (2.0 * m);
    Ok(GratingEnergy {
        e_g,
        omega_rec: e_g / (4.0 * HBAR),
    })
}

/// Thick-grating interaction regime relative to the grating energy scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThickGratingRegime {
    /// U ≪ E_G: Bragg scattering off a weak crystal.
    Bragg,
    /// U ≫ E_G: channeling in deep wells.
    Channeling,
    /// Potential comparable to E_G; neither limit applies.
    Intermediate,
}

/// Classify a thick-grating potential against E_G (factor-of-ten margins for ≪/≫).
pub fn classify_thick_grating(u_potential: f64, e_g: f64) -> ThickGratingRegime {
    if u_potential < 0.1 * e_g {
        ThickGratingRegime::Bragg
    } else if u_potential > 10.0 * e_g {
        ThickGratingRegime::Channeling
    } else {
        ThickGratingRegime::Intermediate
    }
}

/// Three-grating Mach-Zehnder fringe phase φ = G(x1 − 2 x2 + x3) + Δφ_int.
pub fn three_grating_phase(x1: f64, x2: f64, x3: f64, g: f64, delta_phi_int: f64) -> f64 {
    g * (x1 - 2.0 * x2 + x3) + delta_phi_int
}

/// Intensity and contrast transfer of a moiré-filtering mask of open width w3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoireMask {
    /// Mean transmitted intensity fraction w3/d.
    pub intensity_factor: f64,
    /// Contrast transfer sin(G w3/2)/(G w3/2).
    pub contrast_factor: f64,
    /// Set when w3 = 0 (no transmission at all).
    pub zero_transmission: bool,
}

pub fn moire_mask(w3: f64, d: f64) -> Result<MoireMask, BeamOpticsError> {
    if !(d > 0.0) || !(0.0..=d).contains(&w3) {
        return Err(BeamOpticsError::InvalidParameter(format!(
            "moire_mask needs 0 <= w3 <= d with d > 0, got w3 = {w3}, d = {d}"
        )));
    }
    if w3 == 0.0 {
        return Ok(MoireMask {
            intensity_factor: 0.0,
            contrast_factor: 1.0,
            zero_transmission: true,
        });
    }
    let half_gw = PI * w3 / d; // G w3 / 2
    Ok(MoireMask {
        intensity_factor: w3 / d,
        contrast_factor: half_gw.sin() / half_gw,
        zero_transmission: false,
    })
}

/// An eikonal phase shift with a weak-potential validity flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EikonalPhase {
    /// Δφ = −V L_int/(ħ v) (rad).
    pub phase: f64,
    /// False when |V| is not small against the beam kinetic energy.
    pub weak_potential_ok: bool,
}

/// Phase accumulated along the unperturbed path through a constant potential.
pub fn eikonal_phase(v_potential: f64, l_int: f64, beam: &BeamParams) -> EikonalPhase {
    EikonalPhase {
        phase: -v_potential * l_int / (HBAR * beam.v),
        weak_potential_ok: v_potential.abs() < 0.1 * beam.kinetic_energy(),
    }
}

/// Eikonal phase for the Stark potential U = −α E²/2 of a polarizable atom.
/// An attractive potential gives a positive phase.
pub fn stark_phase(alpha_pol_si: f64, e_field: f64, l_int: f64, beam: &BeamParams) -> EikonalPhase {
    eikonal_phase(-0.5 * alpha_pol_si * e_field * e_field, l_int, beam)
}

/// Refractive index n = √(1 − V/E_kin) of a region with scalar potential V.
pub fn index_from_potential(v_potential: f64, beam: &BeamParams) -> f64 {
    (1.0 - v_potential / beam.kinetic_energy()).sqrt()
}

/// Static polarizability from an interferometric phase measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarizability {
    /// SI value (C m²/V).
    pub si: f64,
    /// CGS convenience value in cm³: α_SI/(4πε₀) · 10⁶.
    pub cgs_cm3: f64,
}

/// α = (φ/V²)(D²/L_eff)(2ħv) from the measured phase φ at electrode voltage V.
pub fn polarizability_from_phase(
    phi: f64,
    v_volt: f64,
    d_sep: f64,
    l_eff: f64,
    v_beam: f64,
) -> Result<Polarizability, BeamOpticsError> {
    if v_volt == 0.0 {
        return Err(BeamOpticsError::ZeroVoltage);
    }
    if !(d_sep > 0.0) || !(l_eff > 0.0) || !(v_beam > 0.0) {
        return Err(BeamOpticsError::InvalidParameter(format!(
            "polarizability needs D, L_eff, v > 0, got {d_sep}, {l_eff}, {v_beam}"
        )));
    }
    let si = (phi / (v_volt * v_volt)) * (d_sep * d_sep / l_eff) * (2.0 * HBAR * v_beam);
    Ok(Polarizability {
        si,
        cgs_cm3: si / (4.0 * PI * EPSILON_0) * 1e6,
    })
}

/// Inverse of [`polarizability_from_phase`]: the phase produced by a known α.
pub fn phase_from_polarizability(
    alpha_si: f64,
    v_volt: f64,
    d_sep: f64,
    l_eff: f64,
    v_beam: f64,
) -> f64 {
    alpha_si * v_volt * v_volt * l_eff / (d_sep * d_sep * 2.0 * HBAR * v_beam)
}

/// Complex refractive index of a dilute gas seen by the beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasIndex {
    /// n = 1 + (2π/(k_lab k_cm)) N (f_re + i f_im).
    pub n: Complex64,
    /// Total cross section from the optical theorem, σ_tot = (4π/k_cm) f_im.
    pub sigma_tot: f64,
    /// ρ = f_re/f_im; `None` when f_im = 0.
    pub rho: Option<f64>,
}

/// Gas index from the forward scattering amplitude f = f_re + i f_im.
/// `n_density` is the density of scatterers as it enters e^{i 2π N x f / k_c}.
pub fn gas_index(
    n_density: f64,
    f_re: f64,
    f_im: f64,
    k_lab: f64,
    k_cm: f64,
) -> Result<GasIndex, BeamOpticsError> {
    if !(k_lab > 0.0) || !(k_cm > 0.0) {
        return Err(BeamOpticsError::InvalidParameter(format!(
            "gas_index needs k_lab, k_cm > 0, got {k_lab}, {k_cm}"
        )));
    }
    let pref = 2.0 * PI / (k_lab * k_cm) * n_density;
    Ok(GasIndex {
        n: Complex64::new(1.0 + pref * f_re, pref * f_im),
        sigma_tot: 4.0 * PI / k_cm * f_im,
        rho: if f_im != 0.0 { Some(f_re / f_im) } else { None },
    })
}

/// Forward-scattered wave after a path x through the gas, relative to vacuum
/// propagation: amplitude decays with Im f, phase advances with Re f.
pub fn gas_propagation(n_density: f64, f_re: f64, f_im: f64, k_cm: f64, x: f64) -> Complex64 {
    let scale = 2.0 * PI / k_cm * n_density * x;
    Complex64::new(-scale * f_im, scale * f_re).exp()
}

/// Low-energy s-wave forward scattering amplitude f ≈ −a(1 − i k a).
pub fn s_wave_amplitude(scattering_length: f64, k: f64) -> Complex64 {
    Complex64::new(
        -scattering_length,
        scattering_length * scattering_length * k,
    )
}

/// Longitudinal and transverse coherence lengths of a beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceLengths {
    /// ℓ_c = (λ_dB/2π)(v/σ_v); `None` when σ_v = 0 (infinite).
    pub longitudinal: Option<f64>,
    /// ℓ_t = λ_dB/(2α) from the collimation angle, when given.
    pub transverse_from_angle: Option<f64>,
    /// ℓ_t = (λ_dB/2)(z/w) from source distance z and width w, when given.
    pub transverse_from_source: Option<f64>,
}

/// Coherence lengths from the speed spread and, optionally, the collimation
/// angle α or the source geometry (distance z, aperture width w).
pub fn coherence_lengths(
    beam: &BeamParams,
    collimation_angle: Option<f64>,
    source: Option<(f64, f64)>,
) -> CoherenceLengths {
    let longitudinal = if beam.sigma_v > 0.0 {
        Some(beam.lambda_db / (2.0 * PI) * beam.v / beam.sigma_v)
    } else {
        None
    };
    let transverse_from_angle = collimation_angle
        .filter(|&a| a > 0.0)
        .map(|a| 0.5 * beam.lambda_db / a);
    let transverse_from_source = source
        .filter(|&(z, w)| z > 0.0 && w > 0.0)
        .map(|(z, w)| 0.5 * beam.lambda_db * z / w);
    CoherenceLengths {
        longitudinal,
        transverse_from_angle,
        transverse_from_source,
    }
}

/// Free-space spreading of a Gaussian wave packet,
/// σ_x(t) = √(σ_x0² + (ħt/m)² σ_k0²).
pub fn wavepacket_spread(t: f64, sigma_x0: f64, sigma_k0: f64, m: f64) -> f64 {
    let drift = HBAR * t / m * sigma_k0;
    (sigma_x0 * sigma_x0 + drift * drift).sqrt()
}

/// Phase and group velocity of a matter wave in a medium of index n:
/// v_ph = v/(2n), v_g = v/n.
pub fn velocities(beam: &BeamParams, n_index: f64) -> (f64, f64) {
    (beam.v / (2.0 * n_index), beam.v / n_index)
}
