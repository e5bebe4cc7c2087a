//! Analytic time-of-flight physics for a condensate released from a double
//! well: free Gaussian expansion, the double-slit interference pattern with
//! its time-dependent fringe wave vector, the in-trap recombination readout
//! z = C sin φ, and the phase accumulated between decoupled wells.

use num_complex::Complex64;

use crate::constants::HBAR;

#[derive(Debug, Clone, PartialEq)]
pub enum TofError {
    InvalidParameter(String),
}

impl std::fmt::Display for TofError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TofError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl std::error::Error for TofError {}

/// Trap release parameters. The ground-state width σ₀ = sqrt(ħ/mω) is
/// derived at construction and kept consistent with (m, ω).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TofParams {
    /// Atomic mass (kg).
    pub m: f64,
    /// Initial trap angular frequency (rad/s).
    pub omega: f64,
    /// Ground-state width sqrt(ħ/mω) (m).
    pub sigma0: f64,
    /// Well separation (m).
    pub d: f64,
}

impl TofParams {
    pub fn new(m: f64, omega: f64, d: f64) -> Result<Self, TofError> {
        if !(m > 0.0) || !(omega > 0.0) || !(d >= 0.0) {
            return Err(TofError::InvalidParameter(format!(
                "need m > 0, omega > 0, d >= 0; got m = {m}, omega = {omega}, d = {d}"
            )));
        }
        Ok(TofParams {
            m,
            omega,
            sigma0: (HBAR / (m * omega)).sqrt(),
            d,
        })
    }

    /// ωt beyond which the overlapping-envelope (single-envelope) form holds:
    /// sqrt(d²/(4σ₀²) - 1), clamped at zero for d ≤ 2σ₀.
    pub fn long_time_threshold(&self) -> f64 {
        (self.d * self.d / (4.0 * self.sigma0 * self.sigma0) - 1.0)
            .max(0.0)
            .sqrt()
    }
}

/// Width of a freely expanding Gaussian packet, σ(t) = σ₀ sqrt(1 + ω²t²).
pub fn gaussian_width(t: f64, params: &TofParams) -> f64 {
    let wt = params.omega * t;
    params.sigma0 * (1.0 + wt * wt).sqrt()
}

/// The fringe wave vector at expansion time t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeWavevector {
    /// k(t) = ħ t d / (2 m σ₀² σ(t)²) (rad/m); the density fringe spacing is π/k.
    pub k: f64,
    /// False at t = 0, where no fringes have formed yet.
    pub fringes_formed: bool,
}

impl FringeWavevector {
    /// Fringe spacing λ_F = π/k; None when no fringes have formed.
    pub fn fringe_spacing(&self) -> Option<f64> {
        (self.fringes_formed && self.k > 0.0).then(|| std::f64::consts::PI / self.k)
    }
}

pub fn fringe_wavevector(t: f64, params: &TofParams) -> FringeWavevector {
    if t <= 0.0 {
        return FringeWavevector {
            k: 0.0,
            fringes_formed: false,
        };
    }
    let sigma_t = gaussian_width(t, params);
    let k =
        HBAR * t * params.d / (2.0 * params.m * params.sigma0 * params.sigma0 * sigma_t * sigma_t);
    FringeWavevector {
        k,
        fringes_formed: params.d > 0.0,
    }
}

/// A sampled interference density profile, normalized to unit integral.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityPattern {
    pub x: Vec<f64>,
    pub density: Vec<f64>,
    /// True once σ(t) > d and the envelopes essentially coincide.
    pub overlap: bool,
}

/// Complex expanded wave packet released from x = center:
/// f(x,t) = (πσ²)^(-1/4) exp(-(x-c)²/2σ(t)²) exp(i φ(x,t)) with the
/// quadratic expansion phase φ = (ħt/2mσ₀²)((x-c)²/σ(t)² - 1).
fn expanded_packet(x: f64, t: f64, center: f64, params: &TofParams) -> Complex64 {
    let sigma_t = gaussian_width(t, params);
    let dx = x - center;
    let mag = (std::f64::consts::PI * sigma_t * sigma_t).powf(-0.25)
        * (-dx * dx / (2.0 * sigma_t * sigma_t)).exp();
    let phase = HBAR * t / (2.0 * params.m * params.sigma0 * params.sigma0)
        * (dx * dx / (sigma_t * sigma_t) - 1.0);
    Complex64::from_polar(mag, phase)
}

/// Double-well interference density on `x_grid` at time t, for relative
/// phase `phi` and population imbalance z (p_l = (1+z)/2, p_r = (1-z)/2):
/// |sqrt(p_l) f(x) + sqrt(p_r) e^{iφ} f(-x)|², normalized to unit integral.
pub fn density_pattern(
    x_grid: &[f64],
    t: f64,
    phi: f64,
    params: &TofParams,
    imbalance: f64,
) -> Result<DensityPattern, TofError> {
    if x_grid.len() < 2 {
        return Err(TofError::InvalidParameter(
            "density grid needs at least 2 points".into(),
        ));
    }
    if !(t >= 0.0) {
        return Err(TofError::InvalidParameter(format!(
            "time must be >= 0, got {t}"
        )));
    }
    if !(imbalance.abs() <= 1.0) {
        return Err(TofError::InvalidParameter(format!(
            "imbalance must satisfy |z| <= 1, got {imbalance}"
        )));
    }
    let p_l = 0.5 * (1.0 + imbalance);
    let p_r = 0.5 * (1.0 - imbalance);
    let phase = Complex64::from_polar(1.0, phi);
    let x_left = -0.5 * params.d;
    let x_right = 0.5 * params.d;
    let mut density: Vec<f64> = x_grid
        .iter()
        .map(|&x| {
            let psi = p_l.sqrt() * expanded_packet(x, t, x_left, params)
                + p_r.sqrt() * phase * expanded_packet(x, t, x_right, params);
            psi.norm_sqr()
        })
        .collect();
    // trapezoidal normalization to unit integral over the grid
    let mut integral = 0.0;
    for i in 1..x_grid.len() {
        integral += 0.5 * (density[i] + density[i - 1]) * (x_grid[i] - x_grid[i - 1]);
    }
    if integral > 0.0 {
        for v in &mut density {
            *v /= integral;
        }
    }
    Ok(DensityPattern {
        x: x_grid.to_vec(),
        density,
        overlap: gaussian_width(t, params) > params.d,
    })
}

/// In-trap recombination readout: the final imbalance is z = C sin φ.
pub fn recombination_imbalance(contrast: f64, phi: f64) -> Result<f64, TofError> {
    if !(0.0..=1.0).contains(&contrast) {
        return Err(TofError::InvalidParameter(format!(
            "contrast must lie in [0, 1], got {contrast}"
        )));
    }
    Ok(contrast * phi.sin())
}

/// Relative phase accumulated by decoupled wells under a force F along the
/// splitting direction plus a trap-frequency mismatch Δω:
/// φ = F d t/ħ + Δω t/2.
pub fn accumulated_phase(force: f64, d: f64, t: f64, delta_omega: f64) -> Result<f64, TofError> {
    if !(t >= 0.0) {
        return Err(TofError::InvalidParameter(format!(
            "time must be >= 0, got {t}"
        )));
    }
    Ok(force * d * t / HBAR + 0.5 * delta_omega * t)
}
