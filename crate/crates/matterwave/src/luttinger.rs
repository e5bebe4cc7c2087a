//! Pairs of 1D quasicondensates as Luttinger liquids.
//!
//! The relative phase/density sector of two decoupled 1D Bose gases is a set
//! of independent harmonic modes k_j = 2πj/L (periodic box, k = 0 excluded,
//! UV cutoff at the inverse healing length). Each mode carries quadrature
//! variances ⟨|ν_k|²⟩ and ⟨|φ_k|²⟩ which evolve by symplectic rotation at
//! ω_k = c k. Thermal covariances are a fixed point of that rotation; the
//! quench (coherent-splitting) covariances dephase towards a prethermalized
//! state with effective temperature k_B T_eff = g n₁d / 2.
//!
//! Everything is SI; ⟨|φ_k|²⟩ follows the continuum normalization in which
//! the real-space increment variance is 2∫(dk/π) ⟨|φ_k|²⟩ (1 − cos k z̄).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::constants::{HBAR, K_B};

#[derive(Debug, Clone, PartialEq)]
pub enum LuttingerError {
    InvalidParameter(String),
    /// A correlation curve that never settles into the plateau band.
    NoCrossover,
}

impl std::fmt::Display for LuttingerError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LuttingerError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            LuttingerError::NoCrossover => {
                write!(
                    f,
                    "correlation curve never enters the plateau band (pre-plateau regime)"
                )
            }
        }
    }
}

impl std::error::Error for LuttingerError {}

/// A single 1D gas (or the relative sector of a split pair).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuttingerSystem {
    /// Atomic mass (kg).
    pub m: f64,
    /// s-wave scattering length (m).
    pub a_s: f64,
    /// Transverse trap angular frequency (rad/s).
    pub omega_perp: f64,
    /// 1D line density (1/m).
    pub n1d: f64,
    /// Temperature (K).
    pub temperature: f64,
    /// System length, setting the mode spacing 2π/L (m).
    pub l_sys: f64,
    /// Number of modes kept below the UV cutoff.
    pub n_modes: usize,
}

impl LuttingerSystem {
    /// Build a system, choosing the mode count from the default UV cutoff
    /// k_max = 2π/ξ_h.
    pub fn new(
        m: f64,
        a_s: f64,
        omega_perp: f64,
        n1d: f64,
        temperature: f64,
        l_sys: f64,
    ) -> Result<Self, LuttingerError> {
        let mut sys = LuttingerSystem {
            m,
            a_s,
            omega_perp,
            n1d,
            temperature,
            l_sys,
            n_modes: 0,
        };
        sys.validate()?;
        let k_max = 2.0 * std::f64::consts::PI / sys.healing_length();
        let dk = 2.0 * std::f64::consts::PI / l_sys;
        sys.n_modes = (k_max / dk).floor().max(1.0) as usize;
        Ok(sys)
    }

    /// Build a system with an explicit mode count (custom UV cutoff).
    pub fn with_modes(
        m: f64,
        a_s: f64,
        omega_perp: f64,
        n1d: f64,
        temperature: f64,
        l_sys: f64,
        n_modes: usize,
    ) -> Result<Self, LuttingerError> {
        if n_modes == 0 {
            return Err(LuttingerError::InvalidParameter(
                "need at least one mode".into(),
            ));
        }
        let sys = LuttingerSystem {
            m,
            a_s,
            omega_perp,
            n1d,
            temperature,
            l_sys,
            n_modes,
        };
        sys.validate()?;
        Ok(sys)
    }

    fn validate(&self) -> Result<(), LuttingerError> {
        for (name, v) in [
            ("m", self.m),
            ("a_s", self.a_s),
            ("omega_perp", self.omega_perp),
            ("n1d", self.n1d),
            ("T", self.temperature),
            ("L_sys", self.l_sys),
        ] {
            if !(v > 0.0) {
                return Err(LuttingerError::InvalidParameter(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// 1D coupling g = 2 ħ a_s ω⊥.
    pub fn g1d(&self) -> f64 {
        2.0 * HBAR * self.a_s * self.omega_perp
    }

    /// Speed of sound c = sqrt(g n₁d / m).
    pub fn sound_speed(&self) -> f64 {
        (self.g1d() * self.n1d / self.m).sqrt()
    }

    /// Healing length ξ_h = ħ/(m c).
    pub fn healing_length(&self) -> f64 {
        HBAR / (self.m * self.sound_speed())
    }

    /// Thermal coherence length of the relative phase, λ_T = 2ħ²n₁d/(m k_B T).
    pub fn thermal_coherence_length(&self) -> f64 {
        2.0 * HBAR * HBAR * self.n1d / (self.m * K_B * self.temperature)
    }
}

/// Derived gas parameters with 1D-validity flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// 1D coupling g (J m).
    pub g: f64,
    /// Speed of sound (m/s).
    pub c: f64,
    /// Luttinger parameter K = πħ sqrt(n₁d/(m g)) = π γ^{-1/2}.
    pub k_luttinger: f64,
    /// Healing length (m).
    pub xi_h: f64,
    /// Thermal coherence length (m).
    pub lambda_t: f64,
    /// Lieb-Liniger parameter γ = m g/(ħ² n₁d).
    pub gamma_ll: f64,
    /// Degeneracy temperature T_D = ħ²n₁d²/(2 m k_B) (K).
    pub t_degeneracy: f64,
    /// Prethermal effective temperature k_B T_eff = g n₁d/2 (K).
    pub t_eff: f64,
    /// False when a_s is not small against the transverse oscillator length.
    pub scattering_1d_ok: bool,
    /// False when k_B T or μ ≈ g n₁d exceeds ħω⊥ (gas no longer 1D).
    pub one_d_ok: bool,
}

/// All derived parameters of the gas.
pub fn derive_params(system: &LuttingerSystem) -> DerivedParams {
    let g = system.g1d();
    let c = system.sound_speed();
    let gamma_ll = system.m * g / (HBAR * HBAR * system.n1d);
    let a_perp = (HBAR / (system.m * system.omega_perp)).sqrt();
    let mu = g * system.n1d;
    DerivedParams {
        g,
        c,
        k_luttinger: std::f64::consts::PI * HBAR * (system.n1d / (system.m * g)).sqrt(),
        xi_h: system.healing_length(),
        lambda_t: system.thermal_coherence_length(),
        gamma_ll,
        t_degeneracy: HBAR * HBAR * system.n1d * system.n1d / (2.0 * system.m * K_B),
        t_eff: g * system.n1d / (2.0 * K_B),
        scattering_1d_ok: system.a_s < 0.1 * a_perp,
        one_d_ok: K_B * system.temperature <= HBAR * system.omega_perp
            && mu <= HBAR * system.omega_perp,
    }
}

/// How an ensemble's covariances were initialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnsembleKind {
    /// Boltzmann occupations of a gas at temperature T.
    Thermal,
    /// Binomial splitting noise of an instantaneous quench.
    Quench,
}

impl std::fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EnsembleKind::Thermal => write!(f, "thermal"),
            EnsembleKind::Quench => write!(f, "quench"),
        }
    }
}

/// Per-mode quadrature covariances of the relative sector.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeEnsemble {
    /// Mode wave vectors k_j = 2πj/L, strictly increasing (rad/m).
    pub k: Vec<f64>,
    /// Mode frequencies ω_k = c k (rad/s).
    pub omega: Vec<f64>,
    /// Density-quadrature variances ⟨|ν_k|²⟩ (1/m).
    pub var_nu: Vec<f64>,
    /// Phase-quadrature variances ⟨|φ_k|²⟩ (m).
    pub var_phi: Vec<f64>,
    /// Symmetrized cross covariance ⟨φ_k ν_k⟩; zero for both initial kinds,
    /// populated by evolution so that composition and the symplectic
    /// invariant are exact.
    pub cov_nuphi: Vec<f64>,
    pub kind: EnsembleKind,
    /// Evolution time accumulated since preparation (s).
    pub time: f64,
}

impl ModeEnsemble {
    pub fn n_modes(&self) -> usize {
        self.k.len()
    }

    /// Per-mode symplectic invariant var_nu·var_phi − cov².
    pub fn symplectic_determinant(&self, j: usize) -> f64 {
        self.var_nu[j] * self.var_phi[j] - self.cov_nuphi[j] * self.cov_nuphi[j]
    }
}

/// Initial covariances: thermal Boltzmann occupations or quench
/// (binomial-splitting) noise.
pub fn initial_covariance(system: &LuttingerSystem, kind: EnsembleKind) -> ModeEnsemble {
    let c = system.sound_speed();
    let dk = 2.0 * std::f64::consts::PI / system.l_sys;
    let k: Vec<f64> = (1..=system.n_modes).map(|j| j as f64 * dk).collect();
    let omega: Vec<f64> = k.iter().map(|kj| c * kj).collect();
    let (var_nu, var_phi): (Vec<f64>, Vec<f64>) = match kind {
        EnsembleKind::Thermal => {
            let g = system.g1d();
            let kbt = K_B * system.temperature;
            let nu = kbt / (2.0 * g);
            k.iter()
                .map(|kj| {
                    (
                        nu,
                        2.0 * system.m * kbt / (HBAR * HBAR * system.n1d * kj * kj),
                    )
                })
                .unzip()
        }
        EnsembleKind::Quench => k
            .iter()
            .map(|_| (0.5 * system.n1d, 0.5 / system.n1d))
            .unzip(),
    };
    let cov_nuphi = vec![0.0; k.len()];
    ModeEnsemble {
        k,
        omega,
        var_nu,
        var_phi,
        cov_nuphi,
        kind,
        time: 0.0,
    }
}

/// Free dephasing evolution of the quadrature covariances by time t:
/// φ_k(t) = φ_k cos ω_k t + κ_k ν_k sin ω_k t,
/// ν_k(t) = ν_k cos ω_k t − (φ_k/κ_k) sin ω_k t, with κ_k = 2mc/(ħ k n₁d).
pub fn evolve_covariance(
    ensemble: &ModeEnsemble,
    system: &LuttingerSystem,
    t: f64,
) -> Result<ModeEnsemble, LuttingerError> {
    if !(t >= 0.0) {
        return Err(LuttingerError::InvalidParameter(format!(
            "time must be >= 0, got {t}"
        )));
    }
    let c = system.sound_speed();
    let mut out = ensemble.clone();
    for j in 0..ensemble.n_modes() {
        let kappa = 2.0 * system.m * c / (HBAR * ensemble.k[j] * system.n1d);
        let (s, co) = (ensemble.omega[j] * t).sin_cos();
        let (vp, vn, cv) = (
            ensemble.var_phi[j],
            ensemble.var_nu[j],
            ensemble.cov_nuphi[j],
        );
        out.var_phi[j] = vp * co * co + kappa * kappa * vn * s * s + 2.0 * kappa * cv * s * co;
        out.var_nu[j] = vn * co * co + vp * s * s / (kappa * kappa) - 2.0 * cv * s * co / kappa;
        out.cov_nuphi[j] = cv * (co * co - s * s) + s * co * (kappa * vn - vp / kappa);
    }
    out.time = ensemble.time + t;
    Ok(out)
}

/// The infinite-time average of the dephasing evolution (the prethermalized
/// covariances): var_phi → (var_phi + κ²var_nu)/2, var_nu → conjugate, cov → 0.
pub fn dephased_covariance(ensemble: &ModeEnsemble, system: &LuttingerSystem) -> ModeEnsemble {
    let c = system.sound_speed();
    let mut out = ensemble.clone();
    for j in 0..ensemble.n_modes() {
        let kappa = 2.0 * system.m * c / (HBAR * ensemble.k[j] * system.n1d);
        let (vp, vn) = (ensemble.var_phi[j], ensemble.var_nu[j]);
        out.var_phi[j] = 0.5 * (vp + kappa * kappa * vn);
        out.var_nu[j] = 0.5 * (vn + vp / (kappa * kappa));
        out.cov_nuphi[j] = 0.0;
    }
    out
}

/// Relative-phase correlation C(z̄) = exp(−Σ_j (Δk/π) ⟨|φ_k|²⟩ (1 − cos k_j z̄)),
/// the discrete-mode form of the Gaussian phase-correlation integral.
pub fn correlation_analytic(z_sep: f64, ensemble: &ModeEnsemble, system: &LuttingerSystem) -> f64 {
    let dk = 2.0 * std::f64::consts::PI / system.l_sys;
    let mut exponent = 0.0;
    for j in 0..ensemble.n_modes() {
        exponent +=
            dk / std::f64::consts::PI * ensemble.var_phi[j] * (1.0 - (ensemble.k[j] * z_sep).cos());
    }
    (-exponent).exp()
}

/// One sampled realization of the relative-phase profile.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    pub z_grid: Vec<f64>,
    pub phi: Vec<f64>,
    /// Seed that generated this realization (base seed XOR realization index).
    pub seed: u64,
    /// Evolution time of the ensemble the profile was drawn from (s).
    pub t: f64,
}

/// Draw Gaussian phase profiles φ(z) = Σ_j sqrt(2/L)(a_j cos k_j z + b_j sin k_j z)
/// with Var(a_j) = Var(b_j) = ⟨|φ_k_j|²⟩, so the ensemble two-point function
/// reproduces [`correlation_analytic`]. Realization r uses seed ⊕ r, making
/// realizations independent of execution order.
pub fn sample_profiles(
    ensemble: &ModeEnsemble,
    system: &LuttingerSystem,
    grid: &[f64],
    n_realizations: usize,
    seed: u64,
) -> Result<Vec<PhaseProfile>, LuttingerError> {
    if grid.is_empty() {
        return Err(LuttingerError::InvalidParameter(
            "empty sampling grid".into(),
        ));
    }
    if n_realizations == 0 {
        return Err(LuttingerError::InvalidParameter(
            "need at least one realization".into(),
        ));
    }
    let n_modes = ensemble.n_modes();
    let amp = (2.0 / system.l_sys).sqrt();
    // trig tables: mode-major for cache friendliness
    let mut cos_t = vec![0.0f64; n_modes * grid.len()];
    let mut sin_t = vec![0.0f64; n_modes * grid.len()];
    for (j, &kj) in ensemble.k.iter().enumerate() {
        for (i, &z) in grid.iter().enumerate() {
            let (s, c) = (kj * z).sin_cos();
            cos_t[j * grid.len() + i] = c;
            sin_t[j * grid.len() + i] = s;
        }
    }
    let unit =
        Normal::new(0.0, 1.0).map_err(|e| LuttingerError::InvalidParameter(e.to_string()))?;
    let sigmas: Vec<f64> = ensemble.var_phi.iter().map(|v| v.max(0.0).sqrt()).collect();

    let mut out = Vec::with_capacity(n_realizations);
    for r in 0..n_realizations {
        let realization_seed = seed ^ r as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(realization_seed);
        let mut phi = vec![0.0f64; grid.len()];
        for j in 0..n_modes {
            let a = amp * sigmas[j] * unit.sample(&mut rng);
            let b = amp * sigmas[j] * unit.sample(&mut rng);
            let row = j * grid.len();
            for i in 0..grid.len() {
                phi[i] += a * cos_t[row + i] + b * sin_t[row + i];
            }
        }
        out.push(PhaseProfile {
            z_grid: grid.to_vec(),
            phi,
            seed: realization_seed,
            t: ensemble.time,
        });
    }
    Ok(out)
}

/// Monte-Carlo estimate of C(z̄) = ⟨cos(φ(z̄) − φ(0))⟩ with its standard error,
/// one entry per requested separation.
pub fn sample_correlation(
    ensemble: &ModeEnsemble,
    system: &LuttingerSystem,
    separations: &[f64],
    n_realizations: usize,
    seed: u64,
) -> Result<Vec<(f64, f64, f64)>, LuttingerError> {
    let mut grid = Vec::with_capacity(separations.len() + 1);
    grid.push(0.0);
    grid.extend_from_slice(separations);
    let profiles = sample_profiles(ensemble, system, &grid, n_realizations, seed)?;
    let n = n_realizations as f64;
    let mut out = Vec::with_capacity(separations.len());
    for (i, &sep) in separations.iter().enumerate() {
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for p in &profiles {
            let x = (p.phi[i + 1] - p.phi[0]).cos();
            sum += x;
            sum_sq += x * x;
        }
        let mean = sum / n;
        let var = (sum_sq / n - mean * mean).max(0.0);
        out.push((sep, mean, (var / n).sqrt()));
    }
    Ok(out)
}

/// Crossover distance of a correlation curve: the plateau is the mean of C
/// over the last quartile of separations; z_c is the smallest separation from
/// which the curve stays within `plateau_band` of the plateau.
pub fn crossover_distance(
    z_sep: &[f64],
    corr: &[f64],
    plateau_band: f64,
) -> Result<f64, LuttingerError> {
    if z_sep.len() != corr.len() || z_sep.len() < 8 {
        return Err(LuttingerError::InvalidParameter(
            "need matching curves with at least 8 samples".into(),
        ));
    }
    if z_sep.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LuttingerError::InvalidParameter(
            "separations must increase".into(),
        ));
    }
    let q_start = z_sep.len() - z_sep.len() / 4;
    let plateau = corr[q_start..].iter().sum::<f64>() / (z_sep.len() - q_start) as f64;
    // longest suffix staying within the band
    let mut start = corr.len();
    while start > 0 && (corr[start - 1] - plateau).abs() <= plateau_band {
        start -= 1;
    }
    if start == corr.len() {
        return Err(LuttingerError::NoCrossover);
    }
    Ok(z_sep[start])
}

/// Least-squares straight line y = a x + b through the points; returns (a, b).
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|xi| (xi - mx) * (xi - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(xi, yi)| (xi - mx) * (yi - my)).sum();
    let a = sxy / sxx;
    Some((a, my - a * mx))
}
