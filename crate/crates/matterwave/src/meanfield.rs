//! Classical (mean-field) bosonic Josephson junction.
//!
//! The junction state is the population imbalance z and relative phase φ of
//! the two condensates. With Ω_R = 2J and hbar = 1 the equations of motion
//! are
//!
//! ```text
//! dz/dt  = -Ω_R sqrt(1-z²) sin φ
//! dφ/dt  = -δ + U N z + Ω_R z cos φ / sqrt(1-z²)
//! ```
//!
//! generated by H = -δ z + (U N/2) z² - Ω_R sqrt(1-z²) cos φ.

use crate::ode::{integrate_adaptive, OdeError};
use crate::twomode::BoseHubbardParams;

#[derive(Debug, Clone, PartialEq)]
pub enum MeanFieldError {
    InvalidParameter(String),
    /// The equations are singular at |z| = 1.
    Pole {
        z: f64,
    },
    /// The trajectory approached |z| = 1 closer than 1e-12; the partial
    /// trajectory up to that point is attached.
    PoleProximity {
        partial: MeanFieldTrajectory,
    },
    /// Bias δ ≠ 0 where only the symmetric analysis is supported.
    UnsupportedConfiguration(String),
    /// The integrator could not meet its error budget.
    NumericalFailure(String),
}

impl std::fmt::Display for MeanFieldError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MeanFieldError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            MeanFieldError::Pole { z } => write!(f, "phase equation singular at |z| = 1 (z = {z})"),
            MeanFieldError::PoleProximity { partial } => write!(
                f,
                "trajectory reached |z| >= 1 - 1e-12 after {} samples",
                partial.times.len()
            ),
            MeanFieldError::UnsupportedConfiguration(msg) => {
                write!(f, "unsupported configuration: {msg}")
            }
            MeanFieldError::NumericalFailure(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for MeanFieldError {}

/// A phase-space point of the junction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldState {
    /// Population imbalance (n_l - n_r)/N in [-1, 1].
    pub z: f64,
    /// Relative phase (rad); unwrapped along trajectories.
    pub phi: f64,
}

impl MeanFieldState {
    pub fn new(z: f64, phi: f64) -> Result<Self, MeanFieldError> {
        if !(z.abs() <= 1.0) {
            return Err(MeanFieldError::InvalidParameter(format!(
                "imbalance must satisfy |z| <= 1, got {z}"
            )));
        }
        Ok(MeanFieldState { z, phi })
    }
}

/// A sampled trajectory with the energy along it.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanFieldTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<MeanFieldState>,
    pub energy: Vec<f64>,
}

impl MeanFieldTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Largest |H(t) - H(0)| along the trajectory.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.energy.first().copied().unwrap_or(0.0);
        self.energy
            .iter()
            .map(|e| (e - e0).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_z(&self) -> f64 {
        self.states.iter().map(|s| s.z.abs()).fold(0.0, f64::max)
    }
}

/// Build junction parameters from (Ω_R, Λ = γN, N): J = Ω_R/2, U = Λ Ω_R / N.
pub fn junction_params(
    omega_rabi: f64,
    lambda: f64,
    n: usize,
) -> Result<BoseHubbardParams, MeanFieldError> {
    if !(omega_rabi > 0.0) {
        return Err(MeanFieldError::InvalidParameter(format!(
            "Rabi frequency must be > 0, got {omega_rabi}"
        )));
    }
    BoseHubbardParams::new(0.5 * omega_rabi, lambda * omega_rabi / n as f64, 0.0, n)
        .map_err(|e| MeanFieldError::InvalidParameter(e.to_string()))
}

/// Right-hand side (dz/dt, dφ/dt); errors at the pole |z| = 1.
pub fn josephson_rhs(
    state: &MeanFieldState,
    params: &BoseHubbardParams,
) -> Result<(f64, f64), MeanFieldError> {
    if state.z.abs() >= 1.0 {
        return Err(MeanFieldError::Pole { z: state.z });
    }
    let omega_r = params.omega_rabi();
    let root = (1.0 - state.z * state.z).sqrt();
    let dz = -omega_r * root * state.phi.sin();
    let dphi = -params.delta
        + params.u * params.n as f64 * state.z
        + omega_r * state.z * state.phi.cos() / root;
    Ok((dz, dphi))
}

/// Mean-field energy H = -δ z + (U N/2) z² - Ω_R sqrt(1-z²) cos φ.
pub fn energy(state: &MeanFieldState, params: &BoseHubbardParams) -> f64 {
    -params.delta * state.z + 0.5 * params.u * params.n as f64 * state.z * state.z
        - params.omega_rabi() * (1.0 - state.z * state.z).sqrt() * state.phi.cos()
}

/// Integrate the junction from `initial` to `t_end`, sampling `n_samples`
/// points uniformly (plus t = 0). `tol` is the relative tolerance of the
/// adaptive integrator; the energy drift along the result is guaranteed to
/// stay below 100 tol |H(0)| + 1e-12.
pub fn integrate(
    initial: &MeanFieldState,
    params: &BoseHubbardParams,
    t_end: f64,
    tol: f64,
    n_samples: usize,
) -> Result<MeanFieldTrajectory, MeanFieldError> {
    if initial.z.abs() > 1.0 - 1e-9 {
        return Err(MeanFieldError::InvalidParameter(format!(
            "initial imbalance too close to the pole: |z0| = {} > 1 - 1e-9",
            initial.z.abs()
        )));
    }
    if !(t_end >= 0.0) || n_samples < 2 {
        return Err(MeanFieldError::InvalidParameter(
            "need t_end >= 0 and at least 2 samples".into(),
        ));
    }
    let rhs = |_t: f64, y: &[f64], dy: &mut [f64]| -> Result<(), String> {
        let z = y[0];
        if z.abs() >= 1.0 - 1e-12 {
            return Err(format!("pole proximity: |z| = {}", z.abs()));
        }
        let omega_r = params.omega_rabi();
        let root = (1.0 - z * z).sqrt();
        dy[0] = -omega_r * root * y[1].sin();
        dy[1] = -params.delta + params.u * params.n as f64 * z + omega_r * z * y[1].cos() / root;
        Ok(())
    };

    let mut traj = MeanFieldTrajectory {
        times: Vec::with_capacity(n_samples),
        states: Vec::with_capacity(n_samples),
        energy: Vec::with_capacity(n_samples),
    };
    let push = |traj: &mut MeanFieldTrajectory, t: f64, y: &[f64]| {
        let state = MeanFieldState {
            z: y[0].clamp(-1.0, 1.0),
            phi: y[1],
        };
        traj.energy.push(energy(&state, params));
        traj.states.push(state);
        traj.times.push(t);
    };

    // the integrator runs three orders below the requested tolerance so the
    // accumulated energy drift stays inside the 100 tol |H0| budget
    let rtol = (tol * 1e-3).max(5e-14);
    let atol = rtol * 1e-2;
    let mut y = [initial.z, initial.phi];
    push(&mut traj, 0.0, &y);
    let dt = t_end / (n_samples - 1) as f64;
    for i in 1..n_samples {
        let t0 = (i - 1) as f64 * dt;
        let t1 = i as f64 * dt;
        match integrate_adaptive(rhs, t0, &y, t1, rtol, atol, |_| {}) {
            Ok(end) => {
                y.copy_from_slice(&end);
                push(&mut traj, t1, &y);
            }
            Err(OdeError::DomainViolation { .. }) => {
                return Err(MeanFieldError::PoleProximity { partial: traj });
            }
            Err(e) => return Err(MeanFieldError::NumericalFailure(e.to_string())),
        }
    }

    let bound = 100.0 * tol * traj.energy[0].abs() + 1e-12;
    let drift = traj.energy_drift();
    if drift > bound {
        return Err(MeanFieldError::NumericalFailure(format!(
            "energy drift {drift} exceeds budget {bound}"
        )));
    }
    Ok(traj)
}

/// Characteristic frequencies of the junction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicFrequencies {
    /// Rabi frequency Ω_R = 2J.
    pub omega_rabi: f64,
    /// Plasma frequency ω_p = Ω_R sqrt(1 + γN).
    pub omega_plasma: f64,
    /// π-mode frequency Ω_R sqrt(1 - γN) around (0, π); None once γN > 1.
    pub omega_pi_minus: Option<f64>,
    /// Frequency Ω_R sqrt(1 - (γN)⁻²) around the broken-symmetry π points;
    /// None until γN > 1.
    pub omega_pi_plus: Option<f64>,
}

pub fn characteristic_frequencies(
    params: &BoseHubbardParams,
) -> Result<CharacteristicFrequencies, MeanFieldError> {
    let lambda = params
        .lambda()
        .ok_or_else(|| MeanFieldError::InvalidParameter("frequencies need J > 0".into()))?;
    let omega_r = params.omega_rabi();
    Ok(CharacteristicFrequencies {
        omega_rabi: omega_r,
        omega_plasma: omega_r * (1.0 + lambda).sqrt(),
        omega_pi_minus: (lambda <= 1.0).then(|| omega_r * (1.0 - lambda).sqrt()),
        omega_pi_plus: (lambda > 1.0).then(|| omega_r * (1.0 - 1.0 / (lambda * lambda)).sqrt()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
}

/// A fixed point of the symmetric (δ = 0) junction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub z: f64,
    pub phi: f64,
    pub stability: Stability,
}

/// Fixed points of the δ = 0 junction: (0, 0) always, (0, π) which loses
/// stability at γN = 1, and the pair (±sqrt(1 - (γN)⁻²), π) beyond it.
pub fn fixed_points(params: &BoseHubbardParams) -> Result<Vec<FixedPoint>, MeanFieldError> {
    if params.delta != 0.0 {
        return Err(MeanFieldError::UnsupportedConfiguration(
            "fixed-point analysis requires delta = 0".into(),
        ));
    }
    let lambda = params
        .lambda()
        .ok_or_else(|| MeanFieldError::InvalidParameter("fixed points need J > 0".into()))?;
    let mut points = vec![FixedPoint {
        z: 0.0,
        phi: 0.0,
        stability: Stability::Stable,
    }];
    points.push(FixedPoint {
        z: 0.0,
        phi: std::f64::consts::PI,
        stability: if lambda < 1.0 {
            Stability::Stable
        } else {
            Stability::Unstable
        },
    });
    if lambda > 1.0 {
        let z_pi = (1.0 - 1.0 / (lambda * lambda)).sqrt();
        for z in [z_pi, -z_pi] {
            points.push(FixedPoint {
                z,
                phi: std::f64::consts::PI,
                stability: Stability::Stable,
            });
        }
    }
    Ok(points)
}

/// Largest Josephson-oscillation amplitude 2 sqrt(γN - 1)/(γN) for orbits
/// launched at z = 0; None in the Rabi-like range γN < 1 where no
/// self-trapping bound exists.
pub fn z_max(gamma_n: f64) -> Option<f64> {
    (gamma_n >= 1.0).then(|| 2.0 * (gamma_n - 1.0).sqrt() / gamma_n)
}

/// Interaction regimes of the two-mode system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Rabi,
    Josephson,
    Fock,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Rabi => write!(f, "rabi"),
            Regime::Josephson => write!(f, "josephson"),
            Regime::Fock => write!(f, "fock"),
        }
    }
}

/// γ < 1/N: Rabi; 1/N ≤ γ ≤ N: Josephson (boundaries inclusive); γ > N: Fock.
pub fn classify_regime(params: &BoseHubbardParams) -> Result<Regime, MeanFieldError> {
    let gamma = params.gamma().ok_or_else(|| {
        MeanFieldError::InvalidParameter("regime classification needs J > 0".into())
    })?;
    let n = params.n as f64;
    Ok(if gamma < 1.0 / n {
        Regime::Rabi
    } else if gamma <= n {
        Regime::Josephson
    } else {
        Regime::Fock
    })
}

/// Orbit classes of the phase portrait.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitClass {
    /// Oscillation around (0, 0) with negligible interactions.
    RabiLike,
    /// Oscillation around (0, 0) in the Josephson regime.
    JosephsonOscillation,
    /// Closed orbit around a π fixed point.
    PiMode,
    /// Running phase, population trapped on one side.
    SelfTrapped,
}

impl std::fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitClass::RabiLike => write!(f, "rabi-like"),
            OrbitClass::JosephsonOscillation => write!(f, "josephson-oscillation"),
            OrbitClass::PiMode => write!(f, "pi-mode"),
            OrbitClass::SelfTrapped => write!(f, "self-trapped"),
        }
    }
}

/// One orbit of a phase portrait.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub initial: MeanFieldState,
    pub class: OrbitClass,
    pub trajectory: MeanFieldTrajectory,
    /// True when integration stopped early at the pole.
    pub truncated: bool,
}

/// Integrate every initial condition and tag the resulting orbit by the
/// boundedness of the unwrapped phase and the phase-space region it encircles.
pub fn phase_portrait(
    params: &BoseHubbardParams,
    grid: &[MeanFieldState],
    t_end: f64,
    tol: f64,
    n_samples: usize,
) -> Result<Vec<Orbit>, MeanFieldError> {
    if grid.iter().any(|s| s.z.abs() > 0.99) {
        return Err(MeanFieldError::InvalidParameter(
            "portrait initial conditions must satisfy |z| <= 0.99".into(),
        ));
    }
    let regime = classify_regime(params)?;
    grid.iter()
        .map(|&initial| {
            let (trajectory, truncated) = match integrate(&initial, params, t_end, tol, n_samples) {
                Ok(t) => (t, false),
                Err(MeanFieldError::PoleProximity { partial }) => (partial, true),
                Err(e) => return Err(e),
            };
            let class = classify_orbit(&trajectory, regime);
            Ok(Orbit {
                initial,
                class,
                trajectory,
                truncated,
            })
        })
        .collect()
}

fn classify_orbit(traj: &MeanFieldTrajectory, regime: Regime) -> OrbitClass {
    let phis: Vec<f64> = traj.states.iter().map(|s| s.phi).collect();
    let span = phis.iter().cloned().fold(f64::MIN, f64::max)
        - phis.iter().cloned().fold(f64::MAX, f64::min);
    if span > 1.5 * std::f64::consts::TAU {
        return OrbitClass::SelfTrapped;
    }
    // a closed orbit turns at its |z| extremum with φ near the fixed point it
    // encircles: 0 for the plasma family, ±π for the π family
    let turn = traj
        .states
        .iter()
        .max_by(|a, b| a.z.abs().total_cmp(&b.z.abs()))
        .map(|s| crate::twomode::wrap_angle(s.phi))
        .unwrap_or(0.0);
    if turn.abs() > 0.5 * std::f64::consts::PI {
        OrbitClass::PiMode
    } else if regime == Regime::Rabi {
        OrbitClass::RabiLike
    } else {
        OrbitClass::JosephsonOscillation
    }
}

/// Times at which a sampled signal crosses zero (linear interpolation).
pub fn zero_crossings(times: &[f64], values: &[f64]) -> Vec<f64> {
    let mut crossings = Vec::new();
    for i in 1..values.len().min(times.len()) {
        let (a, b) = (values[i - 1], values[i]);
        if a == 0.0 {
            crossings.push(times[i - 1]);
        } else if a * b < 0.0 {
            let frac = a / (a - b);
            crossings.push(times[i - 1] + frac * (times[i] - times[i - 1]));
        }
    }
    crossings
}

/// Angular frequency of a roughly sinusoidal signal from its zero crossings
/// (crossings of the mean are used, so a DC offset is harmless).
pub fn oscillation_frequency(times: &[f64], values: &[f64]) -> Option<f64> {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let centered: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let crossings = zero_crossings(times, &centered);
    if crossings.len() < 3 {
        return None;
    }
    // successive same-direction crossings are one period apart
    let first = crossings[0];
    let last = crossings[crossings.len() - 1];
    let half_periods = (crossings.len() - 1) as f64;
    Some(std::f64::consts::PI * half_periods / (last - first))
}
