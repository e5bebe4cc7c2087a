//! Exact quantum mechanics of the two-site Bose-Hubbard model.
//!
//! Works in the Fock basis {|N-k, k>, k = 0..N} with k the number of atoms
//! in the right mode. Energies (J, U, delta) carry angular-frequency units,
//! i.e. hbar = 1 inside this module. Covers Hamiltonian construction and
//! diagonalization, unitary evolution, spin observables and squeezing
//! factors, coherent spin states, the Husimi distribution, Fock-state
//! energies, phase diffusion and the harmonic (number-phase) approximation.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default cap on the Hilbert-space dimension N+1 for dense diagonalization.
pub const DEFAULT_DIM_CAP: usize = 4097;

#[derive(Debug, Clone, PartialEq)]
pub enum TwoModeError {
    InvalidParameter(String),
    /// Hilbert-space dimension exceeds the diagonalization cap.
    DimensionOverCap {
        dim: usize,
        cap: usize,
    },
    /// Both J and delta vanish where the two-level reduction is degenerate.
    DegenerateInput,
    /// A state failed the unit-norm invariant.
    NotNormalized {
        norm: f64,
    },
    /// Fock label with wrong parity or out of range.
    InvalidFockLabel {
        n_diff: i64,
        n: usize,
    },
}

impl std::fmt::Display for TwoModeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TwoModeError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            TwoModeError::DimensionOverCap { dim, cap } => {
                write!(f, "dimension {dim} exceeds diagonalization cap {cap}")
            }
            TwoModeError::DegenerateInput => write!(f, "degenerate input: J = delta = 0"),
            TwoModeError::NotNormalized { norm } => {
                write!(f, "state not normalized: |psi| = {norm}")
            }
            TwoModeError::InvalidFockLabel { n_diff, n } => {
                write!(
                    f,
                    "Fock label n = {n_diff} invalid for N = {n} (parity/range)"
                )
            }
        }
    }
}

impl std::error::Error for TwoModeError {}

/// Parameters of the two-site Bose-Hubbard Hamiltonian
/// H = -J (l†r + l r†) + (U/2)[n_l(n_l-1) + n_r(n_r-1)] + (delta/2)(n_r - n_l).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoseHubbardParams {
    /// Tunneling energy (angular frequency units).
    pub j: f64,
    /// On-site interaction (same units); repulsive U > 0 is the usual case.
    pub u: f64,
    /// Bias between the wells (same units).
    pub delta: f64,
    /// Total atom number.
    pub n: usize,
}

impl BoseHubbardParams {
    pub fn new(j: f64, u: f64, delta: f64, n: usize) -> Result<Self, TwoModeError> {
        if n == 0 {
            return Err(TwoModeError::InvalidParameter(
                "atom number N must be >= 1".into(),
            ));
        }
        if !(j >= 0.0) {
            return Err(TwoModeError::InvalidParameter(format!(
                "tunneling J must be >= 0, got {j}"
            )));
        }
        if !u.is_finite() || !delta.is_finite() {
            return Err(TwoModeError::InvalidParameter(
                "U and delta must be finite".into(),
            ));
        }
        Ok(BoseHubbardParams { j, u, delta, n })
    }

    /// Interaction-to-tunneling ratio gamma = U/(2J); only defined for J > 0.
    pub fn gamma(&self) -> Option<f64> {
        (self.j > 0.0).then(|| self.u / (2.0 * self.j))
    }

    /// gamma N = U N / (2J), the mean-field nonlinearity parameter.
    pub fn lambda(&self) -> Option<f64> {
        self.gamma().map(|g| g * self.n as f64)
    }

    /// Rabi frequency Omega_R = 2J.
    pub fn omega_rabi(&self) -> f64 {
        2.0 * self.j
    }
}

/// The (N+1)-dimensional tridiagonal Bose-Hubbard matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BoseHubbardMatrix {
    /// Diagonal entries, index k = atoms in the right mode.
    pub diag: Vec<f64>,
    /// Off-diagonal entries coupling k and k+1: -J sqrt((N-k)(k+1)).
    pub off_diag: Vec<f64>,
}

impl BoseHubbardMatrix {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Dense copy for diagonalization.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = self.diag[k];
        }
        for k in 0..n - 1 {
            m[(k, k + 1)] = self.off_diag[k];
            m[(k + 1, k)] = self.off_diag[k];
        }
        m
    }

    /// y = H x for a complex amplitude vector.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            y[k] = self.diag[k] * x[k];
            if k > 0 {
                y[k] += self.off_diag[k - 1] * x[k - 1];
            }
            if k + 1 < n {
                y[k] += self.off_diag[k] * x[k + 1];
            }
        }
        y
    }
}

/// Build the two-site Bose-Hubbard matrix in the Fock basis |N-k, k>.
pub fn build_hamiltonian(params: &BoseHubbardParams) -> BoseHubbardMatrix {
    let n = params.n;
    let nf = n as f64;
    let diag = (0..=n)
        .map(|k| {
            let kf = k as f64;
            let left = nf - kf;
            0.5 * params.u * (left * (left - 1.0) + kf * (kf - 1.0))
                + 0.5 * params.delta * (2.0 * kf - nf)
        })
        .collect();
    let off_diag = (0..n)
        .map(|k| {
            let kf = k as f64;
            -params.j * ((nf - kf) * (kf + 1.0)).sqrt()
        })
        .collect();
    BoseHubbardMatrix { diag, off_diag }
}

/// A normalized state over the Fock basis {|N-k, k>}.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    amplitudes: Vec<Complex64>,
}

impl TwoModeState {
    /// Wrap an amplitude vector; the norm must already be 1 within 1e-12.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, TwoModeError> {
        if amplitudes.len() < 2 {
            return Err(TwoModeError::InvalidParameter(
                "state needs at least two amplitudes (N >= 1)".into(),
            ));
        }
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(TwoModeError::NotNormalized { norm });
        }
        Ok(TwoModeState { amplitudes })
    }

    /// Normalize and wrap an arbitrary nonzero amplitude vector.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self, TwoModeError> {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(TwoModeError::NotNormalized { norm });
        }
        for c in &mut amplitudes {
            *c /= norm;
        }
        TwoModeState::new(amplitudes)
    }

    /// The Fock state |N-k, k> with k atoms in the right mode.
    pub fn fock(n: usize, k_right: usize) -> Result<Self, TwoModeError> {
        if n == 0 || k_right > n {
            return Err(TwoModeError::InvalidParameter(format!(
                "Fock state needs N >= 1 and k <= N, got N = {n}, k = {k_right}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n + 1];
        amplitudes[k_right] = Complex64::new(1.0, 0.0);
        Ok(TwoModeState { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Total atom number N = dim - 1.
    pub fn n_atoms(&self) -> usize {
        self.amplitudes.len() - 1
    }

    /// Fock populations |c_k|^2.
    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Overlap <self|other>.
    pub fn overlap(&self, other: &TwoModeState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Energy expectation value <H>.
    pub fn energy(&self, h: &BoseHubbardMatrix) -> f64 {
        let hx = h.apply(&self.amplitudes);
        self.amplitudes
            .iter()
            .zip(&hx)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }
}

/// Full eigensystem of the Bose-Hubbard matrix, energies ascending.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    /// Eigenvalues in ascending order.
    pub energies: Vec<f64>,
    /// Orthonormal eigenvectors; column i belongs to energies[i].
    pub vectors: DMatrix<f64>,
}

/// Dense symmetric diagonalization, with the dimension cap enforced.
pub fn eigensystem(params: &BoseHubbardParams, cap: usize) -> Result<Eigensystem, TwoModeError> {
    let dim = params.n + 1;
    if dim > cap {
        return Err(TwoModeError::DimensionOverCap { dim, cap });
    }
    let h = build_hamiltonian(params).to_dense();
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let energies: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(dim, dim);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    Ok(Eigensystem { energies, vectors })
}

/// Fix the global phase: largest-|c_k| entry made real positive (ties: lowest k).
fn fix_phase(mut amplitudes: Vec<Complex64>) -> Vec<Complex64> {
    let mut best = 0;
    for (k, c) in amplitudes.iter().enumerate() {
        if c.norm_sqr() > amplitudes[best].norm_sqr() + 1e-30 {
            best = k;
        }
    }
    let phase = amplitudes[best] / amplitudes[best].norm();
    for c in &mut amplitudes {
        *c /= phase;
    }
    amplitudes
}

/// Ground state and energy by exact diagonalization (dimension cap = 4097).
pub fn ground_state(params: &BoseHubbardParams) -> Result<(TwoModeState, f64), TwoModeError> {
    ground_state_with_cap(params, DEFAULT_DIM_CAP)
}

/// Ground state with an explicit dimension cap.
///
/// Degenerate ground levels are resolved deterministically: among eigenvectors
/// within 1e-12 (relative to the spectral range) of the lowest energy, the one
/// whose dominant Fock amplitude has the lowest index k wins.
pub fn ground_state_with_cap(
    params: &BoseHubbardParams,
    cap: usize,
) -> Result<(TwoModeState, f64), TwoModeError> {
    let eig = eigensystem(params, cap)?;
    let e0 = eig.energies[0];
    let scale = eig.energies[eig.energies.len() - 1] - e0;
    let tol = 1e-12 * scale.max(e0.abs()).max(1.0);
    let mut chosen = 0usize;
    let mut chosen_dominant = dominant_index(eig.vectors.column(0).as_slice());
    for i in 1..eig.energies.len() {
        if eig.energies[i] - e0 > tol {
            break;
        }
        let dom = dominant_index(eig.vectors.column(i).as_slice());
        if dom < chosen_dominant {
            chosen = i;
            chosen_dominant = dom;
        }
    }
    let amps: Vec<Complex64> = eig
        .vectors
        .column(chosen)
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    let state = TwoModeState::normalized(fix_phase(amps))?;
    Ok((state, eig.energies[chosen]))
}

fn dominant_index(v: &[f64]) -> usize {
    let mut best = 0;
    for (k, x) in v.iter().enumerate() {
        if x * x > v[best] * v[best] + 1e-30 {
            best = k;
        }
    }
    best
}

/// Two-level (single-particle) eigensystem of the split double well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitEigensystem {
    /// Ground energy -sqrt(J^2 + delta^2/4).
    pub e_ground: f64,
    /// Excited energy +sqrt(J^2 + delta^2/4).
    pub e_excited: f64,
    /// Mixing angle of the ground state (cos θ/2, sin θ/2) in the left/right
    /// basis: π/2 for a symmetric well, 0 when it collapses to the left well
    /// (J = 0, delta > 0), π when it collapses to the right well.
    pub theta_mix: f64,
}

/// Eigenvalues ±sqrt(J² + δ²/4) and mixing angle of the biased two-level system.
pub fn split_eigensystem(j: f64, delta: f64) -> Result<SplitEigensystem, TwoModeError> {
    if j == 0.0 && delta == 0.0 {
        return Err(TwoModeError::DegenerateInput);
    }
    if !(j >= 0.0) {
        return Err(TwoModeError::InvalidParameter(format!(
            "J must be >= 0, got {j}"
        )));
    }
    let e = (j * j + 0.25 * delta * delta).sqrt();
    Ok(SplitEigensystem {
        e_ground: -e,
        e_excited: e,
        theta_mix: (2.0 * j).atan2(delta),
    })
}

/// Adiabaticity margin |dJ/dt + (d delta/dt)/2| / (4J² + δ²); adiabatic when ≪ 1.
pub fn adiabaticity_margin(
    j: f64,
    delta: f64,
    dj_dt: f64,
    ddelta_dt: f64,
) -> Result<f64, TwoModeError> {
    if j == 0.0 && delta == 0.0 {
        return Err(TwoModeError::DegenerateInput);
    }
    Ok((dj_dt + 0.5 * ddelta_dt).abs() / (4.0 * j * j + delta * delta))
}

/// How `evolve` propagates the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvolveMethod {
    /// Full spectral decomposition, exact up to the diagonalization (default).
    Spectral,
    /// Norm-preserving Crank-Nicolson stepping with steps no larger than dt_max.
    Stepped { dt_max: f64 },
}

/// Propagate |psi(t)> = exp(-i H t) |psi(0)>.
pub fn evolve(
    state: &TwoModeState,
    params: &BoseHubbardParams,
    t: f64,
    method: EvolveMethod,
) -> Result<TwoModeState, TwoModeError> {
    if !(t >= 0.0) {
        return Err(TwoModeError::InvalidParameter(format!(
            "time must be >= 0, got {t}"
        )));
    }
    if state.n_atoms() != params.n {
        return Err(TwoModeError::InvalidParameter(format!(
            "state has N = {} but params have N = {}",
            state.n_atoms(),
            params.n
        )));
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(TwoModeError::NotNormalized { norm });
    }
    match method {
        EvolveMethod::Spectral => evolve_spectral(state, params, t),
        EvolveMethod::Stepped { dt_max } => evolve_stepped(state, params, t, dt_max),
    }
}

fn evolve_spectral(
    state: &TwoModeState,
    params: &BoseHubbardParams,
    t: f64,
) -> Result<TwoModeState, TwoModeError> {
    let eig = eigensystem(params, DEFAULT_DIM_CAP)?;
    let dim = params.n + 1;
    // project onto eigenbasis, apply phases, project back
    let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
    for i in 0..dim {
        let col = eig.vectors.column(i);
        coeffs[i] = state
            .amplitudes
            .iter()
            .zip(col.iter())
            .map(|(c, &v)| v * c)
            .sum();
        coeffs[i] *= Complex64::new(0.0, -eig.energies[i] * t).exp();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for i in 0..dim {
        let col = eig.vectors.column(i);
        for (k, &v) in col.iter().enumerate() {
            out[k] += coeffs[i] * v;
        }
    }
    TwoModeState::normalized(out)
}

/// Crank-Nicolson: (1 + i H dt/2) psi' = (1 - i H dt/2) psi, a unitary Cayley
/// step solved with the Thomas algorithm on the tridiagonal matrix.
fn evolve_stepped(
    state: &TwoModeState,
    params: &BoseHubbardParams,
    t: f64,
    dt_max: f64,
) -> Result<TwoModeState, TwoModeError> {
    if !(dt_max > 0.0) {
        return Err(TwoModeError::InvalidParameter(format!(
            "dt_max must be > 0, got {dt_max}"
        )));
    }
    let h = build_hamiltonian(params);
    let steps = (t / dt_max).ceil().max(1.0) as usize;
    let dt = t / steps as f64;
    let dim = h.dim();
    let half = Complex64::new(0.0, 0.5 * dt);
    let mut psi = state.amplitudes.clone();
    let mut rhs = vec![Complex64::new(0.0, 0.0); dim];
    for _ in 0..steps {
        let hpsi = h.apply(&psi);
        for k in 0..dim {
            rhs[k] = psi[k] - half * hpsi[k];
        }
        // Thomas solve of (I + i dt/2 H) psi = rhs
        let mut c_prime = vec![Complex64::new(0.0, 0.0); dim];
        let mut d_prime = vec![Complex64::new(0.0, 0.0); dim];
        let b0 = Complex64::new(1.0, 0.0) + half * h.diag[0];
        c_prime[0] = half * h.off_diag.first().copied().unwrap_or(0.0) / b0;
        d_prime[0] = rhs[0] / b0;
        for k in 1..dim {
            let a = half * h.off_diag[k - 1];
            let b = Complex64::new(1.0, 0.0) + half * h.diag[k];
            let c = if k + 1 < dim {
                half * h.off_diag[k]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let denom = b - a * c_prime[k - 1];
            c_prime[k] = c / denom;
            d_prime[k] = (rhs[k] - a * d_prime[k - 1]) / denom;
        }
        psi[dim - 1] = d_prime[dim - 1];
        for k in (0..dim - 1).rev() {
            psi[k] = d_prime[k] - c_prime[k] * psi[k + 1];
        }
    }
    TwoModeState::normalized(psi)
}

/// A point on the generalized Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngle {
    /// Polar angle in [0, π]; 0 is the left-mode pole |N, 0>.
    pub theta: f64,
    /// Azimuth in (-π, π].
    pub phi: f64,
}

impl BlochAngle {
    /// Validate theta and wrap phi into (-π, π].
    pub fn new(theta: f64, phi: f64) -> Result<Self, TwoModeError> {
        if !(0.0..=PI).contains(&theta) {
            return Err(TwoModeError::InvalidParameter(format!(
                "polar angle must lie in [0, pi], got {theta}"
            )));
        }
        Ok(BlochAngle {
            theta,
            phi: wrap_angle(phi),
        })
    }
}

/// Wrap an angle into (-π, π].
pub fn wrap_angle(phi: f64) -> f64 {
    let mut w = phi.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    w
}

/// Coherent spin state |θ, φ>: c_k = sqrt(C(N,k)) cos^{N-k}(θ/2) sin^k(θ/2) e^{ikφ}.
pub fn coherent_state(angle: BlochAngle, n: usize) -> Result<TwoModeState, TwoModeError> {
    if n == 0 {
        return Err(TwoModeError::InvalidParameter(
            "atom number N must be >= 1".into(),
        ));
    }
    let half = 0.5 * angle.theta;
    let (cos_h, sin_h) = (half.cos(), half.sin());
    let amps: Vec<Complex64> = (0..=n)
        .map(|k| {
            let kf = k as f64;
            let nf = n as f64;
            // log-domain magnitude avoids overflow of the binomial at large N;
            // the poles sin = 0 or cos = 0 are handled exactly
            let mag = if sin_h == 0.0 {
                if k == 0 {
                    1.0
                } else {
                    0.0
                }
            } else if cos_h == 0.0 {
                if k == n {
                    1.0
                } else {
                    0.0
                }
            } else {
                (0.5 * ln_binomial(n, k) + (nf - kf) * cos_h.ln() + kf * sin_h.ln()).exp()
            };
            Complex64::from_polar(mag, kf * angle.phi)
        })
        .collect();
    TwoModeState::normalized(amps)
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// Husimi quasiprobability Q(θ, φ) = |<θ, φ|ψ>|² in [0, 1].
pub fn husimi_q(state: &TwoModeState, angle: BlochAngle) -> Result<f64, TwoModeError> {
    let coh = coherent_state(angle, state.n_atoms())?;
    Ok(coh.overlap(state).norm_sqr())
}

/// Operational quantum phase distribution: P(φ) ∝ Q(π/2, φ), normalized so
/// that the returned samples integrate to 1 over (-π, π] with uniform spacing.
pub fn phase_distribution(
    state: &TwoModeState,
    n_phi: usize,
) -> Result<Vec<(f64, f64)>, TwoModeError> {
    if n_phi < 2 {
        return Err(TwoModeError::InvalidParameter(
            "need at least 2 phase samples".into(),
        ));
    }
    let dphi = 2.0 * PI / n_phi as f64;
    let mut samples: Vec<(f64, f64)> = (0..n_phi)
        .map(|i| {
            let phi = -PI + (i as f64 + 0.5) * dphi;
            (phi, 0.0)
        })
        .collect();
    let mut total = 0.0;
    for s in &mut samples {
        let q = husimi_q(state, BlochAngle::new(PI / 2.0, s.0)?)?;
        s.1 = q;
        total += q * dphi;
    }
    if total > 0.0 {
        for s in &mut samples {
            s.1 /= total;
        }
    }
    Ok(samples)
}

/// Spin expectation values, variances and squeezing factors of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinObservables {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    pub var_sx: f64,
    pub var_sy: f64,
    pub var_sz: f64,
    /// Number squeezing factor ξ_N = ΔS_z / (sqrt(N)/2).
    pub xi_n: f64,
    /// Phase squeezing factor ξ_φ = 2 ΔS_y / sqrt(N).
    pub xi_phi: f64,
    /// Spin squeezing factor ξ_S = sqrt(N) ΔS_z / |<S_x>|; None when <S_x> = 0.
    pub xi_s: Option<f64>,
    /// Coherence factor 2 <S_x> / N.
    pub coherence: f64,
}

fn apply_sx(n: usize, psi: &[Complex64]) -> Vec<Complex64> {
    let nf = n as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in 0..n {
        let a = 0.5 * ((nf - k as f64) * (k as f64 + 1.0)).sqrt();
        out[k] += a * psi[k + 1];
        out[k + 1] += a * psi[k];
    }
    out
}

fn apply_sy(n: usize, psi: &[Complex64]) -> Vec<Complex64> {
    let nf = n as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in 0..n {
        // S_y = (l† r - l r†)/(2i): <k|S_y|k+1> = -i a, <k+1|S_y|k> = +i a
        let a = 0.5 * ((nf - k as f64) * (k as f64 + 1.0)).sqrt();
        out[k] += Complex64::new(0.0, -a) * psi[k + 1];
        out[k + 1] += Complex64::new(0.0, a) * psi[k];
    }
    out
}

fn apply_sz(n: usize, psi: &[Complex64]) -> Vec<Complex64> {
    let nf = n as f64;
    psi.iter()
        .enumerate()
        .map(|(k, c)| 0.5 * (nf - 2.0 * k as f64) * c)
        .collect()
}

fn expectation(psi: &[Complex64], op_psi: &[Complex64]) -> f64 {
    psi.iter().zip(op_psi).map(|(a, b)| (a.conj() * b).re).sum()
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// Spin observables and squeezing factors of a normalized state.
pub fn spin_observables(state: &TwoModeState) -> Result<SpinObservables, TwoModeError> {
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(TwoModeError::NotNormalized { norm });
    }
    let n = state.n_atoms();
    let nf = n as f64;
    let psi = state.amplitudes();

    let sx_psi = apply_sx(n, psi);
    let sy_psi = apply_sy(n, psi);
    let sz_psi = apply_sz(n, psi);

    let sx = expectation(psi, &sx_psi);
    let sy = expectation(psi, &sy_psi);
    let sz = expectation(psi, &sz_psi);
    // <S_a^2> = |S_a psi|^2 because the operators are hermitian
    let var_sx = (norm_sqr(&sx_psi) - sx * sx).max(0.0);
    let var_sy = (norm_sqr(&sy_psi) - sy * sy).max(0.0);
    let var_sz = (norm_sqr(&sz_psi) - sz * sz).max(0.0);

    let xi_n = (var_sz / (nf / 4.0)).sqrt();
    let xi_phi = (4.0 * var_sy / nf).sqrt();
    let xi_s = (sx.abs() > f64::MIN_POSITIVE).then(|| nf.sqrt() * var_sz.sqrt() / sx.abs());

    Ok(SpinObservables {
        sx,
        sy,
        sz,
        var_sx,
        var_sy,
        var_sz,
        xi_n,
        xi_phi,
        xi_s,
        coherence: 2.0 * sx / nf,
    })
}

/// Energy of the Fock state with number difference n = n_l - n_r at J = 0:
/// E(n) = U N(N-2)/4 + (U/4) n² - (δ/2) n. Matches the Hamiltonian diagonal.
pub fn fock_energy(n_diff: i64, params: &BoseHubbardParams) -> Result<f64, TwoModeError> {
    let n = params.n as i64;
    if n_diff.abs() > n || (n_diff - n) % 2 != 0 {
        return Err(TwoModeError::InvalidFockLabel {
            n_diff,
            n: params.n,
        });
    }
    let nf = params.n as f64;
    let nd = n_diff as f64;
    Ok(0.25 * params.u * nf * (nf - 2.0) + 0.25 * params.u * nd * nd - 0.5 * params.delta * nd)
}

/// Phase variance Δφ²(t) = var0 + R²t² with diffusion rate R = ξ_N sqrt(N) U.
pub fn phase_diffusion_variance(t: f64, xi_n: f64, n: usize, u: f64, var0: f64) -> f64 {
    let r = xi_n * (n as f64).sqrt() * u;
    var0 + r * r * t * t
}

/// The same variance written through the number fluctuation ΔS_z:
/// Δφ²(t) = var0 + 4 ΔS_z² U² t². With ΔS_z = ξ_N sqrt(N)/2 the two forms
/// are identical.
pub fn phase_diffusion_variance_from_sz(t: f64, delta_sz: f64, u: f64, var0: f64) -> f64 {
    var0 + 4.0 * delta_sz * delta_sz * u * u * t * t
}

/// Ground-state fluctuations in the harmonic number-phase approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicFluctuations {
    /// ΔS_z = (sqrt(N)/2)(1 + γN)^{-1/4}.
    pub delta_sz: f64,
    /// Δφ = (1 + γN)^{1/4}/sqrt(N).
    pub delta_phi: f64,
    /// Coherence ≈ 1 - Δφ²/2.
    pub coherence: f64,
    /// False when γ ≥ N, outside the validity range of the approximation.
    pub valid: bool,
}

pub fn harmonic_ground_fluctuations(
    params: &BoseHubbardParams,
) -> Result<HarmonicFluctuations, TwoModeError> {
    if !(params.j > 0.0) {
        return Err(TwoModeError::InvalidParameter(format!(
            "harmonic approximation needs J > 0, got {}",
            params.j
        )));
    }
    let nf = params.n as f64;
    let gamma = params.u / (2.0 * params.j);
    let gn = gamma * nf;
    let delta_sz = 0.5 * nf.sqrt() * (1.0 + gn).powf(-0.25);
    let delta_phi = (1.0 + gn).powf(0.25) / nf.sqrt();
    Ok(HarmonicFluctuations {
        delta_sz,
        delta_phi,
        coherence: 1.0 - 0.5 * delta_phi * delta_phi,
        valid: gamma < nf,
    })
}
