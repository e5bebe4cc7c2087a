//! Subcommand dispatch. Outputs are accumulated in memory and written only
//! after the whole computation succeeds, so failures leave no partial files;
//! the manifest goes last.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical failure.

use serde_json::json;
use std::f64::consts::PI;
use std::time::Instant;

use crate::beamoptics as bo;
use crate::fringelab as fl;
use crate::luttinger as lt;
use crate::meanfield as mf;
use crate::tofexpand as tof;
use crate::twomode as tm;

use super::config::{parse_grid, ConfigError, RunConfig};
use super::manifest::{digest, OutputRecord, RunManifest};
use super::output::{json_summary, Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug)]
pub enum DispatchError {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl DispatchError {
    pub fn exit_code(&self) -> i32 {
        match self {
            DispatchError::Validation(_) => EXIT_VALIDATION,
            DispatchError::Numerical(_) | DispatchError::Io(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for DispatchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DispatchError::Validation(m) => write!(f, "validation: {m}"),
            DispatchError::Numerical(m) => write!(f, "numerical failure: {m}"),
            DispatchError::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl std::error::Error for DispatchError {}

impl From<ConfigError> for DispatchError {
    fn from(e: ConfigError) -> Self {
        DispatchError::Validation(e.0)
    }
}

impl From<tm::TwoModeError> for DispatchError {
    fn from(e: tm::TwoModeError) -> Self {
        match e {
            tm::TwoModeError::DimensionOverCap { .. } | tm::TwoModeError::NotNormalized { .. } => {
                DispatchError::Numerical(e.to_string())
            }
            _ => DispatchError::Validation(e.to_string()),
        }
    }
}

impl From<mf::MeanFieldError> for DispatchError {
    fn from(e: mf::MeanFieldError) -> Self {
        match e {
            mf::MeanFieldError::PoleProximity { .. } | mf::MeanFieldError::NumericalFailure(_) => {
                DispatchError::Numerical(e.to_string())
            }
            _ => DispatchError::Validation(e.to_string()),
        }
    }
}

impl From<tof::TofError> for DispatchError {
    fn from(e: tof::TofError) -> Self {
        DispatchError::Validation(e.to_string())
    }
}

impl From<lt::LuttingerError> for DispatchError {
    fn from(e: lt::LuttingerError) -> Self {
        match e {
            lt::LuttingerError::NoCrossover => DispatchError::Numerical(e.to_string()),
            _ => DispatchError::Validation(e.to_string()),
        }
    }
}

impl From<fl::FringeError> for DispatchError {
    fn from(e: fl::FringeError) -> Self {
        match e {
            fl::FringeError::FitFailure { .. } => DispatchError::Numerical(e.to_string()),
            _ => DispatchError::Validation(e.to_string()),
        }
    }
}

impl From<bo::BeamOpticsError> for DispatchError {
    fn from(e: bo::BeamOpticsError) -> Self {
        match e {
            bo::BeamOpticsError::TalbotLauPole => DispatchError::Numerical(e.to_string()),
            _ => DispatchError::Validation(e.to_string()),
        }
    }
}

type Outputs = Vec<(String, Vec<u8>)>;

/// Run the configured subcommand: compute (unless dry-run), write outputs,
/// write the manifest last, optionally verify it.
pub fn dispatch(config: &RunConfig) -> Result<(), DispatchError> {
    let started = Instant::now();
    let outputs = build_outputs(config)?;
    if config.dry_run {
        println!("dry-run ok: {}", config.command.join(" "));
        return Ok(());
    }
    std::fs::create_dir_all(&config.output_dir)
        .map_err(|e| DispatchError::Io(format!("cannot create output directory: {e}")))?;
    let mut written: Vec<std::path::PathBuf> = Vec::new();
    let mut records = Vec::new();
    for (name, bytes) in &outputs {
        let path = config.output_dir.join(name);
        if let Err(e) = std::fs::write(&path, bytes) {
            for p in &written {
                std::fs::remove_file(p).ok();
            }
            return Err(DispatchError::Io(format!(
                "cannot write {}: {e}",
                path.display()
            )));
        }
        written.push(path);
        records.push(OutputRecord {
            path: name.clone(),
            bytes: bytes.len() as u64,
            digest: digest(bytes),
        });
        println!("wrote {}", config.output_dir.join(name).display());
    }
    let manifest = RunManifest::new(config, started.elapsed().as_secs_f64(), records);
    let manifest_bytes = serde_json::to_vec_pretty(&manifest)
        .map_err(|e| DispatchError::Io(format!("manifest serialization: {e}")))?;
    let manifest_path = config.output_dir.join("run.json");
    std::fs::write(&manifest_path, &manifest_bytes)
        .map_err(|e| DispatchError::Io(format!("cannot write manifest: {e}")))?;
    if config.verify_manifest {
        super::manifest::verify_manifest(&config.output_dir).map_err(DispatchError::Numerical)?;
        println!("manifest verified: {}", manifest_path.display());
    }
    Ok(())
}

fn build_outputs(config: &RunConfig) -> Result<Outputs, DispatchError> {
    let command: Vec<&str> = config.command.iter().map(|s| s.as_str()).collect();
    match command.as_slice() {
        ["twomode", "spectrum"] => twomode_spectrum(config),
        ["twomode", "ground-scan"] | ["twomode", "ground"] => twomode_ground_scan(config),
        ["twomode", "evolve"] => twomode_evolve(config),
        ["twomode", "husimi"] => twomode_husimi(config),
        ["meanfield", "integrate"] => meanfield_integrate(config),
        ["meanfield", "portrait"] => meanfield_portrait(config),
        ["meanfield", "frequencies"] => meanfield_frequencies(config),
        ["tof", "pattern"] => tof_pattern(config),
        ["tof", "fringe-k"] => tof_fringe_k(config),
        ["luttinger", "params"] => luttinger_params(config),
        ["luttinger", "equilibrium"] => luttinger_correlation(config, lt::EnsembleKind::Thermal),
        ["luttinger", "quench"] => luttinger_correlation(config, lt::EnsembleKind::Quench),
        ["luttinger", "lightcone"] => luttinger_lightcone(config),
        ["fringes", "synthesize"] => fringes_synthesize(config),
        ["fringes", "fit"] => fringes_fit(config),
        ["fringes", "fdf"] => fringes_fdf(config),
        ["optics", "calc", op] => optics_calc(config, op),
        ["optics", "table", kind] => optics_table(config, kind),
        other => Err(DispatchError::Validation(format!(
            "unknown subcommand '{}'; see README for the command list",
            other.join(" ")
        ))),
    }
}

fn bh_params(config: &RunConfig) -> Result<tm::BoseHubbardParams, DispatchError> {
    let n = config.require_usize("N")?;
    let j = config.require_quantity("J")?;
    let u = config.quantity_or("U", 0.0)?;
    let delta = config.quantity_or("delta", 0.0)?;
    Ok(tm::BoseHubbardParams::new(j, u, delta, n)?)
}

// ---------------------------------------------------------------- twomode

fn twomode_spectrum(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(&["N", "J", "U", "delta"])?;
    let params = bh_params(config)?;
    if config.dry_run {
        return Ok(Vec::new());
    }
    let eig = tm::eigensystem(&params, tm::DEFAULT_DIM_CAP)?;
    let mut table = Table::new(&["index", "energy"]);
    for (i, e) in eig.energies.iter().enumerate() {
        table.push(vec![Cell::Int(i as i64), Cell::Float(*e)]);
    }
    Ok(vec![(
        format!("spectrum.{}", Table::extension(config.format)),
        table.render(config.format),
    )])
}

fn twomode_ground_scan(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(&["N", "J", "U", "delta", "gamma-min", "gamma-max", "points"])?;
    let n = config.require_usize("N")?;
    let j = config.quantity_or("J", 1.0)?;
    let delta = config.quantity_or("delta", 0.0)?;
    if !(j > 0.0) {
        return Err(DispatchError::Validation("ground-scan needs J > 0".into()));
    }
    // either a single --U or a log-spaced gamma scan
    let gammas: Vec<f64> = if config.get("U").is_some() {
        vec![config.require_quantity("U")? / (2.0 * j)]
    } else {
        let lo = config.require_quantity("gamma-min")?;
        let hi = config.require_quantity("gamma-max")?;
        let points = config.usize_or("points", 50)?;
        if !(lo > 0.0) || hi < lo || points < 1 {
            return Err(DispatchError::Validation(
                "need 0 < gamma-min <= gamma-max and points >= 1".into(),
            ));
        }
        (0..points)
            .map(|i| {
                if points == 1 {
                    lo
                } else {
                    lo * (hi / lo).powf(i as f64 / (points - 1) as f64)
                }
            })
            .collect()
    };
    // validate the first point before any heavy work
    let first = tm::BoseHubbardParams::new(j, 2.0 * j * gammas[0], delta, n)?;
    if config.dry_run {
        let _ = first;
        return Ok(Vec::new());
    }
    let mut table = Table::new(&[
        "gamma",
        "energy",
        "xi_n",
        "xi_phi",
        "xi_s",
        "coherence",
        "delta_sz",
        "delta_sz_harmonic",
    ]);
    for &gamma in &gammas {
        let params = tm::BoseHubbardParams::new(j, 2.0 * j * gamma, delta, n)?;
        let (state, energy) = tm::ground_state(&params)?;
        let obs = tm::spin_observables(&state)?;
        let harmonic = tm::harmonic_ground_fluctuations(&params)?;
        table.push(vec![
            Cell::Float(gamma),
            Cell::Float(energy),
            Cell::Float(obs.xi_n),
            Cell::Float(obs.xi_phi),
            obs.xi_s.map_or(Cell::Empty, Cell::Float),
            Cell::Float(obs.coherence),
            Cell::Float(obs.var_sz.sqrt()),
            Cell::Float(harmonic.delta_sz),
        ]);
    }
    Ok(vec![(
        format!("ground_scan.{}", Table::extension(config.format)),
        table.render(config.format),
    )])
}

fn twomode_evolve(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(&[
        "N", "J", "U", "delta", "theta", "phi", "t-max", "samples", "dt-max",
    ])?;
    let params = bh_params(config)?;
    let theta = config.quantity_or("theta", PI / 2.0)?;
    let phi = config.quantity_or("phi", 0.0)?;
    let t_max = config.require_quantity("t-max")?;
    let samples = config.usize_or("samples", 200)?.max(2);
    let method = match config.get("dt-max") {
        Some(_) => tm::EvolveMethod::Stepped {
            dt_max: config.require_quantity("dt-max")?,
        },
        None => tm::EvolveMethod::Spectral,
    };
    let initial = tm::coherent_state(tm::BlochAngle::new(theta, phi)?, params.n)?;
    if config.dry_run {
        return Ok(Vec::new());
    }
    let mut table = Table::new(&["t", "sx", "sy", "sz", "var_sz", "xi_n", "coherence"]);
    for i in 0..samples {
        let t = t_max * i as f64 / (samples - 1) as f64;
        let state = tm::evolve(&initial, &params, t, method)?;
        let obs = tm::spin_observables(&state)?;
        table.push(vec![
            Cell::Float(t),
            Cell::Float(obs.sx),
            Cell::Float(obs.sy),
            Cell::Float(obs.sz),
            Cell::Float(obs.var_sz),
            Cell::Float(obs.xi_n),
            Cell::Float(obs.coherence),
        ]);
    }
    Ok(vec![(
        format!("evolve.{}", Table::extension(config.format)),
        table.render(config.format),
    )])
}

fn twomode_husimi(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(&[
        "N", "J", "U", "delta", "state", "theta", "phi", "n-theta", "n-phi",
    ])?;
    let n = config.require_usize("N")?;
    let n_theta = config.usize_or("n-theta", 61)?.max(2);
    let n_phi = config.usize_or("n-phi", 121)?.max(2);
    // validate the state parameters before any diagonalization
    let state_kind = config.string_or("state", "ground");
    enum StateSpec {
        Ground(tm::BoseHubbardParams),
        Coherent(tm::BlochAngle),
    }
    let spec = match state_kind.as_str() {
        "ground" => StateSpec::Ground(bh_params(config)?),
        "coherent" => {
            let theta = config.quantity_or("theta", PI / 2.0)?;
            let phi = config.quantity_or("phi", 0.0)?;
            StateSpec::Coherent(tm::BlochAngle::new(theta, phi)?)
        }
        other => {
            return Err(DispatchError::Validation(format!(
                "state must be 'ground' or 'coherent', got '{other}'"
            )))
        }
    };
    if config.dry_run {
        return Ok(Vec::new());
    }
    let state = match spec {
        StateSpec::Ground(params) => tm::ground_state(&params)?.0,
        StateSpec::Coherent(angle) => tm::coherent_state(angle, n)?,
    };
    let mut table = Table::new(&["theta", "phi", "q"]);
    for it in 0..n_theta {
        let theta = PI * it as f64 / (n_theta - 1) as f64;
        for ip in 0..n_phi {
            let phi = -PI + 2.0 * PI * ip as f64 / (n_phi - 1) as f64;
            let q = tm::husimi_q(&state, tm::BlochAngle::new(theta, phi)?)?;
            table.push(vec![Cell::Float(theta), Cell::Float(phi), Cell::Float(q)]);
        }
    }
    Ok(vec![(
        format!("husimi.{}", Table::extension(config.format)),
        table.render(config.format),
    )])
}

// -------------------------------------------------------------- meanfield

fn meanfield_integrate(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(&[
        "J", "U", "N", "delta", "z0", "phi0", "t-max", "tol", "samples",
    ])?;
    let params = bh_params(config)?;
    let initial = mf::MeanFieldState::new(
        config.require_quantity("z0")?,
        config.require_quantity("phi0")?,
    )?;
    let t_max = config.require_quantity("t-max")?;
    let tol = config.quantity_or("tol", 1e-9)?;
    let samples = config.usize_or("samples", 1000)?.max(2);
    if config.dry_run {
        return Ok(Vec::new());
    }
    let traj = mf::integrate(&initial, &params, t_max, tol, samples)?;
    Ok(vec![(
        format!("trajectory.{}", Table::extension(config.format)),
        trajectory_table(&traj).render(config.format),
    )])
}

fn trajectory_table(traj: &mf::MeanFieldTrajectory) -> Table {
    let mut table = Table::new(&["t", "z", "phi_unwrapped", "energy"]);
    for i in 0..traj.len() {
        table.push(vec![
            Cell::Float(traj.times[i]),
            Cell::Float(traj.states[i].z),
            Cell::Float(traj.states[i].phi),
            Cell::Float(traj.energy[i]),
        ]);
    }
    table
}

fn meanfield_portrait(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(&["J", "U", "N", "delta", "t-max", "tol", "samples", "n-z"])?;
    let params = bh_params(config)?;
    let t_max = config.require_quantity("t-max")?;
    let tol = config.quantity_or("tol", 1e-9)?;
    let samples = config.usize_or("samples", 600)?.max(2);
    let n_z = config.usize_or("n-z", 7)?.max(1);
    if config.dry_run {
        return Ok(Vec::new());
    }
    let mut grid = Vec::new();
    for i in 0..n_z {
        let z0 = -0.9 + 1.8 * i as f64 / (n_z.max(2) - 1) as f64;
        for phi0 in [0.0, PI] {
            grid.push(mf::MeanFieldState::new(z0, phi0)?);
        }
    }
    let orbits = mf::phase_portrait(&params, &grid, t_max, tol, samples)?;
    let mut table = Table::new(&[
        "orbit",
        "class",
        "truncated",
        "t",
        "z",
        "phi_unwrapped",
        "energy",
    ]);
    for (idx, orbit) in orbits.iter().enumerate() {
        for i in 0..orbit.trajectory.len() {
            table.push(vec![
                Cell::Int(idx as i64),
                Cell::Text(orbit.class.to_string()),
                Cell::Int(orbit.truncated as i64),
                Cell::Float(orbit.trajectory.times[i]),
                Cell::Float(orbit.trajectory.states[i].z),
                Cell::Float(orbit.trajectory.states[i].phi),
                Cell::Float(orbit.trajectory.energy[i]),
            ]);
        }
    }
    Ok(vec![(
        format!("portrait.{}", Table::extension(config.format)),
        table.render(config.format),
    )])
}

fn meanfield_frequencies(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(&["J", "U", "N", "delta"])?;
    let params = bh_params(config)?;
    let freqs = mf::characteristic_frequencies(&params)?;
    if config.dry_run {
        return Ok(Vec::new());
    }
    let regime = mf::classify_regime(&params)?;
    let lambda = params.lambda().unwrap_or(f64::NAN);
    let fixed = if params.delta == 0.0 {
        let pts: Vec<serde_json::Value> = mf::fixed_points(&params)?
            .iter()
            .map(|p| {
                json!({
                    "z": p.z,
                    "phi": p.phi,
                    "stable": p.stability == mf::Stability::Stable,
                })
            })
            .collect();
        json!(pts)
    } else {
        serde_json::Value::Null
    };
    let bytes = json_summary(&[
        ("omega_rabi", json!(freqs.omega_rabi)),
        ("omega_plasma", json!(freqs.omega_plasma)),
        (
            "omega_pi_minus",
            freqs
                .omega_pi_minus
                .map_or(serde_json::Value::Null, |v| json!(v)),
        ),
        (
            "omega_pi_plus",
            freqs
                .omega_pi_plus
                .map_or(serde_json::Value::Null, |v| json!(v)),
        ),
        ("gamma_n", json!(lambda)),
        ("regime", json!(regime.to_string())),
        (
            "z_max",
            mf::z_max(lambda).map_or(serde_json::Value::Null, |v| json!(v)),
        ),
        ("fixed_points", fixed),
    ]);
    Ok(vec![("frequencies.json".to_string(), bytes)])
}

// -------------------------------------------------------------------- tof

fn tof_params(config: &RunConfig) -> Result<tof::TofParams, DispatchError> {
    Ok(tof::TofParams::new(
        config.mass()?,
        config.require_quantity("omega")?,
        config.require_quantity("d")?,
    )?)
}

fn tof_pattern(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(&[
        "m",
        "species",
        "omega",
        "d",
        "t",
        "phi",
        "imbalance",
        "x-span",
        "points",
    ])?;
    let params = tof_params(config)?;
    let t = config.require_quantity("t")?;
    let phi = config.quantity_or("phi", 0.0)?;
    let imbalance = config.quantity_or("imbalance", 0.0)?;
    let span = config.quantity_or("x-span", 8.0 * tof::gaussian_width(t, &params))?;
    let points = config.usize_or("points", 1201)?.max(2);
    if config.dry_run {
        return Ok(Vec::new());
    }
    let grid: Vec<f64> = (0..points)
        .map(|i| -span + 2.0 * span * i as f64 / (points - 1) as f64)
        .collect();
    let pattern = tof::density_pattern(&grid, t, phi, &params, imbalance)?;
    let header = serde_json::to_string(&json!({
        "m": params.m,
        "omega": params.omega,
        "sigma0": params.sigma0,
        "d": params.d,
        "t": t,
        "phi": phi,
        "imbalance": imbalance,
        "overlap": pattern.overlap,
        "fringe_k": tof::fringe_wavevector(t, &params).k,
    }))
    .expect("header json");
    let mut table = Table::new(&["x", "density"]).with_preamble(header);
    for (x, d) in pattern.x.iter().zip(&pattern.density) {
        table.push(vec![Cell::Float(*x), Cell::Float(*d)]);
    }
    Ok(vec![(
        format!("pattern.{}", Table::extension(config.format)),
        table.render(config.format),
    )])
}

fn tof_fringe_k(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(&["m", "species", "omega", "d", "t"])?;
    let params = tof_params(config)?;
    let t = config.require_quantity("t")?;
    if config.dry_run {
        return Ok(Vec::new());
    }
    let k = tof::fringe_wavevector(t, &params);
    let bytes = json_summary(&[
        ("k", json!(k.k)),
        ("fringes_formed", json!(k.fringes_formed)),
        (
            "lambda_f",
            k.fringe_spacing()
                .map_or(serde_json::Value::Null, |v| json!(v)),
        ),
        ("sigma_t", json!(tof::gaussian_width(t, &params))),
        ("sigma0", json!(params.sigma0)),
        (
            "long_time_threshold_wt",
            json!(params.long_time_threshold()),
        ),
    ]);
    Ok(vec![("fringe_k.json".to_string(), bytes)])
}

// -------------------------------------------------------------- luttinger

const LUTTINGER_SYSTEM_KEYS: &[&str] = &[
    "m",
    "species",
    "as",
    "omega-perp",
    "n1d",
    "T",
    "length",
    "modes",
];

fn luttinger_system(config: &RunConfig) -> Result<lt::LuttingerSystem, DispatchError> {
    let m = if config.get("m").is_some() || config.get("species").is_some() {
        config.mass()?
    } else {
        crate::constants::Species::Rb87.mass() // the workhorse species
    };
    let a_s = config.require_quantity("as")?;
    let omega_perp = config.require_quantity("omega-perp")?;
    let n1d = config.require_quantity("n1d")?;
    let temperature = config.require_quantity("T")?;
    let length = config.require_quantity("length")?;
    Ok(match config.get("modes") {
        Some(_) => lt::LuttingerSystem::with_modes(
            m,
            a_s,
            omega_perp,
            n1d,
            temperature,
            length,
            config.require_usize("modes")?,
        )?,
        None => lt::LuttingerSystem::new(m, a_s, omega_perp, n1d, temperature, length)?,
    })
}

fn luttinger_params(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(LUTTINGER_SYSTEM_KEYS)?;
    let sys = luttinger_system(config)?;
    if config.dry_run {
        return Ok(Vec::new());
    }
    let p = lt::derive_params(&sys);
    let bytes = json_summary(&[
        ("g", json!(p.g)),
        ("c", json!(p.c)),
        ("k_luttinger", json!(p.k_luttinger)),
        ("xi_h", json!(p.xi_h)),
        ("lambda_t", json!(p.lambda_t)),
        ("gamma_ll", json!(p.gamma_ll)),
        ("t_degeneracy", json!(p.t_degeneracy)),
        ("t_eff", json!(p.t_eff)),
        ("scattering_1d_ok", json!(p.scattering_1d_ok)),
        ("one_d_ok", json!(p.one_d_ok)),
        ("n_modes", json!(sys.n_modes)),
    ]);
    Ok(vec![("params.json".to_string(), bytes)])
}

fn ensemble_table(ens: &lt::ModeEnsemble) -> Table {
    let mut table = Table::new(&["k", "omega", "var_nu", "var_phi"]);
    for j in 0..ens.n_modes() {
        table.push(vec![
            Cell::Float(ens.k[j]),
            Cell::Float(ens.omega[j]),
            Cell::Float(ens.var_nu[j]),
            Cell::Float(ens.var_phi[j]),
        ]);
    }
    table
}

fn luttinger_correlation(
    config: &RunConfig,
    kind: lt::EnsembleKind,
) -> Result<Outputs, DispatchError> {
    let mut keys = LUTTINGER_SYSTEM_KEYS.to_vec();
    keys.extend_from_slice(&["z-max", "z-points", "realizations", "t", "profiles"]);
    config.reject_unknown_keys(&keys)?;
    let sys = luttinger_system(config)?;
    let z_max = config.quantity_or("z-max", sys.l_sys / 4.0)?;
    let z_points = config.usize_or("z-points", 40)?.max(2);
    let realizations = config.usize_or("realizations", 0)?;
    let n_profiles = config.usize_or("profiles", 0)?;
    let t = config.quantity_or("t", 0.0)?;
    if config.dry_run {
        return Ok(Vec::new());
    }
    let mut ens = lt::initial_covariance(&sys, kind);
    if t > 0.0 {
        ens = lt::evolve_covariance(&ens, &sys, t)?;
    }
    let seps: Vec<f64> = (1..=z_points)
        .map(|i| z_max * i as f64 / z_points as f64)
        .collect();
    let mc = if realizations > 0 {
        Some(lt::sample_correlation(
            &ens,
            &sys,
            &seps,
            realizations,
            config.seed,
        )?)
    } else {
        None
    };
    let mut table = Table::new(&["z_sep", "c_analytic", "c_mc", "stderr"]);
    for (i, &sep) in seps.iter().enumerate() {
        let analytic = lt::correlation_analytic(sep, &ens, &sys);
        let (c_mc, stderr) = match &mc {
            Some(rows) => (Cell::Float(rows[i].1), Cell::Float(rows[i].2)),
            None => (Cell::Empty, Cell::Empty),
        };
        table.push(vec![Cell::Float(sep), Cell::Float(analytic), c_mc, stderr]);
    }
    let ext = Table::extension(config.format);
    let mut outputs = vec![
        (format!("correlation.{ext}"), table.render(config.format)),
        (
            format!("ensemble.{ext}"),
            ensemble_table(&ens).render(config.format),
        ),
    ];
    if n_profiles > 0 {
        // sampled relative-phase realizations on a dense grid up to z_max
        let n_grid = (z_points * 5).clamp(64, 2001);
        let grid: Vec<f64> = (0..n_grid)
            .map(|i| z_max * i as f64 / (n_grid - 1) as f64)
            .collect();
        let profiles = lt::sample_profiles(&ens, &sys, &grid, n_profiles, config.seed)?;
        for (idx, profile) in profiles.iter().enumerate() {
            let mut p_table = Table::new(&["z", "phi"]).with_preamble(format!(
                "{{\"realization\": {idx}, \"seed\": {}, \"t\": {}}}",
                profile.seed, profile.t
            ));
            for (z, phi) in profile.z_grid.iter().zip(&profile.phi) {
                p_table.push(vec![Cell::Float(*z), Cell::Float(*phi)]);
            }
            outputs.push((
                format!("profile_{idx:03}.{ext}"),
                p_table.render(config.format),
            ));
        }
    }
    Ok(outputs)
}

fn luttinger_lightcone(config: &RunConfig) -> Result<Outputs, DispatchError> {
    let mut keys = LUTTINGER_SYSTEM_KEYS.to_vec();
    keys.extend_from_slice(&["t-grid", "z-max", "z-points", "band"]);
    config.reject_unknown_keys(&keys)?;
    let sys = luttinger_system(config)?;
    let t_grid = parse_grid(
        config
            .get("t-grid")
            .ok_or_else(|| DispatchError::Validation("missing required field --t-grid".into()))?,
    )
    .map_err(DispatchError::Validation)?;
    let z_max = config.quantity_or("z-max", sys.l_sys / 2.5)?;
    let z_points = config.usize_or("z-points", 400)?.max(16);
    let band = config.quantity_or("band", 0.02)?;
    if config.dry_run {
        return Ok(Vec::new());
    }
    let ens = lt::initial_covariance(&sys, lt::EnsembleKind::Quench);
    let seps: Vec<f64> = (0..z_points)
        .map(|i| z_max * i as f64 / (z_points - 1) as f64)
        .collect();
    let mut table = Table::new(&["t", "z_c"]);
    let mut ts = Vec::new();
    let mut zcs = Vec::new();
    for &t in &t_grid {
        let evolved = lt::evolve_covariance(&ens, &sys, t)?;
        let curve: Vec<f64> = seps
            .iter()
            .map(|&z| lt::correlation_analytic(z, &evolved, &sys))
            .collect();
        let zc = lt::crossover_distance(&seps, &curve, band)?;
        table.push(vec![Cell::Float(t), Cell::Float(zc)]);
        ts.push(t);
        zcs.push(zc);
    }
    let (slope, intercept) = lt::linear_fit(&ts, &zcs)
        .ok_or_else(|| DispatchError::Numerical("light-cone fit needs at least 2 points".into()))?;
    let c = sys.sound_speed();
    let summary = json_summary(&[
        ("slope", json!(slope)),
        ("intercept", json!(intercept)),
        ("sound_speed", json!(c)),
        ("two_c", json!(2.0 * c)),
        ("slope_over_two_c", json!(slope / (2.0 * c))),
    ]);
    let ext = Table::extension(config.format);
    Ok(vec![
        (format!("lightcone.{ext}"), table.render(config.format)),
        ("lightcone.json".to_string(), summary),
    ])
}

// ---------------------------------------------------------------- fringes

fn profile_for_synthesis(
    config: &RunConfig,
    rows: usize,
    dz: f64,
) -> Result<lt::PhaseProfile, DispatchError> {
    let kind = config.string_or("kind", "const");
    let grid: Vec<f64> = (0..rows).map(|i| i as f64 * dz).collect();
    match kind.as_str() {
        "const" => {
            let phi0 = config.quantity_or("phi0", 0.0)?;
            Ok(lt::PhaseProfile {
                z_grid: grid,
                phi: vec![phi0; rows],
                seed: config.seed,
                t: 0.0,
            })
        }
        "thermal" | "quench" => {
            let sys = luttinger_system(config)?;
            let ensemble_kind = if kind == "thermal" {
                lt::EnsembleKind::Thermal
            } else {
                lt::EnsembleKind::Quench
            };
            let mut ens = lt::initial_covariance(&sys, ensemble_kind);
            let t = config.quantity_or("t", 0.0)?;
            if t > 0.0 {
                ens = lt::evolve_covariance(&ens, &sys, t)?;
            }
            Ok(lt::sample_profiles(&ens, &sys, &grid, 1, config.seed)?.remove(0))
        }
        other => Err(DispatchError::Validation(format!(
            "kind must be 'const', 'thermal' or 'quench', got '{other}'"
        ))),
    }
}

fn fringes_synthesize(config: &RunConfig) -> Result<Outputs, DispatchError> {
    let mut keys = LUTTINGER_SYSTEM_KEYS.to_vec();
    keys.extend_from_slice(&[
        "kind",
        "phi0",
        "t",
        "fringe-k",
        "lambda-f",
        "envelope-sigma",
        "contrast",
        "pixel-size",
        "psf",
        "noise",
        "rows",
        "binary",
    ]);
    config.reject_unknown_keys(&keys)?;
    let fringe_k = match (config.get("fringe-k"), config.get("lambda-f")) {
        (Some(_), _) => config.require_quantity("fringe-k")?,
        (None, Some(_)) => PI / config.require_quantity("lambda-f")?,
        (None, None) => {
            return Err(DispatchError::Validation(
                "missing required field --fringe-k or --lambda-f".into(),
            ))
        }
    };
    let envelope_sigma = config.require_quantity("envelope-sigma")?;
    let pixel_size = config.require_quantity("pixel-size")?;
    let contrast = config.quantity_or("contrast", 0.6)?;
    let psf = config.quantity_or("psf", 0.0)?;
    let noise = config.quantity_or("noise", 0.0)?;
    let rows = config.usize_or("rows", 120)?.max(8);
    let binary = config.get("binary") == Some("true");
    // validate the profile source without sampling yet
    let kind = config.string_or("kind", "const");
    match kind.as_str() {
        "const" => {
            config.quantity_or("phi0", 0.0)?;
        }
        "thermal" | "quench" => {
            luttinger_system(config)?;
        }
        other => {
            return Err(DispatchError::Validation(format!(
                "kind must be 'const', 'thermal' or 'quench', got '{other}'"
            )))
        }
    }
    if config.dry_run {
        return Ok(Vec::new());
    }
    let profile = profile_for_synthesis(config, rows, pixel_size)?;
    let img = fl::synthesize_image(
        &profile,
        fringe_k,
        envelope_sigma,
        contrast,
        pixel_size,
        psf,
        noise,
        config.seed,
    )?;
    let sidecar = json_summary(&[
        ("shape", json!([img.n_z, img.n_x])),
        ("pixel_size", json!(img.pixel_size)),
        ("psf_sigma", json!(img.psf_sigma)),
        ("fringe_k", json!(img.fringe_k)),
        ("envelope_sigma", json!(img.envelope_sigma)),
        ("z0", json!(img.z0)),
        ("dz", json!(img.dz)),
        ("format", json!(if binary { "f32-le" } else { "csv" })),
    ]);
    let mut outputs = Vec::new();
    if binary {
        let mut bytes = Vec::with_capacity(img.pixels.len() * 4);
        for &p in &img.pixels {
            bytes.extend_from_slice(&(p as f32).to_le_bytes());
        }
        outputs.push(("image.f32".to_string(), bytes));
    } else {
        let mut text = String::new();
        for row in 0..img.n_z {
            let fields: Vec<String> = (0..img.n_x)
                .map(|col| super::output::format_float(img.pixel(row, col)))
                .collect();
            text.push_str(&fields.join(","));
            text.push('\n');
        }
        outputs.push(("image.csv".to_string(), text.into_bytes()));
    }
    outputs.push(("image.json".to_string(), sidecar));
    Ok(outputs)
}

fn fringes_fit(config: &RunConfig) -> Result<Outputs, DispatchError> {
    config.reject_unknown_keys(&["input", "lambda-hint"])?;
    let input = config
        .get("input")
        .ok_or_else(|| DispatchError::Validation("missing required field --input".into()))?;
    let text = std::fs::read_to_string(input)
        .map_err(|e| DispatchError::Validation(format!("cannot read {input}: {e}")))?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split(',');
        let (a, b) = (parts.next(), parts.next());
        if let (Some(a), Some(b)) = (a, b) {
            if let (Ok(xa), Ok(yb)) = (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
                x.push(xa);
                y.push(yb);
            }
        }
    }
    if x.len() < 16 {
        return Err(DispatchError::Validation(format!(
            "{input}: found only {} numeric rows, need at least 16",
            x.len()
        )));
    }
    let hint = match config.get("lambda-hint") {
        Some(_) => config.require_quantity("lambda-hint")?,
        None => {
            // crude default: a tenth of the sampled span
            (x.last().unwrap() - x[0]).abs() / 10.0
        }
    };
    if config.dry_run {
        return Ok(Vec::new());
    }
    let fit = fl::fit_fringe(&x, &y, hint)?;
    let bytes = json_summary(&[
        ("a", json!(fit.a)),
        ("x0", json!(fit.x0)),
        ("sigma", json!(fit.sigma)),
        ("c", json!(fit.c)),
        ("lambda_f", json!(fit.lambda_f)),
        ("phi", json!(fit.phi)),
        ("residual_rms", json!(fit.residual_rms)),
        ("iterations", json!(fit.iterations)),
        ("c_clamped", json!(fit.c_clamped)),
    ]);
    Ok(vec![("fit.json".to_string(), bytes)])
}

fn fringes_fdf(config: &RunConfig) -> Result<Outputs, DispatchError> {
    let mut keys = LUTTINGER_SYSTEM_KEYS.to_vec();
    keys.extend_from_slice(&["kind", "t", "L", "n", "m-max", "window-points"]);
    config.reject_unknown_keys(&keys)?;
    let sys = luttinger_system(config)?;
    let l = config.require_quantity("L")?;
    let n = config.require_usize("n")?;
    let m_max = config.usize_or("m-max", 4)?;
    let kind = match config.string_or("kind", "thermal").as_str() {
        "thermal" => lt::EnsembleKind::Thermal,
        "quench" => lt::EnsembleKind::Quench,
        other => {
            return Err(DispatchError::Validation(format!(
                "kind must be 'thermal' or 'quench', got '{other}'"
            )))
        }
    };
    if l >= sys.l_sys {
        return Err(DispatchError::Validation(format!(
            "integration length {l} must be smaller than the system length {}",
            sys.l_sys
        )));
    }
    if config.dry_run {
        return Ok(Vec::new());
    }
    let mut ens = lt::initial_covariance(&sys, kind);
    let t = config.quantity_or("t", 0.0)?;
    if t > 0.0 {
        ens = lt::evolve_covariance(&ens, &sys, t)?;
    }
    // window grid resolving the healing length
    let points = config.usize_or(
        "window-points",
        ((l / sys.healing_length()).ceil() as usize * 2).clamp(64, 2048),
    )?;
    let grid: Vec<f64> = (0..points)
        .map(|i| -0.5 * l + l * i as f64 / (points - 1) as f64)
        .collect();
    let profiles = lt::sample_profiles(&ens, &sys, &grid, n, config.seed)?;
    let contrasts: Vec<f64> = profiles
        .iter()
        .map(|p| fl::contrast_operator(p, l, sys.n1d).map(|c| c.c))
        .collect::<Result<_, _>>()?;
    let samples = fl::ContrastSamples::from_contrasts(&contrasts, l)?;
    let (moments, hist) = fl::fdf_moments(&samples, m_max)?;

    let mut moment_table = Table::new(&["m", "moment"]);
    for (m, value) in moments.iter().enumerate() {
        moment_table.push(vec![Cell::Int((m + 1) as i64), Cell::Float(*value)]);
    }
    let ext = Table::extension(config.format);
    let mut outputs = vec![(
        format!("fdf_moments.{ext}"),
        moment_table.render(config.format),
    )];
    if let Some(bins) = hist {
        let mut hist_table = Table::new(&["alpha_lo", "alpha_hi", "density"]);
        for b in bins {
            hist_table.push(vec![
                Cell::Float(b.lo),
                Cell::Float(b.hi),
                Cell::Float(b.density),
            ]);
        }
        outputs.push((format!("fdf_hist.{ext}"), hist_table.render(config.format)));
    }
    Ok(outputs)
}

// ----------------------------------------------------------------- optics

fn beam_from(config: &RunConfig) -> Result<bo::BeamParams, DispatchError> {
    Ok(bo::BeamParams::new(
        config.mass()?,
        config.require_quantity("v")?,
        config.quantity_or("sigma-v", 0.0)?,
    )?)
}

fn lambda_db_from(config: &RunConfig) -> Result<f64, DispatchError> {
    if config.get("lambda-db").is_some() {
        return Ok(config.require_quantity("lambda-db")?);
    }
    Ok(beam_from(config)?.lambda_db)
}

fn optics_calc(config: &RunConfig, op: &str) -> Result<Outputs, DispatchError> {
    let entries: Vec<(&str, serde_json::Value)> = match op {
        "eikonal" => {
            config.reject_unknown_keys(&["V", "L", "m", "species", "v", "sigma-v"])?;
            let beam = beam_from(config)?;
            let v_pot = config.require_quantity("V")?;
            let l = config.require_quantity("L")?;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let res = bo::eikonal_phase(v_pot, l, &beam);
            let n = bo::index_from_potential(v_pot, &beam);
            vec![
                ("phase", json!(res.phase)),
                ("abs_phase", json!(res.phase.abs())),
                ("weak_potential_ok", json!(res.weak_potential_ok)),
                ("index", json!(n)),
                ("one_minus_n", json!(1.0 - n)),
            ]
        }
        "stark" => {
            config.reject_unknown_keys(&["alpha", "E", "L", "m", "species", "v", "sigma-v"])?;
            let beam = beam_from(config)?;
            let alpha = config.require_quantity("alpha")?;
            let e_field = config.require_quantity("E")?;
            let l = config.require_quantity("L")?;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let res = bo::stark_phase(alpha, e_field, l, &beam);
            vec![
                ("phase", json!(res.phase)),
                ("weak_potential_ok", json!(res.weak_potential_ok)),
            ]
        }
        "bragg" => {
            config.reject_unknown_keys(&[
                "lambda-db",
                "lambda-ph",
                "order",
                "m",
                "species",
                "v",
                "sigma-v",
            ])?;
            let lambda_db = lambda_db_from(config)?;
            let lambda_ph = config.require_quantity("lambda-ph")?;
            let order = config.usize_or("order", 1)? as u32;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let theta = bo::bragg_angle(lambda_db, lambda_ph, order)?;
            vec![("theta_b", json!(theta)), ("lambda_db", json!(lambda_db))]
        }
        "talbot" => {
            config.reject_unknown_keys(&["d", "lambda-db", "m", "species", "v", "sigma-v"])?;
            let d = config.require_quantity("d")?;
            let lambda_db = lambda_db_from(config)?;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let t = bo::talbot_lengths(lambda_db, d)?;
            vec![("l_talbot", json!(t.l_talbot)), ("l_t", json!(t.l_t))]
        }
        "talbot-lau" => {
            config.reject_unknown_keys(&[
                "L1",
                "d",
                "lambda-db",
                "n",
                "m-order",
                "m",
                "species",
                "v",
                "sigma-v",
            ])?;
            let d = config.require_quantity("d")?;
            let lambda_db = lambda_db_from(config)?;
            let l1 = config.require_quantity("L1")?;
            let n = config.usize_or("n", 1)? as u32;
            let m_order = config.usize_or("m-order", 2)? as u32;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let l_t = bo::talbot_lengths(lambda_db, d)?.l_t;
            let g = bo::talbot_lau(l1, l_t, n, m_order, d)?;
            vec![
                ("l_t", json!(l_t)),
                ("l2", json!(g.l2)),
                ("d_prime", json!(g.d_prime)),
                ("unphysical", json!(g.unphysical)),
            ]
        }
        "recoil" => {
            config.reject_unknown_keys(&["d", "m", "species"])?;
            let grating = bo::GratingParams::new(config.require_quantity("d")?, None)?;
            let m = config.mass()?;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let e = bo::grating_recoil_energy(&grating, m)?;
            vec![("e_g", json!(e.e_g)), ("omega_rec", json!(e.omega_rec))]
        }
        "moire" => {
            config.reject_unknown_keys(&["w3", "d"])?;
            let w3 = config.require_quantity("w3")?;
            let d = config.require_quantity("d")?;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let m = bo::moire_mask(w3, d)?;
            vec![
                ("intensity_factor", json!(m.intensity_factor)),
                ("contrast_factor", json!(m.contrast_factor)),
                ("zero_transmission", json!(m.zero_transmission)),
            ]
        }
        "three-grating" => {
            config.reject_unknown_keys(&["x1", "x2", "x3", "d", "dphi-int"])?;
            let d = config.require_quantity("d")?;
            let g = bo::GratingParams::new(d, None)?;
            let phase = bo::three_grating_phase(
                config.require_quantity("x1")?,
                config.require_quantity("x2")?,
                config.require_quantity("x3")?,
                g.g,
                config.quantity_or("dphi-int", 0.0)?,
            );
            if config.dry_run {
                return Ok(Vec::new());
            }
            vec![("phase", json!(phase)), ("g", json!(g.g))]
        }
        "polarizability" => {
            config.reject_unknown_keys(&["phi", "volt", "D", "L-eff", "v"])?;
            let phi = config.require_quantity("phi")?;
            let volt = config.require_quantity("volt")?;
            let d_sep = config.require_quantity("D")?;
            let l_eff = config.require_quantity("L-eff")?;
            let v = config.require_quantity("v")?;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let a = bo::polarizability_from_phase(phi, volt, d_sep, l_eff, v)?;
            vec![
                ("alpha_si", json!(a.si)),
                ("alpha_cgs_cm3", json!(a.cgs_cm3)),
            ]
        }
        "gas-index" => {
            config.reject_unknown_keys(&["N-density", "f-re", "f-im", "k-lab", "k-cm"])?;
            let n_density = config.require_quantity("N-density")?;
            let f_re = config.require_quantity("f-re")?;
            let f_im = config.require_quantity("f-im")?;
            let k_lab = config.require_quantity("k-lab")?;
            let k_cm = config.require_quantity("k-cm")?;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let g = bo::gas_index(n_density, f_re, f_im, k_lab, k_cm)?;
            vec![
                ("n_re", json!(g.n.re)),
                ("n_im", json!(g.n.im)),
                ("sigma_tot", json!(g.sigma_tot)),
                ("rho", g.rho.map_or(serde_json::Value::Null, |v| json!(v))),
            ]
        }
        "coherence" => {
            config.reject_unknown_keys(&[
                "m",
                "species",
                "v",
                "sigma-v",
                "collimation",
                "source-z",
                "source-w",
            ])?;
            let beam = beam_from(config)?;
            let collimation = match config.get("collimation") {
                Some(_) => Some(config.require_quantity("collimation")?),
                None => None,
            };
            let source = match (config.get("source-z"), config.get("source-w")) {
                (Some(_), Some(_)) => Some((
                    config.require_quantity("source-z")?,
                    config.require_quantity("source-w")?,
                )),
                _ => None,
            };
            if config.dry_run {
                return Ok(Vec::new());
            }
            let c = bo::coherence_lengths(&beam, collimation, source);
            vec![
                ("lambda_db", json!(beam.lambda_db)),
                (
                    "longitudinal",
                    c.longitudinal.map_or(serde_json::Value::Null, |v| json!(v)),
                ),
                (
                    "transverse_from_angle",
                    c.transverse_from_angle
                        .map_or(serde_json::Value::Null, |v| json!(v)),
                ),
                (
                    "transverse_from_source",
                    c.transverse_from_source
                        .map_or(serde_json::Value::Null, |v| json!(v)),
                ),
            ]
        }
        "velocities" => {
            config.reject_unknown_keys(&["m", "species", "v", "sigma-v", "n-index"])?;
            let beam = beam_from(config)?;
            let n_index = config.quantity_or("n-index", 1.0)?;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let (v_ph, v_g) = bo::velocities(&beam, n_index);
            vec![("v_phase", json!(v_ph)), ("v_group", json!(v_g))]
        }
        "spread" => {
            config.reject_unknown_keys(&["t", "sigma-x0", "sigma-k0", "m", "species"])?;
            let t = config.require_quantity("t")?;
            let sigma_x0 = config.require_quantity("sigma-x0")?;
            let sigma_k0 = config.require_quantity("sigma-k0")?;
            let m = config.mass()?;
            if config.dry_run {
                return Ok(Vec::new());
            }
            vec![(
                "sigma_x",
                json!(bo::wavepacket_spread(t, sigma_x0, sigma_k0, m)),
            )]
        }
        other => {
            return Err(DispatchError::Validation(format!(
                "unknown optics calculation '{other}'"
            )))
        }
    };
    if config.dry_run {
        return Ok(Vec::new());
    }
    // echo to stdout for single-shot queries, and persist
    let bytes = json_summary(&entries);
    print!("{}", String::from_utf8_lossy(&bytes));
    Ok(vec![(format!("calc_{op}.json"), bytes)])
}

fn optics_table(config: &RunConfig, kind: &str) -> Result<Outputs, DispatchError> {
    match kind {
        "diffraction" => {
            config.reject_unknown_keys(&["m", "species", "v", "sigma-v", "d", "orders"])?;
            let beam = beam_from(config)?;
            let grating = bo::GratingParams::new(config.require_quantity("d")?, None)?;
            let n_orders = config.usize_or("orders", 5)? as i32;
            if config.dry_run {
                return Ok(Vec::new());
            }
            let orders: Vec<i32> = (-n_orders..=n_orders).collect();
            let mut table = Table::new(&["order", "delta_p", "theta", "small_angle_ok"])
                .with_units(&["", "kg m/s", "rad", ""]);
            for o in bo::diffraction_orders(&beam, &grating, &orders) {
                table.push(vec![
                    Cell::Int(o.n as i64),
                    Cell::Float(o.delta_p),
                    Cell::Float(o.theta),
                    Cell::Int(o.small_angle_ok as i64),
                ]);
            }
            Ok(vec![(
                format!("diffraction.{}", Table::extension(config.format)),
                table.render(config.format),
            )])
        }
        "talbot-lau" => {
            config.reject_unknown_keys(&[
                "m",
                "species",
                "v",
                "sigma-v",
                "lambda-db",
                "d",
                "n",
                "m-order",
                "l1-min",
                "l1-max",
                "points",
            ])?;
            let d = config.require_quantity("d")?;
            let lambda_db = lambda_db_from(config)?;
            let n = config.usize_or("n", 1)? as u32;
            let m_order = config.usize_or("m-order", 2)? as u32;
            let l_t = bo::talbot_lengths(lambda_db, d)?.l_t;
            let l1_min = config.quantity_or("l1-min", 0.3 * l_t)?;
            let l1_max = config.quantity_or("l1-max", 1.5 * l_t)?;
            let points = config.usize_or("points", 25)?.max(2);
            if config.dry_run {
                return Ok(Vec::new());
            }
            let mut table =
                Table::new(&["l1", "l2", "d_prime", "unphysical"]).with_units(&["m", "m", "m", ""]);
            for i in 0..points {
                let l1 = l1_min + (l1_max - l1_min) * i as f64 / (points - 1) as f64;
                match bo::talbot_lau(l1, l_t, n, m_order, d) {
                    Ok(g) => table.push(vec![
                        Cell::Float(l1),
                        Cell::Float(g.l2),
                        Cell::Float(g.d_prime),
                        Cell::Int(g.unphysical as i64),
                    ]),
                    Err(bo::BeamOpticsError::TalbotLauPole) => table.push(vec![
                        Cell::Float(l1),
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Text("pole".to_string()),
                    ]),
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(vec![(
                format!("talbot_lau.{}", Table::extension(config.format)),
                table.render(config.format),
            )])
        }
        other => Err(DispatchError::Validation(format!(
            "unknown optics table '{other}'"
        ))),
    }
}

/// Convenience for tests: run a full command line against an output directory.
#[cfg(test)]
pub fn run_command_line(args: &[&str], out_dir: &std::path::Path) -> Result<(), DispatchError> {
    let mut argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    argv.push("--out".into());
    argv.push(out_dir.display().to_string());
    let config = super::config::parse_config(&argv)?;
    dispatch(&config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::parse_config;
    use std::path::Path;

    fn temp_dir(tag: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!("mw_dispatch_{tag}_{}", std::process::id()));
        std::fs::remove_dir_all(&dir).ok();
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    fn run(args: &[&str], dir: &Path) -> Result<(), DispatchError> {
        run_command_line(args, dir)
    }

    #[test]
    fn spectrum_runs_and_writes_manifest() {
        let dir = temp_dir("spectrum");
        run(
            &["twomode", "spectrum", "--N", "4", "--J", "1", "--U", "0.5"],
            &dir,
        )
        .unwrap();
        assert!(dir.join("spectrum.csv").exists());
        let manifest = super::super::manifest::verify_manifest(&dir).unwrap();
        assert_eq!(manifest.outputs.len(), 1);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn validation_error_names_field() {
        let dir = temp_dir("badn");
        let err = run(&["twomode", "spectrum", "--N", "0", "--J", "1"], &dir).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_VALIDATION);
        assert!(err.to_string().contains("N"));
        // nothing was written
        assert!(!dir.join("spectrum.csv").exists());
        assert!(!dir.join("run.json").exists());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn unknown_key_is_rejected() {
        let dir = temp_dir("unknown");
        let err = run(
            &["twomode", "spectrum", "--N", "4", "--J", "1", "--frob", "2"],
            &dir,
        )
        .unwrap_err();
        assert!(matches!(err, DispatchError::Validation(_)));
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn dry_run_writes_nothing() {
        let dir = temp_dir("dry");
        let config = parse_config(
            &[
                "meanfield",
                "frequencies",
                "--N",
                "100",
                "--J",
                "0.5",
                "--U",
                "0.03",
                "--dry-run",
                "--out",
                dir.to_str().unwrap(),
            ]
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>(),
        )
        .unwrap();
        dispatch(&config).unwrap();
        assert!(std::fs::read_dir(&dir).unwrap().next().is_none());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn optics_eikonal_benchmark_through_cli() {
        let dir = temp_dir("eikonal");
        run(
            &[
                "optics",
                "calc",
                "eikonal",
                "--V",
                "6.6e-12eV",
                "--L",
                "0.1",
                "--species",
                "Na",
                "--v",
                "1000",
            ],
            &dir,
        )
        .unwrap();
        let text = std::fs::read_to_string(dir.join("calc_eikonal.json")).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let phase = v["abs_phase"].as_f64().unwrap();
        assert!((phase - 1.0).abs() < 0.01, "phase {phase}");
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn numerical_failure_exit_code() {
        let dir = temp_dir("pole");
        // Talbot-Lau pole: documented numerical failure
        let err = run(
            &[
                "optics",
                "calc",
                "talbot-lau",
                "--d",
                "100nm",
                "--lambda-db",
                "16pm",
                "--L1",
                "0.0003125",
                "--n",
                "1",
                "--m-order",
                "2",
            ],
            &dir,
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), EXIT_NUMERICAL);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn determinism_byte_identical_csv() {
        let dir_a = temp_dir("det_a");
        let dir_b = temp_dir("det_b");
        let args = [
            "luttinger",
            "equilibrium",
            "--as",
            "5.2nm",
            "--omega-perp",
            "12566",
            "--n1d",
            "35/um",
            "--T",
            "27nK",
            "--length",
            "60um",
            "--z-points",
            "10",
            "--realizations",
            "50",
            "--seed",
            "11",
        ];
        run(&args, &dir_a).unwrap();
        run(&args, &dir_b).unwrap();
        let a = std::fs::read(dir_a.join("correlation.csv")).unwrap();
        let b = std::fs::read(dir_b.join("correlation.csv")).unwrap();
        assert_eq!(a, b);
        std::fs::remove_dir_all(&dir_a).ok();
        std::fs::remove_dir_all(&dir_b).ok();
    }
}
