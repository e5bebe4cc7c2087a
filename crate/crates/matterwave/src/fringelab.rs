//! Interference-pattern synthesis and analysis.
//!
//! Turns relative-phase profiles into synthetic interferograms (local fringe
//! displacement per row, optical PSF blur, pixel noise), integrates line
//! profiles, fits them with the cosine-modulated Gaussian fringe model, and
//! provides the integrated contrast operator, full-distribution-function
//! statistics of the squared contrast, and circular phase statistics.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::f64::consts::PI;

use crate::luttinger::PhaseProfile;

#[derive(Debug, Clone, PartialEq)]
pub enum FringeError {
    InvalidParameter(String),
    /// Pixels too coarse for the requested fringe spacing.
    Aliasing {
        pixel_size: f64,
        fringe_spacing: f64,
    },
    /// Integration window lies (partly) outside the image.
    WindowOutOfImage,
    /// The fit did not converge; the last iterate is attached.
    FitFailure {
        last: Box<FringeFit>,
    },
}

impl std::fmt::Display for FringeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FringeError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            FringeError::Aliasing {
                pixel_size,
                fringe_spacing,
            } => write!(
                f,
                "pixel size {pixel_size} m cannot resolve fringe spacing {fringe_spacing} m"
            ),
            FringeError::WindowOutOfImage => write!(f, "integration window outside the image"),
            FringeError::FitFailure { .. } => write!(f, "fringe fit did not converge"),
        }
    }
}

impl std::error::Error for FringeError {}

/// A synthetic interferogram: rows along z (the gas axis), columns along x
/// (the fringe direction). Values are non-negative densities in arbitrary
/// units.
#[derive(Debug, Clone, PartialEq)]
pub struct Interferogram {
    /// Row-major pixel data, `n_z` rows by `n_x` columns.
    pub pixels: Vec<f64>,
    pub n_x: usize,
    pub n_z: usize,
    /// Pixel size in both directions (m).
    pub pixel_size: f64,
    /// Optical resolution used for the blur (m).
    pub psf_sigma: f64,
    /// Fringe wave vector of the underlying pattern (rad/m).
    pub fringe_k: f64,
    /// Gaussian envelope width along x (m).
    pub envelope_sigma: f64,
    /// z coordinate of the first row (m).
    pub z0: f64,
    /// Row spacing along z (m).
    pub dz: f64,
}

impl Interferogram {
    pub fn pixel(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.n_x + col]
    }

    /// x coordinate of a column center.
    pub fn x_of(&self, col: usize) -> f64 {
        (col as f64 - 0.5 * (self.n_x as f64 - 1.0)) * self.pixel_size
    }

    /// z coordinate of a row center.
    pub fn z_of(&self, row: usize) -> f64 {
        self.z0 + row as f64 * self.dz
    }
}

/// Render an interferogram from a relative-phase profile: each row carries
/// density(x) = exp(-x²/2σ_env²)[1 + C₀ cos(2 k x + φ(z))], then a Gaussian
/// PSF blur and optional additive pixel noise, clamped at zero.
#[allow(clippy::too_many_arguments)]
pub fn synthesize_image(
    profile: &PhaseProfile,
    fringe_k: f64,
    envelope_sigma: f64,
    base_contrast: f64,
    pixel_size: f64,
    psf_sigma: f64,
    noise_sigma: f64,
    seed: u64,
) -> Result<Interferogram, FringeError> {
    if profile.z_grid.len() < 8 {
        return Err(FringeError::InvalidParameter(
            "profile must cover at least 8 rows".into(),
        ));
    }
    if !(fringe_k > 0.0) || !(envelope_sigma > 0.0) || !(pixel_size > 0.0) {
        return Err(FringeError::InvalidParameter(
            "fringe_k, envelope_sigma and pixel_size must be > 0".into(),
        ));
    }
    if !(0.0..=1.0).contains(&base_contrast) {
        return Err(FringeError::InvalidParameter(format!(
            "base contrast must lie in [0, 1], got {base_contrast}"
        )));
    }
    let fringe_spacing = PI / fringe_k;
    if pixel_size >= 0.5 * fringe_spacing {
        return Err(FringeError::Aliasing {
            pixel_size,
            fringe_spacing,
        });
    }
    let n_z = profile.z_grid.len();
    // odd width, so the envelope center sits on a pixel
    let n_x = (((8.0 * envelope_sigma / pixel_size).round() as usize) | 1).max(9);
    let dz = profile.z_grid[1] - profile.z_grid[0];

    let mut img = Interferogram {
        pixels: vec![0.0; n_x * n_z],
        n_x,
        n_z,
        pixel_size,
        psf_sigma,
        fringe_k,
        envelope_sigma,
        z0: profile.z_grid[0],
        dz,
    };
    for row in 0..n_z {
        let phi = profile.phi[row];
        for col in 0..n_x {
            let x = img.x_of(col);
            let envelope = (-x * x / (2.0 * envelope_sigma * envelope_sigma)).exp();
            img.pixels[row * n_x + col] =
                envelope * (1.0 + base_contrast * (2.0 * fringe_k * x + phi).cos());
        }
    }
    if psf_sigma > 0.0 {
        gaussian_blur(&mut img.pixels, n_z, n_x, psf_sigma / pixel_size);
    }
    if noise_sigma > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noise = Normal::new(0.0, noise_sigma)
            .map_err(|e| FringeError::InvalidParameter(e.to_string()))?;
        for p in &mut img.pixels {
            *p += noise.sample(&mut rng);
        }
    }
    for p in &mut img.pixels {
        *p = p.max(0.0);
    }
    Ok(img)
}

/// Separable Gaussian blur with a kernel truncated at 4σ and renormalized at
/// the borders.
fn gaussian_blur(pixels: &mut [f64], n_rows: usize, n_cols: usize, sigma_px: f64) {
    if sigma_px <= 0.0 {
        return;
    }
    let half = (4.0 * sigma_px).ceil() as isize;
    let kernel: Vec<f64> = (-half..=half)
        .map(|i| (-(i * i) as f64 / (2.0 * sigma_px * sigma_px)).exp())
        .collect();
    let convolve_line = |line: &[f64], out: &mut [f64]| {
        let n = line.len() as isize;
        for i in 0..n {
            let mut acc = 0.0;
            let mut weight = 0.0;
            for (kidx, w) in kernel.iter().enumerate() {
                let j = i + kidx as isize - half;
                if j >= 0 && j < n {
                    acc += w * line[j as usize];
                    weight += w;
                }
            }
            out[i as usize] = acc / weight;
        }
    };
    // rows (x direction)
    let mut buf = vec![0.0; n_cols.max(n_rows)];
    let mut scratch = vec![0.0; n_cols];
    for r in 0..n_rows {
        let row = &mut pixels[r * n_cols..(r + 1) * n_cols];
        scratch.copy_from_slice(row);
        convolve_line(&scratch, &mut buf[..n_cols]);
        row.copy_from_slice(&buf[..n_cols]);
    }
    // columns (z direction)
    let mut col_in = vec![0.0; n_rows];
    for c in 0..n_cols {
        for r in 0..n_rows {
            col_in[r] = pixels[r * n_cols + c];
        }
        convolve_line(&col_in, &mut buf[..n_rows]);
        for r in 0..n_rows {
            pixels[r * n_cols + c] = buf[r];
        }
    }
}

/// A line profile: column sums of an image window.
#[derive(Debug, Clone, PartialEq)]
pub struct LineProfile {
    pub x: Vec<f64>,
    pub values: Vec<f64>,
    /// Number of rows summed.
    pub rows: usize,
}

/// Column-wise sum over the rows whose z lies within L/2 of z_center.
pub fn integrate_profile(
    image: &Interferogram,
    z_center: f64,
    l: f64,
) -> Result<LineProfile, FringeError> {
    if !(l > 0.0) {
        return Err(FringeError::InvalidParameter(format!(
            "window length must be > 0, got {l}"
        )));
    }
    let z_lo = z_center - 0.5 * l;
    let z_hi = z_center + 0.5 * l;
    let half_row = 0.5 * image.dz;
    let eps = 1e-9 * image.dz;
    if z_lo < image.z_of(0) - half_row - eps || z_hi > image.z_of(image.n_z - 1) + half_row + eps {
        return Err(FringeError::WindowOutOfImage);
    }
    // rows whose centers fall inside the window; a window shorter than one
    // row spacing still integrates its nearest row
    let mut rows: Vec<usize> = (0..image.n_z)
        .filter(|&r| {
            let z = image.z_of(r);
            z >= z_lo - eps && z <= z_hi + eps
        })
        .collect();
    if rows.is_empty() {
        let r = ((z_center - image.z0) / image.dz)
            .round()
            .clamp(0.0, (image.n_z - 1) as f64);
        rows.push(r as usize);
    }
    let mut values = vec![0.0; image.n_x];
    for &r in &rows {
        for c in 0..image.n_x {
            values[c] += image.pixel(r, c);
        }
    }
    Ok(LineProfile {
        x: (0..image.n_x).map(|c| image.x_of(c)).collect(),
        values,
        rows: rows.len(),
    })
}

/// Result of the cosine-modulated Gaussian fringe fit
/// f(x) = A exp(-(x-x₀)²/2σ²) [1 + C cos(2π(x-x₀)/λ_F + φ)].
#[derive(Debug, Clone, PartialEq)]
pub struct FringeFit {
    pub a: f64,
    pub x0: f64,
    pub sigma: f64,
    /// Contrast in [0, 1.05]; values above 1 are clamped with `c_clamped` set.
    pub c: f64,
    pub lambda_f: f64,
    /// Phase in (-π, π].
    pub phi: f64,
    pub residual_rms: f64,
    pub iterations: usize,
    pub c_clamped: bool,
}

/// Least-squares fringe fit with analytic Jacobian (Levenberg-Marquardt).
///
/// `lambda_f_hint` must lie within a factor of two of the true spacing; the
/// remaining parameters are self-initialized (centroid, rms width, spectral
/// peak, quadrature projection). Converges when the relative cost change
/// drops below 1e-10, giving up after 200 iterations.
pub fn fit_fringe(x: &[f64], y: &[f64], lambda_f_hint: f64) -> Result<FringeFit, FringeError> {
    if x.len() != y.len() || x.len() < 16 {
        return Err(FringeError::InvalidParameter(
            "fit needs matching x/y arrays with at least 16 samples".into(),
        ));
    }
    if !(lambda_f_hint > 0.0) {
        return Err(FringeError::InvalidParameter(
            "fringe spacing hint must be > 0".into(),
        ));
    }
    let dx = x[1] - x[0];
    if dx >= 0.25 * lambda_f_hint {
        return Err(FringeError::Aliasing {
            pixel_size: dx,
            fringe_spacing: lambda_f_hint / 2.0,
        });
    }

    // --- initialization ---
    let total: f64 = y.iter().map(|v| v.max(0.0)).sum();
    if total <= 0.0 {
        return Err(FringeError::InvalidParameter(
            "profile has no weight".into(),
        ));
    }
    let x0_init = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| xi * yi.max(0.0))
        .sum::<f64>()
        / total;
    let sigma_init = (x
        .iter()
        .zip(y)
        .map(|(xi, yi)| (xi - x0_init) * (xi - x0_init) * yi.max(0.0))
        .sum::<f64>()
        / total)
        .sqrt()
        .max(dx);
    let a_init = total * dx / ((2.0 * PI).sqrt() * sigma_init);

    // spectral scan of the envelope-subtracted signal over [hint/2, 2 hint]
    let envelope = |a: f64, xi: f64| {
        a * (-(xi - x0_init) * (xi - x0_init) / (2.0 * sigma_init * sigma_init)).exp()
    };
    let w: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| yi - envelope(a_init, xi))
        .collect();
    let mut best = (lambda_f_hint, 0.0f64);
    let n_scan = 256;
    for i in 0..=n_scan {
        let lambda = 0.5 * lambda_f_hint * (4.0f64).powf(i as f64 / n_scan as f64);
        let k = 2.0 * PI / lambda;
        let mut re = 0.0;
        let mut im = 0.0;
        for (&xi, &wi) in x.iter().zip(&w) {
            let (s, c) = (k * (xi - x0_init)).sin_cos();
            re += wi * c;
            im += wi * s;
        }
        let power = re * re + im * im;
        if power > best.1 {
            best = (lambda, power);
        }
    }
    let lambda_init = best.0;
    let k_init = 2.0 * PI / lambda_init;
    let (mut proj_c, mut proj_s, mut env_sum) = (0.0, 0.0, 0.0);
    for (&xi, &wi) in x.iter().zip(&w) {
        let (s, c) = (k_init * (xi - x0_init)).sin_cos();
        proj_c += wi * c;
        proj_s += wi * s;
        env_sum += envelope(a_init, xi);
    }
    let phi_init = (-proj_s).atan2(proj_c);
    let c_init = (2.0 * (proj_c * proj_c + proj_s * proj_s).sqrt() / env_sum).clamp(0.0, 1.0);

    // --- Levenberg-Marquardt ---
    let mut p = [
        a_init,
        x0_init,
        sigma_init,
        c_init.max(1e-3),
        lambda_init,
        phi_init,
    ];
    let n = x.len();
    let model = |p: &[f64; 6], xi: f64| {
        let e = p[0] * (-(xi - p[1]) * (xi - p[1]) / (2.0 * p[2] * p[2])).exp();
        let theta = 2.0 * PI * (xi - p[1]) / p[4] + p[5];
        e * (1.0 + p[3] * theta.cos())
    };
    let cost_of = |p: &[f64; 6]| -> f64 {
        x.iter()
            .zip(y)
            .map(|(&xi, &yi)| {
                let r = model(p, xi) - yi;
                r * r
            })
            .sum()
    };
    let mut cost = cost_of(&p);
    let mut lm_lambda = 1e-3;
    let mut converged = false;
    let mut iterations = 0;

    for iter in 0..200 {
        iterations = iter + 1;
        // build normal equations with the analytic Jacobian
        let mut jtj = [[0.0f64; 6]; 6];
        let mut jtr = [0.0f64; 6];
        for (&xi, &yi) in x.iter().zip(y) {
            let dxc = xi - p[1];
            let e = p[0] * (-dxc * dxc / (2.0 * p[2] * p[2])).exp();
            let theta = 2.0 * PI * dxc / p[4] + p[5];
            let (sin_t, cos_t) = theta.sin_cos();
            let m = 1.0 + p[3] * cos_t;
            let f = e * m;
            let r = f - yi;
            let grad = [
                f / p[0],
                e * dxc / (p[2] * p[2]) * m + e * p[3] * sin_t * 2.0 * PI / p[4],
                e * dxc * dxc / (p[2] * p[2] * p[2]) * m,
                e * cos_t,
                e * p[3] * sin_t * 2.0 * PI * dxc / (p[4] * p[4]),
                -e * p[3] * sin_t,
            ];
            for a in 0..6 {
                jtr[a] += grad[a] * r;
                for b in a..6 {
                    jtj[a][b] += grad[a] * grad[b];
                }
            }
        }
        for a in 0..6 {
            for b in 0..a {
                jtj[a][b] = jtj[b][a];
            }
        }

        // damped step, retried with larger damping until the cost drops
        let mut improved = false;
        for _ in 0..30 {
            let mut sys = jtj;
            for (a, row) in sys.iter_mut().enumerate() {
                row[a] += lm_lambda * jtj[a][a].max(1e-30);
            }
            if let Some(step) = solve6(&sys, &jtr) {
                let mut trial = p;
                for a in 0..6 {
                    trial[a] -= step[a];
                }
                trial[2] = trial[2].abs().max(dx * 0.5);
                trial[4] = trial[4].abs().max(dx);
                let trial_cost = cost_of(&trial);
                if trial_cost.is_finite() && trial_cost < cost {
                    let rel_drop = (cost - trial_cost) / cost.max(1e-300);
                    p = trial;
                    cost = trial_cost;
                    lm_lambda = (lm_lambda * 0.3).max(1e-12);
                    improved = true;
                    if rel_drop < 1e-10 {
                        converged = true;
                    }
                    break;
                }
            }
            lm_lambda *= 10.0;
            if lm_lambda > 1e12 {
                break;
            }
        }
        if converged {
            break;
        }
        if !improved {
            // no damping level lowers the cost: the relative cost change is
            // zero, which satisfies the convergence criterion
            converged = true;
            break;
        }
    }

    // canonicalize: C >= 0, phi in (-pi, pi]
    let (mut a, x0, sigma, mut c, lambda_f, mut phi) = (p[0], p[1], p[2], p[3], p[4], p[5]);
    if a < 0.0 {
        a = a.abs(); // degenerate; keep magnitude
    }
    if c < 0.0 {
        c = -c;
        phi += PI;
    }
    phi = crate::twomode::wrap_angle(phi);
    let mut c_clamped = false;
    if c > 1.05 {
        c = 1.05;
        c_clamped = true;
    } else if c > 1.0 {
        c_clamped = true;
    }
    let fit = FringeFit {
        a,
        x0,
        sigma,
        c,
        lambda_f,
        phi,
        residual_rms: (cost / n as f64).sqrt(),
        iterations,
        c_clamped,
    };
    if converged {
        Ok(fit)
    } else {
        Err(FringeError::FitFailure {
            last: Box::new(fit),
        })
    }
}

/// Gaussian elimination with partial pivoting for the 6x6 normal equations.
fn solve6(a: &[[f64; 6]; 6], b: &[f64; 6]) -> Option<[f64; 6]> {
    let mut m = *a;
    let mut rhs = *b;
    for col in 0..6 {
        let mut pivot = col;
        for row in col + 1..6 {
            if m[row][col].abs() > m[pivot][col].abs() {
                pivot = row;
            }
        }
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..6 {
            let f = m[row][col] / m[col][col];
            for k in col..6 {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut xv = [0.0f64; 6];
    for col in (0..6).rev() {
        let mut acc = rhs[col];
        for k in col + 1..6 {
            acc -= m[col][k] * xv[k];
        }
        xv[col] = acc / m[col][col];
    }
    Some(xv)
}

/// Integrated contrast operator of a phase profile over a window of length L
/// centered on the profile: A = n₁d ∫ e^{iφ(z)} dz, C = |A|/(n₁d L), Φ = arg A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratedContrast {
    /// Contrast C(L) ∈ [0, 1].
    pub c: f64,
    /// Integrated phase Φ(L) ∈ (-π, π].
    pub phi: f64,
    /// |A(L)| including the density prefactor.
    pub a_magnitude: f64,
}

pub fn contrast_operator(
    profile: &PhaseProfile,
    l: f64,
    n1d: f64,
) -> Result<IntegratedContrast, FringeError> {
    if profile.z_grid.len() < 2 {
        return Err(FringeError::InvalidParameter(
            "profile needs at least 2 samples".into(),
        ));
    }
    let z_min = profile.z_grid[0];
    let z_max = *profile.z_grid.last().unwrap();
    let center = 0.5 * (z_min + z_max);
    let (lo, hi) = (center - 0.5 * l, center + 0.5 * l);
    if !(l > 0.0) || lo < z_min - 1e-12 * (z_max - z_min) || hi > z_max + 1e-12 * (z_max - z_min) {
        return Err(FringeError::InvalidParameter(format!(
            "window of length {l} does not fit the profile extent [{z_min}, {z_max}]"
        )));
    }
    // trapezoid over the samples inside the window, with the edge segments
    // clipped at the window boundaries (phase interpolated linearly)
    let mut acc = Complex64::new(0.0, 0.0);
    let mut length = 0.0;
    let zs = &profile.z_grid;
    for i in 1..zs.len() {
        let (z0, z1) = (zs[i - 1], zs[i]);
        if z1 <= lo || z0 >= hi {
            continue;
        }
        let (a, b) = (z0.max(lo), z1.min(hi));
        let phase_at = |z: f64| {
            let f = (z - z0) / (z1 - z0);
            profile.phi[i - 1] + f * (profile.phi[i] - profile.phi[i - 1])
        };
        acc += 0.5
            * (b - a)
            * (Complex64::from_polar(1.0, phase_at(a)) + Complex64::from_polar(1.0, phase_at(b)));
        length += b - a;
    }
    if length <= 0.0 {
        return Err(FringeError::InvalidParameter(
            "window contains no samples".into(),
        ));
    }
    Ok(IntegratedContrast {
        c: acc.norm() / length,
        phi: acc.arg(),
        a_magnitude: n1d * acc.norm(),
    })
}

/// Normalized squared-contrast samples α = C²/⟨C²⟩ at integration length L.
#[derive(Debug, Clone, PartialEq)]
pub struct ContrastSamples {
    pub alpha: Vec<f64>,
    /// Integration length the contrasts came from (m).
    pub l: f64,
}

impl ContrastSamples {
    /// Normalize raw contrast values into α = C²/⟨C²⟩.
    pub fn from_contrasts(contrasts: &[f64], l: f64) -> Result<Self, FringeError> {
        if contrasts.is_empty() {
            return Err(FringeError::InvalidParameter("no contrast samples".into()));
        }
        let mean_sq = contrasts.iter().map(|c| c * c).sum::<f64>() / contrasts.len() as f64;
        if mean_sq <= 0.0 {
            return Err(FringeError::InvalidParameter("all contrasts vanish".into()));
        }
        Ok(ContrastSamples {
            alpha: contrasts.iter().map(|c| c * c / mean_sq).collect(),
            l,
        })
    }
}

/// One histogram bin of the FDF, with probability density as height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub density: f64,
}

/// Moments ⟨α^m⟩ for m = 1..m_max and, given at least 100 samples, a
/// Freedman-Diaconis density histogram of the FDF.
pub fn fdf_moments(
    samples: &ContrastSamples,
    m_max: usize,
) -> Result<(Vec<f64>, Option<Vec<HistogramBin>>), FringeError> {
    if samples.alpha.is_empty() {
        return Err(FringeError::InvalidParameter("no contrast samples".into()));
    }
    if m_max == 0 {
        return Err(FringeError::InvalidParameter("m_max must be >= 1".into()));
    }
    let n = samples.alpha.len();
    let moments: Vec<f64> = (1..=m_max)
        .map(|m| samples.alpha.iter().map(|a| a.powi(m as i32)).sum::<f64>() / n as f64)
        .collect();
    if n < 100 {
        return Ok((moments, None));
    }
    let mut sorted = samples.alpha.clone();
    sorted.sort_by(f64::total_cmp);
    let q = |f: f64| sorted[((n - 1) as f64 * f) as usize];
    let iqr = (q(0.75) - q(0.25)).max(1e-12);
    let width = 2.0 * iqr / (n as f64).cbrt();
    let max = sorted[n - 1];
    let n_bins = ((max / width).ceil() as usize).clamp(4, 512);
    let width = max / n_bins as f64;
    let mut counts = vec![0usize; n_bins];
    for &a in &sorted {
        let idx = ((a / width) as usize).min(n_bins - 1);
        counts[idx] += 1;
    }
    let bins = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| HistogramBin {
            lo: i as f64 * width,
            hi: (i + 1) as f64 * width,
            density: c as f64 / (n as f64 * width),
        })
        .collect();
    Ok((moments, Some(bins)))
}

/// Circular standard deviation sqrt(-2 ln |⟨e^{iφ}⟩|); None when the mean
/// resultant vanishes (infinite dispersion).
pub fn circular_std(phases: &[f64]) -> Result<Option<f64>, FringeError> {
    if phases.len() < 2 {
        return Err(FringeError::InvalidParameter(
            "need at least 2 phase samples".into(),
        ));
    }
    let mean: Complex64 = phases
        .iter()
        .map(|&p| Complex64::from_polar(1.0, p))
        .sum::<Complex64>()
        / phases.len() as f64;
    let r = mean.norm().min(1.0);
    if r < 1e-12 {
        return Ok(None);
    }
    Ok(Some((-2.0 * r.ln()).max(0.0).sqrt()))
}

/// Michelson visibility (I_max - I_min)/(I_max + I_min); None when both vanish.
pub fn visibility(i_max: f64, i_min: f64) -> Result<Option<f64>, FringeError> {
    if !(i_min >= 0.0) || i_max < i_min {
        return Err(FringeError::InvalidParameter(format!(
            "need I_max >= I_min >= 0, got I_max = {i_max}, I_min = {i_min}"
        )));
    }
    if i_max == 0.0 {
        return Ok(None);
    }
    Ok(Some((i_max - i_min) / (i_max + i_min)))
}

/// Two-beam interference contrast 2 A₁A₂/(A₁² + A₂²); None when both vanish.
pub fn two_beam_contrast(a1: f64, a2: f64) -> Result<Option<f64>, FringeError> {
    if !(a1 >= 0.0) || !(a2 >= 0.0) {
        return Err(FringeError::InvalidParameter(format!(
            "amplitudes must be >= 0, got {a1}, {a2}"
        )));
    }
    if a1 == 0.0 && a2 == 0.0 {
        return Ok(None);
    }
    Ok(Some(2.0 * a1 * a2 / (a1 * a1 + a2 * a2)))
}
