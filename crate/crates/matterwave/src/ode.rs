//! Adaptive embedded Runge-Kutta integration (Dormand-Prince 5(4)) with
//! PI step-size control, for the small smooth systems used in this crate.

/// Signals raised by the right-hand side or the controller.
#[derive(Debug, Clone, PartialEq)]
pub enum OdeError {
    /// The right-hand side reported a state outside its domain.
    DomainViolation {
        t: f64,
        message: String,
    },
    /// The controller shrank the step below machine resolution.
    StepUnderflow {
        t: f64,
    },
    InvalidParameter(String),
}

impl std::fmt::Display for OdeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OdeError::DomainViolation { t, message } => {
                write!(f, "ODE domain violation at t = {t}: {message}")
            }
            OdeError::StepUnderflow { t } => write!(f, "ODE step size underflow at t = {t}"),
            OdeError::InvalidParameter(msg) => write!(f, "invalid ODE parameter: {msg}"),
        }
    }
}

impl std::error::Error for OdeError {}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// 5th-order solution weights equal the last row of A (FSAL scheme).
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One accepted integration step as reported to the observer callback.
pub struct Step<'a> {
    pub t: f64,
    pub y: &'a [f64],
}

/// Integrate dy/dt = f(t, y) from t0 to t_end with relative tolerance `rtol`
/// and absolute tolerance `atol`, calling `observe` after every accepted step.
///
/// `f` returns Err to signal that the state left its domain; integration then
/// stops with [`OdeError::DomainViolation`] and the caller keeps whatever the
/// observer has collected so far.
pub fn integrate_adaptive<F, O>(
    mut f: F,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    rtol: f64,
    atol: f64,
    mut observe: O,
) -> Result<Vec<f64>, OdeError>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<(), String>,
    O: FnMut(Step<'_>),
{
    if !(rtol > 0.0) || !(atol > 0.0) {
        return Err(OdeError::InvalidParameter(format!(
            "tolerances must be positive, got rtol = {rtol}, atol = {atol}"
        )));
    }
    if t_end < t0 {
        return Err(OdeError::InvalidParameter("t_end must be >= t0".into()));
    }
    let dim = y0.len();
    let mut y = y0.to_vec();
    let mut t = t0;
    observe(Step { t, y: &y });
    if t_end == t0 {
        return Ok(y);
    }

    let mut k: Vec<Vec<f64>> = vec![vec![0.0; dim]; 7];
    let mut y_stage = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];

    f(t, &y, &mut k[0]).map_err(|message| OdeError::DomainViolation { t, message })?;

    // initial step heuristic: ratio of scaled state to scaled derivative,
    // falling back to a small fraction of the span near zero states
    let span_t = t_end - t0;
    let scale_of = |y: &[f64], i: usize| atol + rtol * y[i].abs();
    let d0 = rms(&y, |i| y[i] / scale_of(&y, i));
    let d1 = rms(&k[0], |i| k[0][i] / scale_of(&y, i));
    let mut h = if d0 >= 1e-5 && d1 >= 1e-5 {
        0.01 * d0 / d1
    } else {
        1e-6 * span_t
    };
    h = h.clamp(f64::MIN_POSITIVE, span_t);

    // PI controller constants (order 5)
    let (alpha, beta, safety) = (0.17, 0.04, 0.9);
    let mut err_old: f64 = 1e-4;
    let mut rejected = false;
    let mut last_domain_failure: Option<String> = None;

    loop {
        if t >= t_end {
            return Ok(y);
        }
        h = h.min(t_end - t);
        if h < f64::EPSILON * t.abs().max(1.0) {
            // a step pinned at zero by repeated domain rejections is a
            // domain violation, not a tolerance problem
            return Err(match last_domain_failure {
                Some(message) => OdeError::DomainViolation { t, message },
                None => OdeError::StepUnderflow { t },
            });
        }

        // stages 2..7
        let mut failed_domain: Option<String> = None;
        for s in 0..6 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    acc += A[s][j] * kj[i];
                }
                y_stage[i] = y[i] + h * acc;
            }
            if let Err(msg) = f(t + C[s] * h, &y_stage, &mut k[s + 1]) {
                failed_domain = Some(msg);
                break;
            }
        }
        if let Some(message) = failed_domain {
            // a stage left the domain: retry with a smaller step, or give up
            if h <= 16.0 * f64::EPSILON * t.abs().max(1.0) {
                return Err(OdeError::DomainViolation { t, message });
            }
            last_domain_failure = Some(message);
            h *= 0.25;
            rejected = true;
            continue;
        }
        // 5th-order solution is stage 7's state (FSAL): y_stage holds it
        y_new.copy_from_slice(&y_stage);

        // embedded error estimate
        let mut err_sq = 0.0;
        for i in 0..dim {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= h;
            let sc = atol + rtol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / sc) * (e / sc);
        }
        let err = (err_sq / dim as f64).sqrt();

        if err <= 1.0 {
            t += h;
            y.copy_from_slice(&y_new);
            k.swap(0, 6); // FSAL: last stage becomes first of the next step
            last_domain_failure = None;
            observe(Step { t, y: &y });
            let fac = safety * err.max(1e-12).powf(-alpha) * err_old.powf(beta);
            let fac = fac.clamp(0.2, if rejected { 1.0 } else { 5.0 });
            h *= fac;
            err_old = err.max(1e-12);
            rejected = false;
        } else {
            let fac = (safety * err.powf(-alpha)).clamp(0.2, 1.0);
            h *= fac;
            rejected = true;
        }
    }
}

fn rms(v: &[f64], f: impl Fn(usize) -> f64) -> f64 {
    (v.iter().enumerate().map(|(i, _)| f(i) * f(i)).sum::<f64>() / v.len() as f64).sqrt()
}
