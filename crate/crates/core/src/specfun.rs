//! Special functions used by the distribution formulas: the lower branch of
//! the Lambert W function, (log-)gamma and upper incomplete gamma, and the
//! generalized exponential integral `E_ν(z)`.

use std::f64::consts::{E, PI};

use thiserror::Error;

use crate::quadrature::{self, Tolerance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("no convergence after {iterations} iterations: {detail}")]
    NonConvergence { iterations: usize, detail: String },
}

type Result<T> = std::result::Result<T, SpecFunError>;

const INV_E: f64 = 1.0 / E;
const HALLEY_MAX_ITER: usize = 100;
const SERIES_MAX_ITER: usize = 10_000;
const FPMIN: f64 = 1e-300;

// ---------------------------------------------------------------------------
// Lambert W, branch -1
// ---------------------------------------------------------------------------

/// Lower real branch `W₋₁(x)` of the Lambert W function: the solution
/// `w ≤ −1` of `w·eʷ = x` for `x ∈ [−1/e, 0)`.
///
/// The branch point `−1/e` (to within a few ulps) maps to exactly `−1`.
pub fn lambert_w_neg1(x: f64) -> Result<f64> {
    if !x.is_finite() || x >= 0.0 {
        return Err(SpecFunError::Domain(format!(
            "W₋₁ requires −1/e ≤ x < 0, got {x}"
        )));
    }
    let dist = x + INV_E;
    let branch_slack = 4.0 * f64::EPSILON * INV_E;
    if dist < -branch_slack {
        return Err(SpecFunError::Domain(format!(
            "W₋₁ requires −1/e ≤ x < 0, got {x}"
        )));
    }
    if dist <= branch_slack {
        return Ok(-1.0);
    }

    let mut w = if dist < 0.25 {
        // Puiseux series about the branch point.
        let p = -(2.0 * E * dist).sqrt();
        -1.0 + p
            * (1.0
                + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0 + p * 769.0 / 17280.0))))
    } else {
        let l1 = (-x).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1
    };

    let mut prev_step = f64::INFINITY;
    for _ in 0..HALLEY_MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            return Ok(-1.0);
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        // Near the branch point the residual is pure rounding noise once the
        // steps stop shrinking.
        if step.abs() >= prev_step {
            return Ok(w.min(-1.0));
        }
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs() {
            return Ok(w.min(-1.0));
        }
        prev_step = step.abs();
    }
    Err(SpecFunError::NonConvergence {
        iterations: HALLEY_MAX_ITER,
        detail: format!("Halley iteration for W₋₁({x})"),
    })
}

// ---------------------------------------------------------------------------
// Gamma family
// ---------------------------------------------------------------------------

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of `|Γ(x)|` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection formula.
        return (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    ln_gamma(x).exp()
}

/// Which expansion was used; decides how the complement is formed.
enum IncGamma {
    /// Regularized lower `P(s, x)` from the power series.
    Series { p: f64 },
    /// `ln Γ(s, x)` from the continued fraction.
    ContinuedFraction { ln_upper: f64 },
}

fn check_inc_gamma_args(s: f64, x: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(SpecFunError::Domain(format!(
            "incomplete gamma requires s > 0, got {s}"
        )));
    }
    if x.is_nan() || x < 0.0 {
        return Err(SpecFunError::Domain(format!(
            "incomplete gamma requires x ≥ 0, got {x}"
        )));
    }
    Ok(())
}

fn inc_gamma(s: f64, x: f64) -> Result<IncGamma> {
    let ln_prefactor = -x + s * x.ln();
    if x < s + 1.0 {
        let mut term = 1.0 / s;
        let mut sum = term;
        let mut n = 1usize;
        loop {
            term *= x / (s + n as f64);
            sum += term;
            if term.abs() < sum.abs() * f64::EPSILON {
                break;
            }
            n += 1;
            if n > SERIES_MAX_ITER {
                return Err(SpecFunError::NonConvergence {
                    iterations: n,
                    detail: format!("incomplete gamma series at s={s}, x={x}"),
                });
            }
        }
        let p = (ln_prefactor - ln_gamma(s) + sum.ln()).exp();
        Ok(IncGamma::Series { p: p.min(1.0) })
    } else {
        // Modified Lentz evaluation of the continued fraction for Γ(s, x).
        let mut b = x + 1.0 - s;
        let mut c = 1.0 / FPMIN;
        let mut d = 1.0 / b;
        let mut h = d;
        let mut i = 1usize;
        loop {
            let an = -(i as f64) * (i as f64 - s);
            b += 2.0;
            d = an * d + b;
            if d.abs() < FPMIN {
                d = FPMIN;
            }
            c = b + an / c;
            if c.abs() < FPMIN {
                c = FPMIN;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < f64::EPSILON {
                break;
            }
            i += 1;
            if i > SERIES_MAX_ITER {
                return Err(SpecFunError::NonConvergence {
                    iterations: i,
                    detail: format!("incomplete gamma continued fraction at s={s}, x={x}"),
                });
            }
        }
        Ok(IncGamma::ContinuedFraction {
            ln_upper: ln_prefactor + h.ln(),
        })
    }
}

/// Natural log of the upper incomplete gamma function `ln Γ(s, x)`.
///
/// Stays finite where `Γ(s, x)` itself would overflow or underflow.
pub fn ln_upper_inc_gamma(s: f64, x: f64) -> Result<f64> {
    check_inc_gamma_args(s, x)?;
    if x == 0.0 {
        return Ok(ln_gamma(s));
    }
    match inc_gamma(s, x)? {
        IncGamma::Series { p } => Ok(ln_gamma(s) + (-p).ln_1p()),
        IncGamma::ContinuedFraction { ln_upper } => Ok(ln_upper),
    }
}

/// Upper incomplete gamma `Γ(s, x) = ∫ₓ^∞ t^{s−1} e^{−t} dt`.
pub fn upper_inc_gamma(s: f64, x: f64) -> Result<f64> {
    ln_upper_inc_gamma(s, x).map(f64::exp)
}

/// Regularized lower incomplete gamma `P(s, x) = γ(s, x)/Γ(s)`.
pub fn regularized_lower_gamma(s: f64, x: f64) -> Result<f64> {
    check_inc_gamma_args(s, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    match inc_gamma(s, x)? {
        IncGamma::Series { p } => Ok(p),
        IncGamma::ContinuedFraction { ln_upper } => Ok(-(ln_upper - ln_gamma(s)).exp_m1()),
    }
}

/// Regularized upper incomplete gamma `Q(s, x) = Γ(s, x)/Γ(s)`.
pub fn regularized_upper_gamma(s: f64, x: f64) -> Result<f64> {
    check_inc_gamma_args(s, x)?;
    if x == 0.0 {
        return Ok(1.0);
    }
    match inc_gamma(s, x)? {
        IncGamma::Series { p } => Ok(1.0 - p),
        IncGamma::ContinuedFraction { ln_upper } => Ok((ln_upper - ln_gamma(s)).exp()),
    }
}

// ---------------------------------------------------------------------------
// Generalized exponential integral
// ---------------------------------------------------------------------------

/// Natural log of `E_ν(z) = ∫₁^∞ e^{−zt} t^{−ν} dt` for real `ν` and `z > 0`.
///
/// Evaluated by quadrature of `e^{−z} ∫₀^∞ e^{−u} (1 + u/z)^{−ν} du / z`,
/// so the exponential decay factor never has to be formed explicitly.
pub fn ln_exp_integral(nu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(SpecFunError::Domain(format!(
            "exponential integral requires z > 0, got {z}"
        )));
    }
    if !nu.is_finite() {
        return Err(SpecFunError::Domain(format!(
            "exponential integral order must be finite, got {nu}"
        )));
    }
    // Peak of u ↦ −u − ν·ln(1 + u/z); rescale so the integrand is ≤ 1.
    let peak = (-nu - z).max(0.0);
    let ln_peak = -peak - nu * (peak / z).ln_1p();
    let spread = (1.0 + peak).max((-nu).max(0.0).sqrt());
    let integrand = |u: f64| (-u - nu * (u / z).ln_1p() - ln_peak).exp();
    let tol = Tolerance {
        abs: 0.0,
        rel: 1e-13,
        max_subintervals: 1000,
    };
    let r = quadrature::integrate_to_infinity(integrand, 0.0, spread, tol)?;
    Ok(-z - z.ln() + ln_peak + r.value.ln())
}

/// Generalized exponential integral `E_ν(z) = ∫₁^∞ e^{−zt} t^{−ν} dt`.
pub fn exp_integral(nu: f64, z: f64) -> Result<f64> {
    ln_exp_integral(nu, z).map(f64::exp)
}
