//! EGL log-likelihood, score and information, plus a generic numerical
//! Hessian for the other families.

use crate::egl::{Egl, EglParams};
use crate::error::Result;
use crate::quadrature::{integrate_to_infinity, Tolerance};

/// Closed-form EGL log-likelihood
///
/// ```text
/// n ln(αλθ²/(1+θ)) + Σ [(2α−1) ln zᵢ + θ(1 − zᵢ^α)],  zᵢ = 1 + λxᵢ
/// ```
///
/// Returns `−∞` for parameters outside the open positive orthant.
pub fn loglik_egl(p: &EglParams, data: &[f64]) -> f64 {
    let (l, t, a) = (p.lambda, p.theta, p.alpha);
    if !(l > 0.0 && t > 0.0 && a > 0.0 && l.is_finite() && t.is_finite() && a.is_finite()) {
        return f64::NEG_INFINITY;
    }
    let n = data.len() as f64;
    let constant = n * (a.ln() + l.ln() + 2.0 * t.ln() - t.ln_1p());
    let body: f64 = data
        .iter()
        .map(|&x| {
            let lz = (l * x).ln_1p();
            (2.0 * a - 1.0) * lz - t * (a * lz).exp_m1()
        })
        .sum();
    constant + body
}

/// Score vector `(∂/∂λ, ∂/∂θ, ∂/∂α)` of the EGL log-likelihood.
pub fn score_egl(p: &EglParams, data: &[f64]) -> [f64; 3] {
    let (l, t, a) = (p.lambda, p.theta, p.alpha);
    let n = data.len() as f64;
    let mut g = [n / l, 2.0 * n / t - n / (1.0 + t), n / a];
    for &x in data {
        let z = 1.0 + l * x;
        let lz = (l * x).ln_1p();
        let za = (a * lz).exp();
        g[0] += (2.0 * a - 1.0) * x / z - t * a * x * za / z;
        g[1] -= (a * lz).exp_m1();
        g[2] += 2.0 * lz - t * za * lz;
    }
    g
}

/// Second derivatives of `ln g(x)` for one observation, order `(λ, θ, α)`.
fn hessian_term(p: &EglParams, x: f64) -> [[f64; 3]; 3] {
    let (l, t, a) = (p.lambda, p.theta, p.alpha);
    let z = 1.0 + l * x;
    let lz = (l * x).ln_1p();
    let za = (a * lz).exp();
    let xz = x / z;
    let ll = -1.0 / (l * l) - (2.0 * a - 1.0) * xz * xz - t * a * (a - 1.0) * xz * xz * za;
    let tt = -2.0 / (t * t) + 1.0 / ((1.0 + t) * (1.0 + t));
    let aa = -1.0 / (a * a) - t * za * lz * lz;
    let lt = -a * xz * za;
    let la = 2.0 * xz - t * xz * za * (1.0 + a * lz);
    let ta = -za * lz;
    [[ll, lt, la], [lt, tt, ta], [la, ta, aa]]
}

/// Hessian of the EGL log-likelihood over the data.
pub fn hessian_egl(p: &EglParams, data: &[f64]) -> [[f64; 3]; 3] {
    let mut h = [[0.0; 3]; 3];
    for &x in data {
        let term = hessian_term(p, x);
        for r in 0..3 {
            for c in 0..3 {
                h[r][c] += term[r][c];
            }
        }
    }
    h
}

/// Which information matrix to form.
#[derive(Debug, Clone, Copy)]
pub enum FisherMode<'a> {
    /// Negative Hessian of the log-likelihood at the given data.
    Observed(&'a [f64]),
    /// `n` times the per-observation expected information, with
    /// expectations taken by quadrature against the EGL density.
    Expected { n: usize },
}

/// Fisher information matrix in parameter order `(λ, θ, α)`.
#[allow(clippy::needless_range_loop)]
pub fn fisher_information(p: &EglParams, mode: FisherMode<'_>) -> Result<[[f64; 3]; 3]> {
    match mode {
        FisherMode::Observed(data) => {
            let h = hessian_egl(p, data);
            Ok(h.map(|row| row.map(|v| -v)))
        }
        FisherMode::Expected { n } => {
            let d = Egl::from(*p);
            let scale = d.integration_scale();
            let mut info = [[0.0; 3]; 3];
            for r in 0..3 {
                for c in r..3 {
                    let integrand = |x: f64| {
                        let g = d.pdf_unchecked(x);
                        if g == 0.0 {
                            0.0
                        } else {
                            hessian_term(p, x)[r][c] * g
                        }
                    };
                    let e =
                        integrate_to_infinity(integrand, 0.0, scale, Tolerance::new(1e-12, 1e-10))?
                            .value;
                    info[r][c] = -(n as f64) * e;
                    info[c][r] = info[r][c];
                }
            }
            Ok(info)
        }
    }
}

/// Central-difference Hessian of `f` at `x` with steps `rel·|xᵢ|`.
pub(crate) fn numerical_hessian<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], rel: f64) -> Vec<Vec<f64>> {
    let d = x.len();
    let h: Vec<f64> = x.iter().map(|v| rel * v.abs().max(1e-8)).collect();
    let f0 = f(x);
    let eval = |moves: &[(usize, f64)]| {
        let mut y = x.to_vec();
        for &(i, s) in moves {
            y[i] += s * h[i];
        }
        f(&y)
    };
    let mut out = vec![vec![0.0; d]; d];
    for i in 0..d {
        out[i][i] = (eval(&[(i, 1.0)]) - 2.0 * f0 + eval(&[(i, -1.0)])) / (h[i] * h[i]);
        for j in 0..i {
            let v = (eval(&[(i, 1.0), (j, 1.0)])
                - eval(&[(i, 1.0), (j, -1.0)])
                - eval(&[(i, -1.0), (j, 1.0)])
                + eval(&[(i, -1.0), (j, -1.0)]))
                / (4.0 * h[i] * h[j]);
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    out
}

/// Central-difference gradient of `f` at `x` with steps `rel·|xᵢ|`.
pub(crate) fn numerical_gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], rel: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let h = rel * x[i].abs().max(1e-8);
            let mut up = x.to_vec();
            let mut down = x.to_vec();
            up[i] += h;
            down[i] -= h;
            (f(&up) - f(&down)) / (2.0 * h)
        })
        .collect()
}
