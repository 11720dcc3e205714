//! Raw and conditional moments, residual life, and entropies.

use super::Egl;
use crate::error::{domain, Result};
use crate::quadrature::{integrate_to_infinity, Tolerance};
use crate::specfun::{ln_exp_integral, ln_gamma, ln_upper_inc_gamma};

pub(crate) fn ln_binomial(n: u32, k: u32) -> f64 {
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// Neumaier-compensated summation.
#[derive(Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl Egl {
    /// `E(X^k | X > t)` via the incomplete-gamma series
    ///
    /// ```text
    /// θ² / ((1 + θp) λ^k) · Σᵢ C(k,i) (−1)^{k−i} e^{θp} θ^{−sᵢ} Γ(sᵢ, θp),
    /// sᵢ = i/α + 2,  p = (1 + λt)^α
    /// ```
    ///
    /// which at `t = 0` is the raw-moment series.
    fn tail_moment_series(&self, k: u32, t: f64) -> Result<f64> {
        let (l, th, a) = (self.lambda, self.theta, self.alpha);
        let p = (a * (l * t).ln_1p()).exp();
        let lower = th * p;
        let mut acc = CompensatedSum::default();
        for i in 0..=k {
            let s = i as f64 / a + 2.0;
            let ln_term = ln_binomial(k, i) + lower - s * th.ln() + ln_upper_inc_gamma(s, lower)?;
            let sign = if (k - i).is_multiple_of(2) { 1.0 } else { -1.0 };
            acc.add(sign * ln_term.exp());
        }
        let ln_scale = 2.0 * th.ln() - lower.ln_1p() - k as f64 * l.ln();
        Ok(ln_scale.exp() * acc.value())
    }

    /// `E(X^k)` for `k ≥ 1`.
    pub fn raw_moment(&self, k: u32) -> Result<f64> {
        if k == 0 {
            return Err(domain("moment order must be at least 1"));
        }
        self.tail_moment_series(k, 0.0)
    }

    pub fn mean(&self) -> f64 {
        self.raw_moment(1).expect("first moment is always finite")
    }

    pub fn variance(&self) -> f64 {
        let m1 = self.mean();
        let m2 = self.raw_moment(2).expect("second moment is always finite");
        m2 - m1 * m1
    }

    /// `E(X^k | X > t)`, the k-th moment of the lifetime given survival to
    /// age `t`.
    pub fn conditional_moment(&self, k: u32, t: f64) -> Result<f64> {
        if k == 0 {
            return Err(domain("moment order must be at least 1"));
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(domain(format!(
                "conditioning age must be finite and ≥ 0, got {t}"
            )));
        }
        if self.ln_survival_unchecked(t).exp() == 0.0 {
            return Err(domain(format!(
                "survival probability underflows at t = {t}"
            )));
        }
        self.tail_moment_series(k, t)
    }

    /// Mean residual life `E(X | X > t) − t`.
    pub fn mean_residual_life(&self, t: f64) -> Result<f64> {
        Ok((self.conditional_moment(1, t)? - t).max(0.0))
    }

    /// Rényi entropy of order `ζ` (`ζ > 0`, `ζ ≠ 1`) through the
    /// generalized exponential integral:
    ///
    /// ```text
    /// (1/(1−ζ)) · ln[(αλ)^{ζ−1} θ^{2ζ} e^{θζ} (1+θ)^{−ζ} E_ν(ζθ)],
    /// ν = (−2ζα + α + ζ − 1)/α
    /// ```
    pub fn renyi_entropy(&self, zeta: f64) -> Result<f64> {
        if !(zeta > 0.0 && zeta.is_finite()) || zeta == 1.0 {
            return Err(domain(format!(
                "Rényi order must be positive and ≠ 1, got {zeta}"
            )));
        }
        let (l, t, a) = (self.lambda, self.theta, self.alpha);
        let nu = (-2.0 * zeta * a + a + zeta - 1.0) / a;
        let ln_integral = (zeta - 1.0) * (a * l).ln() + 2.0 * zeta * t.ln() + t * zeta
            - zeta * t.ln_1p()
            + ln_exp_integral(nu, zeta * t)?;
        Ok(ln_integral / (1.0 - zeta))
    }

    /// Shannon entropy `−∫ g ln g` by adaptive quadrature.
    pub fn shannon_entropy(&self) -> Result<f64> {
        let integrand = |x: f64| {
            let lg = self.ln_pdf_unchecked(x);
            let g = lg.exp();
            if g == 0.0 {
                0.0
            } else {
                -g * lg
            }
        };
        let r = integrate_to_infinity(
            integrand,
            0.0,
            self.integration_scale(),
            Tolerance::new(1e-13, 1e-12),
        )?;
        Ok(r.value)
    }
}
