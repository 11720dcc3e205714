//! Order statistics and extreme-value norming.

use serde::{Deserialize, Serialize};

use super::moments::{ln_binomial, CompensatedSum};
use super::Egl;
use crate::error::{domain, Result};
use crate::specfun::ln_upper_inc_gamma;

/// Affine norming `a_n (X_{n:n} − b_n)` for the sample maximum, with
/// `b_n = G⁻¹(1 − 1/n)` and `a_n = αθλ(1 + λb_n)^{α−1}`.
///
/// `a_n` is the leading term of the hazard at `b_n`, so the normalized
/// maximum converges to the standard Gumbel law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremeNorming {
    pub a_n: f64,
    pub b_n: f64,
    pub n: u64,
}

impl ExtremeNorming {
    pub fn normalize(&self, max: f64) -> f64 {
        self.a_n * (max - self.b_n)
    }
}

fn check_index(i: u32, n: u32) -> Result<()> {
    if i == 0 || i > n {
        Err(domain(format!(
            "order statistic index must satisfy 1 ≤ i ≤ n, got i = {i}, n = {n}"
        )))
    } else {
        Ok(())
    }
}

/// `ln(n! / ((i−1)! (n−i)!))`
fn ln_order_constant(i: u32, n: u32) -> f64 {
    (n as f64).ln() + ln_binomial(n - 1, i - 1)
}

impl Egl {
    /// Density of the `i`-th smallest of `n` observations.
    pub fn order_stat_pdf(&self, i: u32, n: u32, x: f64) -> Result<f64> {
        check_index(i, n)?;
        if x.is_nan() || x < 0.0 {
            return Err(domain(format!("support is x ≥ 0, got {x}")));
        }
        let ln_s = self.ln_survival_unchecked(x);
        let ln_g = self.ln_pdf_unchecked(x);
        let below = if i > 1 {
            let ln_f = (-ln_s.exp_m1()).ln();
            (i - 1) as f64 * ln_f
        } else {
            0.0
        };
        let v = ln_order_constant(i, n) + ln_g + below + (n - i) as f64 * ln_s;
        Ok(if v.is_nan() { 0.0 } else { v.exp() })
    }

    /// `E(X_{i:n}^q)` from the expansion
    ///
    /// ```text
    /// C θ²/λ^q Σ_j Σ_k Σ_l (−1)^{j+q−l} C(i−1,j) C(m,k) C(q,l) θ^k
    ///     · (1+θ)^{−(1+m)} e^{θc} (θc)^{−s} Γ(s, θc)
    /// m = n−i+j,  c = m+1,  s = k + 2 + l/α
    /// ```
    ///
    /// The series alternates; terms are formed in log space and summed with
    /// compensation, which keeps it accurate for moderate `n`.
    pub fn order_stat_moment(&self, i: u32, n: u32, q: u32) -> Result<f64> {
        check_index(i, n)?;
        if q == 0 {
            return Err(domain("moment order must be at least 1"));
        }
        let (l, th, a) = (self.lambda, self.theta, self.alpha);
        let ln_th = th.ln();
        let ln_1p_th = th.ln_1p();
        let mut acc = CompensatedSum::default();
        for j in 0..i {
            let m = n - i + j;
            let c = (m + 1) as f64;
            let lower = th * c;
            let ln_lower = lower.ln();
            let ln_outer = ln_binomial(i - 1, j) - (1.0 + m as f64) * ln_1p_th + lower;
            for k in 0..=m {
                let ln_mid = ln_outer + ln_binomial(m, k) + k as f64 * ln_th;
                for ll in 0..=q {
                    let s = k as f64 + 2.0 + ll as f64 / a;
                    let ln_term =
                        ln_mid + ln_binomial(q, ll) - s * ln_lower + ln_upper_inc_gamma(s, lower)?;
                    let sign = if (j + q - ll).is_multiple_of(2) {
                        1.0
                    } else {
                        -1.0
                    };
                    acc.add(sign * ln_term.exp());
                }
            }
        }
        let ln_scale = ln_order_constant(i, n) + 2.0 * ln_th - q as f64 * l.ln();
        Ok(ln_scale.exp() * acc.value())
    }

    /// Norming constants for the maximum of `n ≥ 2` observations.
    pub fn extreme_norming(&self, n: u64) -> Result<ExtremeNorming> {
        if n < 2 {
            return Err(domain(format!("sample size must be at least 2, got {n}")));
        }
        let b_n = self.inverse_survival(1.0 / n as f64)?;
        let (l, t, a) = (self.lambda, self.theta, self.alpha);
        let a_n = a * t * l * ((a - 1.0) * (l * b_n).ln_1p()).exp();
        Ok(ExtremeNorming { a_n, b_n, n })
    }
}
