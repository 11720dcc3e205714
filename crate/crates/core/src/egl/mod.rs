//! The Extended Generalized Lindley distribution `EGL(λ, θ, α)`.
//!
//! With `p = (1 + λx)^α` the survival function is
//!
//! ```text
//! S(x) = e^{θ(1 − p)} (1 + θp) / (1 + θ),   x ≥ 0
//! ```
//!
//! and `Y = (1 + λX)^α − 1` is Lindley(θ) distributed. λ is a pure rate
//! parameter: `EGL(cλ, θ, α)` is the law of `X / c`.

mod moments;
mod order_stats;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use order_stats::ExtremeNorming;

use crate::competitors::lindley_variate;
use crate::error::{domain, Result};
use crate::specfun::lambert_w_neg1;

/// Parameter triple of the distribution. All components are strictly
/// positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EglParams {
    pub lambda: f64,
    pub theta: f64,
    pub alpha: f64,
}

impl EglParams {
    pub fn new(lambda: f64, theta: f64, alpha: f64) -> Result<Self> {
        for (name, v) in [("lambda", lambda), ("theta", theta), ("alpha", alpha)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(EglParams {
            lambda,
            theta,
            alpha,
        })
    }

    /// Parameters as `[λ, θ, α]`.
    pub fn to_array(self) -> [f64; 3] {
        [self.lambda, self.theta, self.alpha]
    }

    pub fn from_slice(p: &[f64]) -> Result<Self> {
        match p {
            [l, t, a] => EglParams::new(*l, *t, *a),
            _ => Err(domain(format!("EGL takes 3 parameters, got {}", p.len()))),
        }
    }
}

/// Shape of the hazard rate function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HazardShape {
    Decreasing,
    UpsideDown,
    Increasing,
}

/// Location of the density maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    /// Unimodal with the peak at an interior point.
    Interior(f64),
    /// Density is non-increasing; the supremum is at `x = 0`.
    AtZero,
}

impl Mode {
    pub fn location(self) -> f64 {
        match self {
            Mode::Interior(x) => x,
            Mode::AtZero => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SampleMethod {
    /// Quantile function applied to uniform draws.
    InverseTransform,
    /// Lindley(θ) draw pushed through `x = ((1 + y)^{1/α} − 1)/λ`.
    LindleyTransform,
}

/// An EGL distribution. Immutable; all evaluation is pure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Egl {
    lambda: f64,
    theta: f64,
    alpha: f64,
}

impl From<EglParams> for Egl {
    fn from(p: EglParams) -> Self {
        Egl {
            lambda: p.lambda,
            theta: p.theta,
            alpha: p.alpha,
        }
    }
}

fn check_support(x: f64) -> Result<()> {
    if x >= 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(domain(format!("support is x ≥ 0, got {x}")))
    }
}

impl Egl {
    pub fn new(lambda: f64, theta: f64, alpha: f64) -> Result<Self> {
        EglParams::new(lambda, theta, alpha).map(Egl::from)
    }

    pub fn params(&self) -> EglParams {
        EglParams {
            lambda: self.lambda,
            theta: self.theta,
            alpha: self.alpha,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `ln(1 + λx)`
    #[inline]
    fn log_z(&self, x: f64) -> f64 {
        (self.lambda * x).ln_1p()
    }

    /// Log-density for `x ≥ 0`, without argument checks.
    #[inline]
    pub(crate) fn ln_pdf_unchecked(&self, x: f64) -> f64 {
        let (l, t, a) = (self.lambda, self.theta, self.alpha);
        let lz = self.log_z(x);
        (a * t * t * l / (1.0 + t)).ln() + (2.0 * a - 1.0) * lz - t * (a * lz).exp_m1()
    }

    #[inline]
    pub(crate) fn pdf_unchecked(&self, x: f64) -> f64 {
        self.ln_pdf_unchecked(x).exp()
    }

    #[inline]
    pub(crate) fn ln_survival_unchecked(&self, x: f64) -> f64 {
        let t = self.theta;
        let alz = self.alpha * self.log_z(x);
        -t * alz.exp_m1() + (t * alz.exp()).ln_1p() - t.ln_1p()
    }

    #[inline]
    pub(crate) fn cdf_unchecked(&self, x: f64) -> f64 {
        -self.ln_survival_unchecked(x).exp_m1()
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_support(x)?;
        Ok(self.pdf_unchecked(x))
    }

    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        check_support(x)?;
        Ok(self.ln_pdf_unchecked(x))
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_support(x)?;
        Ok(self.cdf_unchecked(x))
    }

    /// Survival function, evaluated from its closed form so that the upper
    /// tail keeps full relative precision.
    pub fn survival(&self, x: f64) -> Result<f64> {
        check_support(x)?;
        Ok(self.ln_survival_unchecked(x).exp())
    }

    pub fn hazard(&self, x: f64) -> Result<f64> {
        check_support(x)?;
        let (l, t, a) = (self.lambda, self.theta, self.alpha);
        let lz = self.log_z(x);
        Ok(((a * t * t * l).ln() + (2.0 * a - 1.0) * lz - (t * (a * lz).exp()).ln_1p()).exp())
    }

    /// Classifies the hazard rate from the sign of
    /// `u(0) = 2α − 1 + α(α − 1)θ`.
    ///
    /// The boundary `θ = (2α − 1)/(α(1 − α))` is decreasing, and `α = 1`
    /// (hazard rising to the limit `λθ`) is increasing.
    pub fn hazard_shape(&self) -> HazardShape {
        let (t, a) = (self.theta, self.alpha);
        if a >= 1.0 {
            HazardShape::Increasing
        } else if a <= 0.5 || t >= (2.0 * a - 1.0) / (a * (1.0 - a)) {
            HazardShape::Decreasing
        } else {
            HazardShape::UpsideDown
        }
    }

    /// Mode of the density. Interior exactly when `0 < θ < 2` and
    /// `α > 1/(2 − θ)`, at `x₀ = (((2α − 1)/(αθ))^{1/α} − 1)/λ`.
    pub fn mode(&self) -> Mode {
        let (l, t, a) = (self.lambda, self.theta, self.alpha);
        let ratio = (2.0 * a - 1.0) / (a * t);
        if t < 2.0 && ratio > 1.0 {
            Mode::Interior((ratio.ln() / a).exp_m1() / l)
        } else {
            Mode::AtZero
        }
    }

    /// Solves `S(x) = q` through the lower Lambert branch.
    fn invert_survival(&self, q: f64) -> Result<f64> {
        let (l, t, a) = (self.lambda, self.theta, self.alpha);
        let arg = -q * (1.0 + t) * (-(1.0 + t)).exp();
        let w = lambert_w_neg1(arg)?;
        // p = (1 + λx)^α = −(1 + W)/θ
        let p = -(1.0 + w) / t;
        if p <= 1.0 {
            return Ok(0.0);
        }
        Ok(((p.ln() / a).exp_m1() / l).max(0.0))
    }

    /// Quantile function `G⁻¹(γ)` for `γ ∈ [0, 1)`.
    pub fn quantile(&self, gamma: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&gamma) {
            return Err(domain(format!(
                "quantile level must lie in [0, 1), got {gamma}"
            )));
        }
        if gamma == 0.0 {
            return Ok(0.0);
        }
        self.invert_survival(1.0 - gamma)
    }

    /// Inverse of the survival function for `q ∈ (0, 1]`; exact in the
    /// far upper tail where `1 − γ` would round.
    pub fn inverse_survival(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(domain(format!(
                "survival level must lie in (0, 1], got {q}"
            )));
        }
        if q == 1.0 {
            return Ok(0.0);
        }
        self.invert_survival(q)
    }

    pub fn median(&self) -> f64 {
        self.invert_survival(0.5)
            .expect("0.5 is always inside the Lambert W domain")
    }

    /// Draws `n` variates. Deterministic in `(seed, method)`.
    pub fn sample(&self, n: usize, seed: u64, method: SampleMethod) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(domain("sample size must be at least 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, n, method)
    }

    /// Draws `n` variates from a caller-owned generator.
    pub fn sample_with<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        n: usize,
        method: SampleMethod,
    ) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(n);
        match method {
            SampleMethod::InverseTransform => {
                for _ in 0..n {
                    let u: f64 = rng.random();
                    out.push(self.quantile(u)?);
                }
            }
            SampleMethod::LindleyTransform => {
                for _ in 0..n {
                    let y = lindley_variate(rng, self.theta);
                    out.push((y.ln_1p() / self.alpha).exp_m1() / self.lambda);
                }
            }
        }
        Ok(out)
    }

    /// Spread used to map semi-infinite integrals onto the unit interval.
    pub(crate) fn integration_scale(&self) -> f64 {
        let m = self.median();
        if m > 0.0 && m.is_finite() {
            m
        } else {
            1.0 / self.lambda
        }
    }
}
