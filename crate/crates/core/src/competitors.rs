//! The six model families used for comparison fits: EGL itself and five
//! classical lifetime laws.
//!
//! Parameter order inside a [`ModelSpec`]:
//!
//! | family                | params        |
//! |-----------------------|---------------|
//! | `Egl`                 | `[λ, θ, α]`   |
//! | `LindleyExponential`  | `[θ, λ]`      |
//! | `PowerLindley`        | `[α, β]`      |
//! | `Ngld`                | `[α, β, θ]`   |
//! | `Lindley`             | `[θ]`         |
//! | `Exponential`         | `[θ]` (rate)  |

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use serde::{Deserialize, Serialize};

use crate::egl::{Egl, SampleMethod};
use crate::error::{domain, Error, Result};
use crate::specfun::{ln_gamma, regularized_lower_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Egl,
    LindleyExponential,
    PowerLindley,
    Ngld,
    Lindley,
    Exponential,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Egl,
        Family::LindleyExponential,
        Family::PowerLindley,
        Family::Ngld,
        Family::Lindley,
        Family::Exponential,
    ];

    pub fn arity(self) -> usize {
        match self {
            Family::Egl | Family::Ngld => 3,
            Family::LindleyExponential | Family::PowerLindley => 2,
            Family::Lindley | Family::Exponential => 1,
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Egl => &["lambda", "theta", "alpha"],
            Family::LindleyExponential => &["theta", "lambda"],
            Family::PowerLindley => &["alpha", "beta"],
            Family::Ngld => &["alpha", "beta", "theta"],
            Family::Lindley | Family::Exponential => &["theta"],
        }
    }

    /// Short label used in comparison tables.
    pub fn label(self) -> &'static str {
        match self {
            Family::Egl => "EGL",
            Family::LindleyExponential => "L-E",
            Family::PowerLindley => "PL",
            Family::Ngld => "NGLD",
            Family::Lindley => "L",
            Family::Exponential => "E",
        }
    }

    /// Command-line tag; round-trips through [`FromStr`].
    pub fn tag(self) -> &'static str {
        match self {
            Family::Egl => "egl",
            Family::LindleyExponential => "le",
            Family::PowerLindley => "pl",
            Family::Ngld => "ngld",
            Family::Lindley => "lindley",
            Family::Exponential => "exponential",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace(['_', ' '], "-");
        Ok(match t.as_str() {
            "egl" => Family::Egl,
            "le" | "l-e" | "lindley-exponential" => Family::LindleyExponential,
            "pl" | "power-lindley" => Family::PowerLindley,
            "ngld" | "new-generalized-lindley" => Family::Ngld,
            "l" | "lindley" => Family::Lindley,
            "e" | "exp" | "exponential" => Family::Exponential,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        })
    }
}

/// A family together with a valid parameter vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModelSpec")]
pub struct ModelSpec {
    family: Family,
    params: Vec<f64>,
}

#[derive(Deserialize)]
struct RawModelSpec {
    family: Family,
    params: Vec<f64>,
}

impl TryFrom<RawModelSpec> for ModelSpec {
    type Error = Error;

    fn try_from(r: RawModelSpec) -> Result<Self> {
        ModelSpec::new(r.family, r.params)
    }
}

/// `a · ln x` with the convention `0 · ln 0 = 0`.
fn xlogy(a: f64, x: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * x.ln()
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::INFINITY {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// One Lindley(θ) variate: Exp(θ) with probability θ/(1+θ), otherwise
/// Gamma(2, θ) as the sum of two exponentials.
pub fn lindley_variate<R: Rng + ?Sized>(rng: &mut R, theta: f64) -> f64 {
    let u: f64 = rng.random();
    let e1: f64 = Exp1.sample(rng);
    if u < theta / (1.0 + theta) {
        e1 / theta
    } else {
        let e2: f64 = Exp1.sample(rng);
        (e1 + e2) / theta
    }
}

impl ModelSpec {
    pub fn new(family: Family, params: Vec<f64>) -> Result<Self> {
        if params.len() != family.arity() {
            return Err(domain(format!(
                "{} takes {} parameter(s), got {}",
                family.label(),
                family.arity(),
                params.len()
            )));
        }
        for (name, &v) in family.param_names().iter().zip(&params) {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!(
                    "{} parameter {name} must be positive and finite, got {v}",
                    family.label()
                )));
            }
        }
        Ok(ModelSpec { family, params })
    }

    pub fn egl(d: &Egl) -> Self {
        ModelSpec {
            family: Family::Egl,
            params: d.params().to_array().to_vec(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    fn as_egl(&self) -> Egl {
        Egl::new(self.params[0], self.params[1], self.params[2])
            .expect("parameters validated at construction")
    }

    /// Log-density; `+∞` where a shape below one makes the density unbounded
    /// at the origin.
    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(domain(format!("support is x ≥ 0, got {x}")));
        }
        Ok(self.ln_pdf_unchecked(x))
    }

    pub(crate) fn ln_pdf_unchecked(&self, x: f64) -> f64 {
        let p = &self.params;
        match self.family {
            Family::Egl => self.as_egl().ln_pdf_unchecked(x),
            Family::LindleyExponential => {
                let (t, l) = (p[0], p[1]);
                if x == 0.0 {
                    // u^{θ−1}(1 − ln u) as u → 0⁺
                    return if t > 1.0 {
                        f64::NEG_INFINITY
                    } else {
                        f64::INFINITY
                    };
                }
                let ln_u = (-(-l * x).exp_m1()).ln();
                2.0 * t.ln() + l.ln() - l * x + (t - 1.0) * ln_u + (-ln_u).ln_1p() - t.ln_1p()
            }
            Family::PowerLindley => {
                let (a, b) = (p[0], p[1]);
                let xa = x.powf(a);
                a.ln() + 2.0 * b.ln() - b.ln_1p() + xa.ln_1p() + xlogy(a - 1.0, x) - b * xa
            }
            Family::Ngld => {
                let (a, b, t) = (p[0], p[1], p[2]);
                let first = (a + 1.0) * t.ln() + xlogy(a - 1.0, x) - ln_gamma(a);
                let second = b * t.ln() + xlogy(b - 1.0, x) - ln_gamma(b);
                -t * x - t.ln_1p() + log_add_exp(first, second)
            }
            Family::Lindley => {
                let t = p[0];
                2.0 * t.ln() - t.ln_1p() + x.ln_1p() - t * x
            }
            Family::Exponential => p[0].ln() - p[0] * x,
        }
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.ln_pdf(x).map(f64::exp)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(domain(format!("support is x ≥ 0, got {x}")));
        }
        let p = &self.params;
        Ok(match self.family {
            Family::Egl => self.as_egl().cdf_unchecked(x),
            Family::LindleyExponential => {
                let (t, l) = (p[0], p[1]);
                if x == 0.0 {
                    return Ok(0.0);
                }
                // u^θ (1 + θ − θ ln u)/(1 + θ), u = 1 − e^{−λx}
                let ln_u = (-(-l * x).exp_m1()).ln();
                ((t * ln_u).exp() * (1.0 + t - t * ln_u) / (1.0 + t)).min(1.0)
            }
            Family::PowerLindley => {
                let (a, b) = (p[0], p[1]);
                let bxa = b * x.powf(a);
                let s = (-bxa).exp() * (1.0 + b + bxa) / (1.0 + b);
                1.0 - s
            }
            Family::Ngld => {
                let (a, b, t) = (p[0], p[1], p[2]);
                (t * regularized_lower_gamma(a, t * x)? + regularized_lower_gamma(b, t * x)?)
                    / (1.0 + t)
            }
            Family::Lindley => {
                let t = p[0];
                -((-t * x).exp_m1() * (1.0 + t) + t * x * (-t * x).exp()) / (1.0 + t)
            }
            Family::Exponential => -(-p[0] * x).exp_m1(),
        })
    }

    /// `Σ ln f(xᵢ)` over the data; values are assumed validated.
    pub fn loglik(&self, data: &[f64]) -> f64 {
        if self.family == Family::Egl {
            return crate::estimation::loglik_egl(&self.as_egl().params(), data);
        }
        data.iter().map(|&x| self.ln_pdf_unchecked(x)).sum()
    }

    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(domain("sample size must be at least 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, n)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Result<Vec<f64>> {
        let p = &self.params;
        let out = match self.family {
            Family::Egl => {
                return self
                    .as_egl()
                    .sample_with(rng, n, SampleMethod::InverseTransform)
            }
            Family::LindleyExponential => {
                let (t, l) = (p[0], p[1]);
                (0..n)
                    .map(|_| {
                        let v = lindley_variate(rng, t);
                        -(-(-v).exp_m1()).ln() / l
                    })
                    .collect()
            }
            Family::PowerLindley => {
                let (a, b) = (p[0], p[1]);
                (0..n)
                    .map(|_| lindley_variate(rng, b).powf(1.0 / a))
                    .collect()
            }
            Family::Ngld => {
                let (a, b, t) = (p[0], p[1], p[2]);
                let ga = Gamma::new(a, 1.0 / t).map_err(|e| domain(e.to_string()))?;
                let gb = Gamma::new(b, 1.0 / t).map_err(|e| domain(e.to_string()))?;
                let w = t / (1.0 + t);
                (0..n)
                    .map(|_| {
                        let u: f64 = rng.random();
                        if u < w {
                            ga.sample(rng)
                        } else {
                            gb.sample(rng)
                        }
                    })
                    .collect()
            }
            Family::Lindley => (0..n).map(|_| lindley_variate(rng, p[0])).collect(),
            Family::Exponential => (0..n)
                .map(|_| {
                    let e: f64 = Exp1.sample(rng);
                    e / p[0]
                })
                .collect(),
        };
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, p: &[f64]) -> ModelSpec {
        ModelSpec::new(f, p.to_vec()).unwrap()
    }

    #[test]
    fn arity_is_enforced() {
        assert!(ModelSpec::new(Family::Egl, vec![1.0, 1.0]).is_err());
        assert!(ModelSpec::new(Family::Lindley, vec![-1.0]).is_err());
        assert!(ModelSpec::new(Family::Ngld, vec![1.0, f64::NAN, 1.0]).is_err());
        let bad: std::result::Result<ModelSpec, _> =
            serde_json::from_str(r#"{"family":"lindley","params":[1.0,2.0]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn tags_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
            assert_eq!(f.param_names().len(), f.arity());
        }
        assert_eq!("L-E".parse::<Family>().unwrap(), Family::LindleyExponential);
        assert!(matches!(
            "weibull".parse::<Family>(),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn densities_at_origin() {
        assert!((spec(Family::Lindley, &[1.0]).pdf(0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((spec(Family::Exponential, &[0.101]).pdf(0.0).unwrap() - 0.101).abs() < 1e-15);
        assert_eq!(
            spec(Family::PowerLindley, &[0.5, 1.0]).pdf(0.0).unwrap(),
            f64::INFINITY
        );
        let pl1 = spec(Family::PowerLindley, &[1.0, 2.0]).pdf(0.0).unwrap();
        assert!((pl1 - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn ngld_unit_shapes_are_lindley_type() {
        let t = 0.7;
        let m = spec(Family::Ngld, &[1.0, 1.0, t]);
        for x in [0.0, 0.5, 3.0] {
            let expected = (-t * x).exp() / (1.0 + t) * (t * t + t);
            assert!((m.pdf(x).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn power_lindley_unit_power_is_lindley() {
        let pl = spec(Family::PowerLindley, &[1.0, 0.8]);
        let l = spec(Family::Lindley, &[0.8]);
        for x in [0.1, 1.0, 7.0] {
            assert!((pl.pdf(x).unwrap() - l.pdf(x).unwrap()).abs() < 1e-12);
            assert!((pl.cdf(x).unwrap() - l.cdf(x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn cdf_limits() {
        let models = [
            spec(Family::LindleyExponential, &[1.2, 0.1]),
            spec(Family::PowerLindley, &[0.7, 0.4]),
            spec(Family::Ngld, &[2.0, 0.5, 0.3]),
            spec(Family::Lindley, &[0.2]),
            spec(Family::Exponential, &[0.1]),
            spec(Family::Egl, &[0.9, 0.6, 0.6]),
        ];
        for m in &models {
            assert_eq!(m.cdf(0.0).unwrap(), 0.0, "{m:?}");
            assert!(m.cdf(1e4).unwrap() > 1.0 - 1e-9, "{m:?}");
            assert!(m.cdf(-1.0).is_err());
        }
    }

    #[test]
    fn samplers_are_seeded() {
        for f in Family::ALL {
            let m = spec(f, &vec![0.8; f.arity()]);
            let a = m.sample(20, 3).unwrap();
            assert_eq!(a, m.sample(20, 3).unwrap());
            assert!(a.iter().all(|&x| x >= 0.0 && x.is_finite()));
        }
    }
}
