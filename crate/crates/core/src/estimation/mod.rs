//! Maximum-likelihood fitting for every family, with EGL score and
//! information diagnostics and Wald confidence intervals.
//!
//! The search runs Nelder–Mead in log-parameter space from the best points
//! of a coarse log-spaced grid. For EGL a start only counts as converged when
//! the closed-form score vanishes (norm ≤ `1e-4·n`); when the supremum lies on
//! the parameter boundary no start certifies and the best value found is
//! returned with `converged = false`.

mod information;
pub mod simplex;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

pub use information::{fisher_information, hessian_egl, loglik_egl, score_egl, FisherMode};
pub(crate) use information::{numerical_gradient, numerical_hessian};

use crate::competitors::{Family, ModelSpec};
use crate::egl::EglParams;
use crate::error::{domain, Error, Result};
use simplex::{SimplexOptions, Termination};

/// Objective value returned outside the search box or where the likelihood
/// is not finite.
const WALL: f64 = 1e300;
/// Search box in log-parameter space.
const MAX_LOG_PARAM: f64 = 40.0;
const GRID_POINTS: usize = 5;
const GRID_LOW: f64 = 0.01;
const GRID_HIGH: f64 = 10.0;

/// Source of the covariance matrix reported by [`fit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InformationKind {
    #[default]
    Observed,
    /// Quadrature-based expected information; EGL only, other families fall
    /// back to observed information.
    Expected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Seeds the orientation of each restart simplex.
    pub seed: u64,
    /// Simplex iterations per search leg.
    pub max_iter: usize,
    /// Grid points used as starts.
    pub n_starts: usize,
    /// Hard cap on `n_starts`.
    pub max_starts: usize,
    /// Simplex size tolerance in log-parameter space.
    pub x_tol: f64,
    /// Relative function-spread tolerance.
    pub f_tol: f64,
    /// Confidence level of the reported intervals.
    pub level: f64,
    pub information: InformationKind,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            seed: 0,
            max_iter: 2000,
            n_starts: 5,
            max_starts: 25,
            x_tol: 1e-10,
            f_tol: 1e-14,
            level: 0.95,
            information: InformationKind::Observed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

/// Outcome of one multi-start leg.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartOutcome {
    pub start: Vec<f64>,
    pub params: Vec<f64>,
    pub neg_loglik: f64,
    pub score_norm: f64,
    pub iterations: usize,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: ModelSpec,
    pub neg_loglik: f64,
    pub n: usize,
    /// Euclidean norm of the score at the estimate. Closed form for EGL,
    /// central differences otherwise.
    pub score_norm: f64,
    /// Inverse information, parameter order as in `model`. `None` when the
    /// information is not positive definite at the estimate.
    pub covariance: Option<Vec<Vec<f64>>>,
    pub level: f64,
    pub conf_intervals: Option<Vec<Interval>>,
    pub converged: bool,
    pub n_restarts_used: usize,
    pub starts: Vec<StartOutcome>,
}

pub(crate) fn validate_data(data: &[f64]) -> Result<()> {
    if data.is_empty() {
        return Err(Error::InvalidData("no observations".into()));
    }
    if let Some((i, v)) = data
        .iter()
        .enumerate()
        .find(|(_, v)| !(**v > 0.0 && v.is_finite()))
    {
        return Err(Error::InvalidData(format!(
            "observation {} is {v}; all values must be positive and finite",
            i + 1
        )));
    }
    Ok(())
}

fn neg_loglik_log_space(family: Family, data: &[f64], q: &[f64]) -> f64 {
    if q.iter().any(|v| v.is_nan() || v.abs() > MAX_LOG_PARAM) {
        return WALL;
    }
    let params: Vec<f64> = q.iter().map(|v| v.exp()).collect();
    let ll = match ModelSpec::new(family, params) {
        Ok(m) => m.loglik(data),
        Err(_) => return WALL,
    };
    if ll.is_finite() {
        -ll
    } else {
        WALL
    }
}

fn score_norm(model: &ModelSpec, data: &[f64]) -> f64 {
    let g = match model.family() {
        Family::Egl => {
            let p = EglParams::from_slice(model.params()).expect("validated");
            score_egl(&p, data).to_vec()
        }
        f => numerical_gradient(
            |p| match ModelSpec::new(f, p.to_vec()) {
                Ok(m) => m.loglik(data),
                Err(_) => f64::NAN,
            },
            model.params(),
            1e-6,
        ),
    };
    g.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Log-spaced starting grid, best `count` points by objective value.
fn grid_starts<F: Fn(&[f64]) -> f64>(arity: usize, count: usize, objective: F) -> Vec<Vec<f64>> {
    let step = (GRID_HIGH / GRID_LOW).ln() / (GRID_POINTS - 1) as f64;
    let axis: Vec<f64> = (0..GRID_POINTS)
        .map(|i| GRID_LOW.ln() + step * i as f64)
        .collect();
    let total = GRID_POINTS.pow(arity as u32);
    let mut scored: Vec<(f64, Vec<f64>)> = (0..total)
        .map(|mut idx| {
            let mut q = vec![0.0; arity];
            for slot in q.iter_mut().rev() {
                *slot = axis[idx % GRID_POINTS];
                idx /= GRID_POINTS;
            }
            (objective(&q), q)
        })
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| lexicographic(&a.1, &b.1)));
    scored.into_iter().take(count).map(|(_, q)| q).collect()
}

fn lexicographic(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Fits `family` to `data` by maximum likelihood.
pub fn fit(family: Family, data: &[f64], options: &FitOptions) -> Result<FitResult> {
    validate_data(data)?;
    if !(options.level > 0.0 && options.level < 1.0) {
        return Err(domain(format!(
            "confidence level must lie in (0, 1), got {}",
            options.level
        )));
    }
    let n = data.len();
    let arity = family.arity();
    let objective = |q: &[f64]| neg_loglik_log_space(family, data, q);
    let n_starts = options.n_starts.clamp(1, options.max_starts.max(1));
    let starts = grid_starts(arity, n_starts, objective);
    let simplex_opts = SimplexOptions {
        max_iter: options.max_iter,
        x_tol: options.x_tol,
        f_tol: options.f_tol,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);

    let mut outcomes = Vec::with_capacity(starts.len());
    for start in &starts {
        let first = simplex::minimize(objective, start, &vec![0.5; arity], simplex_opts);
        // A fresh, randomly oriented simplex at the first leg's optimum
        // guards against premature collapse.
        let steps: Vec<f64> = (0..arity)
            .map(|_| {
                let s: f64 = rng.random_range(0.05..0.2);
                if rng.random::<bool>() {
                    s
                } else {
                    -s
                }
            })
            .collect();
        let second = simplex::minimize(objective, &first.x, &steps, simplex_opts);
        let best = if second.f <= first.f {
            second.clone()
        } else {
            first.clone()
        };
        let iterations = first.iterations + second.iterations;
        let params: Vec<f64> = best.x.iter().map(|v| v.exp()).collect();
        let finite = best.f < WALL && params.iter().all(|v| v.is_finite() && *v > 0.0);
        let (sn, certified) = match ModelSpec::new(family, params.clone()) {
            Ok(m) if finite => {
                let sn = score_norm(&m, data);
                let ok = match family {
                    Family::Egl => sn <= 1e-4 * n as f64,
                    _ => best.termination != Termination::IterationLimit,
                };
                (sn, ok)
            }
            _ => (f64::NAN, false),
        };
        outcomes.push(StartOutcome {
            start: start.iter().map(|v| v.exp()).collect(),
            params,
            neg_loglik: best.f,
            score_norm: sn,
            iterations,
            certified,
        });
    }

    let pick = |certified_only: bool| {
        outcomes
            .iter()
            .filter(|o| !certified_only || o.certified)
            .filter(|o| o.neg_loglik < WALL)
            .min_by(|a, b| {
                a.neg_loglik
                    .total_cmp(&b.neg_loglik)
                    .then_with(|| lexicographic(&a.params, &b.params))
            })
    };
    let (chosen, converged) = match pick(true) {
        Some(o) => (o, true),
        None => match pick(false) {
            Some(o) => (o, false),
            None => {
                return Err(Error::NonConvergence {
                    iterations: outcomes.iter().map(|o| o.iterations).sum(),
                    detail: format!("no finite likelihood found for {}", family.label()),
                })
            }
        },
    };
    let model = ModelSpec::new(family, chosen.params.clone())?;
    let neg_loglik = -model.loglik(data);
    let score_norm = chosen.score_norm;

    let covariance = covariance(&model, data, options.information).ok();
    let conf_intervals = covariance
        .as_ref()
        .map(|c| wald_intervals(model.params(), c, options.level))
        .transpose()?;

    Ok(FitResult {
        model,
        neg_loglik,
        n,
        score_norm,
        covariance,
        level: options.level,
        conf_intervals,
        converged,
        n_restarts_used: outcomes.len(),
        starts: outcomes,
    })
}

/// Information matrix of `model` at `data`.
pub fn information_matrix(
    model: &ModelSpec,
    data: &[f64],
    kind: InformationKind,
) -> Result<Vec<Vec<f64>>> {
    match model.family() {
        Family::Egl => {
            let p = EglParams::from_slice(model.params())?;
            let mode = match kind {
                InformationKind::Observed => FisherMode::Observed(data),
                InformationKind::Expected => FisherMode::Expected { n: data.len() },
            };
            Ok(fisher_information(&p, mode)?
                .iter()
                .map(|r| r.to_vec())
                .collect())
        }
        f => {
            let h = numerical_hessian(
                |p| match ModelSpec::new(f, p.to_vec()) {
                    Ok(m) => m.loglik(data),
                    Err(_) => f64::NAN,
                },
                model.params(),
                1e-4,
            );
            Ok(h.into_iter()
                .map(|r| r.into_iter().map(|v| -v).collect())
                .collect())
        }
    }
}

/// Inverts a symmetric positive-definite matrix.
pub fn invert_spd(m: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let d = m.len();
    let mat = DMatrix::from_fn(d, d, |r, c| m[r][c]);
    if !mat.iter().all(|v| v.is_finite()) {
        return Err(Error::SingularMatrix);
    }
    let inv = mat.cholesky().ok_or(Error::SingularMatrix)?.inverse();
    Ok((0..d)
        .map(|r| (0..d).map(|c| 0.5 * (inv[(r, c)] + inv[(c, r)])).collect())
        .collect())
}

/// Asymptotic covariance: inverse of the information at the estimate.
pub fn covariance(model: &ModelSpec, data: &[f64], kind: InformationKind) -> Result<Vec<Vec<f64>>> {
    invert_spd(&information_matrix(model, data, kind)?)
}

fn wald_intervals(estimate: &[f64], cov: &[Vec<f64>], level: f64) -> Result<Vec<Interval>> {
    if !(level > 0.0 && level < 1.0) {
        return Err(domain(format!(
            "confidence level must lie in (0, 1), got {level}"
        )));
    }
    let z = Normal::standard().inverse_cdf(0.5 + 0.5 * level);
    Ok(estimate
        .iter()
        .enumerate()
        .map(|(j, &e)| {
            let half = z * cov[j][j].max(0.0).sqrt();
            Interval {
                lower: e - half,
                upper: e + half,
            }
        })
        .collect())
}

/// Wald intervals `θ̂ⱼ ± z·√covⱼⱼ` at confidence `level`.
pub fn confidence_intervals(fit: &FitResult, level: f64) -> Result<Vec<Interval>> {
    let cov = fit.covariance.as_ref().ok_or(Error::SingularMatrix)?;
    wald_intervals(fit.model.params(), cov, level)
}
