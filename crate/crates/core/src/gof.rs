//! Goodness of fit: empirical cdf, Kolmogorov–Smirnov distances, and
//! information-criterion model comparison.

use serde::{Deserialize, Serialize};

use crate::competitors::{Family, ModelSpec};
use crate::error::{Error, Result};
use crate::estimation::{fit, FitOptions, FitResult};

/// Right-continuous empirical distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn new(data: &[f64]) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidData(
                "empirical cdf of an empty sample".into(),
            ));
        }
        if data.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidData("sample contains NaN".into()));
        }
        let mut sorted = data.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Ecdf { sorted })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let count = self.sorted.partition_point(|&v| v <= x);
        count as f64 / self.sorted.len() as f64
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }
}

/// `sup |F_n − F|` for a continuous `F`, exact at the jump points.
pub fn ks_distance<F: FnMut(f64) -> Result<f64>>(data: &[f64], mut cdf: F) -> Result<f64> {
    let e = Ecdf::new(data)?;
    let n = e.sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in e.sorted.iter().enumerate() {
        let f = cdf(x)?;
        d = d
            .max((f - i as f64 / n).abs())
            .max(((i + 1) as f64 / n - f).abs());
    }
    Ok(d)
}

/// K-S statistic of `model` against `data`.
pub fn ks_statistic(model: &ModelSpec, data: &[f64]) -> Result<f64> {
    ks_distance(data, |x| model.cdf(x))
}

/// Two-sample K-S statistic `sup |F_n − G_m|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    let ea = Ecdf::new(a)?;
    let eb = Ecdf::new(b)?;
    let (xa, xb) = (ea.sorted(), eb.sorted());
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Approximate critical value of the two-sample statistic,
/// `c(α)·√((n + m)/(n m))` with `c(α) = √(−ln(α/2)/2)`.
pub fn ks_two_sample_critical(n: usize, m: usize, significance: f64) -> f64 {
    let c = (-(significance / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Fit statistics for one model on one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub model: ModelSpec,
    pub neg_loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub ks: f64,
    pub n: usize,
}

impl GofReport {
    /// Statistics for a fixed model.
    pub fn evaluate(model: &ModelSpec, data: &[f64]) -> Result<Self> {
        let n = data.len();
        let neg_loglik = -model.loglik(data);
        let q = model.params().len() as f64;
        Ok(GofReport {
            model: model.clone(),
            neg_loglik,
            aic: 2.0 * neg_loglik + 2.0 * q,
            bic: 2.0 * neg_loglik + q * (n as f64).ln(),
            ks: ks_statistic(model, data)?,
            n,
        })
    }
}

/// One row of a comparison: the report when the fit succeeded, the error
/// text otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub family: Family,
    pub report: Option<GofReport>,
    pub fit: Option<FitResult>,
    pub error: Option<String>,
}

/// Fits every family and ranks the successful ones by AIC; failures are kept
/// at the end in input order.
pub fn compare(
    families: &[Family],
    data: &[f64],
    options: &FitOptions,
) -> Result<Vec<ComparisonEntry>> {
    if families.is_empty() {
        return Err(Error::InvalidData("no model families to compare".into()));
    }
    crate::estimation::validate_data(data)?;
    let mut rows: Vec<ComparisonEntry> = families
        .iter()
        .map(|&family| {
            let outcome = fit(family, data, options)
                .and_then(|r| GofReport::evaluate(&r.model, data).map(|g| (r, g)));
            match outcome {
                Ok((r, g)) => ComparisonEntry {
                    family,
                    report: Some(g),
                    fit: Some(r),
                    error: None,
                },
                Err(e) => ComparisonEntry {
                    family,
                    report: None,
                    fit: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    rows.sort_by(|a, b| match (&a.report, &b.report) {
        (Some(x), Some(y)) => x.aic.total_cmp(&y.aic).then(a.family.cmp(&b.family)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    Ok(rows)
}
