//! Serialized report shapes.

use std::fmt::Write as _;

use serde::Serialize;

use egl::datasets::Dataset;
use egl::estimation::FitResult;
use egl::gof::GofReport;

/// Top-level wrapper carried by every JSON report.
#[derive(Serialize)]
pub struct Envelope<'a, C: Serialize, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub config: &'a C,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset: Option<DatasetInfo>,
    pub result: T,
}

impl<'a, C: Serialize, T: Serialize> Envelope<'a, C, T> {
    pub fn new(
        command: &'static str,
        seed: u64,
        config: &'a C,
        dataset: Option<DatasetInfo>,
        result: T,
    ) -> Self {
        Envelope {
            tool: "egl",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            config,
            dataset,
            result,
        }
    }
}

#[derive(Serialize)]
pub struct DatasetInfo {
    pub name: String,
    pub source: String,
    pub n: usize,
    pub sha256: String,
}

impl From<&Dataset> for DatasetInfo {
    fn from(d: &Dataset) -> Self {
        DatasetInfo {
            name: d.name().to_string(),
            source: d.source().to_string(),
            n: d.len(),
            sha256: d.digest(),
        }
    }
}

#[derive(Serialize)]
pub struct FitReport<'a> {
    pub fit: &'a FitResult,
    pub gof: &'a GofReport,
}

#[derive(Serialize)]
pub struct EvalRow {
    pub x: f64,
    pub value: f64,
}

pub fn gof_csv(rows: &[(&GofReport, bool)]) -> String {
    let mut s = String::from("model,neg_loglik,aic,bic,ks,converged,params\n");
    for (r, converged) in rows {
        let params: Vec<String> = r.model.params().iter().map(|p| p.to_string()).collect();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.model.family().tag(),
            r.neg_loglik,
            r.aic,
            r.bic,
            r.ks,
            converged,
            params.join(";")
        );
    }
    s
}

pub fn eval_csv(column: &str, rows: &[EvalRow]) -> String {
    let mut s = format!("x,{column}\n");
    for r in rows {
        let _ = writeln!(s, "{},{}", r.x, r.value);
    }
    s
}
