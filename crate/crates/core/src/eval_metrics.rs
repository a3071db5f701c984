//! Accuracy criteria for a restored series against observations.
//!
//! `nu` splits the series into the prior-sample (training) range `1..=nu`
//! and the post-sample range `nu+1..=n`. Percentage criteria are stored as
//! percent values, so `3.1409` means 3.1409 %.

use serde::Serialize;

use crate::error::{GreyError, Result};
use crate::scalar::Real;
use crate::series::Label;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationReport<T> {
    /// RMSPE over `1..=nu`, percent.
    pub rmspepr: T,
    /// RMSPE over `nu+1..=n`, percent; `None` without a holdout.
    pub rmspepo: Option<T>,
    /// RMSPE over `1..=n`, percent.
    pub rmspe: T,
    /// Index of agreement.
    pub ia: T,
    /// Mean of `predicted - observed`.
    pub ae: T,
    /// Mean of `|predicted - observed|`.
    pub mae: T,
    pub nu: usize,
    pub n: usize,
}

fn check_pair<T: Real>(observed: &[T], predicted: &[T]) -> Result<()> {
    if observed.len() != predicted.len() {
        return Err(GreyError::LengthMismatch {
            observed: observed.len(),
            predicted: predicted.len(),
        });
    }
    if let Some(index) = observed.iter().position(|v| *v == T::zero()) {
        return Err(GreyError::ZeroObserved { index });
    }
    Ok(())
}

fn rmspe_ratio<T: Real>(observed: &[T], predicted: &[T]) -> T {
    let sum = observed
        .iter()
        .zip(predicted)
        .fold(T::zero(), |acc, (&o, &p)| {
            let e = (p - o) / o;
            acc + e * e
        });
    (sum / T::from_index(observed.len())).sqrt()
}

/// `|predicted - observed| / observed`, elementwise.
pub fn relative_errors<T: Real>(observed: &[T], predicted: &[T]) -> Result<Vec<T>> {
    check_pair(observed, predicted)?;
    Ok(observed
        .iter()
        .zip(predicted)
        .map(|(&o, &p)| ((p - o) / o).abs())
        .collect())
}

pub fn evaluate<T: Real>(
    observed: &[T],
    predicted: &[T],
    nu: usize,
) -> Result<EvaluationReport<T>> {
    check_pair(observed, predicted)?;
    let n = observed.len();
    if nu == 0 || nu > n {
        return Err(GreyError::InvalidInput(format!(
            "need 1 <= nu <= n, got nu = {nu}, n = {n}"
        )));
    }
    let hundred = T::lit(100.0);
    let nf = T::from_index(n);

    let rmspepr = rmspe_ratio(&observed[..nu], &predicted[..nu]) * hundred;
    let rmspepo = (nu < n).then(|| rmspe_ratio(&observed[nu..], &predicted[nu..]) * hundred);
    let rmspe = rmspe_ratio(observed, predicted) * hundred;

    let mean = observed.iter().fold(T::zero(), |acc, &v| acc + v) / nf;
    let mut sq = T::zero();
    let mut spread = T::zero();
    let mut signed = T::zero();
    let mut absolute = T::zero();
    for (&o, &p) in observed.iter().zip(predicted) {
        let diff = p - o;
        sq = sq + diff * diff;
        let s = (p - mean).abs() + (o - mean).abs();
        spread = spread + s * s;
        signed = signed + diff;
        absolute = absolute + diff.abs();
    }
    let ia = if spread == T::zero() {
        T::one()
    } else {
        T::one() - sq / spread
    };

    Ok(EvaluationReport {
        rmspepr,
        rmspepo,
        rmspe,
        ia,
        ae: signed / nf,
        mae: absolute / nf,
        nu,
        n,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelativeErrorEntry {
    pub period: Label,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioFields {
    pub rmspepr: f64,
    pub rmspepo: Option<f64>,
    pub rmspe: f64,
}

/// JSON form of a report: percent-valued criteria, the same criteria as raw
/// ratios, and the per-period relative errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsDocument {
    pub rmspepr: f64,
    pub rmspepo: Option<f64>,
    pub rmspe: f64,
    pub ia: f64,
    pub ae: f64,
    pub mae: f64,
    pub nu: usize,
    pub n: usize,
    pub ratio: RatioFields,
    pub relative_errors: Vec<RelativeErrorEntry>,
}

impl<T: Real> EvaluationReport<T> {
    pub fn to_document(&self, labels: &[Label], relative: &[T]) -> MetricsDocument {
        let pct = |v: T| v.to_f64_lossy();
        let ratio = |v: T| v.to_f64_lossy() / 100.0;
        MetricsDocument {
            rmspepr: pct(self.rmspepr),
            rmspepo: self.rmspepo.map(pct),
            rmspe: pct(self.rmspe),
            ia: pct(self.ia),
            ae: pct(self.ae),
            mae: pct(self.mae),
            nu: self.nu,
            n: self.n,
            ratio: RatioFields {
                rmspepr: ratio(self.rmspepr),
                rmspepo: self.rmspepo.map(ratio),
                rmspe: ratio(self.rmspe),
            },
            relative_errors: labels
                .iter()
                .zip(relative)
                .map(|(&period, e)| RelativeErrorEntry {
                    period,
                    relative_error: e.to_f64_lossy(),
                })
                .collect(),
        }
    }

    /// `metric,value` CSV, one row per criterion. A missing RMSPEPO is left empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,value\n");
        let mut row = |name: &str, v: Option<T>| {
            let text = v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!("{name},{text}\n"));
        };
        row("rmspepr", Some(self.rmspepr));
        row("rmspepo", self.rmspepo);
        row("rmspe", Some(self.rmspe));
        row("ia", Some(self.ia));
        row("ae", Some(self.ae));
        row("mae", Some(self.mae));
        out
    }
}
