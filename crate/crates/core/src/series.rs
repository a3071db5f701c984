use std::collections::BTreeMap;

use crate::error::{GreyError, Result};
use crate::scalar::Coefficient;

/// Smallest series length a grey model can be built from.
pub const MIN_SAMPLES: usize = 4;

/// Period identifier: a year, a day index, or a plain sample number.
pub type Label = i64;

/// An ordered series of values with period labels.
///
/// Storage is 0-indexed; the modelling literature's `x(1)` is `values()[0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    labels: Vec<Label>,
    values: Vec<T>,
}

impl<T: Coefficient> Series<T> {
    /// Builds a labelled series. Values must be finite and the labels must
    /// line up one-to-one with the values.
    pub fn new(labels: Vec<Label>, values: Vec<T>) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(GreyError::InvalidInput(format!(
                "{} labels for {} values",
                labels.len(),
                values.len()
            )));
        }
        if values.is_empty() {
            return Err(GreyError::InvalidInput("series is empty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite_value()) {
            return Err(GreyError::NonFinite(format!(
                "series value at position {i}"
            )));
        }
        Ok(Self { labels, values })
    }

    /// Series labelled `1..=n`.
    pub fn from_values(values: Vec<T>) -> Result<Self> {
        let labels = (1..=values.len() as Label).collect();
        Self::new(labels, values)
    }

    /// Raw observational series: at least [`MIN_SAMPLES`] strictly positive values.
    pub fn observed(labels: Vec<Label>, values: Vec<T>) -> Result<Self> {
        if values.len() < MIN_SAMPLES {
            return Err(GreyError::TooFewSamples {
                needed: MIN_SAMPLES,
                got: values.len(),
            });
        }
        let series = Self::new(labels, values)?;
        if let Some(i) = series.values.iter().position(|v| *v <= T::zero()) {
            return Err(GreyError::InvalidInput(format!(
                "observed value at position {i} is not strictly positive"
            )));
        }
        Ok(series)
    }

    /// Same labels, new values. Used by the accumulation operators.
    pub(crate) fn with_values(&self, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), self.values.len());
        Self {
            labels: self.labels.clone(),
            values,
        }
    }
}

impl<T> Series<T> {
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, &T)> {
        self.labels.iter().copied().zip(self.values.iter())
    }
}

/// Most frequent difference between consecutive labels; ties go to the
/// smaller stride. A single label has stride 1.
pub fn modal_stride(labels: &[Label]) -> Label {
    let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
    for w in labels.windows(2) {
        *counts.entry(w[1] - w[0]).or_default() += 1;
    }
    let mut best: Option<(Label, usize)> = None;
    for (stride, count) in counts {
        if best.is_none_or(|(_, c)| count > c) {
            best = Some((stride, count));
        }
    }
    best.map_or(1, |(s, _)| s)
}

/// `labels` followed by `horizon` labels continuing at the modal stride.
pub fn extend_labels(labels: &[Label], horizon: usize) -> Vec<Label> {
    let stride = modal_stride(labels);
    let last = labels.last().copied().unwrap_or(0);
    let mut out = labels.to_vec();
    out.extend((1..=horizon as Label).map(|h| last + h * stride));
    out
}
