use crate::error::{GreyError, Result};
use crate::scalar::Real;
use crate::series::MIN_SAMPLES;

use super::variant::{DesignColumn, ModelVariant};

/// Background value and first difference of the accumulated series at one
/// 1-indexed time `k >= 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackgroundRow<T> {
    pub k: usize,
    /// `0.5 * (x_r(k-1) + x_r(k))`
    pub z: T,
    /// `x_r(k) - x_r(k-1)`
    pub d: T,
}

/// Least-squares system `B phi ~ Y` for one variant.
#[derive(Debug, Clone, PartialEq)]
pub struct Design<T> {
    pub columns: &'static [DesignColumn],
    pub rows: Vec<Vec<T>>,
    pub response: Vec<T>,
}

/// Rows `k = 2..=nu` of the background table for an accumulated series.
pub fn background_rows<T: Real>(accumulated: &[T], nu: usize) -> Vec<BackgroundRow<T>> {
    let half = T::lit(0.5);
    (2..=nu.min(accumulated.len()))
        .map(|k| {
            let prev = accumulated[k - 2];
            let cur = accumulated[k - 1];
            BackgroundRow {
                k,
                z: half * (prev + cur),
                d: cur - prev,
            }
        })
        .collect()
}

/// Builds the design for the first `nu` accumulated values.
pub fn build_design<T: Real>(
    accumulated: &[T],
    variant: ModelVariant,
    nu: usize,
) -> Result<Design<T>> {
    if nu < MIN_SAMPLES {
        return Err(GreyError::TooFewSamples {
            needed: MIN_SAMPLES,
            got: nu,
        });
    }
    if accumulated.len() < nu {
        return Err(GreyError::InvalidInput(format!(
            "training length {nu} exceeds series length {}",
            accumulated.len()
        )));
    }
    let columns = variant.columns();
    let two = T::lit(2.0);
    let mut rows = Vec::with_capacity(nu - 1);
    let mut response = Vec::with_capacity(nu - 1);
    for bg in background_rows(accumulated, nu) {
        let row = columns
            .iter()
            .map(|col| match col {
                DesignColumn::Background => -bg.z,
                DesignColumn::Trend => (two * T::from_index(bg.k) - T::one()) / two,
                DesignColumn::Intercept => T::one(),
            })
            .collect();
        rows.push(row);
        response.push(bg.d);
    }
    Ok(Design {
        columns,
        rows,
        response,
    })
}
