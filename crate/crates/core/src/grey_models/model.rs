use serde::{Deserialize, Serialize};

use crate::error::{GreyError, Result};
use crate::frac_accum::{accumulate_values, inverse_accumulate_values, FracOrder};
use crate::linalg::solve_least_squares;
use crate::order_select::Objective;
use crate::scalar::Real;
use crate::series::{extend_labels, Label, Series, MIN_SAMPLES};

use super::design::build_design;
use super::params::{optimize_params, BaseParams, OptParams};
use super::variant::{DesignColumn, ModelVariant};

/// Development coefficients this close to zero make the response function undefined.
pub const ZERO_DEVELOPMENT: f64 = 1e-12;

/// Closed-form time response
/// `x(k) = constant * exp(-rate (k - 1)) + slope * k + offset`,
/// pinned to `x(1) = x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseFn<T> {
    pub x0: T,
    pub rate: T,
    pub constant: T,
    pub slope: T,
    pub offset: T,
}

impl<T: Real> ResponseFn<T> {
    /// Response of `dx/dt + rate x = slope_coef t + intercept` through `(1, x0)`.
    pub fn new(rate: T, slope_coef: T, intercept: T, x0: T) -> Self {
        let p = slope_coef / rate;
        let q = slope_coef / (rate * rate);
        let s = intercept / rate;
        Self {
            x0,
            rate,
            constant: x0 - p + q - s,
            slope: p,
            offset: -q + s,
        }
    }

    /// Value at the 1-indexed time `k`.
    pub fn eval(&self, k: usize) -> T {
        assert!(k >= 1, "time index is 1-based");
        if k == 1 {
            return self.x0;
        }
        let kf = T::from_index(k);
        self.constant * (-self.rate * (kf - T::one())).exp() + self.slope * kf + self.offset
    }

    /// Values at `k = 1..=len`.
    pub fn values(&self, len: usize) -> Vec<T> {
        (1..=len).map(|k| self.eval(k)).collect()
    }
}

/// Record of an automatic order selection, kept with the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderSearchRecord {
    pub objective: Objective,
    pub value: f64,
    pub step: f64,
}

/// A fitted grey model. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel<T> {
    pub(crate) variant: ModelVariant,
    pub(crate) order: FracOrder<T>,
    pub(crate) base: BaseParams<T>,
    pub(crate) opt: Option<OptParams<T>>,
    pub(crate) x0: T,
    pub(crate) nu: usize,
    pub(crate) n_total: usize,
    pub(crate) labels: Vec<Label>,
    pub(crate) order_search: Option<OrderSearchRecord>,
}

fn check_order<T: Real>(r: T, variant: ModelVariant) -> Result<FracOrder<T>> {
    if variant.is_order_locked() && r != T::one() {
        return Err(GreyError::VariantOrderConflict {
            variant: variant.tag(),
            r: r.to_f64_lossy(),
        });
    }
    FracOrder::new(r)
}

fn params_from_solution<T: Real>(columns: &[DesignColumn], phi: &[T]) -> BaseParams<T> {
    let mut base = BaseParams::new(T::zero(), T::zero(), T::zero());
    for (col, &value) in columns.iter().zip(phi) {
        match col {
            DesignColumn::Background => base.a = value,
            DesignColumn::Trend => base.b = value,
            DesignColumn::Intercept => base.c = value,
        }
    }
    base
}

/// Fits `variant` at order `r` on the first `nu` values of `raw`.
///
/// Accumulates, solves the least-squares design, and for the optimized
/// variants applies the parameter transform. `raw.len()` becomes the model's
/// `n_total`, the span that [`FittedModel::predict`] covers before the horizon.
pub fn fit<T: Real>(
    raw: &Series<T>,
    r: T,
    variant: ModelVariant,
    nu: usize,
) -> Result<FittedModel<T>> {
    let order = check_order(r, variant)?;
    if nu < MIN_SAMPLES {
        return Err(GreyError::TooFewSamples {
            needed: MIN_SAMPLES,
            got: nu,
        });
    }
    if nu > raw.len() {
        return Err(GreyError::InvalidInput(format!(
            "training length {nu} exceeds series length {}",
            raw.len()
        )));
    }
    let training = &raw.values()[..nu];
    let accumulated = accumulate_values(training, &order);
    let design = build_design(&accumulated, variant, nu)?;
    let phi = solve_least_squares(&design.rows, &design.response)?;
    let base = params_from_solution(design.columns, &phi);
    FittedModel::from_parameters(variant, r, base, training[0], nu, raw.labels().to_vec())
}

impl<T: Real> FittedModel<T> {
    /// Assembles a model from known base parameters, deriving the optimized
    /// parameters where the variant calls for them. `labels` sets `n_total`.
    pub fn from_parameters(
        variant: ModelVariant,
        r: T,
        base: BaseParams<T>,
        x0: T,
        nu: usize,
        labels: Vec<Label>,
    ) -> Result<Self> {
        let order = check_order(r, variant)?;
        let n_total = labels.len();
        if nu < MIN_SAMPLES || nu > n_total {
            return Err(GreyError::InvalidInput(format!(
                "need {MIN_SAMPLES} <= nu <= n_total, got nu = {nu}, n_total = {n_total}"
            )));
        }
        if !base.is_finite() || !x0.is_finite() {
            return Err(GreyError::NonFinite("model parameters".into()));
        }
        if base.a.abs() < T::lit(ZERO_DEVELOPMENT) {
            return Err(GreyError::ZeroDevelopmentCoefficient);
        }
        let opt = if variant.is_optimized() {
            Some(optimize_params(&base)?)
        } else {
            None
        };
        Ok(Self {
            variant,
            order,
            base,
            opt,
            x0,
            nu,
            n_total,
            labels,
            order_search: None,
        })
    }

    pub(crate) fn from_stored(
        variant: ModelVariant,
        r: T,
        base: BaseParams<T>,
        opt: Option<OptParams<T>>,
        x0: T,
        nu: usize,
        labels: Vec<Label>,
    ) -> Result<Self> {
        let order = check_order(r, variant)?;
        let n_total = labels.len();
        if nu < MIN_SAMPLES || nu > n_total {
            return Err(GreyError::InvalidInput(format!(
                "need {MIN_SAMPLES} <= nu <= n_total, got nu = {nu}, n_total = {n_total}"
            )));
        }
        if opt.is_some() != variant.is_optimized() {
            return Err(GreyError::InvalidInput(format!(
                "optimized parameters must be present exactly for optimized variants ({variant})"
            )));
        }
        let active_finite = match opt {
            Some(o) => o.alpha.is_finite() && o.beta.is_finite() && o.gamma.is_finite(),
            None => true,
        };
        if !base.is_finite() || !x0.is_finite() || !active_finite {
            return Err(GreyError::NonFinite("model parameters".into()));
        }
        Ok(Self {
            variant,
            order,
            base,
            opt,
            x0,
            nu,
            n_total,
            labels,
            order_search: None,
        })
    }

    pub fn with_order_search(mut self, record: OrderSearchRecord) -> Self {
        self.order_search = Some(record);
        self
    }

    pub fn variant(&self) -> ModelVariant {
        self.variant
    }

    pub fn order(&self) -> FracOrder<T> {
        self.order
    }

    pub fn r(&self) -> T {
        self.order.get()
    }

    pub fn base(&self) -> &BaseParams<T> {
        &self.base
    }

    pub fn opt(&self) -> Option<&OptParams<T>> {
        self.opt.as_ref()
    }

    pub fn x0(&self) -> T {
        self.x0
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn order_search(&self) -> Option<&OrderSearchRecord> {
        self.order_search.as_ref()
    }

    /// Parameters that drive the response function: `(alpha, beta, gamma)`
    /// for optimized variants, `(a, b, c)` otherwise.
    pub fn active_params(&self) -> (T, T, T) {
        match &self.opt {
            Some(o) => o.as_tuple(),
            None => (self.base.a, self.base.b, self.base.c),
        }
    }

    pub fn response(&self) -> ResponseFn<T> {
        let (rate, slope, intercept) = self.active_params();
        ResponseFn::new(rate, slope, intercept, self.x0)
    }

    /// Fitted accumulated value at the 1-indexed time `k`.
    pub fn time_response(&self, k: usize) -> T {
        self.response().eval(k)
    }

    /// Restored values for the fitted span plus `horizon` future periods.
    pub fn predict(&self, horizon: usize) -> Result<Series<T>> {
        let len = self.n_total + horizon;
        let accumulated = self.response().values(len);
        let restored = inverse_accumulate_values(&accumulated, &self.order);
        let labels = if self.labels.len() == self.n_total {
            extend_labels(&self.labels, horizon)
        } else {
            (1..=len as Label).collect()
        };
        Series::new(labels, restored)
    }

    /// Residual of the discrete basic equation, written with `(a, b, c)`,
    /// when the fitted continuous response is substituted at time `k >= 2`.
    ///
    /// Vanishes identically for the optimized variants; for the plain ones it
    /// measures the trapezoid-versus-integral mismatch of the background value.
    pub fn discretization_gap(&self, k: usize) -> T {
        assert!(k >= 2, "basic equation starts at k = 2");
        let response = self.response();
        let prev = response.eval(k - 1);
        let cur = response.eval(k);
        let BaseParams { a, b, c } = self.base;
        let two = T::lit(2.0);
        let z = T::lit(0.5) * (prev + cur);
        (cur - prev) + a * z - b * (two * T::from_index(k) - T::one()) / two - c
    }
}
