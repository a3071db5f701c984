//! Stochastic validation over the `(r, alpha)` plane.
//!
//! Each cell draws `beta`, `gamma` and `x0` uniformly, generates an exact
//! series from the optimized response function, fits FAGM(1,1,k) and
//! FAGMO(1,1,k) at the true order, and records the parameter recovery error
//! and in-sample RMSPE of both.
//!
//! Randomness: every cell owns a `ChaCha8Rng` seeded with
//! `splitmix64(splitmix64(splitmix64(seed) ^ i) ^ j)` where `i`, `j` are the
//! cell's `r` and `alpha` indices. Draw order is `beta`, `gamma`, `x0`.
//! Results therefore depend only on the seed and the grid, never on
//! scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{GreyError, Result};
use crate::eval_metrics::evaluate;
use crate::frac_accum::{inverse_accumulate_values, FracOrder};
use crate::grey_models::{fit, ModelVariant, ResponseFn};
use crate::scalar::Real;
use crate::series::Series;

pub const R_RANGE: (f64, f64) = (0.01, 2.0);
pub const ALPHA_RANGE: (f64, f64) = (-1.99, 1.99);
/// Cells with `|alpha|` below this are dropped from the grid.
pub const ALPHA_DEAD_ZONE: f64 = 0.01;
pub const BETA_RANGE: (f64, f64) = (0.0, 5.0);
pub const GAMMA_RANGE: (f64, f64) = (0.0, 100.0);
pub const X0_RANGE: (f64, f64) = (1.0, 2.0);
pub const DEFAULT_POINTS: usize = 11;
pub const MIN_POINTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DrawPolicy {
    /// Fresh `(beta, gamma, x0)` for every cell.
    #[default]
    PerCell,
    /// One draw shared by the whole sweep.
    PerSweep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub r_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    pub n_points: usize,
    pub seed: u64,
    pub beta_range: (f64, f64),
    pub gamma_range: (f64, f64),
    pub x0_range: (f64, f64),
    pub draws: DrawPolicy,
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let h = (hi - lo) / (steps - 1) as f64;
            (0..steps)
                .map(|i| {
                    if i + 1 == steps {
                        hi
                    } else {
                        lo + i as f64 * h
                    }
                })
                .collect()
        }
    }
}

impl SweepConfig {
    /// Full-range grid with `r_steps x alpha_steps` points (minus the dead zone).
    pub fn new(r_steps: usize, alpha_steps: usize, n_points: usize, seed: u64) -> Self {
        Self::with_ranges(R_RANGE, r_steps, ALPHA_RANGE, alpha_steps, n_points, seed)
    }

    pub fn with_ranges(
        r_range: (f64, f64),
        r_steps: usize,
        alpha_range: (f64, f64),
        alpha_steps: usize,
        n_points: usize,
        seed: u64,
    ) -> Self {
        let alpha_grid = linspace(alpha_range.0, alpha_range.1, alpha_steps)
            .into_iter()
            .filter(|a| a.abs() >= ALPHA_DEAD_ZONE)
            .collect();
        Self {
            r_grid: linspace(r_range.0, r_range.1, r_steps),
            alpha_grid,
            n_points,
            seed,
            beta_range: BETA_RANGE,
            gamma_range: GAMMA_RANGE,
            x0_range: X0_RANGE,
            draws: DrawPolicy::PerCell,
        }
    }

    pub fn with_draws(mut self, draws: DrawPolicy) -> Self {
        self.draws = draws;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(GreyError::InvalidInput(msg));
        if self.r_grid.is_empty() || self.alpha_grid.is_empty() {
            return bad("sweep grids must be nonempty".into());
        }
        let eps = 1e-12;
        if self
            .r_grid
            .iter()
            .any(|r| !(*r >= R_RANGE.0 - eps && *r <= R_RANGE.1 + eps))
        {
            return bad(format!("r grid must lie in [{}, {}]", R_RANGE.0, R_RANGE.1));
        }
        if self.alpha_grid.iter().any(|a| {
            !(*a >= ALPHA_RANGE.0 - eps && *a <= ALPHA_RANGE.1 + eps) || a.abs() < ALPHA_DEAD_ZONE
        }) {
            return bad(format!(
                "alpha grid must lie in [{}, {}] with |alpha| >= {ALPHA_DEAD_ZONE}",
                ALPHA_RANGE.0, ALPHA_RANGE.1
            ));
        }
        let sorted = |g: &[f64]| g.windows(2).all(|w| w[0] < w[1]);
        if !sorted(&self.r_grid) || !sorted(&self.alpha_grid) {
            return bad("sweep grids must be strictly increasing".into());
        }
        if self.n_points < MIN_POINTS {
            return bad(format!("n_points must be >= {MIN_POINTS}"));
        }
        for (name, (lo, hi)) in [
            ("beta", self.beta_range),
            ("gamma", self.gamma_range),
            ("x0", self.x0_range),
        ] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return bad(format!("{name} range must be finite with lo <= hi"));
            }
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.r_grid.len() * self.alpha_grid.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    Ok,
    FitFailed,
}

impl CellStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CellStatus::Ok => "ok",
            CellStatus::FitFailed => "fit_failed",
        }
    }
}

/// One grid cell. Metric fields are NaN when the fit failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell<T> {
    pub r: T,
    pub alpha: T,
    pub eps_fagm: T,
    pub eps_fagmo: T,
    pub rmspe_fagm: T,
    pub rmspe_fagmo: T,
    pub status: CellStatus,
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn cell_seed(seed: u64, i: u64, j: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ i) ^ j)
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..hi)
    }
}

/// `(beta, gamma, x0)` for one cell.
pub fn draw_parameters(config: &SweepConfig, i: usize, j: usize) -> (f64, f64, f64) {
    let seed = match config.draws {
        DrawPolicy::PerCell => cell_seed(config.seed, i as u64, j as u64),
        DrawPolicy::PerSweep => cell_seed(config.seed, u64::MAX, u64::MAX),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beta = uniform(&mut rng, config.beta_range);
    let gamma = uniform(&mut rng, config.gamma_range);
    let x0 = uniform(&mut rng, config.x0_range);
    (beta, gamma, x0)
}

/// Raw series whose `r`-accumulation follows the optimized response exactly.
pub fn generate_synthetic<T: Real>(
    r: T,
    alpha: T,
    beta: T,
    gamma: T,
    x0: T,
    n: usize,
) -> Result<Series<T>> {
    if !(alpha != T::zero() && alpha.is_finite()) {
        return Err(GreyError::InvalidInput(format!(
            "alpha must be finite and nonzero, got {alpha}"
        )));
    }
    let order = FracOrder::new(r)?;
    let accumulated = ResponseFn::new(alpha, beta, gamma, x0).values(n);
    Series::from_values(inverse_accumulate_values(&accumulated, &order))
}

/// Squared parameter recovery error.
pub fn eps_params<T: Real>(estimated: (T, T, T), truth: (T, T, T)) -> T {
    let d0 = estimated.0 - truth.0;
    let d1 = estimated.1 - truth.1;
    let d2 = estimated.2 - truth.2;
    d0 * d0 + d1 * d1 + d2 * d2
}

struct CellFit<T> {
    eps: T,
    rmspe: T,
}

fn fit_cell<T: Real>(
    raw: &Series<T>,
    r: T,
    variant: ModelVariant,
    truth: (T, T, T),
) -> Result<CellFit<T>> {
    let n = raw.len();
    let model = fit(raw, r, variant, n)?;
    let eps = eps_params(model.active_params(), truth);
    let predicted = model.predict(0)?;
    let rmspe = evaluate(raw.values(), predicted.values(), n)?.rmspe;
    if !(eps.is_finite() && rmspe.is_finite()) {
        return Err(GreyError::NonFinite("sweep cell".into()));
    }
    Ok(CellFit { eps, rmspe })
}

pub fn run_cell<T: Real>(config: &SweepConfig, i: usize, j: usize) -> SweepCell<T> {
    let r = T::lit(config.r_grid[i]);
    let alpha = T::lit(config.alpha_grid[j]);
    let (beta, gamma, x0) = draw_parameters(config, i, j);
    let (beta, gamma, x0) = (T::lit(beta), T::lit(gamma), T::lit(x0));
    let truth = (alpha, beta, gamma);

    let outcome = generate_synthetic(r, alpha, beta, gamma, x0, config.n_points).and_then(|raw| {
        let plain = fit_cell(&raw, r, ModelVariant::Fagm11k, truth)?;
        let optimized = fit_cell(&raw, r, ModelVariant::Fagmo11k, truth)?;
        Ok((plain, optimized))
    });
    match outcome {
        Ok((plain, optimized)) => SweepCell {
            r,
            alpha,
            eps_fagm: plain.eps,
            eps_fagmo: optimized.eps,
            rmspe_fagm: plain.rmspe,
            rmspe_fagmo: optimized.rmspe,
            status: CellStatus::Ok,
        },
        Err(_) => SweepCell {
            r,
            alpha,
            eps_fagm: T::nan(),
            eps_fagmo: T::nan(),
            rmspe_fagm: T::nan(),
            rmspe_fagmo: T::nan(),
            status: CellStatus::FitFailed,
        },
    }
}

/// Runs every cell on the current rayon pool. Cells come back in grid order
/// (`r` outer, `alpha` inner).
pub fn run_sweep<T: Real>(config: &SweepConfig) -> Result<Vec<SweepCell<T>>> {
    config.validate()?;
    let cols = config.alpha_grid.len();
    Ok((0..config.cell_count())
        .into_par_iter()
        .map(|idx| run_cell(config, idx / cols, idx % cols))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary<T> {
    pub cells: usize,
    pub ok: usize,
    pub failed: usize,
    pub max_eps_fagm: T,
    pub max_eps_fagmo: T,
    pub max_rmspe_fagm: T,
    pub max_rmspe_fagmo: T,
}

pub fn summarize<T: Real>(cells: &[SweepCell<T>]) -> SweepSummary<T> {
    let ok: Vec<&SweepCell<T>> = cells
        .iter()
        .filter(|c| c.status == CellStatus::Ok)
        .collect();
    let max_of = |f: fn(&SweepCell<T>) -> T| ok.iter().map(|c| f(c)).fold(T::zero(), T::max);
    SweepSummary {
        cells: cells.len(),
        ok: ok.len(),
        failed: cells.len() - ok.len(),
        max_eps_fagm: max_of(|c| c.eps_fagm),
        max_eps_fagmo: max_of(|c| c.eps_fagmo),
        max_rmspe_fagm: max_of(|c| c.rmspe_fagm),
        max_rmspe_fagmo: max_of(|c| c.rmspe_fagmo),
    }
}

pub const SWEEP_CSV_HEADER: &str = "r,alpha,eps_fagm,eps_fagmo,rmspe_fagm,rmspe_fagmo,status";

pub fn sweep_csv<T: Real>(cells: &[SweepCell<T>]) -> String {
    let mut out = String::with_capacity(64 * (cells.len() + 1));
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for c in cells {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            c.r,
            c.alpha,
            c.eps_fagm,
            c.eps_fagmo,
            c.rmspe_fagm,
            c.rmspe_fagmo,
            c.status.as_str()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac_accum::accumulate_values;

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.01, 2.0, 100);
        assert_eq!(g.len(), 100);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[99], 2.0);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
    }

    #[test]
    fn dead_zone_removed() {
        let cfg = SweepConfig::new(3, 5, 11, 1);
        let expected = [-1.99, -0.995, 0.995, 1.99];
        assert_eq!(cfg.alpha_grid.len(), expected.len());
        for (got, want) in cfg.alpha_grid.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!(cfg.validate().is_ok());
        let mut bad = cfg.clone();
        bad.alpha_grid = vec![0.0];
        assert!(bad.validate().is_err());
        let mut bad = cfg.clone();
        bad.r_grid = vec![0.5, 0.2];
        assert!(bad.validate().is_err());
        let mut bad = cfg;
        bad.n_points = 4;
        assert!(bad.validate().is_err());
        assert!(
            SweepConfig::with_ranges((0.0, 2.0), 3, ALPHA_RANGE, 4, 11, 0)
                .validate()
                .is_err()
        );
    }

    #[test]
    fn integer_order_closed_form() {
        let (alpha, gamma, x0) = (3.0_f64.ln(), 12.0, 1.25);
        let raw = generate_synthetic(1.0, alpha, 0.0, gamma, x0, 8).unwrap();
        let acc = accumulate_values(raw.values(), &FracOrder::new(1.0).unwrap());
        for (k, v) in acc.iter().enumerate() {
            let t = (k + 1) as f64;
            let direct = (x0 - gamma / alpha) * (-alpha * (t - 1.0)).exp() + gamma / alpha;
            assert!(
                (v - direct).abs() < 1e-10 * direct.abs().max(1.0),
                "k = {}",
                k + 1
            );
        }
    }

    #[test]
    fn synthetic_accumulates_back_to_the_response() {
        let (r, alpha, beta, gamma, x0) = (0.37_f64, -0.8, 2.5, 40.0, 1.7);
        let raw = generate_synthetic(r, alpha, beta, gamma, x0, 11).unwrap();
        let acc = accumulate_values(raw.values(), &FracOrder::new(r).unwrap());
        let expected = ResponseFn::new(alpha, beta, gamma, x0).values(11);
        for (a, b) in acc.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-10 * b.abs().max(1.0));
        }
    }

    #[test]
    fn fagmo_recovers_generating_parameters() {
        let raw = generate_synthetic(0.5, 0.3, 1.0, 10.0, 1.5, 11).unwrap();
        let m = fit(&raw, 0.5, ModelVariant::Fagmo11k, 11).unwrap();
        assert!(eps_params(m.active_params(), (0.3, 1.0, 10.0)) < 1e-6);
    }

    #[test]
    fn eps_arithmetic() {
        assert_eq!(eps_params((1.0, 2.0, 3.0), (1.0, 2.0, 3.0)), 0.0);
        assert_eq!(eps_params((1.0, 1.0, 1.0), (0.0, 0.0, 0.0)), 3.0);
        assert!(generate_synthetic(0.5, 0.0, 1.0, 1.0, 1.0, 11).is_err());
    }

    #[test]
    fn plain_model_worse_at_large_rate() {
        let cfg = SweepConfig::with_ranges((0.8, 0.8), 1, (1.8, 1.8), 1, 11, 9);
        let cell: SweepCell<f64> = run_cell(&cfg, 0, 0);
        assert_eq!(cell.status, CellStatus::Ok);
        assert!(cell.eps_fagm > cell.eps_fagmo);
        assert!(cell.eps_fagm > 1.0);
    }

    #[test]
    fn draws_are_reproducible() {
        let cfg = SweepConfig::new(4, 4, 11, 42);
        assert_eq!(draw_parameters(&cfg, 1, 2), draw_parameters(&cfg, 1, 2));
        assert_ne!(draw_parameters(&cfg, 1, 2), draw_parameters(&cfg, 2, 1));
        let shared = cfg.with_draws(DrawPolicy::PerSweep);
        assert_eq!(
            draw_parameters(&shared, 0, 0),
            draw_parameters(&shared, 3, 1)
        );
        let (b, g, x) = draw_parameters(&shared, 0, 0);
        assert!((0.0..5.0).contains(&b) && (0.0..100.0).contains(&g) && (1.0..2.0).contains(&x));
    }

    #[test]
    fn csv_layout() {
        let cells: Vec<SweepCell<f64>> = run_sweep(&SweepConfig::new(2, 2, 11, 3)).unwrap();
        let csv = sweep_csv(&cells);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(SWEEP_CSV_HEADER));
        assert_eq!(lines.count(), 4);
        let s = summarize(&cells);
        assert_eq!((s.cells, s.ok + s.failed), (4, 4));
    }
}
