//! Recomputes the bundled reference cells and compares them with tolerances.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::eval_metrics::{evaluate, relative_errors, EvaluationReport};
use crate::fixtures::{cells_for, CaseId, ExpectedCell, Quantity};
use crate::grey_models::{fit, optimize_params, BaseParams, ModelVariant};
use crate::series::Label;

/// Relative tolerance on fitted and forecast values.
pub const VALUE_REL_TOL: f64 = 1e-3;
/// Absolute tolerance on percentage criteria, in percentage points.
pub const PERCENT_TOL: f64 = 0.05;
pub const IA_TOL: f64 = 1e-3;
/// Absolute tolerance on AE and MAE, in data units.
pub const ERROR_TOL: f64 = 5e-3;
/// Absolute tolerance on per-period relative errors (fractions).
pub const RELERR_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Relative(f64),
    Absolute(f64),
    /// Computed value rounded to this many decimals must equal the printed text.
    Decimals(usize),
}

impl Tolerance {
    pub fn for_quantity(q: Quantity) -> Self {
        match q {
            Quantity::Value => Tolerance::Relative(VALUE_REL_TOL),
            Quantity::RelErr => Tolerance::Absolute(RELERR_TOL),
            Quantity::Rmspepr | Quantity::Rmspepo | Quantity::Rmspe => {
                Tolerance::Absolute(PERCENT_TOL)
            }
            Quantity::Ia => Tolerance::Absolute(IA_TOL),
            Quantity::Ae | Quantity::Mae => Tolerance::Absolute(ERROR_TOL),
            Quantity::Eps1 | Quantity::Eps1OverA => Tolerance::Decimals(4),
        }
    }

    /// Returns the deviation and whether it is within tolerance.
    pub fn check(self, computed: f64, expected_text: &str) -> (f64, bool) {
        let expected: f64 = expected_text.parse().unwrap_or(f64::NAN);
        match self {
            Tolerance::Relative(tol) => {
                let delta = if expected == 0.0 {
                    computed
                } else {
                    (computed - expected) / expected.abs()
                };
                (delta, delta.abs() <= tol)
            }
            Tolerance::Absolute(tol) => {
                let delta = computed - expected;
                (delta, delta.abs() <= tol)
            }
            Tolerance::Decimals(dp) => {
                let delta = computed - expected;
                (delta, format!("{computed:.dp$}") == expected_text)
            }
        }
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Relative(t) => write!(f, "rel {t:e}"),
            Tolerance::Absolute(t) => write!(f, "abs {t}"),
            Tolerance::Decimals(d) => write!(f, "{d} dp"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Published by a model this crate does not implement; shown only.
    External,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::External => "external",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CellOutcome {
    pub cell: &'static ExpectedCell,
    pub computed: Option<f64>,
    pub delta: Option<f64>,
    pub tolerance: Tolerance,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub case: CaseId,
    pub outcomes: Vec<CellOutcome>,
}

impl CaseReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.verdict == verdict)
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellOutcome> {
        self.outcomes.iter().filter(|o| o.verdict == Verdict::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.count(Verdict::Fail) == 0
    }

    /// Aligned text table of every cell followed by a summary line.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{:<10} {:<9} {:<8} {:<8} {:<12} {:>12} {:>12} {:>11}  {:<9} {}\n",
            "case",
            "model",
            "order",
            "row",
            "quantity",
            "expected",
            "computed",
            "delta",
            "tolerance",
            "verdict"
        );
        for o in &self.outcomes {
            let computed = o.computed.map_or("-".into(), |v| format!("{v:.4}"));
            let delta = o.delta.map_or("-".into(), |v| format!("{v:.2e}"));
            out.push_str(&format!(
                "{:<10} {:<9} {:<8} {:<8} {:<12} {:>12} {:>12} {:>11}  {:<9} {}\n",
                o.cell.case.name(),
                o.cell.model,
                o.cell.order,
                o.cell.row,
                o.cell.quantity.name(),
                o.cell.expected,
                computed,
                delta,
                o.tolerance.to_string(),
                o.verdict.as_str()
            ));
        }
        out.push_str(&format!(
            "{}: {} pass, {} fail, {} external\n",
            self.case,
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::External)
        ));
        out
    }
}

struct ModelRun {
    predicted: BTreeMap<Label, f64>,
    relerr: BTreeMap<Label, f64>,
    report: EvaluationReport<f64>,
}

fn run_model(case: CaseId, variant: ModelVariant, r: f64) -> Result<ModelRun> {
    let data = case.dataset().expect("case has a dataset").to_series();
    let model = fit(&data, r, variant, case.nu())?;
    let restored = model.predict(case.horizon())?;
    let n = data.len();
    let report = evaluate(data.values(), &restored.values()[..n], case.nu())?;
    let rel = relative_errors(data.values(), &restored.values()[..n])?;
    Ok(ModelRun {
        predicted: restored.iter().map(|(l, v)| (l, *v)).collect(),
        relerr: data.labels().iter().copied().zip(rel).collect(),
        report,
    })
}

fn model_quantity(run: &ModelRun, cell: &ExpectedCell) -> Option<f64> {
    let label = || cell.row.parse::<Label>().ok();
    match cell.quantity {
        Quantity::Value => run.predicted.get(&label()?).copied(),
        Quantity::RelErr => run.relerr.get(&label()?).copied(),
        Quantity::Rmspepr => Some(run.report.rmspepr),
        Quantity::Rmspepo => run.report.rmspepo,
        Quantity::Rmspe => Some(run.report.rmspe),
        Quantity::Ia => Some(run.report.ia),
        Quantity::Ae => Some(run.report.ae),
        Quantity::Mae => Some(run.report.mae),
        Quantity::Eps1 | Quantity::Eps1OverA => None,
    }
}

fn gap_quantity(cell: &ExpectedCell) -> Option<f64> {
    let a: f64 = cell.row.parse().ok()?;
    let opt = optimize_params(&BaseParams::new(a, 0.0, 0.0)).ok()?;
    let eps = opt.alpha - a;
    match cell.quantity {
        Quantity::Eps1 => Some(eps),
        Quantity::Eps1OverA => Some(eps / a),
        _ => None,
    }
}

fn judge(cell: &'static ExpectedCell, computed: Option<f64>) -> CellOutcome {
    let tolerance = Tolerance::for_quantity(cell.quantity);
    let (delta, verdict) = match computed {
        Some(v) => {
            let (d, ok) = tolerance.check(v, &cell.expected);
            (Some(d), if ok { Verdict::Pass } else { Verdict::Fail })
        }
        None => (None, Verdict::Fail),
    };
    CellOutcome {
        cell,
        computed,
        delta,
        tolerance,
        verdict,
    }
}

/// Recomputes every bundled cell of `case`.
///
/// A model that fails to fit marks all of its cells as failures; it does not
/// abort the rest of the case.
pub fn reproduce(case: CaseId) -> CaseReport {
    let mut runs: BTreeMap<(String, String), Option<ModelRun>> = BTreeMap::new();
    let mut outcomes = Vec::new();
    for cell in cells_for(case) {
        if case == CaseId::Table1 {
            outcomes.push(judge(cell, gap_quantity(cell)));
            continue;
        }
        let Some(variant) = cell.variant() else {
            outcomes.push(CellOutcome {
                cell,
                computed: None,
                delta: None,
                tolerance: Tolerance::for_quantity(cell.quantity),
                verdict: Verdict::External,
            });
            continue;
        };
        let run = runs
            .entry((cell.model.clone(), cell.order.clone()))
            .or_insert_with(|| {
                cell.order_value()
                    .and_then(|r| run_model(case, variant, r).ok())
            });
        let computed = run.as_ref().and_then(|run| model_quantity(run, cell));
        outcomes.push(judge(cell, computed));
    }
    CaseReport { case, outcomes }
}
