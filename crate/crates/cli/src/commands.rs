use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use greycast::fixtures::CaseId;
use greycast::grey_models::OrderSearchRecord;
use greycast::order_select::{minimum, profile_csv};
use greycast::reproduce::reproduce;
use greycast::validation_harness::{sweep_csv, ALPHA_DEAD_ZONE};
use greycast::{
    evaluate, fit, parse_dataset, profile, relative_errors, run_sweep, summarize, DatasetFile,
    DrawPolicy, FittedModel64, OrderSearchConfig64, Series64, SweepConfig,
};

use crate::args::{
    CaseArg, EvaluateArgs, FitArgs, ForecastArgs, ModelOpts, OrderArg, ReproduceArgs, SweepArgs,
};
use crate::error::CliError;

pub const SEED_ENV: &str = "GREYCAST_SEED";

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn load(opts: &ModelOpts) -> Result<(DatasetFile, Series64, usize), CliError> {
    let data = parse_dataset(&opts.input)?;
    let series = data.to_series();
    let nu = opts.train.unwrap_or(series.len());
    Ok((data, series, nu))
}

/// Fits the model described by `opts`, searching the order when asked.
fn fit_spec(opts: &ModelOpts, series: &Series64, nu: usize) -> Result<FittedModel64, CliError> {
    match opts.order {
        OrderArg::Fixed(r) => Ok(fit(series, r, opts.model, nu)?),
        OrderArg::Auto => {
            let config = OrderSearchConfig64::new(opts.model, nu)
                .with_objective(opts.objective)
                .with_step(opts.step);
            let points = profile(series, &config)?;
            if let Some(path) = &opts.profile {
                write_file(path, &profile_csv(&points))?;
            }
            let best = minimum(&points)?;
            let model = fit(series, best.r, opts.model, nu)?.with_order_search(OrderSearchRecord {
                objective: opts.objective,
                value: best.objective_value,
                step: opts.step,
            });
            Ok(model)
        }
    }
}

fn describe_model(model: &FittedModel64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model    {}", model.variant().display_name());
    let _ = writeln!(out, "order    r = {:.4}", model.r());
    if let Some(search) = model.order_search() {
        let _ = writeln!(
            out,
            "search   {} = {:.4}% at step {}",
            search.objective, search.value, search.step
        );
    }
    let _ = writeln!(out, "train    nu = {} of {}", model.nu(), model.n_total());
    let b = model.base();
    let _ = writeln!(out, "a, b, c  {:.4}, {:.4}, {:.4}", b.a, b.b, b.c);
    if let Some(o) = model.opt() {
        let _ = writeln!(
            out,
            "alpha, beta, gamma  {:.4}, {:.4}, {:.4}",
            o.alpha, o.beta, o.gamma
        );
    }
    out
}

fn fitted_table(observed: &Series64, fitted: &[f64], nu: usize) -> String {
    let mut out = format!(
        "{:>10} {:>14} {:>14} {:>10}\n",
        "period", "observed", "fitted", "rel_err"
    );
    let rel = relative_errors(observed.values(), &fitted[..observed.len()]).unwrap_or_default();
    for (i, ((label, obs), (fit, rel))) in observed.iter().zip(fitted.iter().zip(rel)).enumerate() {
        let marker = if i < nu { "" } else { "  holdout" };
        let _ = writeln!(
            out,
            "{label:>10} {obs:>14.4} {fit:>14.4} {rel:>10.4}{marker}"
        );
    }
    out
}

fn metrics_table(report: &greycast::EvaluationReport64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "RMSPEPR  {:.4}%", report.rmspepr);
    if let Some(po) = report.rmspepo {
        let _ = writeln!(out, "RMSPEPO  {po:.4}%");
    }
    let _ = writeln!(out, "RMSPE    {:.4}%", report.rmspe);
    let _ = writeln!(out, "IA       {:.4}", report.ia);
    let _ = writeln!(out, "AE       {:.4}", report.ae);
    let _ = writeln!(out, "MAE      {:.4}", report.mae);
    out
}

pub fn cmd_fit(args: &FitArgs) -> Result<String, CliError> {
    let (_, series, nu) = load(&args.opts)?;
    let model = fit_spec(&args.opts, &series, nu)?;
    write_file(&args.out, &model.to_json())?;
    let fitted = model.predict(0)?;
    let report = evaluate(series.values(), fitted.values(), nu)?;
    let mut out = describe_model(&model);
    out.push('\n');
    out.push_str(&fitted_table(&series, fitted.values(), nu));
    out.push('\n');
    out.push_str(&metrics_table(&report));
    let _ = writeln!(out, "\nwrote {}", args.out.display());
    Ok(out)
}

pub fn forecast_csv(model: &FittedModel64, horizon: usize) -> Result<String, CliError> {
    let restored = model.predict(horizon)?;
    let mut out = String::from("period,predicted\n");
    for (label, v) in restored.iter() {
        let _ = writeln!(out, "{label},{v}");
    }
    Ok(out)
}

pub fn cmd_forecast(args: &ForecastArgs) -> Result<String, CliError> {
    let text = fs::read_to_string(&args.model)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", args.model.display())))?;
    let model = FittedModel64::from_json(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let csv = forecast_csv(&model, args.horizon)?;
    match &args.out {
        Some(path) => {
            write_file(path, &csv)?;
            let restored = model.predict(args.horizon)?;
            let mut out = format!("{:>10} {:>14}\n", "period", "predicted");
            for (i, (label, v)) in restored.iter().enumerate() {
                let marker = if i < model.n_total() {
                    ""
                } else {
                    "  forecast"
                };
                let _ = writeln!(out, "{label:>10} {v:>14.4}{marker}");
            }
            let _ = writeln!(out, "\nwrote {}", path.display());
            Ok(out)
        }
        None => Ok(csv),
    }
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<String, CliError> {
    let (data, series, nu) = load(&args.opts)?;
    let model = fit_spec(&args.opts, &series, nu)?;
    let restored = model.predict(0)?;
    let report = evaluate(series.values(), restored.values(), nu)?;
    let rel = relative_errors(series.values(), restored.values())?;
    if let Some(path) = &args.json {
        let doc = report.to_document(&data.labels(), &rel);
        let text = serde_json::to_string_pretty(&doc).expect("metrics document serializes");
        write_file(path, &text)?;
    }
    if let Some(path) = &args.csv {
        write_file(path, &report.to_csv())?;
    }
    let mut out = describe_model(&model);
    out.push('\n');
    out.push_str(&fitted_table(&series, restored.values(), nu));
    out.push('\n');
    out.push_str(&metrics_table(&report));
    Ok(out)
}

/// Seed from the environment when set, otherwise the argument.
pub fn effective_seed(arg: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Input(format!("{SEED_ENV} must be an unsigned integer, got `{v}`"))
        }),
        Err(_) => Ok(arg),
    }
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<String, CliError> {
    let seed = effective_seed(args.seed)?;
    let mut config = SweepConfig::with_ranges(
        (args.r_min, args.r_max),
        args.r_steps,
        (args.alpha_min, args.alpha_max),
        args.alpha_steps,
        args.points,
        seed,
    );
    if args.once_per_sweep {
        config = config.with_draws(DrawPolicy::PerSweep);
    }
    config
        .validate()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let cells = run_sweep::<f64>(&config).map_err(|e| CliError::Input(e.to_string()))?;
    write_file(&args.out, &sweep_csv(&cells))?;
    let s = summarize(&cells);
    let mut out = format!(
        "sweep seed={seed} grid={}x{} (|alpha| >= {ALPHA_DEAD_ZONE}) points={}\n",
        config.r_grid.len(),
        config.alpha_grid.len(),
        config.n_points
    );
    let _ = writeln!(
        out,
        "cells={} ok={} fit_failed={} max_eps_fagm={:.4e} max_eps_fagmo={:.4e} max_rmspe_fagm={:.4}% max_rmspe_fagmo={:.4}%",
        s.cells, s.ok, s.failed, s.max_eps_fagm, s.max_eps_fagmo, s.max_rmspe_fagm, s.max_rmspe_fagmo
    );
    let _ = writeln!(out, "wrote {}", args.out.display());
    Ok(out)
}

pub fn cmd_reproduce(args: &ReproduceArgs) -> Result<String, CliError> {
    let cases: Vec<CaseId> = match args.case {
        CaseArg::All => CaseId::ALL.to_vec(),
        CaseArg::One(c) => vec![c],
    };
    let mut out = String::new();
    let mut failures = Vec::new();
    for case in cases {
        let report = reproduce(case);
        out.push_str(&report.render());
        out.push('\n');
        for f in report.failures() {
            failures.push(format!(
                "{} {} r={} row {} {}: expected {}, computed {}",
                case,
                f.cell.model,
                f.cell.order,
                f.cell.row,
                f.cell.quantity.name(),
                f.cell.expected,
                f.computed.map_or("-".into(), |v| format!("{v:.4}"))
            ));
        }
    }
    if failures.is_empty() {
        Ok(out)
    } else {
        Err(CliError::Reproduction {
            report: out,
            failures,
        })
    }
}
