//! Command implementations behind the thin argument parser.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use circumfeas_core::diagnostics::{assess_errors, eb_omega_estimate, RateOutcome};
use circumfeas_core::experiments::{
    build_instance, run_comparison_with_budget, ComparisonReport, Family, InstanceKind,
    InstanceSpec,
};
use circumfeas_core::geometry::Point;

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::logging::Logger;
use crate::report::{comparison_json, outcome_json};
use crate::suites::suite;
use crate::traces::{read_trace, write_trace};

/// Flag overrides shared by `run` and `reproduce`.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub out_dir: Option<PathBuf>,
    pub format: Option<String>,
    pub max_iter: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub emit_plot_script: bool,
}

impl Overrides {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(d) = &self.out_dir {
            cfg.out_dir = Some(d.display().to_string());
        }
        if let Some(f) = &self.format {
            cfg.format = Some(f.clone());
        }
        if let Some(m) = self.max_iter {
            cfg.max_iter = Some(m);
        }
        if let Some(t) = self.tol {
            cfg.tol = Some(t);
        }
        if let Some(s) = self.seed {
            cfg.seed = Some(s);
        }
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::io(&format!("creating out dir {}", dir.display()), e))
}

fn slugify(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

/// One-minute wall guard for the (possibly sublinear) baseline runs.
fn wall_budget(deadline: Instant) -> impl FnMut() -> bool {
    move || Instant::now() < deadline
}

fn run_spec(spec: &InstanceSpec, log: &Logger) -> Result<ComparisonReport, CliError> {
    let deadline = Instant::now() + Duration::from_secs(55);
    let mut budget = wall_budget(deadline);
    let report = run_comparison_with_budget(spec, Some(&mut budget))?;
    log.debug(&format!(
        "{}: baseline {} iterations ({}), CRM {} iterations ({})",
        report.label,
        report.map_trace.len() - 1,
        report.map_trace.stop_reason.name(),
        report.crm_trace.len() - 1,
        report.crm_trace.stop_reason.name(),
    ));
    Ok(report)
}

fn outcome_cell(outcome: &RateOutcome) -> String {
    match outcome {
        RateOutcome::Report(r) => format!("{:<11} q={:.6}", r.classification.name(), r.q_hat),
        RateOutcome::ShortSuperlinear { final_ratio, .. } => {
            format!("superlinear ratio={final_ratio:.1e}")
        }
        RateOutcome::FiniteConvergence { iterations, .. } => {
            format!("superlinear ({iterations} iter)")
        }
    }
}

fn failed_checks(report: &ComparisonReport) -> Vec<&'static str> {
    let v = &report.verdicts;
    let mut failed = Vec::new();
    let mut push = |flag: Option<bool>, name: &'static str| {
        if flag == Some(false) {
            failed.push(name);
        }
    };
    push(v.map_class_ok, "map_class");
    push(v.crm_class_ok, "crm_class");
    push(v.map_constant_ok, "map_constant");
    push(v.crm_constant_ok, "crm_constant");
    push(v.fejer_ok, "fejer");
    push(v.dominance_ok, "dominance");
    push(v.feasibility_ok, "feasibility");
    failed
}

fn trace_json_value(trace: &circumfeas_core::Trace, reference: Option<&Point>) -> serde_json::Value {
    let dist_sol: Option<Vec<f64>> = trace.dist_to_solution.clone().or_else(|| {
        reference.map(|y| trace.iterates.iter().map(|x| x.dist(y)).collect())
    });
    serde_json::json!({
        "method": trace.method.name(),
        "stop_reason": trace.stop_reason.name(),
        "iterates": trace.iterates.iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>(),
        "dist_to_solution": dist_sol,
        "dist_to_k": trace.dist_to_k,
    })
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(format!("serializing {}: {e}", path.display())))?;
    std::fs::write(path, text).map_err(|e| CliError::io(&format!("writing {}", path.display()), e))
}

/// Writes the gnuplot companion script for one instance's trace files.
fn write_plot_script(dir: &Path, slug: &str, dim: usize) -> Result<(), CliError> {
    // dist_to_solution sits right after k and the iterate coordinates
    let col = dim + 2;
    let text = format!(
        "# gnuplot script: error decay of {slug}\n\
         set datafile separator ','\n\
         set logscale y\n\
         set xlabel 'iteration k'\n\
         set ylabel 'distance to solution'\n\
         set key left bottom\n\
         plot '{slug}_map.csv' using 1:{col} every ::1 with linespoints title 'MAP', \\\n\
         \x20    '{slug}_crm.csv' using 1:{col} every ::1 with linespoints title 'CRM'\n"
    );
    let path = dir.join(format!("{slug}.gp"));
    std::fs::write(&path, text).map_err(|e| CliError::io(&format!("writing {}", path.display()), e))
}

fn write_artifacts(
    dir: &Path,
    slug: &str,
    report: &ComparisonReport,
    config: Option<&RunConfig>,
    format: OutputFormat,
    emit_plot: bool,
    extras: Option<serde_json::Value>,
) -> Result<(), CliError> {
    ensure_dir(dir)?;
    let reference = report.reference.as_ref();
    match format {
        OutputFormat::Csv => {
            write_trace(&dir.join(format!("{slug}_map.csv")), &report.map_trace, reference)?;
            write_trace(&dir.join(format!("{slug}_crm.csv")), &report.crm_trace, reference)?;
        }
        OutputFormat::Json => {
            write_json(
                &dir.join(format!("{slug}_map_trace.json")),
                &trace_json_value(&report.map_trace, reference),
            )?;
            write_json(
                &dir.join(format!("{slug}_crm_trace.json")),
                &trace_json_value(&report.crm_trace, reference),
            )?;
        }
    }
    let mut json = comparison_json(report, config);
    if let (Some(extras), Some(obj)) = (extras, json.as_object_mut()) {
        obj.insert("extras".into(), extras);
    }
    write_json(&dir.join(format!("{slug}_report.json")), &json)?;
    if emit_plot && format == OutputFormat::Csv {
        write_plot_script(dir, slug, report.map_trace.final_point().dim())?;
    }
    Ok(())
}

/// Supplementary checks for instances with an analytically known error
/// bound: the sampled omega estimate must match.
fn omega_extras(spec: &InstanceSpec) -> Result<Option<(serde_json::Value, bool)>, CliError> {
    if spec.family != Family::TwoLines {
        return Ok(None);
    }
    let inst = build_instance(spec)?;
    let problem = match &inst.kind {
        InstanceKind::Pair(p) => p,
        _ => return Ok(None),
    };
    let expected = inst.meta.omega.expect("two-line instances know omega");
    let measured = eb_omega_estimate(problem, 200, &[1.0, 0.1, 0.01], inst.seed)?;
    let ok = (measured - expected).abs() <= 1e-6;
    Ok(Some((
        serde_json::json!({"omega_hat": measured, "omega": expected, "omega_ok": ok}),
        ok,
    )))
}

/// `run <config.json>`: one instance, trace + report artifacts. Returns
/// whether every defined verdict passed.
pub fn cmd_run(config_path: &Path, overrides: &Overrides, log: &Logger) -> Result<bool, CliError> {
    let mut cfg = RunConfig::from_path(config_path)?;
    overrides.apply(&mut cfg);
    let spec = cfg.to_spec()?;
    let format = cfg.output_format()?;
    let out_dir = PathBuf::from(cfg.out_dir.clone().unwrap_or_else(|| ".".into()));

    log.info(&format!("running {}", cfg.family));
    let report = run_spec(&spec, log)?;
    let (extras, extras_ok) = match omega_extras(&spec)? {
        Some((value, ok)) => (Some(value), ok),
        None => (None, true),
    };
    let slug = slugify(cfg.label.as_deref().unwrap_or(&cfg.family));
    write_artifacts(
        &out_dir,
        &slug,
        &report,
        Some(&cfg),
        format,
        overrides.emit_plot_script,
        extras,
    )?;

    let pass = report.verdicts.all_pass() && extras_ok;
    println!(
        "{}: baseline {} | CRM {} | {}",
        report.label,
        outcome_cell(&report.map_outcome),
        outcome_cell(&report.crm_outcome),
        if report.verdicts.exploratory {
            "EXPLORATORY".to_string()
        } else if pass {
            "PASS".to_string()
        } else {
            format!("FAIL ({})", failed_checks(&report).join(","))
        }
    );
    println!("artifacts in {}", out_dir.display());
    Ok(pass || report.verdicts.exploratory)
}

/// `reproduce <suite>`: executes the named instances, prints the pass/fail
/// table, writes artifacts. Returns whether every non-exploratory row
/// passed.
pub fn cmd_reproduce(
    suite_name: &str,
    overrides: &Overrides,
    log: &Logger,
) -> Result<bool, CliError> {
    let rows = suite(suite_name)?;
    let out_dir = overrides
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("reproduce_{suite_name}")));
    let format = match overrides.format.as_deref() {
        None | Some("csv") => OutputFormat::Csv,
        Some("json") => OutputFormat::Json,
        Some(other) => {
            return Err(CliError::Config(format!(
                "format: expected 'csv' or 'json', got '{other}'"
            )))
        }
    };

    println!(
        "{:<22} {:<26} {:<26} result",
        "instance", "baseline (MAP/SiPM)", "CRM"
    );
    let mut all_pass = true;
    for row in rows {
        let mut spec = row.spec;
        if let Some(m) = overrides.max_iter {
            spec.stop.max_iter = m;
        }
        if let Some(t) = overrides.tol {
            spec.stop.tol_abs = t;
        }
        if let Some(s) = overrides.seed {
            spec.seed = s;
        }
        log.info(&format!("reproducing {}", row.slug));
        let report = run_spec(&spec, log)?;
        let (extras, extras_ok) = match omega_extras(&spec)? {
            Some((value, ok)) => (Some(value), ok),
            None => (None, true),
        };
        write_artifacts(
            &out_dir,
            row.slug,
            &report,
            None,
            format,
            overrides.emit_plot_script,
            extras,
        )?;
        let pass = report.verdicts.all_pass() && extras_ok;
        let result = if report.verdicts.exploratory {
            "EXPL".to_string()
        } else if pass {
            "PASS".to_string()
        } else {
            format!("FAIL ({})", failed_checks(&report).join(","))
        };
        println!(
            "{:<22} {:<26} {:<26} {}",
            row.slug,
            outcome_cell(&report.map_outcome),
            outcome_cell(&report.crm_outcome),
            result
        );
        if !report.verdicts.exploratory {
            all_pass &= pass;
        }
    }
    println!("artifacts in {}", out_dir.display());
    Ok(all_pass)
}

/// `rates <trace.csv>`: re-analyzes an emitted trace and prints the rate
/// outcome as JSON on stdout.
pub fn cmd_rates(trace_path: &Path, log: &Logger) -> Result<bool, CliError> {
    let data = read_trace(trace_path)?;
    let (errors, self_ref): (Vec<f64>, bool) = match &data.dist_to_solution {
        Some(d) => (d.clone(), false),
        None => {
            let last = data.iterates.last().expect("nonempty");
            (data.iterates.iter().map(|p| p.dist(last)).collect(), true)
        }
    };
    log.info(&format!(
        "re-analyzing {} rows from {}",
        errors.len(),
        trace_path.display()
    ));
    // A stored trace is assumed to come from a completed run, so the
    // short-convergence path stays available.
    let outcome = assess_errors(&errors, self_ref, true)?;
    let json = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "trace": trace_path.display().to_string(),
        "entries": errors.len(),
        "self_reference": self_ref,
        "rates": outcome_json(&outcome),
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&json).expect("report serializes")
    );
    Ok(true)
}
