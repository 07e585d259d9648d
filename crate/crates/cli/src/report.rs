//! Report JSON: rate estimates, theoretical constants and verdicts, plus
//! the library version and the full configuration for reproducibility.

use serde_json::{json, Value};

use circumfeas_core::diagnostics::{RateOutcome, RateReport, TheoryConstants};
use circumfeas_core::experiments::{ComparisonReport, Verdicts};
use circumfeas_core::Trace;

use crate::config::RunConfig;

fn rate_report_json(r: &RateReport) -> Value {
    json!({
        "kind": "report",
        "classification": r.classification.name(),
        "q_hat": r.q_hat,
        "r_hat": r.r_hat,
        "linear_constant": r.linear_constant,
        "window": [r.window.0, r.window.1],
        "q_tail_len": r.q_tail.len(),
    })
}

pub fn outcome_json(outcome: &RateOutcome) -> Value {
    match outcome {
        RateOutcome::Report(r) => rate_report_json(r),
        RateOutcome::ShortSuperlinear { ratios, final_ratio } => json!({
            "kind": "short_superlinear",
            "classification": "superlinear",
            "final_ratio": final_ratio,
            "ratios": ratios,
        }),
        RateOutcome::FiniteConvergence { iterations, final_error } => json!({
            "kind": "finite_convergence",
            "classification": "superlinear",
            "iterations": iterations,
            "final_error": final_error,
        }),
    }
}

fn constants_json(c: &TheoryConstants) -> Value {
    json!({
        "omega": c.omega,
        "map_bound": c.map_bound,
        "crm_bound": c.crm_bound,
        "gamma": c.gamma,
        "gamma_hat": c.gamma_hat,
        "crm_family1_bound": c.crm_family1_bound,
        "map_family2_constant": c.map_family2_constant,
        "hessian_gamma_lower": c.hessian_gamma_lower,
    })
}

fn verdicts_json(v: &Verdicts) -> Value {
    json!({
        "map_class_ok": v.map_class_ok,
        "crm_class_ok": v.crm_class_ok,
        "map_constant_ok": v.map_constant_ok,
        "crm_constant_ok": v.crm_constant_ok,
        "fejer_ok": v.fejer_ok,
        "dominance_ok": v.dominance_ok,
        "feasibility_ok": v.feasibility_ok,
        "exploratory": v.exploratory,
        "all_pass": v.all_pass(),
    })
}

fn trace_json(t: &Trace) -> Value {
    json!({
        "method": t.method.name(),
        "iterations": t.len() - 1,
        "stop_reason": t.stop_reason.name(),
        "fallback_iterations": t.fallback_iters,
        "final_dist_to_k": t.dist_to_k.last(),
    })
}

pub fn comparison_json(report: &ComparisonReport, config: Option<&RunConfig>) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": config.map(|c| serde_json::to_value(c).expect("config serializes")),
        "label": report.label,
        "family": report.family.name(),
        "reference": report.reference.as_ref().map(|p| p.coords().to_vec()),
        "map": {
            "rates": outcome_json(&report.map_outcome),
            "run": trace_json(&report.map_trace),
        },
        "crm": {
            "rates": outcome_json(&report.crm_outcome),
            "run": trace_json(&report.crm_trace),
        },
        "constants": constants_json(&report.constants),
        "verdicts": verdicts_json(&report.verdicts),
    })
}
