//! Empirical convergence-rate estimation and the theoretical asymptotic
//! constants it is compared against.
//!
//! Rates follow the usual Q/R notions for a sequence `y^k -> y*`:
//! `q = limsup |y^{k+1}-y*| / |y^k-y*|` and `r = limsup |y^k-y*|^{1/k}`.
//! Finite traces need explicit windowing: `q_hat` is a tail median of
//! consecutive ratios and `r_hat` the slope of a log-linear fit over the
//! same tail, both cut off above the floating-point floor.

use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::geometry::Point;
use crate::math;
use crate::rng::SplitMix64;
use crate::sets::{EpigraphSmooth, RadialFunction, SetOracle};
use crate::solvers::{Problem, StopReason, Trace};

/// Minimum usable error entries for a windowed rate estimate.
pub const MIN_RATE_ENTRIES: usize = 6;

/// Rate classes of a measured error sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Superlinear,
    Linear,
    Sublinear,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Superlinear => "superlinear",
            Classification::Linear => "linear",
            Classification::Sublinear => "sublinear",
        }
    }
}

/// Classification cutoffs; defaults separate the predicted constants of the
/// example families (0.2, 0.5, 0.75) from both extremes.
#[derive(Clone, Copy, Debug)]
pub struct ClassifyThresholds {
    pub superlinear_cutoff: f64,
    pub sublinear_cutoff: f64,
}

impl Default for ClassifyThresholds {
    fn default() -> Self {
        ClassifyThresholds {
            superlinear_cutoff: 0.05,
            sublinear_cutoff: 0.95,
        }
    }
}

/// Windowed rate estimates for one error sequence.
#[derive(Clone, Debug)]
pub struct RateReport {
    /// Consecutive ratios `e_{k+1} / e_k` over the whole usable sequence.
    pub q_tail: Vec<f64>,
    /// Tail median of `q_tail`.
    pub q_hat: f64,
    /// `exp` of the log-linear fit slope over the tail window.
    pub r_hat: f64,
    pub classification: Classification,
    /// Present iff classified linear; equals `q_hat`.
    pub linear_constant: Option<f64>,
    /// Error-sequence index range `[start, end]` the tail statistics used.
    pub window: (usize, usize),
}

/// Distances of the iterates to a reference point, cut at the floating-point
/// floor `max(1e-13, 1e-10 * e_0)`.
///
/// With no reference the final iterate stands in and the last three entries
/// are dropped (self-reference bias). Fails with insufficient data when
/// fewer than [`MIN_RATE_ENTRIES`] usable entries remain.
pub fn error_sequence(trace: &Trace, reference: Option<&Point>) -> Result<Vec<f64>, Error> {
    let e = usable_errors(trace, reference);
    if e.len() < MIN_RATE_ENTRIES {
        return Err(Error::InsufficientData {
            needed: MIN_RATE_ENTRIES,
            got: e.len(),
        });
    }
    Ok(e)
}

fn raw_errors(trace: &Trace, reference: Option<&Point>) -> (Vec<f64>, bool) {
    match reference {
        Some(y) => (trace.iterates.iter().map(|x| x.dist(y)).collect(), false),
        None => {
            let y = trace.final_point();
            (trace.iterates.iter().map(|x| x.dist(y)).collect(), true)
        }
    }
}

pub(crate) fn usable_errors(trace: &Trace, reference: Option<&Point>) -> Vec<f64> {
    let (e, self_ref) = raw_errors(trace, reference);
    drop_tail(&e, self_ref, 3, None)
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("no NaN in ratios"));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn tail_window_len(num_ratios: usize) -> usize {
    (num_ratios / 3).clamp(1, 10)
}

fn check_positive(errors: &[f64]) -> Result<(), Error> {
    if errors.len() < MIN_RATE_ENTRIES {
        return Err(Error::InsufficientData {
            needed: MIN_RATE_ENTRIES,
            got: errors.len(),
        });
    }
    if errors.iter().any(|e| e.is_nan() || *e <= 0.0 || !e.is_finite()) {
        return Err(Error::InvalidArgument(
            "error entries must be positive and finite".into(),
        ));
    }
    Ok(())
}

/// Q-rate fields: consecutive ratios, the tail-median estimate, and the
/// window it used (the median resists single-step jitter).
#[derive(Clone, Debug)]
pub struct QEstimate {
    pub q_tail: Vec<f64>,
    pub q_hat: f64,
    pub window: (usize, usize),
}

pub fn q_estimate(errors: &[f64]) -> Result<QEstimate, Error> {
    check_positive(errors)?;
    let q_tail: Vec<f64> = errors.windows(2).map(|w| w[1] / w[0]).collect();
    let w = tail_window_len(q_tail.len());
    let q_hat = median(&q_tail[q_tail.len() - w..]);
    Ok(QEstimate {
        q_hat,
        window: (errors.len() - 1 - w, errors.len() - 1),
        q_tail,
    })
}

/// R-rate estimate: `exp` of the least-squares slope of `ln e_k` against `k`
/// over the tail window; equals the decay base for geometric sequences.
pub fn r_estimate(errors: &[f64]) -> Result<f64, Error> {
    check_positive(errors)?;
    let w = tail_window_len(errors.len() - 1);
    let tail = &errors[errors.len() - 1 - w..];
    let n = tail.len() as f64;
    let xbar = (tail.len() - 1) as f64 / 2.0;
    let ybar: f64 = tail.iter().map(|e| math::ln(*e)).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, e) in tail.iter().enumerate() {
        let dx = i as f64 - xbar;
        num += dx * (math::ln(*e) - ybar);
        den += dx * dx;
    }
    Ok(math::exp(num / den))
}

/// Applies the thresholds: superlinear needs a small `q_hat` *and* a tail
/// that is still falling; a `q_hat` near one is sublinear; anything between
/// is linear with constant `q_hat`.
pub fn classify_rate(
    q_hat: f64,
    window_ratios: &[f64],
    thresholds: &ClassifyThresholds,
) -> Classification {
    let decreasing = window_ratios.len() <= 1
        || window_ratios.last().expect("nonempty") < window_ratios.first().expect("nonempty");
    if q_hat < thresholds.superlinear_cutoff && decreasing {
        Classification::Superlinear
    } else if q_hat > thresholds.sublinear_cutoff {
        Classification::Sublinear
    } else {
        Classification::Linear
    }
}

/// Full windowed report for one positive error sequence.
pub fn rate_report(errors: &[f64]) -> Result<RateReport, Error> {
    rate_report_with(errors, &ClassifyThresholds::default())
}

pub fn rate_report_with(
    errors: &[f64],
    thresholds: &ClassifyThresholds,
) -> Result<RateReport, Error> {
    let q = q_estimate(errors)?;
    let r_hat = r_estimate(errors)?;
    let w = tail_window_len(q.q_tail.len());
    let classification = classify_rate(q.q_hat, &q.q_tail[q.q_tail.len() - w..], thresholds);
    Ok(RateReport {
        q_hat: q.q_hat,
        r_hat,
        classification,
        linear_constant: (classification == Classification::Linear).then_some(q.q_hat),
        window: q.window,
        q_tail: q.q_tail,
    })
}

/// Rate assessment of a trace, tolerant of runs that converge in a handful
/// of steps.
#[derive(Clone, Debug)]
pub enum RateOutcome {
    /// Enough usable entries for the windowed estimators.
    Report(RateReport),
    /// Converged so fast that fewer than [`MIN_RATE_ENTRIES`] entries stayed
    /// above the floor, but the measured ratios are collapsing; treated as
    /// superlinear.
    ShortSuperlinear { ratios: Vec<f64>, final_ratio: f64 },
    /// Converged with at most one usable entry (finite or one-step
    /// convergence).
    FiniteConvergence { iterations: usize, final_error: f64 },
}

impl RateOutcome {
    pub fn classification(&self) -> Classification {
        match self {
            RateOutcome::Report(r) => r.classification,
            RateOutcome::ShortSuperlinear { .. } | RateOutcome::FiniteConvergence { .. } => {
                Classification::Superlinear
            }
        }
    }

    pub fn q_hat(&self) -> Option<f64> {
        match self {
            RateOutcome::Report(r) => Some(r.q_hat),
            _ => None,
        }
    }
}

/// Rates a trace against `reference` (or the final iterate when absent).
///
/// Runs that stopped by convergence but left fewer than
/// [`MIN_RATE_ENTRIES`] entries above the floor are classified through the
/// short path: collapsing ratios with a final ratio at or below `1e-3`
/// count as superlinear, anything else stays insufficient data.
pub fn assess(trace: &Trace, reference: Option<&Point>) -> Result<RateOutcome, Error> {
    let (raw, self_ref) = raw_errors(trace, reference);
    let converged = matches!(
        trace.stop_reason,
        StopReason::TolReached | StopReason::FixedPoint
    );
    assess_errors(&raw, self_ref, converged)
}

/// [`assess`] over a raw error list: `self_ref` marks distances measured
/// against the final entry (subject to self-reference bias), `converged`
/// whether the producing run actually reached its tolerance (gates the
/// short-run path).
pub fn assess_errors(raw: &[f64], self_ref: bool, converged: bool) -> Result<RateOutcome, Error> {
    let usable = drop_tail(raw, self_ref, 3, None);
    if usable.len() >= MIN_RATE_ENTRIES {
        return Ok(RateOutcome::Report(rate_report(&usable)?));
    }
    if !converged {
        return Err(Error::InsufficientData {
            needed: MIN_RATE_ENTRIES,
            got: usable.len(),
        });
    }
    // A converged run pins the limit to within the solver tolerance, so the
    // self-reference bias only taints the exact-zero final entry; dropping
    // one entry instead of three keeps the collapsing tail visible. With an
    // exact external reference the entries are trustworthy all the way down
    // to the absolute 1e-12 floor.
    let usable = if self_ref {
        drop_tail(raw, true, 1, None)
    } else {
        let floor = match raw.first() {
            Some(e0) => (1e-14 * e0).max(1e-12),
            None => 1e-12,
        };
        drop_tail(raw, false, 0, Some(floor))
    };
    if usable.len() <= 1 {
        return Ok(RateOutcome::FiniteConvergence {
            iterations: raw.len().saturating_sub(1),
            final_error: raw.last().copied().unwrap_or(0.0),
        });
    }
    let ratios: Vec<f64> = usable.windows(2).map(|w| w[1] / w[0]).collect();
    let final_ratio = *ratios.last().expect("nonempty");
    let collapsing = ratios.windows(2).all(|w| w[1] <= w[0] * 1.001);
    if final_ratio <= 1e-3 && collapsing {
        Ok(RateOutcome::ShortSuperlinear {
            ratios,
            final_ratio,
        })
    } else {
        Err(Error::InsufficientData {
            needed: MIN_RATE_ENTRIES,
            got: usable.len(),
        })
    }
}

fn drop_tail(raw: &[f64], self_ref: bool, drop: usize, floor_override: Option<f64>) -> Vec<f64> {
    let mut e = raw.to_vec();
    if self_ref {
        e.truncate(e.len().saturating_sub(drop));
    }
    let floor = match (floor_override, e.first()) {
        (Some(f), _) => f,
        (None, Some(e0)) => (1e-10 * e0).max(1e-13),
        (None, None) => return e,
    };
    while e.last().is_some_and(|last| *last <= floor) {
        e.pop();
    }
    e
}

/// Largest one-step increase of the distance to any witness along the trace.
///
/// Witnesses must lie in `K` and `U` at tolerance `1e-8`. A compliant
/// (Fejer monotone) run returns a value at or below `~1e-10`.
pub fn fejer_check(trace: &Trace, witnesses: &[Point], problem: &Problem) -> Result<f64, Error> {
    if witnesses.is_empty() {
        return Err(Error::InvalidArgument("no witnesses given".into()));
    }
    for w in witnesses {
        if !problem.k().contains(w, 1e-8)? || !problem.u().contains(w, 1e-8)? {
            return Err(Error::InvalidArgument(
                "witness is outside the intersection at tolerance 1e-8".into(),
            ));
        }
    }
    let mut worst = f64::NEG_INFINITY;
    for w in witnesses {
        for pair in trace.iterates.windows(2) {
            worst = worst.max(pair[1].dist(w) - pair[0].dist(w));
        }
    }
    if worst == f64::NEG_INFINITY {
        worst = 0.0;
    }
    Ok(worst)
}

/// Empirical lower estimate of the error-bound parameter
/// `omega = inf dist(x, K) / dist(x, K cap U)` over `x in U`.
///
/// Samples `samples` random directions inside `U` at every radius of
/// `radius_schedule` around the known solution, which must be the single
/// point of `K cap U`; a sampled point of `U` found inside `K` at positive
/// radius disproves that and aborts with `UnsupportedProblem`. Distances to
/// the intersection are therefore distances to the anchor.
pub fn eb_omega_estimate(
    problem: &Problem,
    samples: usize,
    radius_schedule: &[f64],
    seed: u64,
) -> Result<f64, Error> {
    if samples < 100 {
        return Err(Error::InvalidArgument("need at least 100 samples".into()));
    }
    if radius_schedule.is_empty()
        || radius_schedule
            .iter()
            .any(|r| r.is_nan() || *r <= 0.0 || !r.is_finite())
    {
        return Err(Error::InvalidArgument(
            "radius_schedule must be nonempty with positive finite radii".into(),
        ));
    }
    let anchor = problem.known_solution().ok_or_else(|| {
        Error::InvalidArgument("known_solution required as the intersection anchor".into())
    })?;
    let basis: Vec<Point> = match problem.u() {
        SetOracle::Affine(m) => m.basis().to_vec(),
        SetOracle::Diagonal(d) => {
            let (n, m) = (d.block(), d.copies());
            let scale = 1.0 / math::sqrt(m as f64);
            (0..n)
                .map(|j| {
                    let mut coords = alloc::vec![0.0; n * m];
                    for i in 0..m {
                        coords[i * n + j] = scale;
                    }
                    Point::new(coords)
                })
                .collect()
        }
        _ => {
            return Err(Error::UnsupportedProblem(
                "omega estimation needs an affine-manifold U".into(),
            ))
        }
    };
    if basis.is_empty() {
        return Err(Error::InvalidArgument(
            "U is a single point; no directions to sample".into(),
        ));
    }

    let mut rng = SplitMix64::new(seed);
    let mut omega = f64::INFINITY;
    for &rho in radius_schedule {
        for _ in 0..samples {
            let mut dir = Point::zeros(anchor.dim());
            let mut norm = 0.0;
            for _ in 0..16 {
                dir = Point::zeros(anchor.dim());
                for b in &basis {
                    dir = dir.add_scaled(rng.next_normal(), b);
                }
                norm = dir.norm();
                if norm > 1e-8 {
                    break;
                }
            }
            let x = anchor.add_scaled(rho / norm, &dir);
            let dist_k = problem.k().dist(&x)?;
            if dist_k <= 1e-12 * (1.0 + rho) {
                return Err(Error::UnsupportedProblem(
                    "sampled a second point of K cap U; the intersection is not a singleton"
                        .into(),
                ));
            }
            omega = omega.min(dist_k / rho);
        }
    }
    Ok(omega)
}

const GAMMA_PROBES: [f64; 6] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];

fn gamma_probe_values<F, G>(value: F, slope: G) -> Result<Vec<f64>, Error>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let mut vals = Vec::with_capacity(GAMMA_PROBES.len());
    for &t in &GAMMA_PROBES {
        let v = value(t);
        let s = slope(t);
        if s == 0.0 {
            if v == 0.0 {
                // Both value and slope underflowed; the ratio has vanished.
                vals.push(0.0);
                continue;
            }
            return Err(Error::InvalidArgument(format!(
                "zero derivative at probe t = {t:e} with nonzero value; \
                 strict convexity away from 0 is violated"
            )));
        }
        vals.push(v / s);
    }
    Ok(vals)
}

/// Picks the value after the smallest successive change, i.e. the last probe
/// before floating-point cancellation starts to dominate.
fn last_stable(vals: &[f64]) -> f64 {
    let mut best = 1;
    let mut best_diff = f64::INFINITY;
    for i in 1..vals.len() {
        let d = (vals[i] - vals[i - 1]).abs();
        if d < best_diff {
            best_diff = d;
            best = i;
        }
    }
    vals[best]
}

fn vanishing(vals: &[f64]) -> bool {
    vals.windows(2).all(|w| w[1] <= w[0]) && *vals.last().expect("nonempty") < 1e-6
}

/// Limit `phi(t) / (t phi'(t))` as `t -> 0`, probed at
/// `t = 1e-2, ..., 1e-7` with a stability-based extrapolation.
///
/// Returns `0` when the probed values decrease below `1e-6`, the flag for
/// profiles too flat at the origin to admit a linear CRM rate.
pub fn gamma_hat(phi: &RadialFunction) -> Result<f64, Error> {
    let vals = gamma_probe_values(|t| phi.phi(t), |t| t * phi.dphi(t))?;
    if vanishing(&vals) {
        return Ok(0.0);
    }
    Ok(last_stable(&vals))
}

/// Per-direction limit estimates of `f(x) / (|x| |grad f(x)|)` as `x -> 0`.
#[derive(Clone, Debug)]
pub struct GammaEstimate {
    /// Minimum over the sampled directions (conservative lower estimate).
    pub value: f64,
    pub per_direction: Vec<f64>,
    /// Max minus min over directions.
    pub spread: f64,
    /// Set when the spread exceeds `1e-3`, i.e. the limit looks
    /// direction-dependent.
    pub direction_dependent: bool,
}

/// Directional probe of the limit in `gamma_hat`'s smooth generalization,
/// evaluated along each given direction and minimized over them.
pub fn gamma_limit(epi: &EpigraphSmooth, directions: &[Point]) -> Result<GammaEstimate, Error> {
    if directions.is_empty() {
        return Err(Error::InvalidArgument("no directions given".into()));
    }
    let n = epi.base_dim();
    let mut per_direction = Vec::with_capacity(directions.len());
    for d in directions {
        crate::geometry::check_dim(n, d.dim())?;
        let norm = d.norm();
        if norm <= 1e-12 {
            return Err(Error::InvalidArgument("zero direction".into()));
        }
        let unit: Vec<f64> = d.coords().iter().map(|c| c / norm).collect();
        let vals = gamma_probe_values(
            |t| {
                let x: Vec<f64> = unit.iter().map(|c| c * t).collect();
                epi.f(&x)
            },
            |t| {
                let x: Vec<f64> = unit.iter().map(|c| c * t).collect();
                let g = epi.grad(&x);
                t * math::sqrt(g.iter().map(|c| c * c).sum())
            },
        )?;
        per_direction.push(if vanishing(&vals) {
            0.0
        } else {
            last_stable(&vals)
        });
    }
    let value = per_direction.iter().copied().fold(f64::INFINITY, f64::min);
    let max = per_direction
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let spread = max - value;
    Ok(GammaEstimate {
        value,
        per_direction,
        spread,
        direction_dependent: spread > 1e-3,
    })
}

/// Smallest positive root of a crossing-family profile, found by bisection
/// after geometric bracket expansion from `t = 1`; the root satisfies
/// `phi(t*) = 0` with `phi'(t*) > 0`.
pub fn family2_root(phi: &RadialFunction) -> Result<(f64, f64), Error> {
    let at_zero = phi.phi(0.0);
    if at_zero.is_nan() || at_zero >= 0.0 {
        return Err(Error::InvalidInstance(
            "family 2 root search requires phi(0) < 0".into(),
        ));
    }
    let mut hi = 1.0f64;
    let mut expansions = 0;
    while phi.phi(hi) < 0.0 {
        if phi.domain_radius().is_finite() && hi >= phi.domain_radius() {
            return Err(Error::InvalidInstance(
                "phi has no positive root inside its domain".into(),
            ));
        }
        expansions += 1;
        if expansions > 64 {
            return Err(Error::InvalidInstance(
                "phi has no positive root in the expanded bracket".into(),
            ));
        }
        hi = (hi * 2.0).min(phi.domain_radius());
    }
    let mut lo = 0.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = phi.phi(mid);
        if v.abs() <= 1e-15 * (1.0 + mid) || (hi - lo) <= f64::EPSILON * (1.0 + hi) {
            let d = phi.dphi(mid);
            if d.is_nan() || d <= 0.0 {
                return Err(Error::InvalidInstance(
                    "phi'(t*) must be positive at the root".into(),
                ));
            }
            return Ok((mid, d));
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    let d = phi.dphi(mid);
    if d.is_nan() || d <= 0.0 {
        return Err(Error::InvalidInstance(
            "phi'(t*) must be positive at the root".into(),
        ));
    }
    Ok((mid, d))
}

/// The closed-form bounds and constants an instance admits.
#[derive(Clone, Copy, Debug, Default)]
pub struct TheoryConstants {
    /// Error-bound parameter, when known analytically.
    pub omega: Option<f64>,
    /// `sqrt(1 - omega^2)`: linear-rate bound shared by both methods under
    /// the error bound.
    pub map_bound: Option<f64>,
    /// `sqrt((1 - omega^2) / (1 + omega^2))`: the strictly better CRM bound.
    pub crm_bound: Option<f64>,
    /// Limit of `f / (|x| |grad f|)` at the origin (tangential families).
    pub gamma: Option<f64>,
    /// Radial specialization `lim phi / (t phi')`; `0` flags a profile too
    /// flat for a linear rate.
    pub gamma_hat: Option<f64>,
    /// CRM asymptotic-constant bound for tangential families:
    /// `1 - gamma_hat` in the radial case, `sqrt(1 - gamma^2)` otherwise.
    pub crm_family1_bound: Option<f64>,
    /// MAP asymptotic constant for crossing families,
    /// `1 / (1 + t* phi'(t*)^2)`.
    pub map_family2_constant: Option<f64>,
    /// Lower bound `lambda_min / (2 lambda_max)` on gamma for twice
    /// differentiable `f` with nonsingular Hessian at the minimizer.
    pub hessian_gamma_lower: Option<f64>,
}

/// Inputs declaring what is analytically known about an instance.
#[derive(Default)]
pub struct TheoryInputs<'a> {
    pub omega: Option<f64>,
    pub radial: Option<&'a RadialFunction>,
    /// Marks the radial profile as a crossing-family one (`phi(0) < 0`).
    pub family2: bool,
    pub smooth: Option<(&'a EpigraphSmooth, &'a [Point])>,
    /// `(lambda_min, lambda_max)` of the Hessian at the minimizer.
    pub hessian_eigs: Option<(f64, f64)>,
}

/// Fills every constant computable from the declared inputs.
pub fn theory_constants(inputs: &TheoryInputs<'_>) -> Result<TheoryConstants, Error> {
    let mut out = TheoryConstants::default();
    if let Some(w) = inputs.omega {
        if !(w > 0.0 && w < 1.0) {
            return Err(Error::InvalidArgument("omega must lie in (0, 1)".into()));
        }
        out.omega = Some(w);
        out.map_bound = Some(math::sqrt(1.0 - w * w));
        out.crm_bound = Some(math::sqrt((1.0 - w * w) / (1.0 + w * w)));
    }
    if let Some(rf) = inputs.radial {
        if inputs.family2 {
            let (t_star, slope) = family2_root(rf)?;
            out.map_family2_constant = Some(1.0 / (1.0 + t_star * slope * slope));
        } else {
            let gh = gamma_hat(rf)?;
            out.gamma_hat = Some(gh);
            out.gamma = Some(gh);
            if gh > 0.0 {
                out.crm_family1_bound = Some(1.0 - gh);
            }
        }
    }
    if let Some((epi, dirs)) = inputs.smooth {
        let g = gamma_limit(epi, dirs)?;
        out.gamma = Some(g.value);
        if g.value > 0.0 {
            out.crm_family1_bound = Some(math::sqrt(1.0 - g.value * g.value));
        }
    }
    if let Some((lmin, lmax)) = inputs.hessian_eigs {
        if !(lmin > 0.0 && lmax >= lmin) {
            return Err(Error::InvalidArgument(
                "hessian eigenvalue bounds must satisfy 0 < lambda_min <= lambda_max".into(),
            ));
        }
        out.hessian_gamma_lower = Some(lmin / (2.0 * lmax));
    }
    Ok(out)
}
