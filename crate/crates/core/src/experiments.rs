//! Reproducible instance families and MAP/CRM head-to-head comparisons.
//!
//! Two epigraph families drive the rate study. In the tangential family the
//! hyperplane `U = {(x, 0)}` supports `K = epi(f)` at the single
//! intersection point, the angle between the sets vanishes there, MAP slows
//! to a sublinear crawl and CRM keeps a linear rate. In the crossing family
//! `f(0) < 0`, so `U` cuts the interior of `K`: MAP is linear with a
//! computable constant while CRM turns superlinear. Two lines at a fixed
//! angle give the classical error-bound benchmark, and the product family
//! exercises the lifted (simultaneous-projection) route.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagnostics::{
    assess, family2_root, fejer_check, theory_constants, Classification, RateOutcome,
    TheoryConstants, TheoryInputs,
};
use crate::error::Error;
use crate::geometry::{AffineManifold, Point};
use crate::math;
use crate::rng::SplitMix64;
use crate::sets::{
    Ball, EpigraphRadial, EpigraphSmooth, Halfspace, RadialFunction, SetOracle,
};
use crate::solvers::{
    crm_step, map_step, product_crm_run, run_with_budget, Budget, Method, Problem, RunTarget,
    StopRule, Trace,
};

/// The instance families of the reproduction suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Family1Radial,
    Family1Smooth,
    Family2Radial,
    TwoLines,
    BallTangent,
    Flat,
    ProductMSets,
    ConjectureProbe,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Family1Radial => "family1_radial",
            Family::Family1Smooth => "family1_smooth",
            Family::Family2Radial => "family2_radial",
            Family::TwoLines => "two_lines",
            Family::BallTangent => "ball_tangent",
            Family::Flat => "flat",
            Family::ProductMSets => "product_m_sets",
            Family::ConjectureProbe => "conjecture_probe",
        }
    }

    pub fn parse(name: &str) -> Result<Self, Error> {
        Ok(match name {
            "family1_radial" => Family::Family1Radial,
            "family1_smooth" => Family::Family1Smooth,
            "family2_radial" => Family::Family2Radial,
            "two_lines" => Family::TwoLines,
            "ball_tangent" => Family::BallTangent,
            "flat" => Family::Flat,
            "product_m_sets" => Family::ProductMSets,
            "conjecture_probe" => Family::ConjectureProbe,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "family: unknown family '{other}'"
                )))
            }
        })
    }
}

/// Named radial profiles constructible from configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiSpec {
    /// `|t|^alpha`
    Power { alpha: f64 },
    /// `1 - sqrt(1 - t^2)` on `[-1, 1]`
    Ballcap,
    /// `exp(-1/t^2)` on `(-1/sqrt(3), 1/sqrt(3))`
    Flat,
    /// `|t|^alpha - c`
    ShiftedPower { alpha: f64, c: f64 },
    /// `cosh(t) - c`
    CoshShift { c: f64 },
}

impl PhiSpec {
    pub fn build(&self) -> Result<RadialFunction, Error> {
        match self {
            PhiSpec::Power { alpha } => RadialFunction::power(*alpha),
            PhiSpec::Ballcap => Ok(RadialFunction::ballcap()),
            PhiSpec::Flat => Ok(RadialFunction::flat()),
            PhiSpec::ShiftedPower { alpha, c } => RadialFunction::shifted_power(*alpha, *c),
            PhiSpec::CoshShift { c } => Ok(RadialFunction::cosh_shift(*c)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            PhiSpec::Power { alpha } => format!("|t|^{alpha}"),
            PhiSpec::Ballcap => "1-sqrt(1-t^2)".into(),
            PhiSpec::Flat => "exp(-1/t^2)".into(),
            PhiSpec::ShiftedPower { alpha, c } => format!("|t|^{alpha}-{c}"),
            PhiSpec::CoshShift { c } => format!("cosh(t)-{c}"),
        }
    }
}

/// Declarative description of one instance run.
#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub family: Family,
    /// Radial profile; defaults per family.
    pub phi: Option<PhiSpec>,
    /// Angle for the two-line family (radians).
    pub theta: Option<f64>,
    /// Base dimension (the epigraph families live in `R^{n+1}`).
    pub n: Option<usize>,
    /// Family size for the product family.
    pub m: Option<usize>,
    /// Diagonal of the quadratic form for the smooth family.
    pub quad_diag: Option<Vec<f64>>,
    /// Ball-center height for the conjecture probe (`< 1` secant,
    /// `= 1` tangent).
    pub secant_height: Option<f64>,
    /// Starting point; defaults per family.
    pub x0: Option<Vec<f64>>,
    pub seed: u64,
    pub stop: StopRule,
    pub label: Option<String>,
}

impl InstanceSpec {
    pub fn new(family: Family) -> Self {
        InstanceSpec {
            family,
            phi: None,
            theta: None,
            n: None,
            m: None,
            quad_diag: None,
            secant_height: None,
            x0: None,
            seed: 0,
            stop: StopRule::default(),
            label: None,
        }
    }
}

/// Everything known analytically about a built instance.
#[derive(Clone, Debug, Default)]
pub struct InstanceMeta {
    pub phi: Option<PhiSpec>,
    /// Ray-restricted limit for crossing-family runs started on a ray.
    pub ray_solution: Option<Point>,
    pub t_star: Option<f64>,
    pub omega: Option<f64>,
    pub hessian_eigs: Option<(f64, f64)>,
    pub quad_diag: Option<Vec<f64>>,
    /// Fixed intersection witness for Fejer/dominance checks.
    pub witness: Option<Point>,
    pub map_prediction: Option<Classification>,
    pub crm_prediction: Option<Classification>,
    /// `(value, tolerance)` the measured MAP `q_hat` should match.
    pub map_expected_constant: Option<(f64, f64)>,
    /// `(value, tolerance)` the measured CRM `q_hat` should match.
    pub crm_expected_constant: Option<(f64, f64)>,
    pub exploratory: bool,
}

/// A built instance: either a two-set problem or an `m`-set family.
#[derive(Debug)]
pub enum InstanceKind {
    Pair(Problem),
    Sets(Vec<SetOracle>),
}

#[derive(Debug)]
pub struct Instance {
    pub label: String,
    pub family: Family,
    pub kind: InstanceKind,
    pub x0: Point,
    pub stop: StopRule,
    pub seed: u64,
    pub meta: InstanceMeta,
}

impl Instance {
    /// Intersection witness usable with the sample point `x` (crossing
    /// families pick the ray-restricted root along `x`).
    fn witness_for(&self, x: &Point) -> Option<Point> {
        if let (Some(t_star), Family::Family2Radial) = (self.meta.t_star, self.family) {
            let n = x.dim() - 1;
            let base = &x.coords()[..n];
            let norm = math::sqrt(base.iter().map(|c| c * c).sum());
            if norm <= 1e-12 {
                return None;
            }
            let mut coords: Vec<f64> = base.iter().map(|c| c * t_star / norm).collect();
            coords.push(0.0);
            return Some(Point::new(coords));
        }
        self.meta.witness.clone()
    }
}

/// Hyperplane `{(x, 0)}` of `R^{n+1}` as an affine oracle.
fn height_zero_hyperplane(n: usize) -> Result<SetOracle, Error> {
    let dirs = (0..n).map(|i| Point::unit(n + 1, i)).collect();
    Ok(SetOracle::Affine(AffineManifold::span(n + 1, dirs)?))
}

fn ray_point(n: usize, value: f64) -> Point {
    let mut coords = vec![0.0; n + 1];
    coords[0] = value;
    Point::new(coords)
}

fn quad_epigraph(diag: &[f64]) -> Result<EpigraphSmooth, Error> {
    if diag.is_empty() || diag.iter().any(|d| d.is_nan() || *d <= 0.0) {
        return Err(Error::InvalidInstance(
            "quad_diag must be a nonempty list of positive entries".into(),
        ));
    }
    let d1: Vec<f64> = diag.to_vec();
    let d2: Vec<f64> = diag.to_vec();
    EpigraphSmooth::new(
        diag.len(),
        alloc::boxed::Box::new(move |x: &[f64]| {
            x.iter().zip(d1.iter()).map(|(xi, di)| di * xi * xi).sum()
        }),
        alloc::boxed::Box::new(move |x: &[f64]| {
            x.iter().zip(d2.iter()).map(|(xi, di)| 2.0 * di * xi).collect()
        }),
    )
}

/// Builds the problem, starting point and metadata for a spec, validating
/// the family assumptions numerically.
pub fn build_instance(spec: &InstanceSpec) -> Result<Instance, Error> {
    let mut meta = InstanceMeta::default();
    let (label, kind, x0) = match spec.family {
        Family::TwoLines => {
            let theta = spec.theta.unwrap_or(core::f64::consts::FRAC_PI_6);
            if !(theta > 0.0 && theta <= core::f64::consts::FRAC_PI_2) {
                return Err(Error::InvalidInstance(
                    "theta must lie in (0, pi/2]".into(),
                ));
            }
            let k = SetOracle::Affine(AffineManifold::span(
                2,
                vec![Point::new(vec![math::cos(theta), math::sin(theta)])],
            )?);
            let u = SetOracle::Affine(AffineManifold::span(2, vec![Point::unit(2, 0)])?);
            let problem = Problem::new(k, u, "two_lines")?.with_known_solution(Point::zeros(2))?;
            let c2 = math::cos(theta) * math::cos(theta);
            meta.omega = Some(math::sin(theta));
            meta.witness = Some(Point::zeros(2));
            meta.map_prediction = Some(Classification::Linear);
            meta.map_expected_constant = Some((c2, 1e-6));
            meta.crm_prediction = Some(Classification::Superlinear);
            let x0 = spec
                .x0
                .clone()
                .map(Point::new)
                .unwrap_or_else(|| Point::new(vec![1.0, 0.0]));
            (
                format!("two_lines(theta={theta:.4})"),
                InstanceKind::Pair(problem),
                x0,
            )
        }
        Family::BallTangent | Family::Family1Radial | Family::Flat => {
            let n = spec.n.unwrap_or(1);
            let phi_spec = spec.phi.clone().unwrap_or(match spec.family {
                Family::BallTangent => PhiSpec::Ballcap,
                Family::Flat => PhiSpec::Flat,
                _ => PhiSpec::Power { alpha: 4.0 },
            });
            let phi = phi_spec.build()?;
            phi.check_family1()?;
            let gamma_hat = crate::diagnostics::gamma_hat(&phi)?;
            let domain = phi.domain_radius();
            let epi = SetOracle::EpigraphRadial(EpigraphRadial::new(phi, n)?);
            let u = height_zero_hyperplane(n)?;
            let problem = Problem::new(epi, u, "family1")?
                .with_known_solution(Point::zeros(n + 1))?;
            meta.witness = Some(Point::zeros(n + 1));
            meta.map_prediction = Some(Classification::Sublinear);
            if gamma_hat > 0.0 {
                meta.crm_prediction = Some(Classification::Linear);
                meta.crm_expected_constant = Some((1.0 - gamma_hat, 0.02));
            } else {
                meta.crm_prediction = Some(Classification::Sublinear);
            }
            let default_reach = if domain.is_finite() { 0.9 * domain } else { 3.0 };
            let x0 = spec
                .x0
                .clone()
                .map(Point::new)
                .unwrap_or_else(|| ray_point(n, default_reach));
            let label = format!("{}(phi={}, n={n})", spec.family.name(), phi_spec.describe());
            meta.phi = Some(phi_spec);
            (label, InstanceKind::Pair(problem), x0)
        }
        Family::Family1Smooth => {
            let diag = spec.quad_diag.clone().unwrap_or_else(|| vec![1.0, 4.0]);
            let n = diag.len();
            let epi = quad_epigraph(&diag)?;
            epi.spot_check_convexity(spec.seed)?;
            let u = height_zero_hyperplane(n)?;
            let problem = Problem::new(SetOracle::EpigraphSmooth(epi), u, "family1_smooth")?
                .with_known_solution(Point::zeros(n + 1))?;
            let lmin = diag.iter().copied().fold(f64::INFINITY, f64::min);
            let lmax = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            // Hessian of sum d_i x_i^2 is diag(2 d).
            meta.hessian_eigs = Some((2.0 * lmin, 2.0 * lmax));
            meta.quad_diag = Some(diag.clone());
            meta.witness = Some(Point::zeros(n + 1));
            meta.map_prediction = Some(Classification::Sublinear);
            meta.crm_prediction = Some(Classification::Linear);
            let x0 = spec
                .x0
                .clone()
                .map(Point::new)
                .unwrap_or_else(|| ray_point(n, 3.0));
            (
                format!("family1_smooth(diag={diag:?})"),
                InstanceKind::Pair(problem),
                x0,
            )
        }
        Family::Family2Radial => {
            let n = spec.n.unwrap_or(1);
            let phi_spec = spec
                .phi
                .clone()
                .unwrap_or(PhiSpec::ShiftedPower { alpha: 2.0, c: 1.0 });
            let phi = phi_spec.build()?;
            phi.check_family2()?;
            let (t_star, slope) = family2_root(&phi)?;
            let epi = SetOracle::EpigraphRadial(EpigraphRadial::new(phi, n)?);
            let u = height_zero_hyperplane(n)?;
            // The limit depends on x0, so no known solution is attached; the
            // ray-restricted root below serves as the rate reference.
            let problem = Problem::new(epi, u, "family2")?;
            let x0 = spec
                .x0
                .clone()
                .map(Point::new)
                .unwrap_or_else(|| ray_point(n, 3.0));
            let base_norm =
                math::sqrt(x0.coords()[..n].iter().map(|c| c * c).sum());
            if base_norm <= 1e-12 {
                return Err(Error::InvalidInstance(
                    "family 2 needs x0 on a ray away from the origin".into(),
                ));
            }
            let mut ray: Vec<f64> = x0.coords()[..n]
                .iter()
                .map(|c| c * t_star / base_norm)
                .collect();
            ray.push(0.0);
            meta.ray_solution = Some(Point::new(ray));
            meta.t_star = Some(t_star);
            meta.map_prediction = Some(Classification::Linear);
            meta.map_expected_constant =
                Some((1.0 / (1.0 + t_star * slope * slope), 0.01));
            meta.crm_prediction = Some(Classification::Superlinear);
            let label = format!("family2_radial(phi={}, n={n})", phi_spec.describe());
            meta.phi = Some(phi_spec);
            (label, InstanceKind::Pair(problem), x0)
        }
        Family::ProductMSets => {
            let m = spec.m.unwrap_or(3);
            if m < 2 {
                return Err(Error::InvalidInstance("product family needs m >= 2".into()));
            }
            let n = spec.n.unwrap_or(2);
            if n < 2 {
                return Err(Error::InvalidInstance(
                    "product family needs base dimension >= 2".into(),
                ));
            }
            // m halfspaces with normals fanned around the circle, all
            // containing the origin with margin 1.
            let sets: Vec<SetOracle> = (0..m)
                .map(|i| {
                    let a = 2.0 * core::f64::consts::PI * i as f64 / m as f64;
                    let mut normal = vec![0.0; n];
                    normal[0] = math::cos(a);
                    normal[1] = math::sin(a);
                    Ok(SetOracle::Halfspace(Halfspace::new(
                        Point::new(normal),
                        1.0,
                    )?))
                })
                .collect::<Result<_, Error>>()?;
            meta.witness = Some(Point::zeros(n));
            let mut start = vec![0.0; n];
            start[0] = 3.0;
            start[1] = 2.0;
            let x0 = spec.x0.clone().map(Point::new).unwrap_or(Point::new(start));
            (
                format!("product_m_sets(m={m}, n={n})"),
                InstanceKind::Sets(sets),
                x0,
            )
        }
        Family::ConjectureProbe => {
            let n = spec.n.unwrap_or(1);
            let h = spec.secant_height.unwrap_or(0.5);
            if !(h > 0.0 && h <= 1.0) {
                return Err(Error::InvalidInstance(
                    "secant_height must lie in (0, 1]".into(),
                ));
            }
            let mut center = vec![0.0; n + 1];
            center[n] = h;
            let k = SetOracle::Ball(Ball::new(Point::new(center), 1.0)?);
            let u = height_zero_hyperplane(n)?;
            let mut problem = Problem::new(k, u, "conjecture_probe")?;
            if h >= 1.0 {
                // tangent contrast case: singleton intersection at the origin
                problem = problem.with_known_solution(Point::zeros(n + 1))?;
            }
            meta.witness = Some(Point::zeros(n + 1));
            meta.exploratory = true;
            let x0 = spec
                .x0
                .clone()
                .map(Point::new)
                .unwrap_or_else(|| ray_point(n, 3.0));
            (
                format!("conjecture_probe(h={h})"),
                InstanceKind::Pair(problem),
                x0,
            )
        }
    };

    if x0.dim()
        != match &kind {
            InstanceKind::Pair(p) => p.dim(),
            InstanceKind::Sets(s) => s[0].dim_ambient(),
        }
    {
        return Err(Error::InvalidInstance("x0 has the wrong dimension".into()));
    }
    if !x0.is_finite() {
        return Err(Error::InvalidInstance("x0 must be finite".into()));
    }

    Ok(Instance {
        label: spec.label.clone().unwrap_or(label),
        family: spec.family,
        kind,
        x0,
        stop: spec.stop,
        seed: spec.seed,
        meta,
    })
}

/// Pass/fail summary of one comparison; `None` marks checks the instance
/// does not define.
#[derive(Clone, Copy, Debug, Default)]
pub struct Verdicts {
    /// Baseline method classified as the family predicts.
    pub map_class_ok: Option<bool>,
    /// CRM classified as the family predicts.
    pub crm_class_ok: Option<bool>,
    /// Measured baseline `q_hat` matches the predicted constant.
    pub map_constant_ok: Option<bool>,
    /// Measured CRM rate at or below its theoretical bound (plus 0.02).
    pub crm_constant_ok: Option<bool>,
    /// No Fejer-monotonicity violation above `1e-10` on either trace.
    pub fejer_ok: Option<bool>,
    /// Per-step dominance of CRM over MAP on sampled points of `U`.
    pub dominance_ok: Option<bool>,
    /// Final point feasible for every set (product family).
    pub feasibility_ok: Option<bool>,
    /// Exploratory rows never gate a suite.
    pub exploratory: bool,
}

impl Verdicts {
    pub fn all_pass(&self) -> bool {
        [
            self.map_class_ok,
            self.crm_class_ok,
            self.map_constant_ok,
            self.crm_constant_ok,
            self.fejer_ok,
            self.dominance_ok,
            self.feasibility_ok,
        ]
        .iter()
        .all(|v| v.unwrap_or(true))
    }
}

/// Everything one head-to-head run produces.
#[derive(Debug)]
pub struct ComparisonReport {
    pub label: String,
    pub family: Family,
    /// Baseline outcome: MAP for pair instances, SiPM for the product
    /// family.
    pub map_outcome: RateOutcome,
    pub crm_outcome: RateOutcome,
    pub constants: TheoryConstants,
    pub verdicts: Verdicts,
    pub map_trace: Trace,
    pub crm_trace: Trace,
    /// Reference the error sequences were measured against (`None` means
    /// self-reference against the final iterate).
    pub reference: Option<Point>,
}

/// Runs MAP and CRM from the same start and produces both rate reports, the
/// theoretical constants and the verdict flags.
pub fn run_comparison(spec: &InstanceSpec) -> Result<ComparisonReport, Error> {
    run_comparison_with_budget(spec, None)
}

/// [`run_comparison`] with an iteration budget applied to the (slow,
/// possibly sublinear) baseline runs; CRM runs are never budgeted.
pub fn run_comparison_with_budget(
    spec: &InstanceSpec,
    mut map_budget: Option<Budget<'_>>,
) -> Result<ComparisonReport, Error> {
    let instance = build_instance(spec)?;
    let (map_trace, crm_trace) = match &instance.kind {
        InstanceKind::Pair(problem) => {
            let map = run_with_budget(
                Method::Map,
                RunTarget::Pair(problem),
                &instance.x0,
                &instance.stop,
                map_budget.take(),
            )?;
            let crm = run_with_budget(
                Method::Crm,
                RunTarget::Pair(problem),
                &instance.x0,
                &instance.stop,
                None,
            )?;
            (map, crm)
        }
        InstanceKind::Sets(sets) => {
            let map = run_with_budget(
                Method::Sipm,
                RunTarget::Family(sets),
                &instance.x0,
                &instance.stop,
                map_budget.take(),
            )?;
            let crm = product_crm_run(sets, &instance.x0, &instance.stop)?;
            (map, crm)
        }
    };

    let reference: Option<Point> = match &instance.kind {
        InstanceKind::Pair(problem) => problem
            .known_solution()
            .cloned()
            .or_else(|| instance.meta.ray_solution.clone()),
        InstanceKind::Sets(_) => None,
    };

    let map_outcome = assess(&map_trace, reference.as_ref())?;
    let crm_outcome = assess(&crm_trace, reference.as_ref())?;
    let constants = instance_constants(&instance)?;
    let verdicts = judge(&instance, &map_outcome, &crm_outcome, &constants, &map_trace, &crm_trace)?;

    Ok(ComparisonReport {
        label: instance.label.clone(),
        family: instance.family,
        map_outcome,
        crm_outcome,
        constants,
        verdicts,
        map_trace,
        crm_trace,
        reference,
    })
}

/// Exploratory probe of the closing conjecture: CRM on a ball whose
/// interior the hyperplane cuts. Same pipeline, verdicts marked
/// exploratory and never part of acceptance.
pub fn conjecture_probe(spec: &InstanceSpec) -> Result<ComparisonReport, Error> {
    let mut spec = spec.clone();
    spec.family = Family::ConjectureProbe;
    run_comparison(&spec)
}

fn instance_constants(instance: &Instance) -> Result<TheoryConstants, Error> {
    let phi = instance
        .meta
        .phi
        .as_ref()
        .map(|s| s.build())
        .transpose()?;
    let smooth = instance
        .meta
        .quad_diag
        .as_ref()
        .map(|d| quad_epigraph(d))
        .transpose()?;
    let directions: Vec<Point> = if let Some(diag) = instance.meta.quad_diag.as_ref() {
        let n = diag.len();
        let mut rng = SplitMix64::new(instance.seed ^ 0x5eed);
        let mut dirs: Vec<Point> = (0..n).map(|i| Point::unit(n, i)).collect();
        for _ in 0..48 {
            let d: Vec<f64> = (0..n).map(|_| rng.next_normal()).collect();
            dirs.push(Point::new(d));
        }
        dirs
    } else {
        Vec::new()
    };
    theory_constants(&TheoryInputs {
        omega: instance.meta.omega,
        radial: phi.as_ref(),
        family2: instance.family == Family::Family2Radial,
        smooth: smooth.as_ref().map(|e| (e, directions.as_slice())),
        hessian_eigs: instance.meta.hessian_eigs,
    })
}

fn classification_matches(outcome: &RateOutcome, predicted: Classification) -> bool {
    match (outcome, predicted) {
        // A run that converges in a handful of steps counts as superlinear.
        (RateOutcome::FiniteConvergence { .. }, Classification::Superlinear) => true,
        (RateOutcome::ShortSuperlinear { .. }, Classification::Superlinear) => true,
        (RateOutcome::Report(r), p) => r.classification == p,
        _ => false,
    }
}

fn judge(
    instance: &Instance,
    map_outcome: &RateOutcome,
    crm_outcome: &RateOutcome,
    constants: &TheoryConstants,
    map_trace: &Trace,
    crm_trace: &Trace,
) -> Result<Verdicts, Error> {
    let mut v = Verdicts {
        exploratory: instance.meta.exploratory,
        ..Default::default()
    };

    if let Some(pred) = instance.meta.map_prediction {
        v.map_class_ok = Some(classification_matches(map_outcome, pred));
    }
    if let Some(pred) = instance.meta.crm_prediction {
        v.crm_class_ok = Some(classification_matches(crm_outcome, pred));
    }
    if let Some((value, tol)) = instance.meta.map_expected_constant {
        v.map_constant_ok = Some(match map_outcome.q_hat() {
            Some(q) => (q - value).abs() <= tol,
            None => false,
        });
    }
    v.crm_constant_ok = crm_constant_check(instance, crm_outcome, constants);

    match &instance.kind {
        InstanceKind::Pair(problem) => {
            let witness = instance
                .witness_for(&instance.x0)
                .or_else(|| Some(crm_trace.final_point().clone()));
            if let Some(w) = witness {
                let a = fejer_check(map_trace, core::slice::from_ref(&w), problem)?;
                let b = fejer_check(crm_trace, core::slice::from_ref(&w), problem)?;
                v.fejer_ok = Some(a <= 1e-10 && b <= 1e-10);
            }
            if problem.u().is_affine_manifold() {
                v.dominance_ok = Some(dominance_check(instance, problem, 64)?);
            }
        }
        InstanceKind::Sets(sets) => {
            let end = crm_trace.final_point();
            let mut feasible = true;
            for s in sets {
                feasible &= s.contains(end, 1e-8)?;
            }
            v.feasibility_ok = Some(feasible);
            // Fejer monotonicity towards the feasible end point.
            let mut worst = 0.0f64;
            for trace in [map_trace, crm_trace] {
                for pair in trace.iterates.windows(2) {
                    worst = worst.max(pair[1].dist(end) - pair[0].dist(end));
                }
            }
            v.fejer_ok = Some(worst <= 1e-10);
        }
    }
    Ok(v)
}

fn crm_constant_check(
    instance: &Instance,
    crm_outcome: &RateOutcome,
    constants: &TheoryConstants,
) -> Option<bool> {
    match instance.family {
        Family::Family2Radial => Some(match crm_outcome {
            RateOutcome::ShortSuperlinear { final_ratio, .. } => *final_ratio <= 1e-3,
            RateOutcome::FiniteConvergence { .. } => true,
            RateOutcome::Report(r) => r.classification == Classification::Superlinear,
        }),
        _ => {
            let bound = constants.crm_family1_bound.or(constants.crm_bound)?;
            Some(match crm_outcome {
                RateOutcome::Report(r) => r.q_hat <= bound + 0.02,
                RateOutcome::ShortSuperlinear { .. } | RateOutcome::FiniteConvergence { .. } => {
                    true
                }
            })
        }
    }
}

/// Samples points of `U` around the origin and checks the per-step
/// dominance `|C(x) - y| <= |T(x) - y| + 1e-10` against an intersection
/// witness.
fn dominance_check(
    instance: &Instance,
    problem: &Problem,
    trials: usize,
) -> Result<bool, Error> {
    let basis: Vec<Point> = match problem.u() {
        SetOracle::Affine(man) => man.basis().to_vec(),
        _ => return Ok(true),
    };
    if basis.is_empty() {
        return Ok(true);
    }
    let mut rng = SplitMix64::new(instance.seed ^ 0xd011);
    let reach = instance.x0.norm().max(1.0);
    for _ in 0..trials {
        let mut dir = Point::zeros(problem.dim());
        for b in &basis {
            dir = dir.add_scaled(rng.next_normal(), b);
        }
        let norm = dir.norm();
        if norm <= 1e-9 {
            continue;
        }
        // log-uniform radii so the near-intersection regime is sampled too
        let rho = reach * math::exp(math::ln(1e-3) * rng.next_f64());
        let x = dir.scale(rho / norm);
        let y = match instance.witness_for(&x) {
            Some(y) => y,
            None => continue,
        };
        let t = map_step(problem, &x)?;
        let c = crm_step(problem, &x)?;
        if c.dist(&y) > t.dist(&y) + 1e-10 {
            return Ok(false);
        }
    }
    Ok(true)
}
