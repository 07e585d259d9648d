//! Single steps and iteration drivers for MAP, CRM, SePM, SiPM and
//! CRM-in-product-space.
//!
//! MAP composes the two projections, `T = P_U o P_K`. CRM replaces the
//! composition with the circumcenter of the current point and its two
//! successive reflections,
//!
//! ```text
//! C(x) = circum(x, R_K(x), R_U(R_K(x))),   R_S = 2 P_S - Id,
//! ```
//!
//! which is well defined along the iteration when `U` is an affine manifold.
//! Drivers record every iterate together with its distance to `K` (one extra
//! projection per step) and, when a solution is known, to that solution.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::geometry::{check_dim, circumcenter3, Point};
use crate::sets::SetOracle;

/// A two-set feasibility problem; `u` is the set CRM reflects through last
/// and must be an affine manifold for CRM runs.
#[derive(Debug)]
pub struct Problem {
    k: SetOracle,
    u: SetOracle,
    known_solution: Option<Point>,
    label: String,
}

impl Problem {
    pub fn new(k: SetOracle, u: SetOracle, label: &str) -> Result<Self, Error> {
        check_dim(k.dim_ambient(), u.dim_ambient())?;
        Ok(Problem {
            k,
            u,
            known_solution: None,
            label: label.into(),
        })
    }

    /// Attaches a known intersection point, checked to lie in both sets at
    /// tolerance `1e-8`.
    pub fn with_known_solution(mut self, y: Point) -> Result<Self, Error> {
        check_dim(self.k.dim_ambient(), y.dim())?;
        if !self.k.contains(&y, 1e-8)? || !self.u.contains(&y, 1e-8)? {
            return Err(Error::InvalidProblem(
                "known solution is not in the intersection at tolerance 1e-8".into(),
            ));
        }
        self.known_solution = Some(y);
        Ok(self)
    }

    pub fn k(&self) -> &SetOracle {
        &self.k
    }

    pub fn u(&self) -> &SetOracle {
        &self.u
    }

    pub fn known_solution(&self) -> Option<&Point> {
        self.known_solution.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.k.dim_ambient()
    }
}

/// Iteration methods covered by the drivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Map,
    Crm,
    Sepm,
    Sipm,
    ProductCrm,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Map => "MAP",
            Method::Crm => "CRM",
            Method::Sepm => "SePM",
            Method::Sipm => "SiPM",
            Method::ProductCrm => "ProductCRM",
        }
    }
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    TolReached,
    MaxIter,
    FixedPoint,
    DegenerateFallbackLoop,
}

impl StopReason {
    pub fn name(&self) -> &'static str {
        match self {
            StopReason::TolReached => "tol_reached",
            StopReason::MaxIter => "max_iter",
            StopReason::FixedPoint => "fixed_point",
            StopReason::DegenerateFallbackLoop => "degenerate_fallback_loop",
        }
    }
}

/// Stopping rule: absolute step/distance tolerance, iteration cap, and a
/// floor below which a step counts as a fixed point.
#[derive(Clone, Copy, Debug)]
pub struct StopRule {
    pub tol_abs: f64,
    pub max_iter: usize,
    pub floor_guard: f64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            tol_abs: 1e-12,
            max_iter: 10_000,
            floor_guard: 1e-15,
        }
    }
}

impl StopRule {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.floor_guard >= 0.0 && self.tol_abs > self.floor_guard) {
            return Err(Error::InvalidArgument(
                "stop rule requires tol_abs > floor_guard >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// Per-iteration record of a run.
#[derive(Clone, Debug)]
pub struct Trace {
    pub method: Method,
    pub iterates: Vec<Point>,
    /// Present iff the problem carries a known solution; same length as
    /// `iterates`.
    pub dist_to_solution: Option<Vec<f64>>,
    /// Distance to `K` at every iterate (for set families: the largest
    /// distance over the family; for product runs: the lifted distance).
    pub dist_to_k: Vec<f64>,
    pub stop_reason: StopReason,
    /// Iteration indices where a degenerate circumcenter forced a MAP
    /// fallback step.
    pub fallback_iters: Vec<usize>,
}

impl Trace {
    /// Assembles a trace from raw parts (used by file loaders and tests).
    pub fn from_parts(
        method: Method,
        iterates: Vec<Point>,
        dist_to_solution: Option<Vec<f64>>,
        dist_to_k: Vec<f64>,
        stop_reason: StopReason,
    ) -> Self {
        Trace {
            method,
            iterates,
            dist_to_solution,
            dist_to_k,
            stop_reason,
            fallback_iters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.iterates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterates.is_empty()
    }

    pub fn final_point(&self) -> &Point {
        self.iterates.last().expect("trace holds at least one point")
    }

    /// `|x^k - x^{k-1}|`, with `NaN` at `k = 0`.
    pub fn step_norms(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        out.push(f64::NAN);
        for w in self.iterates.windows(2) {
            out.push(w[1].dist(&w[0]));
        }
        out
    }
}

/// Reflection `R_S(p) = 2 P_S(p) - p`.
pub fn reflect(s: &SetOracle, p: &Point) -> Result<Point, Error> {
    Ok(s.project(p)?.scale(2.0).sub(p))
}

/// One MAP step `P_U(P_K(p))`.
pub fn map_step(problem: &Problem, p: &Point) -> Result<Point, Error> {
    problem.u.project(&problem.k.project(p)?)
}

/// Circumcenter step built from two projection closures; returns the new
/// point and whether the degenerate fallback (one MAP step) fired.
fn crm_core<PK, PU>(p: &Point, proj_k: PK, proj_u: PU) -> Result<(Point, bool), Error>
where
    PK: Fn(&Point) -> Result<Point, Error>,
    PU: Fn(&Point) -> Result<Point, Error>,
{
    let a = proj_k(p)?.scale(2.0).sub(p);
    let b = proj_u(&a)?.scale(2.0).sub(&a);
    match circumcenter3(p, &a, &b) {
        Ok(c) => Ok((c, false)),
        // Degeneracy cannot occur on feasible problems started in U; this
        // guards floating-point edge cases with a Fejer-compatible step.
        Err(Error::DegenerateCircumcenter) => Ok((proj_u(&proj_k(p)?)?, true)),
        Err(e) => Err(e),
    }
}

pub(crate) fn crm_step_flagged(problem: &Problem, p: &Point) -> Result<(Point, bool), Error> {
    if !problem.u.is_affine_manifold() {
        return Err(Error::InvalidProblem(
            "CRM requires the second set to be an affine manifold".into(),
        ));
    }
    crm_core(p, |x| problem.k.project(x), |x| problem.u.project(x))
}

/// One CRM step: circumcenter of `p`, `R_K(p)` and `R_U(R_K(p))`.
///
/// The circumcenter's cardinality handling covers the coincidence cases (a
/// fixed point maps to itself; two coincident points give the midpoint of
/// the distinct pair); a degenerate circumcenter falls back to one MAP step.
pub fn crm_step(problem: &Problem, p: &Point) -> Result<Point, Error> {
    crm_step_flagged(problem, p).map(|(c, _)| c)
}

/// Sequential projections in index order.
pub fn sepm_step(sets: &[SetOracle], p: &Point) -> Result<Point, Error> {
    if sets.is_empty() {
        return Err(Error::InvalidArgument("empty set family".into()));
    }
    let mut cur = p.clone();
    for s in sets {
        cur = s.project(&cur)?;
    }
    Ok(cur)
}

/// Average of the projections onto each set, summed in index order.
pub fn sipm_step(sets: &[SetOracle], p: &Point) -> Result<Point, Error> {
    if sets.is_empty() {
        return Err(Error::InvalidArgument("empty set family".into()));
    }
    let n = p.dim();
    let mut acc = vec![0.0; n];
    for s in sets {
        let q = s.project(p)?;
        for (a, c) in acc.iter_mut().zip(q.coords()) {
            *a += c;
        }
    }
    let m = sets.len() as f64;
    for a in &mut acc {
        *a /= m;
    }
    Ok(Point::new(acc))
}

/// Target of a [`run`]: a two-set problem or an `m`-set family.
pub enum RunTarget<'a> {
    Pair(&'a Problem),
    Family(&'a [SetOracle]),
}

/// Optional per-iteration budget callback; returning `false` ends the run
/// with [`StopReason::MaxIter`]. Lets callers impose wall-clock limits
/// without the core depending on a clock.
pub type Budget<'a> = &'a mut dyn FnMut() -> bool;

fn drive<S, D>(
    method: Method,
    x0: Point,
    stop: &StopRule,
    known: Option<&Point>,
    mut step_fn: S,
    dist_k: D,
    mut budget: Option<Budget<'_>>,
) -> Result<Trace, Error>
where
    S: FnMut(&Point) -> Result<(Point, bool), Error>,
    D: Fn(&Point) -> Result<f64, Error>,
{
    stop.validate()?;
    if !x0.is_finite() {
        return Err(Error::InvalidArgument("x0 must be finite".into()));
    }
    let mut iterates = vec![x0];
    let mut dist_to_k = vec![dist_k(&iterates[0])?];
    let mut dist_to_solution = known.map(|y| vec![iterates[0].dist(y)]);
    let mut fallback_iters = Vec::new();

    let mut stop_reason = StopReason::MaxIter;
    for k in 0..stop.max_iter {
        if let Some(b) = budget.as_mut() {
            if !b() {
                break;
            }
        }
        let cur = iterates.last().expect("nonempty");
        let (next, fell_back) = step_fn(cur)?;
        if !next.is_finite() {
            return Err(Error::NumericalFailure { iteration: k });
        }
        let step_norm = next.dist(cur);
        if step_norm <= stop.floor_guard {
            stop_reason = if fell_back {
                StopReason::DegenerateFallbackLoop
            } else {
                StopReason::FixedPoint
            };
            break;
        }
        if fell_back {
            fallback_iters.push(k);
        }
        dist_to_k.push(dist_k(&next)?);
        if let (Some(ds), Some(y)) = (dist_to_solution.as_mut(), known) {
            ds.push(next.dist(y));
        }
        iterates.push(next);
        if step_norm <= stop.tol_abs {
            stop_reason = StopReason::TolReached;
            break;
        }
        if let Some(ds) = dist_to_solution.as_ref() {
            if *ds.last().expect("nonempty") <= stop.tol_abs {
                stop_reason = StopReason::TolReached;
                break;
            }
        }
    }

    Ok(Trace {
        method,
        iterates,
        dist_to_solution,
        dist_to_k,
        stop_reason,
        fallback_iters,
    })
}

/// Runs `method` from `x0` until the step or the distance to a known
/// solution drops to `stop.tol_abs`, or `stop.max_iter` is hit.
///
/// CRM first replaces `x0` by its projection onto `U`, so its convergence
/// guarantee holds from arbitrary starting points.
pub fn run(
    method: Method,
    target: RunTarget<'_>,
    x0: &Point,
    stop: &StopRule,
) -> Result<Trace, Error> {
    run_with_budget(method, target, x0, stop, None)
}

/// [`run`] with an optional iteration budget callback.
pub fn run_with_budget(
    method: Method,
    target: RunTarget<'_>,
    x0: &Point,
    stop: &StopRule,
    budget: Option<Budget<'_>>,
) -> Result<Trace, Error> {
    match (method, target) {
        (Method::Map, RunTarget::Pair(p)) => {
            check_dim(p.dim(), x0.dim())?;
            drive(
                Method::Map,
                x0.clone(),
                stop,
                p.known_solution(),
                |x| map_step(p, x).map(|q| (q, false)),
                |x| p.k.dist(x),
                budget,
            )
        }
        (Method::Crm, RunTarget::Pair(p)) => {
            check_dim(p.dim(), x0.dim())?;
            if !p.u.is_affine_manifold() {
                return Err(Error::InvalidProblem(
                    "CRM requires the second set to be an affine manifold".into(),
                ));
            }
            let start = p.u.project(x0)?;
            drive(
                Method::Crm,
                start,
                stop,
                p.known_solution(),
                |x| crm_step_flagged(p, x),
                |x| p.k.dist(x),
                budget,
            )
        }
        (Method::Sepm, RunTarget::Family(sets)) => drive(
            Method::Sepm,
            x0.clone(),
            stop,
            None,
            |x| sepm_step(sets, x).map(|q| (q, false)),
            |x| family_dist(sets, x),
            budget,
        ),
        (Method::Sipm, RunTarget::Family(sets)) => drive(
            Method::Sipm,
            x0.clone(),
            stop,
            None,
            |x| sipm_step(sets, x).map(|q| (q, false)),
            |x| family_dist(sets, x),
            budget,
        ),
        (Method::ProductCrm, RunTarget::Family(sets)) => product_crm_run(sets, x0, stop),
        (m, _) => Err(Error::InvalidArgument(format!(
            "method {} does not accept this target kind",
            m.name()
        ))),
    }
}

fn family_dist(sets: &[SetOracle], p: &Point) -> Result<f64, Error> {
    let mut worst = 0.0f64;
    for s in sets {
        worst = worst.max(s.dist(p)?);
    }
    Ok(worst)
}

pub fn run_map(problem: &Problem, x0: &Point, stop: &StopRule) -> Result<Trace, Error> {
    run(Method::Map, RunTarget::Pair(problem), x0, stop)
}

pub fn run_crm(problem: &Problem, x0: &Point, stop: &StopRule) -> Result<Trace, Error> {
    run(Method::Crm, RunTarget::Pair(problem), x0, stop)
}

/// Blockwise projection onto `K_1 x ... x K_m` of a lifted point.
fn project_product(sets: &[SetOracle], n: usize, p: &Point) -> Result<Point, Error> {
    let mut out = Vec::with_capacity(p.dim());
    for (i, s) in sets.iter().enumerate() {
        let blk = Point::new(p.coords()[i * n..(i + 1) * n].to_vec());
        out.extend_from_slice(s.project(&blk)?.coords());
    }
    Ok(Point::new(out))
}

/// Projection onto the diagonal `{(x, ..., x)}`: the blockwise average,
/// replicated. Sums blocks in index order so a product-space MAP step is
/// bit-identical to [`sipm_step`].
fn project_diagonal(n: usize, m: usize, p: &Point) -> Point {
    let mut avg = vec![0.0; n];
    for i in 0..m {
        let block = &p.coords()[i * n..(i + 1) * n];
        for (a, c) in avg.iter_mut().zip(block) {
            *a += c;
        }
    }
    let mf = m as f64;
    for a in &mut avg {
        *a /= mf;
    }
    let mut out = Vec::with_capacity(n * m);
    for _ in 0..m {
        out.extend_from_slice(&avg);
    }
    Point::new(out)
}

/// CRM on the Pierra lift of an `m`-set family.
///
/// `x0` is embedded as `(x0, ..., x0)`, CRM runs in `R^{nm}` against the
/// product set and the diagonal subspace, and the returned trace holds the
/// first-block components in `R^n`. `dist_to_k` keeps the lifted
/// product-space distance, i.e. the root of the summed squared blockwise
/// distances.
pub fn product_crm_run(sets: &[SetOracle], x0: &Point, stop: &StopRule) -> Result<Trace, Error> {
    if sets.len() < 2 {
        return Err(Error::InvalidArgument(
            "product CRM needs at least two sets".into(),
        ));
    }
    let n = sets[0].dim_ambient();
    for s in sets {
        check_dim(n, s.dim_ambient())?;
    }
    check_dim(n, x0.dim())?;
    let m = sets.len();

    let mut embedded = Vec::with_capacity(n * m);
    for _ in 0..m {
        embedded.extend_from_slice(x0.coords());
    }
    let lifted = drive(
        Method::ProductCrm,
        Point::new(embedded),
        stop,
        None,
        |x| {
            crm_core(
                x,
                |q| project_product(sets, n, q),
                |q| Ok(project_diagonal(n, m, q)),
            )
        },
        |x| Ok(x.dist(&project_product(sets, n, x)?)),
        None,
    )?;
    Ok(Trace {
        method: Method::ProductCrm,
        iterates: lifted
            .iterates
            .iter()
            .map(|p| Point::new(p.coords()[..n].to_vec()))
            .collect(),
        dist_to_solution: None,
        dist_to_k: lifted.dist_to_k,
        stop_reason: lifted.stop_reason,
        fallback_iters: lifted.fallback_iters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AffineManifold;
    use crate::math;
    use crate::sets::{Ball, EpigraphRadial, Halfspace, RadialFunction};

    fn p(coords: &[f64]) -> Point {
        Point::new(coords.to_vec())
    }

    fn x_axis() -> SetOracle {
        SetOracle::Affine(AffineManifold::span(2, vec![p(&[1.0, 0.0])]).unwrap())
    }

    fn line_at(theta: f64) -> SetOracle {
        SetOracle::Affine(
            AffineManifold::span(2, vec![p(&[math::cos(theta), math::sin(theta)])]).unwrap(),
        )
    }

    fn two_lines(theta: f64) -> Problem {
        Problem::new(line_at(theta), x_axis(), "two-lines")
            .unwrap()
            .with_known_solution(Point::zeros(2))
            .unwrap()
    }

    fn parabola_problem() -> Problem {
        let k = SetOracle::EpigraphRadial(
            EpigraphRadial::new(RadialFunction::power(2.0).unwrap(), 1).unwrap(),
        );
        Problem::new(k, x_axis(), "parabola")
            .unwrap()
            .with_known_solution(Point::zeros(2))
            .unwrap()
    }

    #[test]
    fn shared_read_only_use_is_possible() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<SetOracle>();
        assert_send_sync::<Problem>();
        assert_send_sync::<Trace>();
    }

    #[test]
    fn known_solution_must_lie_in_both_sets() {
        let prob = Problem::new(line_at(0.5), x_axis(), "two-lines").unwrap();
        assert!(matches!(
            prob.with_known_solution(p(&[1.0, 1.0])),
            Err(Error::InvalidProblem(_))
        ));
    }

    #[test]
    fn stop_rule_validation() {
        assert!(StopRule::default().validate().is_ok());
        let bad = StopRule {
            tol_abs: 1e-16,
            max_iter: 10,
            floor_guard: 1e-15,
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidArgument(_))));
        let negative_floor = StopRule {
            tol_abs: 1e-12,
            max_iter: 10,
            floor_guard: -1.0,
        };
        assert!(negative_floor.validate().is_err());
    }

    #[test]
    fn trace_lists_share_length() {
        let prob = two_lines(0.6);
        let trace = run_map(&prob, &p(&[1.0, 0.0]), &StopRule::default()).unwrap();
        assert_eq!(trace.iterates.len(), trace.dist_to_k.len());
        assert_eq!(
            trace.iterates.len(),
            trace.dist_to_solution.as_ref().unwrap().len()
        );
    }

    #[test]
    fn reflect_examples() {
        let u = x_axis();
        let r = reflect(&u, &p(&[3.0, 2.0])).unwrap();
        assert!(r.dist(&p(&[3.0, -2.0])) <= 1e-14);
        let member = p(&[1.5, 0.0]);
        assert_eq!(reflect(&u, &member).unwrap(), member);
        let ball = SetOracle::Ball(Ball::new(Point::zeros(2), 1.0).unwrap());
        let r = reflect(&ball, &p(&[2.0, 0.0])).unwrap();
        assert!(r.dist(&p(&[0.0, 0.0])) <= 1e-14);
    }

    #[test]
    fn map_step_parabola_example() {
        let prob = parabola_problem();
        let q = map_step(&prob, &p(&[3.0, 0.0])).unwrap();
        assert!(q.dist(&p(&[1.0, 0.0])) <= 1e-10);
    }

    #[test]
    fn map_step_fixed_point_in_intersection() {
        let prob = two_lines(0.5);
        let origin = Point::zeros(2);
        assert_eq!(map_step(&prob, &origin).unwrap(), origin);
    }

    #[test]
    fn map_step_two_lines_contracts_by_cos_squared() {
        let theta = core::f64::consts::FRAC_PI_6;
        let prob = two_lines(theta);
        let q = map_step(&prob, &p(&[1.0, 0.0])).unwrap();
        let c2 = math::cos(theta) * math::cos(theta);
        assert!((q[0] - c2).abs() <= 1e-15);
        assert!(q[1].abs() <= 1e-15);
    }

    #[test]
    fn crm_step_parabola_example() {
        // v = u - f(u)/|grad f(u)|^2 grad f(u) with u = 1 gives 0.5.
        let prob = parabola_problem();
        let start = p(&[3.0, 0.0]);
        let q = crm_step(&prob, &start).unwrap();
        assert!(q.dist(&p(&[0.5, 0.0])) <= 1e-9);

        // cross-check against the equidistance conditions solved directly:
        // with a = R_K(x), b = R_U(a), the center (v, s) satisfies
        // 2 <c, a - x> = |a|^2 - |x|^2 and 2 <c, b - a> = |b|^2 - |a|^2.
        let a = reflect(prob.k(), &start).unwrap();
        let b = reflect(prob.u(), &a).unwrap();
        let m11 = 2.0 * (a[0] - start[0]);
        let m12 = 2.0 * (a[1] - start[1]);
        let m21 = 2.0 * (b[0] - a[0]);
        let m22 = 2.0 * (b[1] - a[1]);
        let r1 = a.dot(&a) - start.dot(&start);
        let r2 = b.dot(&b) - a.dot(&a);
        let det = m11 * m22 - m12 * m21;
        let cx = (r1 * m22 - m12 * r2) / det;
        let cy = (m11 * r2 - r1 * m21) / det;
        assert!(q.dist(&p(&[cx, cy])) <= 1e-9);
    }

    #[test]
    fn crm_step_two_lines_hits_origin() {
        let prob = two_lines(0.7);
        for start in [p(&[1.0, 0.0]), p(&[-2.5, 0.0]), p(&[0.3, 0.0])] {
            let q = crm_step(&prob, &start).unwrap();
            assert!(q.norm() <= 1e-12, "|q| = {:e}", q.norm());
        }
    }

    #[test]
    fn crm_step_fixed_point() {
        let prob = two_lines(0.9);
        let origin = Point::zeros(2);
        assert_eq!(crm_step(&prob, &origin).unwrap(), origin);
    }

    #[test]
    fn crm_rejects_non_affine_u() {
        let k = x_axis();
        let u = SetOracle::Ball(Ball::new(Point::zeros(2), 1.0).unwrap());
        let prob = Problem::new(k, u, "bad").unwrap();
        assert!(matches!(
            crm_step(&prob, &p(&[1.0, 0.0])),
            Err(Error::InvalidProblem(_))
        ));
    }

    #[test]
    fn sepm_single_set_is_projection() {
        let sets = [x_axis()];
        let q = sepm_step(&sets, &p(&[2.0, 5.0])).unwrap();
        assert_eq!(q, p(&[2.0, 0.0]));
    }

    #[test]
    fn sepm_two_halfspaces_clamp() {
        let sets = [
            SetOracle::Halfspace(Halfspace::new(p(&[-1.0, 0.0]), 0.0).unwrap()),
            SetOracle::Halfspace(Halfspace::new(p(&[0.0, -1.0]), 0.0).unwrap()),
        ];
        let q = sepm_step(&sets, &p(&[-1.0, -1.0])).unwrap();
        assert!(q.dist(&p(&[0.0, 0.0])) <= 1e-14);
    }

    #[test]
    fn sepm_order_matters() {
        // x-axis then 45-degree line vs the reverse; computed by the
        // explicit line-projection formulas.
        let l1 = x_axis();
        let l2 = line_at(core::f64::consts::FRAC_PI_4);
        let start = p(&[0.0, 1.0]);
        let a = sepm_step(&[l1, l2], &start).unwrap();
        let l1 = x_axis();
        let l2 = line_at(core::f64::consts::FRAC_PI_4);
        let b = sepm_step(&[l2, l1], &start).unwrap();
        // x-axis first kills the point, 45-degree line first keeps half of it
        assert!(a.dist(&p(&[0.0, 0.0])) <= 1e-14);
        assert!(b.dist(&p(&[0.5, 0.0])) <= 1e-14);
        assert!(a.dist(&b) > 0.1);
    }

    #[test]
    fn sipm_averages_disjoint_halfspaces() {
        // operator identity only; the sets are deliberately disjoint
        let sets = [
            SetOracle::Halfspace(Halfspace::new(p(&[0.0, 1.0]), 0.0).unwrap()),
            SetOracle::Halfspace(Halfspace::new(p(&[0.0, -1.0]), -2.0).unwrap()),
        ];
        let q = sipm_step(&sets, &p(&[0.0, 1.0])).unwrap();
        assert!(q.dist(&p(&[0.0, 1.0])) <= 1e-14);
    }

    #[test]
    fn run_map_two_lines_geometric_decay() {
        let theta = core::f64::consts::FRAC_PI_6;
        let prob = two_lines(theta);
        let trace = run_map(&prob, &p(&[1.0, 0.0]), &StopRule::default()).unwrap();
        let d = trace.dist_to_solution.as_ref().unwrap();
        let c2 = math::cos(theta) * math::cos(theta);
        let mut expected = 1.0;
        for (k, dk) in d.iter().enumerate().take(40) {
            assert!(
                (dk - expected).abs() <= 1e-9 * expected.max(1e-30),
                "k = {k}: {dk} vs {expected}"
            );
            expected *= c2;
        }
    }

    #[test]
    fn run_crm_two_lines_one_iteration() {
        let prob = two_lines(core::f64::consts::FRAC_PI_6);
        let trace = run_crm(&prob, &p(&[1.0, 0.0]), &StopRule::default()).unwrap();
        assert_eq!(trace.stop_reason, StopReason::TolReached);
        assert_eq!(trace.len(), 2);
        assert!(trace.final_point().norm() <= 1e-12);
    }

    #[test]
    fn run_detects_fixed_point_at_start() {
        let prob = two_lines(0.4);
        let trace = run_map(&prob, &Point::zeros(2), &StopRule::default()).unwrap();
        assert_eq!(trace.stop_reason, StopReason::FixedPoint);
        assert_eq!(trace.len(), 1);
    }

    #[test]
    fn run_rejects_mismatched_target() {
        let prob = two_lines(0.5);
        let r = run(
            Method::Sepm,
            RunTarget::Pair(&prob),
            &p(&[1.0, 0.0]),
            &StopRule::default(),
        );
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn run_sepm_family_converges_to_intersection() {
        let sets = [
            SetOracle::Halfspace(Halfspace::new(p(&[-1.0, 0.0]), 0.0).unwrap()),
            SetOracle::Halfspace(Halfspace::new(p(&[0.0, -1.0]), 0.0).unwrap()),
            SetOracle::Halfspace(Halfspace::new(p(&[1.0, 1.0]), 4.0).unwrap()),
        ];
        let trace = run(
            Method::Sepm,
            RunTarget::Family(&sets),
            &p(&[-3.0, 7.0]),
            &StopRule::default(),
        )
        .unwrap();
        assert_eq!(trace.stop_reason, StopReason::TolReached);
        assert!(trace.dist_to_k.last().unwrap() <= &1e-9);

        let trace = run(
            Method::Sipm,
            RunTarget::Family(&sets),
            &p(&[-3.0, 7.0]),
            &StopRule::default(),
        )
        .unwrap();
        for s in &sets {
            assert!(s.contains(trace.final_point(), 1e-6).unwrap());
        }
    }

    #[test]
    fn product_crm_two_copies_of_halfspace() {
        let sets = [
            SetOracle::Halfspace(Halfspace::new(p(&[0.0, 1.0]), 0.0).unwrap()),
            SetOracle::Halfspace(Halfspace::new(p(&[0.0, 1.0]), 0.0).unwrap()),
        ];
        let x0 = p(&[2.0, 3.0]);
        let trace = product_crm_run(&sets, &x0, &StopRule::default()).unwrap();
        assert!(trace.len() <= 3, "expected <= 2 iterations, got {}", trace.len() - 1);
        let expected = p(&[2.0, 0.0]);
        assert!(trace.final_point().dist(&expected) <= 1e-10);
    }

    #[test]
    fn product_crm_triangle_of_halfspaces() {
        let mk = |nx: f64, ny: f64| {
            SetOracle::Halfspace(Halfspace::new(p(&[nx, ny]), 1.0).unwrap())
        };
        let sets = [mk(1.0, 0.0), mk(-0.5, 0.8), mk(-0.5, -0.8)];
        let trace = product_crm_run(&sets, &p(&[40.0, -17.0]), &StopRule::default()).unwrap();
        assert_eq!(trace.stop_reason, StopReason::TolReached);
        let end = trace.final_point();
        for s in &sets {
            assert!(s.contains(end, 1e-10).unwrap());
        }
    }

    #[test]
    fn product_crm_rejects_single_set() {
        let sets = [SetOracle::Halfspace(
            Halfspace::new(p(&[0.0, 1.0]), 0.0).unwrap(),
        )];
        assert!(matches!(
            product_crm_run(&sets, &p(&[1.0, 1.0]), &StopRule::default()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn product_crm_matches_crm_on_explicit_lift() {
        use crate::sets::{product_lift, DiagonalSubspace};
        let mk = || {
            vec![
                SetOracle::Halfspace(Halfspace::new(p(&[0.6, 1.0]), 0.3).unwrap()),
                SetOracle::Ball(Ball::new(p(&[0.4, -0.2]), 1.1).unwrap()),
            ]
        };
        let x0 = p(&[2.5, -1.5]);
        let compact = product_crm_run(&mk(), &x0, &StopRule::default()).unwrap();

        let (k, u) = product_lift(mk()).unwrap();
        let problem = Problem::new(k, u, "lift").unwrap();
        let embedded = DiagonalSubspace::new(2, 2).unwrap().embed(&x0).unwrap();
        let lifted = run_crm(&problem, &embedded, &StopRule::default()).unwrap();

        assert_eq!(compact.len(), lifted.len());
        for (a, b) in compact.iterates.iter().zip(lifted.iterates.iter()) {
            assert_eq!(a.coords(), &b.coords()[..2]);
        }
    }

    #[test]
    fn pierra_product_map_step_equals_sipm() {
        let sets = [
            SetOracle::Halfspace(Halfspace::new(p(&[1.0, 0.3]), 0.4).unwrap()),
            SetOracle::Ball(Ball::new(p(&[0.2, -0.1]), 0.7).unwrap()),
            SetOracle::Halfspace(Halfspace::new(p(&[-0.5, 1.0]), 0.1).unwrap()),
        ];
        let x = p(&[1.7, -2.4]);
        let n = 2;
        let m = sets.len();
        let mut lifted = Vec::new();
        for _ in 0..m {
            lifted.extend_from_slice(x.coords());
        }
        let lifted = Point::new(lifted);
        let one_step = project_diagonal(n, m, &project_product(&sets, n, &lifted).unwrap());
        let sipm = sipm_step(&sets, &x).unwrap();
        for i in 0..m {
            assert_eq!(&one_step.coords()[i * n..(i + 1) * n], sipm.coords());
        }
    }
}
