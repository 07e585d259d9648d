//! Convex-set oracles with exact or iterative projections.
//!
//! Every concrete set implements the same contract: `project` returns the
//! unique nearest point, is idempotent, and leaves members unchanged.
//! Halfspaces, balls, boxes, affine manifolds and the diagonal subspace
//! project in closed form; epigraphs go through iterative solvers (a scalar
//! root for radial profiles, damped Newton for general smooth ones);
//! product sets project blockwise.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::epigraph;
use crate::error::Error;
use crate::geometry::{check_dim, AffineManifold, Point};
use crate::math;

/// Scalar oracle type for radial functions.
pub type ScalarFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;
/// Vector-valued oracle for smooth epigraphs.
pub type VectorFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Gradient oracle for smooth epigraphs.
pub type GradientFn = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Closed halfspace `{p : <normal, p> <= offset}`, normal stored unit.
#[derive(Clone, Debug)]
pub struct Halfspace {
    normal: Point,
    offset: f64,
}

impl Halfspace {
    pub fn new(normal: Point, offset: f64) -> Result<Self, Error> {
        let n = normal.norm();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::InvalidArgument(
                "halfspace normal must be nonzero and finite".into(),
            ));
        }
        Ok(Halfspace {
            normal: normal.scale(1.0 / n),
            offset: offset / n,
        })
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    fn project(&self, p: &Point) -> Point {
        let excess = self.normal.dot(p) - self.offset;
        if excess <= 0.0 {
            p.clone()
        } else {
            p.add_scaled(-excess, &self.normal)
        }
    }

    fn signed_dist(&self, p: &Point) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// Euclidean ball.
#[derive(Clone, Debug)]
pub struct Ball {
    center: Point,
    radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self, Error> {
        if radius.is_nan() || radius <= 0.0 || !radius.is_finite() {
            return Err(Error::InvalidArgument("ball radius must be positive".into()));
        }
        Ok(Ball { center, radius })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    fn project(&self, p: &Point) -> Point {
        let d = p.sub(&self.center);
        let r = d.norm();
        if r <= self.radius {
            p.clone()
        } else {
            self.center.add_scaled(self.radius / r, &d)
        }
    }
}

/// Axis-aligned box `{p : lower <= p <= upper}` (coordinatewise).
#[derive(Clone, Debug)]
pub struct BoxSet {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxSet {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, Error> {
        check_dim(lower.len(), upper.len())?;
        if lower.iter().zip(upper.iter()).any(|(l, u)| l > u) {
            return Err(Error::InvalidArgument(
                "box lower bound exceeds upper bound".into(),
            ));
        }
        Ok(BoxSet { lower, upper })
    }

    fn project(&self, p: &Point) -> Point {
        Point::new(
            p.coords()
                .iter()
                .zip(self.lower.iter().zip(self.upper.iter()))
                .map(|(c, (l, u))| c.max(*l).min(*u))
                .collect(),
        )
    }
}

/// Scalar radial profile `t -> phi(t)` with derivative oracle and an
/// effective domain radius (`phi = +inf` strictly outside it).
pub struct RadialFunction {
    phi: ScalarFn,
    dphi: ScalarFn,
    domain_radius: f64,
    label: String,
}

impl core::fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("RadialFunction")
            .field("label", &self.label)
            .field("domain_radius", &self.domain_radius)
            .finish()
    }
}

impl RadialFunction {
    pub fn new(phi: ScalarFn, dphi: ScalarFn) -> Self {
        RadialFunction {
            phi,
            dphi,
            domain_radius: f64::INFINITY,
            label: "custom".into(),
        }
    }

    pub fn with_domain(phi: ScalarFn, dphi: ScalarFn, domain_radius: f64) -> Self {
        RadialFunction {
            phi,
            dphi,
            domain_radius,
            label: "custom".into(),
        }
    }

    fn labeled(mut self, label: &str) -> Self {
        self.label = label.into();
        self
    }

    /// `phi(t) = |t|^alpha`, `alpha > 1`.
    pub fn power(alpha: f64) -> Result<Self, Error> {
        if alpha.is_nan() || alpha <= 1.0 {
            return Err(Error::InvalidArgument(
                "power exponent must exceed 1".into(),
            ));
        }
        Ok(RadialFunction::new(
            Box::new(move |t: f64| math::powf(t.abs(), alpha)),
            Box::new(move |t: f64| {
                if t == 0.0 {
                    0.0
                } else {
                    alpha * math::powf(t.abs(), alpha - 1.0) * t.signum()
                }
            }),
        )
        .labeled("power"))
    }

    /// `phi(t) = 1 - sqrt(1 - t^2)` on `[-1, 1]`, evaluated in the
    /// cancellation-free form `t^2 / (1 + sqrt(1 - t^2))`.
    pub fn ballcap() -> Self {
        RadialFunction::with_domain(
            Box::new(|t: f64| {
                let w = 1.0 - t * t;
                t * t / (1.0 + math::sqrt(w.max(0.0)))
            }),
            Box::new(|t: f64| {
                let w = 1.0 - t * t;
                t / math::sqrt(w.max(0.0))
            }),
            1.0,
        )
        .labeled("ballcap")
    }

    /// `phi(t) = exp(-1/t^2)` on `(-1/sqrt(3), 1/sqrt(3))`; every derivative
    /// vanishes at the origin.
    pub fn flat() -> Self {
        let r = 1.0 / math::sqrt(3.0);
        RadialFunction::with_domain(
            Box::new(|t: f64| {
                if t == 0.0 {
                    0.0
                } else {
                    math::exp(-1.0 / (t * t))
                }
            }),
            Box::new(|t: f64| {
                if t == 0.0 {
                    0.0
                } else {
                    math::exp(-1.0 / (t * t)) * 2.0 / (t * t * t)
                }
            }),
            r,
        )
        .labeled("flat")
    }

    /// `phi(t) = |t|^alpha - c`.
    pub fn shifted_power(alpha: f64, c: f64) -> Result<Self, Error> {
        if alpha.is_nan() || alpha <= 1.0 {
            return Err(Error::InvalidArgument(
                "power exponent must exceed 1".into(),
            ));
        }
        Ok(RadialFunction::new(
            Box::new(move |t: f64| math::powf(t.abs(), alpha) - c),
            Box::new(move |t: f64| {
                if t == 0.0 {
                    0.0
                } else {
                    alpha * math::powf(t.abs(), alpha - 1.0) * t.signum()
                }
            }),
        )
        .labeled("shifted_power"))
    }

    /// `phi(t) = cosh(t) - c`.
    pub fn cosh_shift(c: f64) -> Self {
        RadialFunction::new(
            Box::new(move |t: f64| math::cosh(t) - c),
            Box::new(|t: f64| math::sinh(t)),
        )
        .labeled("cosh_shift")
    }

    /// Profile value; `+inf` strictly outside the effective domain.
    pub fn phi(&self, t: f64) -> f64 {
        if t.abs() > self.domain_radius {
            f64::INFINITY
        } else {
            (self.phi)(t)
        }
    }

    pub fn dphi(&self, t: f64) -> f64 {
        (self.dphi)(t)
    }

    pub fn domain_radius(&self) -> f64 {
        self.domain_radius
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn spot_check_convexity(&self) -> Result<(), Error> {
        let hi = if self.domain_radius.is_finite() {
            self.domain_radius * 0.98
        } else {
            2.0
        };
        let mut t1 = hi * 0.07;
        while t1 < hi {
            let t2 = (t1 * 1.9).min(hi);
            let mid = 0.5 * (t1 + t2);
            let lhs = self.phi(mid);
            let rhs = 0.5 * (self.phi(t1) + self.phi(t2));
            if lhs > rhs + 1e-9 * (1.0 + rhs.abs()) {
                return Err(Error::InvalidInstance(format!(
                    "midpoint convexity violated at t in [{t1}, {t2}]"
                )));
            }
            t1 *= 1.6;
        }
        Ok(())
    }

    /// Checks the tangential-family assumptions: `phi(0) = 0`, `phi'(0) = 0`,
    /// `0` the unique minimizer (sampled), plus a midpoint convexity sweep.
    pub fn check_family1(&self) -> Result<(), Error> {
        if self.phi(0.0).abs() > 1e-12 {
            return Err(Error::InvalidInstance("family 1 requires phi(0) = 0".into()));
        }
        if self.dphi(0.0).abs() > 1e-12 {
            return Err(Error::InvalidInstance("family 1 requires phi'(0) = 0".into()));
        }
        let hi = if self.domain_radius.is_finite() {
            self.domain_radius * 0.98
        } else {
            2.0
        };
        let mut t = hi * 0.05;
        while t < hi {
            if self.phi(t) < 0.0 {
                return Err(Error::InvalidInstance(
                    "family 1 requires 0 to be the unique minimizer (phi(t) < 0 found)".into(),
                ));
            }
            t *= 1.7;
        }
        self.spot_check_convexity()
    }

    /// Checks the crossing-family assumptions: `phi(0) < 0`, `phi'(0) = 0`,
    /// plus a midpoint convexity sweep.
    pub fn check_family2(&self) -> Result<(), Error> {
        let at_zero = self.phi(0.0);
        if at_zero.is_nan() || at_zero >= 0.0 {
            return Err(Error::InvalidInstance("family 2 requires phi(0) < 0".into()));
        }
        if self.dphi(0.0).abs() > 1e-12 {
            return Err(Error::InvalidInstance("family 2 requires phi'(0) = 0".into()));
        }
        self.spot_check_convexity()
    }
}

/// Epigraph of `f(x) = phi(|x|)` in `R^{n+1}`.
#[derive(Debug)]
pub struct EpigraphRadial {
    radial: RadialFunction,
    n: usize,
}

impl EpigraphRadial {
    pub fn new(radial: RadialFunction, n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidArgument("base dimension must be >= 1".into()));
        }
        Ok(EpigraphRadial { radial, n })
    }

    pub fn radial(&self) -> &RadialFunction {
        &self.radial
    }

    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn dim_ambient(&self) -> usize {
        self.n + 1
    }
}

/// Epigraph of a smooth convex `f : R^n -> R` given by value and gradient
/// oracles, in `R^{n+1}`.
///
/// The Newton projection assumes `f` is twice continuously differentiable
/// near the projection point; that is the caller's responsibility, as is
/// thread safety of the supplied closures (they must be callable
/// concurrently, which the `Send + Sync` bounds encode).
pub struct EpigraphSmooth {
    f: VectorFn,
    grad: GradientFn,
    n: usize,
}

impl core::fmt::Debug for EpigraphSmooth {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("EpigraphSmooth").field("n", &self.n).finish()
    }
}

impl EpigraphSmooth {
    pub fn new(n: usize, f: VectorFn, grad: GradientFn) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidArgument("base dimension must be >= 1".into()));
        }
        Ok(EpigraphSmooth { f, grad, n })
    }

    pub fn f(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    pub fn grad(&self, x: &[f64]) -> Vec<f64> {
        (self.grad)(x)
    }

    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn dim_ambient(&self) -> usize {
        self.n + 1
    }

    /// Spot check of the gradient inequality `f(y) >= f(x) + <grad f(x), y-x>`
    /// on a deterministic sample of pairs.
    pub fn spot_check_convexity(&self, seed: u64) -> Result<(), Error> {
        let mut rng = crate::rng::SplitMix64::new(seed);
        for _ in 0..32 {
            let x: Vec<f64> = (0..self.n).map(|_| rng.range(-2.0, 2.0)).collect();
            let y: Vec<f64> = (0..self.n).map(|_| rng.range(-2.0, 2.0)).collect();
            let fx = self.f(&x);
            let fy = self.f(&y);
            let g = self.grad(&x);
            let lin: f64 = g
                .iter()
                .zip(x.iter().zip(y.iter()))
                .map(|(gi, (xi, yi))| gi * (yi - xi))
                .sum();
            if fy < fx + lin - 1e-8 * (1.0 + fy.abs()) {
                return Err(Error::InvalidInstance(
                    "gradient inequality violated; f does not look convex".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Cartesian product `K_1 x ... x K_m` of sets sharing one base dimension.
#[derive(Debug)]
pub struct ProductSet {
    factors: Vec<SetOracle>,
    block: usize,
}

impl ProductSet {
    pub fn new(factors: Vec<SetOracle>) -> Result<Self, Error> {
        let block = match factors.first() {
            Some(f) => f.dim_ambient(),
            None => {
                return Err(Error::InvalidArgument(
                    "product set needs at least one factor".into(),
                ))
            }
        };
        for f in &factors {
            check_dim(block, f.dim_ambient())?;
        }
        Ok(ProductSet { factors, block })
    }

    pub fn factors(&self) -> &[SetOracle] {
        &self.factors
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn dim_ambient(&self) -> usize {
        self.block * self.factors.len()
    }

    fn project(&self, p: &Point) -> Result<Point, Error> {
        let mut out = Vec::with_capacity(p.dim());
        for (i, f) in self.factors.iter().enumerate() {
            let blk = Point::new(p.coords()[i * self.block..(i + 1) * self.block].to_vec());
            out.extend_from_slice(f.project(&blk)?.coords());
        }
        Ok(Point::new(out))
    }
}

/// Diagonal subspace `{(x, ..., x) : x in R^n}` of `R^{nm}`; its projection
/// replicates the blockwise average.
#[derive(Clone, Debug)]
pub struct DiagonalSubspace {
    n: usize,
    m: usize,
}

impl DiagonalSubspace {
    pub fn new(n: usize, m: usize) -> Result<Self, Error> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidArgument(
                "diagonal subspace needs n >= 1 and m >= 1".into(),
            ));
        }
        Ok(DiagonalSubspace { n, m })
    }

    pub fn block(&self) -> usize {
        self.n
    }

    pub fn copies(&self) -> usize {
        self.m
    }

    pub fn dim_ambient(&self) -> usize {
        self.n * self.m
    }

    /// Average of the `m` blocks of `p`, summed in block order.
    pub fn block_average(&self, p: &Point) -> Vec<f64> {
        let mut avg = alloc::vec![0.0; self.n];
        for i in 0..self.m {
            let block = &p.coords()[i * self.n..(i + 1) * self.n];
            for (a, c) in avg.iter_mut().zip(block) {
                *a += c;
            }
        }
        let m = self.m as f64;
        for a in &mut avg {
            *a /= m;
        }
        avg
    }

    fn project(&self, p: &Point) -> Point {
        let avg = self.block_average(p);
        let mut out = Vec::with_capacity(self.dim_ambient());
        for _ in 0..self.m {
            out.extend_from_slice(&avg);
        }
        Point::new(out)
    }

    /// Embeds an `R^n` point as `(x, ..., x)`.
    pub fn embed(&self, x: &Point) -> Result<Point, Error> {
        check_dim(self.n, x.dim())?;
        let mut out = Vec::with_capacity(self.dim_ambient());
        for _ in 0..self.m {
            out.extend_from_slice(x.coords());
        }
        Ok(Point::new(out))
    }

    /// First block of a lifted point.
    pub fn first_block(&self, p: &Point) -> Point {
        Point::new(p.coords()[..self.n].to_vec())
    }
}

/// Tagged union of every supported convex set.
#[derive(Debug)]
pub enum SetOracle {
    Halfspace(Halfspace),
    Ball(Ball),
    Box(BoxSet),
    Affine(AffineManifold),
    EpigraphRadial(EpigraphRadial),
    EpigraphSmooth(EpigraphSmooth),
    Product(ProductSet),
    Diagonal(DiagonalSubspace),
}

impl SetOracle {
    pub fn dim_ambient(&self) -> usize {
        match self {
            SetOracle::Halfspace(h) => h.normal.dim(),
            SetOracle::Ball(b) => b.center.dim(),
            SetOracle::Box(b) => b.lower.len(),
            SetOracle::Affine(m) => m.dim_ambient(),
            SetOracle::EpigraphRadial(e) => e.dim_ambient(),
            SetOracle::EpigraphSmooth(e) => e.dim_ambient(),
            SetOracle::Product(p) => p.dim_ambient(),
            SetOracle::Diagonal(d) => d.dim_ambient(),
        }
    }

    /// Affine manifolds (including the diagonal subspace) are the sets CRM
    /// accepts as its second operand.
    pub fn is_affine_manifold(&self) -> bool {
        matches!(self, SetOracle::Affine(_) | SetOracle::Diagonal(_))
    }

    /// Orthogonal projection of `p` onto the set.
    pub fn project(&self, p: &Point) -> Result<Point, Error> {
        check_dim(self.dim_ambient(), p.dim())?;
        match self {
            SetOracle::Halfspace(h) => Ok(h.project(p)),
            SetOracle::Ball(b) => Ok(b.project(p)),
            SetOracle::Box(b) => Ok(b.project(p)),
            SetOracle::Affine(m) => m.project(p),
            SetOracle::EpigraphRadial(e) => epigraph::project_radial(&e.radial, e.n, p),
            SetOracle::EpigraphSmooth(e) => epigraph::project_smooth(e, p),
            SetOracle::Product(ps) => ps.project(p),
            SetOracle::Diagonal(d) => Ok(d.project(p)),
        }
    }

    /// Distance from `p` to the set.
    pub fn dist(&self, p: &Point) -> Result<f64, Error> {
        Ok(p.dist(&self.project(p)?))
    }

    /// Membership test: `|p - project(p)| <= tol`, with closed-form
    /// shortcuts where the distance is available directly.
    pub fn contains(&self, p: &Point, tol: f64) -> Result<bool, Error> {
        check_dim(self.dim_ambient(), p.dim())?;
        match self {
            SetOracle::Halfspace(h) => Ok(h.signed_dist(p) <= tol),
            SetOracle::Ball(b) => Ok(p.dist(&b.center) <= b.radius + tol),
            SetOracle::EpigraphRadial(e) => {
                let (x, s) = epigraph::split_epi(p, e.n);
                let t = math::sqrt(x.iter().map(|c| c * c).sum());
                if e.radial.phi(t) <= s {
                    return Ok(true);
                }
                Ok(self.dist(p)? <= tol)
            }
            SetOracle::EpigraphSmooth(e) => {
                let (x, s) = epigraph::split_epi(p, e.n);
                if e.f(&x) <= s {
                    return Ok(true);
                }
                Ok(self.dist(p)? <= tol)
            }
            _ => Ok(self.dist(p)? <= tol),
        }
    }
}

/// Pierra lift: an `m`-set family over `R^n` becomes the pair
/// `(K_1 x ... x K_m, diagonal)` in `R^{nm}`; the diagonal subspace is an
/// affine manifold, so CRM applies to the lifted pair.
pub fn product_lift(sets: Vec<SetOracle>) -> Result<(SetOracle, SetOracle), Error> {
    if sets.len() < 2 {
        return Err(Error::InvalidArgument(
            "product lift needs at least two sets".into(),
        ));
    }
    let n = sets[0].dim_ambient();
    for s in &sets {
        check_dim(n, s.dim_ambient())?;
    }
    let m = sets.len();
    Ok((
        SetOracle::Product(ProductSet::new(sets)?),
        SetOracle::Diagonal(DiagonalSubspace::new(n, m)?),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(coords: &[f64]) -> Point {
        Point::new(coords.to_vec())
    }

    #[test]
    fn halfspace_projection() {
        let h = SetOracle::Halfspace(Halfspace::new(p(&[0.0, 1.0]), 0.0).unwrap());
        let q = h.project(&p(&[3.0, 2.0])).unwrap();
        assert!(q.dist(&p(&[3.0, 0.0])) <= 1e-14);
        // members are untouched
        let inside = p(&[3.0, -1.0]);
        assert_eq!(h.project(&inside).unwrap(), inside);
    }

    #[test]
    fn ball_projection_radial_scaling() {
        let b = SetOracle::Ball(Ball::new(p(&[0.0, 0.0]), 1.0).unwrap());
        let q = b.project(&p(&[3.0, 4.0])).unwrap();
        assert!(q.dist(&p(&[0.6, 0.8])) <= 1e-14);
    }

    #[test]
    fn box_projection_clamps() {
        let b = SetOracle::Box(BoxSet::new(vec![0.0, 0.0], vec![1.0, 2.0]).unwrap());
        let q = b.project(&p(&[-1.0, 5.0])).unwrap();
        assert_eq!(q, p(&[0.0, 2.0]));
    }

    #[test]
    fn diagonal_projection_averages() {
        let d = SetOracle::Diagonal(DiagonalSubspace::new(1, 2).unwrap());
        let q = d.project(&p(&[1.0, 3.0])).unwrap();
        assert_eq!(q, p(&[2.0, 2.0]));
    }

    #[test]
    fn radial_epigraph_quadratic_example() {
        let e = SetOracle::EpigraphRadial(
            EpigraphRadial::new(RadialFunction::power(2.0).unwrap(), 1).unwrap(),
        );
        let q = e.project(&p(&[3.0, 0.0])).unwrap();
        assert!(q.dist(&p(&[1.0, 1.0])) <= 1e-10);
        // idempotent
        let qq = e.project(&q).unwrap();
        assert!(q.dist(&qq) <= 1e-10);
    }

    #[test]
    fn radial_epigraph_apex_below() {
        let e = SetOracle::EpigraphRadial(
            EpigraphRadial::new(RadialFunction::shifted_power(2.0, 1.0).unwrap(), 1).unwrap(),
        );
        let q = e.project(&p(&[0.0, -3.0])).unwrap();
        assert!(q.dist(&p(&[0.0, -1.0])) <= 1e-12);
    }

    #[test]
    fn radial_epigraph_member_unchanged() {
        let e = SetOracle::EpigraphRadial(
            EpigraphRadial::new(RadialFunction::power(2.0).unwrap(), 1).unwrap(),
        );
        let inside = p(&[1.0, 2.0]);
        assert_eq!(e.project(&inside).unwrap(), inside);
    }

    #[test]
    fn smooth_epigraph_agrees_with_radial_quadratic() {
        let e = SetOracle::EpigraphSmooth(
            EpigraphSmooth::new(
                2,
                Box::new(|x: &[f64]| x[0] * x[0] + x[1] * x[1]),
                Box::new(|x: &[f64]| vec![2.0 * x[0], 2.0 * x[1]]),
            )
            .unwrap(),
        );
        let q = e.project(&p(&[3.0, 0.0, 0.0])).unwrap();
        assert!(q.dist(&p(&[1.0, 0.0, 1.0])) <= 1e-9);
    }

    #[test]
    fn contains_examples() {
        let b = SetOracle::Ball(Ball::new(p(&[0.0, 0.0]), 1.0).unwrap());
        assert!(b.contains(&p(&[0.0, 0.5]), 0.0).unwrap());
        let h = SetOracle::Halfspace(Halfspace::new(p(&[0.0, 1.0]), 0.0).unwrap());
        assert!(h.contains(&p(&[0.0, 1e-13]), 1e-12).unwrap());
        let e = SetOracle::EpigraphRadial(
            EpigraphRadial::new(RadialFunction::power(2.0).unwrap(), 1).unwrap(),
        );
        assert!(!e.contains(&p(&[1.0, 0.5]), 1e-12).unwrap());
    }

    #[test]
    fn product_lift_blockwise_laws() {
        let h1 = SetOracle::Halfspace(Halfspace::new(p(&[1.0, 0.0]), 0.0).unwrap());
        let h2 = SetOracle::Halfspace(Halfspace::new(p(&[0.0, 1.0]), 0.0).unwrap());
        let (k, u) = product_lift(vec![h1, h2]).unwrap();
        assert_eq!(k.dim_ambient(), 4);
        assert_eq!(u.dim_ambient(), 4);
        assert!(u.is_affine_manifold());

        let h1 = SetOracle::Halfspace(Halfspace::new(p(&[1.0, 0.0]), 0.0).unwrap());
        let h2 = SetOracle::Halfspace(Halfspace::new(p(&[0.0, 1.0]), 0.0).unwrap());
        let q = k.project(&p(&[2.0, -1.0, 0.5, 3.0])).unwrap();
        let q1 = h1.project(&p(&[2.0, -1.0])).unwrap();
        let q2 = h2.project(&p(&[0.5, 3.0])).unwrap();
        assert_eq!(&q.coords()[..2], q1.coords());
        assert_eq!(&q.coords()[2..], q2.coords());

        let du = u.project(&p(&[1.0, 0.0, 3.0, 2.0])).unwrap();
        assert_eq!(du, p(&[2.0, 1.0, 2.0, 1.0]));
    }

    #[test]
    fn product_lift_rejects_mixed_dims() {
        let h1 = SetOracle::Halfspace(Halfspace::new(p(&[1.0, 0.0]), 0.0).unwrap());
        let h2 = SetOracle::Halfspace(Halfspace::new(p(&[1.0, 0.0, 0.0]), 0.0).unwrap());
        assert!(product_lift(vec![h1, h2]).is_err());
    }

    #[test]
    fn family_checks() {
        assert!(RadialFunction::power(4.0).unwrap().check_family1().is_ok());
        assert!(RadialFunction::ballcap().check_family1().is_ok());
        assert!(RadialFunction::flat().check_family1().is_ok());
        assert!(RadialFunction::shifted_power(2.0, 1.0)
            .unwrap()
            .check_family2()
            .is_ok());
        assert!(RadialFunction::cosh_shift(2.0).check_family2().is_ok());
        // family-1 rejects a shifted profile
        assert!(RadialFunction::shifted_power(2.0, 1.0)
            .unwrap()
            .check_family1()
            .is_err());
        // family-2 rejects an unshifted one
        assert!(RadialFunction::power(2.0).unwrap().check_family2().is_err());
    }
}
