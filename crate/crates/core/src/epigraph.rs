//! Iterative projections onto epigraphs.
//!
//! For a radial function `f(x) = phi(|x|)` the projection of `(x, s)` with
//! `phi(|x|) > s` reduces to a scalar equation along the ray through `x`:
//! find `r` with
//!
//! ```text
//! r + (phi(r) - s) * phi'(r) = |x|
//! ```
//!
//! solved by bisection run down to bracket machine width, since the
//! reflections built on top need the displacement `|x| - r` to relative
//! accuracy. Points whose lateral distance exceeds a bounded effective
//! domain project onto the domain wall instead; that case is detected when
//! the residual has no sign change inside the domain.
//!
//! For a general smooth convex `f` the projection solves the stationarity
//! system `F(u) = u + (f(u) - s) grad f(u) - x = 0` by damped Newton with a
//! central-difference Jacobian and Armijo backtracking on `|F|^2`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::geometry::Point;
use crate::math;
use crate::sets::{EpigraphSmooth, RadialFunction};

/// Relative residual target of the scalar radial solve.
pub(crate) const RADIAL_RESIDUAL_TOL: f64 = 1e-13;
/// Relative residual target of the smooth Newton solve.
pub(crate) const NEWTON_RESIDUAL_TOL: f64 = 1e-10;
const NEWTON_MAX_ITER: usize = 200;
const ROOT_MAX_ITER: usize = 2000;
const BRACKET_EXPANSIONS: usize = 64;

/// Splits an epigraph-ambient point into its base block and height.
pub(crate) fn split_epi(p: &Point, n: usize) -> (Vec<f64>, f64) {
    let c = p.coords();
    (c[..n].to_vec(), c[n])
}

fn join_epi(x: &[f64], s: f64) -> Point {
    let mut coords = Vec::with_capacity(x.len() + 1);
    coords.extend_from_slice(x);
    coords.push(s);
    Point::new(coords)
}

/// Residual of the ray stationarity equation at radius `r`.
///
/// Uses `max(phi(r) - s, 0)` so the same function covers radii where the
/// height constraint is inactive; the resulting one-dimensional objective is
/// convex, so the residual is nondecreasing in `r`.
fn residual(rf: &RadialFunction, r: f64, s: f64, t: f64) -> f64 {
    let gap = rf.phi(r) - s;
    if gap > 0.0 {
        r - t + gap * rf.dphi(r)
    } else {
        r - t
    }
}

/// Solves `r + (phi(r) - s)^+ phi'(r) = t` for `r` in the effective domain.
///
/// Returns `Ok(None)` when the residual stays negative up to the domain
/// radius, i.e. the minimizer sits on the domain wall.
pub(crate) fn radial_root(rf: &RadialFunction, t: f64, s: f64) -> Result<Option<f64>, Error> {
    let tol = RADIAL_RESIDUAL_TOL * (1.0 + t);
    let domain = rf.domain_radius();
    let inside = |r: f64| {
        if domain.is_finite() {
            r.min(domain * (1.0 - 1e-12))
        } else {
            r
        }
    };

    let lo = 0.0;
    let g_lo = residual(rf, lo, s, t);
    if g_lo >= 0.0 {
        // Root at the apex: the nearest point sits directly above the origin.
        return Ok(Some(0.0));
    }

    let mut hi = inside(t.max(1e-300));
    let mut g_hi = residual(rf, hi, s, t);
    let mut expansions = 0;
    while g_hi < 0.0 {
        if domain.is_finite() && hi >= domain * (1.0 - 1e-9) {
            // No sign change inside the domain: wall case.
            return Ok(None);
        }
        expansions += 1;
        if expansions > BRACKET_EXPANSIONS {
            return Err(Error::ProjectionFailure(format!(
                "no sign change after {BRACKET_EXPANSIONS} bracket expansions; \
                 the radial oracle is likely not convex"
            )));
        }
        hi = inside(hi * 2.0);
        g_hi = residual(rf, hi, s, t);
    }
    if !g_hi.is_finite() {
        // phi' may blow up at a bounded domain edge; pull back until finite.
        let mut shrink = hi;
        for _ in 0..200 {
            shrink = lo + 0.9 * (shrink - lo);
            g_hi = residual(rf, shrink, s, t);
            if g_hi.is_finite() && g_hi >= 0.0 {
                hi = shrink;
                break;
            }
        }
        if !g_hi.is_finite() {
            return Err(Error::ProjectionFailure(
                "radial residual is non-finite near the bracket edge".into(),
            ));
        }
    }

    // Bisect until the bracket collapses to adjacent floats. Stopping
    // earlier on a small residual is not enough: near a tangency the true
    // displacement `t - r` can sit far below any absolute residual
    // tolerance, and the reflections downstream need it to full relative
    // accuracy.
    let mut lo = lo;
    let mut g_lo = g_lo;
    for _ in 0..ROOT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = residual(rf, mid, s, t);
        if g == 0.0 {
            return Ok(Some(mid));
        }
        if g < 0.0 {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
            g_hi = g;
        }
    }
    let (best, g_best) = if g_lo.abs() < g_hi.abs() {
        (lo, g_lo)
    } else {
        (hi, g_hi)
    };
    if g_best.abs() <= tol.max(1e-9 * (1.0 + t) * (1.0 + g_slope_scale(rf, best))) {
        Ok(Some(best))
    } else {
        Err(Error::ProjectionFailure(format!(
            "radial root stalled at residual {g_best:e}"
        )))
    }
}

/// Residual slope scale `phi'(r)^2`; the achievable residual at the
/// floating-point root grows with it for steep profiles.
fn g_slope_scale(rf: &RadialFunction, r: f64) -> f64 {
    let d = rf.dphi(r);
    if d.is_finite() {
        d * d
    } else {
        f64::MAX
    }
}

/// Projection onto `{(x, s) : phi(|x|) <= s}`.
pub(crate) fn project_radial(rf: &RadialFunction, n: usize, p: &Point) -> Result<Point, Error> {
    let (x, s) = split_epi(p, n);
    let t = math::sqrt(x.iter().map(|c| c * c).sum());
    if rf.phi(t) <= s {
        return Ok(p.clone());
    }
    if t == 0.0 {
        // Apex case: nearest point is straight up.
        return Ok(join_epi(&x, rf.phi(0.0)));
    }
    let domain = rf.domain_radius();
    let (r, height) = match radial_root(rf, t, s)? {
        Some(r) => (r, rf.phi(r).max(s)),
        // Wall case on a bounded effective domain.
        None => (domain, rf.phi(domain).max(s)),
    };
    let scale = r / t;
    let u: Vec<f64> = x.iter().map(|c| c * scale).collect();
    Ok(join_epi(&u, height))
}

/// Dense Gaussian elimination with partial pivoting; `a` is row-major n x n.
fn solve_dense(a: &mut [f64], b: &mut [f64], n: usize) -> Result<(), Error> {
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if a[row * n + col].abs() > a[pivot * n + col].abs() {
                pivot = row;
            }
        }
        if a[pivot * n + col].abs() < 1e-300 {
            return Err(Error::ProjectionFailure(
                "singular Jacobian in epigraph Newton solve".into(),
            ));
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        let diag = a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / diag;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            b[row] -= factor * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc -= a[col * n + k] * b[k];
        }
        b[col] = acc / a[col * n + col];
    }
    Ok(())
}

fn norm2(v: &[f64]) -> f64 {
    math::sqrt(v.iter().map(|c| c * c).sum())
}

/// Projection onto `{(x, s) : f(x) <= s}` for a smooth convex `f`.
pub(crate) fn project_smooth(epi: &EpigraphSmooth, p: &Point) -> Result<Point, Error> {
    let n = epi.base_dim();
    let (x, s) = split_epi(p, n);
    if epi.f(&x) <= s {
        return Ok(p.clone());
    }
    let x_norm = norm2(&x);
    let accept_tol = NEWTON_RESIDUAL_TOL * (1.0 + x_norm);
    // Keep iterating well past the acceptance tolerance: the reflections
    // built on this projection need the displacement `u - x` to relative
    // accuracy, so the solve runs to its floating-point floor and the line
    // search failing to improve `|F|` is the natural stagnation signal.
    let floor_tol = 1e-15 * (1.0 + x_norm);

    let eval = |u: &[f64]| -> Vec<f64> {
        let fu = epi.f(u);
        let g = epi.grad(u);
        let mut out = vec![0.0; n];
        for i in 0..n {
            out[i] = u[i] + (fu - s) * g[i] - x[i];
        }
        out
    };

    let mut u = x.clone();
    let mut fvec = eval(&u);
    let mut fnorm = norm2(&fvec);
    'newton: for _ in 0..NEWTON_MAX_ITER {
        if fnorm <= floor_tol {
            break;
        }
        // Central-difference Jacobian, column by column.
        let h = 1e-6 * (1.0 + norm2(&u));
        let mut jac = vec![0.0; n * n];
        let mut probe = u.clone();
        for j in 0..n {
            let saved = probe[j];
            probe[j] = saved + h;
            let fp = eval(&probe);
            probe[j] = saved - h;
            let fm = eval(&probe);
            probe[j] = saved;
            for i in 0..n {
                jac[i * n + j] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        let mut step: Vec<f64> = fvec.iter().map(|v| -v).collect();
        solve_dense(&mut jac, &mut step, n)?;

        // Armijo backtracking on |F|^2.
        let m0 = fnorm * fnorm;
        let mut lambda = 1.0;
        loop {
            let trial: Vec<f64> = u
                .iter()
                .zip(step.iter())
                .map(|(ui, si)| ui + lambda * si)
                .collect();
            let ftrial = eval(&trial);
            let mtrial = norm2(&ftrial);
            if mtrial * mtrial <= (1.0 - 1e-4 * lambda) * m0 {
                u = trial;
                fvec = ftrial;
                fnorm = mtrial;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-12 {
                // no achievable decrease left
                break 'newton;
            }
        }
    }
    if fnorm <= accept_tol {
        Ok(join_epi(&u, epi.f(&u).max(s)))
    } else {
        Err(Error::ProjectionFailure(format!(
            "epigraph Newton solve stalled at residual {fnorm:e}"
        )))
    }
}
