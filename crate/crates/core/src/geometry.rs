//! Coordinate-level primitives: points, affine manifolds, and the
//! three-point circumcenter.
//!
//! The circumcenter of `x, y, z` is the point of `aff{x, y, z}` equidistant
//! to all three. When the three points span a plane it is obtained from the
//! two equidistance conditions, written in the coordinates
//! `c = x + alpha (y - x) + beta (z - x)`, which reduce to a 2x2 Gram system
//! solved in closed form.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::math;

/// Relative Gram-determinant threshold below which three distinct points are
/// treated as collinear.
pub const EPS_SINGULAR: f64 = 1e-12;

/// Dense point of `R^n`, double precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Point {
            coords: vec![0.0; dim],
        }
    }

    /// Standard basis vector `e_i` of `R^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn dot(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        math::sqrt(self.dot(self))
    }

    pub fn dist(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = 0.0;
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            let d = a - b;
            acc += d * d;
        }
        math::sqrt(acc)
    }

    pub fn add(&self, other: &Point) -> Point {
        self.add_scaled(1.0, other)
    }

    pub fn sub(&self, other: &Point) -> Point {
        self.add_scaled(-1.0, other)
    }

    pub fn scale(&self, s: f64) -> Point {
        Point {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// `self + a * other`.
    pub fn add_scaled(&self, a: f64, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(x, y)| x + a * y)
                .collect(),
        }
    }

    pub fn midpoint(a: &Point, b: &Point) -> Point {
        Point {
            coords: a
                .coords
                .iter()
                .zip(b.coords.iter())
                .map(|(x, y)| 0.5 * (x + y))
                .collect(),
        }
    }
}

impl core::ops::Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<(), Error> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// Affine manifold `anchor + span{basis}` with an orthonormal basis.
///
/// The basis is orthonormalized once at construction (modified Gram-Schmidt
/// with one re-orthogonalization pass), so projection costs `O(n * dim)` with
/// no factorization.
#[derive(Clone, Debug)]
pub struct AffineManifold {
    anchor: Point,
    basis: Vec<Point>,
    dim_ambient: usize,
}

impl AffineManifold {
    /// Builds the manifold through `anchor` spanned by `directions`.
    ///
    /// Directions that are (numerically) dependent on earlier ones are
    /// dropped, so the stored basis is always orthonormal.
    pub fn new(anchor: Point, directions: Vec<Point>) -> Result<Self, Error> {
        let dim_ambient = anchor.dim();
        if dim_ambient == 0 {
            return Err(Error::InvalidArgument("anchor must have dim >= 1".into()));
        }
        let mut basis: Vec<Point> = Vec::with_capacity(directions.len());
        for d in directions {
            check_dim(dim_ambient, d.dim())?;
            let original_norm = d.norm();
            let mut w = d;
            // Two passes of Gram-Schmidt keep the basis orthonormal to
            // machine precision even for ill-conditioned inputs.
            for _ in 0..2 {
                for b in &basis {
                    let coeff = w.dot(b);
                    w = w.add_scaled(-coeff, b);
                }
            }
            let nw = w.norm();
            if nw > 1e-10 * (1.0 + original_norm) {
                basis.push(w.scale(1.0 / nw));
            }
        }
        if basis.len() > dim_ambient {
            return Err(Error::InvalidArgument(
                "more independent directions than ambient dimensions".into(),
            ));
        }
        Ok(AffineManifold {
            anchor,
            basis,
            dim_ambient,
        })
    }

    /// The hyperplane `{p : <normal, p> = offset}`.
    ///
    /// Stored as anchor plus an orthonormal basis of the orthogonal
    /// complement of `normal`, built from a Householder reflector.
    pub fn hyperplane(normal: Point, offset: f64) -> Result<Self, Error> {
        let n = normal.dim();
        let norm = normal.norm();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument(
                "hyperplane normal must be nonzero and finite".into(),
            ));
        }
        let u = normal.scale(1.0 / norm);
        let anchor = u.scale(offset / norm);
        // Householder vector v = u + sign(u_m) e_m with m the largest
        // component; columns H e_j, j != m, span the complement of u.
        let mut m = 0;
        for i in 0..n {
            if u[i].abs() > u[m].abs() {
                m = i;
            }
        }
        let sigma = if u[m] >= 0.0 { 1.0 } else { -1.0 };
        let mut v = u.clone().into_coords();
        v[m] += sigma;
        let vtv: f64 = v.iter().map(|a| a * a).sum();
        let mut basis = Vec::with_capacity(n - 1);
        for j in 0..n {
            if j == m {
                continue;
            }
            let coeff = 2.0 * v[j] / vtv;
            let mut col = vec![0.0; n];
            for (i, c) in col.iter_mut().enumerate() {
                *c = -coeff * v[i];
            }
            col[j] += 1.0;
            basis.push(Point::new(col));
        }
        Ok(AffineManifold {
            anchor,
            basis,
            dim_ambient: n,
        })
    }

    /// Linear subspace through the origin spanned by `directions`.
    pub fn span(dim_ambient: usize, directions: Vec<Point>) -> Result<Self, Error> {
        AffineManifold::new(Point::zeros(dim_ambient), directions)
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    /// Orthogonal projection `anchor + sum_i <p - anchor, b_i> b_i`.
    pub fn project(&self, p: &Point) -> Result<Point, Error> {
        check_dim(self.dim_ambient, p.dim())?;
        let d = p.sub(&self.anchor);
        let mut out = self.anchor.clone();
        for b in &self.basis {
            out = out.add_scaled(d.dot(b), b);
        }
        Ok(out)
    }
}

fn coincidence_eps(x: &Point, y: &Point, z: &Point) -> f64 {
    1e-14 * (1.0 + x.norm().max(y.norm()).max(z.norm()))
}

/// Circumcenter of three points: equidistant to `x`, `y`, `z` and inside
/// their affine hull.
///
/// Cardinality handling: if all three coincide the common point is returned;
/// if exactly two coincide, the midpoint of the two distinct points. Three
/// distinct collinear points yield [`Error::DegenerateCircumcenter`]; the
/// caller decides the fallback.
pub fn circumcenter3(x: &Point, y: &Point, z: &Point) -> Result<Point, Error> {
    check_dim(x.dim(), y.dim())?;
    check_dim(x.dim(), z.dim())?;
    let eps = coincidence_eps(x, y, z);
    let dxy = x.dist(y);
    let dxz = x.dist(z);
    let dyz = y.dist(z);
    if dxy <= eps && dxz <= eps && dyz <= eps {
        return Ok(x.clone());
    }
    if dxy <= eps {
        return Ok(Point::midpoint(x, z));
    }
    if dxz <= eps || dyz <= eps {
        return Ok(Point::midpoint(x, y));
    }

    let d1 = y.sub(x);
    let d2 = z.sub(x);
    let a = d1.dot(&d1);
    let b = d1.dot(&d2);
    let c = d2.dot(&d2);
    let det = a * c - b * b;
    if det <= EPS_SINGULAR * a * c {
        return Err(Error::DegenerateCircumcenter);
    }
    // Equidistance to (x, y) and (x, z):
    //   alpha a + beta b = a / 2
    //   alpha b + beta c = c / 2
    let alpha = c * (a - b) / (2.0 * det);
    let beta = a * (c - b) / (2.0 * det);
    Ok(x.add_scaled(alpha, &d1).add_scaled(beta, &d2))
}

/// True when the triangle `x, y, z` is flat to within `tol`, measured as the
/// Gram determinant of the two edge vectors relative to the squared side
/// lengths (`sin^2` of the spanned angle).
pub fn collinear(x: &Point, y: &Point, z: &Point, tol: f64) -> Result<bool, Error> {
    check_dim(x.dim(), y.dim())?;
    check_dim(x.dim(), z.dim())?;
    let d1 = y.sub(x);
    let d2 = z.sub(x);
    let a = d1.dot(&d1);
    let b = d1.dot(&d2);
    let c = d2.dot(&d2);
    if a == 0.0 || c == 0.0 {
        return Ok(true);
    }
    Ok(a * c - b * b <= tol * a * c)
}
