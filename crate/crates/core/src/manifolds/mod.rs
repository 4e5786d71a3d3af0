//! Geometry kernels: exponential/logarithmic maps, distance, metric, parallel
//! transport and the musical isomorphisms for the supported manifolds, plus
//! the tangent-bundle and power-manifold structures built on top of them.
//!
//! Points and vectors carry their coordinates in one fixed chart per
//! manifold:
//!
//! * `Euclidean(d)`: free vectors of length `d`.
//! * `Sphere2`: unit vectors in R^3; tangent vectors are ambient 3-vectors
//!   orthogonal to the base point.
//! * `Spd(n)`: symmetric positive definite n x n matrices with the affine
//!   invariant metric, stored row-major as length n*n coordinate vectors;
//!   tangent vectors are symmetric matrices in the same layout.
//!
//! Cotangent vectors use the same chart as tangent vectors and pair against
//! them with the plain (Frobenius) dot product of coordinates. On Euclidean
//! space and the sphere this makes `flat`/`sharp` coordinate identities; on
//! SPD they are the explicit maps X -> p^-1 X p^-1 and xi -> p xi p.

mod bundle;
mod euclidean;
mod grid;
mod mean;
mod sphere;
mod spd;

pub use bundle::{bundle_exp, bundle_log, bundle_pt, BundlePoint, BundleTangent};
pub use grid::{CotangentGrid, DualField, ManifoldGrid, TangentField, TangentGrid};
pub use mean::karcher_mean;

use nalgebra::DVector;

use crate::error::GeometryError;

/// Tolerance used when deciding whether two points may be treated as the
/// same base point.
pub const BASE_POINT_TOL: f64 = 1e-9;

/// Membership tolerances.
pub const SPHERE_UNIT_TOL: f64 = 1e-12;
pub const SPD_SYMMETRY_TOL: f64 = 1e-12;
pub const SPD_EIG_FLOOR: f64 = 1e-14;

/// The supported manifolds. The enum value is the full descriptor: all
/// derived quantities (coordinate dimensions, membership tests) follow
/// from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Manifold {
    /// R^d with the Euclidean inner product.
    Euclidean(usize),
    /// The unit 2-sphere embedded in R^3, round metric.
    Sphere2,
    /// Symmetric positive definite n x n matrices, affine invariant metric.
    Spd(usize),
}

/// A point of a manifold, stored in the chart described on [`Manifold`].
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub coords: DVector<f64>,
}

/// A tangent vector together with its base point.
#[derive(Debug, Clone, PartialEq)]
pub struct Tangent {
    pub base: Point,
    pub coords: DVector<f64>,
}

/// A cotangent vector together with its base point. Coordinates live in the
/// same chart as tangent coordinates; the duality pairing is the coordinate
/// dot product.
#[derive(Debug, Clone, PartialEq)]
pub struct Cotangent {
    pub base: Point,
    pub coords: DVector<f64>,
}

impl Point {
    pub fn new(coords: DVector<f64>) -> Self {
        Point { coords }
    }

    pub fn from_slice(coords: &[f64]) -> Self {
        Point {
            coords: DVector::from_column_slice(coords),
        }
    }

    /// True when `other` is close enough to count as the same base point.
    pub fn same_base(&self, other: &Point) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let diff = (&self.coords - &other.coords).amax();
        let scale = 1.0 + self.coords.amax().max(other.coords.amax());
        diff <= BASE_POINT_TOL * scale
    }
}

impl Tangent {
    pub fn new(base: Point, coords: DVector<f64>) -> Self {
        Tangent { base, coords }
    }

    pub fn zero_like(&self) -> Tangent {
        Tangent {
            base: self.base.clone(),
            coords: DVector::zeros(self.coords.len()),
        }
    }

    /// Coordinate sum of two vectors in the same tangent space.
    pub fn add(&self, other: &Tangent) -> Tangent {
        debug_assert!(self.base.same_base(&other.base));
        Tangent {
            base: self.base.clone(),
            coords: &self.coords + &other.coords,
        }
    }

    pub fn sub(&self, other: &Tangent) -> Tangent {
        debug_assert!(self.base.same_base(&other.base));
        Tangent {
            base: self.base.clone(),
            coords: &self.coords - &other.coords,
        }
    }

    pub fn scale(&self, s: f64) -> Tangent {
        Tangent {
            base: self.base.clone(),
            coords: &self.coords * s,
        }
    }
}

impl Cotangent {
    pub fn new(base: Point, coords: DVector<f64>) -> Self {
        Cotangent { base, coords }
    }

    pub fn add(&self, other: &Cotangent) -> Cotangent {
        debug_assert!(self.base.same_base(&other.base));
        Cotangent {
            base: self.base.clone(),
            coords: &self.coords + &other.coords,
        }
    }

    pub fn sub(&self, other: &Cotangent) -> Cotangent {
        debug_assert!(self.base.same_base(&other.base));
        Cotangent {
            base: self.base.clone(),
            coords: &self.coords - &other.coords,
        }
    }

    pub fn scale(&self, s: f64) -> Cotangent {
        Cotangent {
            base: self.base.clone(),
            coords: &self.coords * s,
        }
    }
}

type Result<T> = std::result::Result<T, GeometryError>;

impl Manifold {
    /// Length of a point coordinate vector.
    pub fn point_dim(&self) -> usize {
        match self {
            Manifold::Euclidean(d) => *d,
            Manifold::Sphere2 => 3,
            Manifold::Spd(n) => n * n,
        }
    }

    /// Length of a tangent coordinate vector (same chart storage as points).
    pub fn coord_dim(&self) -> usize {
        self.point_dim()
    }

    /// Intrinsic dimension of the tangent space.
    pub fn tangent_dim(&self) -> usize {
        match self {
            Manifold::Euclidean(d) => *d,
            Manifold::Sphere2 => 2,
            Manifold::Spd(n) => n * (n + 1) / 2,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Manifold::Euclidean(d) => format!("euclidean{d}"),
            Manifold::Sphere2 => "sphere2".to_string(),
            Manifold::Spd(n) => format!("spd{n}"),
        }
    }

    /// Parse the token produced by [`Manifold::name`].
    pub fn parse(token: &str) -> Option<Manifold> {
        let t = token.trim().to_ascii_lowercase();
        if t == "sphere2" {
            return Some(Manifold::Sphere2);
        }
        if let Some(d) = t.strip_prefix("euclidean") {
            return d.parse().ok().filter(|d| *d >= 1).map(Manifold::Euclidean);
        }
        if let Some(n) = t.strip_prefix("spd") {
            return n.parse().ok().filter(|n| *n >= 1).map(Manifold::Spd);
        }
        None
    }

    /// Membership test for a point, with the tolerances fixed above.
    pub fn check_point(&self, p: &Point) -> Result<()> {
        if p.coords.len() != self.point_dim() {
            return Err(GeometryError::DimensionMismatch {
                op: "check_point",
                expected: self.point_dim(),
                got: p.coords.len(),
            });
        }
        match self {
            Manifold::Euclidean(_) => Ok(()),
            Manifold::Sphere2 => sphere::check_point(p),
            Manifold::Spd(n) => spd::check_point(*n, p),
        }
    }

    /// Membership test for a tangent vector at its own base point.
    pub fn check_tangent(&self, x: &Tangent) -> Result<()> {
        self.check_point(&x.base)?;
        if x.coords.len() != self.coord_dim() {
            return Err(GeometryError::DimensionMismatch {
                op: "check_tangent",
                expected: self.coord_dim(),
                got: x.coords.len(),
            });
        }
        match self {
            Manifold::Euclidean(_) => Ok(()),
            Manifold::Sphere2 => sphere::check_tangent(x),
            Manifold::Spd(n) => spd::check_tangent(*n, x),
        }
    }

    pub fn zero_tangent(&self, p: &Point) -> Tangent {
        Tangent {
            base: p.clone(),
            coords: DVector::zeros(self.coord_dim()),
        }
    }

    pub fn zero_cotangent(&self, p: &Point) -> Cotangent {
        Cotangent {
            base: p.clone(),
            coords: DVector::zeros(self.coord_dim()),
        }
    }

    /// Exponential map: the endpoint at t = 1 of the geodesic leaving
    /// `x.base` with velocity `x`.
    pub fn exp(&self, p: &Point, x: &Tangent) -> Result<Point> {
        if !x.base.same_base(p) {
            return Err(GeometryError::BaseMismatch { op: "exp" });
        }
        match self {
            Manifold::Euclidean(_) => Ok(euclidean::exp(p, x)),
            Manifold::Sphere2 => Ok(sphere::exp(p, x)),
            Manifold::Spd(n) => spd::exp(*n, p, x),
        }
    }

    /// Logarithmic map, the (local) inverse of `exp`. On the sphere the
    /// antipodal pair is rejected.
    pub fn log(&self, p: &Point, q: &Point) -> Result<Tangent> {
        match self {
            Manifold::Euclidean(_) => Ok(euclidean::log(p, q)),
            Manifold::Sphere2 => sphere::log(p, q),
            Manifold::Spd(n) => spd::log(*n, p, q),
        }
    }

    /// Riemannian distance.
    pub fn dist(&self, p: &Point, q: &Point) -> Result<f64> {
        match self {
            Manifold::Euclidean(_) => Ok((&p.coords - &q.coords).norm()),
            Manifold::Sphere2 => Ok(sphere::dist(p, q)),
            Manifold::Spd(n) => spd::dist(*n, p, q),
        }
    }

    /// Riemannian metric on tangent vectors with a common base point.
    pub fn inner(&self, x: &Tangent, y: &Tangent) -> Result<f64> {
        if !x.base.same_base(&y.base) {
            return Err(GeometryError::BaseMismatch { op: "inner" });
        }
        match self {
            Manifold::Euclidean(_) | Manifold::Sphere2 => Ok(x.coords.dot(&y.coords)),
            Manifold::Spd(n) => spd::inner(*n, x, y),
        }
    }

    pub fn norm(&self, x: &Tangent) -> Result<f64> {
        Ok(self.inner(x, x)?.max(0.0).sqrt())
    }

    /// Parallel transport of `x` along the unique shortest geodesic from
    /// `x.base` to `q`. An isometry between the two tangent spaces.
    pub fn parallel_transport(&self, q: &Point, x: &Tangent) -> Result<Tangent> {
        match self {
            Manifold::Euclidean(_) => Ok(Tangent::new(q.clone(), x.coords.clone())),
            Manifold::Sphere2 => sphere::parallel_transport(q, x),
            Manifold::Spd(n) => spd::parallel_transport(*n, q, x),
        }
    }

    /// Musical isomorphism `flat`: the metric image of a tangent vector.
    pub fn flat(&self, x: &Tangent) -> Result<Cotangent> {
        match self {
            Manifold::Euclidean(_) | Manifold::Sphere2 => {
                Ok(Cotangent::new(x.base.clone(), x.coords.clone()))
            }
            Manifold::Spd(n) => spd::flat(*n, x),
        }
    }

    /// Musical isomorphism `sharp`, inverse of [`Manifold::flat`].
    pub fn sharp(&self, xi: &Cotangent) -> Result<Tangent> {
        match self {
            Manifold::Euclidean(_) | Manifold::Sphere2 => {
                Ok(Tangent::new(xi.base.clone(), xi.coords.clone()))
            }
            Manifold::Spd(n) => spd::sharp(*n, xi),
        }
    }

    /// Duality pairing `<xi, y>` of a cotangent and a tangent vector at the
    /// same base point. In the chosen charts this is the coordinate dot
    /// product on every manifold.
    pub fn pairing(&self, xi: &Cotangent, y: &Tangent) -> Result<f64> {
        if !xi.base.same_base(&y.base) {
            return Err(GeometryError::BaseMismatch { op: "pairing" });
        }
        Ok(xi.coords.dot(&y.coords))
    }

    /// Norm on the cotangent space induced by `sharp`.
    pub fn conorm(&self, xi: &Cotangent) -> Result<f64> {
        let x = self.sharp(xi)?;
        self.norm(&x)
    }

    /// Inner product on the cotangent space induced by `sharp`.
    pub fn coinner(&self, xi: &Cotangent, eta: &Cotangent) -> Result<f64> {
        let x = self.sharp(xi)?;
        let y = self.sharp(eta)?;
        self.inner(&x, &y)
    }

    /// Parallel transport of a cotangent vector, defined through the
    /// musical isomorphisms: transport the sharp image and flat it again.
    pub fn cotangent_transport(&self, q: &Point, xi: &Cotangent) -> Result<Cotangent> {
        match self {
            Manifold::Euclidean(_) => Ok(Cotangent::new(q.clone(), xi.coords.clone())),
            Manifold::Sphere2 => {
                let x = self.sharp(xi)?;
                let y = self.parallel_transport(q, &x)?;
                self.flat(&y)
            }
            Manifold::Spd(n) => spd::cotangent_transport(*n, q, xi),
        }
    }

    /// Point `gamma(t)` on the geodesic from `p` (t = 0) to `q` (t = 1).
    pub fn geodesic(&self, p: &Point, q: &Point, t: f64) -> Result<Point> {
        let v = self.log(p, q)?;
        self.exp(p, &v.scale(t))
    }

    /// An orthonormal basis of the tangent space at `p` (deterministic).
    pub fn tangent_basis(&self, p: &Point) -> Vec<Tangent> {
        match self {
            Manifold::Euclidean(d) => (0..*d)
                .map(|i| {
                    let mut c = DVector::zeros(*d);
                    c[i] = 1.0;
                    Tangent::new(p.clone(), c)
                })
                .collect(),
            Manifold::Sphere2 => sphere::tangent_basis(p),
            Manifold::Spd(n) => spd::tangent_basis(*n, p),
        }
    }

    /// Deterministic random point (for data generation and tests).
    pub fn random_point<R: rand::Rng>(&self, rng: &mut R) -> Point {
        match self {
            Manifold::Euclidean(d) => {
                let coords = DVector::from_fn(*d, |_, _| standard_normal(rng));
                Point::new(coords)
            }
            Manifold::Sphere2 => sphere::random_point(rng),
            Manifold::Spd(n) => spd::random_point(*n, rng),
        }
    }

    /// Deterministic random tangent vector at `p` with norm of order `scale`.
    pub fn random_tangent<R: rand::Rng>(&self, p: &Point, scale: f64, rng: &mut R) -> Tangent {
        let basis = self.tangent_basis(p);
        let mut x = self.zero_tangent(p);
        for b in &basis {
            let c = standard_normal(rng) * scale / (basis.len() as f64).sqrt();
            x.coords += &b.coords * c;
        }
        x
    }
}

/// Standard normal sample via Box-Muller, so behavior does not depend on
/// distribution crates.
pub(crate) fn standard_normal<R: rand::Rng>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        if u > f64::MIN_POSITIVE {
            return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn descriptor_dimensions() {
        assert_eq!(Manifold::Euclidean(4).point_dim(), 4);
        assert_eq!(Manifold::Sphere2.point_dim(), 3);
        assert_eq!(Manifold::Sphere2.tangent_dim(), 2);
        assert_eq!(Manifold::Spd(3).point_dim(), 9);
        assert_eq!(Manifold::Spd(3).tangent_dim(), 6);
    }

    #[test]
    fn parse_round_trips() {
        for m in [Manifold::Euclidean(3), Manifold::Sphere2, Manifold::Spd(2)] {
            assert_eq!(Manifold::parse(&m.name()), Some(m));
        }
        assert_eq!(Manifold::parse("torus"), None);
    }

    #[test]
    fn euclidean_exp_log_examples() {
        let m = Manifold::Euclidean(2);
        let p = Point::from_slice(&[1.0, 2.0]);
        let x = Tangent::new(p.clone(), DVector::from_column_slice(&[3.0, -1.0]));
        let q = m.exp(&p, &x).unwrap();
        assert_eq!(q.coords.as_slice(), &[4.0, 1.0]);
        let v = m.log(&p, &q).unwrap();
        assert_eq!(v.coords.as_slice(), &[3.0, -1.0]);
    }

    #[test]
    fn euclidean_metric_examples() {
        let m = Manifold::Euclidean(2);
        let p = Point::from_slice(&[0.0, 0.0]);
        let x = Tangent::new(p.clone(), DVector::from_column_slice(&[1.0, 2.0]));
        let y = Tangent::new(p.clone(), DVector::from_column_slice(&[3.0, 4.0]));
        assert_relative_eq!(m.inner(&x, &y).unwrap(), 11.0);
        let q = Point::from_slice(&[1.0, 1.0]);
        let r = Point::from_slice(&[1.0, -1.0]);
        let d = m
            .dist(
                &Point::new(&q.coords / 2.0_f64.sqrt()),
                &Point::new(&r.coords / 2.0_f64.sqrt()),
            )
            .unwrap();
        assert_relative_eq!(d, 2.0_f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn base_mismatch_is_an_error() {
        let m = Manifold::Euclidean(2);
        let p = Point::from_slice(&[0.0, 0.0]);
        let q = Point::from_slice(&[5.0, 0.0]);
        let x = Tangent::new(q, DVector::from_column_slice(&[1.0, 0.0]));
        assert!(matches!(
            m.exp(&p, &x),
            Err(GeometryError::BaseMismatch { .. })
        ));
        let y = Tangent::new(p, DVector::from_column_slice(&[1.0, 0.0]));
        assert!(m.inner(&x, &y).is_err());
    }

    #[test]
    fn flat_sharp_identity_on_euclidean() {
        let m = Manifold::Euclidean(3);
        let p = Point::from_slice(&[1.0, 0.0, -2.0]);
        let x = Tangent::new(p, DVector::from_column_slice(&[0.5, 1.5, -0.25]));
        let xi = m.flat(&x).unwrap();
        assert_eq!(xi.coords, x.coords);
        let back = m.sharp(&xi).unwrap();
        assert_eq!(back.coords, x.coords);
    }
}
