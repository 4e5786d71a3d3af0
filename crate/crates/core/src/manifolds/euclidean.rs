//! Flat space. Kept as its own kernel so the dispatch in `Manifold` reads
//! uniformly across manifolds.

use super::{Point, Tangent};

pub(super) fn exp(p: &Point, x: &Tangent) -> Point {
    Point::new(&p.coords + &x.coords)
}

pub(super) fn log(p: &Point, q: &Point) -> Tangent {
    Tangent::new(p.clone(), &q.coords - &p.coords)
}
