//! Exact piecewise-linear geometry in the punctured plane.
//!
//! All coordinates are arbitrary-precision rationals; there are no epsilons
//! and no floating point anywhere. Circles are realized as L1 spheres
//! (diamonds), which keeps every vertex rational while preserving all the
//! topology that matters: winding numbers, containment and crossings.

pub mod diagram;
pub mod surgery;

use alloc::vec::Vec;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn scale(&self, s: &Rat) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }
}

impl core::fmt::Display for Point {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Direction on the unit diamond `|x| + |y| = 1` at angle `phi` in turns.
/// Piecewise linear in `phi`, hence rational for rational input; accepts any
/// lift and reduces modulo one turn.
pub fn dir(phi: &Rat) -> Point {
    let wrapped = phi - phi.floor();
    let four = rat(4, 1);
    let scaled = &wrapped * &four; // in [0, 4)
    let quadrant = scaled
        .floor()
        .to_integer()
        .try_into()
        .unwrap_or(0i64)
        .rem_euclid(4);
    let u = &scaled - scaled.floor();
    let one = Rat::from_integer(1.into());
    match quadrant {
        0 => Point::new(&one - &u, u),
        1 => Point::new(-u.clone(), &one - &u),
        2 => Point::new(&u - &one, -u.clone()),
        _ => Point::new(u.clone(), &u - &one),
    }
}

/// Sign of the cross product `(b - a) x (c - a)`: `1` for a left turn,
/// `-1` for a right turn, `0` for collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let det = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    match det.cmp(&Rat::zero()) {
        core::cmp::Ordering::Less => -1,
        core::cmp::Ordering::Equal => 0,
        core::cmp::Ordering::Greater => 1,
    }
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let within = |lo: &Rat, hi: &Rat, v: &Rat| {
        if lo <= hi {
            lo <= v && v <= hi
        } else {
            hi <= v && v <= lo
        }
    };
    within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

/// The closed segments `ab` and `cd` intersect at some point that is not a
/// shared endpoint. Meeting exactly at a common endpoint is allowed; any
/// other contact (proper crossing, T-contact, collinear overlap) counts.
pub fn segments_clash(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    let strictly_inside = |p: &Point, u: &Point, v: &Point| -> bool {
        p != u && p != v && on_segment(p, u, v)
    };
    if strictly_inside(a, c, d)
        || strictly_inside(b, c, d)
        || strictly_inside(c, a, b)
        || strictly_inside(d, a, b)
    {
        return true;
    }
    // Coincident segments overlap everywhere without any endpoint strictly
    // inside the other.
    (a == c && b == d) || (a == d && b == c)
}

fn below(p: &Point) -> bool {
    p.y.is_negative()
}

/// Signed crossings of the polyline with the horizontal ray from `base`
/// toward `+x`. Points exactly on the ray's line count as the upper side,
/// so a path arriving at the ray from below has crossed it. For a closed
/// polygon this is the winding number around `base`.
pub fn ray_crossings(path: &[Point], base: &Point) -> i64 {
    let mut total = 0i64;
    for pair in path.windows(2) {
        let u = Point::new(&pair[0].x - &base.x, &pair[0].y - &base.y);
        let v = Point::new(&pair[1].x - &base.x, &pair[1].y - &base.y);
        if below(&u) == below(&v) {
            continue;
        }
        // x-coordinate where the edge meets y = 0, exactly.
        let t_num = -u.y.clone();
        let t_den = &v.y - &u.y;
        let x_hit = &u.x + (&v.x - &u.x) * (t_num / t_den);
        debug_assert!(!x_hit.is_zero(), "path passes through the base point");
        if x_hit.is_positive() {
            total += if below(&u) { 1 } else { -1 };
        }
    }
    total
}

/// Winding number of a closed polygon around `p`. The first vertex need not
/// be repeated at the end.
pub fn winding_number(poly: &[Point], p: &Point) -> i64 {
    if poly.is_empty() {
        return 0;
    }
    let mut closed: Vec<Point> = Vec::with_capacity(poly.len() + 1);
    closed.extend_from_slice(poly);
    if closed.first() != closed.last() {
        closed.push(poly[0].clone());
    }
    ray_crossings(&closed, p)
}

pub fn origin() -> Point {
    Point::new(Rat::zero(), Rat::zero())
}

/// Vertices of a constant-radius diamond arc from lift `phi_from` to lift
/// `phi_to` (sweeping monotonically), including quadrant corners so every
/// piece is a straight segment.
pub fn sweep_vertices(radius: &Rat, phi_from: &Rat, phi_to: &Rat) -> Vec<Point> {
    let mut out = Vec::new();
    out.push(dir(phi_from).scale(radius));
    let quarter = rat(1, 4);
    if phi_from < phi_to {
        // First corner strictly above phi_from.
        let mut corner = (phi_from / &quarter).floor() * &quarter + &quarter;
        while &corner < phi_to {
            out.push(dir(&corner).scale(radius));
            corner += &quarter;
        }
    } else if phi_from > phi_to {
        let mut corner = (phi_from / &quarter).ceil() * &quarter - &quarter;
        while &corner > phi_to {
            out.push(dir(&corner).scale(radius));
            corner -= &quarter;
        }
    }
    if phi_from != phi_to {
        out.push(dir(phi_to).scale(radius));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dir_hits_axes() {
        assert_eq!(dir(&rat(0, 1)), Point::new(rat(1, 1), rat(0, 1)));
        assert_eq!(dir(&rat(1, 4)), Point::new(rat(0, 1), rat(1, 1)));
        assert_eq!(dir(&rat(1, 2)), Point::new(rat(-1, 1), rat(0, 1)));
        assert_eq!(dir(&rat(3, 4)), Point::new(rat(0, 1), rat(-1, 1)));
        assert_eq!(dir(&rat(5, 4)), dir(&rat(1, 4)));
        assert_eq!(dir(&rat(-1, 4)), dir(&rat(3, 4)));
    }

    #[test]
    fn winding_of_diamond() {
        let poly = sweep_vertices(&rat(2, 1), &rat(0, 1), &rat(1, 1));
        assert_eq!(winding_number(&poly, &origin()), 1);
        assert_eq!(winding_number(&poly, &Point::new(rat(5, 1), rat(0, 1))), 0);
        let reversed: alloc::vec::Vec<Point> = poly.into_iter().rev().collect();
        assert_eq!(winding_number(&reversed, &origin()), -1);
    }

    #[test]
    fn segment_clash_cases() {
        let p = |x, y| Point::new(rat(x, 1), rat(y, 1));
        // Proper crossing.
        assert!(segments_clash(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        // Shared endpoint only.
        assert!(!segments_clash(&p(0, 0), &p(1, 1), &p(1, 1), &p(2, 0)));
        // T-contact.
        assert!(segments_clash(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 2)));
        // Disjoint.
        assert!(!segments_clash(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)));
        // Collinear overlap.
        assert!(segments_clash(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)));
    }

    #[test]
    fn ray_crossing_tangency_does_not_count() {
        let path = [
            Point::new(rat(1, 1), rat(-1, 1)),
            Point::new(rat(2, 1), rat(0, 1)),
            Point::new(rat(3, 1), rat(-1, 1)),
        ];
        assert_eq!(ray_crossings(&path, &origin()), 0);
    }
}
