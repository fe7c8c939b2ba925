//! Planar geometry for oriented furniture footprints.
//!
//! Coordinates are meters with `x` growing east and `y` growing north. An
//! item at yaw `0` faces north (`+y`); yaw rotates counter-clockwise, so yaw
//! `π/2` faces west.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::math::{self, EPS};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn length(self) -> f64 {
        math::hypot(self.x, self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).length()
    }

    /// Unit vector, or `None` for a (near) zero vector.
    pub fn normalized(self) -> Option<Vec2> {
        let len = self.length();
        (len > EPS).then(|| Vec2::new(self.x / len, self.y / len))
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Unit vector an item with the given yaw faces along.
pub fn facing(yaw: f64) -> Vec2 {
    let (c, s) = math::rotation(yaw);
    Vec2::new(-s, c)
}

/// Unit vector pointing to an item's own left.
pub fn left_of_facing(yaw: f64) -> Vec2 {
    facing(yaw).perp()
}

/// An oriented rectangle: `width` runs along the item's local x axis,
/// `depth` along its facing direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Footprint {
    pub center: Vec2,
    pub width: f64,
    pub depth: f64,
    pub yaw: f64,
}

impl Footprint {
    pub fn new(center: Vec2, width: f64, depth: f64, yaw: f64) -> Self {
        Self { center, width, depth, yaw }
    }

    pub fn area(&self) -> f64 {
        self.width * self.depth
    }

    /// Local x and y (facing) unit axes.
    pub fn axes(&self) -> (Vec2, Vec2) {
        let (c, s) = math::rotation(self.yaw);
        (Vec2::new(c, s), Vec2::new(-s, c))
    }

    /// Corners in counter-clockwise order.
    pub fn corners(&self) -> [Vec2; 4] {
        let (ux, uy) = self.axes();
        let hx = ux * (self.width / 2.0);
        let hy = uy * (self.depth / 2.0);
        let c = self.center;
        [c - hx - hy, c + hx - hy, c + hx + hy, c - hx + hy]
    }

    /// Half extents of the axis-aligned bounding box.
    pub fn half_extents(&self) -> Vec2 {
        let (ux, uy) = self.axes();
        let hw = self.width / 2.0;
        let hd = self.depth / 2.0;
        Vec2::new(
            ux.x.abs() * hw + uy.x.abs() * hd,
            ux.y.abs() * hw + uy.y.abs() * hd,
        )
    }

    pub fn aabb(&self) -> Aabb {
        let h = self.half_extents();
        Aabb {
            min: self.center - h,
            max: self.center + h,
        }
    }

    /// Expresses a world point in this footprint's local frame.
    pub fn to_local(&self, p: Vec2) -> Vec2 {
        let (ux, uy) = self.axes();
        let d = p - self.center;
        Vec2::new(d.dot(ux), d.dot(uy))
    }

    pub fn to_world(&self, local: Vec2) -> Vec2 {
        let (ux, uy) = self.axes();
        self.center + ux * local.x + uy * local.y
    }

    /// Whether `other` lies entirely inside this rectangle (with `tol` slack).
    pub fn contains_footprint(&self, other: &Footprint, tol: f64) -> bool {
        let hw = self.width / 2.0 + tol;
        let hd = self.depth / 2.0 + tol;
        other.corners().iter().all(|&p| {
            let l = self.to_local(p);
            l.x.abs() <= hw && l.y.abs() <= hd
        })
    }

    /// The rectangle of `depth` meters directly ahead of the front face.
    pub fn frontal_zone(&self, depth: f64) -> Footprint {
        let (_, uy) = self.axes();
        let center = self.center + uy * (self.depth / 2.0 + depth / 2.0);
        Footprint::new(center, self.width, depth, self.yaw)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Vec2,
    pub max: Vec2,
}

impl Aabb {
    pub fn intersects(&self, other: &Aabb) -> bool {
        self.min.x < other.max.x - EPS
            && other.min.x < self.max.x - EPS
            && self.min.y < other.max.y - EPS
            && other.min.y < self.max.y - EPS
    }
}

/// An axis-aligned room rectangle `[0, width] × [0, depth]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub width: f64,
    pub depth: f64,
}

impl Bounds {
    pub fn corners(&self) -> [Vec2; 4] {
        [
            Vec2::new(0.0, 0.0),
            Vec2::new(self.width, 0.0),
            Vec2::new(self.width, self.depth),
            Vec2::new(0.0, self.depth),
        ]
    }

    /// Largest distance any corner of `fp` sits outside the bounds.
    pub fn max_excursion(&self, fp: &Footprint) -> f64 {
        fp.corners().iter().fold(0.0_f64, |acc, p| {
            acc.max(-p.x).max(p.x - self.width).max(-p.y).max(p.y - self.depth)
        })
    }

    pub fn contains(&self, fp: &Footprint, tol: f64) -> bool {
        self.max_excursion(fp) <= tol
    }

    /// Footprint area lying outside the bounds.
    pub fn outside_area(&self, fp: &Footprint) -> f64 {
        if self.max_excursion(fp) <= 0.0 {
            return 0.0;
        }
        let inside = polygon_area(&clip_convex(&fp.corners(), &self.corners()));
        (fp.area() - inside).max(0.0)
    }
}

/// Separating-axis overlap test. Touching rectangles do not overlap.
pub fn overlaps(a: &Footprint, b: &Footprint) -> bool {
    if !a.aabb().intersects(&b.aabb()) {
        return false;
    }
    penetration(a, b).is_some()
}

/// Minimum translation that separates `b` from `a`: returns the unit axis
/// pointing from `a` towards `b` and the penetration depth along it.
pub fn penetration(a: &Footprint, b: &Footprint) -> Option<(Vec2, f64)> {
    let mut axes = penetration_axes(a, b)?;
    axes.sort_by(|l, r| l.1.total_cmp(&r.1));
    axes.first().copied()
}

/// All four separating-axis candidates with their penetration depths,
/// oriented from `a` towards `b`. `None` if the rectangles do not overlap.
pub fn penetration_axes(a: &Footprint, b: &Footprint) -> Option<Vec<(Vec2, f64)>> {
    let (ax, ay) = a.axes();
    let (bx, by) = b.axes();
    let ca = a.corners();
    let cb = b.corners();
    let mut out = Vec::with_capacity(4);
    for axis in [ax, ay, bx, by] {
        let (amin, amax) = project(&ca, axis);
        let (bmin, bmax) = project(&cb, axis);
        let depth = (amax - bmin).min(bmax - amin);
        if depth <= EPS {
            return None;
        }
        let dir = if (b.center - a.center).dot(axis) >= 0.0 { axis } else { -axis };
        out.push((dir, depth));
    }
    Some(out)
}

fn project(points: &[Vec2], axis: Vec2) -> (f64, f64) {
    points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let d = p.dot(axis);
        (lo.min(d), hi.max(d))
    })
}

/// Area of the intersection of two footprints.
pub fn intersection_area(a: &Footprint, b: &Footprint) -> f64 {
    if !overlaps(a, b) {
        return 0.0;
    }
    polygon_area(&clip_convex(&a.corners(), &b.corners()))
}

/// Clips `subject` against the convex counter-clockwise polygon `clip`.
pub fn clip_convex(subject: &[Vec2], clip: &[Vec2]) -> Vec<Vec2> {
    let mut output: Vec<Vec2> = subject.to_vec();
    for i in 0..clip.len() {
        if output.is_empty() {
            break;
        }
        let e0 = clip[i];
        let e1 = clip[(i + 1) % clip.len()];
        let edge = e1 - e0;
        let inside = |p: Vec2| edge.cross(p - e0) >= -1e-12;
        let input = core::mem::take(&mut output);
        for j in 0..input.len() {
            let cur = input[j];
            let prev = input[(j + input.len() - 1) % input.len()];
            let (cin, pin) = (inside(cur), inside(prev));
            if cin {
                if !pin {
                    output.push(line_intersection(prev, cur, e0, e1));
                }
                output.push(cur);
            } else if pin {
                output.push(line_intersection(prev, cur, e0, e1));
            }
        }
    }
    output
}

fn line_intersection(p0: Vec2, p1: Vec2, q0: Vec2, q1: Vec2) -> Vec2 {
    let r = p1 - p0;
    let s = q1 - q0;
    let denom = r.cross(s);
    if denom.abs() < 1e-15 {
        return p1;
    }
    let t = (q0 - p0).cross(s) / denom;
    p0 + r * t
}

/// Shoelace area (absolute).
pub fn polygon_area(points: &[Vec2]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 0..points.len() {
        sum += points[i].cross(points[(i + 1) % points.len()]);
    }
    (sum / 2.0).abs()
}

/// Shortest distance between the boundaries of two footprints (`0` when they
/// overlap).
pub fn surface_distance(a: &Footprint, b: &Footprint) -> f64 {
    if overlaps(a, b) {
        return 0.0;
    }
    let ca = a.corners();
    let cb = b.corners();
    let mut best = f64::INFINITY;
    for (pts, poly) in [(&ca, &cb), (&cb, &ca)] {
        for &p in pts.iter() {
            for i in 0..4 {
                best = best.min(point_segment_distance(p, poly[i], poly[(i + 1) % 4]));
            }
        }
    }
    best
}

pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 < 1e-18 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Whether two vertical bands `[z0, z0 + h0]` and `[z1, z1 + h1]` share
/// positive height.
pub fn z_bands_overlap(z0: f64, h0: f64, z1: f64, h1: f64) -> bool {
    (z0 + h0).min(z1 + h1) - z0.max(z1) > EPS
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn unit(x: f64, y: f64) -> Footprint {
        Footprint::new(Vec2::new(x, y), 1.0, 1.0, 0.0)
    }

    #[test]
    fn facing_convention() {
        assert_eq!(facing(0.0), Vec2::new(0.0, 1.0));
        assert_eq!(facing(FRAC_PI_2), Vec2::new(-1.0, 0.0));
        assert_eq!(facing(PI), Vec2::new(0.0, -1.0));
        assert_eq!(left_of_facing(0.0), Vec2::new(-1.0, 0.0));
    }

    #[test]
    fn identical_squares_overlap_fully() {
        assert!((intersection_area(&unit(0.0, 0.0), &unit(0.0, 0.0)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn touching_squares_do_not_overlap() {
        assert!(!overlaps(&unit(0.0, 0.0), &unit(1.0, 0.0)));
        assert_eq!(intersection_area(&unit(0.0, 0.0), &unit(1.0, 0.0)), 0.0);
    }

    #[test]
    fn half_overlap_area() {
        let a = intersection_area(&unit(0.0, 0.0), &unit(0.5, 0.0));
        assert!((a - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rotated_square_overlap_area() {
        // A diamond centred on a unit square's corner covers a quarter of
        // its own area inside the square.
        let square = unit(0.0, 0.0);
        let diamond = Footprint::new(Vec2::new(0.5, 0.5), 0.5, 0.5, FRAC_PI_4);
        let a = intersection_area(&square, &diamond);
        assert!((a - 0.0625).abs() < 1e-12, "{a}");
    }

    #[test]
    fn outside_area_of_half_outside_square() {
        let room = Bounds { width: 5.0, depth: 4.0 };
        let fp = unit(0.0, 2.0);
        assert!((room.outside_area(&fp) - 0.5).abs() < 1e-12);
        assert_eq!(room.outside_area(&unit(2.0, 2.0)), 0.0);
    }

    #[test]
    fn mtv_points_away() {
        let (axis, depth) = penetration(&unit(0.0, 0.0), &unit(0.8, 0.1)).unwrap();
        assert_eq!(axis, Vec2::new(1.0, 0.0));
        assert!((depth - 0.2).abs() < 1e-12);
    }

    #[test]
    fn surface_distance_between_separated_squares() {
        assert!((surface_distance(&unit(0.0, 0.0), &unit(3.0, 0.0)) - 2.0).abs() < 1e-12);
        assert_eq!(surface_distance(&unit(0.0, 0.0), &unit(0.5, 0.0)), 0.0);
    }

    #[test]
    fn frontal_zone_sits_ahead() {
        let fp = Footprint::new(Vec2::new(1.0, 1.0), 1.0, 0.5, 0.0);
        let zone = fp.frontal_zone(0.6);
        assert!((zone.center.y - 1.55).abs() < 1e-12);
        assert_eq!(zone.width, 1.0);
    }

    #[test]
    fn z_band_stacking() {
        assert!(!z_bands_overlap(0.0, 0.75, 0.75, 0.1));
        assert!(z_bands_overlap(0.0, 0.75, 0.5, 0.1));
    }
}
