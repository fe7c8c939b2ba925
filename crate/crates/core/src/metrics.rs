//! Layout quality metrics: out-of-bound rate, orientation correctness, and
//! constraint coherence.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::constraints::{magnitude, ConstraintKind, ConstraintTuple};
use crate::geometry::{self, Footprint};
use crate::placement::{Layout, PlacedItem};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricThresholds {
    /// Meters a vertex may sit outside the room before it counts.
    pub boundary_tolerance: f64,
    /// Fraction of the smaller footprint an intersection may cover.
    pub overlap_fraction: f64,
    /// Depth of the frontal clearance zone in meters.
    pub clearance_depth: f64,
}

impl Default for MetricThresholds {
    fn default() -> Self {
        Self {
            boundary_tolerance: 0.01,
            overlap_fraction: 0.01,
            clearance_depth: 0.6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OobReport {
    pub flagged: bool,
    pub detail: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("metric needs at least one layout")]
    EmptySet,
}

pub fn oob_flag(layout: &Layout) -> OobReport {
    oob_flag_with(layout, &MetricThresholds::default())
}

/// Flags a layout whose footprints leave the room or intersect another
/// footprint beyond the area threshold.
pub fn oob_flag_with(layout: &Layout, t: &MetricThresholds) -> OobReport {
    let bounds = layout.room.bounds();
    let fps: Vec<Footprint> = layout.items.iter().map(PlacedItem::footprint).collect();
    let mut detail = Vec::new();
    for (i, a) in layout.items.iter().enumerate() {
        let out = bounds.max_excursion(&fps[i]);
        if out > t.boundary_tolerance {
            detail.push(format!("{} extends {out:.3} m outside the room", a.id));
        }
        for (j, b) in layout.items.iter().enumerate().skip(i + 1) {
            if !a.z_overlaps(b) {
                continue;
            }
            let area = geometry::intersection_area(&fps[i], &fps[j]);
            let limit = t.overlap_fraction * fps[i].area().min(fps[j].area());
            if area > limit {
                detail.push(format!("{} and {} intersect by {area:.4} m2", a.id, b.id));
            }
        }
    }
    OobReport {
        flagged: !detail.is_empty(),
        detail,
    }
}

/// Percentage of flagged layouts.
pub fn oob_rate(layouts: &[Layout]) -> Result<f64, MetricsError> {
    oob_rate_with(layouts, &MetricThresholds::default())
}

pub fn oob_rate_with(layouts: &[Layout], t: &MetricThresholds) -> Result<f64, MetricsError> {
    if layouts.is_empty() {
        return Err(MetricsError::EmptySet);
    }
    let flagged = layouts.iter().filter(|l| oob_flag_with(l, t).flagged).count();
    Ok(100.0 * flagged as f64 / layouts.len() as f64)
}

/// Whether the clearance zone ahead of item `i` is open and its
/// orientation constraints hold.
pub fn item_oriented(layout: &Layout, i: usize, constraints: &[ConstraintTuple], t: &MetricThresholds) -> bool {
    let item = &layout.items[i];
    let zone = item.footprint().frontal_zone(t.clearance_depth);
    if layout.room.bounds().max_excursion(&zone) > 1e-9 {
        return false;
    }
    let zone_box = zone.aabb();
    let blocked = layout.items.iter().enumerate().any(|(j, other)| {
        j != i && item.z_overlaps(other) && {
            let fp = other.footprint();
            zone_box.intersects(&fp.aabb()) && geometry::intersection_area(&zone, &fp) > 1e-9
        }
    });
    if blocked {
        return false;
    }
    constraints
        .iter()
        .filter(|c| c.ctype == ConstraintKind::Orientation && c.involves(&item.id))
        .all(|c| magnitude(c, layout) == 0.0)
}

pub fn orientation_correctness(layout: &Layout, constraints: &[ConstraintTuple]) -> f64 {
    orientation_correctness_with(layout, constraints, &MetricThresholds::default())
}

/// Percentage of items with an open frontal zone and satisfied orientation
/// constraints. An empty layout scores 100.
pub fn orientation_correctness_with(layout: &Layout, constraints: &[ConstraintTuple], t: &MetricThresholds) -> f64 {
    if layout.items.is_empty() {
        return 100.0;
    }
    let correct = (0..layout.items.len())
        .filter(|&i| item_oriented(layout, i, constraints, t))
        .count();
    100.0 * correct as f64 / layout.items.len() as f64
}

/// `1 − min(1, Σ w·m / Σ w)`; 1 when there are no weighted constraints.
pub fn coherence_score(layout: &Layout, constraints: &[ConstraintTuple]) -> f64 {
    let total_weight: f64 = constraints.iter().map(|c| c.weight).sum();
    if total_weight <= 0.0 {
        return 1.0;
    }
    let weighted: f64 = constraints.iter().map(|c| c.weight * magnitude(c, layout)).sum();
    1.0 - (weighted / total_weight).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::Comparator;
    use crate::geometry::Vec2;
    use crate::scene::{build_room, Mount, RoomType};
    use core::f64::consts::PI;

    fn item(id: &str, x: f64, y: f64, w: f64, d: f64, yaw: f64) -> PlacedItem {
        PlacedItem {
            id: id.into(),
            category: "box".into(),
            position: Vec2::new(x, y),
            z: 0.0,
            yaw,
            width: w,
            depth: d,
            height: 1.0,
            color: None,
            material: None,
            mount: Mount::Floor,
            support: None,
        }
    }

    fn layout(items: Vec<PlacedItem>) -> Layout {
        let mut l = Layout::new(build_room(RoomType::Bedroom, Some((5.0, 4.0))).unwrap());
        l.items = items;
        l
    }

    #[test]
    fn oob_cases() {
        assert!(!oob_flag(&layout(vec![item("a", 1.0, 1.0, 1.0, 1.0, 0.0), item("b", 3.0, 1.0, 1.0, 1.0, 0.0)])).flagged);
        assert!(oob_flag(&layout(vec![item("a", 0.0, 1.0, 1.0, 1.0, 0.0)])).flagged);
        // 0.005 m of a 1 m square: 0.5% overlap.
        let l = layout(vec![item("a", 1.0, 1.0, 1.0, 1.0, 0.0), item("b", 1.995, 1.0, 1.0, 1.0, 0.0)]);
        assert!(!oob_flag(&l).flagged);
    }

    #[test]
    fn oob_rate_cases() {
        let ok = layout(vec![item("a", 1.0, 1.0, 1.0, 1.0, 0.0)]);
        let bad = layout(vec![item("a", 0.0, 1.0, 1.0, 1.0, 0.0)]);
        assert_eq!(oob_rate(&[ok.clone(), bad]), Ok(50.0));
        assert_eq!(oob_rate(&[ok]), Ok(0.0));
        assert_eq!(oob_rate(&[]), Err(MetricsError::EmptySet));
    }

    #[test]
    fn orientation_cases() {
        assert_eq!(orientation_correctness(&layout(vec![item("chair", 2.5, 2.0, 0.5, 0.5, 0.0)]), &[]), 100.0);
        // Wardrobe 0.1 m from the north wall, facing it.
        let wardrobe = item("wardrobe", 2.5, 4.0 - 0.1 - 0.3, 1.2, 0.6, 0.0);
        assert_eq!(orientation_correctness(&layout(vec![wardrobe]), &[]), 0.0);
        let four = layout(vec![
            item("a", 1.0, 1.0, 0.5, 0.5, 0.0),
            item("b", 2.0, 1.0, 0.5, 0.5, 0.0),
            item("c", 3.0, 1.0, 0.5, 0.5, 0.0),
            item("d", 4.0, 3.9, 0.2, 0.2, 0.0),
        ]);
        assert_eq!(orientation_correctness(&four, &[]), 75.0);
    }

    #[test]
    fn orientation_constraint_counts() {
        let l = layout(vec![item("a", 1.0, 1.0, 0.5, 0.5, 0.0), item("b", 3.0, 1.0, 0.5, 0.5, PI / 2.0)]);
        let c = ConstraintTuple::new(ConstraintKind::Orientation, &["a", "b"], Comparator::Equals).text("relation", "face_to_face");
        assert_eq!(orientation_correctness(&l, &[c]), 0.0);
    }

    #[test]
    fn coherence_cases() {
        let l = layout(vec![item("a", 1.0, 1.0, 0.5, 0.5, 0.0)]);
        assert_eq!(coherence_score(&l, &[]), 1.0);
        let red = ConstraintTuple::new(ConstraintKind::Color, &["a"], Comparator::Equals).text("color", "red");
        assert_eq!(coherence_score(&l, core::slice::from_ref(&red)), 0.0);
        let blank = ConstraintTuple::new(ConstraintKind::OverlapFree, &[], Comparator::Predicate);
        let mut cs = vec![red, blank.clone(), blank.clone(), blank];
        assert_eq!(coherence_score(&l, &cs), 0.75);
        cs[0].weight = 10.0;
        assert!(coherence_score(&l, &cs) < 0.25);
    }
}
