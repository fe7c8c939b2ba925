//! Unified constraint tuples `(T, O, P, R, W)` and their geometric evaluation.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use thiserror::Error;

use crate::geometry::{self, Footprint, Vec2};
use crate::math::{self, EPS};
use crate::placement::{wall_distance, Layout, PlacedItem};
use crate::scene::{ArchElement, RelationKind, Room, SceneOrganization, Wall};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintKind {
    Distance,
    OverlapFree,
    Orientation,
    Position,
    Alignment,
    OnTopOf,
    Size,
    Color,
    Material,
    Count,
}

impl ConstraintKind {
    pub const ALL: [ConstraintKind; 10] = [
        ConstraintKind::Distance,
        ConstraintKind::OverlapFree,
        ConstraintKind::Orientation,
        ConstraintKind::Position,
        ConstraintKind::Alignment,
        ConstraintKind::OnTopOf,
        ConstraintKind::Size,
        ConstraintKind::Color,
        ConstraintKind::Material,
        ConstraintKind::Count,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstraintKind::Distance => "distance",
            ConstraintKind::OverlapFree => "overlap_free",
            ConstraintKind::Orientation => "orientation",
            ConstraintKind::Position => "position",
            ConstraintKind::Alignment => "alignment",
            ConstraintKind::OnTopOf => "on_top_of",
            ConstraintKind::Size => "size",
            ConstraintKind::Color => "color",
            ConstraintKind::Material => "material",
            ConstraintKind::Count => "count",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }

    pub fn category(self) -> ViolationCategory {
        match self {
            ConstraintKind::Size | ConstraintKind::Color | ConstraintKind::Material => ViolationCategory::Attribute,
            ConstraintKind::Count => ViolationCategory::Count,
            _ => ViolationCategory::Spatial,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparator {
    Range,
    Equals,
    Predicate,
}

impl Comparator {
    pub fn as_str(self) -> &'static str {
        match self {
            Comparator::Range => "range",
            Comparator::Equals => "equals",
            Comparator::Predicate => "predicate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Comparator::Range, Comparator::Equals, Comparator::Predicate]
            .into_iter()
            .find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Num(f64),
    Text(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMeasure {
    Center,
    Surface,
}

impl DistanceMeasure {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceMeasure::Center => "center",
            DistanceMeasure::Surface => "surface",
        }
    }

    pub fn between(self, a: &Footprint, b: &Footprint) -> f64 {
        match self {
            DistanceMeasure::Center => a.center.distance(b.center),
            DistanceMeasure::Surface => geometry::surface_distance(a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintTuple {
    pub ctype: ConstraintKind,
    /// Item ids; wall constraints carry the wall id second, count carries a
    /// category, and the layout-wide overlap constraint carries none.
    pub objects: Vec<String>,
    pub params: BTreeMap<String, ParamValue>,
    pub relation: Comparator,
    pub weight: f64,
    pub essential: bool,
}

impl ConstraintTuple {
    pub fn new(ctype: ConstraintKind, objects: &[&str], relation: Comparator) -> Self {
        Self {
            ctype,
            objects: objects.iter().map(|s| (*s).to_owned()).collect(),
            params: BTreeMap::new(),
            relation,
            weight: 1.0,
            essential: matches!(ctype, ConstraintKind::OverlapFree | ConstraintKind::OnTopOf),
        }
    }

    pub fn num(mut self, key: &str, v: f64) -> Self {
        self.params.insert(key.to_owned(), ParamValue::Num(v));
        self
    }

    pub fn text(mut self, key: &str, v: &str) -> Self {
        self.params.insert(key.to_owned(), ParamValue::Text(v.to_owned()));
        self
    }

    pub fn get_num(&self, key: &str) -> Option<f64> {
        match self.params.get(key) {
            Some(ParamValue::Num(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn get_text(&self, key: &str) -> Option<&str> {
        match self.params.get(key) {
            Some(ParamValue::Text(v)) => Some(v),
            _ => None,
        }
    }

    /// The relation this tuple was compiled from, if any.
    pub fn source_relation(&self) -> Option<RelationKind> {
        self.get_text("relation").and_then(|r| r.parse().ok())
    }

    pub fn involves(&self, id: &str) -> bool {
        self.objects.iter().any(|o| o == id)
    }

    pub fn check(&self) -> Result<(), ConstraintError> {
        let bad = |msg: String| Err(ConstraintError::Malformed(msg));
        if !(self.weight.is_finite() && self.weight >= 0.0) {
            return bad(format!("weight {} must be finite and non-negative", self.weight));
        }
        match self.ctype {
            ConstraintKind::Distance => {
                if self.objects.len() != 2 {
                    return bad("distance needs two objects".into());
                }
                let min = self.get_num("min").unwrap_or(0.0);
                let max = self.get_num("max").unwrap_or(f64::INFINITY);
                if min.is_nan() || max.is_nan() || min > max {
                    return bad(format!("distance range [{min}, {max}] is empty"));
                }
            }
            ConstraintKind::Count => {
                let n = self.get_num("n").unwrap_or(-1.0);
                if self.objects.len() != 1 || n < 0.0 {
                    return bad("count needs one category and n >= 0".into());
                }
            }
            ConstraintKind::OverlapFree => {}
            _ => {
                if self.objects.is_empty() || self.objects.len() > 2 {
                    return bad(format!("{} needs one or two objects", self.ctype.as_str()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationCategory {
    Spatial,
    Attribute,
    Count,
}

impl ViolationCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCategory::Spatial => "spatial",
            ViolationCategory::Attribute => "attribute",
            ViolationCategory::Count => "count",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    pub constraint: ConstraintTuple,
    /// Position of the constraint in the evaluated list.
    pub index: usize,
    pub magnitude: f64,
    pub category: ViolationCategory,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstraintError {
    #[error("constraint references `{0}`, which is not placed")]
    UnplacedReference(String),
    #[error("relation `{0}` has no constraint mapping")]
    UnmappableRelation(String),
    #[error("malformed constraint: {0}")]
    Malformed(String),
}

/// Tolerances baked into compiled tuples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintConfig {
    /// Radians.
    pub orientation_tolerance: f64,
    /// Meters.
    pub alignment_tolerance: f64,
    /// How `distance_range` relations are measured.
    pub distance_measure: DistanceMeasure,
}

impl Default for ConstraintConfig {
    fn default() -> Self {
        Self {
            orientation_tolerance: 15.0_f64.to_radians(),
            alignment_tolerance: 0.05,
            distance_measure: DistanceMeasure::Center,
        }
    }
}

/// Gap to a wall for `against_wall` and `corner`.
pub const FLUSH_GAP: f64 = 0.05;
/// Largest gap still counted as `near_wall`, and smallest `away_from_wall`.
pub const NEAR_GAP: f64 = 0.5;
pub const TOUCHING_MAX: f64 = 0.05;
pub const NEAR_MAX: f64 = 1.0;
pub const FAR_MIN: f64 = 2.0;
/// Vertical slack for floor, ceiling, and stacking checks.
pub const Z_TOLERANCE: f64 = 0.01;
/// Relative slack for size checks.
pub const SIZE_TOLERANCE: f64 = 0.01;

/// One row of the relation → constraint mapping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaxonomyEntry {
    pub relation: RelationKind,
    pub kind: ConstraintKind,
    pub comparator: Comparator,
    pub essential: bool,
    pub rule: &'static str,
}

const fn row(relation: RelationKind, kind: ConstraintKind, comparator: Comparator, essential: bool, rule: &'static str) -> TaxonomyEntry {
    TaxonomyEntry { relation, kind, comparator, essential, rule }
}

pub const TAXONOMY: [TaxonomyEntry; 19] = [
    row(RelationKind::AgainstWall, ConstraintKind::Position, Comparator::Predicate, false, "wall gap <= 0.05 m"),
    row(RelationKind::NearWall, ConstraintKind::Position, Comparator::Predicate, false, "wall gap <= 0.5 m"),
    row(RelationKind::AwayFromWall, ConstraintKind::Position, Comparator::Predicate, false, "wall gap >= 0.5 m"),
    row(RelationKind::Corner, ConstraintKind::Position, Comparator::Predicate, false, "wall gap and adjacent wall gap <= 0.05 m"),
    row(RelationKind::CeilingMounted, ConstraintKind::Position, Comparator::Predicate, false, "|top - wall height| <= 0.01 m"),
    row(RelationKind::OnFloor, ConstraintKind::Position, Comparator::Predicate, false, "z <= 0.01 m"),
    row(RelationKind::InFrontOf, ConstraintKind::Position, Comparator::Predicate, false, "ahead of the reference front face, within its width"),
    row(RelationKind::Behind, ConstraintKind::Position, Comparator::Predicate, false, "behind the reference back face, within its width"),
    row(RelationKind::LeftOf, ConstraintKind::Position, Comparator::Predicate, false, "beyond the reference's left side"),
    row(RelationKind::RightOf, ConstraintKind::Position, Comparator::Predicate, false, "beyond the reference's right side"),
    row(RelationKind::FaceToFace, ConstraintKind::Orientation, Comparator::Equals, false, "antiparallel, each ahead of the other"),
    row(RelationKind::BackToBack, ConstraintKind::Orientation, Comparator::Equals, false, "antiparallel, each behind the other"),
    row(RelationKind::SideBySide, ConstraintKind::Alignment, Comparator::Equals, false, "offset along the reference facing <= 0.05 m"),
    row(RelationKind::AlignedWith, ConstraintKind::Alignment, Comparator::Equals, false, "offset along the reference facing <= 0.05 m"),
    row(RelationKind::OnTopOf, ConstraintKind::OnTopOf, Comparator::Predicate, true, "inside the support top, resting on it"),
    row(RelationKind::Touching, ConstraintKind::Distance, Comparator::Range, false, "surface distance in [0, 0.05] m"),
    row(RelationKind::Near, ConstraintKind::Distance, Comparator::Range, false, "surface distance in [0, 1.0] m"),
    row(RelationKind::FarFrom, ConstraintKind::Distance, Comparator::Range, false, "surface distance >= 2.0 m"),
    row(RelationKind::DistanceRange, ConstraintKind::Distance, Comparator::Range, false, "distance in [min, max] m"),
];

pub fn taxonomy_entry(relation: RelationKind) -> Option<&'static TaxonomyEntry> {
    TAXONOMY.iter().find(|e| e.relation == relation)
}

/// Compiles relations and item attributes into constraint tuples, ending
/// with one essential overlap constraint over all pairs.
pub fn compile_constraints(org: &SceneOrganization) -> Result<Vec<ConstraintTuple>, ConstraintError> {
    compile_constraints_with(org, &ConstraintConfig::default())
}

pub fn compile_constraints_with(org: &SceneOrganization, config: &ConstraintConfig) -> Result<Vec<ConstraintTuple>, ConstraintError> {
    let scene = org.expand();
    let mut out = Vec::new();
    for rel in &scene.relations {
        let entry = taxonomy_entry(rel.relation).ok_or_else(|| ConstraintError::UnmappableRelation(rel.relation.as_str().to_owned()))?;
        let mut c = ConstraintTuple::new(entry.kind, &[&rel.subject, &rel.object], entry.comparator).text("relation", rel.relation.as_str());
        c.essential = entry.essential;
        c = match rel.relation {
            RelationKind::AgainstWall | RelationKind::Corner => c.num("max_gap", FLUSH_GAP),
            RelationKind::NearWall => c.num("max_gap", NEAR_GAP),
            RelationKind::AwayFromWall => c.num("min_gap", NEAR_GAP),
            RelationKind::FaceToFace | RelationKind::BackToBack => c.num("tolerance", config.orientation_tolerance),
            RelationKind::SideBySide | RelationKind::AlignedWith => c.num("tolerance", config.alignment_tolerance),
            RelationKind::Touching => c.num("min", 0.0).num("max", TOUCHING_MAX).text("measure", "surface"),
            RelationKind::Near => c.num("min", 0.0).num("max", NEAR_MAX).text("measure", "surface"),
            RelationKind::FarFrom => c.num("min", FAR_MIN).text("measure", "surface"),
            RelationKind::DistanceRange => {
                let min = rel.param("min").unwrap_or(0.0);
                let mut c = c.num("min", min).text("measure", config.distance_measure.as_str());
                if let Some(max) = rel.param("max") {
                    c = c.num("max", max);
                }
                c
            }
            _ => c,
        };
        if let Some(w) = rel.param("constraint_weight") {
            c.weight = w;
        }
        if let Some(e) = rel.param("essential") {
            c.essential = e != 0.0;
        }
        c.check()?;
        out.push(c);
    }
    for item in &scene.items {
        out.push(
            ConstraintTuple::new(ConstraintKind::Size, &[&item.id], Comparator::Equals)
                .num("width", item.width)
                .num("depth", item.depth)
                .num("height", item.height),
        );
        if let Some(color) = &item.color {
            out.push(ConstraintTuple::new(ConstraintKind::Color, &[&item.id], Comparator::Equals).text("color", color));
        }
        if let Some(material) = &item.material {
            out.push(ConstraintTuple::new(ConstraintKind::Material, &[&item.id], Comparator::Equals).text("material", material));
        }
    }
    let mut counts: BTreeMap<&str, u32> = BTreeMap::new();
    let mut multi: BTreeMap<&str, bool> = BTreeMap::new();
    for item in &org.furniture {
        *counts.entry(item.category.as_str()).or_default() += item.count;
        *multi.entry(item.category.as_str()).or_default() |= item.count > 1;
    }
    for (category, n) in counts {
        if multi[category] {
            out.push(ConstraintTuple::new(ConstraintKind::Count, &[category], Comparator::Equals).num("n", f64::from(n)));
        }
    }
    out.push(ConstraintTuple::new(ConstraintKind::OverlapFree, &[], Comparator::Predicate));
    Ok(out)
}

fn placed<'a>(layout: &'a Layout, id: &str) -> Result<&'a PlacedItem, ConstraintError> {
    layout.item(id).ok_or_else(|| ConstraintError::UnplacedReference(id.to_owned()))
}

fn wall_of(c: &ConstraintTuple) -> Option<Wall> {
    match ArchElement::parse(c.objects.get(1)?)? {
        ArchElement::Wall(w) => Some(w),
        _ => None,
    }
}

/// Smallest distance from any footprint corner to `wall`.
pub fn wall_gap(fp: &Footprint, wall: Wall, room: &Room) -> f64 {
    fp.corners()
        .iter()
        .map(|&p| wall_distance(p, wall, room))
        .fold(f64::INFINITY, f64::min)
}

pub fn adjacent_walls(wall: Wall) -> [Wall; 2] {
    if wall.is_horizontal() {
        [Wall::West, Wall::East]
    } else {
        [Wall::South, Wall::North]
    }
}

/// Whether point `p` satisfies a directional relation to `reference`.
pub fn directional_holds(relation: RelationKind, p: Vec2, reference: &Footprint) -> bool {
    let l = reference.to_local(p);
    let hw = reference.width / 2.0;
    let hd = reference.depth / 2.0;
    match relation {
        RelationKind::InFrontOf => l.y > hd && l.x.abs() <= hw,
        RelationKind::Behind => l.y < -hd && l.x.abs() <= hw,
        RelationKind::LeftOf => l.x < -hw,
        RelationKind::RightOf => l.x > hw,
        _ => false,
    }
}

/// Angular error of an opposed pair; `π` when antiparallel but facing the
/// wrong way.
pub fn opposed_error(a: &PlacedItem, b: &PlacedItem, facing_each_other: bool) -> f64 {
    let err = math::wrap_angle(a.yaw - b.yaw - PI).abs();
    let ahead = |from: &PlacedItem, to: &PlacedItem| (to.position - from.position).dot(geometry::facing(from.yaw)) > 0.0;
    let placed_right = if facing_each_other {
        ahead(a, b) && ahead(b, a)
    } else {
        !ahead(a, b) && !ahead(b, a)
    };
    if placed_right {
        err
    } else {
        PI
    }
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn magnitude_of(c: &ConstraintTuple, layout: &Layout) -> Result<(f64, String), ConstraintError> {
    let room = &layout.room;
    let first = || -> Result<&PlacedItem, ConstraintError> {
        let id = c.objects.first().ok_or_else(|| ConstraintError::Malformed("missing subject".into()))?;
        placed(layout, id)
    };
    let second = || -> Result<&PlacedItem, ConstraintError> {
        let id = c.objects.get(1).ok_or_else(|| ConstraintError::Malformed("missing reference".into()))?;
        placed(layout, id)
    };
    let relation = c.source_relation();
    Ok(match c.ctype {
        ConstraintKind::Distance => {
            let (a, b) = (first()?, second()?);
            let measure = match c.get_text("measure") {
                Some("surface") => DistanceMeasure::Surface,
                _ => DistanceMeasure::Center,
            };
            let d = measure.between(&a.footprint(), &b.footprint());
            let min = c.get_num("min").unwrap_or(0.0);
            let max = c.get_num("max").unwrap_or(f64::INFINITY);
            ((min - d).max(d - max).max(0.0), format!("{} distance {d:.3} m, want [{min}, {max}]", measure.as_str()))
        }
        ConstraintKind::OverlapFree => {
            let mut total = 0.0;
            let mut worst = String::new();
            let fps: Vec<Footprint> = layout.items.iter().map(PlacedItem::footprint).collect();
            for (i, a) in layout.items.iter().enumerate() {
                for (j, b) in layout.items.iter().enumerate().skip(i + 1) {
                    if !a.z_overlaps(b) {
                        continue;
                    }
                    let area = geometry::intersection_area(&fps[i], &fps[j]);
                    if area > 0.0 {
                        total += area;
                        if worst.is_empty() {
                            worst = format!("{} overlaps {} by {area:.4} m2", a.id, b.id);
                        }
                    }
                }
            }
            (total, worst)
        }
        ConstraintKind::Orientation => {
            let (a, b) = (first()?, second()?);
            let facing = relation != Some(RelationKind::BackToBack);
            let err = opposed_error(a, b, facing);
            let tol = c.get_num("tolerance").unwrap_or(ConstraintConfig::default().orientation_tolerance);
            let m = if err > tol { err } else { 0.0 };
            (m, format!("angular error {err:.3} rad"))
        }
        ConstraintKind::Position => {
            let a = first()?;
            let fp = a.footprint();
            let rel = relation.ok_or_else(|| ConstraintError::Malformed("position without relation".into()))?;
            match rel {
                RelationKind::CeilingMounted => {
                    let off = (a.top() - room.wall_height).abs();
                    (flag(off <= Z_TOLERANCE), format!("top is {off:.3} m from the ceiling"))
                }
                RelationKind::OnFloor => (flag(a.z <= Z_TOLERANCE), format!("z = {:.3} m", a.z)),
                RelationKind::AgainstWall | RelationKind::NearWall | RelationKind::AwayFromWall | RelationKind::Corner => {
                    let wall = wall_of(c).ok_or_else(|| ConstraintError::Malformed("wall relation without wall".into()))?;
                    let gap = wall_gap(&fp, wall, room);
                    let ok = match rel {
                        RelationKind::AwayFromWall => gap >= c.get_num("min_gap").unwrap_or(NEAR_GAP) - EPS,
                        RelationKind::Corner => {
                            let max = c.get_num("max_gap").unwrap_or(FLUSH_GAP);
                            let side = adjacent_walls(wall).map(|w| wall_gap(&fp, w, room));
                            gap <= max + EPS && side[0].min(side[1]) <= max + EPS
                        }
                        _ => gap <= c.get_num("max_gap").unwrap_or(FLUSH_GAP) + EPS,
                    };
                    (flag(ok), format!("gap to {} is {gap:.3} m", wall.id()))
                }
                _ => {
                    let b = second()?;
                    let ok = directional_holds(rel, a.position, &b.footprint());
                    (flag(ok), format!("{} {} {}", a.id, rel.as_str(), b.id))
                }
            }
        }
        ConstraintKind::Alignment => {
            let (a, b) = (first()?, second()?);
            let off = (a.position - b.position).dot(geometry::facing(b.yaw)).abs();
            let tol = c.get_num("tolerance").unwrap_or(ConstraintConfig::default().alignment_tolerance);
            (if off > tol { off } else { 0.0 }, format!("offset {off:.3} m"))
        }
        ConstraintKind::OnTopOf => {
            let (a, b) = (first()?, second()?);
            let inside = b.footprint().contains_footprint(&a.footprint(), 1e-6);
            let resting = (a.z - b.top()).abs() <= Z_TOLERANCE;
            (flag(inside && resting), format!("{} on {}", a.id, b.id))
        }
        ConstraintKind::Size => {
            let a = first()?;
            let close = |have: f64, key: &str| c.get_num(key).is_none_or(|want| (have - want).abs() <= SIZE_TOLERANCE * want.abs().max(EPS));
            let ok = close(a.width, "width") && close(a.depth, "depth") && close(a.height, "height");
            (flag(ok), format!("{} is {}x{}x{}", a.id, a.width, a.depth, a.height))
        }
        ConstraintKind::Color => {
            let a = first()?;
            let want = c.get_text("color");
            (flag(a.color.as_deref() == want), format!("{} color {:?}", a.id, a.color))
        }
        ConstraintKind::Material => {
            let a = first()?;
            let want = c.get_text("material");
            (flag(a.material.as_deref() == want), format!("{} material {:?}", a.id, a.material))
        }
        ConstraintKind::Count => {
            let category = c.objects.first().map(String::as_str).unwrap_or_default();
            let n = c.get_num("n").unwrap_or(0.0);
            let actual = layout.items.iter().filter(|i| i.category == category).count() as f64;
            ((actual - n).abs(), format!("{actual} {category}, want {n}"))
        }
    })
}

/// Violation magnitude of one constraint (0 when satisfied).
pub fn evaluate_constraint(c: &ConstraintTuple, layout: &Layout) -> Result<ViolationReport, ConstraintError> {
    let (m, detail) = magnitude_of(c, layout)?;
    let magnitude = if m.is_nan() || m < 1e-9 { 0.0 } else { m };
    Ok(ViolationReport {
        constraint: c.clone(),
        index: 0,
        magnitude,
        category: c.ctype.category(),
        detail,
    })
}

/// Magnitude with unplaced references counted as a unit violation.
pub fn magnitude(c: &ConstraintTuple, layout: &Layout) -> f64 {
    evaluate_constraint(c, layout).map_or(1.0, |r| r.magnitude)
}

/// `Σ weight × magnitude` over all constraints.
pub fn total_weighted_magnitude(layout: &Layout, constraints: &[ConstraintTuple]) -> f64 {
    constraints.iter().map(|c| c.weight * magnitude(c, layout)).sum()
}

/// Violated constraints, essential first, then by weight and magnitude
/// (both descending), then by position in `constraints`.
pub fn detect_violations(layout: &Layout, constraints: &[ConstraintTuple]) -> Vec<ViolationReport> {
    let mut out: Vec<ViolationReport> = constraints
        .iter()
        .enumerate()
        .filter_map(|(index, c)| {
            let report = match evaluate_constraint(c, layout) {
                Ok(r) => r,
                Err(e) => ViolationReport {
                    constraint: c.clone(),
                    index,
                    magnitude: 1.0,
                    category: c.ctype.category(),
                    detail: format!("{e}"),
                },
            };
            (report.magnitude > 0.0).then_some(ViolationReport { index, ..report })
        })
        .collect();
    out.sort_by(|a, b| {
        b.constraint
            .essential
            .cmp(&a.constraint.essential)
            .then(b.constraint.weight.total_cmp(&a.constraint.weight))
            .then(b.magnitude.total_cmp(&a.magnitude))
            .then(a.index.cmp(&b.index))
    });
    out
}
