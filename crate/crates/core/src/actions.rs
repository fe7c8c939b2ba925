//! Action space and the detect → plan → apply correction loop.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use thiserror::Error;

use crate::catalog;
use crate::constraints::{
    adjacent_walls, detect_violations, total_weighted_magnitude, wall_gap, ConstraintKind, ConstraintTuple, DistanceMeasure,
    ViolationReport, FAR_MIN, FLUSH_GAP, NEAR_GAP,
};
use crate::geometry::{self, Footprint, Vec2};
use crate::math;
use crate::placement::{self, CapsConfig, Layout, PlacedItem, PlacementSpec};
use crate::scene::{ArchElement, FurnitureItem, RelationKind, Wall};

/// Smallest improvement in total weighted magnitude that counts as progress.
pub const MIN_IMPROVEMENT: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum ActionKind {
    Translate { dx: f64, dy: f64, dz: f64 },
    Rotate { dyaw: f64 },
    Resize { sx: f64, sy: f64, sz: f64 },
    SetColor(String),
    SetMaterial(String),
    /// Targets name the category to add.
    AddItem,
    RemoveItem,
    SwapPositions,
}

impl ActionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ActionKind::Translate { .. } => "translate",
            ActionKind::Rotate { .. } => "rotate",
            ActionKind::Resize { .. } => "resize",
            ActionKind::SetColor(_) => "set_color",
            ActionKind::SetMaterial(_) => "set_material",
            ActionKind::AddItem => "add_item",
            ActionKind::RemoveItem => "remove_item",
            ActionKind::SwapPositions => "swap_positions",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Action {
    pub kind: ActionKind,
    pub targets: Vec<String>,
    pub priority: f64,
}

impl Action {
    pub fn new(kind: ActionKind, targets: &[&str]) -> Self {
        Self {
            kind,
            targets: targets.iter().map(|t| (*t).to_owned()).collect(),
            priority: 0.0,
        }
    }

    pub fn translate(id: &str, d: Vec2) -> Self {
        Self::new(ActionKind::Translate { dx: d.x, dy: d.y, dz: 0.0 }, &[id])
    }

    pub fn check(&self) -> Result<(), ActionError> {
        let finite = |vs: &[f64]| vs.iter().all(|v| v.is_finite());
        let ok = match &self.kind {
            ActionKind::Translate { dx, dy, dz } => finite(&[*dx, *dy, *dz]),
            ActionKind::Rotate { dyaw } => dyaw.is_finite(),
            ActionKind::Resize { sx, sy, sz } => finite(&[*sx, *sy, *sz]) && *sx > 0.0 && *sy > 0.0 && *sz > 0.0,
            _ => true,
        };
        let arity = match self.kind {
            ActionKind::SwapPositions => 2,
            _ => 1,
        };
        if !ok || self.targets.len() != arity {
            return Err(ActionError::InvalidAction(format!("{} with targets {:?}", self.kind.as_str(), self.targets)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionRound {
    pub violations: Vec<ViolationReport>,
    pub action: Action,
    pub total_before: f64,
    pub total_after: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CorrectionTrace {
    pub initial_total: f64,
    pub final_total: f64,
    pub rounds: Vec<CorrectionRound>,
}

impl CorrectionTrace {
    /// Whether every round left the total no larger than before.
    pub fn is_monotone(&self) -> bool {
        let mut prev = self.initial_total;
        self.rounds.iter().all(|r| {
            let ok = r.total_before <= prev + 1e-12 && r.total_after <= r.total_before + 1e-12;
            prev = r.total_after;
            ok
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ActionError {
    #[error("action infeasible: {0}")]
    ActionInfeasible(String),
    #[error("unknown action target `{0}`")]
    UnknownTarget(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("no candidate action reduces the total violation")]
    NoRepairFound,
    #[error("budget must be at least 1")]
    InvalidBudget,
    #[error("correction budget exhausted with {} violations left", .residual.len())]
    BudgetExhausted {
        residual: Vec<ViolationReport>,
        layout: Box<Layout>,
        trace: CorrectionTrace,
    },
}

/// Indices of `id` and every item resting on it, transitively.
fn with_dependents(layout: &Layout, id: &str) -> Vec<usize> {
    let mut out = Vec::new();
    let mut frontier = vec![id.to_owned()];
    while let Some(cur) = frontier.pop() {
        for (i, it) in layout.items.iter().enumerate() {
            let hit = it.id == cur || it.support.as_deref() == Some(cur.as_str());
            if hit && !out.contains(&i) {
                out.push(i);
                if it.id != cur {
                    frontier.push(it.id.clone());
                }
            }
        }
    }
    out
}

fn index_of(layout: &Layout, id: &str) -> Result<usize, ActionError> {
    layout.position_of(id).ok_or_else(|| ActionError::UnknownTarget(id.to_owned()))
}

fn check_inside(layout: &Layout, moved: &[usize]) -> Result<(), ActionError> {
    let bounds = layout.room.bounds();
    for &i in moved {
        let it = &layout.items[i];
        if bounds.max_excursion(&it.footprint()) > 1e-9 {
            return Err(ActionError::ActionInfeasible(format!("{} would leave the room", it.id)));
        }
        if it.z < -1e-9 || it.top() > layout.room.wall_height + 1e-9 {
            return Err(ActionError::ActionInfeasible(format!("{} would leave the floor-to-ceiling band", it.id)));
        }
    }
    Ok(())
}

pub fn apply_action(layout: &Layout, action: &Action) -> Result<Layout, ActionError> {
    apply_action_with(layout, action, &CapsConfig::default())
}

/// Returns the layout after `action`; `caps` drives `add_item` placement.
pub fn apply_action_with(layout: &Layout, action: &Action, caps: &CapsConfig) -> Result<Layout, ActionError> {
    action.check()?;
    let mut out = layout.clone();
    let target = action.targets[0].as_str();
    match &action.kind {
        ActionKind::Translate { dx, dy, dz } => {
            index_of(layout, target)?;
            let moved = with_dependents(layout, target);
            for &i in &moved {
                let it = &mut out.items[i];
                it.position = it.position + Vec2::new(*dx, *dy);
                it.z += dz;
            }
            check_inside(&out, &moved)?;
        }
        ActionKind::Rotate { dyaw } => {
            let pivot = layout.items[index_of(layout, target)?].position;
            let (c, s) = math::rotation(*dyaw);
            let moved = with_dependents(layout, target);
            for &i in &moved {
                let it = &mut out.items[i];
                let r = it.position - pivot;
                it.position = pivot + Vec2::new(c * r.x - s * r.y, s * r.x + c * r.y);
                it.yaw = math::normalize_yaw(it.yaw + dyaw);
            }
            check_inside(&out, &moved)?;
        }
        ActionKind::Resize { sx, sy, sz } => {
            let i = index_of(layout, target)?;
            let old_top = out.items[i].top();
            let it = &mut out.items[i];
            it.width *= sx;
            it.depth *= sy;
            it.height *= sz;
            let lift = out.items[i].top() - old_top;
            let moved = with_dependents(layout, target);
            for &j in moved.iter().filter(|&&j| j != i) {
                out.items[j].z += lift;
            }
            check_inside(&out, &moved)?;
        }
        ActionKind::SetColor(color) => {
            let i = index_of(layout, target)?;
            out.items[i].color = Some(color.clone());
        }
        ActionKind::SetMaterial(material) => {
            let i = index_of(layout, target)?;
            out.items[i].material = Some(material.clone());
        }
        ActionKind::AddItem => {
            let template = layout.items.iter().find(|it| it.category == target);
            let mut item = match template {
                Some(t) => {
                    let mut f = FurnitureItem::new("", &t.category, t.width, t.depth, t.height).with_mount(t.mount);
                    f.color = t.color.clone();
                    f.material = t.material.clone();
                    f
                }
                None => FurnitureItem::from_catalog("", target).ok_or_else(|| ActionError::UnknownTarget(target.to_owned()))?,
            };
            item.id = (1..)
                .map(|k| format!("{target}#{k}"))
                .find(|id| layout.item(id).is_none())
                .expect("unbounded id search");
            let mut spec = PlacementSpec::free(item);
            spec.support = template.and_then(|t| t.support.clone());
            let (placed, _) = placement::place_item(&spec, layout, caps).map_err(|e| ActionError::ActionInfeasible(format!("{e}")))?;
            out.items.push(placed);
        }
        ActionKind::RemoveItem => {
            let i = index_of(layout, target)?;
            if layout.items.iter().any(|it| it.support.as_deref() == Some(target)) {
                return Err(ActionError::ActionInfeasible(format!("{target} supports other items")));
            }
            out.items.remove(i);
        }
        ActionKind::SwapPositions => {
            let other = action.targets[1].as_str();
            let (i, j) = (index_of(layout, target)?, index_of(layout, other)?);
            let (pi, pj) = (layout.items[i].position, layout.items[j].position);
            let a = with_dependents(layout, target);
            let b = with_dependents(layout, other);
            for &k in &a {
                out.items[k].position = out.items[k].position + (pj - pi);
            }
            for &k in &b {
                out.items[k].position = out.items[k].position + (pi - pj);
            }
            let moved: Vec<usize> = a.into_iter().chain(b).collect();
            check_inside(&out, &moved)?;
        }
    }
    Ok(out)
}

fn wall_normal(wall: Wall) -> Vec2 {
    match wall {
        Wall::South => Vec2::new(0.0, -1.0),
        Wall::North => Vec2::new(0.0, 1.0),
        Wall::West => Vec2::new(-1.0, 0.0),
        Wall::East => Vec2::new(1.0, 0.0),
    }
}

/// Half of `fp`'s extent along the unit vector `u`.
fn half_extent_along(fp: &Footprint, u: Vec2) -> f64 {
    let (ax, ay) = fp.axes();
    ax.dot(u).abs() * fp.width / 2.0 + ay.dot(u).abs() * fp.depth / 2.0
}

/// Distance from `anchor` along `dir` at which `mover` sits `target` away
/// from `anchor` under `measure`.
fn radius_for(measure: DistanceMeasure, mover: &Footprint, anchor: &Footprint, dir: Vec2, target: f64) -> Option<f64> {
    match measure {
        DistanceMeasure::Center => Some(target),
        DistanceMeasure::Surface => {
            let at = |r: f64| {
                let fp = Footprint { center: anchor.center + dir * r, ..*mover };
                geometry::surface_distance(&fp, anchor)
            };
            let mut lo = 0.0;
            let mut hi = half_extent_along(mover, dir) + half_extent_along(anchor, dir) + target + 1.0;
            if at(hi) < target {
                return None;
            }
            for _ in 0..50 {
                let mid = (lo + hi) / 2.0;
                if at(mid) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(hi)
        }
    }
}

fn ring(first: Vec2) -> Vec<Vec2> {
    let mut dirs = vec![first];
    for k in 0..16 {
        let (c, s) = math::rotation(f64::from(k) * PI / 8.0);
        dirs.push(Vec2::new(c, s));
    }
    dirs
}

fn face_yaw(from: Vec2, to: Vec2) -> f64 {
    let d = to - from;
    math::normalize_yaw(math::atan2(-d.x, d.y))
}

fn rotate_to(id: &str, from: f64, to: f64) -> Action {
    Action::new(ActionKind::Rotate { dyaw: math::wrap_angle(to - from) }, &[id])
}

fn distance_candidates(c: &ConstraintTuple, a: &PlacedItem, b: &PlacedItem) -> Vec<Action> {
    let measure = match c.get_text("measure") {
        Some("surface") => DistanceMeasure::Surface,
        _ => DistanceMeasure::Center,
    };
    let lo = c.get_num("min").unwrap_or(0.0);
    let hi = c.get_num("max").unwrap_or(f64::INFINITY);
    let targets: Vec<f64> = if hi.is_finite() {
        let span = hi - lo;
        vec![lo + span / 2.0, lo + span / 4.0, hi - span / 4.0]
    } else {
        let base = if lo > 0.0 { lo } else { FAR_MIN };
        vec![lo + 0.1 * base, lo + 0.5 * base]
    };
    let mut out = Vec::new();
    for (mover, anchor) in [(a, b), (b, a)] {
        let (mfp, afp) = (mover.footprint(), anchor.footprint());
        let away = (mover.position - anchor.position).normalized().unwrap_or(Vec2::new(1.0, 0.0));
        for dir in ring(away) {
            for &t in &targets {
                if let Some(r) = radius_for(measure, &mfp, &afp, dir, t) {
                    out.push(Action::translate(&mover.id, anchor.position + dir * r - mover.position));
                }
            }
        }
    }
    out
}

fn overlap_candidates(layout: &Layout) -> Vec<Action> {
    let fps: Vec<Footprint> = layout.items.iter().map(PlacedItem::footprint).collect();
    let mut pairs = Vec::new();
    for i in 0..layout.items.len() {
        for j in i + 1..layout.items.len() {
            if layout.items[i].z_overlaps(&layout.items[j]) {
                let area = geometry::intersection_area(&fps[i], &fps[j]);
                if area > 0.0 {
                    pairs.push((area, i, j));
                }
            }
        }
    }
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut out = Vec::new();
    for (_, i, j) in pairs {
        let Some(mut axes) = geometry::penetration_axes(&fps[i], &fps[j]) else {
            continue;
        };
        axes.sort_by(|l, r| l.1.total_cmp(&r.1));
        for margin in [0.01, 0.3] {
            for &(dir, depth) in &axes {
                out.push(Action::translate(&layout.items[j].id, dir * (depth + margin)));
                out.push(Action::translate(&layout.items[i].id, -dir * (depth + margin)));
            }
        }
    }
    out
}

fn orientation_candidates(c: &ConstraintTuple, a: &PlacedItem, b: &PlacedItem) -> Vec<Action> {
    let facing = c.source_relation() != Some(RelationKind::BackToBack);
    let (toward_b, toward_a) = if facing {
        (face_yaw(a.position, b.position), face_yaw(b.position, a.position))
    } else {
        (face_yaw(b.position, a.position), face_yaw(a.position, b.position))
    };
    vec![
        rotate_to(&a.id, a.yaw, b.yaw + PI),
        rotate_to(&b.id, b.yaw, a.yaw + PI),
        rotate_to(&a.id, a.yaw, toward_b),
        rotate_to(&b.id, b.yaw, toward_a),
        Action::new(ActionKind::SwapPositions, &[&a.id, &b.id]),
        rotate_to(&a.id, a.yaw, a.yaw + PI),
    ]
}

fn wall_candidates(rel: RelationKind, wall: Wall, a: &PlacedItem, layout: &Layout) -> Vec<Action> {
    let fp = a.footprint();
    let gap = wall_gap(&fp, wall, &layout.room);
    let n = wall_normal(wall);
    let along = n.perp();
    let targets: &[f64] = match rel {
        RelationKind::AgainstWall | RelationKind::Corner => &[0.0, FLUSH_GAP / 2.0],
        RelationKind::NearWall => &[0.0, NEAR_GAP / 2.0],
        _ => &[NEAR_GAP + 0.1, NEAR_GAP + 0.5, NEAR_GAP + 1.0],
    };
    let mut out = Vec::new();
    for &t in targets {
        let base = n * (gap - t);
        if rel == RelationKind::Corner {
            for side in adjacent_walls(wall) {
                let side_gap = wall_gap(&fp, side, &layout.room);
                out.push(Action::translate(&a.id, base + wall_normal(side) * side_gap));
            }
        } else {
            for slide in [0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0] {
                out.push(Action::translate(&a.id, base + along * slide));
            }
        }
    }
    out
}

fn directional_candidates(rel: RelationKind, a: &PlacedItem, b: &PlacedItem) -> Vec<Action> {
    let bfp = b.footprint();
    let afp = a.footprint();
    let (ux, uy) = bfp.axes();
    let local = bfp.to_local(a.position);
    let mut out = Vec::new();
    for gap in [0.05, 0.3, 0.6] {
        let targets: Vec<Vec2> = match rel {
            RelationKind::InFrontOf | RelationKind::Behind => {
                let sign = if rel == RelationKind::InFrontOf { 1.0 } else { -1.0 };
                let y = sign * (bfp.depth / 2.0 + half_extent_along(&afp, uy) + gap);
                let x = local.x.clamp(-bfp.width / 2.0, bfp.width / 2.0);
                vec![Vec2::new(0.0, y), Vec2::new(x, y)]
            }
            _ => {
                let sign = if rel == RelationKind::RightOf { 1.0 } else { -1.0 };
                let x = sign * (bfp.width / 2.0 + half_extent_along(&afp, ux) + gap);
                vec![Vec2::new(x, 0.0), Vec2::new(x, local.y)]
            }
        };
        for t in targets {
            out.push(Action::translate(&a.id, bfp.to_world(t) - a.position));
        }
    }
    out
}

/// Items of `category` that can be removed without breaking references.
fn removable(layout: &Layout, constraints: &[ConstraintTuple], category: &str) -> Vec<String> {
    layout
        .items
        .iter()
        .rev()
        .filter(|it| it.category == category)
        .filter(|it| !layout.items.iter().any(|o| o.support.as_deref() == Some(it.id.as_str())))
        .filter(|it| {
            !constraints.iter().any(|c| {
                c.objects.len() == 2 && c.involves(&it.id) && !matches!(c.ctype, ConstraintKind::Count | ConstraintKind::OverlapFree)
            })
        })
        .map(|it| it.id.clone())
        .collect()
}

/// Candidate repairs for one violation, in rule-table order.
pub fn candidate_actions(v: &ViolationReport, layout: &Layout, constraints: &[ConstraintTuple]) -> Vec<Action> {
    let c = &v.constraint;
    let get = |k: usize| c.objects.get(k).and_then(|id| layout.item(id));
    let mut out = match (c.ctype, get(0), get(1)) {
        (ConstraintKind::Distance, Some(a), Some(b)) => distance_candidates(c, a, b),
        (ConstraintKind::OverlapFree, _, _) => overlap_candidates(layout),
        (ConstraintKind::Orientation, Some(a), Some(b)) => orientation_candidates(c, a, b),
        (ConstraintKind::Position, Some(a), reference) => match c.source_relation() {
            Some(RelationKind::CeilingMounted) => vec![Action::new(
                ActionKind::Translate { dx: 0.0, dy: 0.0, dz: layout.room.wall_height - a.top() },
                &[&a.id],
            )],
            Some(RelationKind::OnFloor) => vec![Action::new(ActionKind::Translate { dx: 0.0, dy: 0.0, dz: -a.z }, &[&a.id])],
            Some(rel) if rel.targets_wall() => match c.objects.get(1).and_then(|o| ArchElement::parse(o)) {
                Some(ArchElement::Wall(w)) => wall_candidates(rel, w, a, layout),
                _ => Vec::new(),
            },
            Some(rel) => reference.map(|b| directional_candidates(rel, a, b)).unwrap_or_default(),
            None => Vec::new(),
        },
        (ConstraintKind::Alignment, Some(a), Some(b)) => {
            let f = geometry::facing(b.yaw);
            let off = (a.position - b.position).dot(f);
            vec![Action::translate(&a.id, f * -off), Action::translate(&b.id, f * off)]
        }
        (ConstraintKind::OnTopOf, Some(a), Some(b)) => vec![Action::new(
            ActionKind::Translate {
                dx: b.position.x - a.position.x,
                dy: b.position.y - a.position.y,
                dz: b.top() - a.z,
            },
            &[&a.id],
        )],
        (ConstraintKind::Size, Some(a), _) => {
            let scale = |have: f64, key: &str| c.get_num(key).map_or(1.0, |want| want / have);
            vec![Action::new(
                ActionKind::Resize {
                    sx: scale(a.width, "width"),
                    sy: scale(a.depth, "depth"),
                    sz: scale(a.height, "height"),
                },
                &[&a.id],
            )]
        }
        (ConstraintKind::Color, Some(a), _) => c
            .get_text("color")
            .map(|col| vec![Action::new(ActionKind::SetColor(col.to_owned()), &[&a.id])])
            .unwrap_or_default(),
        (ConstraintKind::Material, Some(a), _) => c
            .get_text("material")
            .map(|m| vec![Action::new(ActionKind::SetMaterial(m.to_owned()), &[&a.id])])
            .unwrap_or_default(),
        (ConstraintKind::Count, _, _) => {
            let category = c.objects.first().map(String::as_str).unwrap_or_default();
            let n = c.get_num("n").unwrap_or(0.0);
            let actual = layout.items.iter().filter(|i| i.category == category).count() as f64;
            if actual < n {
                vec![Action::new(ActionKind::AddItem, &[category])]
            } else {
                removable(layout, constraints, category)
                    .iter()
                    .map(|id| Action::new(ActionKind::RemoveItem, &[id]))
                    .collect()
            }
        }
        _ => Vec::new(),
    };
    for a in &mut out {
        a.priority = c.weight * v.magnitude;
    }
    out
}

/// The candidate for `v` with the largest strict reduction of the total,
/// with its resulting layout and total.
fn best_repair(
    v: &ViolationReport,
    layout: &Layout,
    constraints: &[ConstraintTuple],
    caps: &CapsConfig,
    base: f64,
) -> Option<(Action, Layout, f64)> {
    let mut best: Option<(Action, Layout, f64)> = None;
    for action in candidate_actions(v, layout, constraints) {
        let Ok(next) = apply_action_with(layout, &action, caps) else {
            continue;
        };
        let total = total_weighted_magnitude(&next, constraints);
        if total < base - MIN_IMPROVEMENT && best.as_ref().is_none_or(|b| total < b.2) {
            best = Some((action, next, total));
        }
    }
    best
}

/// One improving action per violation (where one exists), in violation
/// order. Each action is chosen against `layout` independently.
pub fn plan_corrections(violations: &[ViolationReport], layout: &Layout, constraints: &[ConstraintTuple]) -> Result<Vec<Action>, ActionError> {
    let caps = CapsConfig::default();
    let base = total_weighted_magnitude(layout, constraints);
    let actions: Vec<Action> = violations
        .iter()
        .filter_map(|v| best_repair(v, layout, constraints, &caps, base).map(|(a, _, _)| a))
        .collect();
    if actions.is_empty() {
        return Err(ActionError::NoRepairFound);
    }
    Ok(actions)
}

pub fn optimize_layout(layout: &Layout, constraints: &[ConstraintTuple], budget: u32) -> Result<(Layout, CorrectionTrace), ActionError> {
    optimize_layout_with(layout, constraints, budget, &CapsConfig::default())
}

/// Repeats detect → plan → apply until nothing violates, no action helps,
/// or `budget` rounds have run. Every applied action strictly lowers the
/// total weighted magnitude.
pub fn optimize_layout_with(
    layout: &Layout,
    constraints: &[ConstraintTuple],
    budget: u32,
    caps: &CapsConfig,
) -> Result<(Layout, CorrectionTrace), ActionError> {
    if budget == 0 {
        return Err(ActionError::InvalidBudget);
    }
    let mut current = layout.clone();
    let mut total = total_weighted_magnitude(&current, constraints);
    let mut trace = CorrectionTrace {
        initial_total: total,
        final_total: total,
        rounds: Vec::new(),
    };
    for _ in 0..budget {
        let violations = detect_violations(&current, constraints);
        if violations.is_empty() {
            return Ok((current, trace));
        }
        let step = violations.iter().find_map(|v| best_repair(v, &current, constraints, caps, total));
        let Some((action, next, next_total)) = step else {
            if violations.iter().any(|v| v.constraint.essential) {
                return Err(ActionError::BudgetExhausted {
                    residual: violations,
                    layout: Box::new(current),
                    trace,
                });
            }
            return Ok((current, trace));
        };
        trace.rounds.push(CorrectionRound {
            violations,
            action,
            total_before: total,
            total_after: next_total,
        });
        current = next;
        total = next_total;
        trace.final_total = total;
    }
    let residual = detect_violations(&current, constraints);
    if residual.is_empty() {
        Ok((current, trace))
    } else {
        Err(ActionError::BudgetExhausted {
            residual,
            layout: Box::new(current),
            trace,
        })
    }
}

/// Default catalog category for an `add_item` target, if known.
pub fn catalog_has(category: &str) -> bool {
    catalog::lookup(category).is_some()
}
