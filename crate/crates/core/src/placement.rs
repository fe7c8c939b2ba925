//! Conflict-aware sequential placement.
//!
//! Each item is added once, in placement order. Candidate poses are sampled
//! on the surface the item belongs to and scored by
//!
//! ```text
//! score(p) = α · l_dist(p) / diagonal + β · l_obj(p, μ) / μ
//! ```
//!
//! where `l_dist` is the distance to the wall opposite the item's anchor and
//! `l_obj` the mean distance to placed neighbours within `μ`. Higher is
//! better; poses that leave the room or overlap placed items score `-∞`.
//! When nothing is feasible the blocking conflict shifts `α`/`β` and the grid
//! is refined before retrying.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::catalog;
use crate::geometry::{self, Aabb, Footprint, Vec2};
use crate::graph::PlacementOrder;
use crate::math::{self, EPS};
use crate::scene::{ArchElement, ExpandedScene, FurnitureItem, Mount, RelationKind, Room, SceneOrganization, Wall};

/// Floor-plane yaws tried for free-standing items.
pub const QUARTER_YAWS: [f64; 4] = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2];
/// Widest gap a `near_wall` item may leave behind it.
pub const NEAR_WALL_GAP: f64 = 0.3;
/// Finest grid the retry loop refines to.
pub const MIN_GRID_STEP: f64 = 0.025;
/// Retries between successive grid halvings.
pub const RETRIES_PER_REFINEMENT: u32 = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct CapsConfig {
    pub alpha0: f64,
    pub beta0: f64,
    /// Adjustment rate `k`.
    pub k: f64,
    /// Base increment `Δα`.
    pub delta_alpha: f64,
    /// Neighbour radius in meters.
    pub mu: f64,
    pub grid_step: f64,
    pub max_retries: u32,
    pub seed: u64,
    /// Intersection area (m²) tolerated between footprints.
    pub overlap_tolerance: f64,
}

impl Default for CapsConfig {
    fn default() -> Self {
        Self {
            alpha0: 0.5,
            beta0: 0.5,
            k: 1.0,
            delta_alpha: 0.05,
            mu: 3.0,
            grid_step: 0.1,
            max_retries: 25,
            seed: 0,
            overlap_tolerance: 1e-4,
        }
    }
}

impl CapsConfig {
    /// Weights for an `α/β` ratio `r`: `α = r/(1+r)`, `β = 1/(1+r)`.
    pub fn with_ratio(mut self, ratio: f64) -> Self {
        self.alpha0 = ratio / (1.0 + ratio);
        self.beta0 = 1.0 / (1.0 + ratio);
        self
    }

    pub fn validate(&self) -> Result<(), PlacementError> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if !unit(self.alpha0) || !unit(self.beta0) || (self.alpha0 + self.beta0 - 1.0).abs() > 1e-9 {
            return Err(PlacementError::InvalidConfig(format!(
                "alpha0 ({}) and beta0 ({}) must lie in [0, 1] and sum to 1",
                self.alpha0, self.beta0
            )));
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.k) || !positive(self.delta_alpha) {
            return Err(PlacementError::InvalidConfig("k and delta_alpha must be positive".into()));
        }
        if !positive(self.mu) || !positive(self.grid_step) {
            return Err(PlacementError::InvalidConfig("mu and grid_step must be positive".into()));
        }
        if !(self.overlap_tolerance.is_finite() && self.overlap_tolerance >= 0.0) {
            return Err(PlacementError::InvalidConfig("overlap_tolerance must be non-negative".into()));
        }
        Ok(())
    }

    /// FNV-1a over every field, stable across platforms.
    pub fn config_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |bytes: [u8; 8]| {
            for b in bytes {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        for v in [self.alpha0, self.beta0, self.k, self.delta_alpha, self.mu, self.grid_step, self.overlap_tolerance] {
            feed(v.to_bits().to_le_bytes());
        }
        feed(u64::from(self.max_retries).to_le_bytes());
        feed(self.seed.to_le_bytes());
        h
    }

    /// Grid step used on the given attempt (0 is the first try).
    pub fn grid_for_attempt(&self, attempt: u32) -> f64 {
        let halvings = (attempt / RETRIES_PER_REFINEMENT).min(60) as i32;
        let floor = self.grid_step.min(MIN_GRID_STEP);
        (self.grid_step / libm::pow(2.0, f64::from(halvings))).max(floor)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacedItem {
    pub id: String,
    pub category: String,
    /// Footprint center.
    pub position: Vec2,
    pub z: f64,
    pub yaw: f64,
    pub width: f64,
    pub depth: f64,
    pub height: f64,
    pub color: Option<String>,
    pub material: Option<String>,
    pub mount: Mount,
    /// Item this one rests on, for `on_top` items.
    pub support: Option<String>,
}

impl PlacedItem {
    pub fn footprint(&self) -> Footprint {
        Footprint::new(self.position, self.width, self.depth, self.yaw)
    }

    pub fn top(&self) -> f64 {
        self.z + self.height
    }

    pub fn z_overlaps(&self, other: &PlacedItem) -> bool {
        geometry::z_bands_overlap(self.z, self.height, other.z, other.height)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Provenance {
    pub seed: u64,
    pub config_hash: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub room: Room,
    pub items: Vec<PlacedItem>,
    pub provenance: Provenance,
}

impl Layout {
    pub fn new(room: Room) -> Self {
        Self {
            room,
            items: Vec::new(),
            provenance: Provenance::default(),
        }
    }

    pub fn item(&self, id: &str) -> Option<&PlacedItem> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn item_mut(&mut self, id: &str) -> Option<&mut PlacedItem> {
        self.items.iter_mut().find(|i| i.id == id)
    }

    pub fn position_of(&self, id: &str) -> Option<usize> {
        self.items.iter().position(|i| i.id == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conflict {
    WallCollision,
    FurnitureCollision,
}

impl Conflict {
    pub fn as_str(self) -> &'static str {
        match self {
            Conflict::WallCollision => "wall_collision",
            Conflict::FurnitureCollision => "furniture_collision",
        }
    }
}

/// How a wall-anchored item hugs its wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallBand {
    Flush,
    Near,
    Corner,
}

/// An item together with the relations that decide where it may go.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacementSpec {
    pub item: FurnitureItem,
    pub wall: Option<(Wall, WallBand)>,
    pub support: Option<String>,
    pub ceiling: bool,
}

impl PlacementSpec {
    pub fn free(item: FurnitureItem) -> Self {
        let ceiling = item.mount == Mount::Ceiling;
        Self {
            item,
            wall: None,
            support: None,
            ceiling,
        }
    }

    /// Reads the wall anchor (first wall-hugging relation), support, and
    /// ceiling mounting for `item` from `relations`.
    pub fn from_relations<'a>(item: FurnitureItem, relations: impl IntoIterator<Item = &'a crate::scene::RelationEdge>) -> Self {
        let mut spec = Self::free(item);
        for rel in relations.into_iter().filter(|r| r.subject == spec.item.id) {
            let wall = match ArchElement::parse(&rel.object) {
                Some(ArchElement::Wall(w)) => Some(w),
                _ => None,
            };
            match (rel.relation, wall) {
                (RelationKind::AgainstWall, Some(w)) if spec.wall.is_none() => spec.wall = Some((w, WallBand::Flush)),
                (RelationKind::NearWall, Some(w)) if spec.wall.is_none() => spec.wall = Some((w, WallBand::Near)),
                (RelationKind::Corner, Some(w)) if spec.wall.is_none() => spec.wall = Some((w, WallBand::Corner)),
                (RelationKind::OnTopOf, _) if spec.support.is_none() => spec.support = Some(rel.object.clone()),
                (RelationKind::CeilingMounted, _) => spec.ceiling = true,
                _ => {}
            }
        }
        spec
    }

    pub fn anchor_wall(&self) -> Option<Wall> {
        self.wall.map(|(w, _)| w)
    }
}

/// Placement specs for every item of an expanded scene, keyed by id.
pub fn placement_specs(scene: &ExpandedScene) -> BTreeMap<String, PlacementSpec> {
    scene
        .items
        .iter()
        .map(|item| (item.id.clone(), PlacementSpec::from_relations(item.clone(), &scene.relations)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub position: Vec2,
    pub yaw: f64,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ItemTrace {
    pub id: String,
    pub attempts: u32,
    pub final_alpha: f64,
    pub final_beta: f64,
    pub final_grid_step: f64,
    pub conflicts: Vec<Conflict>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlacementTrace {
    pub items: Vec<ItemTrace>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlacementError {
    #[error("invalid placement config: {0}")]
    InvalidConfig(String),
    #[error("no surface to place `{0}` on: its support is not placed")]
    NoCandidateSurface(String),
    #[error("`{}` could not be placed after {} attempts", .id, .trace.attempts)]
    ItemUnplaceable { id: String, trace: ItemTrace },
    #[error("unknown item `{0}`")]
    UnknownItem(String),
}

fn mount_z(spec: &PlacementSpec, room: &Room) -> f64 {
    let h = spec.item.height;
    if spec.ceiling {
        return (room.wall_height - h).max(0.0);
    }
    match spec.item.mount {
        Mount::Wall => catalog::WALL_MOUNT_Z.min(room.wall_height - h).max(0.0),
        Mount::Ceiling => (room.wall_height - h).max(0.0),
        Mount::Floor | Mount::OnTop => 0.0,
    }
}

/// Evenly spaced samples over `[lo, hi]`: `max(1, ⌊(hi-lo)/step⌋)` points
/// centred in the interval. Empty when `hi < lo`.
pub fn centered_samples(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    if hi < lo - EPS {
        return Vec::new();
    }
    let len = (hi - lo).max(0.0);
    let n = (math::floor(len / step + 1e-9) as usize).max(1);
    let start = lo + (len - (n - 1) as f64 * step) / 2.0;
    (0..n).map(|i| start + i as f64 * step).collect()
}

/// `lo, lo + step, …` plus `hi` itself. Empty when `hi < lo`.
pub fn inclusive_samples(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    if hi < lo - EPS {
        return Vec::new();
    }
    let hi = hi.max(lo);
    let mut out = Vec::new();
    let mut i = 0usize;
    loop {
        let v = lo + i as f64 * step;
        if v >= hi - 1e-9 {
            break;
        }
        out.push(v);
        i += 1;
    }
    out.push(hi);
    out
}

/// `[a0, a_n, a1, a_(n-1), …]`: ties along a wall resolve towards its ends,
/// which keeps the remaining free run in one piece.
fn ends_inward(xs: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(xs.len());
    let (mut lo, mut hi) = (0usize, xs.len());
    while lo < hi {
        out.push(xs[lo]);
        lo += 1;
        if lo < hi {
            hi -= 1;
            out.push(xs[hi]);
        }
    }
    out
}

fn wall_band_center(wall: Wall, room: &Room, along: f64, half_depth: f64, gap: f64) -> Vec2 {
    let off = half_depth + gap;
    match wall {
        Wall::South => Vec2::new(along, off),
        Wall::North => Vec2::new(along, room.depth - off),
        Wall::West => Vec2::new(off, along),
        Wall::East => Vec2::new(room.width - off, along),
    }
}

fn wall_candidates(spec: &PlacementSpec, wall: Wall, band: WallBand, room: &Room, step: f64, z: f64, out: &mut Vec<Candidate>) {
    let item = &spec.item;
    let len = wall.length(room.width, room.depth);
    let hw = item.width / 2.0;
    let hd = item.depth / 2.0;
    let across = if wall.is_horizontal() { room.depth } else { room.width };
    if item.depth > across + EPS {
        return;
    }
    let along = inclusive_samples(hw, len - hw, step);
    let along: Vec<f64> = match band {
        WallBand::Corner => match along.len() {
            0 => along,
            1 => along,
            n => alloc::vec![along[0], along[n - 1]],
        },
        _ => ends_inward(&along),
    };
    let gaps: Vec<f64> = match band {
        WallBand::Near => inclusive_samples(0.0, NEAR_WALL_GAP.min(across - item.depth), step),
        _ => alloc::vec![0.0],
    };
    let yaw = wall.facing_away_yaw();
    for &gap in &gaps {
        for &a in &along {
            out.push(Candidate {
                position: wall_band_center(wall, room, a, hd, gap),
                yaw,
                z,
            });
        }
    }
}

/// Candidate poses for `spec` given the items already in `layout`.
pub fn generate_candidates(spec: &PlacementSpec, room: &Room, layout: &Layout, grid_step: f64) -> Result<Vec<Candidate>, PlacementError> {
    if !(grid_step.is_finite() && grid_step > 0.0) {
        return Err(PlacementError::InvalidConfig("grid_step must be positive".into()));
    }
    let item = &spec.item;
    let mut out = Vec::new();

    if let Some(support_id) = &spec.support {
        let support = layout
            .item(support_id)
            .ok_or_else(|| PlacementError::NoCandidateSurface(item.id.clone()))?;
        let top = support.footprint();
        let z = support.top();
        for (q, &offset) in QUARTER_YAWS.iter().enumerate() {
            let (ex, ey) = if q % 2 == 0 {
                (item.width / 2.0, item.depth / 2.0)
            } else {
                (item.depth / 2.0, item.width / 2.0)
            };
            let xs = centered_samples(-top.width / 2.0 + ex, top.width / 2.0 - ex, grid_step);
            let ys = centered_samples(-top.depth / 2.0 + ey, top.depth / 2.0 - ey, grid_step);
            let yaw = math::normalize_yaw(support.yaw + offset);
            for &lx in &xs {
                for &ly in &ys {
                    out.push(Candidate {
                        position: top.to_world(Vec2::new(lx, ly)),
                        yaw,
                        z,
                    });
                }
            }
        }
        return Ok(out);
    }

    let z = mount_z(spec, room);
    if let Some((wall, band)) = spec.wall {
        wall_candidates(spec, wall, band, room, grid_step, z, &mut out);
        return Ok(out);
    }
    if item.mount == Mount::Wall && !spec.ceiling {
        for wall in Wall::ALL {
            wall_candidates(spec, wall, WallBand::Flush, room, grid_step, z, &mut out);
        }
        return Ok(out);
    }
    for (q, &yaw) in QUARTER_YAWS.iter().enumerate() {
        let (ex, ey) = if q % 2 == 0 {
            (item.width / 2.0, item.depth / 2.0)
        } else {
            (item.depth / 2.0, item.width / 2.0)
        };
        let xs = centered_samples(ex, room.width - ex, grid_step);
        let ys = centered_samples(ey, room.depth - ey, grid_step);
        for &x in &xs {
            for &y in &ys {
                out.push(Candidate {
                    position: Vec2::new(x, y),
                    yaw,
                    z,
                });
            }
        }
    }
    Ok(out)
}

/// Perpendicular distance from `p` to `wall`.
pub fn wall_distance(p: Vec2, wall: Wall, room: &Room) -> f64 {
    match wall {
        Wall::South => p.y,
        Wall::North => room.depth - p.y,
        Wall::West => p.x,
        Wall::East => room.width - p.x,
    }
}

/// Wall closest to `p` (ties resolved south, north, west, east).
pub fn nearest_wall(p: Vec2, room: &Room) -> Wall {
    let mut best = Wall::South;
    let mut best_d = f64::INFINITY;
    for wall in Wall::ALL {
        let d = wall_distance(p, wall, room);
        if d < best_d {
            best = wall;
            best_d = d;
        }
    }
    best
}

/// Distance from `p` to the wall opposite the anchor (or opposite the
/// nearest wall when the item has no anchor).
pub fn l_dist(p: Vec2, anchor: Option<Wall>, room: &Room) -> f64 {
    let anchor = anchor.unwrap_or_else(|| nearest_wall(p, room));
    wall_distance(p, anchor.opposite(), room).max(0.0)
}

/// Mean center distance from `p` to placed items within `mu`, or `mu` when
/// the neighbourhood is empty.
pub fn l_obj(p: Vec2, layout: &Layout, mu: f64) -> f64 {
    let (sum, n) = layout.items.iter().fold((0.0, 0usize), |(sum, n), it| {
        let d = p.distance(it.position);
        if d <= mu {
            (sum + d, n + 1)
        } else {
            (sum, n)
        }
    });
    if n == 0 {
        mu
    } else {
        sum / n as f64
    }
}

#[inline]
fn combine(alpha: f64, beta: f64, n_dist: f64, n_obj: f64) -> f64 {
    alpha * n_dist + beta * n_obj
}

/// Obstacles sharing the candidate's vertical band.
struct Obstacles {
    boxes: Vec<(Footprint, Aabb)>,
    support: Option<Footprint>,
}

impl Obstacles {
    fn new(layout: &Layout, z: f64, height: f64, support: Option<&str>) -> Self {
        let boxes = layout
            .items
            .iter()
            .filter(|it| geometry::z_bands_overlap(it.z, it.height, z, height))
            .map(|it| {
                let fp = it.footprint();
                (fp, fp.aabb())
            })
            .collect();
        let support = support.and_then(|s| layout.item(s)).map(PlacedItem::footprint);
        Self { boxes, support }
    }

    fn gate(&self, fp: &Footprint, room: &Room, tolerance: f64) -> Option<Conflict> {
        if room.bounds().max_excursion(fp) > EPS {
            return Some(Conflict::WallCollision);
        }
        if let Some(top) = &self.support {
            if !top.contains_footprint(fp, EPS) {
                return Some(Conflict::WallCollision);
            }
        }
        let aabb = fp.aabb();
        for (other, other_box) in &self.boxes {
            if aabb.intersects(other_box) && geometry::intersection_area(fp, other) > tolerance {
                return Some(Conflict::FurnitureCollision);
            }
        }
        None
    }

    /// Area outside the room or support plus overlap with obstacles.
    fn violation_area(&self, fp: &Footprint, room: &Room) -> f64 {
        let mut area = room.bounds().outside_area(fp);
        if let Some(top) = &self.support {
            let inside = geometry::polygon_area(&geometry::clip_convex(&fp.corners(), &top.corners()));
            area += (fp.area() - inside).max(0.0);
        }
        for (other, _) in &self.boxes {
            area += geometry::intersection_area(fp, other);
        }
        area
    }
}

#[derive(Debug, Clone, Copy)]
struct Evaluated {
    candidate: Candidate,
    n_dist: f64,
    n_obj: f64,
    gate: Option<Conflict>,
}

fn evaluate_all(spec: &PlacementSpec, room: &Room, layout: &Layout, config: &CapsConfig, candidates: &[Candidate]) -> Vec<Evaluated> {
    let z = candidates.first().map_or(0.0, |c| c.z);
    let obstacles = Obstacles::new(layout, z, spec.item.height, spec.support.as_deref());
    let diag = room.diagonal();
    let anchor = spec.anchor_wall();
    candidates
        .iter()
        .map(|&c| {
            let fp = Footprint::new(c.position, spec.item.width, spec.item.depth, c.yaw);
            Evaluated {
                candidate: c,
                n_dist: l_dist(c.position, anchor, room) / diag,
                n_obj: l_obj(c.position, layout, config.mu) / config.mu,
                gate: obstacles.gate(&fp, room, config.overlap_tolerance),
            }
        })
        .collect()
}

/// Placement score of one pose; `-∞` when the pose leaves the room (or its
/// support) or overlaps a placed footprint beyond `overlap_tolerance`.
#[allow(clippy::too_many_arguments)]
pub fn score_candidate(
    p: Vec2,
    yaw: f64,
    spec: &PlacementSpec,
    room: &Room,
    layout: &Layout,
    alpha: f64,
    beta: f64,
    mu: f64,
    overlap_tolerance: f64,
) -> f64 {
    let z = match &spec.support {
        Some(s) => layout.item(s).map_or(0.0, PlacedItem::top),
        None => mount_z(spec, room),
    };
    let obstacles = Obstacles::new(layout, z, spec.item.height, spec.support.as_deref());
    let fp = Footprint::new(p, spec.item.width, spec.item.depth, yaw);
    if obstacles.gate(&fp, room, overlap_tolerance).is_some() {
        return f64::NEG_INFINITY;
    }
    let n_dist = l_dist(p, spec.anchor_wall(), room) / room.diagonal();
    let n_obj = l_obj(p, layout, mu) / mu;
    combine(alpha, beta, n_dist, n_obj)
}

/// Shifts weight towards the wall term after a wall collision and towards
/// the neighbour term after a furniture collision, keeping `α + β = 1`.
pub fn adjust_weights(alpha: f64, conflict: Conflict, k: f64, delta_alpha: f64) -> (f64, f64) {
    let step = k * delta_alpha;
    let next = match conflict {
        Conflict::WallCollision => alpha + step,
        Conflict::FurnitureCollision => alpha - step,
    };
    let next = if next.is_nan() { alpha } else { next.clamp(0.0, 1.0) };
    (next, 1.0 - next)
}

/// Whether the weights adapt between retries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Adaptive weights with grid-refining retries.
    Caps,
    /// A single attempt at the initial weights.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub strategy: Strategy,
    /// Place an item that has no feasible pose at its least-violating
    /// candidate instead of failing.
    pub force_unplaceable: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Caps,
            force_unplaceable: false,
        }
    }
}

fn placed_from(spec: &PlacementSpec, c: Candidate) -> PlacedItem {
    let item = &spec.item;
    PlacedItem {
        id: item.id.clone(),
        category: item.category.clone(),
        position: c.position,
        z: c.z,
        yaw: math::normalize_yaw(c.yaw),
        width: item.width,
        depth: item.depth,
        height: item.height,
        color: item.color.clone(),
        material: item.material.clone(),
        mount: item.mount,
        support: spec.support.clone(),
    }
}

fn best_feasible(evals: &[Evaluated], alpha: f64, beta: f64) -> Option<Candidate> {
    let mut best: Option<(f64, Candidate)> = None;
    for e in evals.iter().filter(|e| e.gate.is_none()) {
        let s = combine(alpha, beta, e.n_dist, e.n_obj);
        if best.is_none_or(|(b, _)| s > b) {
            best = Some((s, e.candidate));
        }
    }
    best.map(|(_, c)| c)
}

fn diagnose(evals: &[Evaluated], alpha: f64, beta: f64) -> Conflict {
    let mut best: Option<(f64, Conflict)> = None;
    for e in evals {
        if let Some(gate) = e.gate {
            let s = combine(alpha, beta, e.n_dist, e.n_obj);
            if best.is_none_or(|(b, _)| s > b) {
                best = Some((s, gate));
            }
        }
    }
    best.map_or(Conflict::WallCollision, |(_, g)| g)
}

/// Places one item into `layout` using the adaptive retry loop.
pub fn place_item(spec: &PlacementSpec, layout: &Layout, config: &CapsConfig) -> Result<(PlacedItem, ItemTrace), PlacementError> {
    match place_item_with(spec, layout, config, Strategy::Caps)? {
        (Some(placed), trace) => Ok((placed, trace)),
        (None, trace) => Err(PlacementError::ItemUnplaceable { id: spec.item.id.clone(), trace }),
    }
}

fn place_item_with(
    spec: &PlacementSpec,
    layout: &Layout,
    config: &CapsConfig,
    strategy: Strategy,
) -> Result<(Option<PlacedItem>, ItemTrace), PlacementError> {
    let room = &layout.room;
    let mut alpha = config.alpha0;
    let mut beta = config.beta0;
    let mut trace = ItemTrace {
        id: spec.item.id.clone(),
        attempts: 0,
        final_alpha: alpha,
        final_beta: beta,
        final_grid_step: config.grid_step,
        conflicts: Vec::new(),
    };
    let last_attempt = match strategy {
        Strategy::Caps => config.max_retries,
        Strategy::Fixed => 0,
    };
    let mut cache: Option<(f64, Vec<Evaluated>)> = None;
    for attempt in 0..=last_attempt {
        let step = config.grid_for_attempt(attempt);
        if cache.as_ref().is_none_or(|(s, _)| *s != step) {
            let candidates = generate_candidates(spec, room, layout, step)?;
            cache = Some((step, evaluate_all(spec, room, layout, config, &candidates)));
        }
        let evals = &cache.as_ref().expect("cache filled above").1;
        trace.attempts += 1;
        trace.final_grid_step = step;
        if let Some(c) = best_feasible(evals, alpha, beta) {
            trace.final_alpha = alpha;
            trace.final_beta = beta;
            return Ok((Some(placed_from(spec, c)), trace));
        }
        let conflict = diagnose(evals, alpha, beta);
        trace.conflicts.push(conflict);
        if strategy == Strategy::Caps {
            (alpha, beta) = adjust_weights(alpha, conflict, config.k, config.delta_alpha);
        }
        trace.final_alpha = alpha;
        trace.final_beta = beta;
    }
    Ok((None, trace))
}

/// Least-violating pose for an item with no feasible candidate.
fn forced_pose(spec: &PlacementSpec, layout: &Layout, config: &CapsConfig) -> Result<Candidate, PlacementError> {
    let room = &layout.room;
    let candidates = generate_candidates(spec, room, layout, config.grid_step)?;
    let z = candidates.first().map_or_else(|| mount_z(spec, room), |c| c.z);
    let obstacles = Obstacles::new(layout, z, spec.item.height, spec.support.as_deref());
    let mut best: Option<(f64, f64, Candidate)> = None;
    for e in evaluate_all(spec, room, layout, config, &candidates) {
        let c = e.candidate;
        let fp = Footprint::new(c.position, spec.item.width, spec.item.depth, c.yaw);
        let area = obstacles.violation_area(&fp, room);
        let score = combine(config.alpha0, config.beta0, e.n_dist, e.n_obj);
        let better = match best {
            None => true,
            Some((a, s, _)) => area < a - 1e-12 || ((area - a).abs() <= 1e-12 && score > s),
        };
        if better {
            best = Some((area, score, c));
        }
    }
    Ok(best.map_or(
        Candidate {
            position: Vec2::new(room.width / 2.0, room.depth / 2.0),
            yaw: 0.0,
            z,
        },
        |(_, _, c)| c,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solve {
    pub layout: Layout,
    pub trace: PlacementTrace,
    /// Items that had no feasible pose (only non-empty when forcing).
    pub unplaced: Vec<String>,
}

/// Adds every item of `order` to an empty `room`, one at a time.
pub fn place_sequence(order: &PlacementOrder, org: &SceneOrganization, room: &Room, config: &CapsConfig) -> Result<(Layout, PlacementTrace), PlacementError> {
    let solve = place_sequence_with(order, org, room, config, SolveOptions::default())?;
    Ok((solve.layout, solve.trace))
}

pub fn place_sequence_with(
    order: &PlacementOrder,
    org: &SceneOrganization,
    room: &Room,
    config: &CapsConfig,
    options: SolveOptions,
) -> Result<Solve, PlacementError> {
    let specs = placement_specs(&org.expand());
    let ordered: Result<Vec<&PlacementSpec>, _> = order
        .items
        .iter()
        .map(|id| specs.get(id).ok_or_else(|| PlacementError::UnknownItem(id.clone())))
        .collect();
    place_specs(&ordered?, room, config, options)
}

/// Places pre-built specs in the given order.
pub fn place_specs(specs: &[&PlacementSpec], room: &Room, config: &CapsConfig, options: SolveOptions) -> Result<Solve, PlacementError> {
    config.validate()?;
    let mut layout = Layout::new(room.clone());
    layout.provenance = Provenance {
        seed: config.seed,
        config_hash: config.config_hash(),
    };
    let mut trace = PlacementTrace::default();
    let mut unplaced = Vec::new();
    for spec in specs {
        let (placed, item_trace) = place_item_with(spec, &layout, config, options.strategy)?;
        let placed = match placed {
            Some(p) => p,
            None if options.force_unplaceable => {
                unplaced.push(spec.item.id.clone());
                placed_from(spec, forced_pose(spec, &layout, config)?)
            }
            None => {
                return Err(PlacementError::ItemUnplaceable {
                    id: spec.item.id.clone(),
                    trace: item_trace,
                })
            }
        };
        trace.items.push(item_trace);
        layout.items.push(placed);
    }
    Ok(Solve { layout, trace, unplaced })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollisionKind {
    Furniture,
    Wall,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollisionRecord {
    pub first: String,
    /// `None` for wall records.
    pub second: Option<String>,
    pub area: f64,
    pub kind: CollisionKind,
}

/// Pairwise footprint intersections between items sharing a vertical band,
/// plus footprint area outside the room, above `tolerance` (m²).
pub fn detect_collisions(layout: &Layout, tolerance: f64) -> Vec<CollisionRecord> {
    let bounds = layout.room.bounds();
    let fps: Vec<Footprint> = layout.items.iter().map(PlacedItem::footprint).collect();
    let mut out = Vec::new();
    for (i, a) in layout.items.iter().enumerate() {
        let outside = bounds.outside_area(&fps[i]);
        if outside > tolerance {
            out.push(CollisionRecord {
                first: a.id.clone(),
                second: None,
                area: outside,
                kind: CollisionKind::Wall,
            });
        }
        for (j, b) in layout.items.iter().enumerate().skip(i + 1) {
            if !a.z_overlaps(b) {
                continue;
            }
            let area = geometry::intersection_area(&fps[i], &fps[j]);
            if area > tolerance {
                out.push(CollisionRecord {
                    first: a.id.clone(),
                    second: Some(b.id.clone()),
                    area,
                    kind: CollisionKind::Furniture,
                });
            }
        }
    }
    out
}

impl From<&FurnitureItem> for PlacementSpec {
    fn from(item: &FurnitureItem) -> Self {
        PlacementSpec::free(item.to_owned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{build_room, RoomType};

    fn room(w: f64, d: f64) -> Room {
        build_room(RoomType::Bedroom, Some((w, d))).unwrap()
    }

    fn unit_item(id: &str) -> FurnitureItem {
        FurnitureItem::new(id, "box", 1.0, 1.0, 1.0)
    }

    fn placed(id: &str, x: f64, y: f64, w: f64, d: f64, z: f64, h: f64) -> PlacedItem {
        PlacedItem {
            id: id.into(),
            category: "box".into(),
            position: Vec2::new(x, y),
            z,
            yaw: 0.0,
            width: w,
            depth: d,
            height: h,
            color: None,
            material: None,
            mount: Mount::Floor,
            support: None,
        }
    }

    /// Direct enumeration of the centred grid rule.
    fn oracle_grid_count(room_len: f64, extent: f64, step: f64) -> usize {
        let mut n = 0;
        let mut k = 1;
        while k as f64 * step <= room_len - extent + 1e-9 {
            n += 1;
            k += 1;
        }
        n.max(usize::from(room_len >= extent))
    }

    #[test]
    fn candidate_grid_count() {
        let r = room(5.0, 4.0);
        let cands = generate_candidates(&PlacementSpec::free(unit_item("a")), &r, &Layout::new(r.clone()), 1.0).unwrap();
        let expected = 4 * oracle_grid_count(5.0, 1.0, 1.0) * oracle_grid_count(4.0, 1.0, 1.0);
        assert_eq!(expected, 48);
        assert_eq!(cands.len(), 48);
        let xs: Vec<f64> = cands.iter().take(12).map(|c| c.position.x).collect();
        assert_eq!(xs[0], 1.0);
    }

    #[test]
    fn oversized_item_has_no_candidates() {
        let r = room(3.0, 3.0);
        let spec = PlacementSpec::free(FurnitureItem::new("x", "x", 4.0, 3.5, 1.0));
        assert!(generate_candidates(&spec, &r, &Layout::new(r.clone()), 0.1).unwrap().is_empty());
        let cfg = CapsConfig::default();
        assert!(matches!(place_item(&spec, &Layout::new(r), &cfg), Err(PlacementError::ItemUnplaceable { .. })));
    }

    #[test]
    fn cup_needs_placed_support() {
        let r = room(5.0, 4.0);
        let mut spec = PlacementSpec::free(FurnitureItem::new("cup", "cup", 0.1, 0.1, 0.1).with_mount(Mount::OnTop));
        spec.support = Some("table".into());
        assert_eq!(
            generate_candidates(&spec, &r, &Layout::new(r.clone()), 0.1),
            Err(PlacementError::NoCandidateSurface("cup".into()))
        );
    }

    #[test]
    fn l_dist_examples() {
        let r = room(5.0, 4.0);
        assert_eq!(l_dist(Vec2::new(2.5, 0.5), Some(Wall::South), &r), 3.5);
        assert_eq!(l_dist(Vec2::new(2.5, 2.0), Some(Wall::West), &r), 2.5);
        assert_eq!(l_dist(Vec2::new(2.5, 4.0), Some(Wall::South), &r), 0.0);
    }

    #[test]
    fn l_obj_examples() {
        let r = room(10.0, 10.0);
        let mut layout = Layout::new(r);
        let p = Vec2::new(5.0, 5.0);
        assert_eq!(l_obj(p, &layout, 3.0), 3.0);
        layout.items.push(placed("a", 6.0, 5.0, 0.1, 0.1, 0.0, 1.0));
        assert_eq!(l_obj(p, &layout, 3.0), 1.0);
        layout.items.push(placed("b", 5.0, 7.0, 0.1, 0.1, 0.0, 1.0));
        layout.items.push(placed("c", 1.0, 5.0, 0.1, 0.1, 0.0, 1.0));
        // Oracle: mean over the in-radius subset {1.0, 2.0}.
        let in_radius: Vec<f64> = layout.items.iter().map(|i| p.distance(i.position)).filter(|&d| d <= 3.0).collect();
        let oracle = in_radius.iter().sum::<f64>() / in_radius.len() as f64;
        assert_eq!(oracle, 1.5);
        assert_eq!(l_obj(p, &layout, 3.0), oracle);
    }

    #[test]
    fn score_linearity() {
        let r = room(5.0, 4.0);
        let layout = Layout::new(r.clone());
        let spec = PlacementSpec::free(unit_item("a"));
        let p = Vec2::new(1.0, 1.5);
        let s = score_candidate(p, 0.0, &spec, &r, &layout, 1.0, 0.0, 3.0, 1e-4);
        assert_eq!(s, l_dist(p, None, &r) / r.diagonal());
        let s = score_candidate(p, 0.0, &spec, &r, &layout, 0.0, 1.0, 3.0, 1e-4);
        assert_eq!(s, 1.0);
    }

    #[test]
    fn overlapping_candidate_is_infeasible() {
        let r = room(5.0, 4.0);
        let mut layout = Layout::new(r.clone());
        layout.items.push(placed("a", 2.0, 2.0, 1.0, 1.0, 0.0, 1.0));
        let spec = PlacementSpec::free(unit_item("b"));
        // 10% overlap.
        let s = score_candidate(Vec2::new(2.9, 2.0), 0.0, &spec, &r, &layout, 0.5, 0.5, 3.0, 1e-4);
        assert_eq!(s, f64::NEG_INFINITY);
        let s = score_candidate(Vec2::new(4.0, 0.4), 0.0, &spec, &r, &layout, 0.5, 0.5, 3.0, 1e-4);
        assert_eq!(s, f64::NEG_INFINITY);
    }

    #[test]
    fn weight_adjustment_examples() {
        let (a, b) = adjust_weights(0.5, Conflict::WallCollision, 1.0, 0.1);
        assert!((a - 0.6).abs() < 1e-12 && (b - 0.4).abs() < 1e-12);
        assert_eq!(adjust_weights(0.95, Conflict::WallCollision, 1.0, 0.1), (1.0, 0.0));
        let (a, b) = adjust_weights(0.5, Conflict::FurnitureCollision, 2.0, 0.1);
        assert!((a - 0.3).abs() < 1e-12 && (b - 0.7).abs() < 1e-12);
        assert_eq!(adjust_weights(0.05, Conflict::FurnitureCollision, 1.0, 0.1), (0.0, 1.0));
    }

    #[test]
    fn against_wall_hugs_the_wall() {
        let r = room(5.0, 4.0);
        let mut spec = PlacementSpec::free(unit_item("a"));
        spec.wall = Some((Wall::North, WallBand::Flush));
        let (item, _) = place_item(&spec, &Layout::new(r.clone()), &CapsConfig::default()).unwrap();
        let back = item.position.y + item.depth / 2.0;
        assert!((r.depth - back).abs() <= 0.1);
        assert_eq!(item.yaw, PI);
    }

    #[test]
    fn collision_records() {
        let r = room(5.0, 4.0);
        let mut layout = Layout::new(r);
        layout.items.push(placed("a", 2.0, 2.0, 1.0, 1.0, 0.0, 0.75));
        layout.items.push(placed("b", 2.0, 2.0, 1.0, 1.0, 0.0, 0.75));
        let recs = detect_collisions(&layout, 1e-4);
        assert_eq!(recs.len(), 1);
        assert!((recs[0].area - 1.0).abs() < 1e-12);

        layout.items[1] = placed("cup", 2.0, 2.0, 0.1, 0.1, 0.75, 0.1);
        assert!(detect_collisions(&layout, 1e-4).is_empty());

        layout.items[1] = placed("c", 0.0, 2.0, 1.0, 1.0, 0.0, 0.5);
        let recs = detect_collisions(&layout, 1e-4);
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].kind, CollisionKind::Wall);
        assert!((recs[0].area - 0.5).abs() < 1e-12);
    }

    #[test]
    fn grid_refines_every_five_attempts() {
        let cfg = CapsConfig::default();
        assert_eq!(cfg.grid_for_attempt(0), 0.1);
        assert_eq!(cfg.grid_for_attempt(4), 0.1);
        assert_eq!(cfg.grid_for_attempt(5), 0.05);
        assert_eq!(cfg.grid_for_attempt(10), 0.025);
        assert_eq!(cfg.grid_for_attempt(25), 0.025);
    }

    #[test]
    fn config_validation() {
        assert!(CapsConfig::default().validate().is_ok());
        let bad = CapsConfig { alpha0: 0.7, ..CapsConfig::default() };
        assert!(bad.validate().is_err());
        let r = CapsConfig::default().with_ratio(1.0);
        assert_eq!((r.alpha0, r.beta0), (0.5, 0.5));
    }

    #[test]
    fn sample_helpers() {
        assert_eq!(centered_samples(0.5, 4.5, 1.0), [1.0, 2.0, 3.0, 4.0]);
        assert_eq!(centered_samples(1.0, 1.0, 0.1), [1.0]);
        assert!(centered_samples(2.0, 1.0, 0.1).is_empty());
        assert_eq!(inclusive_samples(0.5, 1.0, 0.25), [0.5, 0.75, 1.0]);
    }
}
