//! Procedural scene generator plus the strategy comparison and α/β sweep.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use roomcraft_core::catalog;
use roomcraft_core::constraints::{compile_constraints_with, ConstraintConfig, ConstraintTuple};
use roomcraft_core::geometry::Vec2;
use roomcraft_core::graph::{build_graph, hdfs_order};
use roomcraft_core::math;
use roomcraft_core::metrics::{coherence_score, oob_flag_with, orientation_correctness_with, MetricThresholds};
use roomcraft_core::placement::{
    placement_specs, place_sequence_with, CapsConfig, Layout, PlacedItem, SolveOptions, Strategy, QUARTER_YAWS,
};
use roomcraft_core::scene::{FurnitureItem, Mount, RelationEdge, RelationKind, Room, RoomSpec, RoomType, SceneOrganization, Wall};
use thiserror::Error;

pub const DEFAULT_DENSITIES: [f64; 3] = [0.15, 0.25, 0.35];
pub const DEFAULT_SCENES: usize = 50;
pub const DEFAULT_RATIOS: [f64; 5] = [0.2, 0.5, 1.0, 2.0, 5.0];
pub const MAX_ITEMS: u32 = 12;
const MIN_ASPECT: f64 = 1.0;
const MAX_ASPECT: f64 = 1.6;
/// Free length kept at each wall end when packing wall-anchored items.
const WALL_RESERVE: f64 = 0.2;
const WALL_SPACING: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("scene count must be at least 1")]
    NoScenes,
    #[error("density {0} must lie in (0, 1)")]
    BadDensity(f64),
    #[error("ratio {0} must be positive")]
    BadRatio(f64),
    #[error("generated scene {0} is invalid: {1}")]
    Generator(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BenchStrategy {
    Caps,
    NoCaps,
    Random,
}

impl BenchStrategy {
    pub const ALL: [BenchStrategy; 3] = [BenchStrategy::Caps, BenchStrategy::NoCaps, BenchStrategy::Random];

    pub fn as_str(self) -> &'static str {
        match self {
            BenchStrategy::Caps => "caps",
            BenchStrategy::NoCaps => "no_caps",
            BenchStrategy::Random => "random",
        }
    }
}

// ---------------------------------------------------------------------------
// Templates

#[derive(Debug, Clone, Copy)]
enum Rel {
    Wall,
    Corner,
    Ceiling,
    OnTop(&'static str),
    Near(&'static str),
    Faces(&'static str),
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    category: &'static str,
    rels: &'static [Rel],
    /// Largest `count` for grouped items such as dining chairs.
    max_count: u32,
}

const fn slot(category: &'static str, rels: &'static [Rel]) -> Slot {
    Slot { category, rels, max_count: 1 }
}

const fn group(category: &'static str, rels: &'static [Rel], max_count: u32) -> Slot {
    Slot { category, rels, max_count }
}

struct Template {
    room_type: RoomType,
    required: &'static [Slot],
    pool: &'static [Slot],
}

const TEMPLATES: &[Template] = &[
    Template {
        room_type: RoomType::Bedroom,
        required: &[slot("bed", &[Rel::Wall])],
        pool: &[
            slot("nightstand", &[Rel::Near("bed")]),
            slot("nightstand", &[Rel::Near("bed")]),
            slot("wardrobe", &[Rel::Wall]),
            slot("dresser", &[Rel::Wall]),
            slot("desk", &[Rel::Wall]),
            slot("chair", &[Rel::Near("desk")]),
            slot("armchair", &[]),
            slot("lamp", &[Rel::OnTop("nightstand")]),
            slot("plant", &[Rel::Corner]),
            slot("painting", &[]),
            slot("mirror", &[]),
            slot("ceiling_light", &[Rel::Ceiling]),
            slot("bookshelf", &[Rel::Wall]),
        ],
    },
    Template {
        room_type: RoomType::LivingRoom,
        required: &[slot("sofa", &[Rel::Wall]), slot("tv_stand", &[Rel::Wall])],
        pool: &[
            slot("tv", &[Rel::OnTop("tv_stand"), Rel::Faces("sofa")]),
            slot("coffee_table", &[Rel::Near("sofa")]),
            slot("armchair", &[Rel::Near("coffee_table")]),
            slot("armchair", &[Rel::Near("coffee_table")]),
            slot("side_table", &[Rel::Near("sofa")]),
            slot("lamp", &[Rel::OnTop("side_table")]),
            slot("bookshelf", &[Rel::Wall]),
            slot("plant", &[Rel::Corner]),
            slot("painting", &[]),
            slot("ceiling_light", &[Rel::Ceiling]),
            slot("cabinet", &[Rel::Wall]),
        ],
    },
    Template {
        room_type: RoomType::DiningRoom,
        required: &[slot("dining_table", &[]), group("chair", &[Rel::Near("dining_table")], 6)],
        pool: &[
            slot("cabinet", &[Rel::Wall]),
            slot("side_table", &[Rel::Wall]),
            slot("plant", &[Rel::Corner]),
            slot("painting", &[]),
            slot("ceiling_light", &[Rel::Ceiling]),
            slot("vase", &[Rel::OnTop("dining_table")]),
            slot("bookshelf", &[Rel::Wall]),
        ],
    },
    Template {
        room_type: RoomType::Kitchen,
        required: &[slot("counter", &[Rel::Wall]), slot("stove", &[Rel::Wall]), slot("fridge", &[Rel::Wall])],
        pool: &[
            slot("sink", &[Rel::Wall]),
            slot("table", &[]),
            group("chair", &[Rel::Near("table")], 4),
            slot("cabinet", &[Rel::Wall]),
            slot("plant", &[Rel::Corner]),
            slot("ceiling_light", &[Rel::Ceiling]),
            slot("cup", &[Rel::OnTop("table")]),
        ],
    },
    Template {
        room_type: RoomType::Bathroom,
        required: &[slot("toilet", &[Rel::Wall]), slot("sink", &[Rel::Wall])],
        pool: &[
            slot("bathtub", &[Rel::Wall]),
            slot("shower", &[Rel::Corner]),
            slot("vanity", &[Rel::Wall]),
            slot("mirror", &[]),
            slot("cabinet", &[Rel::Wall]),
            slot("plant", &[Rel::Corner]),
        ],
    },
];

/// Mixes the run seed with a scene coordinate (splitmix64 finalizer).
pub fn scene_seed(seed: u64, density_index: usize, scene: usize) -> u64 {
    let mut z = seed
        ^ (density_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ (scene as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Ordering weight on wall anchors. Larger than any cost the other
/// relations of a scene can add up to, so anchored pieces are placed first.
const ANCHOR_WEIGHT: f64 = 12.0;
/// Corner pieces go before everything else: they need a free wall end.
const CORNER_WEIGHT: f64 = 24.0;
/// A fitted run goes down first: on an empty wall the first piece takes an
/// end, the second the far end, and the third gets the gap between them.
const RUN_WEIGHT: f64 = 48.0;
/// Two corner pieces can always find a free end; a third may not.
const MAX_CORNER_ITEMS: usize = 2;

#[derive(Debug, Clone, Copy, Default)]
struct WallLoad {
    widths: f64,
    count: u32,
    max_depth: f64,
}

impl WallLoad {
    fn add(&mut self, width: f64, depth: f64) {
        self.widths += width;
        self.count += 1;
        self.max_depth = self.max_depth.max(depth);
    }
}

fn wall_index(w: Wall) -> usize {
    Wall::ALL.iter().position(|x| *x == w).expect("wall index")
}

/// `fitted` is a wall already packed to length by [`fit_kitchen_run`].
fn walls_fit(loads: &[WallLoad; 4], width: f64, depth: f64, fitted: Option<Wall>) -> bool {
    Wall::ALL.iter().all(|&w| {
        let load = &loads[wall_index(w)];
        if load.count == 0 || Some(w) == fitted {
            return true;
        }
        let (a, b) = if w.is_horizontal() { (Wall::West, Wall::East) } else { (Wall::South, Wall::North) };
        let corners = loads[wall_index(a)].max_depth + loads[wall_index(b)].max_depth;
        let need = load.widths + WALL_SPACING * load.count as f64 + 2.0 * WALL_RESERVE + corners;
        need <= w.length(width, depth)
    })
}

struct Chosen {
    id: String,
    slot: Slot,
    count: u32,
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

/// Floor-standing footprint area of an organization, counting every clone.
pub fn floor_area(org: &SceneOrganization) -> f64 {
    org.furniture
        .iter()
        .filter(|f| f.mount == Mount::Floor && !org.relations.iter().any(|r| r.subject == f.id && r.relation == RelationKind::OnTopOf))
        .map(|f| f.footprint_area() * f.count as f64)
        .sum()
}

/// Builds a random scene whose floor items cover about `density` of the floor.
pub fn generate_scene(density: f64, rng: &mut ChaCha8Rng) -> SceneOrganization {
    let template = &TEMPLATES[rng.random_range(0..TEMPLATES.len())];
    let target: u32 = rng.random_range(4..=MAX_ITEMS);
    let mut chosen: Vec<Chosen> = Vec::new();
    let mut total = 0u32;
    let id_for = |chosen: &[Chosen], category: &str| {
        let n = chosen.iter().filter(|c| c.slot.category == category).count();
        if n == 0 {
            category.to_owned()
        } else {
            format!("{category}_{}", n + 1)
        }
    };
    let present = |chosen: &[Chosen], category: &str| chosen.iter().any(|c| c.slot.category == category);
    let deps_met = |chosen: &[Chosen], s: &Slot| {
        s.rels.iter().all(|r| match r {
            Rel::OnTop(c) | Rel::Near(c) | Rel::Faces(c) => present(chosen, c),
            _ => true,
        })
    };
    for s in template.required {
        let count = if s.max_count > 1 { rng.random_range(2..=s.max_count) } else { 1 };
        let id = id_for(&chosen, s.category);
        chosen.push(Chosen { id, slot: *s, count });
        total += count;
    }
    let mut pool: Vec<&Slot> = template.pool.iter().collect();
    pool.shuffle(rng);
    // Slots whose dependency shows up later get a second chance.
    for _ in 0..2 {
        let mut rest = Vec::new();
        for s in pool {
            if total >= target {
                break;
            }
            if !deps_met(&chosen, s) {
                rest.push(s);
                continue;
            }
            let room_left = (target - total).min(MAX_ITEMS - total);
            let count = if s.max_count > 1 && room_left >= 2 {
                rng.random_range(2..=s.max_count.min(room_left))
            } else {
                1
            };
            let id = id_for(&chosen, s.category);
            chosen.push(Chosen { id, slot: *s, count });
            total += count;
        }
        pool = rest;
    }

    let mut org = SceneOrganization::new(template.room_type);
    for c in &chosen {
        let item = FurnitureItem::from_catalog(&c.id, c.slot.category)
            .expect("templates use catalog categories")
            .with_count(c.count);
        org.furniture.push(item);
    }
    let on_top: Vec<&str> = chosen
        .iter()
        .filter(|c| c.slot.rels.iter().any(|r| matches!(r, Rel::OnTop(_))))
        .map(|c| c.id.as_str())
        .collect();
    for item in &mut org.furniture {
        if on_top.contains(&item.id.as_str()) {
            item.mount = Mount::OnTop;
        }
    }

    // Room size follows from the floor footprint and the target density.
    let floor: f64 = floor_area(&org).max(0.5);
    let area = floor / density;
    let aspect = rng.random_range(MIN_ASPECT..=MAX_ASPECT);
    let longest = chosen
        .iter()
        .filter_map(|c| catalog::lookup(c.slot.category))
        .filter(|e| e.mount == Mount::Floor)
        .map(|e| e.width.max(e.depth))
        .fold(0.0, f64::max);
    let mut short = (area / aspect).sqrt();
    let mut long = area / short;
    let need = longest + 0.2;
    if short < need {
        short = need;
        long = (area / short).max(short);
        if long / short > MAX_ASPECT {
            long = short * MAX_ASPECT;
        }
    }
    let (width, depth) = if rng.random_bool(0.5) { (long, short) } else { (short, long) };
    let mut dims = (round2(width.clamp(Room::MIN_SIZE, Room::MAX_SIZE)), round2(depth.clamp(Room::MIN_SIZE, Room::MAX_SIZE)));
    let run = if template.room_type == RoomType::Kitchen {
        fit_kitchen_run(&mut org, &chosen, density, need, &mut dims, rng)
    } else {
        None
    };
    let (width, depth) = dims;
    org.room = Some(RoomSpec {
        width: Some(width),
        depth: Some(depth),
        ..RoomSpec::default()
    });

    // Wall anchors: pack widths along each wall. Pieces on the two adjacent
    // walls may sit in the corners, so their depth is charged to both ends.
    let mut walls_used = [WallLoad::default(); 4];
    let mut corners = 0usize;
    for c in &chosen {
        let entry = catalog::lookup(c.slot.category).expect("catalog category");
        for rel in c.slot.rels {
            match rel {
                Rel::Wall | Rel::Corner => {
                    let mut order = Wall::ALL;
                    order.shuffle(rng);
                    let fits_on = |w: Wall| {
                        let mut trial = walls_used;
                        trial[wall_index(w)].add(entry.width, entry.depth);
                        let across = if w.is_horizontal() { depth } else { width };
                        entry.depth < across / 2.0 && walls_fit(&trial, width, depth, run)
                    };
                    let fits = match run {
                        Some(r) if RUN_PIECES.contains(&c.slot.category) => Some(r),
                        // Pieces on the walls next to the run could take its ends.
                        Some(r) => Some(r.opposite()).filter(|&w| fits_on(w)),
                        None => order.into_iter().find(|&w| fits_on(w)),
                    };
                    if let Some(w) = fits {
                        walls_used[wall_index(w)].add(entry.width, entry.depth);
                        let corner = matches!(rel, Rel::Corner) && corners < MAX_CORNER_ITEMS;
                        let edge = if corner {
                            corners += 1;
                            RelationEdge::new(&c.id, RelationKind::Corner, w.id()).with_param("weight", CORNER_WEIGHT)
                        } else {
                            let weight = if Some(w) == run { RUN_WEIGHT } else { ANCHOR_WEIGHT };
                            RelationEdge::new(&c.id, RelationKind::AgainstWall, w.id()).with_param("weight", weight)
                        };
                        org.relations.push(edge);
                    }
                }
                Rel::Ceiling => org.relations.push(RelationEdge::new(&c.id, RelationKind::CeilingMounted, "ceiling")),
                Rel::OnTop(cat) | Rel::Near(cat) | Rel::Faces(cat) => {
                    let target = chosen.iter().find(|o| o.slot.category == *cat).expect("dependency checked");
                    let kind = match rel {
                        Rel::OnTop(_) => RelationKind::OnTopOf,
                        Rel::Near(_) => RelationKind::Near,
                        _ => RelationKind::FaceToFace,
                    };
                    org.relations.push(RelationEdge::new(&c.id, kind, &target.id));
                }
            }
        }
    }
    org
}

/// Slack left at the end of a fitted kitchen run: below the default grid
/// step, above the finest retry step.
const RUN_SLACK: (f64, f64) = (0.03, 0.09);
const COUNTER_WIDTH: (f64, f64) = (1.0, 3.0);
/// A run of three leaves one interior gap. With more pieces the grid loses
/// slack at every gap before the last one is placed.
const RUN_PIECES: [&str; 3] = ["counter", "stove", "fridge"];

/// Puts the kitchen's counter, stove and fridge on one wall and cuts the counter so the
/// run fills that wall up to a few centimetres. The other side of the room is
/// resized to keep the floor density. Returns the run wall, or `None` (and
/// leaves the scene untouched) when no wall can take the run.
fn fit_kitchen_run(org: &mut SceneOrganization, chosen: &[Chosen], density: f64, need: f64, dims: &mut (f64, f64), rng: &mut ChaCha8Rng) -> Option<Wall> {
    let slack = rng.random_range(RUN_SLACK.0..=RUN_SLACK.1);
    let run: Vec<&Chosen> = chosen.iter().filter(|c| RUN_PIECES.contains(&c.slot.category)).collect();
    let counter = run.iter().find(|c| c.slot.category == "counter")?.id.clone();
    let others: f64 = run
        .iter()
        .filter(|c| c.id != counter)
        .filter_map(|c| catalog::lookup(c.slot.category))
        .map(|e| e.width)
        .sum();
    let idx = org.furniture.iter().position(|f| f.id == counter)?;
    let original = org.furniture[idx].width;
    let (width, depth) = *dims;
    let mut walls = Wall::ALL;
    // Longer walls first.
    walls.sort_by(|a, b| b.length(width, depth).total_cmp(&a.length(width, depth)));
    for w in walls {
        let len = w.length(width, depth);
        let cut = round2(len - others - slack);
        if !(COUNTER_WIDTH.0..=COUNTER_WIDTH.1).contains(&cut) {
            continue;
        }
        org.furniture[idx].width = cut;
        let across = round2(floor_area(org) / (density * len) + 0.005);
        let aspect = across.max(len) / across.min(len);
        if across >= need && across <= Room::MAX_SIZE && aspect <= MAX_ASPECT {
            *dims = if w.is_horizontal() { (len, across) } else { (across, len) };
            return Some(w);
        }
    }
    org.furniture[idx].width = original;
    None
}

// ---------------------------------------------------------------------------
// Solving

/// Uniform random poses with no feasibility checks.
pub fn random_layout(org: &SceneOrganization, room: &Room, order: &[String], seed: u64, caps: &CapsConfig) -> Layout {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs = placement_specs(&org.expand());
    let mut layout = Layout::new(room.clone());
    layout.provenance.seed = seed;
    layout.provenance.config_hash = caps.config_hash();
    for id in order {
        let Some(spec) = specs.get(id) else { continue };
        let item = &spec.item;
        let yaw = QUARTER_YAWS[rng.random_range(0..4)];
        let (position, z, yaw) = if let Some(support) = spec.support.as_ref().and_then(|s| layout.item(s)) {
            let top = support.footprint();
            let local = Vec2::new(
                rng.random_range(-0.5..=0.5) * top.width,
                rng.random_range(-0.5..=0.5) * top.depth,
            );
            (top.to_world(local), support.top(), yaw)
        } else if item.mount == Mount::Wall && spec.wall.is_none() {
            let wall = Wall::ALL[rng.random_range(0..4)];
            let along = rng.random_range(0.0..=wall.length(room.width, room.depth));
            let off = item.depth / 2.0;
            let p = match wall {
                Wall::South => Vec2::new(along, off),
                Wall::North => Vec2::new(along, room.depth - off),
                Wall::West => Vec2::new(off, along),
                Wall::East => Vec2::new(room.width - off, along),
            };
            (p, catalog::WALL_MOUNT_Z.min(room.wall_height - item.height), wall.facing_away_yaw())
        } else {
            let p = Vec2::new(rng.random_range(0.0..=room.width), rng.random_range(0.0..=room.depth));
            let z = if spec.ceiling { (room.wall_height - item.height).max(0.0) } else { 0.0 };
            (p, z, yaw)
        };
        layout.items.push(PlacedItem {
            id: item.id.clone(),
            category: item.category.clone(),
            position,
            z,
            yaw: math::normalize_yaw(yaw),
            width: item.width,
            depth: item.depth,
            height: item.height,
            color: item.color.clone(),
            material: item.material.clone(),
            mount: item.mount,
            support: spec.support.clone(),
        });
    }
    layout
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneResult {
    pub density_index: usize,
    pub scene: usize,
    pub strategy: BenchStrategy,
    pub items: usize,
    /// Items placed without falling back to a forced pose.
    pub placed: usize,
    pub oob: bool,
    pub ori: f64,
    pub coherence: f64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub scenes: usize,
    pub densities: Vec<f64>,
    pub seed: u64,
    pub caps: CapsConfig,
    pub constraints: ConstraintConfig,
    pub metrics: MetricThresholds,
    pub strategies: Vec<BenchStrategy>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            scenes: DEFAULT_SCENES,
            densities: DEFAULT_DENSITIES.to_vec(),
            seed: 1,
            caps: CapsConfig::default(),
            constraints: ConstraintConfig::default(),
            metrics: MetricThresholds::default(),
            strategies: BenchStrategy::ALL.to_vec(),
        }
    }
}

impl BenchConfig {
    fn check(&self) -> Result<(), BenchError> {
        if self.scenes == 0 {
            return Err(BenchError::NoScenes);
        }
        if let Some(&d) = self.densities.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
            return Err(BenchError::BadDensity(d));
        }
        Ok(())
    }
}

/// A generated scene ready for solving.
#[derive(Debug, Clone)]
pub struct BenchScene {
    pub density_index: usize,
    pub scene: usize,
    pub seed: u64,
    pub organization: SceneOrganization,
    pub room: Room,
    pub order: Vec<String>,
    pub constraints: Vec<ConstraintTuple>,
}

pub fn bench_scene(cfg: &BenchConfig, density_index: usize, scene: usize) -> Result<BenchScene, BenchError> {
    let seed = scene_seed(cfg.seed, density_index, scene);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let org = generate_scene(cfg.densities[density_index], &mut rng);
    let name = format!("{density_index}/{scene}");
    let fail = |e: String| BenchError::Generator(name.clone(), e);
    crate::spec::check_organization(&org).map_err(|e| fail(e.to_string()))?;
    let graph = build_graph(&org).map_err(|e| fail(e.to_string()))?;
    let order = hdfs_order(&graph).map_err(|e| fail(e.to_string()))?;
    let room = org.build_room().map_err(|e| fail(e.to_string()))?;
    let constraints = compile_constraints_with(&org, &cfg.constraints).map_err(|e| fail(e.to_string()))?;
    Ok(BenchScene {
        density_index,
        scene,
        seed,
        organization: org,
        room,
        order: order.items,
        constraints,
    })
}

fn solve_scene(cfg: &BenchConfig, s: &BenchScene, strategy: BenchStrategy) -> SceneResult {
    let total = s.order.len();
    let (layout, placed) = match strategy {
        BenchStrategy::Random => (random_layout(&s.organization, &s.room, &s.order, s.seed ^ 0x5eed, &cfg.caps), total),
        BenchStrategy::Caps | BenchStrategy::NoCaps => {
            let options = SolveOptions {
                strategy: if strategy == BenchStrategy::Caps { Strategy::Caps } else { Strategy::Fixed },
                force_unplaceable: true,
            };
            let order = roomcraft_core::graph::PlacementOrder {
                items: s.order.clone(),
                costs: vec![0.0; total],
            };
            match place_sequence_with(&order, &s.organization, &s.room, &cfg.caps, options) {
                Ok(solve) => {
                    let placed = total - solve.unplaced.len();
                    (solve.layout, placed)
                }
                Err(_) => (Layout::new(s.room.clone()), 0),
            }
        }
    };
    SceneResult {
        density_index: s.density_index,
        scene: s.scene,
        strategy,
        items: total,
        placed,
        oob: layout.items.len() < total || oob_flag_with(&layout, &cfg.metrics).flagged,
        ori: orientation_correctness_with(&layout, &s.constraints, &cfg.metrics),
        coherence: coherence_score(&layout, &s.constraints),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub strategy: BenchStrategy,
    /// `None` for the aggregate over every density.
    pub density: Option<f64>,
    pub scenes: usize,
    pub items: usize,
    pub oob_rate: f64,
    pub ori: f64,
    pub completeness: f64,
    pub coherence: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub scenes: Vec<SceneResult>,
}

impl BenchReport {
    pub fn aggregate(&self, strategy: BenchStrategy) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.strategy == strategy && r.density.is_none())
    }
}

fn summarize(strategy: BenchStrategy, density: Option<f64>, results: &[&SceneResult]) -> BenchRow {
    let n = results.len().max(1) as f64;
    let items: usize = results.iter().map(|r| r.items).sum();
    let placed: usize = results.iter().map(|r| r.placed).sum();
    BenchRow {
        strategy,
        density,
        scenes: results.len(),
        items,
        oob_rate: 100.0 * results.iter().filter(|r| r.oob).count() as f64 / n,
        ori: results.iter().map(|r| r.ori).sum::<f64>() / n,
        completeness: if items == 0 { 100.0 } else { 100.0 * placed as f64 / items as f64 },
        coherence: results.iter().map(|r| r.coherence).sum::<f64>() / n,
    }
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    cfg.check()?;
    let jobs: Vec<(usize, usize)> = (0..cfg.densities.len()).flat_map(|d| (0..cfg.scenes).map(move |i| (d, i))).collect();
    let scenes: Vec<BenchScene> = jobs
        .par_iter()
        .map(|&(d, i)| bench_scene(cfg, d, i))
        .collect::<Result<_, _>>()?;
    let mut results: Vec<SceneResult> = scenes
        .par_iter()
        .flat_map_iter(|s| cfg.strategies.iter().map(move |&st| solve_scene(cfg, s, st)))
        .collect();
    results.sort_by_key(|r| (r.strategy, r.density_index, r.scene));

    let mut strategies = cfg.strategies.clone();
    strategies.sort();
    strategies.dedup();
    let mut rows = Vec::new();
    for &st in &strategies {
        for (d, &density) in cfg.densities.iter().enumerate() {
            let subset: Vec<&SceneResult> = results.iter().filter(|r| r.strategy == st && r.density_index == d).collect();
            rows.push(summarize(st, Some(density), &subset));
        }
    }
    for &st in &strategies {
        let subset: Vec<&SceneResult> = results.iter().filter(|r| r.strategy == st).collect();
        rows.push(summarize(st, None, &subset));
    }
    Ok(BenchReport { rows, scenes: results })
}

pub const BENCH_HEADER: &str = "strategy,density,scenes,items,oob_rate,ori,completeness,coherence";

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from(BENCH_HEADER);
    s.push('\n');
    for r in rows {
        let density = r.density.map_or_else(|| "all".to_owned(), |d| format!("{d}"));
        let _ = writeln!(
            s,
            "{},{density},{},{},{:.4},{:.4},{:.4},{:.6}",
            r.strategy.as_str(),
            r.scenes,
            r.items,
            r.oob_rate,
            r.ori,
            r.completeness,
            r.coherence
        );
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub ratio: f64,
    pub alpha: f64,
    pub beta: f64,
    pub coherence: f64,
    pub oob_rate: f64,
    pub ori: f64,
}

/// Runs the CAPS bench once per α/β ratio.
pub fn run_sweep(ratios: &[f64], base: &BenchConfig) -> Result<Vec<SweepRow>, BenchError> {
    if let Some(&r) = ratios.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(BenchError::BadRatio(r));
    }
    let mut out = Vec::with_capacity(ratios.len());
    for &ratio in ratios {
        let mut cfg = base.clone();
        cfg.caps = cfg.caps.with_ratio(ratio);
        cfg.strategies = vec![BenchStrategy::Caps];
        let report = run_bench(&cfg)?;
        let agg = report.aggregate(BenchStrategy::Caps).expect("caps row present");
        out.push(SweepRow {
            ratio,
            alpha: cfg.caps.alpha0,
            beta: cfg.caps.beta0,
            coherence: agg.coherence,
            oob_rate: agg.oob_rate,
            ori: agg.ori,
        });
    }
    Ok(out)
}

pub const SWEEP_HEADER: &str = "ratio,alpha,beta,coherence,oob_rate,ori";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{},{:.6},{:.6},{:.6},{:.4},{:.4}", r.ratio, r.alpha, r.beta, r.coherence, r.oob_rate, r.ori);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_respects_caps() {
        let cfg = BenchConfig::default();
        for d in 0..3 {
            for i in 0..30 {
                let s = bench_scene(&cfg, d, i).unwrap();
                let expanded = s.organization.expand();
                assert!(expanded.items.len() <= MAX_ITEMS as usize);
                let area = s.room.width * s.room.depth;
                let density = floor_area(&s.organization) / area;
                assert!(density <= cfg.densities[d] + 0.02, "density {density} for {d}/{i}");
                let aspect = s.room.width.max(s.room.depth) / s.room.width.min(s.room.depth);
                assert!(aspect <= MAX_ASPECT + 0.02, "aspect {aspect}");
            }
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let cfg = BenchConfig::default();
        let a = bench_scene(&cfg, 1, 7).unwrap();
        let b = bench_scene(&cfg, 1, 7).unwrap();
        assert_eq!(a.organization, b.organization);
    }

    #[test]
    fn trivial_density_is_complete() {
        let cfg = BenchConfig {
            scenes: 1,
            densities: vec![0.05],
            ..BenchConfig::default()
        };
        let report = run_bench(&cfg).unwrap();
        assert_eq!(report.rows.len(), 6);
        for st in BenchStrategy::ALL {
            assert_eq!(report.aggregate(st).unwrap().completeness, 100.0);
        }
    }

    #[test]
    fn csv_shape() {
        let cfg = BenchConfig {
            scenes: 2,
            ..BenchConfig::default()
        };
        let csv = bench_csv(&run_bench(&cfg).unwrap().rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], BENCH_HEADER);
        assert_eq!(lines.len(), 1 + 3 * 3 + 3);
        assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 8));
    }

    #[test]
    fn ratio_one_is_even() {
        let cfg = CapsConfig::default().with_ratio(1.0);
        assert_eq!((cfg.alpha0, cfg.beta0), (0.5, 0.5));
    }
}
