use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use proptest::prelude::*;
use roomcraft_core::constraints::{
    compile_constraints, detect_violations, evaluate_constraint, Comparator, ConstraintKind, ConstraintTuple,
};
use roomcraft_core::geometry::Vec2;
use roomcraft_core::graph::{hdfs_order, heuristic_cost, SpatialGraph};
use roomcraft_core::placement::{
    adjust_weights, detect_collisions, generate_candidates, place_sequence, score_candidate, CapsConfig, Conflict, Layout,
    PlacedItem, PlacementSpec,
};
use roomcraft_core::scene::{build_room, FurnitureItem, Mount, RelationEdge, RelationKind, RoomType, SceneOrganization, Wall};
use roomcraft_core::{build_graph, optimize_layout};

/// Axis-aligned half extents of a footprint whose yaw is a quarter turn.
fn quarter_extents(it: &PlacedItem) -> (f64, f64) {
    let quarter = (it.yaw / FRAC_PI_2).round() as i64;
    assert!((it.yaw - quarter as f64 * FRAC_PI_2).abs() < 1e-9, "yaw {} is not a quarter turn", it.yaw);
    if quarter % 2 == 0 {
        (it.width / 2.0, it.depth / 2.0)
    } else {
        (it.depth / 2.0, it.width / 2.0)
    }
}

fn interval_overlap(a0: f64, a1: f64, b0: f64, b1: f64) -> f64 {
    (a1.min(b1) - a0.max(b0)).max(0.0)
}

/// Intersection area of two quarter-turn footprints from interval overlaps.
fn box_overlap(a: &PlacedItem, b: &PlacedItem) -> f64 {
    let (ax, ay) = quarter_extents(a);
    let (bx, by) = quarter_extents(b);
    let ox = interval_overlap(a.position.x - ax, a.position.x + ax, b.position.x - bx, b.position.x + bx);
    let oy = interval_overlap(a.position.y - ay, a.position.y + ay, b.position.y - by, b.position.y + by);
    let oz = interval_overlap(a.z, a.z + a.height, b.z, b.z + b.height);
    if oz > 1e-9 {
        ox * oy
    } else {
        0.0
    }
}

fn placed(id: &str, x: f64, y: f64, w: f64, d: f64, quarter: u8, z: f64) -> PlacedItem {
    PlacedItem {
        id: id.into(),
        category: "box".into(),
        position: Vec2::new(x, y),
        z,
        yaw: f64::from(quarter) * FRAC_PI_2,
        width: w,
        depth: d,
        height: 0.8,
        color: None,
        material: None,
        mount: Mount::Floor,
        support: None,
    }
}

type Edge = (String, String, RelationKind, f64);

/// Furniture ids plus an edge list; supports only point at earlier items so
/// every generated graph is a forest.
fn graph_parts() -> impl Strategy<Value = (Vec<String>, Vec<Edge>)> {
    (1usize..=10).prop_flat_map(|n| {
        let edge = (0..n, 0..n + 4, 0usize..6, 0.1f64..5.0);
        (Just(n), prop::collection::vec(edge, 0..25), prop::collection::vec(any::<bool>(), n))
    })
    .prop_map(|(n, raw, stacked)| {
        let ids: Vec<String> = (0..n).map(|i| format!("item{}", (i * 7 + 3) % 11)).collect();
        let walls = ["wall:north", "wall:south", "wall:east", "wall:west"];
        let kinds = [
            RelationKind::Near,
            RelationKind::FaceToFace,
            RelationKind::LeftOf,
            RelationKind::DistanceRange,
            RelationKind::SideBySide,
            RelationKind::FarFrom,
        ];
        let mut edges = Vec::new();
        for (s, o, k, w) in raw {
            if o >= n {
                edges.push((ids[s].clone(), walls[o - n].to_string(), RelationKind::AgainstWall, w));
            } else if s != o {
                edges.push((ids[s].clone(), ids[o].clone(), kinds[k], w));
            }
        }
        for (i, &on_top) in stacked.iter().enumerate().skip(1) {
            if on_top {
                edges.push((ids[i].clone(), ids[i / 2].clone(), RelationKind::OnTopOf, 1.5));
            }
        }
        (ids, edges)
    })
}

fn graph_from(ids: &[String], edges: &[Edge], scale: f64) -> SpatialGraph {
    SpatialGraph::from_parts(
        ids.iter().map(String::as_str),
        edges.iter().map(|(s, o, k, w)| (s.as_str(), o.as_str(), *k, w * scale)),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn weights_stay_on_the_simplex(
        start in 0.0f64..=1.0,
        steps in prop::collection::vec((any::<bool>(), 0.1f64..5.0, 0.01f64..0.5), 1..40),
    ) {
        let mut alpha = start;
        for (wall, k, delta) in steps {
            let conflict = if wall { Conflict::WallCollision } else { Conflict::FurnitureCollision };
            let (a, b) = adjust_weights(alpha, conflict, k, delta);
            prop_assert!((0.0..=1.0).contains(&a));
            prop_assert!((a + b - 1.0).abs() <= 1e-12);
            alpha = a;
        }
    }

    #[test]
    fn hdfs_is_a_support_respecting_permutation((ids, edges) in graph_parts()) {
        let graph = graph_from(&ids, &edges, 1.0);
        let order = hdfs_order(&graph).unwrap();
        let mut sorted = order.items.clone();
        sorted.sort();
        let mut expected = ids.clone();
        expected.sort();
        prop_assert_eq!(sorted, expected);
        let pos: BTreeMap<&str, usize> = order.items.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        for (s, o, k, _) in &edges {
            if *k == RelationKind::OnTopOf {
                prop_assert!(pos[o.as_str()] < pos[s.as_str()], "{} must precede {}", o, s);
            }
        }
    }

    #[test]
    fn hdfs_ignores_uniform_scaling((ids, edges) in graph_parts(), scale in 0.01f64..100.0) {
        let base = hdfs_order(&graph_from(&ids, &edges, 1.0)).unwrap();
        let scaled = hdfs_order(&graph_from(&ids, &edges, scale)).unwrap();
        prop_assert_eq!(base.items, scaled.items);
    }

    #[test]
    fn heuristic_cost_is_incident_edge_sum((ids, edges) in graph_parts()) {
        let graph = graph_from(&ids, &edges, 1.0);
        for id in &ids {
            let oracle: f64 = edges.iter().filter(|(s, o, _, _)| s == id || o == id).map(|e| e.3).sum();
            let got = heuristic_cost(id, &graph).unwrap();
            prop_assert!((got - oracle).abs() <= 1e-9 * oracle.max(1.0), "{id}: {got} vs {oracle}");
        }
    }
}

fn single_item_org(w: f64, d: f64, anchor: Option<Wall>) -> SceneOrganization {
    let mut org = SceneOrganization::new(RoomType::Bedroom);
    org.furniture.push(FurnitureItem::new("x", "box", w, d, 0.8));
    if let Some(wall) = anchor {
        org.relations.push(RelationEdge::new("x", RelationKind::AgainstWall, wall.id()));
    }
    org
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chosen_pose_is_exhaustive_argmax(
        rw in 2.0f64..7.0,
        rd in 2.0f64..7.0,
        w in 0.3f64..2.0,
        d in 0.3f64..2.0,
        anchor in prop::option::of(prop::sample::select(Wall::ALL.to_vec())),
    ) {
        prop_assume!(w.max(d) < rw.min(rd));
        let org = single_item_org(w, d, anchor);
        let room = build_room(RoomType::Bedroom, Some((rw, rd))).unwrap();
        let cfg = CapsConfig::default();
        let order = hdfs_order(&build_graph(&org).unwrap()).unwrap();
        let (layout, _) = place_sequence(&order, &org, &room, &cfg).unwrap();
        let chosen = &layout.items[0];

        let spec = PlacementSpec::from_relations(org.furniture[0].clone(), &org.relations);
        let empty = Layout::new(room.clone());
        let mut best: Option<(f64, Vec2, f64)> = None;
        for c in generate_candidates(&spec, &room, &empty, cfg.grid_step).unwrap() {
            let s = score_candidate(c.position, c.yaw, &spec, &room, &empty, cfg.alpha0, cfg.beta0, cfg.mu, cfg.overlap_tolerance);
            if s > f64::NEG_INFINITY && best.is_none_or(|b| s > b.0) {
                best = Some((s, c.position, c.yaw));
            }
        }
        let (_, p, yaw) = best.unwrap();
        prop_assert_eq!(chosen.position, p);
        prop_assert_eq!(chosen.yaw, yaw);
    }

    #[test]
    fn placed_scenes_are_collision_free(
        dims in prop::collection::vec((0.3f64..1.6, 0.3f64..1.2), 1..7),
        walls in prop::collection::vec(prop::option::of(prop::sample::select(Wall::ALL.to_vec())), 7),
    ) {
        let mut org = SceneOrganization::new(RoomType::LivingRoom);
        for (i, (w, d)) in dims.iter().enumerate() {
            org.furniture.push(FurnitureItem::new(&format!("f{i}"), "box", *w, *d, 0.8));
            if let Some(wall) = walls[i] {
                org.relations.push(RelationEdge::new(&format!("f{i}"), RelationKind::AgainstWall, wall.id()));
            }
        }
        let room = build_room(RoomType::LivingRoom, Some((6.0, 5.0))).unwrap();
        let order = hdfs_order(&build_graph(&org).unwrap()).unwrap();
        let (layout, _) = place_sequence(&order, &org, &room, &CapsConfig::default()).unwrap();
        prop_assert!(detect_collisions(&layout, 1e-4).is_empty());
        for (i, a) in layout.items.iter().enumerate() {
            let (hx, hy) = quarter_extents(a);
            prop_assert!(a.position.x - hx >= -1e-9 && a.position.x + hx <= room.width + 1e-9);
            prop_assert!(a.position.y - hy >= -1e-9 && a.position.y + hy <= room.depth + 1e-9);
            for b in &layout.items[i + 1..] {
                prop_assert!(box_overlap(a, b) <= 1e-4);
            }
        }
        let (again, _) = place_sequence(&order, &org, &room, &CapsConfig::default()).unwrap();
        prop_assert_eq!(layout, again);
    }
}

proptest! {
    #[test]
    fn overlap_magnitude_matches_interval_oracle(
        boxes in prop::collection::vec((0.5f64..5.5, 0.5f64..5.5, 0.2f64..1.5, 0.2f64..1.5, 0u8..4, prop::bool::weighted(0.2)), 1..=6),
    ) {
        let mut layout = Layout::new(build_room(RoomType::LivingRoom, Some((6.0, 6.0))).unwrap());
        for (i, &(x, y, w, d, q, raised)) in boxes.iter().enumerate() {
            layout.items.push(placed(&format!("b{i}"), x, y, w, d, q, if raised { 0.8 } else { 0.0 }));
        }
        let c = ConstraintTuple::new(ConstraintKind::OverlapFree, &[], Comparator::Predicate);
        let got = evaluate_constraint(&c, &layout).unwrap().magnitude;
        let mut oracle = 0.0;
        for i in 0..layout.items.len() {
            for j in i + 1..layout.items.len() {
                oracle += box_overlap(&layout.items[i], &layout.items[j]);
            }
        }
        let oracle = if oracle < 1e-9 { 0.0 } else { oracle };
        prop_assert!((got - oracle).abs() <= 1e-9, "{got} vs {oracle}");
    }

    #[test]
    fn distance_magnitude_matches_oracle(
        ax in 0.0f64..10.0, ay in 0.0f64..10.0, bx in 0.0f64..10.0, by in 0.0f64..10.0,
        lo in 0.0f64..5.0, span in 0.0f64..5.0,
    ) {
        let mut layout = Layout::new(build_room(RoomType::LivingRoom, Some((10.0, 10.0))).unwrap());
        layout.items.push(placed("a", ax, ay, 0.1, 0.1, 0, 0.0));
        layout.items.push(placed("b", bx, by, 0.1, 0.1, 0, 0.0));
        let c = ConstraintTuple::new(ConstraintKind::Distance, &["a", "b"], Comparator::Range)
            .num("min", lo)
            .num("max", lo + span)
            .text("measure", "center");
        let d = ((ax - bx).powi(2) + (ay - by).powi(2)).sqrt();
        let oracle = if d < lo { lo - d } else if d > lo + span { d - lo - span } else { 0.0 };
        let got = evaluate_constraint(&c, &layout).unwrap().magnitude;
        prop_assert!((got - oracle).abs() <= 1e-9);
        prop_assert_eq!(got == 0.0, (lo - 1e-9..=lo + span + 1e-9).contains(&d) || oracle < 1e-9);
    }

    #[test]
    fn violations_are_stable_and_ordered(
        boxes in prop::collection::vec((0.5f64..5.5, 0.5f64..5.5, 0u8..4), 2..=6),
        weights in prop::collection::vec(0.5f64..3.0, 6),
    ) {
        let mut layout = Layout::new(build_room(RoomType::LivingRoom, Some((6.0, 6.0))).unwrap());
        for (i, &(x, y, q)) in boxes.iter().enumerate() {
            layout.items.push(placed(&format!("b{i}"), x, y, 0.8, 0.6, q, 0.0));
        }
        let mut cs = vec![ConstraintTuple::new(ConstraintKind::OverlapFree, &[], Comparator::Predicate)];
        for (i, &w) in weights.iter().enumerate().take(boxes.len()).skip(1) {
            let mut c = ConstraintTuple::new(ConstraintKind::Distance, &["b0", &format!("b{i}")], Comparator::Range)
                .num("min", 1.0)
                .num("max", 2.0)
                .text("measure", "center");
            c.weight = w;
            cs.push(c);
        }
        let first = detect_violations(&layout, &cs);
        prop_assert_eq!(&first, &detect_violations(&layout, &cs));
        for pair in first.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let key = |r: &roomcraft_core::constraints::ViolationReport| (!r.constraint.essential, -r.constraint.weight, -r.magnitude, r.index);
            prop_assert!(key(a).partial_cmp(&key(b)) != Some(std::cmp::Ordering::Greater));
        }
        prop_assert!(first.iter().all(|r| r.magnitude > 0.0));
    }

    #[test]
    fn correction_never_increases_total(
        boxes in prop::collection::vec((0.8f64..5.2, 0.8f64..5.2), 2..=5),
    ) {
        let mut layout = Layout::new(build_room(RoomType::LivingRoom, Some((6.0, 6.0))).unwrap());
        for (i, &(x, y)) in boxes.iter().enumerate() {
            layout.items.push(placed(&format!("b{i}"), x, y, 0.9, 0.7, 0, 0.0));
        }
        let cs = vec![
            ConstraintTuple::new(ConstraintKind::OverlapFree, &[], Comparator::Predicate),
            ConstraintTuple::new(ConstraintKind::Distance, &["b0", "b1"], Comparator::Range)
                .num("min", 1.5)
                .num("max", 2.5)
                .text("measure", "center"),
        ];
        let trace = match optimize_layout(&layout, &cs, 20) {
            Ok((_, t)) => t,
            Err(roomcraft_core::actions::ActionError::BudgetExhausted { trace, .. }) => trace,
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        prop_assert!(trace.is_monotone());
        for r in &trace.rounds {
            prop_assert!(r.total_after < r.total_before);
        }
    }
}

#[test]
fn compiled_scene_is_well_formed() {
    let mut org = SceneOrganization::new(RoomType::DiningRoom);
    org.furniture.push(FurnitureItem::from_catalog("table", "dining_table").unwrap());
    org.furniture.push(FurnitureItem::from_catalog("chair", "chair").unwrap().with_count(4));
    org.furniture.push(FurnitureItem::from_catalog("vase", "vase").unwrap());
    org.relations.push(RelationEdge::new("chair", RelationKind::Near, "table"));
    org.relations.push(RelationEdge::new("vase", RelationKind::OnTopOf, "table"));
    let cs = compile_constraints(&org).unwrap();
    for c in &cs {
        c.check().unwrap();
    }
    assert_eq!(cs.iter().filter(|c| c.ctype == ConstraintKind::Distance).count(), 4);
    let count = cs.iter().find(|c| c.ctype == ConstraintKind::Count).unwrap();
    assert_eq!((count.objects[0].as_str(), count.get_num("n")), ("chair", Some(4.0)));
    assert_eq!(cs.last().unwrap().ctype, ConstraintKind::OverlapFree);
}
