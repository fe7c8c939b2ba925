//! Constraint-driven indoor layout engine.
//!
//! The crate turns a [`scene::SceneOrganization`] (room type, furniture, and
//! spatial relations) into a collision-free [`placement::Layout`]:
//!
//! 1. [`graph::build_graph`] and [`graph::hdfs_order`] rank furniture by how
//!    constrained it is and fix a placement order in which supports come
//!    before the items resting on them.
//! 2. [`placement::place_sequence`] adds items one at a time, choosing the
//!    best-scoring feasible pose and adapting its wall/neighbour weights on
//!    conflicts.
//! 3. [`constraints`] compiles the relations into weighted constraint tuples
//!    and measures violations; [`actions::optimize_layout`] repairs them with
//!    a monotone detect/plan/apply loop.
//! 4. [`metrics`] scores finished layouts.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI, and
//! model-backed extraction live in the `roomcraft` crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod actions;
pub mod catalog;
pub mod constraints;
pub mod geometry;
pub mod graph;
pub mod math;
pub mod metrics;
pub mod placement;
pub mod scene;

pub use actions::{apply_action, optimize_layout, plan_corrections, Action, ActionKind};
pub use constraints::{compile_constraints, detect_violations, evaluate_constraint, ConstraintTuple};
pub use graph::{build_graph, hdfs_order, heuristic_cost, PlacementOrder, SpatialGraph};
pub use placement::{place_sequence, CapsConfig, Layout, PlacedItem};
pub use scene::{build_room, validate_organization, FurnitureItem, RelationEdge, Room, SceneOrganization};
