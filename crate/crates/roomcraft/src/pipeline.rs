//! End-to-end generation: organization → graph → order → room → placement →
//! constraints → correction.

use roomcraft_core::actions::{optimize_layout_with, ActionError, CorrectionTrace};
use roomcraft_core::constraints::{compile_constraints_with, detect_violations, ConstraintError, ConstraintTuple, ViolationReport};
use roomcraft_core::graph::{build_graph, hdfs_order, GraphError, PlacementOrder};
use roomcraft_core::placement::{place_sequence, Layout, PlacementError, PlacementTrace};
use roomcraft_core::scene::{SceneError, SceneOrganization};
use thiserror::Error;

use crate::config::RunConfig;
use crate::spec::SpecError;

/// Process exit codes, stable across releases.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const SPEC: i32 = 2;
    pub const UNPLACEABLE: i32 = 3;
    pub const ESSENTIAL_RESIDUAL: i32 = 4;
    pub const EXTRACTION: i32 = 5;
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Room(#[from] SceneError),
    #[error(transparent)]
    Placement(#[from] PlacementError),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error(transparent)]
    Action(ActionError),
}

impl PipelineError {
    pub fn code(&self) -> &'static str {
        match self {
            PipelineError::Spec(SpecError::MalformedDocument(_)) => "MalformedDocument",
            PipelineError::Spec(SpecError::SchemaViolation(_)) => "SchemaViolation",
            PipelineError::Spec(SpecError::DanglingReference(_)) => "DanglingReference",
            PipelineError::Spec(SpecError::Invalid(_)) => "InvalidScene",
            PipelineError::Graph(GraphError::CyclicSupport(_)) => "CyclicSupport",
            PipelineError::Graph(_) => "InvalidGraph",
            PipelineError::Room(_) => "InvalidRoom",
            PipelineError::Placement(PlacementError::ItemUnplaceable { .. }) => "ItemUnplaceable",
            PipelineError::Placement(PlacementError::NoCandidateSurface(_)) => "NoCandidateSurface",
            PipelineError::Placement(PlacementError::InvalidConfig(_)) => "InvalidConfig",
            PipelineError::Placement(PlacementError::UnknownItem(_)) => "UnknownItem",
            PipelineError::Constraint(_) => "ConstraintError",
            PipelineError::Action(_) => "ActionError",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Spec(_) | PipelineError::Graph(_) | PipelineError::Room(_) | PipelineError::Constraint(_) => exit::SPEC,
            PipelineError::Placement(PlacementError::InvalidConfig(_)) => exit::USAGE,
            PipelineError::Placement(_) => exit::UNPLACEABLE,
            PipelineError::Action(_) => exit::USAGE,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub order: PlacementOrder,
    /// Layout straight out of placement, before correction.
    pub placed: Layout,
    pub layout: Layout,
    pub placement_trace: PlacementTrace,
    pub constraints: Vec<ConstraintTuple>,
    pub correction: CorrectionTrace,
    pub residual: Vec<ViolationReport>,
}

impl Generated {
    pub fn has_essential_residual(&self) -> bool {
        self.residual.iter().any(|v| v.constraint.essential)
    }
}

/// Runs the correction loop, turning an exhausted budget into a residual list
/// rather than an error.
pub fn correct(layout: &Layout, constraints: &[ConstraintTuple], cfg: &RunConfig) -> Result<(Layout, CorrectionTrace, Vec<ViolationReport>), ActionError> {
    match optimize_layout_with(layout, constraints, cfg.budget, &cfg.caps) {
        Ok((fixed, trace)) => {
            let residual = detect_violations(&fixed, constraints);
            Ok((fixed, trace, residual))
        }
        Err(ActionError::BudgetExhausted { layout, trace, .. }) => {
            let remaining = detect_violations(&layout, constraints);
            Ok((*layout, trace, remaining))
        }
        Err(e) => Err(e),
    }
}

pub fn generate(org: &SceneOrganization, cfg: &RunConfig) -> Result<Generated, PipelineError> {
    crate::spec::check_organization(org)?;
    let graph = build_graph(org)?;
    let order = hdfs_order(&graph)?;
    let room = org.build_room()?;
    let (placed, placement_trace) = place_sequence(&order, org, &room, &cfg.caps)?;
    let constraints = compile_constraints_with(org, &cfg.constraints)?;
    let (layout, correction, residual) = correct(&placed, &constraints, cfg).map_err(PipelineError::Action)?;
    Ok(Generated {
        order,
        placed,
        layout,
        placement_trace,
        constraints,
        correction,
        residual,
    })
}
