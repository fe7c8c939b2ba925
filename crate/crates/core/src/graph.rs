//! Spatial relationship graph and heuristic placement ordering.
//!
//! Each furniture item's heuristic cost is the summed weight of the relation
//! edges touching it. Items are placed most-constrained first, with a
//! depth-first repair pass that pulls every support ahead of what rests on it.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::scene::{ArchElement, RelationKind, SceneOrganization};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("on_top_of relations form a cycle through `{0}`")]
    CyclicSupport(String),
    #[error("`{0}` rests on more than one support")]
    MultipleSupports(String),
    #[error("unknown item `{0}`")]
    UnknownItem(String),
    #[error("relation weight on `{0}` must be finite and non-negative")]
    InvalidWeight(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Furniture,
    /// Walls, floor, and ceiling: zero-cost anchors never placed.
    Architectural,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphNode {
    pub id: String,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintEdge {
    pub subject: usize,
    pub object: usize,
    pub relation: RelationKind,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpatialGraph {
    nodes: Vec<GraphNode>,
    edges: Vec<ConstraintEdge>,
    index: BTreeMap<String, usize>,
    /// Support parent of each node, from `on_top_of` edges.
    support: Vec<Option<usize>>,
}

impl SpatialGraph {
    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[ConstraintEdge] {
        &self.edges
    }

    pub fn furniture_ids(&self) -> impl Iterator<Item = &str> {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Furniture)
            .map(|n| n.id.as_str())
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn support_of(&self, id: &str) -> Option<&str> {
        let i = self.node_index(id)?;
        self.support[i].map(|p| self.nodes[p].id.as_str())
    }

    /// Assembles a graph from explicit parts. Edges are `(subject, object,
    /// relation, weight)` by id; ids that are not furniture must be reserved
    /// architectural ids.
    pub fn from_parts<'a>(
        furniture: impl IntoIterator<Item = &'a str>,
        edges: impl IntoIterator<Item = (&'a str, &'a str, RelationKind, f64)>,
    ) -> Result<Self, GraphError> {
        let mut graph = SpatialGraph {
            nodes: Vec::new(),
            edges: Vec::new(),
            index: BTreeMap::new(),
            support: Vec::new(),
        };
        for id in furniture {
            graph.add_node(id, NodeKind::Furniture);
        }
        for (s, o, relation, weight) in edges {
            if !(weight.is_finite() && weight >= 0.0) {
                return Err(GraphError::InvalidWeight(s.to_owned()));
            }
            let subject = graph.resolve(s)?;
            let object = graph.resolve(o)?;
            if subject == object {
                continue;
            }
            if relation == RelationKind::OnTopOf {
                if graph.support[subject].is_some_and(|p| p != object) {
                    return Err(GraphError::MultipleSupports(s.to_owned()));
                }
                graph.support[subject] = Some(object);
            }
            graph.edges.push(ConstraintEdge { subject, object, relation, weight });
        }
        graph.check_forest()?;
        Ok(graph)
    }

    fn add_node(&mut self, id: &str, kind: NodeKind) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        self.nodes.push(GraphNode { id: id.to_owned(), kind });
        self.support.push(None);
        self.index.insert(id.to_owned(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn resolve(&mut self, id: &str) -> Result<usize, GraphError> {
        if let Some(&i) = self.index.get(id) {
            return Ok(i);
        }
        if ArchElement::is_reserved(id) {
            return Ok(self.add_node(id, NodeKind::Architectural));
        }
        Err(GraphError::UnknownItem(id.to_owned()))
    }

    fn check_forest(&self) -> Result<(), GraphError> {
        for start in 0..self.nodes.len() {
            let mut cur = start;
            let mut steps = 0;
            while let Some(parent) = self.support[cur] {
                steps += 1;
                if parent == start || steps > self.nodes.len() {
                    return Err(GraphError::CyclicSupport(self.nodes[start].id.clone()));
                }
                cur = parent;
            }
        }
        Ok(())
    }
}

/// Builds the relationship graph over count-expanded furniture. Edge weight
/// comes from a relation's `weight` parameter (default `1.0`).
pub fn build_graph(org: &SceneOrganization) -> Result<SpatialGraph, GraphError> {
    let expanded = org.expand();
    SpatialGraph::from_parts(
        expanded.items.iter().map(|i| i.id.as_str()),
        expanded
            .relations
            .iter()
            .map(|r| (r.subject.as_str(), r.object.as_str(), r.relation, r.param("weight").unwrap_or(1.0))),
    )
}

/// Summed weight of the edges incident to `id`. Architectural anchors cost
/// nothing.
pub fn heuristic_cost(id: &str, graph: &SpatialGraph) -> Result<f64, GraphError> {
    let i = graph
        .node_index(id)
        .ok_or_else(|| GraphError::UnknownItem(id.to_owned()))?;
    if graph.nodes[i].kind == NodeKind::Architectural {
        return Ok(0.0);
    }
    Ok(graph
        .edges
        .iter()
        .filter(|e| e.subject != e.object && (e.subject == i || e.object == i))
        .map(|e| e.weight)
        .sum())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementOrder {
    pub items: Vec<String>,
    /// Heuristic cost of each entry in `items`.
    pub costs: Vec<f64>,
}

/// Descending-cost order with lexicographic tie-break, then a depth-first
/// pass that emits each item's support chain before the item itself.
///
/// Costs within `1e-9` of the largest cost (relative) are treated as ties so
/// that uniformly rescaled weights give the same order.
pub fn hdfs_order(graph: &SpatialGraph) -> Result<PlacementOrder, GraphError> {
    graph.check_forest()?;
    let furniture: Vec<usize> = (0..graph.nodes.len())
        .filter(|&i| graph.nodes[i].kind == NodeKind::Furniture)
        .collect();
    let mut costs = Vec::with_capacity(graph.nodes.len());
    for node in &graph.nodes {
        costs.push(heuristic_cost(&node.id, graph)?);
    }
    let scale = furniture.iter().map(|&i| costs[i]).fold(0.0_f64, f64::max);
    let key = |i: usize| -> i64 {
        if scale > 0.0 {
            libm::round(costs[i] / scale * 1e9) as i64
        } else {
            0
        }
    };
    let mut sorted = furniture.clone();
    sorted.sort_by(|&a, &b| key(b).cmp(&key(a)).then_with(|| graph.nodes[a].id.cmp(&graph.nodes[b].id)));

    let mut state = alloc::vec![Visit::New; graph.nodes.len()];
    let mut out = Vec::with_capacity(sorted.len());
    for &i in &sorted {
        visit(graph, i, &mut state, &mut out)?;
    }
    Ok(PlacementOrder {
        costs: out.iter().map(|&i| costs[i]).collect(),
        items: out.into_iter().map(|i| graph.nodes[i].id.clone()).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Visit {
    New,
    Active,
    Done,
}

fn visit(graph: &SpatialGraph, i: usize, state: &mut [Visit], out: &mut Vec<usize>) -> Result<(), GraphError> {
    match state[i] {
        Visit::Done => return Ok(()),
        Visit::Active => return Err(GraphError::CyclicSupport(graph.nodes[i].id.clone())),
        Visit::New => {}
    }
    state[i] = Visit::Active;
    if let Some(parent) = graph.support[i] {
        if graph.nodes[parent].kind == NodeKind::Furniture {
            visit(graph, parent, state, out)?;
        }
    }
    state[i] = Visit::Done;
    out.push(i);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{FurnitureItem, Mount, RelationEdge, RoomType};

    fn org(items: &[(&str, Mount)], rels: &[(&str, RelationKind, &str, f64)]) -> SceneOrganization {
        let mut org = SceneOrganization::new(RoomType::LivingRoom);
        for &(id, mount) in items {
            org.furniture.push(FurnitureItem::new(id, id, 0.5, 0.5, 0.5).with_mount(mount));
        }
        for &(s, k, o, w) in rels {
            org.relations.push(RelationEdge::new(s, k, o).with_param("weight", w));
        }
        org
    }

    #[test]
    fn three_items_two_edges() {
        let o = org(
            &[("a", Mount::Floor), ("b", Mount::Floor), ("c", Mount::Floor)],
            &[("a", RelationKind::Near, "b", 1.0), ("b", RelationKind::Near, "c", 1.0)],
        );
        let g = build_graph(&o).unwrap();
        assert_eq!(g.furniture_ids().count(), 3);
        assert_eq!(g.edges().len(), 2);
    }

    #[test]
    fn wall_edge_creates_anchor() {
        let o = org(&[("sofa", Mount::Floor)], &[("sofa", RelationKind::AgainstWall, "wall:north", 1.0)]);
        let g = build_graph(&o).unwrap();
        let wall = g.node_index("wall:north").unwrap();
        assert_eq!(g.nodes()[wall].kind, NodeKind::Architectural);
        assert_eq!(g.edges()[0].object, wall);
        assert_eq!(heuristic_cost("sofa", &g).unwrap(), 1.0);
        assert_eq!(heuristic_cost("wall:north", &g).unwrap(), 0.0);
        assert_eq!(hdfs_order(&g).unwrap().items, ["sofa"]);
    }

    #[test]
    fn support_cycle_rejected() {
        let o = org(
            &[("cup", Mount::OnTop), ("table", Mount::OnTop)],
            &[("cup", RelationKind::OnTopOf, "table", 1.0), ("table", RelationKind::OnTopOf, "cup", 1.0)],
        );
        assert!(matches!(build_graph(&o), Err(GraphError::CyclicSupport(_))));
    }

    #[test]
    fn costs() {
        let o = org(
            &[("table", Mount::Floor), ("chair", Mount::Floor), ("cup", Mount::OnTop), ("lamp", Mount::Floor)],
            &[("chair", RelationKind::Near, "table", 1.0), ("cup", RelationKind::OnTopOf, "table", 2.0)],
        );
        let g = build_graph(&o).unwrap();
        assert_eq!(heuristic_cost("lamp", &g).unwrap(), 0.0);
        assert_eq!(heuristic_cost("table", &g).unwrap(), 3.0);
        assert!(matches!(heuristic_cost("sink", &g), Err(GraphError::UnknownItem(_))));
    }

    #[test]
    fn table_before_cup() {
        let o = org(
            &[("table", Mount::Floor), ("cup", Mount::OnTop), ("chair", Mount::Floor)],
            &[("cup", RelationKind::OnTopOf, "table", 1.0), ("chair", RelationKind::Near, "table", 2.0)],
        );
        let order = hdfs_order(&build_graph(&o).unwrap()).unwrap();
        assert_eq!(order.items, ["table", "chair", "cup"]);
        assert_eq!(order.costs, [3.0, 2.0, 1.0]);
    }

    #[test]
    fn unconstrained_items_sort_by_id() {
        let o = org(&[("c", Mount::Floor), ("a", Mount::Floor), ("b", Mount::Floor)], &[]);
        assert_eq!(hdfs_order(&build_graph(&o).unwrap()).unwrap().items, ["a", "b", "c"]);
    }

    #[test]
    fn support_repair_overrides_cost() {
        // cup is heavily constrained but still follows its support.
        let o = org(
            &[("table", Mount::Floor), ("cup", Mount::OnTop), ("x", Mount::Floor)],
            &[
                ("cup", RelationKind::OnTopOf, "table", 1.0),
                ("cup", RelationKind::Near, "x", 4.0),
            ],
        );
        let g = build_graph(&o).unwrap();
        assert_eq!(heuristic_cost("cup", &g).unwrap(), 5.0);
        assert_eq!(heuristic_cost("table", &g).unwrap(), 1.0);
        assert_eq!(hdfs_order(&g).unwrap().items, ["table", "cup", "x"]);
    }
}
