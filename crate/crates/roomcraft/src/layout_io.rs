//! Layout files (`schema: "roomcraft-layout/1"`), placement traces, and
//! correction traces.

use std::collections::BTreeMap;

use roomcraft_core::actions::{Action, ActionKind, CorrectionTrace};
use roomcraft_core::constraints::{Comparator, ConstraintKind, ConstraintTuple, ParamValue, ViolationReport};
use roomcraft_core::geometry::Vec2;
use roomcraft_core::placement::{ItemTrace, Layout, PlacedItem, PlacementTrace, Provenance};
use roomcraft_core::scene::{Door, Mount, Room, RoomType, Window};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::spec::{DoorDoc, SpecError, WindowDoc};

pub const LAYOUT_SCHEMA: &str = "roomcraft-layout/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoomBlock {
    pub room_type: String,
    pub width: f64,
    pub depth: f64,
    pub wall_height: f64,
    pub doors: Vec<DoorDoc>,
    pub windows: Vec<WindowDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemBlock {
    pub id: String,
    pub category: String,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub yaw: f64,
    pub w: f64,
    pub d: f64,
    pub h: f64,
    pub color: Option<String>,
    pub material: Option<String>,
    pub mount: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemTraceBlock {
    pub id: String,
    pub attempts: u32,
    pub final_alpha: f64,
    pub final_beta: f64,
    pub grid_step: f64,
    pub conflicts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceBlock {
    pub seed: u64,
    /// Hex FNV-1a of the placement config.
    pub config_hash: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutDoc {
    pub schema: String,
    pub room: RoomBlock,
    pub items: Vec<ItemBlock>,
    pub provenance: ProvenanceBlock,
    #[serde(default)]
    pub trace: Vec<ItemTraceBlock>,
}

pub fn item_trace_block(i: &ItemTrace) -> ItemTraceBlock {
    ItemTraceBlock {
        id: i.id.clone(),
        attempts: i.attempts,
        final_alpha: i.final_alpha,
        final_beta: i.final_beta,
        grid_step: i.final_grid_step,
        conflicts: i.conflicts.iter().map(|c| c.as_str().into()).collect(),
    }
}

pub fn layout_doc(layout: &Layout, trace: Option<&PlacementTrace>) -> LayoutDoc {
    let room = &layout.room;
    LayoutDoc {
        schema: LAYOUT_SCHEMA.into(),
        room: RoomBlock {
            room_type: room.room_type.as_str().into(),
            width: room.width,
            depth: room.depth,
            wall_height: room.wall_height,
            doors: room
                .doors
                .iter()
                .map(|d| DoorDoc {
                    wall: d.wall.id().into(),
                    offset: d.offset,
                    width: d.width,
                })
                .collect(),
            windows: room
                .windows
                .iter()
                .map(|w| WindowDoc {
                    wall: w.wall.id().into(),
                    offset: w.offset,
                    width: w.width,
                    sill: w.sill,
                })
                .collect(),
        },
        items: layout
            .items
            .iter()
            .map(|it| ItemBlock {
                id: it.id.clone(),
                category: it.category.clone(),
                x: it.position.x,
                y: it.position.y,
                z: it.z,
                yaw: it.yaw,
                w: it.width,
                d: it.depth,
                h: it.height,
                color: it.color.clone(),
                material: it.material.clone(),
                mount: it.mount.as_str().into(),
                support: it.support.clone(),
            })
            .collect(),
        provenance: ProvenanceBlock {
            seed: layout.provenance.seed,
            config_hash: format!("{:016x}", layout.provenance.config_hash),
        },
        trace: trace.map(|t| t.items.iter().map(item_trace_block).collect()).unwrap_or_default(),
    }
}

pub fn serialize_layout(layout: &Layout, trace: Option<&PlacementTrace>) -> String {
    let mut s = serde_json::to_string_pretty(&layout_doc(layout, trace)).expect("layouts always serialize");
    s.push('\n');
    s
}

fn wall_of(name: &str) -> Result<roomcraft_core::scene::Wall, SpecError> {
    match roomcraft_core::scene::ArchElement::parse(name) {
        Some(roomcraft_core::scene::ArchElement::Wall(w)) => Ok(w),
        _ => name
            .parse()
            .map_err(|_| SpecError::SchemaViolation(format!("unknown wall `{name}`"))),
    }
}

pub fn parse_layout(text: &str) -> Result<Layout, SpecError> {
    let doc: LayoutDoc = serde_json::from_str(text).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => SpecError::SchemaViolation(e.to_string()),
        _ => SpecError::MalformedDocument(e.to_string()),
    })?;
    if doc.schema != LAYOUT_SCHEMA {
        return Err(SpecError::SchemaViolation(format!("unsupported layout schema `{}`", doc.schema)));
    }
    let r = &doc.room;
    let room_type: RoomType = r
        .room_type
        .parse()
        .map_err(|_| SpecError::SchemaViolation(format!("unknown room_type `{}`", r.room_type)))?;
    let room = Room {
        room_type,
        width: r.width,
        depth: r.depth,
        wall_height: r.wall_height,
        doors: r
            .doors
            .iter()
            .map(|d| {
                Ok(Door {
                    wall: wall_of(&d.wall)?,
                    offset: d.offset,
                    width: d.width,
                })
            })
            .collect::<Result<_, SpecError>>()?,
        windows: r
            .windows
            .iter()
            .map(|w| {
                Ok(Window {
                    wall: wall_of(&w.wall)?,
                    offset: w.offset,
                    width: w.width,
                    sill: w.sill,
                })
            })
            .collect::<Result<_, SpecError>>()?,
    };
    room.check().map_err(|e| SpecError::SchemaViolation(e.to_string()))?;
    let items = doc
        .items
        .iter()
        .map(|b| {
            Ok(PlacedItem {
                id: b.id.clone(),
                category: b.category.clone(),
                position: Vec2::new(b.x, b.y),
                z: b.z,
                yaw: b.yaw,
                width: b.w,
                depth: b.d,
                height: b.h,
                color: b.color.clone(),
                material: b.material.clone(),
                mount: b
                    .mount
                    .parse::<Mount>()
                    .map_err(|_| SpecError::SchemaViolation(format!("unknown mount `{}`", b.mount)))?,
                support: b.support.clone(),
            })
        })
        .collect::<Result<Vec<_>, SpecError>>()?;
    let config_hash = u64::from_str_radix(&doc.provenance.config_hash, 16)
        .map_err(|_| SpecError::SchemaViolation("provenance.config_hash must be hex".into()))?;
    Ok(Layout {
        room,
        items,
        provenance: Provenance {
            seed: doc.provenance.seed,
            config_hash,
        },
    })
}

pub fn constraint_json(c: &ConstraintTuple) -> Value {
    let params: BTreeMap<&str, Value> = c
        .params
        .iter()
        .map(|(k, v)| {
            let v = match v {
                ParamValue::Num(n) => json!(n),
                ParamValue::Text(t) => json!(t),
            };
            (k.as_str(), v)
        })
        .collect();
    json!({
        "ctype": c.ctype.as_str(),
        "objects": c.objects,
        "params": params,
        "relation": c.relation.as_str(),
        "weight": c.weight,
        "essential": c.essential,
    })
}

pub fn constraint_from_json(v: &Value) -> Result<ConstraintTuple, SpecError> {
    let bad = |what: &str| SpecError::SchemaViolation(format!("constraint: {what}"));
    let ctype = v["ctype"].as_str().and_then(ConstraintKind::parse).ok_or_else(|| bad("unknown ctype"))?;
    let relation = v["relation"].as_str().and_then(Comparator::parse).ok_or_else(|| bad("unknown relation"))?;
    let objects: Vec<&str> = v["objects"]
        .as_array()
        .ok_or_else(|| bad("objects must be a list"))?
        .iter()
        .map(|o| o.as_str().ok_or_else(|| bad("objects must be strings")))
        .collect::<Result<_, _>>()?;
    let mut c = ConstraintTuple::new(ctype, &objects, relation);
    if let Some(params) = v["params"].as_object() {
        for (k, p) in params {
            match p {
                Value::Number(n) => c = c.num(k, n.as_f64().unwrap_or(f64::NAN)),
                Value::String(s) => c = c.text(k, s),
                _ => return Err(bad("params must be numbers or strings")),
            }
        }
    }
    c.weight = v["weight"].as_f64().unwrap_or(1.0);
    if let Some(e) = v["essential"].as_bool() {
        c.essential = e;
    }
    c.check().map_err(|e| SpecError::SchemaViolation(e.to_string()))?;
    Ok(c)
}

pub fn action_json(a: &Action) -> Value {
    let params = match &a.kind {
        ActionKind::Translate { dx, dy, dz } => json!({"dx": dx, "dy": dy, "dz": dz}),
        ActionKind::Rotate { dyaw } => json!({"dyaw": dyaw}),
        ActionKind::Resize { sx, sy, sz } => json!({"sx": sx, "sy": sy, "sz": sz}),
        ActionKind::SetColor(c) => json!({"color": c}),
        ActionKind::SetMaterial(m) => json!({"material": m}),
        ActionKind::AddItem | ActionKind::RemoveItem | ActionKind::SwapPositions => json!({}),
    };
    json!({"kind": a.kind.as_str(), "targets": a.targets, "params": params, "priority": a.priority})
}

fn violation_json(v: &ViolationReport) -> Value {
    json!({
        "index": v.index,
        "ctype": v.constraint.ctype.as_str(),
        "objects": v.constraint.objects,
        "essential": v.constraint.essential,
        "weight": v.constraint.weight,
        "magnitude": v.magnitude,
        "category": v.category.as_str(),
        "detail": v.detail,
    })
}

pub fn violations_json(vs: &[ViolationReport]) -> Value {
    Value::Array(vs.iter().map(violation_json).collect())
}

pub fn correction_trace_json(trace: &CorrectionTrace, residual: &[ViolationReport]) -> Value {
    json!({
        "initial_total": trace.initial_total,
        "final_total": trace.final_total,
        "rounds": trace.rounds.iter().enumerate().map(|(i, r)| json!({
            "round": i + 1,
            "total_before": r.total_before,
            "total_after": r.total_after,
            "action": action_json(&r.action),
            "violations": violations_json(&r.violations),
        })).collect::<Vec<_>>(),
        "residual": violations_json(residual),
    })
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use roomcraft_core::scene::build_room;

    fn sample() -> Layout {
        let mut l = Layout::new(build_room(RoomType::Bedroom, None).unwrap());
        l.items.push(PlacedItem {
            id: "bed".into(),
            category: "bed".into(),
            position: Vec2::new(2.25, 3.2),
            z: 0.0,
            yaw: std::f64::consts::PI,
            width: 2.0,
            depth: 1.6,
            height: 0.5,
            color: Some("white".into()),
            material: None,
            mount: Mount::Floor,
            support: None,
        });
        l.provenance = Provenance { seed: 7, config_hash: 0xdead_beef };
        l
    }

    #[test]
    fn layout_round_trip() {
        let l = sample();
        let text = serialize_layout(&l, None);
        assert!(text.contains("\"schema\": \"roomcraft-layout/1\""));
        assert_eq!(parse_layout(&text).unwrap(), l);
    }

    #[test]
    fn constraint_round_trip() {
        let c = ConstraintTuple::new(ConstraintKind::Distance, &["sofa", "tv"], Comparator::Range)
            .num("min", 2.0)
            .num("max", 3.5)
            .text("measure", "center");
        assert_eq!(constraint_from_json(&constraint_json(&c)).unwrap(), c);
    }
}
