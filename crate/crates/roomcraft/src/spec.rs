//! Scene spec documents (`schema: "roomcraft/1"`).

use std::collections::BTreeMap;

use roomcraft_core::catalog;
use roomcraft_core::scene::{
    validate_organization, ArchElement, Door, FurnitureItem, IssueCode, Mount, RelationEdge, RelationKind, RoomSpec, RoomType,
    SceneOrganization, Severity, ValidationIssue, Wall, Window,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const SPEC_SCHEMA: &str = "roomcraft/1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("dangling reference `{0}`")]
    DanglingReference(String),
    #[error("invalid scene: {}", .0.iter().map(|i| i.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ValidationIssue>),
}

/// A field the parser did not recognise and skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(flatten, skip_serializing)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FurnitureDoc {
    pub id: String,
    pub category: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<SizeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub yaw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub material: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mount: Option<String>,
    #[serde(flatten, skip_serializing)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub subject: String,
    pub object: String,
    pub relation: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    #[serde(flatten, skip_serializing)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoorDoc {
    pub wall: String,
    pub offset: f64,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowDoc {
    pub wall: String,
    pub offset: f64,
    pub width: f64,
    pub sill: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RoomDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_height: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub doors: Option<Vec<DoorDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub windows: Option<Vec<WindowDoc>>,
    #[serde(flatten, skip_serializing)]
    pub extra: BTreeMap<String, Value>,
}

/// The on-disk shape of a scene spec. Every field is optional here so that
/// partial documents (model responses) share the same reader.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SpecDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub room_type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub room: Option<RoomDoc>,
    #[serde(default)]
    pub furniture: Vec<FurnitureDoc>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
    #[serde(flatten, skip_serializing)]
    pub extra: BTreeMap<String, Value>,
}

impl SpecDoc {
    /// Reads a document without checking required fields.
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| classify(&e))
    }

    pub fn warnings(&self) -> Vec<Warning> {
        let mut out = Vec::new();
        let mut note = |path: String, extra: &BTreeMap<String, Value>| {
            for key in extra.keys() {
                out.push(Warning {
                    path: format!("{path}{key}"),
                    message: format!("unknown field `{key}` ignored"),
                });
            }
        };
        note(String::new(), &self.extra);
        if let Some(room) = &self.room {
            note("room.".into(), &room.extra);
        }
        for (i, f) in self.furniture.iter().enumerate() {
            note(format!("furniture[{i}]."), &f.extra);
            if let Some(size) = &f.size {
                note(format!("furniture[{i}].size."), &size.extra);
            }
        }
        for (i, r) in self.relations.iter().enumerate() {
            note(format!("relations[{i}]."), &r.extra);
        }
        out
    }
}

fn classify(e: &serde_json::Error) -> SpecError {
    use serde_json::error::Category;
    match e.classify() {
        Category::Data => SpecError::SchemaViolation(e.to_string()),
        _ => SpecError::MalformedDocument(e.to_string()),
    }
}

fn wall(name: &str, path: &str) -> Result<Wall, SpecError> {
    name.parse::<Wall>()
        .or_else(|_| match ArchElement::parse(name) {
            Some(ArchElement::Wall(w)) => Ok(w),
            _ => Err(()),
        })
        .map_err(|_| SpecError::SchemaViolation(format!("{path}: unknown wall `{name}`")))
}

fn furniture_from(doc: &FurnitureDoc, i: usize) -> Result<FurnitureItem, SpecError> {
    let entry = catalog::lookup(&doc.category);
    let size = doc.size.as_ref();
    let dim = |v: Option<f64>, fallback: Option<f64>, name: &str| {
        v.or(fallback).ok_or_else(|| {
            SpecError::SchemaViolation(format!(
                "furniture[{i}] `{}`: size.{name} missing and `{}` is not in the catalog",
                doc.id, doc.category
            ))
        })
    };
    let width = dim(size.and_then(|s| s.w), entry.map(|e| e.width), "w")?;
    let depth = dim(size.and_then(|s| s.d), entry.map(|e| e.depth), "d")?;
    let height = dim(size.and_then(|s| s.h), entry.map(|e| e.height), "h")?;
    let mount = match &doc.mount {
        Some(m) => m
            .parse::<Mount>()
            .map_err(|_| SpecError::SchemaViolation(format!("furniture[{i}]: unknown mount `{m}`")))?,
        None => entry.map_or(Mount::Floor, |e| e.mount),
    };
    let mut item = FurnitureItem::new(&doc.id, &doc.category, width, depth, height).with_mount(mount);
    item.count = doc.count.unwrap_or(1);
    item.yaw = doc.yaw.unwrap_or(0.0);
    item.color = doc.color.clone();
    item.material = doc.material.clone();
    Ok(item)
}

fn room_from(doc: &RoomDoc) -> Result<RoomSpec, SpecError> {
    let doors = doc
        .doors
        .as_ref()
        .map(|ds| {
            ds.iter()
                .enumerate()
                .map(|(i, d)| {
                    Ok(Door {
                        wall: wall(&d.wall, &format!("room.doors[{i}]"))?,
                        offset: d.offset,
                        width: d.width,
                    })
                })
                .collect::<Result<Vec<_>, SpecError>>()
        })
        .transpose()?;
    let windows = doc
        .windows
        .as_ref()
        .map(|ws| {
            ws.iter()
                .enumerate()
                .map(|(i, w)| {
                    Ok(Window {
                        wall: wall(&w.wall, &format!("room.windows[{i}]"))?,
                        offset: w.offset,
                        width: w.width,
                        sill: w.sill,
                    })
                })
                .collect::<Result<Vec<_>, SpecError>>()
        })
        .transpose()?;
    Ok(RoomSpec {
        width: doc.width,
        depth: doc.depth,
        wall_height: doc.wall_height,
        doors,
        windows,
    })
}

/// Converts a document into an organization without validating it.
pub fn organization_from_doc(doc: &SpecDoc) -> Result<SceneOrganization, SpecError> {
    let room_type = doc
        .room_type
        .as_deref()
        .ok_or_else(|| SpecError::SchemaViolation("missing field `room_type`".into()))?;
    let room_type: RoomType = room_type
        .parse()
        .map_err(|_| SpecError::SchemaViolation(format!("unknown room_type `{room_type}`")))?;
    let mut org = SceneOrganization::new(room_type);
    org.room = doc.room.as_ref().map(room_from).transpose()?;
    for (i, f) in doc.furniture.iter().enumerate() {
        let mut item = furniture_from(f, i)?;
        // An undeclared mount on something that rests on another item means on_top.
        if f.mount.is_none() && doc.relations.iter().any(|r| r.subject == f.id && r.relation == "on_top_of") {
            item.mount = Mount::OnTop;
        }
        org.furniture.push(item);
    }
    for (i, r) in doc.relations.iter().enumerate() {
        let kind: RelationKind = r
            .relation
            .parse()
            .map_err(|_| SpecError::SchemaViolation(format!("relations[{i}]: unknown relation `{}`", r.relation)))?;
        let mut edge = RelationEdge::new(&r.subject, kind, &r.object);
        edge.params = r.params.clone();
        org.relations.push(edge);
    }
    Ok(org)
}

/// Turns validation issues into the first matching error.
pub fn check_organization(org: &SceneOrganization) -> Result<(), SpecError> {
    let issues: Vec<ValidationIssue> = validate_organization(org).into_iter().filter(|i| i.severity == Severity::Error).collect();
    if let Some(dangling) = issues.iter().find(|i| i.code == IssueCode::DanglingReference) {
        return Err(SpecError::DanglingReference(dangling.id.clone()));
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(SpecError::Invalid(issues))
    }
}

/// Parses and validates a scene spec.
pub fn parse_scene_spec(text: &str) -> Result<(SceneOrganization, Vec<Warning>), SpecError> {
    let value: Value = serde_json::from_str(text).map_err(|e| SpecError::MalformedDocument(e.to_string()))?;
    match value.get("schema") {
        Some(Value::String(s)) if s == SPEC_SCHEMA => {}
        Some(other) => return Err(SpecError::SchemaViolation(format!("unsupported schema {other}, expected \"{SPEC_SCHEMA}\""))),
        None => return Err(SpecError::SchemaViolation("missing field `schema`".into())),
    }
    if !value.get("furniture").is_some_and(Value::is_array) {
        return Err(SpecError::SchemaViolation("missing field `furniture`".into()));
    }
    let doc: SpecDoc = serde_json::from_value(value).map_err(|e| classify(&e))?;
    let org = organization_from_doc(&doc)?;
    check_organization(&org)?;
    Ok((org, doc.warnings()))
}

pub fn doc_from_organization(org: &SceneOrganization) -> SpecDoc {
    SpecDoc {
        schema: Some(SPEC_SCHEMA.into()),
        room_type: Some(org.room_type.as_str().into()),
        room: org.room.as_ref().map(|r| RoomDoc {
            width: r.width,
            depth: r.depth,
            wall_height: r.wall_height,
            doors: r.doors.as_ref().map(|ds| {
                ds.iter()
                    .map(|d| DoorDoc {
                        wall: d.wall.id().into(),
                        offset: d.offset,
                        width: d.width,
                    })
                    .collect()
            }),
            windows: r.windows.as_ref().map(|ws| {
                ws.iter()
                    .map(|w| WindowDoc {
                        wall: w.wall.id().into(),
                        offset: w.offset,
                        width: w.width,
                        sill: w.sill,
                    })
                    .collect()
            }),
            extra: BTreeMap::new(),
        }),
        furniture: org
            .furniture
            .iter()
            .map(|f| FurnitureDoc {
                id: f.id.clone(),
                category: f.category.clone(),
                count: (f.count != 1).then_some(f.count),
                size: Some(SizeDoc {
                    w: Some(f.width),
                    d: Some(f.depth),
                    h: Some(f.height),
                    extra: BTreeMap::new(),
                }),
                yaw: (f.yaw != 0.0).then_some(f.yaw),
                color: f.color.clone(),
                material: f.material.clone(),
                mount: Some(f.mount.as_str().into()),
                extra: BTreeMap::new(),
            })
            .collect(),
        relations: org
            .relations
            .iter()
            .map(|r| RelationDoc {
                subject: r.subject.clone(),
                object: r.object.clone(),
                relation: r.relation.as_str().into(),
                params: r.params.clone(),
                extra: BTreeMap::new(),
            })
            .collect(),
        extra: BTreeMap::new(),
    }
}

/// Pretty-printed spec JSON with a trailing newline.
pub fn serialize_scene_spec(org: &SceneOrganization) -> String {
    let mut s = serde_json::to_string_pretty(&doc_from_organization(org)).expect("spec documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const BEDROOM: &str = r#"{
        "schema": "roomcraft/1",
        "room_type": "bedroom",
        "furniture": [
            {"id": "bed", "category": "bed"},
            {"id": "lamp", "category": "lamp", "size": {"w": 0.3, "d": 0.3, "h": 1.5}}
        ],
        "relations": [
            {"subject": "bed", "object": "wall:north", "relation": "against_wall"}
        ]
    }"#;

    #[test]
    fn parses_a_bedroom() {
        let (org, warnings) = parse_scene_spec(BEDROOM).unwrap();
        assert_eq!(org.room_type, RoomType::Bedroom);
        assert_eq!((org.furniture.len(), org.relations.len()), (2, 1));
        assert_eq!(org.furniture[0].width, 2.0);
        assert_eq!(org.furniture[1].height, 1.5);
        assert!(warnings.is_empty());
    }

    #[test]
    fn dangling_subject() {
        let text = BEDROOM.replace(r#""subject": "bed""#, r#""subject": "lamp2""#);
        assert_eq!(parse_scene_spec(&text), Err(SpecError::DanglingReference("lamp2".into())));
    }

    #[test]
    fn distance_range_params_survive() {
        let text = r#"{"schema": "roomcraft/1", "room_type": "living_room",
            "furniture": [{"id": "sofa", "category": "sofa"}, {"id": "tv", "category": "tv"}],
            "relations": [{"subject": "sofa", "object": "tv", "relation": "distance_range", "params": {"min": 2.0, "max": 3.5}}]}"#;
        let (org, _) = parse_scene_spec(text).unwrap();
        assert_eq!(org.relations[0].param("min"), Some(2.0));
        assert_eq!(org.relations[0].param("max"), Some(3.5));
    }

    #[test]
    fn error_classes() {
        assert!(matches!(parse_scene_spec("{ not json"), Err(SpecError::MalformedDocument(_))));
        let no_schema = BEDROOM.replace(r#""schema": "roomcraft/1","#, "");
        assert!(matches!(parse_scene_spec(&no_schema), Err(SpecError::SchemaViolation(_))));
        let bad_kind = BEDROOM.replace("against_wall", "hovering_over");
        assert!(matches!(parse_scene_spec(&bad_kind), Err(SpecError::SchemaViolation(_))));
        let no_id = BEDROOM.replace(r#""id": "bed", "#, "");
        assert!(matches!(parse_scene_spec(&no_id), Err(SpecError::SchemaViolation(_))));
    }

    #[test]
    fn unknown_fields_warn() {
        let text = BEDROOM.replace(r#""room_type""#, r#""mood": "cosy", "room_type""#);
        let (_, warnings) = parse_scene_spec(&text).unwrap();
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].path, "mood");
    }

    #[test]
    fn serialize_round_trips() {
        let (org, _) = parse_scene_spec(BEDROOM).unwrap();
        let (again, _) = parse_scene_spec(&serialize_scene_spec(&org)).unwrap();
        assert_eq!(org, again);
    }
}
