//! Free text → scene organization through a pluggable provider.
//!
//! Four prompts run in a fixed order; each response is a partial scene spec
//! that is merged into the running document. Merging only adds: a later
//! response can fill a gap but never replaces or deletes what an earlier one
//! said.

use std::collections::BTreeSet;
use std::sync::{LazyLock, Mutex};

use base64::Engine as _;
use regex::Regex;
use roomcraft_core::scene::{ArchElement, SceneOrganization};
use serde_json::{json, Value};
use thiserror::Error;

use crate::spec::{check_organization, organization_from_doc, FurnitureDoc, RelationDoc, RoomDoc, SpecDoc, Warning, SPEC_SCHEMA};

/// Attempts per template after the first unparseable response.
pub const MAX_RETRIES: u32 = 2;

pub const URL_VAR: &str = "ROOMCRAFT_LLM_URL";
pub const KEY_VAR: &str = "ROOMCRAFT_LLM_KEY";
pub const MODEL_VAR: &str = "ROOMCRAFT_LLM_MODEL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TemplateName {
    RoomTypeClassification,
    FurnitureEnumeration,
    SpatialRelationshipAnalysis,
    ConstraintFormalization,
}

impl TemplateName {
    pub fn as_str(self) -> &'static str {
        match self {
            TemplateName::RoomTypeClassification => "room_type_classification",
            TemplateName::FurnitureEnumeration => "furniture_enumeration",
            TemplateName::SpatialRelationshipAnalysis => "spatial_relationship_analysis",
            TemplateName::ConstraintFormalization => "constraint_formalization",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplate {
    pub name: TemplateName,
    pub body: &'static str,
}

pub const PLACEHOLDER: &str = "{input}";

impl PromptTemplate {
    pub fn is_well_formed(&self) -> bool {
        self.body.matches(PLACEHOLDER).count() == 1
    }

    pub fn render(&self, input: &str) -> String {
        self.body.replacen(PLACEHOLDER, input, 1)
    }
}

pub const TEMPLATES: [PromptTemplate; 4] = [
    PromptTemplate {
        name: TemplateName::RoomTypeClassification,
        body: "Classify the room described below as exactly one of: living_room, bedroom, dining_room, kitchen, bathroom.\n\
               Reply with JSON only: {\"room_type\": \"<type>\"}.\n\nDescription:\n{input}\n",
    },
    PromptTemplate {
        name: TemplateName::FurnitureEnumeration,
        body: "List every piece of furniture mentioned or clearly implied in the description below.\n\
               Give each a unique snake_case id and a category. Add \"count\" when several identical pieces are meant, \
               and \"color\", \"material\" or \"size\" {\"w\", \"d\", \"h\"} in meters only when stated.\n\
               Reply with JSON only: {\"furniture\": [{\"id\": ..., \"category\": ...}]}.\n\nDescription:\n{input}\n",
    },
    PromptTemplate {
        name: TemplateName::SpatialRelationshipAnalysis,
        body: "Using only the furniture ids already listed, describe how the pieces relate in space.\n\
               Allowed relations: against_wall, near_wall, away_from_wall, corner (object wall:north|south|east|west), \
               ceiling_mounted (object ceiling), on_floor (object floor), in_front_of, behind, left_of, right_of, face_to_face, \
               back_to_back, side_by_side, aligned_with, on_top_of, touching, near, far_from.\n\
               Reply with JSON only: {\"relations\": [{\"subject\": ..., \"relation\": ..., \"object\": ...}]}.\n\nDescription:\n{input}\n",
    },
    PromptTemplate {
        name: TemplateName::ConstraintFormalization,
        body: "Turn every numeric requirement in the description below into relations with parameters, for example \
               distance_range with params {\"min\": 2.0, \"max\": 3.5} in meters.\n\
               Reply with one JSON document in the roomcraft/1 scene format: {\"schema\": \"roomcraft/1\", \"room_type\": ..., \
               \"furniture\": [...], \"relations\": [...]}. Do not remove anything stated earlier.\n\nDescription:\n{input}\n",
    },
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attachment {
    pub media_type: String,
    pub data: Vec<u8>,
}

#[derive(Debug)]
pub struct ProviderRequest<'a> {
    pub template: &'a PromptTemplate,
    pub prompt: String,
    pub input: &'a str,
    /// Everything merged so far.
    pub context: &'a SpecDoc,
    pub attachments: &'a [Attachment],
    pub attempt: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProviderError {
    #[error("provider unavailable: {0}")]
    Unavailable(String),
}

pub trait ExtractionProvider: Send + Sync {
    fn name(&self) -> &str;

    /// Exclusive providers see one request at a time.
    fn exclusive(&self) -> bool {
        false
    }

    fn complete(&self, request: &ProviderRequest<'_>) -> Result<String, ProviderError>;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtractionError {
    #[error("input text is empty")]
    EmptyInput,
    #[error("extraction failed at {template}: {reason}")]
    ExtractionFailed { template: &'static str, reason: String },
    #[error("{0}")]
    ProviderUnavailable(String),
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub organization: SceneOrganization,
    pub document: SpecDoc,
    pub warnings: Vec<Warning>,
}

/// Pulls the JSON object out of a response, tolerating code fences and
/// surrounding chatter.
fn parse_response(text: &str) -> Option<SpecDoc> {
    let start = text.find('{')?;
    let end = text.rfind('}')?;
    if end < start {
        return None;
    }
    SpecDoc::from_json(&text[start..=end]).ok()
}

fn known_object(doc: &SpecDoc, id: &str) -> bool {
    ArchElement::parse(id).is_some() || doc.furniture.iter().any(|f| f.id == id)
}

fn fill<T: Clone + PartialEq>(slot: &mut Option<T>, value: &Option<T>, path: String, warnings: &mut Vec<Warning>) {
    match (slot.as_ref(), value) {
        (None, Some(v)) => *slot = Some(v.clone()),
        (Some(old), Some(v)) if old != v => warnings.push(Warning {
            path,
            message: "conflicting value from a later prompt ignored".into(),
        }),
        _ => {}
    }
}

/// Adds `part` into `acc` without removing or overwriting anything.
pub fn merge_partial(acc: &mut SpecDoc, part: &SpecDoc, warnings: &mut Vec<Warning>) {
    fill(&mut acc.room_type, &part.room_type, "room_type".into(), warnings);
    if let Some(room) = &part.room {
        let target = acc.room.get_or_insert_with(RoomDoc::default);
        fill(&mut target.width, &room.width, "room.width".into(), warnings);
        fill(&mut target.depth, &room.depth, "room.depth".into(), warnings);
        fill(&mut target.wall_height, &room.wall_height, "room.wall_height".into(), warnings);
        fill(&mut target.doors, &room.doors, "room.doors".into(), warnings);
        fill(&mut target.windows, &room.windows, "room.windows".into(), warnings);
    }
    for f in &part.furniture {
        match acc.furniture.iter_mut().find(|g| g.id == f.id) {
            None => acc.furniture.push(FurnitureDoc {
                extra: Default::default(),
                ..f.clone()
            }),
            Some(g) => {
                let path = |k: &str| format!("furniture.{}.{k}", f.id);
                if g.category != f.category {
                    warnings.push(Warning {
                        path: path("category"),
                        message: "conflicting value from a later prompt ignored".into(),
                    });
                }
                fill(&mut g.count, &f.count, path("count"), warnings);
                fill(&mut g.size, &f.size, path("size"), warnings);
                fill(&mut g.yaw, &f.yaw, path("yaw"), warnings);
                fill(&mut g.color, &f.color, path("color"), warnings);
                fill(&mut g.material, &f.material, path("material"), warnings);
                fill(&mut g.mount, &f.mount, path("mount"), warnings);
            }
        }
    }
    for r in &part.relations {
        if !acc.furniture.iter().any(|f| f.id == r.subject) || !known_object(acc, &r.object) {
            warnings.push(Warning {
                path: format!("relations.{}.{}.{}", r.subject, r.relation, r.object),
                message: "relation names unknown furniture; dropped".into(),
            });
            continue;
        }
        match acc
            .relations
            .iter_mut()
            .find(|q| q.subject == r.subject && q.relation == r.relation && q.object == r.object)
        {
            None => acc.relations.push(RelationDoc {
                extra: Default::default(),
                ..r.clone()
            }),
            Some(q) => {
                for (k, v) in &r.params {
                    q.params.entry(k.clone()).or_insert(*v);
                }
            }
        }
    }
}

/// Runs the four prompts against one provider, serializing calls when the
/// provider asks for it.
pub struct Extractor<P: ExtractionProvider> {
    provider: P,
    gate: Mutex<()>,
}

impl<P: ExtractionProvider> Extractor<P> {
    pub fn new(provider: P) -> Self {
        Self {
            provider,
            gate: Mutex::new(()),
        }
    }

    pub fn provider(&self) -> &P {
        &self.provider
    }

    fn call(&self, request: &ProviderRequest<'_>) -> Result<String, ProviderError> {
        if self.provider.exclusive() {
            let _held = self.gate.lock().unwrap_or_else(|e| e.into_inner());
            self.provider.complete(request)
        } else {
            self.provider.complete(request)
        }
    }

    pub fn extract(&self, input: &str, attachments: &[Attachment]) -> Result<Extraction, ExtractionError> {
        if input.trim().is_empty() {
            return Err(ExtractionError::EmptyInput);
        }
        let mut doc = SpecDoc::default();
        let mut warnings = Vec::new();
        for template in &TEMPLATES {
            let mut parsed = None;
            for attempt in 0..=MAX_RETRIES {
                let request = ProviderRequest {
                    template,
                    prompt: template.render(input),
                    input,
                    context: &doc,
                    attachments,
                    attempt,
                };
                let text = self
                    .call(&request)
                    .map_err(|ProviderError::Unavailable(m)| ExtractionError::ProviderUnavailable(m))?;
                if let Some(part) = parse_response(&text) {
                    parsed = Some(part);
                    break;
                }
            }
            let part = parsed.ok_or_else(|| ExtractionError::ExtractionFailed {
                template: template.name.as_str(),
                reason: format!("no parseable JSON after {} attempts", MAX_RETRIES + 1),
            })?;
            warnings.extend(part.warnings());
            merge_partial(&mut doc, &part, &mut warnings);
        }
        doc.schema = Some(SPEC_SCHEMA.into());
        let failed = |reason: String| ExtractionError::ExtractionFailed {
            template: TemplateName::ConstraintFormalization.as_str(),
            reason,
        };
        let organization = organization_from_doc(&doc).map_err(|e| failed(e.to_string()))?;
        check_organization(&organization).map_err(|e| failed(e.to_string()))?;
        Ok(Extraction {
            organization,
            document: doc,
            warnings,
        })
    }
}

pub fn extract<P: ExtractionProvider>(provider: P, input: &str) -> Result<Extraction, ExtractionError> {
    Extractor::new(provider).extract(input, &[])
}

// ---------------------------------------------------------------------------
// Mock provider

const ROOM_WORDS: &[(&str, &str)] = &[
    (r"\bliving ?rooms?\b|\blounge\b", "living_room"),
    (r"\bbed ?rooms?\b", "bedroom"),
    (r"\bdining ?rooms?\b", "dining_room"),
    (r"\bkitchens?\b", "kitchen"),
    (r"\bbath ?rooms?\b", "bathroom"),
];

/// Alias → category. Multi-word aliases come first so "coffee table" is not
/// read as a plain table.
const FURNITURE_WORDS: &[(&str, &str)] = &[
    (r"coffee ?tables?", "coffee_table"),
    (r"dining ?tables?", "dining_table"),
    (r"side ?tables?|end ?tables?", "side_table"),
    (r"tv ?stands?|tv ?units?|media ?consoles?", "tv_stand"),
    (r"ceiling ?lights?|chandeliers?", "ceiling_light"),
    (r"night ?stands?|bedside ?tables?", "nightstand"),
    (r"arm ?chairs?", "armchair"),
    (r"book ?shel(?:f|ves)|bookcases?", "bookshelf"),
    (r"televisions?|tvs?", "tv"),
    (r"sofas?|couch(?:es)?", "sofa"),
    (r"beds?", "bed"),
    (r"wardrobes?|closets?", "wardrobe"),
    (r"dressers?", "dresser"),
    (r"desks?", "desk"),
    (r"chairs?", "chair"),
    (r"tables?", "table"),
    (r"lamps?", "lamp"),
    (r"plants?", "plant"),
    (r"mirrors?", "mirror"),
    (r"paintings?|pictures?", "painting"),
    (r"cabinets?", "cabinet"),
    (r"fridges?|refrigerators?", "fridge"),
    (r"stoves?|ovens?", "stove"),
    (r"counters?", "counter"),
    (r"sinks?", "sink"),
    (r"toilets?", "toilet"),
    (r"showers?", "shower"),
    (r"bath ?tubs?", "bathtub"),
    (r"vanit(?:y|ies)", "vanity"),
    (r"vases?", "vase"),
    (r"cups?|mugs?", "cup"),
];

const NUMBER_WORDS: &[(&str, u32)] = &[
    ("two", 2),
    ("three", 3),
    ("four", 4),
    ("five", 5),
    ("six", 6),
    ("seven", 7),
    ("eight", 8),
    ("pair of", 2),
];

static ROOM_RES: LazyLock<Vec<(Regex, &'static str)>> =
    LazyLock::new(|| ROOM_WORDS.iter().map(|(p, t)| (Regex::new(p).expect("static pattern"), *t)).collect());

static FURNITURE_RES: LazyLock<Vec<(Regex, &'static str)>> = LazyLock::new(|| {
    FURNITURE_WORDS
        .iter()
        .map(|(p, c)| {
            let full = format!(r"\b(?:(\d+|{}) )?(?:{p})\b", NUMBER_WORDS.iter().map(|(w, _)| *w).collect::<Vec<_>>().join("|"));
            (Regex::new(&full).expect("static pattern"), *c)
        })
        .collect()
});

static WALL_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"\b([a-z_]+) (?:(?:is|are|stands|sits|placed|pushed|goes) )*(against|near|close to|away from) the (north|south|east|west) wall")
        .expect("static pattern")
});
static CORNER_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\b([a-z_]+) (?:(?:is|are|sits|stands|placed) )*in the (?:(north|south)[- ]?(?:east|west) )?corner").expect("static pattern"));
static CEILING_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\b([a-z_]+) (?:(?:is|are|hangs|hanging|hung|mounted) )*(?:on|from) the ceiling").expect("static pattern"));
static PAIR_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"\b([a-z_]+) (?:(?:is|are|sits|stands|placed|set) )*(facing|on top of|on|next to|beside|in front of|behind|to the left of|left of|to the right of|right of|near|close to|far from|aligned with|back to back with|touching) (?:the |a |an )?([a-z_]+)",
    )
    .expect("static pattern")
});
static RANGE_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(\d+(?:\.\d+)?) ?(?:to|-|and) ?(\d+(?:\.\d+)?) ?(?:m|meters?|metres?)\b(?: apart)?").expect("static pattern")
});

fn pair_relation(phrase: &str) -> Option<&'static str> {
    Some(match phrase {
        "facing" => "face_to_face",
        "on top of" | "on" => "on_top_of",
        "next to" | "beside" => "side_by_side",
        "in front of" => "in_front_of",
        "behind" => "behind",
        "to the left of" | "left of" => "left_of",
        "to the right of" | "right of" => "right_of",
        "near" | "close to" => "near",
        "far from" => "far_from",
        "aligned with" => "aligned_with",
        "back to back with" => "back_to_back",
        "touching" => "touching",
        _ => return None,
    })
}

/// Deterministic keyword-table provider used in tests and offline runs.
#[derive(Debug, Clone, Copy, Default)]
pub struct MockProvider;

/// Lower-cased input with every furniture mention replaced by its category
/// token, plus the furniture found (category, count) in order of mention.
fn canonicalize(input: &str) -> (String, Vec<(&'static str, u32)>) {
    let mut text = input.to_lowercase();
    let mut found: Vec<(&'static str, u32)> = Vec::new();
    for (re, category) in FURNITURE_RES.iter() {
        let mut out = String::with_capacity(text.len());
        let mut last = 0;
        for caps in re.captures_iter(&text) {
            let m = caps.get(0).expect("group 0");
            let count = caps.get(1).map_or(1, |q| {
                q.as_str()
                    .parse()
                    .ok()
                    .or_else(|| NUMBER_WORDS.iter().find(|(w, _)| *w == q.as_str()).map(|(_, n)| *n))
                    .unwrap_or(1)
            });
            match found.iter_mut().find(|(c, _)| c == category) {
                Some(entry) => entry.1 = entry.1.max(count),
                None => found.push((category, count)),
            }
            out.push_str(&text[last..m.start()]);
            out.push_str(category);
            last = m.end();
        }
        out.push_str(&text[last..]);
        text = out;
    }
    // Order by first mention so ids come out in reading order.
    found.sort_by_key(|(c, _)| {
        Regex::new(&format!(r"\b{c}\b"))
            .ok()
            .and_then(|re| re.find(&text).map(|m| m.start()))
            .unwrap_or(usize::MAX)
    });
    (text, found)
}

impl MockProvider {
    fn room_type(text: &str, furniture: &[(&str, u32)]) -> &'static str {
        let hit = ROOM_RES
            .iter()
            .filter_map(|(re, t)| re.find(text).map(|m| (m.start(), *t)))
            .min();
        if let Some((_, t)) = hit {
            return t;
        }
        let has = |c: &str| furniture.iter().any(|(f, _)| *f == c);
        if has("bed") {
            "bedroom"
        } else if has("toilet") || has("shower") || has("bathtub") {
            "bathroom"
        } else if has("stove") || has("fridge") {
            "kitchen"
        } else if has("dining_table") {
            "dining_room"
        } else {
            "living_room"
        }
    }

    fn relations(text: &str, ids: &BTreeSet<&str>) -> Vec<(usize, Value)> {
        let mut out = Vec::new();
        for c in WALL_RE.captures_iter(text) {
            if !ids.contains(&c[1]) {
                continue;
            }
            let rel = match &c[2] {
                "against" => "against_wall",
                "away from" => "away_from_wall",
                _ => "near_wall",
            };
            out.push((c.get(0).map_or(0, |m| m.start()), json!({"subject": &c[1], "relation": rel, "object": format!("wall:{}", &c[3])})));
        }
        for c in CORNER_RE.captures_iter(text) {
            if !ids.contains(&c[1]) {
                continue;
            }
            let wall = c.get(2).map_or("north", |m| m.as_str());
            out.push((c.get(0).map_or(0, |m| m.start()), json!({"subject": &c[1], "relation": "corner", "object": format!("wall:{wall}")})));
        }
        for c in CEILING_RE.captures_iter(text) {
            if ids.contains(&c[1]) {
                out.push((c.get(0).map_or(0, |m| m.start()), json!({"subject": &c[1], "relation": "ceiling_mounted", "object": "ceiling"})));
            }
        }
        for c in PAIR_RE.captures_iter(text) {
            let (a, b) = (&c[1], &c[3]);
            if a == b || !ids.contains(a) || !ids.contains(b) {
                continue;
            }
            if let Some(rel) = pair_relation(&c[2]) {
                out.push((c.get(0).map_or(0, |m| m.start()), json!({"subject": a, "relation": rel, "object": b})));
            }
        }
        out.sort_by_key(|(pos, _)| *pos);
        out
    }

    fn respond(&self, template: TemplateName, input: &str) -> Value {
        let (text, furniture) = canonicalize(input);
        let ids: BTreeSet<&str> = furniture.iter().map(|(c, _)| *c).collect();
        match template {
            TemplateName::RoomTypeClassification => json!({"room_type": Self::room_type(&text, &furniture)}),
            TemplateName::FurnitureEnumeration => {
                let items: Vec<Value> = furniture
                    .iter()
                    .map(|(c, n)| {
                        let mut v = json!({"id": c, "category": c});
                        if *n > 1 {
                            v["count"] = json!(n);
                        }
                        v
                    })
                    .collect();
                json!({"furniture": items})
            }
            TemplateName::SpatialRelationshipAnalysis => {
                let rels: Vec<Value> = Self::relations(&text, &ids).into_iter().map(|(_, v)| v).collect();
                json!({"relations": rels})
            }
            TemplateName::ConstraintFormalization => {
                let pairs: Vec<(usize, Value)> = Self::relations(&text, &ids)
                    .into_iter()
                    .filter(|(_, v)| !v["object"].as_str().is_some_and(|o| ArchElement::parse(o).is_some()))
                    .collect();
                let mut rels = Vec::new();
                for c in RANGE_RE.captures_iter(&text) {
                    let at = c.get(0).map_or(0, |m| m.start());
                    let (Ok(lo), Ok(hi)) = (c[1].parse::<f64>(), c[2].parse::<f64>()) else {
                        continue;
                    };
                    // Binds to the nearest pair mentioned before the numbers.
                    if let Some((_, v)) = pairs.iter().rev().find(|(p, _)| *p < at) {
                        rels.push(json!({
                            "subject": v["subject"], "relation": "distance_range", "object": v["object"],
                            "params": {"min": lo.min(hi), "max": lo.max(hi)}
                        }));
                    }
                }
                json!({"schema": SPEC_SCHEMA, "relations": rels})
            }
        }
    }
}

impl ExtractionProvider for MockProvider {
    fn name(&self) -> &str {
        "mock"
    }

    fn complete(&self, request: &ProviderRequest<'_>) -> Result<String, ProviderError> {
        Ok(self.respond(request.template.name, request.input).to_string())
    }
}

// ---------------------------------------------------------------------------
// HTTP provider

/// Client for an OpenAI-compatible chat-completion endpoint.
#[derive(Debug, Clone)]
pub struct HttpProvider {
    pub url: String,
    pub key: Option<String>,
    pub model: String,
}

impl HttpProvider {
    /// Reads `ROOMCRAFT_LLM_URL`, `ROOMCRAFT_LLM_KEY`, `ROOMCRAFT_LLM_MODEL`;
    /// `None` unless the URL is set.
    pub fn from_env() -> Option<Self> {
        let url = std::env::var(URL_VAR).ok().filter(|u| !u.is_empty())?;
        Some(Self {
            url,
            key: std::env::var(KEY_VAR).ok().filter(|k| !k.is_empty()),
            model: std::env::var(MODEL_VAR).unwrap_or_else(|_| "gpt-4o".into()),
        })
    }

    pub fn request_body(&self, request: &ProviderRequest<'_>) -> Value {
        let mut content = vec![json!({"type": "text", "text": request.prompt})];
        for a in request.attachments {
            let data = base64::engine::general_purpose::STANDARD.encode(&a.data);
            content.push(json!({"type": "image_url", "image_url": {"url": format!("data:{};base64,{data}", a.media_type)}}));
        }
        let context = serde_json::to_string(request.context).unwrap_or_default();
        json!({
            "model": self.model,
            "temperature": 0,
            "messages": [
                {"role": "system", "content": format!("You extract indoor scene descriptions as JSON. Scene so far: {context}")},
                {"role": "user", "content": content},
            ],
        })
    }
}

impl ExtractionProvider for HttpProvider {
    fn name(&self) -> &str {
        "http"
    }

    fn exclusive(&self) -> bool {
        true
    }

    fn complete(&self, request: &ProviderRequest<'_>) -> Result<String, ProviderError> {
        let body = self.request_body(request).to_string();
        let mut req = ureq::post(&self.url).header("Content-Type", "application/json");
        if let Some(key) = &self.key {
            req = req.header("Authorization", &format!("Bearer {key}"));
        }
        let mut resp = req.send(body.as_str()).map_err(|e| ProviderError::Unavailable(e.to_string()))?;
        let text = resp
            .body_mut()
            .read_to_string()
            .map_err(|e| ProviderError::Unavailable(e.to_string()))?;
        // A reply that is not a chat completion is handed back verbatim and
        // fails parsing, which triggers a retry.
        let value: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(_) => return Ok(text),
        };
        Ok(value["choices"][0]["message"]["content"].as_str().map_or(text.clone(), str::to_owned))
    }
}
