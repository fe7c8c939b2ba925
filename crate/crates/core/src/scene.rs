//! Scene organization: room type, furniture, relations, and the room shell.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::catalog;
use crate::geometry::Bounds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoomType {
    LivingRoom,
    Bathroom,
    DiningRoom,
    Kitchen,
    Bedroom,
}

impl RoomType {
    pub const ALL: [RoomType; 5] = [
        RoomType::LivingRoom,
        RoomType::Bathroom,
        RoomType::DiningRoom,
        RoomType::Kitchen,
        RoomType::Bedroom,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RoomType::LivingRoom => "living_room",
            RoomType::Bathroom => "bathroom",
            RoomType::DiningRoom => "dining_room",
            RoomType::Kitchen => "kitchen",
            RoomType::Bedroom => "bedroom",
        }
    }
}

impl fmt::Display for RoomType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RoomType {
    type Err = UnknownName;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RoomType::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| UnknownName(s.to_owned()))
    }
}

/// Returned when a label does not name a known enum variant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown name `{0}`")]
pub struct UnknownName(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Mount {
    #[default]
    Floor,
    Wall,
    Ceiling,
    OnTop,
}

impl Mount {
    pub fn as_str(self) -> &'static str {
        match self {
            Mount::Floor => "floor",
            Mount::Wall => "wall",
            Mount::Ceiling => "ceiling",
            Mount::OnTop => "on_top",
        }
    }
}

impl FromStr for Mount {
    type Err = UnknownName;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "floor" => Ok(Mount::Floor),
            "wall" => Ok(Mount::Wall),
            "ceiling" => Ok(Mount::Ceiling),
            "on_top" => Ok(Mount::OnTop),
            _ => Err(UnknownName(s.to_owned())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wall {
    North,
    South,
    East,
    West,
}

impl Wall {
    pub const ALL: [Wall; 4] = [Wall::South, Wall::North, Wall::West, Wall::East];

    pub fn as_str(self) -> &'static str {
        match self {
            Wall::North => "north",
            Wall::South => "south",
            Wall::East => "east",
            Wall::West => "west",
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Wall::North => "wall:north",
            Wall::South => "wall:south",
            Wall::East => "wall:east",
            Wall::West => "wall:west",
        }
    }

    pub fn opposite(self) -> Wall {
        match self {
            Wall::North => Wall::South,
            Wall::South => Wall::North,
            Wall::East => Wall::West,
            Wall::West => Wall::East,
        }
    }

    /// Whether the wall runs along the x axis.
    pub fn is_horizontal(self) -> bool {
        matches!(self, Wall::North | Wall::South)
    }

    /// Wall length for a room of the given size.
    pub fn length(self, width: f64, depth: f64) -> f64 {
        if self.is_horizontal() {
            width
        } else {
            depth
        }
    }

    /// Yaw of an item standing with its back to this wall.
    pub fn facing_away_yaw(self) -> f64 {
        use core::f64::consts::{FRAC_PI_2, PI};
        match self {
            Wall::South => 0.0,
            Wall::North => PI,
            Wall::East => FRAC_PI_2,
            Wall::West => 3.0 * FRAC_PI_2,
        }
    }
}

impl FromStr for Wall {
    type Err = UnknownName;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "north" => Ok(Wall::North),
            "south" => Ok(Wall::South),
            "east" => Ok(Wall::East),
            "west" => Ok(Wall::West),
            _ => Err(UnknownName(s.to_owned())),
        }
    }
}

/// Reserved ids that address parts of the room shell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArchElement {
    Wall(Wall),
    Floor,
    Ceiling,
}

impl ArchElement {
    pub fn parse(id: &str) -> Option<ArchElement> {
        match id {
            "floor" => Some(ArchElement::Floor),
            "ceiling" => Some(ArchElement::Ceiling),
            _ => id
                .strip_prefix("wall:")
                .and_then(|w| w.parse().ok())
                .map(ArchElement::Wall),
        }
    }

    pub fn is_reserved(id: &str) -> bool {
        ArchElement::parse(id).is_some()
    }

    pub fn id(self) -> &'static str {
        match self {
            ArchElement::Wall(w) => w.id(),
            ArchElement::Floor => "floor",
            ArchElement::Ceiling => "ceiling",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    AgainstWall,
    NearWall,
    AwayFromWall,
    Corner,
    CeilingMounted,
    OnFloor,
    InFrontOf,
    Behind,
    LeftOf,
    RightOf,
    FaceToFace,
    BackToBack,
    SideBySide,
    AlignedWith,
    OnTopOf,
    Touching,
    Near,
    FarFrom,
    DistanceRange,
}

impl RelationKind {
    pub const ALL: [RelationKind; 19] = [
        RelationKind::AgainstWall,
        RelationKind::NearWall,
        RelationKind::AwayFromWall,
        RelationKind::Corner,
        RelationKind::CeilingMounted,
        RelationKind::OnFloor,
        RelationKind::InFrontOf,
        RelationKind::Behind,
        RelationKind::LeftOf,
        RelationKind::RightOf,
        RelationKind::FaceToFace,
        RelationKind::BackToBack,
        RelationKind::SideBySide,
        RelationKind::AlignedWith,
        RelationKind::OnTopOf,
        RelationKind::Touching,
        RelationKind::Near,
        RelationKind::FarFrom,
        RelationKind::DistanceRange,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::AgainstWall => "against_wall",
            RelationKind::NearWall => "near_wall",
            RelationKind::AwayFromWall => "away_from_wall",
            RelationKind::Corner => "corner",
            RelationKind::CeilingMounted => "ceiling_mounted",
            RelationKind::OnFloor => "on_floor",
            RelationKind::InFrontOf => "in_front_of",
            RelationKind::Behind => "behind",
            RelationKind::LeftOf => "left_of",
            RelationKind::RightOf => "right_of",
            RelationKind::FaceToFace => "face_to_face",
            RelationKind::BackToBack => "back_to_back",
            RelationKind::SideBySide => "side_by_side",
            RelationKind::AlignedWith => "aligned_with",
            RelationKind::OnTopOf => "on_top_of",
            RelationKind::Touching => "touching",
            RelationKind::Near => "near",
            RelationKind::FarFrom => "far_from",
            RelationKind::DistanceRange => "distance_range",
        }
    }

    /// Relations whose object must be a `wall:*` id.
    pub fn targets_wall(self) -> bool {
        matches!(
            self,
            RelationKind::AgainstWall | RelationKind::NearWall | RelationKind::AwayFromWall | RelationKind::Corner
        )
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationKind {
    type Err = UnknownName;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationKind::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| UnknownName(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FurnitureItem {
    pub id: String,
    pub category: String,
    pub count: u32,
    pub width: f64,
    pub depth: f64,
    pub height: f64,
    /// Radians in `[0, 2π)`.
    pub yaw: f64,
    pub color: Option<String>,
    pub material: Option<String>,
    pub mount: Mount,
}

impl FurnitureItem {
    /// An item with catalog dimensions, or `None` for unknown categories.
    pub fn from_catalog(id: &str, category: &str) -> Option<Self> {
        let entry = catalog::lookup(category)?;
        Some(Self::new(id, category, entry.width, entry.depth, entry.height).with_mount(entry.mount))
    }

    pub fn new(id: &str, category: &str, width: f64, depth: f64, height: f64) -> Self {
        Self {
            id: id.to_owned(),
            category: category.to_owned(),
            count: 1,
            width,
            depth,
            height,
            yaw: 0.0,
            color: None,
            material: None,
            mount: Mount::Floor,
        }
    }

    pub fn with_mount(mut self, mount: Mount) -> Self {
        self.mount = mount;
        self
    }

    pub fn with_count(mut self, count: u32) -> Self {
        self.count = count;
        self
    }

    pub fn footprint_area(&self) -> f64 {
        self.width * self.depth
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationEdge {
    pub subject: String,
    pub object: String,
    pub relation: RelationKind,
    pub params: BTreeMap<String, f64>,
}

impl RelationEdge {
    pub fn new(subject: &str, relation: RelationKind, object: &str) -> Self {
        Self {
            subject: subject.to_owned(),
            object: object.to_owned(),
            relation,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_owned(), value);
        self
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.get(key).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Door {
    pub wall: Wall,
    /// Distance from the wall's west or south end to the opening's near edge.
    pub offset: f64,
    pub width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub wall: Wall,
    pub offset: f64,
    pub width: f64,
    pub sill: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Room {
    pub room_type: RoomType,
    pub width: f64,
    pub depth: f64,
    pub wall_height: f64,
    pub doors: Vec<Door>,
    pub windows: Vec<Window>,
}

impl Room {
    pub const MIN_SIZE: f64 = 1.0;
    pub const MAX_SIZE: f64 = 50.0;

    pub fn bounds(&self) -> Bounds {
        Bounds {
            width: self.width,
            depth: self.depth,
        }
    }

    pub fn area(&self) -> f64 {
        self.width * self.depth
    }

    pub fn diagonal(&self) -> f64 {
        crate::math::hypot(self.width, self.depth)
    }

    /// Checks the shell invariants and returns the first failure.
    pub fn check(&self) -> Result<(), SceneError> {
        match self.issues().into_iter().next() {
            Some(issue) => Err(SceneError::InvalidDimensions(issue.message)),
            None => Ok(()),
        }
    }

    fn issues(&self) -> Vec<ValidationIssue> {
        let mut out = Vec::new();
        let in_range = |v: f64| v.is_finite() && (Self::MIN_SIZE..=Self::MAX_SIZE).contains(&v);
        if !in_range(self.width) || !in_range(self.depth) {
            out.push(ValidationIssue::error(
                "room",
                IssueCode::InvalidRoom,
                format!("room {}x{} m outside [1, 50] m", self.width, self.depth),
            ));
            return out;
        }
        if !(self.wall_height.is_finite() && self.wall_height > 0.0) {
            out.push(ValidationIssue::error("room", IssueCode::InvalidRoom, "wall height must be positive".into()));
        }
        let mut spans: Vec<(Wall, f64, f64, &'static str)> = Vec::new();
        for d in &self.doors {
            spans.push((d.wall, d.offset, d.width, "door"));
        }
        for w in &self.windows {
            spans.push((w.wall, w.offset, w.width, "window"));
            if !(w.sill >= 0.0 && w.sill < self.wall_height) {
                out.push(ValidationIssue::error("room", IssueCode::InvalidRoom, "window sill outside wall".into()));
            }
        }
        for &(wall, offset, width, what) in &spans {
            let len = wall.length(self.width, self.depth);
            if !(width > 0.0 && offset >= 0.0 && offset + width <= len + 1e-9) {
                out.push(ValidationIssue::error(
                    "room",
                    IssueCode::InvalidRoom,
                    format!("{what} at offset {offset} width {width} exceeds {} wall", wall.as_str()),
                ));
            }
        }
        for (i, a) in spans.iter().enumerate() {
            for b in &spans[i + 1..] {
                if a.0 == b.0 && a.1 < b.1 + b.2 - 1e-9 && b.1 < a.1 + a.2 - 1e-9 {
                    out.push(ValidationIssue::error(
                        "room",
                        IssueCode::InvalidRoom,
                        format!("openings overlap on {} wall", a.0.as_str()),
                    ));
                }
            }
        }
        out
    }
}

/// Optional room overrides carried by a scene.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RoomSpec {
    pub width: Option<f64>,
    pub depth: Option<f64>,
    pub wall_height: Option<f64>,
    pub doors: Option<Vec<Door>>,
    pub windows: Option<Vec<Window>>,
}

/// The structured triple of room type, furniture, and relations.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneOrganization {
    pub room_type: RoomType,
    pub room: Option<RoomSpec>,
    pub furniture: Vec<FurnitureItem>,
    pub relations: Vec<RelationEdge>,
}

impl SceneOrganization {
    pub fn new(room_type: RoomType) -> Self {
        Self {
            room_type,
            room: None,
            furniture: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn item(&self, id: &str) -> Option<&FurnitureItem> {
        self.furniture.iter().find(|f| f.id == id)
    }

    /// Builds the room shell, applying any overrides.
    pub fn build_room(&self) -> Result<Room, SceneError> {
        let spec = self.room.clone().unwrap_or_default();
        let dims = match (spec.width, spec.depth) {
            (None, None) => None,
            (w, d) => {
                let defaults = catalog::room_defaults(self.room_type);
                Some((w.unwrap_or(defaults.width), d.unwrap_or(defaults.depth)))
            }
        };
        let mut room = build_room(self.room_type, dims)?;
        if let Some(h) = spec.wall_height {
            room.wall_height = h;
        }
        if let Some(doors) = spec.doors {
            room.doors = doors;
        }
        if let Some(windows) = spec.windows {
            room.windows = windows;
        }
        room.check()?;
        Ok(room)
    }

    /// Expands `count > 1` items into indexed clones (`chair#1`, `chair#2`)
    /// and fans relations on a base id out to every clone.
    pub fn expand(&self) -> ExpandedScene {
        let mut items = Vec::new();
        let mut clones: BTreeMap<&str, Vec<String>> = BTreeMap::new();
        for item in &self.furniture {
            let ids: Vec<String> = if item.count > 1 {
                (1..=item.count).map(|k| format!("{}#{k}", item.id)).collect()
            } else {
                alloc::vec![item.id.clone()]
            };
            for id in &ids {
                let mut clone = item.clone();
                clone.id = id.clone();
                clone.count = 1;
                items.push(clone);
            }
            clones.insert(item.id.as_str(), ids);
        }
        let resolve = |id: &str| -> Vec<String> {
            clones.get(id).cloned().unwrap_or_else(|| alloc::vec![id.to_owned()])
        };
        let mut relations = Vec::new();
        for rel in &self.relations {
            for s in resolve(&rel.subject) {
                for o in resolve(&rel.object) {
                    if s == o {
                        continue;
                    }
                    let mut edge = rel.clone();
                    edge.subject = s.clone();
                    edge.object = o;
                    relations.push(edge);
                }
            }
        }
        ExpandedScene { items, relations }
    }
}

/// Furniture and relations after count expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedScene {
    pub items: Vec<FurnitureItem>,
    pub relations: Vec<RelationEdge>,
}

impl ExpandedScene {
    pub fn item(&self, id: &str) -> Option<&FurnitureItem> {
        self.items.iter().find(|f| f.id == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IssueCode {
    DuplicateId,
    DanglingReference,
    InvalidDimension,
    InvalidCount,
    InvalidYaw,
    SupportCount,
    SupportMount,
    AmbiguousSupport,
    InvalidDistanceRange,
    SelfRelation,
    WallTarget,
    InvalidRoom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationIssue {
    pub severity: Severity,
    pub id: String,
    pub code: IssueCode,
    pub message: String,
}

impl ValidationIssue {
    fn error(id: &str, code: IssueCode, message: String) -> Self {
        Self {
            severity: Severity::Error,
            id: id.to_owned(),
            code,
            message,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SceneError {
    #[error("invalid room dimensions: {0}")]
    InvalidDimensions(String),
    #[error("dangling reference `{0}`")]
    DanglingReference(String),
    #[error("invalid scene: {0}")]
    Invalid(String),
}

/// Checks every structural invariant of an organization. Returns an empty
/// list iff the organization is valid.
pub fn validate_organization(org: &SceneOrganization) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    let mut seen = BTreeSet::new();
    for item in &org.furniture {
        if !seen.insert(item.id.as_str()) {
            issues.push(ValidationIssue::error(&item.id, IssueCode::DuplicateId, format!("duplicate id `{}`", item.id)));
        }
        if ArchElement::is_reserved(&item.id) || item.id.contains('#') {
            issues.push(ValidationIssue::error(&item.id, IssueCode::DuplicateId, format!("`{}` is a reserved id", item.id)));
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !(positive(item.width) && positive(item.depth) && positive(item.height)) {
            issues.push(ValidationIssue::error(&item.id, IssueCode::InvalidDimension, "dimensions must be positive".into()));
        }
        if item.count < 1 {
            issues.push(ValidationIssue::error(&item.id, IssueCode::InvalidCount, "count must be at least 1".into()));
        }
        if !(item.yaw.is_finite() && (0.0..TAU).contains(&item.yaw)) {
            issues.push(ValidationIssue::error(&item.id, IssueCode::InvalidYaw, "yaw outside [0, 2π)".into()));
        }
    }

    for rel in &org.relations {
        let subject = org.item(&rel.subject);
        if subject.is_none() {
            issues.push(ValidationIssue::error(&rel.subject, IssueCode::DanglingReference, format!("unknown subject `{}`", rel.subject)));
        }
        let object_known = org.item(&rel.object).is_some() || ArchElement::is_reserved(&rel.object);
        if !object_known {
            issues.push(ValidationIssue::error(&rel.object, IssueCode::DanglingReference, format!("unknown object `{}`", rel.object)));
        }
        if rel.subject == rel.object {
            issues.push(ValidationIssue::error(&rel.subject, IssueCode::SelfRelation, "relation to itself".into()));
        }
        if rel.relation.targets_wall() && object_known && !matches!(ArchElement::parse(&rel.object), Some(ArchElement::Wall(_))) {
            issues.push(ValidationIssue::error(
                &rel.subject,
                IssueCode::WallTarget,
                format!("{} needs a wall:* object", rel.relation),
            ));
        }
        if rel.relation == RelationKind::OnTopOf {
            if ArchElement::is_reserved(&rel.object) {
                issues.push(ValidationIssue::error(&rel.subject, IssueCode::SupportMount, "on_top_of needs a furniture support".into()));
            }
            if let Some(s) = subject {
                if s.mount != Mount::OnTop {
                    issues.push(ValidationIssue::error(&s.id, IssueCode::SupportMount, "on_top_of subject must use mount on_top".into()));
                }
            }
            if org.item(&rel.object).is_some_and(|o| o.count > 1) {
                issues.push(ValidationIssue::error(&rel.object, IssueCode::AmbiguousSupport, "support must have count 1".into()));
            }
        }
        if rel.relation == RelationKind::DistanceRange {
            match (rel.param("min"), rel.param("max")) {
                (Some(min), Some(max)) if min >= 0.0 && max >= 0.0 && min <= max => {}
                _ => issues.push(ValidationIssue::error(
                    &rel.subject,
                    IssueCode::InvalidDistanceRange,
                    "distance_range needs 0 <= min <= max".into(),
                )),
            }
        }
    }

    for item in org.furniture.iter().filter(|i| i.mount == Mount::OnTop) {
        let supports = org
            .relations
            .iter()
            .filter(|r| r.relation == RelationKind::OnTopOf && r.subject == item.id)
            .count();
        if supports != 1 {
            issues.push(ValidationIssue::error(
                &item.id,
                IssueCode::SupportCount,
                format!("on_top item has {supports} on_top_of relations, expected 1"),
            ));
        }
    }

    if org.room.is_some() {
        match org.build_room() {
            Ok(_) => {}
            Err(SceneError::InvalidDimensions(msg)) | Err(SceneError::Invalid(msg)) | Err(SceneError::DanglingReference(msg)) => {
                issues.push(ValidationIssue::error("room", IssueCode::InvalidRoom, msg));
            }
        }
    }
    issues
}

/// Builds a rectangular shell with one centred south door and the room
/// type's default window on the north wall.
pub fn build_room(room_type: RoomType, dims: Option<(f64, f64)>) -> Result<Room, SceneError> {
    let defaults = catalog::room_defaults(room_type);
    let (width, depth) = dims.unwrap_or((defaults.width, defaults.depth));
    let in_range = |v: f64| v.is_finite() && (Room::MIN_SIZE..=Room::MAX_SIZE).contains(&v);
    if !in_range(width) || !in_range(depth) {
        return Err(SceneError::InvalidDimensions(format!(
            "{width}x{depth} m outside [{}, {}] m",
            Room::MIN_SIZE,
            Room::MAX_SIZE
        )));
    }
    let door_width = catalog::DOOR_WIDTH;
    let door = Door {
        wall: Wall::South,
        offset: (width - door_width) / 2.0,
        width: door_width,
    };
    let window_width = defaults.window_width.min(width * 0.6);
    let window = Window {
        wall: Wall::North,
        offset: (width - window_width) / 2.0,
        width: window_width,
        sill: defaults.window_sill,
    };
    let room = Room {
        room_type,
        width,
        depth,
        wall_height: defaults.wall_height,
        doors: alloc::vec![door],
        windows: alloc::vec![window],
    };
    room.check()?;
    Ok(room)
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::DuplicateId => "duplicate_id",
            IssueCode::DanglingReference => "dangling_reference",
            IssueCode::InvalidDimension => "invalid_dimension",
            IssueCode::InvalidCount => "invalid_count",
            IssueCode::InvalidYaw => "invalid_yaw",
            IssueCode::SupportCount => "support_count",
            IssueCode::SupportMount => "support_mount",
            IssueCode::AmbiguousSupport => "ambiguous_support",
            IssueCode::InvalidDistanceRange => "invalid_distance_range",
            IssueCode::SelfRelation => "self_relation",
            IssueCode::WallTarget => "wall_target",
            IssueCode::InvalidRoom => "invalid_room",
        }
    }
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bedroom() -> SceneOrganization {
        let mut org = SceneOrganization::new(RoomType::Bedroom);
        for (id, cat) in [("bed", "bed"), ("nightstand", "nightstand"), ("wardrobe", "wardrobe"), ("desk", "desk"), ("chair", "chair")] {
            org.furniture.push(FurnitureItem::from_catalog(id, cat).unwrap());
        }
        org.relations.push(RelationEdge::new("bed", RelationKind::AgainstWall, "wall:north"));
        org.relations.push(RelationEdge::new("nightstand", RelationKind::LeftOf, "bed"));
        org
    }

    #[test]
    fn valid_bedroom_has_no_issues() {
        assert!(validate_organization(&bedroom()).is_empty());
    }

    #[test]
    fn duplicate_id_reported_once() {
        let mut org = bedroom();
        org.furniture.push(FurnitureItem::from_catalog("chair", "chair").unwrap());
        let issues = validate_organization(&org);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].code, IssueCode::DuplicateId);
        assert_eq!(issues[0].id, "chair");
    }

    #[test]
    fn on_top_without_support_reported() {
        let mut org = bedroom();
        org.furniture.push(FurnitureItem::from_catalog("cup", "cup").unwrap());
        let issues = validate_organization(&org);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].code, IssueCode::SupportCount);
        assert_eq!(issues[0].severity, Severity::Error);
    }

    #[test]
    fn dangling_subject_reported() {
        let mut org = bedroom();
        org.relations.push(RelationEdge::new("lamp2", RelationKind::Near, "bed"));
        let issues = validate_organization(&org);
        assert_eq!(issues[0].code, IssueCode::DanglingReference);
        assert_eq!(issues[0].id, "lamp2");
    }

    #[test]
    fn bad_distance_range() {
        let mut org = bedroom();
        org.relations.push(
            RelationEdge::new("desk", RelationKind::DistanceRange, "bed")
                .with_param("min", 3.0)
                .with_param("max", 2.0),
        );
        assert_eq!(validate_organization(&org)[0].code, IssueCode::InvalidDistanceRange);
    }

    #[test]
    fn build_room_default_door() {
        let room = build_room(RoomType::Bedroom, Some((5.0, 4.0))).unwrap();
        assert_eq!(room.doors.len(), 1);
        assert_eq!(room.doors[0].wall, Wall::South);
        assert_eq!(room.doors[0].width, 0.9);
        assert!((room.doors[0].offset - 2.05).abs() < 1e-12);
        assert_eq!(room.windows.len(), 1);
    }

    #[test]
    fn build_room_rejects_small() {
        assert!(matches!(
            build_room(RoomType::Bedroom, Some((0.5, 4.0))),
            Err(SceneError::InvalidDimensions(_))
        ));
        assert!(build_room(RoomType::Bedroom, Some((51.0, 4.0))).is_err());
    }

    #[test]
    fn build_room_kitchen_defaults() {
        let room = build_room(RoomType::Kitchen, None).unwrap();
        assert_eq!((room.width, room.depth, room.wall_height), (3.5, 3.0, 2.7));
    }

    #[test]
    fn overlapping_openings_rejected() {
        let mut org = bedroom();
        org.room = Some(RoomSpec {
            width: Some(5.0),
            depth: Some(4.0),
            doors: Some(alloc::vec![
                Door { wall: Wall::South, offset: 1.0, width: 0.9 },
                Door { wall: Wall::South, offset: 1.5, width: 0.9 },
            ]),
            ..RoomSpec::default()
        });
        let issues = validate_organization(&org);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].code, IssueCode::InvalidRoom);
    }

    #[test]
    fn count_expansion_fans_out_relations() {
        let mut org = SceneOrganization::new(RoomType::DiningRoom);
        org.furniture.push(FurnitureItem::from_catalog("table", "dining_table").unwrap());
        org.furniture.push(FurnitureItem::from_catalog("chair", "chair").unwrap().with_count(3));
        org.relations.push(RelationEdge::new("chair", RelationKind::Near, "table"));
        let expanded = org.expand();
        let ids: Vec<&str> = expanded.items.iter().map(|i| i.id.as_str()).collect();
        assert_eq!(ids, ["table", "chair#1", "chair#2", "chair#3"]);
        assert_eq!(expanded.relations.len(), 3);
        assert!(expanded.relations.iter().all(|r| r.object == "table"));
    }

    #[test]
    fn arch_ids_parse() {
        assert_eq!(ArchElement::parse("wall:north"), Some(ArchElement::Wall(Wall::North)));
        assert_eq!(ArchElement::parse("floor"), Some(ArchElement::Floor));
        assert_eq!(ArchElement::parse("wall:up"), None);
        for kind in RelationKind::ALL {
            assert_eq!(kind.as_str().parse::<RelationKind>().unwrap(), kind);
        }
    }
}
