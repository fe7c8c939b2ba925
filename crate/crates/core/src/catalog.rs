//! Built-in furniture and room defaults.
//!
//! These are engineering defaults used when a scene omits sizes. They are
//! kept together in one table so they can be published and pinned.

use crate::scene::{Mount, RoomType};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogEntry {
    pub category: &'static str,
    pub width: f64,
    pub depth: f64,
    pub height: f64,
    pub mount: Mount,
}

const fn entry(category: &'static str, width: f64, depth: f64, height: f64, mount: Mount) -> CatalogEntry {
    CatalogEntry { category, width, depth, height, mount }
}

/// Default furniture dimensions in meters (width × depth × height).
pub const FURNITURE: &[CatalogEntry] = &[
    entry("armchair", 0.8, 0.8, 0.9, Mount::Floor),
    entry("bathtub", 1.7, 0.75, 0.6, Mount::Floor),
    entry("bed", 2.0, 1.6, 0.5, Mount::Floor),
    entry("bookshelf", 0.9, 0.3, 1.8, Mount::Floor),
    entry("cabinet", 0.8, 0.5, 0.9, Mount::Floor),
    entry("ceiling_light", 0.5, 0.5, 0.3, Mount::Ceiling),
    entry("chair", 0.5, 0.5, 0.9, Mount::Floor),
    entry("coffee_table", 1.0, 0.6, 0.45, Mount::Floor),
    entry("counter", 1.8, 0.6, 0.9, Mount::Floor),
    entry("cup", 0.1, 0.1, 0.12, Mount::OnTop),
    entry("desk", 1.2, 0.6, 0.75, Mount::Floor),
    entry("dining_table", 1.6, 0.9, 0.75, Mount::Floor),
    entry("dresser", 1.0, 0.5, 0.8, Mount::Floor),
    entry("fridge", 0.7, 0.7, 1.8, Mount::Floor),
    entry("lamp", 0.3, 0.3, 0.5, Mount::Floor),
    entry("mirror", 0.6, 0.05, 0.9, Mount::Wall),
    entry("nightstand", 0.5, 0.4, 0.55, Mount::Floor),
    entry("painting", 0.8, 0.05, 0.6, Mount::Wall),
    entry("plant", 0.4, 0.4, 1.0, Mount::Floor),
    entry("shower", 0.9, 0.9, 2.1, Mount::Floor),
    entry("side_table", 0.5, 0.5, 0.55, Mount::Floor),
    entry("sink", 0.6, 0.5, 0.9, Mount::Floor),
    entry("sofa", 2.0, 0.9, 0.8, Mount::Floor),
    entry("stove", 0.6, 0.6, 0.9, Mount::Floor),
    entry("table", 1.4, 0.8, 0.75, Mount::Floor),
    entry("toilet", 0.4, 0.7, 0.8, Mount::Floor),
    entry("tv", 1.2, 0.1, 0.7, Mount::Floor),
    entry("tv_stand", 1.5, 0.4, 0.5, Mount::Floor),
    entry("vanity", 0.9, 0.5, 0.85, Mount::Floor),
    entry("vase", 0.2, 0.2, 0.3, Mount::OnTop),
    entry("wardrobe", 1.2, 0.6, 2.0, Mount::Floor),
];

pub fn lookup(category: &str) -> Option<&'static CatalogEntry> {
    FURNITURE.iter().find(|e| e.category == category)
}

/// Default shell dimensions and window for one room type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoomDefaults {
    pub room_type: RoomType,
    pub width: f64,
    pub depth: f64,
    pub wall_height: f64,
    pub window_width: f64,
    pub window_sill: f64,
}

pub const ROOMS: &[RoomDefaults] = &[
    RoomDefaults { room_type: RoomType::LivingRoom, width: 5.5, depth: 4.5, wall_height: 2.7, window_width: 1.8, window_sill: 0.9 },
    RoomDefaults { room_type: RoomType::Bathroom, width: 2.5, depth: 2.0, wall_height: 2.7, window_width: 0.6, window_sill: 1.4 },
    RoomDefaults { room_type: RoomType::DiningRoom, width: 4.0, depth: 3.5, wall_height: 2.7, window_width: 1.4, window_sill: 0.9 },
    RoomDefaults { room_type: RoomType::Kitchen, width: 3.5, depth: 3.0, wall_height: 2.7, window_width: 1.0, window_sill: 1.0 },
    RoomDefaults { room_type: RoomType::Bedroom, width: 4.5, depth: 4.0, wall_height: 2.7, window_width: 1.2, window_sill: 0.9 },
];

pub fn room_defaults(room_type: RoomType) -> &'static RoomDefaults {
    ROOMS
        .iter()
        .find(|r| r.room_type == room_type)
        .expect("every room type has defaults")
}

pub const DOOR_WIDTH: f64 = 0.9;
pub const DOOR_HEIGHT: f64 = 2.1;
pub const WINDOW_HEIGHT: f64 = 1.2;
/// Bottom of wall-mounted items unless the wall is too short.
pub const WALL_MOUNT_Z: f64 = 1.2;
