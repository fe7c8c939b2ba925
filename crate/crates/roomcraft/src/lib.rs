//! Command-line side of the RoomCraft layout engine: scene spec and layout
//! files, configuration, extraction providers, rendering, benchmarks.

pub use roomcraft_core as core;

pub mod bench;
pub mod cli;
pub mod config;
pub mod extraction;
pub mod layout_io;
pub mod pipeline;
pub mod render;
pub mod spec;
