//! Files, instance generation, rendering and batch runs around the
//! `mrp-core` solver.

pub mod batch;
pub mod generate;
pub mod io;
pub mod lpfile;
pub mod render;
