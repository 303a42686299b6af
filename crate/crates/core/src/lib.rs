//! Multisets without consecutive elements, Grand-Dyck paths avoiding `DUD`,
//! and directed animals on the square and triangular lattices, with the
//! bijections between them and their generating functions.

pub mod bijections;
pub mod cli;
pub mod heap_animal;
pub mod lattice_path;
pub mod multiset;
pub mod render;
pub mod sequences;
pub mod series;
pub mod table;
pub mod verify;
