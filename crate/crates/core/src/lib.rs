pub mod error;
pub mod phase;
pub mod geometry;
pub mod spectral2d;
pub mod report;
pub mod intertwine;
pub mod spectral3d;
pub mod campaign;
