pub mod detectors;
pub mod discharge;
pub mod graph;
pub mod group;
pub mod plane;
pub mod solver;
