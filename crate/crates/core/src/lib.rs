pub mod curves;
pub mod dynamics;
pub mod enumerate;
pub mod rotation_graph;
pub mod tischler;
