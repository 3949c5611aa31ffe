pub mod arith;
pub mod cli;
pub mod depth;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod partition;
pub mod vic;
pub mod weights;
pub mod words;
