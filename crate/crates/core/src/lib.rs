pub mod certify;
pub mod cli;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod lowerbound;
pub mod planarity;
pub mod rational;
pub mod report;
pub mod search;
pub mod surgery;
pub mod workers;

pub use error::{Error, Result};
pub use graph::{Graph, LevelDecomposition};
pub use rational::Rational;
