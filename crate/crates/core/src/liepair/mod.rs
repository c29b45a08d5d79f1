//! Lie pairs on a chart: validation, the Chevalley–Eilenberg differential,
//! Bott modules and admissible connections.

mod connection;
pub mod examples;
pub mod json;
mod model;
mod modules;

pub use connection::ConnectionTable;
pub use model::{InvariantCheck, LiePairModel, INVARIANTS};
pub use modules::{sort_signed, subsets, BottModule, ModuleTag};
