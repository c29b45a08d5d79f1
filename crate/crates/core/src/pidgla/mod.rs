//! The pullback dg Lie algebroid of a Lie pair: sections, the homological
//! vector field `Q`, and the contractions onto `B`.

pub mod contraction;
pub mod oracle;
pub mod sections;

pub use contraction::ContractionMaps;
pub use oracle::{PairSection, VectorFieldA1};
pub use sections::PullbackAlgebroid;
