//! Homological perturbation over a dg coefficient ring.

pub mod algebra;
pub mod constructions;
pub mod contraction;
pub mod module;
pub mod operator;
pub mod perturb;
pub mod toy;

pub use constructions::{exterior_contraction, hom_contraction, tensor_contraction};
pub use contraction::{CheckResult, Contraction, SmallModel, Space, VerifyReport};
pub use module::{FreeModule, ModElem, Structure};
pub use operator::{Linearity, Operator, RingDiff};
pub use perturb::{perturb, Perturbed, DEFAULT_MAX_ITER};
