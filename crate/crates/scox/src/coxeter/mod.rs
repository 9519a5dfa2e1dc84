//! Coxeter matrices, classification, root systems and element arithmetic.

mod classify;
mod roots;
mod subset;
mod system;

pub use classify::{classify_component, CoxeterMatrix, CoxeterType};
pub use roots::ZPhi;
pub use subset::{Gen, GenSubset, MAX_RANK};
pub use system::{Component, CoxeterSystem, Element};

