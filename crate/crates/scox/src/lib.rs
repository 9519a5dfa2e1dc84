//! The singular Coxeter monoid of a finite Coxeter system.
//!
//! Morphisms are parabolic double cosets `W_J \ W / W_I`, composed with the
//! star (Demazure) product. The crate provides:
//!
//! * [`coxeter`]: Coxeter matrices, finite-type classification, exact element
//!   arithmetic on the root set, star product and Bruhat order;
//! * [`cosets`]: double cosets with minima, maxima, redundancies and lengths;
//! * [`expressions`]: singular expressions, evaluation, forward paths, the
//!   reducedness criteria and constructive reduced expressions;
//! * [`relations`]: the quadratic, up-up, down-down and switchback relations,
//!   rotation sequences, and switchback tables;
//! * [`rewrite`]: normalization to reduced expressions, reduced-expression
//!   enumeration and the reduced-expression graph;
//! * [`complexes`]: the singular Coxeter complex 2-skeleton;
//! * [`webs`]: the type-A web calculus;
//! * [`io`]: text and JSON formats.

pub mod complexes;
pub mod cosets;
pub mod coxeter;
pub mod error;
pub mod expressions;
pub mod io;
pub mod relations;
pub mod rewrite;
pub mod webs;

pub use cosets::{CosetLengths, DoubleCoset};
pub use coxeter::{CoxeterMatrix, CoxeterSystem, CoxeterType, Element, Gen, GenSubset};
pub use error::{Result, ScoxError};
pub use expressions::{Expression, MultistepExpression, Sign, Step};
pub use relations::{RelationInstance, RelationKind, RotationSequence};
