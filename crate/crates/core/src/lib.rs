//! Finite solvable groups: A-group and A′-group recognition, a metabelian
//! family of A-groups outside the A′ class, and the constructive splitting
//! of two-prime A-groups into direct factors.

pub mod classify;
pub mod constructions;
pub mod error;
pub mod expr;
pub mod field;
pub mod group;
pub mod numtheory;
pub mod report;
pub mod steinitz;

pub use error::{Error, Result};
pub use group::{Action, ElemId, FiniteGroup, GroupElement, Limits, Subgroup};
