//! Exact-arithmetic workbench for group-graded rings.
//!
//! Decides the graded-ring hierarchy (strong, symmetric, nearly, essentially,
//! virtually and epsilon-strong, epsilon-finite, epsilon-crossed) on two
//! families of rings: Leavitt path algebras with their standard gradings and
//! unital partial skew group rings. Gradings can be pushed down to quotients
//! `G/N` and re-examined there.

pub mod analysis;
pub mod groups;
pub mod idempotents;
pub mod leavitt;
pub mod linalg;
pub mod numeric;
pub mod partial_skew;
pub mod scenario;
pub mod verdict;
