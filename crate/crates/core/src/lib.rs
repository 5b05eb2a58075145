//! Exact computation of the inertia bound `α(G) ≤ min(n − n₊(W), n − n₋(W))`
//! and machine-checkable certificates that no weight matrix attains it.

pub mod graphs;
pub mod exactla;
pub mod independence;
pub mod certify;
pub mod search;
