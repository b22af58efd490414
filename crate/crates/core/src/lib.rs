pub mod cayley;
pub mod cli;
pub mod corpus;
pub mod exact_math;
pub mod invariants;
pub mod multiplicity;
pub mod patchwork;
pub mod polytope;
pub mod tropical;
