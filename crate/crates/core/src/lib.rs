//! Greedy submodular maximization over information DAGs.
//!
//! A group of agents, one strategy choice each, jointly maximizes a monotone
//! normalized submodular set function. Who saw whose choice is recorded as a
//! DAG; each agent picks the strategy with the best marginal reward given the
//! choices it observed. This crate provides:
//!
//! * the set-function oracle layer with exhaustive property checkers and a
//!   brute-force reference solver ([`submodular`]),
//! * the stock objectives: grid disk coverage, the coloring-adversarial
//!   function, the universal (distinct-count) function, and the reduction
//!   from intersecting to disjoint strategy sets ([`objectives`]),
//! * information-DAG plumbing plus exact max-clique / chromatic solvers and
//!   the linear-time greedy topological coloring ([`graph`]),
//! * the sequential and synchronous greedy engines ([`greedy`]),
//! * a priori performance bounds with checkable certificates ([`bounds`]),
//! * seeded random and structured graph generators ([`gen`]).
//!
//! The crate is `no_std` + `alloc`; IO, file formats, the CLI, and the
//! experiment harness live in the companion `submax-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod error;
pub mod gen;
pub mod graph;
pub mod greedy;
pub mod objectives;
pub mod rng;
pub mod submodular;

pub use error::{Error, Result};
