//! Equitable list forest colorings.
//!
//! A coloring of a graph is *forest-inducing* when every color class induces
//! an acyclic subgraph, and *equitable* when no color is used on more than
//! ⌈n/k⌉ vertices, where k is the uniform list size. This crate provides:
//!
//! - constructive solvers for complete graphs, 2-degenerate graphs,
//!   3-degenerate claw-free graphs and (declared) planar graphs
//!   ([`solvers`]), all built on a single ordered-set reduction kernel
//!   ([`reduce`]);
//! - a ground-truth verifier for list assignments, caps and per-class
//!   acyclicity ([`verify`]);
//! - an exhaustive backtracking oracle for desk-scale instances ([`oracle`]);
//! - rotation-system plane graphs with face tracing, and an exact-rational
//!   charge-bookkeeping audit over them ([`plane`], [`discharging`]);
//! - seeded instance generators and a command-line front end ([`gen`],
//!   [`cli`]).

#![forbid(unsafe_code)]

pub mod cli;
pub mod discharging;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod plane;
pub mod reduce;
pub mod solvers;
pub mod verify;

pub use graph::{Graph, VertexOrdering};
pub use verify::{
    ceil_cap, verify_equitable_arboreal, Coloring, ListAssignment, Verdict, Violation,
};
