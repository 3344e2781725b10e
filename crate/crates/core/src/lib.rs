//! Monotone arc diagrams of plane triangulations in which every spine-crossing
//! edge is a down-up biarc.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, rendering and
//! the command-line tool live in the companion `biarc` crate.
#![no_std]

extern crate alloc;

pub mod algo_3tree;
pub mod algo_general;
pub mod algo_kleetope;
pub mod canonical_order;
pub mod diagram;
pub mod graph;
pub mod oracle;
