//! Coloring digraphs that avoid subdivisions of oriented cycles.
//!
//! Every conditional colorer returns either a proper coloring within a
//! proven bound or an explicit subdivision certificate that can be checked
//! independently with [`subdivision::validate_certificate`].

#![allow(clippy::needless_range_loop)]

pub mod coloring;
pub mod digraph;
pub mod error;
pub mod exact;
pub mod harness;
pub mod secancy;
pub mod star;
pub mod structural;
pub mod subdivision;
pub mod tournament;
pub mod tree;

pub use digraph::{is_proper, is_strong, underlying_graph, Coloring, Digraph, Graph};
pub use error::{Error, Result};
