//! Random-graph k-core stripping and k-factor search.
//!
//! The crate builds `G(n, c/n)`, peels it to its k-core, runs the STRIP
//! deletion process down to a subgraph `K` whose degrees lie in `[k, 2k]`,
//! and then looks for a k-factor of `K` through an f-factor gadget and a
//! blossom matcher. Brute-force Tutte checks back the matcher on small
//! inputs. See `examples/` for one program per capability.

pub mod analytics;
pub mod graph;
pub mod harness;
pub mod kcore;
pub mod kfactor;
pub mod randgraph;
pub mod seed;
pub mod strip;

pub use graph::{Graph, GraphError};
