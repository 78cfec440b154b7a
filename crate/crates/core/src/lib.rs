//! Extremal problems for even cycles in hypercubes.
//!
//! Hypercube subgraphs and cycle enumeration live in [`cube`] and [`cycles`].
//! [`partite`] builds the layer 2/3 embedding of `C_2ℓ` for odd `ℓ >= 7` and
//! its 3-partite representation. [`hypergraph`] holds 3-graphs, links,
//! two-lifts and dense `K_{2,q}` extraction. [`prob`] runs the random
//! colouring construction, [`exact`] the brute-force extremal oracles, and
//! [`bounds`] the exact exponent arithmetic.

pub mod bounds;
pub mod budget;
pub mod cube;
pub mod cycles;
pub mod error;
pub mod exact;
pub mod hypergraph;
pub mod partite;
pub mod prob;

pub use budget::Budget;
pub use cube::{are_adjacent, build_qn, layer, CubeEdge, Subgraph, Vertex, MAX_DIM};
pub use cycles::{
    census, count_cycles, enumerate_cycles, is_cycle_free, CycleCensus, CycleWitness, Freeness,
};
pub use error::{Error, Result};
pub use hypergraph::{SimpleGraph, ThreeGraph, TwoLiftWitness};
pub use partite::{build_representation, verify_representation, Representation};
