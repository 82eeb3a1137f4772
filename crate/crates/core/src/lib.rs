//! Edge-domination structure analysis for modulator-parameterized
//! Edge Dominating Set: exact solvers, per-component structure profiles,
//! the kernelization pipeline, hardness-instance generators, and a
//! small-graph atlas.

pub mod atlas;
pub mod caps;
pub mod error;
pub mod exact;
pub mod graph;
pub mod instance;
pub mod kernel;
pub mod matching;
pub mod profile;
pub mod reductions;
pub mod verify;

pub use caps::Caps;
pub use error::{EdsError, Result};
pub use exact::{decide_eds, enumerate_min_eds, is_eds, meds, EdgeSet, MedsCache, MedsWitness};
pub use graph::{parse_graph, serialize_graph, CanonKey, ComponentView, Graph};
pub use instance::{parse_instance, serialize_instance, ModInstance};
pub use profile::{HProfile, LowerBoundKind, Verdict};
