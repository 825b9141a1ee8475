//! Graph data augmentation: NodeSam and SubMix, seven baseline operators,
//! TUDataset I/O and a statistical harness for checking which structural
//! properties an augmentation preserves.

pub mod augment;
pub mod baselines;
pub mod cli;
pub mod dataset;
pub mod diffusion;
pub mod error;
pub mod graph;
pub mod nodesam;
pub mod rng;
pub mod submix;
pub mod verify;

pub use augment::{Augmenter, Method};
pub use error::{Error, Result};
pub use graph::{Graph, GraphSet, NodeId};
