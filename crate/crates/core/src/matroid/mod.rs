//! Matroids as independence oracles.
//!
//! [`MatroidSpec`] holds the concrete families (free, uniform, partition,
//! graphic, explicit). [`MatroidView`] wraps one of them and composes
//! restriction, contraction and direct sum without ever materialising a set
//! family; rank, closure and circuits are all computed from independence
//! queries.

mod spec;
mod view;

pub use spec::{
    ExplicitMatroid, GraphicMatroid, MatroidSpec, Oracle, PartitionBlock, PartitionMatroid,
};
pub use view::MatroidView;
