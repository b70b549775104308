//! Two-cycle set partitions and their use for cooperatively coloring pairs of
//! chain-structured systems.

mod chain_pair;
mod two_cycle;

pub use chain_pair::{canonicalize_chain, coop_color_chain_pair};
pub use two_cycle::{
    check_br_constraints, partition_two_cycles, BrPartition, BrVerdict, CaseTag, Component,
    PartitionTrace, Pivot, Side, TwoCycleInstance,
};
