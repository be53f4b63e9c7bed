//! Finite groups, group partitions, and matroids on the full gain graph
//! `K_n^Γ`: the graphic matroid, the balanced-cycle elementary lift, and a
//! rank-2 lift of `M(K_3^Γ)` built from its hyperplanes.

mod graph;
mod group;

pub use graph::{
    balanced_circuit_audit, full_gain_graph, graphic_matroid, pair_profile, rank2_hyperplanes, rank2_lift_k3,
    switching_orbit, zaslavsky_lift, BalanceAudit, CycleRow, GainEdge, GainGraph, Rank2Lift,
};
pub use group::{group_from_table, group_partitions, primitive_partition, FinGroup, GroupPartition, MAX_GROUP_ORDER};
