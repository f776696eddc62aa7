//! Symbolic-dynamics invariants of finite directed multigraphs.
//!
//! The crate covers arc graphs and their iterates, exact zeta series,
//! coverings and basal graphs, eventually periodic walks with their
//! ultrametric, and a battery of necessary conditions for N-equivalence
//! (two graphs having isomorphic walk sets as N-sets).
//!
//! All arithmetic is exact. Graph values are immutable once built and every
//! operation is a pure function.
//!
//! ```
//! use std::sync::Arc;
//! use arcwalk::{arc_graph, standard_graph, is_isomorphic, StandardGraph};
//!
//! let b2 = standard_graph(StandardGraph::Bouquet(2)).unwrap();
//! let k2 = standard_graph(StandardGraph::Complete(2)).unwrap();
//! assert!(is_isomorphic(&Arc::new(arc_graph(&b2)), &Arc::new(k2)));
//! ```

pub mod equivalence;
pub mod error;
pub mod fibration;
pub mod functors;
pub mod graph;
pub mod iso;
pub mod morphism;
pub mod poly;
pub mod random;
pub mod standard;
pub mod text;
pub mod walks;
pub mod zeta;

pub use equivalence::{
    compare_battery, compose_level_arrows, find_level_inverse, homotopic, is_walkable,
    n_equivalence_evidence, walkable_subgraph, EquivalenceReport, Evidence, LevelArrow,
    LevelSearch, Refutation, LEVEL_SEARCH_LIMIT,
};
pub use error::{Error, Result};
pub use fibration::{
    agree_on_nodes, basal_of, is_basal, is_covering, is_epic_covering, lift_over_basing,
    tree_partition, truncated_tree, Basing, NodePartition, RepresentativeChoice,
    RepresentativePolicy,
};
pub use functors::{
    arc_graph, arc_graph_n, arc_graph_of_morphism, dynamic_from_nset, is_dynamic,
    nset_from_dynamic, sigma_endomorphism, source_truncation, FiniteNSet,
};
pub use graph::{validate, ArcData, Graph, RawGraph, Violation, PATH_SEP};
pub use iso::{graph_iso, is_isomorphic, NotIsomorphic};
pub use morphism::{all_morphisms, compose, coproduct, fiber_product, GraphMorphism};
pub use poly::IntPoly;
pub use standard::{standard_graph, StandardGraph};
pub use walks::{
    apply_block_code, cylinder_contains, distance, map_walk, periodic_walks, Dyadic, EPWalk, Path,
};
pub use zeta::{
    adjacency, char_poly, cycle_count, cycle_count_bruteforce, det_poly, zeta_data, zeta_equal,
    AdjMatrix, ZetaData,
};
