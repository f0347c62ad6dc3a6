//! Checkerboard embeddings of ∗-graphs with vertices of degree 4 and 6 into
//! nonorientable surfaces.
//!
//! The pipeline runs [`StarGraph`] → [`RotatingSplittingCircuit`] →
//! [`SignedStarChordDiagram`] → expansion ([`SignedChordDiagram`]) → ranks of
//! GF(2) intersection matrices over permissible partitions. The
//! [`surface_oracle`] recomputes the same surfaces by tracing cells directly.

pub mod chord_model;
pub mod circuits;
pub mod error;
pub mod fast_tests;
pub mod format;
pub mod generate;
pub mod genus_solver;
pub mod gf2;
pub mod report;
pub mod star_graph;
pub mod surface_oracle;
pub mod verify;

pub use chord_model::{
    build_star_chord_diagram, expand, intersection_matrix, reverse_segment_transform,
    surgery_circle_count, Chord, ChordGroup, Expansion, Sign, SignedChordDiagram,
    SignedStarChordDiagram, StarElement,
};
pub use circuits::{
    build_rotating_splitting_circuit, build_seeded, cycles_of, RotatingSplittingCircuit,
    TransitionSystem, VertexKind,
};
pub use error::{Error, Result};
pub use fast_tests::{klein_embeddable, rp2_embeddable};
pub use genus_solver::{
    genus_spectrum, is_genus_achievable, source_sink_gate, GenusReport, Orientability, Partition,
    Side,
};
pub use gf2::Gf2Matrix;
pub use star_graph::{slot_relation, AngleRelation, HalfEdgeRef, StarGraph};
pub use surface_oracle::{atom_spectrum, trace_atom, AngleColoring, AtomSurface};
