//! Equivalence testing of the rank pipeline against cell tracing.
//!
//! For a graph that passes the gate, every angle coloring is traced directly
//! and mapped to the permissible partition it induces; the two computations
//! must agree coloring by coloring, the map must be a bijection onto the
//! permissible partitions, the surgery circle counts must match the coranks,
//! and the fast tests must agree with the spectrum.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::circuits::build_rotating_splitting_circuit;
use crate::error::{Error, Result};
use crate::fast_tests::{klein_on_expansion, rp2_on_expansion, KleinOptions};
use crate::format::write_graph;
use crate::generate::random_graphs;
use crate::genus_solver::{
    all_permissible_partitions, expansion_for, side_ranks, source_sink_gate, spectrum_of_expansion,
    Orientability, Partition, Side,
};
use crate::star_graph::StarGraph;
use crate::surface_oracle::{
    partition_for_coloring, separation_surgery_check, trace_atom, AngleColoring,
    ORACLE_VERTEX_LIMIT,
};

/// A disagreement, with the graph in file format for reproduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub check: String,
    pub detail: String,
    pub graph: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCheck {
    pub gated: bool,
    pub colorings: usize,
    pub partitions: usize,
    /// Nonorientable genera from cell tracing.
    pub atom_spectrum: BTreeSet<usize>,
    /// Genera from ranks over permissible partitions.
    pub rank_spectrum: BTreeSet<usize>,
    pub mismatches: Vec<Mismatch>,
}

/// Runs every check on one graph. `klein` selects the Klein-test variant
/// being audited.
pub fn check_graph(graph: &StarGraph, klein: KleinOptions) -> Result<GraphCheck> {
    let n = graph.vertex_count();
    if n > ORACLE_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            vertices: n,
            limit: ORACLE_VERTEX_LIMIT,
        });
    }
    let circuit = build_rotating_splitting_circuit(graph)?;
    let x = expansion_for(graph, &circuit)?;
    let d = &x.diagram;
    let gate = source_sink_gate(d);
    let mut out = GraphCheck {
        gated: gate == Orientability::Nonorientable,
        ..GraphCheck::default()
    };
    let mut fail = |check: &str, detail: String| {
        out.mismatches.push(Mismatch {
            check: check.into(),
            detail,
            graph: write_graph(graph),
        });
    };

    let mut by_partition: BTreeMap<Partition, usize> = BTreeMap::new();
    let mut atom_spectrum = BTreeSet::new();
    for mask in 0..1u64 << n {
        let coloring = AngleColoring::from_mask(n, mask);
        let surface = trace_atom(graph, &coloring)?;
        if surface.orientable == (gate == Orientability::Nonorientable) {
            fail(
                "orientability",
                format!(
                    "coloring {mask:b}: atom orientable = {}, gate {gate:?}",
                    surface.orientable
                ),
            );
        }
        if !surface.orientable {
            atom_spectrum.insert(surface.genus());
        }
        let p = partition_for_coloring(graph, &circuit, &x, &coloring)?;
        let (w, b) = side_ranks(d, &p)?;
        if gate == Orientability::Nonorientable && w + b != surface.genus() {
            fail(
                "coloring genus",
                format!(
                    "coloring {mask:b}: traced genus {}, ranks {w}+{b}",
                    surface.genus()
                ),
            );
        }
        *by_partition.entry(p).or_default() += 1;
    }
    out.colorings = 1 << n;

    let partitions = all_permissible_partitions(d)?;
    let expected: BTreeSet<&Partition> = partitions.iter().collect();
    let reached: BTreeSet<&Partition> = by_partition.keys().collect();
    if expected != reached || by_partition.values().any(|&k| k != 1) {
        fail(
            "coloring bijection",
            format!(
                "{} colorings reach {} of {} permissible partitions",
                out.colorings,
                reached.intersection(&expected).count(),
                expected.len()
            ),
        );
    }

    for p in &partitions {
        let (w, b) = side_ranks(d, p)?;
        let (cw, cb) = separation_surgery_check(d, p)?;
        let size = |s| p.indices(s).len();
        let coranks = size(Side::W) - w + size(Side::B) - b;
        if coranks + 2 != cw + cb {
            fail(
                "surgery circles",
                format!("{p:?}: coranks {coranks} + 2 vs circles {cw} + {cb}"),
            );
        }
    }
    out.partitions = partitions.len();

    if out.gated {
        let report = spectrum_of_expansion(d)?;
        out.rank_spectrum = report.spectrum.clone();
        if out.rank_spectrum != atom_spectrum {
            fail(
                "spectrum",
                format!(
                    "ranks give {:?}, tracing gives {atom_spectrum:?}",
                    out.rank_spectrum
                ),
            );
        }
        let rp2 = rp2_on_expansion(d)?.embeddable;
        if rp2 != report.spectrum.contains(&1) {
            fail(
                "rp2",
                format!("fast test says {rp2}, spectrum {:?}", report.spectrum),
            );
        }
        let klein = klein_on_expansion(d, klein)?.embeddable;
        if klein != report.spectrum.contains(&2) {
            fail(
                "klein",
                format!("fast test says {klein}, spectrum {:?}", report.spectrum),
            );
        }
    }
    out.atom_spectrum = atom_spectrum;
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub seed: u64,
    pub graphs: usize,
    pub gated: usize,
    pub colorings: usize,
    pub partitions: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Checks `count` seeded random graphs with at most `max_vertices`
/// vertices.
pub fn oracle_sweep(
    seed: u64,
    count: usize,
    max_vertices: usize,
    klein: KleinOptions,
) -> Result<SweepReport> {
    sweep(&random_graphs(seed, count, max_vertices), seed, klein)
}

pub fn sweep(graphs: &[StarGraph], seed: u64, klein: KleinOptions) -> Result<SweepReport> {
    let mut report = SweepReport {
        seed,
        ..SweepReport::default()
    };
    for g in graphs {
        let c = check_graph(g, klein)?;
        report.graphs += 1;
        report.gated += usize::from(c.gated);
        report.colorings += c.colorings;
        report.partitions += c.partitions;
        report.mismatches.extend(c.mismatches);
    }
    Ok(report)
}
