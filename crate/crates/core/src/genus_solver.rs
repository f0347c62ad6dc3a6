//! Permissible partitions and the achievable nonorientable genera.
//!
//! Each vertex contributes one group of chords to the expansion. A permissible
//! partition puts the two chords of a triad pair on one side and the two
//! chords of a double pair on opposite sides. The genus of the atom matching a
//! partition is `rank(M_W) + rank(M_B)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::chord_model::{
    build_star_chord_diagram, expand, intersection_matrix, ChordGroup, Expansion,
    SignedChordDiagram,
};
use crate::circuits::{build_rotating_splitting_circuit, RotatingSplittingCircuit};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::star_graph::StarGraph;

/// Largest number of groups [`spectrum_of_expansion`] will enumerate.
pub const MAX_GROUPS: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    W,
    B,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::W => Side::B,
            Side::B => Side::W,
        }
    }
}

/// A side for every chord, indexed like the diagram's chords.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub sides: Vec<Side>,
}

impl Partition {
    pub fn indices(&self, side: Side) -> Vec<usize> {
        (0..self.sides.len())
            .filter(|&i| self.sides[i] == side)
            .collect()
    }

    pub fn swapped(&self) -> Self {
        Partition {
            sides: self.sides.iter().map(|s| s.other()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientability {
    Orientable,
    Nonorientable,
}

/// Orientable iff every chord of the expansion is positive.
pub fn source_sink_gate(d: &SignedChordDiagram) -> Orientability {
    if d.chords().iter().any(|c| c.sign.is_negative()) {
        Orientability::Nonorientable
    } else {
        Orientability::Orientable
    }
}

pub fn check_permissible(d: &SignedChordDiagram, p: &Partition) -> Result<()> {
    if p.sides.len() != d.len() {
        return Err(Error::NotPermissible(format!(
            "{} sides for {} chords",
            p.sides.len(),
            d.len()
        )));
    }
    for (group, members) in d.groups() {
        match group {
            ChordGroup::TriadPair(v)
                if members.len() == 2 && p.sides[members[0]] != p.sides[members[1]] =>
            {
                return Err(Error::NotPermissible(format!(
                    "triad pair of vertex #{v} is split"
                )));
            }
            ChordGroup::DoublePair(v)
                if members.len() == 2 && p.sides[members[0]] == p.sides[members[1]] =>
            {
                return Err(Error::NotPermissible(format!(
                    "double pair of vertex #{v} is on one side"
                )));
            }
            _ => {}
        }
    }
    Ok(())
}

/// `(rank(M_W), rank(M_B))` for a permissible partition.
pub fn side_ranks(d: &SignedChordDiagram, p: &Partition) -> Result<(usize, usize)> {
    check_permissible(d, p)?;
    let m = intersection_matrix(d);
    ranks_in(&m, p)
}

fn ranks_in(m: &Gf2Matrix, p: &Partition) -> Result<(usize, usize)> {
    let w = m.principal_submatrix(&p.indices(Side::W))?.rank();
    let b = m.principal_submatrix(&p.indices(Side::B))?.rank();
    Ok((w, b))
}

pub fn genus_of_partition(d: &SignedChordDiagram, p: &Partition) -> Result<usize> {
    side_ranks(d, p).map(|(w, b)| w + b)
}

/// Chords of each group as `(group, members)`, ordered by source vertex.
fn checked_groups(d: &SignedChordDiagram) -> Result<Vec<(ChordGroup, Vec<usize>)>> {
    d.check_groups()?;
    let groups = d.groups();
    if groups.len() > MAX_GROUPS {
        return Err(Error::TooLarge {
            vertices: groups.len(),
            limit: MAX_GROUPS,
        });
    }
    Ok(groups)
}

/// The partition in which group `g` takes side `W` iff bit `g` of `mask` is
/// clear, where bit numbering runs from the last group (bit 0) to the first.
fn partition_from_mask(
    d: &SignedChordDiagram,
    groups: &[(ChordGroup, Vec<usize>)],
    mask: u64,
) -> Partition {
    let k = groups.len();
    let mut sides = vec![Side::W; d.len()];
    for (g, (group, members)) in groups.iter().enumerate() {
        let side = if mask >> (k - 1 - g) & 1 == 1 {
            Side::B
        } else {
            Side::W
        };
        match group {
            ChordGroup::DoublePair(_) => {
                sides[members[0]] = side;
                sides[members[1]] = side.other();
            }
            _ => {
                for &i in members {
                    sides[i] = side;
                }
            }
        }
    }
    Partition { sides }
}

/// Every permissible partition, `2^groups` of them, in enumeration order.
pub fn all_permissible_partitions(d: &SignedChordDiagram) -> Result<Vec<Partition>> {
    let groups = checked_groups(d)?;
    Ok((0..1u64 << groups.len())
        .map(|mask| partition_from_mask(d, &groups, mask))
        .collect())
}

/// Permissible partitions with the lowest vertex's group on `W`; the other
/// half are their side swaps and have the same genus.
pub fn canonical_permissible_partitions(d: &SignedChordDiagram) -> Result<Vec<Partition>> {
    let groups = checked_groups(d)?;
    let half = if groups.is_empty() {
        1
    } else {
        1u64 << (groups.len() - 1)
    };
    Ok((0..half)
        .map(|mask| partition_from_mask(d, &groups, mask))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub orientability: Orientability,
    pub chord_count: usize,
    pub group_count: usize,
    /// Achievable values of `rank(M_W) + rank(M_B)`.
    pub spectrum: BTreeSet<usize>,
    /// First partition in enumeration order reaching each genus.
    pub witnesses: BTreeMap<usize, Partition>,
}

impl GenusReport {
    pub fn min_genus(&self) -> Option<usize> {
        self.spectrum.first().copied()
    }
}

/// Enumerates the canonical half of the permissible partitions of `d`,
/// regardless of the gate.
pub fn spectrum_of_expansion(d: &SignedChordDiagram) -> Result<GenusReport> {
    let groups = checked_groups(d)?;
    let m = intersection_matrix(d);
    let half = if groups.is_empty() {
        1
    } else {
        1u64 << (groups.len() - 1)
    };
    let mut witnesses = BTreeMap::new();
    for mask in 0..half {
        let p = partition_from_mask(d, &groups, mask);
        let (w, b) = ranks_in(&m, &p)?;
        witnesses.entry(w + b).or_insert(p);
    }
    Ok(GenusReport {
        orientability: source_sink_gate(d),
        chord_count: d.len(),
        group_count: groups.len(),
        spectrum: witnesses.keys().copied().collect(),
        witnesses,
    })
}

/// Expansion of `graph` along `circuit`.
pub fn expansion_for(graph: &StarGraph, circuit: &RotatingSplittingCircuit) -> Result<Expansion> {
    expand(&build_star_chord_diagram(graph, circuit)?)
}

/// Spectrum along a given circuit; errors with [`Error::OrientableGate`] when
/// every chord is positive.
pub fn genus_spectrum_with(
    graph: &StarGraph,
    circuit: &RotatingSplittingCircuit,
) -> Result<GenusReport> {
    let x = expansion_for(graph, circuit)?;
    if source_sink_gate(&x.diagram) == Orientability::Orientable {
        return Err(Error::OrientableGate);
    }
    spectrum_of_expansion(&x.diagram)
}

/// Achievable nonorientable checkerboard genera of `graph`.
pub fn genus_spectrum(graph: &StarGraph) -> Result<GenusReport> {
    let circuit = build_rotating_splitting_circuit(graph)?;
    genus_spectrum_with(graph, &circuit)
}

pub fn is_genus_achievable(graph: &StarGraph, g: usize) -> Result<bool> {
    Ok(genus_spectrum(graph)?.spectrum.contains(&g))
}
