//! Ground truth by direct construction of atoms.
//!
//! An angle coloring fixes, at every vertex, which of the two alternating
//! angle classes is black. The cells of the atom are traced by gluing angles
//! across edge sides of equal color, with no chord diagrams or ranks
//! involved.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::chord_model::{surgery_circle_count, Expansion, SignedChordDiagram};
use crate::circuits::{corner_of, RotatingSplittingCircuit};
use crate::error::{Error, Result};
use crate::genus_solver::{check_permissible, Partition, Side};
use crate::star_graph::{slot_relation, AngleRelation, StarGraph};

/// Default vertex limit for [`atom_spectrum`].
pub const ORACLE_VERTEX_LIMIT: usize = 16;

/// Disjoint sets with an optional parity relative to the root.
struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, up) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= up;
        (root, self.parity[x])
    }

    /// Records `parity(x) ^ parity(y) == odd`; false on contradiction.
    fn relate(&mut self, x: usize, y: usize, odd: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == odd;
        }
        self.parent[rx] = ry;
        self.parity[rx] = px ^ py ^ odd;
        true
    }
}

/// Per vertex, whether the black angles are those starting at odd slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AngleColoring {
    pub odd_black: Vec<bool>,
}

impl AngleColoring {
    /// Bit `v` of `mask` selects the class for vertex `v`.
    pub fn from_mask(vertices: usize, mask: u64) -> Self {
        AngleColoring {
            odd_black: (0..vertices).map(|v| mask >> v & 1 == 1).collect(),
        }
    }

    /// Whether the angle between slots `k` and `k+1` at `vertex` is black.
    pub fn is_black(&self, vertex: usize, k: usize) -> bool {
        (k % 2 == 1) == self.odd_black[vertex]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AtomSurface {
    pub black_faces: usize,
    pub white_faces: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
}

impl AtomSurface {
    /// Handles if orientable, cross-caps otherwise.
    pub fn genus(&self) -> usize {
        let deficit = (2 - self.euler_characteristic) as usize;
        if self.orientable {
            deficit / 2
        } else {
            deficit
        }
    }
}

pub fn trace_atom(graph: &StarGraph, coloring: &AngleColoring) -> Result<AtomSurface> {
    graph.ensure_connected()?;
    if coloring.odd_black.len() != graph.vertex_count() {
        return Err(Error::InvalidGraph(format!(
            "coloring has {} entries for {} vertices",
            coloring.odd_black.len(),
            graph.vertex_count()
        )));
    }
    let mut base = Vec::with_capacity(graph.vertex_count());
    let mut total = 0;
    for v in graph.vertices() {
        base.push(total);
        total += v.degree;
    }
    // angle (v, k) lies between slots k and k+1
    let angle = |v: usize, k: usize| base[v] + k;
    let before = |v: usize, s: usize| {
        let d = graph.vertices()[v].degree;
        (s + d - 1) % d
    };

    let mut faces = ParityDsu::new(total);
    let mut frame = ParityDsu::new(graph.vertex_count());
    let mut orientable = true;
    for [x, y] in graph.edges() {
        let (x_after, x_before) = (
            angle(x.vertex, x.slot),
            angle(x.vertex, before(x.vertex, x.slot)),
        );
        let (y_after, y_before) = (
            angle(y.vertex, y.slot),
            angle(y.vertex, before(y.vertex, y.slot)),
        );
        // each side of the edge carries one color at both ends
        let twisted = coloring.is_black(x.vertex, x.slot) == coloring.is_black(y.vertex, y.slot);
        if twisted {
            faces.relate(x_after, y_after, false);
            faces.relate(x_before, y_before, false);
        } else {
            faces.relate(x_after, y_before, false);
            faces.relate(x_before, y_after, false);
        }
        orientable &= frame.relate(x.vertex, y.vertex, twisted);
    }

    let mut roots = BTreeSet::new();
    let (mut black_faces, mut white_faces) = (0, 0);
    for (v, vertex) in graph.vertices().iter().enumerate() {
        for k in 0..vertex.degree {
            if roots.insert(faces.find(angle(v, k)).0) {
                if coloring.is_black(v, k) {
                    black_faces += 1;
                } else {
                    white_faces += 1;
                }
            }
        }
    }
    let chi = graph.vertex_count() as i64 - graph.edges().len() as i64
        + (black_faces + white_faces) as i64;
    Ok(AtomSurface {
        black_faces,
        white_faces,
        euler_characteristic: chi,
        orientable,
    })
}

/// `(genus, orientable)` over all `2^n` colorings, for at most
/// [`ORACLE_VERTEX_LIMIT`] vertices.
pub fn atom_spectrum(graph: &StarGraph) -> Result<BTreeSet<(usize, bool)>> {
    atom_spectrum_with_limit(graph, ORACLE_VERTEX_LIMIT)
}

pub fn atom_spectrum_with_limit(
    graph: &StarGraph,
    limit: usize,
) -> Result<BTreeSet<(usize, bool)>> {
    let n = graph.vertex_count();
    if n > limit || n >= 64 {
        return Err(Error::TooLarge { vertices: n, limit });
    }
    (0..1u64 << n)
        .map(|mask| {
            trace_atom(graph, &AngleColoring::from_mask(n, mask)).map(|s| (s.genus(), s.orientable))
        })
        .collect()
}

/// The side each chord of `expansion` occupies in the atom of `coloring`:
/// a chord is drawn inside the vertex region bounded by its passages, and
/// lands on `B` when that region is black.
pub fn partition_for_coloring(
    graph: &StarGraph,
    circuit: &RotatingSplittingCircuit,
    expansion: &Expansion,
    coloring: &AngleColoring,
) -> Result<Partition> {
    let passages = circuit.passages();
    let sides = expansion
        .diagram
        .chords()
        .iter()
        .map(|c| {
            // at least one end sits on a passage through adjacent slots
            let p = c
                .ends
                .iter()
                .map(|&e| passages[expansion.origin[e]])
                .find(|p| {
                    let d = graph.vertices()[p.vertex].degree;
                    slot_relation(d, p.arrive, p.depart) == Ok(AngleRelation::Adjacent)
                })
                .ok_or_else(|| Error::CircuitMismatch("chord without a corner passage".into()))?;
            let d = graph.vertices()[p.vertex].degree;
            let corner = corner_of(d, p.arrive, p.depart);
            // the region holds the angles of the other class
            Ok(if coloring.is_black(p.vertex, corner + 1) {
                Side::B
            } else {
                Side::W
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition { sides })
}

/// Surgery circle counts of the two sides of a permissible partition.
pub fn separation_surgery_check(d: &SignedChordDiagram, p: &Partition) -> Result<(usize, usize)> {
    check_permissible(d, p)?;
    let w = surgery_circle_count(&d.restrict(&p.indices(Side::W)));
    let b = surgery_circle_count(&d.restrict(&p.indices(Side::B)));
    Ok((w, b))
}
