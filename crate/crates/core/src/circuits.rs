//! Transition systems and rotating-splitting circuits.
//!
//! A transition system pairs the slots at each vertex into passages. Following
//! edges and passages partitions the edge set into closed walks; when there is
//! exactly one walk and every vertex is rotating or splitting it is a
//! rotating-splitting circuit.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::star_graph::{slot_relation, AngleRelation, HalfEdgeRef, StarGraph};

/// How the passages at a vertex pair its slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Rotating,
    Splitting,
    Neither,
}

/// Classifies a full set of passages at one vertex of degree 4 or 6.
pub fn classify_passages(degree: usize, passages: &[(usize, usize)]) -> Result<VertexKind> {
    let mut adjacent = 0;
    let mut opposite = 0;
    for &(a, b) in passages {
        match slot_relation(degree, a, b)? {
            AngleRelation::Adjacent => adjacent += 1,
            AngleRelation::Opposite => opposite += 1,
            AngleRelation::Neither => {}
        }
    }
    let half = degree / 2;
    Ok(if adjacent == half {
        VertexKind::Rotating
    } else if degree == 6 && opposite == 1 && adjacent == 2 {
        VertexKind::Splitting
    } else {
        VertexKind::Neither
    })
}

/// Start slot `k` of the angle `(k, k+1)` spanned by an adjacent passage.
pub(crate) fn corner_of(degree: usize, a: usize, b: usize) -> usize {
    if (a + 1) % degree == b {
        a
    } else {
        debug_assert_eq!((b + 1) % degree, a);
        b
    }
}

/// The passages installed at one vertex.
type Structure = Vec<(usize, usize)>;

/// Rotating structures of a vertex, then splitting ones.
fn structures(degree: usize) -> (Vec<Structure>, Vec<Structure>) {
    let rotating = (0..2)
        .map(|shift| {
            (0..degree / 2)
                .map(|i| ((2 * i + shift) % degree, (2 * i + shift + 1) % degree))
                .collect()
        })
        .collect();
    let splitting = if degree == 6 {
        (0..3)
            .map(|x| vec![(x, x + 3), (x + 1, x + 2), ((x + 4) % 6, (x + 5) % 6)])
            .collect()
    } else {
        Vec::new()
    };
    (rotating, splitting)
}

/// A perfect matching of the slots at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransitionSystem {
    partner: Vec<Vec<usize>>,
}

impl TransitionSystem {
    /// Every vertex gets `{(0,1),(2,3)}` or `{(0,1),(2,3),(4,5)}`.
    pub fn rotating(graph: &StarGraph) -> Self {
        let partner = graph
            .vertices()
            .iter()
            .map(|v| (0..v.degree).map(|s| s ^ 1).collect())
            .collect();
        TransitionSystem { partner }
    }

    pub fn from_passages(graph: &StarGraph, passages: &[Vec<(usize, usize)>]) -> Result<Self> {
        if passages.len() != graph.vertex_count() {
            return Err(Error::InvalidTransitions(format!(
                "{} vertex entries for {} vertices",
                passages.len(),
                graph.vertex_count()
            )));
        }
        let mut ts = TransitionSystem {
            partner: graph
                .vertices()
                .iter()
                .map(|v| vec![usize::MAX; v.degree])
                .collect(),
        };
        for (v, pairs) in passages.iter().enumerate() {
            ts.install(v, pairs)?;
        }
        Ok(ts)
    }

    fn install(&mut self, v: usize, pairs: &[(usize, usize)]) -> Result<()> {
        let d = self.partner[v].len();
        let mut slots = vec![usize::MAX; d];
        for &(a, b) in pairs {
            if a >= d || b >= d || a == b || slots[a] != usize::MAX || slots[b] != usize::MAX {
                return Err(Error::InvalidTransitions(format!(
                    "passage ({a},{b}) at vertex #{v} is not part of a perfect matching"
                )));
            }
            slots[a] = b;
            slots[b] = a;
        }
        if slots.contains(&usize::MAX) {
            return Err(Error::InvalidTransitions(format!(
                "passages at vertex #{v} leave a slot unmatched"
            )));
        }
        self.partner[v] = slots;
        Ok(())
    }

    pub fn partner(&self, vertex: usize, slot: usize) -> usize {
        self.partner[vertex][slot]
    }

    /// Passages at `vertex` as `(low, high)` pairs sorted by `low`.
    pub fn passages(&self, vertex: usize) -> Vec<(usize, usize)> {
        self.partner[vertex]
            .iter()
            .enumerate()
            .filter(|&(s, &t)| s < t)
            .map(|(s, &t)| (s, t))
            .collect()
    }

    pub fn classify(&self, graph: &StarGraph, vertex: usize) -> Result<VertexKind> {
        let degree = graph.degree(vertex)?;
        if self.partner.get(vertex).map(Vec::len) != Some(degree) {
            return Err(Error::UnknownVertex(vertex));
        }
        classify_passages(degree, &self.passages(vertex))
    }
}

/// One visit of a walk to a vertex: in through `arrive`, out through `depart`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Passage {
    pub vertex: usize,
    pub arrive: usize,
    pub depart: usize,
}

/// A closed walk; passage `i` departs along the edge on which passage `i+1`
/// arrives (cyclically).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosedWalk {
    pub passages: Vec<Passage>,
}

fn check_transitions(graph: &StarGraph, ts: &TransitionSystem) -> Result<()> {
    let ok = ts.partner.len() == graph.vertex_count()
        && ts.partner.iter().zip(graph.vertices()).all(|(p, v)| {
            p.len() == v.degree
                && p.iter()
                    .enumerate()
                    .all(|(s, &t)| t < v.degree && t != s && p[t] == s)
        });
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidTransitions(
            "not a perfect matching at every vertex".into(),
        ))
    }
}

fn walk_from(
    mates: &[Vec<HalfEdgeRef>],
    ts: &TransitionSystem,
    arrival: HalfEdgeRef,
) -> ClosedWalk {
    let mut passages = Vec::new();
    let mut here = arrival;
    loop {
        let depart = ts.partner(here.vertex, here.slot);
        passages.push(Passage {
            vertex: here.vertex,
            arrive: here.slot,
            depart,
        });
        here = mates[here.vertex][depart];
        if here == arrival {
            return ClosedWalk { passages };
        }
    }
}

/// Splits the edges into the closed walks determined by `ts`, in order of
/// their lowest edge index.
pub fn cycles_of(graph: &StarGraph, ts: &TransitionSystem) -> Result<Vec<ClosedWalk>> {
    let mates = graph.mates()?;
    check_transitions(graph, ts)?;
    let edge_at = graph.edge_at()?;
    let mut used = vec![false; graph.edges().len()];
    let mut walks = Vec::new();
    for (e, [_, b]) in graph.edges().iter().enumerate() {
        if used[e] {
            continue;
        }
        let walk = walk_from(&mates, ts, *b);
        for p in &walk.passages {
            used[edge_at[p.vertex][p.depart]] = true;
        }
        walks.push(walk);
    }
    Ok(walks)
}

/// A single closed walk through every edge once in which every vertex is
/// rotating or splitting. Circle positions are passage indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RotatingSplittingCircuit {
    passages: Vec<Passage>,
    transitions: TransitionSystem,
}

/// Orientation a circuit induces on the half-edges of a rotating 6-vertex,
/// relative to the stored cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InducedOrientation {
    Stored,
    Reversed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleTwist {
    pub position: usize,
    pub passage: Passage,
    pub twisted: bool,
}

impl RotatingSplittingCircuit {
    /// Traces the single walk of `ts` starting with an arrival at `start`,
    /// checking every circuit invariant.
    pub fn from_transitions(
        graph: &StarGraph,
        ts: TransitionSystem,
        start: HalfEdgeRef,
    ) -> Result<Self> {
        graph.ensure_connected()?;
        check_transitions(graph, &ts)?;
        let mates = graph.mates()?;
        if start.vertex >= graph.vertex_count() || start.slot >= graph.degree(start.vertex)? {
            return Err(Error::CircuitMismatch(
                "start half-edge out of range".into(),
            ));
        }
        let walk = walk_from(&mates, &ts, start);
        let circuit = RotatingSplittingCircuit {
            passages: walk.passages,
            transitions: ts,
        };
        circuit.check(graph)?;
        Ok(circuit)
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    pub fn transitions(&self) -> &TransitionSystem {
        &self.transitions
    }

    pub fn len(&self) -> usize {
        self.passages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.passages.is_empty()
    }

    /// Circle positions of the visits to `vertex`, ascending.
    pub fn positions_of(&self, vertex: usize) -> Vec<usize> {
        self.passages
            .iter()
            .enumerate()
            .filter(|(_, p)| p.vertex == vertex)
            .map(|(i, _)| i)
            .collect()
    }

    /// Positions grouped by vertex.
    pub fn positions_by_vertex(&self, vertex_count: usize) -> Vec<Vec<usize>> {
        let mut by = vec![Vec::new(); vertex_count];
        for (i, p) in self.passages.iter().enumerate() {
            if p.vertex < vertex_count {
                by[p.vertex].push(i);
            }
        }
        by
    }

    pub fn kind(&self, graph: &StarGraph, vertex: usize) -> Result<VertexKind> {
        self.transitions.classify(graph, vertex)
    }

    /// Verifies every invariant against `graph`.
    pub fn check(&self, graph: &StarGraph) -> Result<()> {
        let mates = graph.mates()?;
        let edge_at = graph.edge_at()?;
        check_transitions(graph, &self.transitions)?;
        let n = self.passages.len();
        if n == 0 {
            return Err(Error::CircuitMismatch("empty circuit".into()));
        }
        let mut edge_uses = vec![0usize; graph.edges().len()];
        let mut visits = vec![0usize; graph.vertex_count()];
        for (i, p) in self.passages.iter().enumerate() {
            let degree = graph
                .degree(p.vertex)
                .map_err(|_| Error::CircuitMismatch(format!("unknown vertex at position {i}")))?;
            if p.arrive >= degree || p.depart >= degree {
                return Err(Error::CircuitMismatch(format!(
                    "slot out of range at position {i}"
                )));
            }
            if self.transitions.partner(p.vertex, p.arrive) != p.depart {
                return Err(Error::CircuitMismatch(format!(
                    "position {i} does not follow the transition system"
                )));
            }
            let next = self.passages[(i + 1) % n];
            if mates[p.vertex][p.depart] != HalfEdgeRef::new(next.vertex, next.arrive) {
                return Err(Error::CircuitMismatch(format!(
                    "position {i} is not joined by an edge to the next passage"
                )));
            }
            edge_uses[edge_at[p.vertex][p.depart]] += 1;
            visits[p.vertex] += 1;
        }
        if let Some(e) = edge_uses.iter().position(|&u| u != 1) {
            return Err(Error::CircuitMismatch(format!(
                "edge #{e} is traversed {} times",
                edge_uses[e]
            )));
        }
        for (v, vertex) in graph.vertices().iter().enumerate() {
            if visits[v] != vertex.degree / 2 {
                return Err(Error::CircuitMismatch(format!(
                    "vertex #{v} is visited {} times",
                    visits[v]
                )));
            }
            if self.kind(graph, v)? == VertexKind::Neither {
                return Err(Error::CircuitMismatch(format!(
                    "vertex #{v} is neither rotating nor splitting"
                )));
            }
        }
        Ok(())
    }

    /// Orientation induced at a rotating 6-vertex: `Stored` when the corners of
    /// its passages occur along the circuit in the stored cyclic order.
    pub fn induced_orientation(
        &self,
        graph: &StarGraph,
        vertex: usize,
    ) -> Result<InducedOrientation> {
        if graph.degree(vertex)? != 6 || self.kind(graph, vertex)? != VertexKind::Rotating {
            return Err(Error::NotRotatingSix(vertex));
        }
        let corners: Vec<usize> = self
            .positions_of(vertex)
            .into_iter()
            .map(|i| {
                let p = self.passages[i];
                corner_of(6, p.arrive, p.depart)
            })
            .collect();
        let [a, b, c] = corners[..] else {
            return Err(Error::CircuitMismatch(format!(
                "vertex #{vertex} not visited thrice"
            )));
        };
        let ascending = (a < b && b < c) || (b < c && c < a) || (c < a && a < b);
        Ok(if ascending {
            InducedOrientation::Stored
        } else {
            InducedOrientation::Reversed
        })
    }

    /// Twist flag of each passage through a rotating 6-vertex, in circle
    /// order. A passage is twisted when it steps against the induced
    /// orientation.
    pub fn twisted_angles(&self, graph: &StarGraph, vertex: usize) -> Result<Vec<AngleTwist>> {
        let orientation = self.induced_orientation(graph, vertex)?;
        Ok(self
            .positions_of(vertex)
            .into_iter()
            .map(|position| {
                let passage = self.passages[position];
                let forward = passage.depart == (passage.arrive + 1) % 6;
                let twisted = match orientation {
                    InducedOrientation::Stored => !forward,
                    InducedOrientation::Reversed => forward,
                };
                AngleTwist {
                    position,
                    passage,
                    twisted,
                }
            })
            .collect())
    }
}

/// Slot pairing at `v` produced by leaving `v` through each slot and following
/// `ts` until the walk first returns to `v`.
fn external_pairing(mates: &[Vec<HalfEdgeRef>], ts: &TransitionSystem, v: usize) -> Vec<usize> {
    let degree = mates[v].len();
    (0..degree)
        .map(|x| {
            let mut h = mates[v][x];
            while h.vertex != v {
                h = mates[h.vertex][ts.partner(h.vertex, h.slot)];
            }
            h.slot
        })
        .collect()
}

fn joins_into_one(structure: &[(usize, usize)], external: &[usize]) -> bool {
    let d = external.len();
    let mut inner = vec![0; d];
    for &(a, b) in structure {
        inner[a] = b;
        inner[b] = a;
    }
    let mut seen = 0;
    let mut x = 0;
    loop {
        seen += 2;
        x = external[inner[x]];
        if x == 0 {
            break;
        }
    }
    seen == d
}

/// Structure to install at a vertex shared by several cycles. The kind follows
/// the case split on the external strands: all three strands closing on
/// adjacent slots, or exactly one, or none, call for a rotating structure;
/// exactly two call for a splitting one. A 4-vertex always stays rotating.
fn merge_structure(
    degree: usize,
    external: &[usize],
    rng: Option<&mut ChaCha8Rng>,
) -> Option<Vec<(usize, usize)>> {
    let (rotating, splitting) = structures(degree);
    let adjacent = (0..degree)
        .filter(|&x| x < external[x])
        .filter(|&x| slot_relation(degree, x, external[x]) == Ok(AngleRelation::Adjacent))
        .count();
    let mut candidates = if degree == 6 && adjacent == 2 {
        splitting
    } else {
        rotating
    };
    if let Some(rng) = rng {
        candidates.shuffle(rng);
    }
    candidates.into_iter().find(|s| joins_into_one(s, external))
}

/// Cycle count after each merge step of a construction, starting with the
/// initial count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeTrace {
    pub cycle_counts: Vec<usize>,
}

fn build(
    graph: &StarGraph,
    mut rng: Option<ChaCha8Rng>,
) -> Result<(RotatingSplittingCircuit, MergeTrace)> {
    graph.ensure_connected()?;
    let mates = graph.mates()?;
    let mut ts = TransitionSystem::rotating(graph);
    if let Some(rng) = rng.as_mut() {
        for (v, vertex) in graph.vertices().iter().enumerate() {
            let (mut options, splitting) = structures(vertex.degree);
            options.extend(splitting);
            let pick = options.swap_remove(rng.gen_range(0..options.len()));
            ts.install(v, &pick)?;
        }
    }
    let mut trace = MergeTrace {
        cycle_counts: Vec::new(),
    };
    loop {
        let walks = cycles_of(graph, &ts)?;
        trace.cycle_counts.push(walks.len());
        if walks.len() == 1 {
            break;
        }
        let mut cycle_of: Vec<Vec<usize>> =
            graph.vertices().iter().map(|v| vec![0; v.degree]).collect();
        for (c, walk) in walks.iter().enumerate() {
            for p in &walk.passages {
                cycle_of[p.vertex][p.arrive] = c;
                cycle_of[p.vertex][p.depart] = c;
            }
        }
        let shared: Vec<usize> = cycle_of
            .iter()
            .enumerate()
            .filter(|(_, slots)| slots.iter().any(|&c| c != slots[0]))
            .map(|(v, _)| v)
            .collect();
        // a connected graph with several cycles always has a shared vertex
        let v = match rng.as_mut() {
            Some(rng) => *shared.choose(rng).expect("connected graph"),
            None => shared[0],
        };
        let external = external_pairing(&mates, &ts, v);
        let structure =
            merge_structure(graph.degree(v)?, &external, rng.as_mut()).ok_or_else(|| {
                Error::InvalidTransitions(format!("no merge possible at vertex #{v}"))
            })?;
        ts.install(v, &structure)?;
    }
    let start = match rng.as_mut() {
        Some(rng) => {
            let v = rng.gen_range(0..graph.vertex_count());
            HalfEdgeRef::new(v, rng.gen_range(0..graph.degree(v)?))
        }
        None => HalfEdgeRef::new(0, 0),
    };
    let circuit = RotatingSplittingCircuit::from_transitions(graph, ts, start)?;
    Ok((circuit, trace))
}

/// Deterministic construction: rotating start, merges at the lowest shared
/// vertex, traversal starting by arriving at slot 0 of vertex 0.
pub fn build_rotating_splitting_circuit(graph: &StarGraph) -> Result<RotatingSplittingCircuit> {
    build(graph, None).map(|(c, _)| c)
}

/// Randomized start structures, merge choices and starting point.
pub fn build_seeded(graph: &StarGraph, seed: u64) -> Result<RotatingSplittingCircuit> {
    build(graph, Some(ChaCha8Rng::seed_from_u64(seed))).map(|(c, _)| c)
}

/// Like [`build_seeded`] (or the deterministic build for `None`), also
/// returning the cycle counts seen during merging.
pub fn build_traced(
    graph: &StarGraph,
    seed: Option<u64>,
) -> Result<(RotatingSplittingCircuit, MergeTrace)> {
    build(graph, seed.map(ChaCha8Rng::seed_from_u64))
}
