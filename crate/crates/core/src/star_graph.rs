//! The ∗-graph data model.
//!
//! A vertex of degree `d` has half-edge slots `0..d`, read as a cyclic order
//! `0 → 1 → … → d-1 → 0`. The order is stored oriented, but everything
//! downstream only depends on it up to reversal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One end of an edge: a slot at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfEdgeRef {
    pub vertex: usize,
    pub slot: usize,
}

impl HalfEdgeRef {
    pub fn new(vertex: usize, slot: usize) -> Self {
        HalfEdgeRef { vertex, slot }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AngleRelation {
    Adjacent,
    Opposite,
    Neither,
}

/// Relation between two distinct slots of a vertex of degree 4 or 6.
pub fn slot_relation(degree: usize, a: usize, b: usize) -> Result<AngleRelation> {
    if degree != 4 && degree != 6 {
        return Err(Error::UnsupportedDegree(degree));
    }
    for slot in [a, b] {
        if slot >= degree {
            return Err(Error::SlotOutOfRange { slot, degree });
        }
    }
    if a == b {
        return Err(Error::EqualSlots(a, b));
    }
    let diff = (a + degree - b) % degree;
    let dist = diff.min(degree - diff);
    Ok(if dist == 1 {
        AngleRelation::Adjacent
    } else if dist == degree / 2 {
        AngleRelation::Opposite
    } else {
        AngleRelation::Neither
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub name: String,
    pub degree: usize,
}

/// A problem found by [`StarGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    BadDegree { vertex: usize, degree: usize },
    UnknownVertex { edge: usize, vertex: usize },
    SlotOutOfRange { edge: usize, end: HalfEdgeRef },
    SelfPairedSlot { edge: usize, end: HalfEdgeRef },
    SlotReused { end: HalfEdgeRef, edges: Vec<usize> },
    SlotUnmatched { end: HalfEdgeRef },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::BadDegree { vertex, degree } => {
                write!(f, "vertex #{vertex} has degree {degree}, expected 4 or 6")
            }
            ValidationIssue::UnknownVertex { edge, vertex } => {
                write!(f, "edge #{edge} references unknown vertex #{vertex}")
            }
            ValidationIssue::SlotOutOfRange { edge, end } => write!(
                f,
                "edge #{edge} uses slot {} beyond the degree of vertex #{}",
                end.slot, end.vertex
            ),
            ValidationIssue::SelfPairedSlot { edge, end } => write!(
                f,
                "edge #{edge} joins slot {} of vertex #{} to itself",
                end.slot, end.vertex
            ),
            ValidationIssue::SlotReused { end, edges } => write!(
                f,
                "slot {} of vertex #{} is used by edges {:?}",
                end.slot, end.vertex, edges
            ),
            ValidationIssue::SlotUnmatched { end } => {
                write!(
                    f,
                    "slot {} of vertex #{} is unmatched",
                    end.slot, end.vertex
                )
            }
        }
    }
}

/// Every violated invariant of a graph. Empty iff the graph is well formed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// A graph whose vertices have degree 4 or 6 and whose half-edges carry a
/// cyclic order. Vertices are identified by insertion index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct StarGraph {
    vertices: Vec<Vertex>,
    edges: Vec<[HalfEdgeRef; 2]>,
}

impl StarGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, degree: usize) -> usize {
        self.vertices.push(Vertex {
            name: name.into(),
            degree,
        });
        self.vertices.len() - 1
    }

    /// Adds an edge without checking it; see [`StarGraph::validate`].
    pub fn add_edge(&mut self, a: HalfEdgeRef, b: HalfEdgeRef) -> usize {
        self.edges.push([a, b]);
        self.edges.len() - 1
    }

    /// Shorthand for `add_edge` with `(vertex, slot)` pairs.
    pub fn join(&mut self, a: (usize, usize), b: (usize, usize)) -> usize {
        self.add_edge(HalfEdgeRef::new(a.0, a.1), HalfEdgeRef::new(b.0, b.1))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[HalfEdgeRef; 2]] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn degree(&self, vertex: usize) -> Result<usize> {
        self.vertices
            .get(vertex)
            .map(|v| v.degree)
            .ok_or(Error::UnknownVertex(vertex))
    }

    pub fn name(&self, vertex: usize) -> &str {
        &self.vertices[vertex].name
    }

    pub fn find_vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.degree != 4 && v.degree != 6 {
                issues.push(ValidationIssue::BadDegree {
                    vertex: i,
                    degree: v.degree,
                });
            }
        }
        let mut users: Vec<Vec<Vec<usize>>> = self
            .vertices
            .iter()
            .map(|v| vec![Vec::new(); v.degree])
            .collect();
        for (e, ends) in self.edges.iter().enumerate() {
            let mut ok = true;
            for end in ends {
                match self.vertices.get(end.vertex) {
                    None => {
                        issues.push(ValidationIssue::UnknownVertex {
                            edge: e,
                            vertex: end.vertex,
                        });
                        ok = false;
                    }
                    Some(v) if end.slot >= v.degree => {
                        issues.push(ValidationIssue::SlotOutOfRange { edge: e, end: *end });
                        ok = false;
                    }
                    Some(_) => {}
                }
            }
            if !ok {
                continue;
            }
            if ends[0] == ends[1] {
                issues.push(ValidationIssue::SelfPairedSlot {
                    edge: e,
                    end: ends[0],
                });
                continue;
            }
            for end in ends {
                users[end.vertex][end.slot].push(e);
            }
        }
        for (v, slots) in users.into_iter().enumerate() {
            for (slot, edges) in slots.into_iter().enumerate() {
                let end = HalfEdgeRef::new(v, slot);
                match edges.len() {
                    0 => issues.push(ValidationIssue::SlotUnmatched { end }),
                    1 => {}
                    _ => issues.push(ValidationIssue::SlotReused { end, edges }),
                }
            }
        }
        ValidationReport { issues }
    }

    /// Errors with the first validation issue, if any.
    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().issues.first() {
            None => Ok(()),
            Some(issue) => Err(Error::InvalidGraph(issue.to_string())),
        }
    }

    /// Partner table `mates[v][slot]`, valid graphs only.
    pub fn mates(&self) -> Result<Vec<Vec<HalfEdgeRef>>> {
        self.ensure_valid()?;
        let mut mates: Vec<Vec<HalfEdgeRef>> = self
            .vertices
            .iter()
            .map(|v| vec![HalfEdgeRef::new(usize::MAX, 0); v.degree])
            .collect();
        for [a, b] in &self.edges {
            mates[a.vertex][a.slot] = *b;
            mates[b.vertex][b.slot] = *a;
        }
        Ok(mates)
    }

    /// Edge index per half-edge, valid graphs only.
    pub fn edge_at(&self) -> Result<Vec<Vec<usize>>> {
        self.ensure_valid()?;
        let mut at: Vec<Vec<usize>> = self.vertices.iter().map(|v| vec![0; v.degree]).collect();
        for (e, [a, b]) in self.edges.iter().enumerate() {
            at[a.vertex][a.slot] = e;
            at[b.vertex][b.slot] = e;
        }
        Ok(at)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for [a, b] in &self.edges {
            if a.vertex < n && b.vertex < n {
                adj[a.vertex].push(b.vertex);
                adj[b.vertex].push(a.vertex);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Valid, nonempty and connected.
    pub fn ensure_connected(&self) -> Result<()> {
        self.ensure_valid()?;
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// The same graph with the cyclic order at `vertex` reversed (`s ↦ d-1-s`).
    pub fn reversed_at(&self, vertex: usize) -> Result<Self> {
        let d = self.degree(vertex)?;
        let flip = |h: HalfEdgeRef| {
            if h.vertex == vertex && h.slot < d {
                HalfEdgeRef::new(vertex, d - 1 - h.slot)
            } else {
                h
            }
        };
        Ok(StarGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|[a, b]| [flip(*a), flip(*b)])
                .collect(),
        })
    }
}
