//! Signed chord diagrams built from a rotating-splitting circuit.
//!
//! [`build_star_chord_diagram`] places one element per vertex on the circle of
//! the circuit: a chord for a 4-vertex, a triad for a rotating 6-vertex and a
//! double chord for a splitting 6-vertex. [`expand`] turns triads and double
//! chords into pairs of ordinary chords. Points of a [`SignedChordDiagram`]
//! are numbered `0..2m` in circular order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuits::{RotatingSplittingCircuit, VertexKind};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::star_graph::{slot_relation, AngleRelation, StarGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_positive(positive: bool) -> Self {
        if positive {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// One element of a ∗-chord diagram; `vertex` is the source vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StarElement {
    Chord {
        ends: [usize; 2],
        sign: Sign,
        vertex: usize,
    },
    /// Legs in ascending circle order, each with the sign of its edge to the
    /// triad point.
    Triad {
        ends: [usize; 3],
        signs: [Sign; 3],
        vertex: usize,
    },
    /// `others` lists the non-principal positions in circle order after the
    /// principal one.
    DoubleChord {
        principal: usize,
        others: [usize; 2],
        signs: [Sign; 2],
        vertex: usize,
    },
}

impl StarElement {
    pub fn vertex(&self) -> usize {
        match *self {
            StarElement::Chord { vertex, .. }
            | StarElement::Triad { vertex, .. }
            | StarElement::DoubleChord { vertex, .. } => vertex,
        }
    }

    pub fn points(&self) -> Vec<usize> {
        match self {
            StarElement::Chord { ends, .. } => ends.to_vec(),
            StarElement::Triad { ends, .. } => ends.to_vec(),
            StarElement::DoubleChord {
                principal, others, ..
            } => vec![*principal, others[0], others[1]],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedStarChordDiagram {
    pub point_count: usize,
    /// One element per vertex, in vertex order.
    pub elements: Vec<StarElement>,
}

/// The vertex a chord of an expansion came from, and how.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChordGroup {
    Free(usize),
    TriadPair(usize),
    DoublePair(usize),
}

impl ChordGroup {
    pub fn vertex(self) -> usize {
        match self {
            ChordGroup::Free(v) | ChordGroup::TriadPair(v) | ChordGroup::DoublePair(v) => v,
        }
    }

    pub fn expected_size(self) -> usize {
        match self {
            ChordGroup::Free(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chord {
    /// Endpoints with `ends[0] < ends[1]`.
    pub ends: [usize; 2],
    pub sign: Sign,
    pub group: ChordGroup,
}

impl Chord {
    pub fn new(a: usize, b: usize, sign: Sign, group: ChordGroup) -> Self {
        Chord {
            ends: [a.min(b), a.max(b)],
            sign,
            group,
        }
    }

    /// Endpoints interleave on the circle.
    pub fn links(&self, other: &Chord) -> bool {
        let [a, b] = self.ends;
        let [c, d] = other.ends;
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

/// A signed chord diagram. Chords are kept sorted by smaller endpoint, which
/// is the enumeration used for intersection matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedChordDiagram {
    point_count: usize,
    chords: Vec<Chord>,
}

impl SignedChordDiagram {
    /// Checks that every point is the end of exactly one chord and sorts the
    /// chords canonically. Group sizes are checked by [`Self::check_groups`].
    pub fn new(point_count: usize, mut chords: Vec<Chord>) -> Result<Self> {
        if point_count != 2 * chords.len() {
            return Err(Error::MalformedDiagram(format!(
                "{point_count} points for {} chords",
                chords.len()
            )));
        }
        let mut seen = vec![false; point_count];
        for c in &mut chords {
            *c = Chord::new(c.ends[0], c.ends[1], c.sign, c.group);
            for p in c.ends {
                if p >= point_count || std::mem::replace(&mut seen[p], true) {
                    return Err(Error::MalformedDiagram(format!(
                        "point {p} is out of range or shared"
                    )));
                }
            }
        }
        chords.sort_by_key(|c| c.ends[0]);
        Ok(SignedChordDiagram {
            point_count,
            chords,
        })
    }

    pub fn empty() -> Self {
        SignedChordDiagram {
            point_count: 0,
            chords: Vec::new(),
        }
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn linked(&self, i: usize, j: usize) -> bool {
        i != j && self.chords[i].links(&self.chords[j])
    }

    /// Chord indices per group, groups ordered by source vertex.
    pub fn groups(&self) -> Vec<(ChordGroup, Vec<usize>)> {
        let mut groups: Vec<(ChordGroup, Vec<usize>)> = Vec::new();
        let mut order: Vec<usize> = (0..self.chords.len()).collect();
        order.sort_by_key(|&i| (self.chords[i].group.vertex(), self.chords[i].group, i));
        for i in order {
            let g = self.chords[i].group;
            match groups.last_mut() {
                Some((last, members)) if *last == g => members.push(i),
                _ => groups.push((g, vec![i])),
            }
        }
        groups
    }

    /// Every group has its expected number of chords.
    pub fn check_groups(&self) -> Result<()> {
        for (g, members) in self.groups() {
            if members.len() != g.expected_size() {
                return Err(Error::MalformedDiagram(format!(
                    "group {g:?} has {} chords",
                    members.len()
                )));
            }
        }
        Ok(())
    }

    /// The chords at `indices`, renumbered onto their own endpoints.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let mut keep = vec![false; self.point_count];
        for &i in indices {
            for p in self.chords[i].ends {
                keep[p] = true;
            }
        }
        let mut new_index = vec![usize::MAX; self.point_count];
        let mut next = 0;
        for (p, k) in keep.iter().enumerate() {
            if *k {
                new_index[p] = next;
                next += 1;
            }
        }
        let chords = indices
            .iter()
            .map(|&i| {
                let c = self.chords[i];
                Chord::new(new_index[c.ends[0]], new_index[c.ends[1]], c.sign, c.group)
            })
            .collect();
        SignedChordDiagram::new(next, chords).expect("restriction of a well-formed diagram")
    }
}

fn adjacent(degree: usize, a: usize, b: usize) -> bool {
    slot_relation(degree, a, b) == Ok(AngleRelation::Adjacent)
}

/// Builds the signed ∗-chord diagram of `graph` along `circuit`.
///
/// * 4-vertex: a chord, positive iff the two arrival slots are not adjacent.
/// * rotating 6-vertex: a triad whose leg at a passage is positive iff the
///   passage's angle is untwisted.
/// * splitting 6-vertex: a double chord with principal point at the passage
///   through opposite slots; the edge to another passage `b` is positive iff
///   the departure slot of `b` is adjacent to the arrival slot of the
///   principal passage.
pub fn build_star_chord_diagram(
    graph: &StarGraph,
    circuit: &RotatingSplittingCircuit,
) -> Result<SignedStarChordDiagram> {
    circuit.check(graph)?;
    let passages = circuit.passages();
    let by_vertex = circuit.positions_by_vertex(graph.vertex_count());
    let mut elements = Vec::with_capacity(graph.vertex_count());
    for (v, positions) in by_vertex.iter().enumerate() {
        let degree = graph.degree(v)?;
        let element = match (degree, circuit.kind(graph, v)?) {
            (4, _) => {
                let [p, q] = positions[..] else {
                    return Err(Error::CircuitMismatch(format!("vertex #{v} visit count")));
                };
                let positive = !adjacent(4, passages[p].arrive, passages[q].arrive);
                StarElement::Chord {
                    ends: [p, q],
                    sign: Sign::from_positive(positive),
                    vertex: v,
                }
            }
            (6, VertexKind::Rotating) => {
                let twists = circuit.twisted_angles(graph, v)?;
                StarElement::Triad {
                    ends: [twists[0].position, twists[1].position, twists[2].position],
                    signs: [0, 1, 2].map(|i| Sign::from_positive(!twists[i].twisted)),
                    vertex: v,
                }
            }
            (6, VertexKind::Splitting) => {
                let is_principal = |&p: &usize| {
                    slot_relation(6, passages[p].arrive, passages[p].depart)
                        == Ok(AngleRelation::Opposite)
                };
                let a = *positions.iter().find(|p| is_principal(p)).ok_or_else(|| {
                    Error::CircuitMismatch(format!("vertex #{v} has no principal"))
                })?;
                let mut others: Vec<usize> =
                    positions.iter().copied().filter(|&p| p != a).collect();
                others.sort_by_key(|&p| (p + circuit.len() - a) % circuit.len());
                let [b, c] = others[..] else {
                    return Err(Error::CircuitMismatch(format!("vertex #{v} visit count")));
                };
                let sign = |x: usize| {
                    Sign::from_positive(adjacent(6, passages[x].depart, passages[a].arrive))
                };
                StarElement::DoubleChord {
                    principal: a,
                    others: [b, c],
                    signs: [sign(b), sign(c)],
                    vertex: v,
                }
            }
            _ => {
                return Err(Error::CircuitMismatch(format!(
                    "vertex #{v} is neither rotating nor splitting"
                )))
            }
        };
        elements.push(element);
    }
    Ok(SignedStarChordDiagram {
        point_count: circuit.len(),
        elements,
    })
}

/// An expansion together with the ∗-diagram position each point came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Expansion {
    pub diagram: SignedChordDiagram,
    pub origin: Vec<usize>,
}

/// Replaces triads and double chords by pairs of chords.
///
/// A split point `a` becomes `a-ε, a+ε` in that circular order. For a triad
/// with a positive leg, `a` is its first positive leg and the two chords are
/// unlinked with the signs of the other legs; for an all-negative triad, `a`
/// is its first leg and the chords are linked and positive. A double chord
/// gives `(a-ε, b)` and `(a+ε, c)`, unlinked.
pub fn expand(d: &SignedStarChordDiagram) -> Result<Expansion> {
    let n = d.point_count;
    let mut owner = vec![usize::MAX; n];
    for (i, e) in d.elements.iter().enumerate() {
        for p in e.points() {
            if p >= n || owner[p] != usize::MAX {
                return Err(Error::MalformedDiagram(format!(
                    "position {p} out of range or shared"
                )));
            }
            owner[p] = i;
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(Error::MalformedDiagram("uncovered circle position".into()));
    }

    // hub position per element, if it splits
    let hubs: Vec<Option<usize>> = d
        .elements
        .iter()
        .map(|e| match e {
            StarElement::Chord { .. } => None,
            StarElement::Triad { ends, signs, .. } => Some(
                (0..3)
                    .find(|&i| signs[i] == Sign::Positive)
                    .map_or(ends[0], |i| ends[i]),
            ),
            StarElement::DoubleChord { principal, .. } => Some(*principal),
        })
        .collect();
    let mut split = vec![false; n];
    for h in hubs.iter().flatten() {
        split[*h] = true;
    }
    let mut first = vec![0; n];
    let mut origin = Vec::with_capacity(2 * n);
    for p in 0..n {
        first[p] = origin.len();
        origin.push(p);
        if split[p] {
            origin.push(p);
        }
    }
    // (a-ε, a+ε)
    let eps = |a: usize| (first[a], first[a] + 1);
    // the two other points of a triad, nearer one first going forward from a
    let after = |a: usize, x: usize, y: usize| {
        if (x + n - a) % n <= (y + n - a) % n {
            (x, y)
        } else {
            (y, x)
        }
    };

    let mut chords = Vec::with_capacity(origin.len() / 2);
    for (e, hub) in d.elements.iter().zip(&hubs) {
        match *e {
            StarElement::Chord { ends, sign, vertex } => {
                chords.push(Chord::new(
                    first[ends[0]],
                    first[ends[1]],
                    sign,
                    ChordGroup::Free(vertex),
                ));
            }
            StarElement::Triad {
                ends,
                signs,
                vertex,
            } => {
                let a = hub.expect("triads split");
                let sign_of = |p: usize| signs[ends.iter().position(|&q| q == p).unwrap()];
                let rest: Vec<usize> = ends.iter().copied().filter(|&p| p != a).collect();
                let (near, far) = after(a, rest[0], rest[1]);
                let (minus, plus) = eps(a);
                let group = ChordGroup::TriadPair(vertex);
                if signs.contains(&Sign::Positive) {
                    // (a+ε, near) nested inside (a-ε, far)
                    chords.push(Chord::new(plus, first[near], sign_of(near), group));
                    chords.push(Chord::new(minus, first[far], sign_of(far), group));
                } else {
                    // (a-ε, near) and (a+ε, far) interleave
                    chords.push(Chord::new(
                        minus,
                        first[near],
                        sign_of(near).flipped(),
                        group,
                    ));
                    chords.push(Chord::new(plus, first[far], sign_of(far).flipped(), group));
                }
            }
            StarElement::DoubleChord {
                principal,
                others,
                signs,
                vertex,
            } => {
                let (minus, plus) = eps(principal);
                let group = ChordGroup::DoublePair(vertex);
                // others[0] is nearer going forward; (a-ε, far) contains (a+ε, near)
                chords.push(Chord::new(minus, first[others[1]], signs[1], group));
                chords.push(Chord::new(plus, first[others[0]], signs[0], group));
            }
        }
    }
    let diagram = SignedChordDiagram::new(origin.len(), chords)?;
    Ok(Expansion { diagram, origin })
}

/// Number of circles left after surgery along every chord: a positive chord
/// `(a, b)` joins `a+ε–b-ε` and `a-ε–b+ε`, a negative one joins `a+ε–b+ε` and
/// `a-ε–b-ε`. Traced directly on the endpoint neighbourhoods.
pub fn surgery_circle_count(d: &SignedChordDiagram) -> usize {
    let n = d.point_count();
    if n == 0 {
        return 1;
    }
    // end 2p is p-ε, 2p+1 is p+ε; each end has one arc and one chord link
    let mut across = vec![0; 2 * n];
    for c in d.chords() {
        let [a, b] = c.ends;
        let (lo, hi) = match c.sign {
            Sign::Positive => ((2 * a + 1, 2 * b), (2 * a, 2 * b + 1)),
            Sign::Negative => ((2 * a + 1, 2 * b + 1), (2 * a, 2 * b)),
        };
        for (x, y) in [lo, hi] {
            across[x] = y;
            across[y] = x;
        }
    }
    let along = |end: usize| {
        let p = end / 2;
        if end % 2 == 1 {
            2 * ((p + 1) % n)
        } else {
            2 * ((p + n - 1) % n) + 1
        }
    };
    let mut seen = vec![false; 2 * n];
    let mut circles = 0;
    for start in 0..2 * n {
        if seen[start] {
            continue;
        }
        circles += 1;
        let mut end = start;
        loop {
            seen[end] = true;
            let next = along(end);
            seen[next] = true;
            end = across[next];
            if end == start {
                break;
            }
        }
    }
    circles
}

/// Diagonal marks negative chords, off-diagonal marks linked pairs; chords in
/// canonical order.
pub fn intersection_matrix(d: &SignedChordDiagram) -> Gf2Matrix {
    let chords = d.chords();
    Gf2Matrix::from_fn(chords.len(), |i, j| {
        if i == j {
            chords[i].sign.is_negative()
        } else {
            chords[i].links(&chords[j])
        }
    })
}

/// Removes the negative chord `index`, reverses the points strictly between
/// its endpoints and flips the sign of every chord with exactly one endpoint
/// there.
pub fn reverse_segment_transform(
    d: &SignedChordDiagram,
    index: usize,
) -> Result<SignedChordDiagram> {
    reverse_segment_transform_mapped(d, index).map(|(reduced, _)| reduced)
}

/// As [`reverse_segment_transform`], also returning for every chord of `d`
/// its index in the result (`None` for the removed chord).
pub fn reverse_segment_transform_mapped(
    d: &SignedChordDiagram,
    index: usize,
) -> Result<(SignedChordDiagram, Vec<Option<usize>>)> {
    let c = *d.chords().get(index).ok_or(Error::NoSuchChord(index))?;
    if c.sign == Sign::Positive {
        return Err(Error::PositiveChord(index));
    }
    let [p, q] = c.ends;
    let inside = |x: usize| p < x && x < q;
    let new_index = |x: usize| {
        if x < p {
            x
        } else if inside(x) {
            // q-1 ↦ p, …, p+1 ↦ q-2
            p + (q - 1 - x)
        } else {
            x - 2
        }
    };
    let chords = d
        .chords()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, k)| {
            let crossing = inside(k.ends[0]) != inside(k.ends[1]);
            let sign = if crossing { k.sign.flipped() } else { k.sign };
            Chord::new(new_index(k.ends[0]), new_index(k.ends[1]), sign, k.group)
        })
        .collect();
    let reduced = SignedChordDiagram::new(d.point_count() - 2, chords)?;
    let mut at_point = vec![0; reduced.point_count()];
    for (i, k) in reduced.chords().iter().enumerate() {
        at_point[k.ends[0]] = i;
    }
    let map = d
        .chords()
        .iter()
        .enumerate()
        .map(|(i, k)| {
            (i != index).then(|| at_point[new_index(k.ends[0]).min(new_index(k.ends[1]))])
        })
        .collect();
    Ok((reduced, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{build_rotating_splitting_circuit, TransitionSystem};
    use crate::star_graph::HalfEdgeRef;
    use Sign::*;

    fn free(a: usize, b: usize, sign: Sign, v: usize) -> Chord {
        Chord::new(a, b, sign, ChordGroup::Free(v))
    }

    fn diagram(chords: &[(usize, usize, Sign)]) -> SignedChordDiagram {
        let chords = chords
            .iter()
            .enumerate()
            .map(|(i, &(a, b, s))| free(a, b, s, i))
            .collect::<Vec<_>>();
        SignedChordDiagram::new(2 * chords.len(), chords).unwrap()
    }

    fn g1() -> StarGraph {
        let mut g = StarGraph::new();
        let v = g.add_vertex("v", 4);
        g.join((v, 0), (v, 2));
        g.join((v, 1), (v, 3));
        g
    }

    fn g3() -> StarGraph {
        let mut g = StarGraph::new();
        let v = g.add_vertex("v", 6);
        g.join((v, 0), (v, 2));
        g.join((v, 1), (v, 4));
        g.join((v, 3), (v, 5));
        g
    }

    #[test]
    fn g1_chord_is_negative() {
        let g = g1();
        let c = build_rotating_splitting_circuit(&g).unwrap();
        let d = build_star_chord_diagram(&g, &c).unwrap();
        assert_eq!(
            d.elements,
            vec![StarElement::Chord {
                ends: [0, 1],
                sign: Negative,
                vertex: 0
            }]
        );
        let x = expand(&d).unwrap().diagram;
        assert_eq!(x.chords(), &[free(0, 1, Negative, 0)]);
        assert_eq!(intersection_matrix(&x), Gf2Matrix::from_rows(&[&[1]]));
    }

    #[test]
    fn g3_triad_and_expansion() {
        let g = g3();
        let ts = TransitionSystem::rotating(&g);
        // circuit (2→3),(5→4),(1→0): legs (+,-,-)
        let c = RotatingSplittingCircuit::from_transitions(&g, ts, HalfEdgeRef::new(0, 2)).unwrap();
        let d = build_star_chord_diagram(&g, &c).unwrap();
        assert_eq!(
            d.elements,
            vec![StarElement::Triad {
                ends: [0, 1, 2],
                signs: [Positive, Negative, Negative],
                vertex: 0
            }]
        );
        let x = expand(&d).unwrap();
        let t = ChordGroup::TriadPair(0);
        // points: q1-ε=0, q1+ε=1, q2=2, q3=3
        assert_eq!(
            x.diagram.chords(),
            &[Chord::new(0, 3, Negative, t), Chord::new(1, 2, Negative, t)]
        );
        assert_eq!(x.origin, vec![0, 0, 1, 2]);
        assert!(!x.diagram.linked(0, 1));
        assert_eq!(intersection_matrix(&x.diagram), Gf2Matrix::identity(2));
    }

    #[test]
    fn all_negative_triad_links() {
        let d = SignedStarChordDiagram {
            point_count: 3,
            elements: vec![StarElement::Triad {
                ends: [0, 1, 2],
                signs: [Negative; 3],
                vertex: 0,
            }],
        };
        let x = expand(&d).unwrap().diagram;
        assert_eq!(x.len(), 2);
        assert!(x.linked(0, 1));
        assert!(x.chords().iter().all(|c| c.sign == Positive));
        assert_eq!(x.groups(), vec![(ChordGroup::TriadPair(0), vec![0, 1])]);
    }

    #[test]
    fn expansion_pairs_by_case() {
        for signs in [
            [Positive, Positive, Negative],
            [Negative, Negative, Positive],
            [Positive; 3],
        ] {
            for ends in [[0, 2, 4], [1, 3, 5]] {
                let mut elements = vec![StarElement::Triad {
                    ends,
                    signs,
                    vertex: 0,
                }];
                let rest: Vec<usize> = (0..6).filter(|p| !ends.contains(p)).collect();
                elements.push(StarElement::DoubleChord {
                    principal: rest[1],
                    others: [rest[2], rest[0]],
                    signs: [Negative, Positive],
                    vertex: 1,
                });
                let x = expand(&SignedStarChordDiagram {
                    point_count: 6,
                    elements,
                })
                .unwrap()
                .diagram;
                for (_, members) in x.groups() {
                    assert!(!x.linked(members[0], members[1]));
                }
            }
        }
    }

    #[test]
    fn splitting_vertex_signs() {
        // loops {0,1},{2,4},{3,5} with passages (0,3),(1,2),(4,5)
        let mut g = StarGraph::new();
        let v = g.add_vertex("v", 6);
        g.join((v, 0), (v, 1));
        g.join((v, 2), (v, 4));
        g.join((v, 3), (v, 5));
        let ts = TransitionSystem::from_passages(&g, &[vec![(0, 3), (1, 2), (4, 5)]]).unwrap();
        let c = RotatingSplittingCircuit::from_transitions(&g, ts, HalfEdgeRef::new(0, 0)).unwrap();
        // (0→3) (5→4) (2→1): principal arrives at 0
        let got: Vec<_> = c.passages().iter().map(|p| (p.arrive, p.depart)).collect();
        assert_eq!(got, vec![(0, 3), (5, 4), (2, 1)]);
        let d = build_star_chord_diagram(&g, &c).unwrap();
        // departures 4 and 1: only 1 is adjacent to the principal arrival 0
        assert_eq!(
            d.elements,
            vec![StarElement::DoubleChord {
                principal: 0,
                others: [1, 2],
                signs: [Negative, Positive],
                vertex: 0
            }]
        );
        let x = expand(&d).unwrap().diagram;
        let g = ChordGroup::DoublePair(0);
        assert_eq!(
            x.chords(),
            &[Chord::new(0, 3, Positive, g), Chord::new(1, 2, Negative, g)]
        );
    }

    #[test]
    fn surgery_examples() {
        assert_eq!(surgery_circle_count(&SignedChordDiagram::empty()), 1);
        assert_eq!(surgery_circle_count(&diagram(&[(0, 1, Positive)])), 2);
        assert_eq!(surgery_circle_count(&diagram(&[(0, 1, Negative)])), 1);
        assert_eq!(
            surgery_circle_count(&diagram(&[(0, 2, Positive), (1, 3, Positive)])),
            1
        );
        assert_eq!(
            surgery_circle_count(&diagram(&[(0, 3, Positive), (1, 2, Positive)])),
            3
        );
    }

    #[test]
    fn matrix_examples() {
        let linked = diagram(&[(0, 2, Positive), (1, 3, Positive)]);
        assert_eq!(
            intersection_matrix(&linked),
            Gf2Matrix::from_rows(&[&[0, 1], &[1, 0]])
        );
        assert_eq!(
            intersection_matrix(&diagram(&[(0, 1, Negative)])),
            Gf2Matrix::from_rows(&[&[1]])
        );
    }

    #[test]
    fn canonical_order_and_malformed() {
        let d = diagram(&[(2, 3, Positive), (1, 0, Negative)]);
        assert_eq!(d.chords()[0].ends, [0, 1]);
        assert!(
            SignedChordDiagram::new(4, vec![free(0, 1, Positive, 0), free(1, 2, Positive, 1)])
                .is_err()
        );
        assert!(SignedChordDiagram::new(3, vec![free(0, 1, Positive, 0)]).is_err());
        let lonely = SignedChordDiagram::new(
            2,
            vec![Chord::new(0, 1, Positive, ChordGroup::TriadPair(0))],
        )
        .unwrap();
        assert!(lonely.check_groups().is_err());
    }

    #[test]
    fn reverse_segment_examples() {
        let single = diagram(&[(0, 1, Negative)]);
        assert_eq!(
            reverse_segment_transform(&single, 0).unwrap(),
            SignedChordDiagram::empty()
        );

        // c = (0,2) negative, x = (1,3) positive
        let d = diagram(&[(0, 2, Negative), (1, 3, Positive)]);
        let r = reverse_segment_transform(&d, 0).unwrap();
        assert_eq!(r.chords(), &[free(0, 1, Negative, 1)]);

        // c = (0,5), nested (1,2) positive and (3,4) negative inside
        let d = diagram(&[(0, 5, Negative), (1, 2, Positive), (3, 4, Negative)]);
        let r = reverse_segment_transform(&d, 0).unwrap();
        assert_eq!(
            r.chords(),
            &[free(0, 1, Negative, 2), free(2, 3, Positive, 1)]
        );

        assert_eq!(
            reverse_segment_transform(&d, 1),
            Err(Error::PositiveChord(1))
        );
        assert_eq!(reverse_segment_transform(&d, 7), Err(Error::NoSuchChord(7)));
    }

    #[test]
    fn reverse_segment_is_a_schur_complement() {
        for d in crate::generate::all_diagrams(4) {
            let m = intersection_matrix(&d);
            for c in (0..d.len()).filter(|&c| d.chords()[c].sign.is_negative()) {
                let (r, map) = reverse_segment_transform_mapped(&d, c).unwrap();
                let mr = intersection_matrix(&r);
                assert_eq!(mr.rank() + 1, m.rank());
                for i in 0..d.len() {
                    for j in 0..d.len() {
                        if let (Some(x), Some(y)) = (map[i], map[j]) {
                            let expected = m.get(i, j) ^ (m.get(i, c) & m.get(c, j));
                            assert_eq!(mr.get(x, y), expected, "{d:?} at {c}");
                            assert_eq!(r.chords()[x].group, d.chords()[i].group);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reverse_segment_with_two_crossing_chords() {
        // c = (0,3) linked to x = (1,4) and y = (2,5), which link each other
        let d = diagram(&[(0, 3, Negative), (1, 4, Positive), (2, 5, Positive)]);
        let r = reverse_segment_transform(&d, 0).unwrap();
        assert_eq!(
            r.chords(),
            &[free(0, 3, Negative, 2), free(1, 2, Negative, 1)]
        );
        assert!(!r.linked(0, 1));
    }
}
