//! Fast decisions for the projective plane and the Klein bottle.
//!
//! Both work on the expansion. The projective-plane test and the Möbius case
//! of the Klein test propagate side assignments along forced relations and
//! then verify the separation; a side has rank 0 iff its matrix vanishes and
//! rank 1 iff the matrix is `vvᵀ` where `v` marks its negative chords, so
//! verification is quadratic too.
//!
//! The disc case of the Klein test (one side of rank 2, the other of rank 0)
//! performs surgery at a negative chord and then decides the reduced
//! separation problem, which is a 2-SAT instance over chord sides.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::chord_model::{reverse_segment_transform_mapped, ChordGroup, SignedChordDiagram};
use crate::circuits::build_rotating_splitting_circuit;
use crate::error::{Error, Result};
use crate::genus_solver::{
    check_permissible, expansion_for, side_ranks, source_sink_gate, Orientability, Partition, Side,
};
use crate::star_graph::StarGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastVerdict {
    pub embeddable: bool,
    /// The verified separation when embeddable.
    pub witness: Option<Partition>,
    /// Chord pairs examined during propagation and verification.
    pub pair_visits: u64,
}

/// Which negative chords the disc case tries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum NegativeChordChoice {
    #[default]
    Every,
    First,
}

/// How the disc case decides the diagram obtained by surgery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DiscMethod {
    /// Solve the reduced separation problem exactly and verify the lifted
    /// separation on the original diagram.
    #[default]
    Exact,
    /// Run the Möbius-case propagation on the reduced diagram and accept its
    /// verdict as is. Kept for auditing; it disagrees with exhaustive
    /// enumeration on some graphs.
    MobiusPropagation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct KleinOptions {
    pub method: DiscMethod,
    pub choice: NegativeChordChoice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscVerdict {
    pub embeddable: bool,
    /// Index in the expansion of the negative chord that succeeded.
    pub chord: Option<usize>,
    /// The diagram after surgery at that chord.
    pub transformed: Option<SignedChordDiagram>,
    /// Separation of the transformed diagram.
    pub reduced_witness: Option<Partition>,
    /// Separation of the original diagram with ranks summing to 2; only the
    /// exact method produces one.
    pub witness: Option<Partition>,
    pub pair_visits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KleinVerdict {
    pub embeddable: bool,
    pub mobius: FastVerdict,
    /// Only run when the Möbius case fails.
    pub disc: Option<DiscVerdict>,
}

impl KleinVerdict {
    pub fn pair_visits(&self) -> u64 {
        self.mobius.pair_visits + self.disc.as_ref().map_or(0, |d| d.pair_visits)
    }

    /// A separation of the expansion with ranks summing to 2, if known.
    pub fn witness(&self) -> Option<&Partition> {
        self.mobius
            .witness
            .as_ref()
            .or_else(|| self.disc.as_ref().and_then(|d| d.witness.as_ref()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// Linked positive chords go to the other side.
    ProjectivePlane,
    /// As above, and for a negative chord, unlinked negatives go across too.
    MobiusBands,
}

/// Side labels under propagation. Assigned labels are never changed.
struct AssignmentState {
    side: Vec<Option<Side>>,
    component: Vec<usize>,
    worklist: VecDeque<usize>,
    components: usize,
    visits: u64,
}

impl AssignmentState {
    fn new(n: usize) -> Self {
        AssignmentState {
            side: vec![None; n],
            component: vec![usize::MAX; n],
            worklist: VecDeque::new(),
            components: 0,
            visits: 0,
        }
    }

    fn assign(&mut self, chord: usize, side: Side) {
        if self.side[chord].is_none() {
            self.side[chord] = Some(side);
            self.component[chord] = self.components - 1;
            self.worklist.push_back(chord);
        }
    }

    fn seed(&mut self, chords: &[usize], side: Side) {
        self.components += 1;
        for &c in chords {
            self.assign(c, side);
        }
    }

    fn propagate(&mut self, d: &SignedChordDiagram, rule: Rule, partner: &[Option<(usize, bool)>]) {
        let chords = d.chords();
        while let Some(i) = self.worklist.pop_front() {
            let side = self.side[i].expect("queued chords are assigned");
            for j in 0..chords.len() {
                self.visits += 1;
                if i == j {
                    continue;
                }
                let linked = chords[i].links(&chords[j]);
                let positive_j = !chords[j].sign.is_negative();
                let across = match rule {
                    Rule::ProjectivePlane => linked && positive_j,
                    Rule::MobiusBands => {
                        if chords[i].sign.is_negative() {
                            (linked && positive_j) || (!linked && !positive_j)
                        } else {
                            linked
                        }
                    }
                };
                if across {
                    self.assign(j, side.other());
                }
            }
            if let Some((j, same)) = partner[i] {
                self.assign(j, if same { side } else { side.other() });
            }
        }
    }

    /// Seeds the lowest unassigned chord on `W` until every chord has a side.
    fn fill(&mut self, d: &SignedChordDiagram, rule: Rule, partner: &[Option<(usize, bool)>]) {
        self.propagate(d, rule, partner);
        while let Some(c) = self.side.iter().position(Option::is_none) {
            self.seed(&[c], Side::W);
            self.propagate(d, rule, partner);
        }
    }

    fn partition(&self) -> Partition {
        Partition {
            sides: self.side.iter().map(|s| s.expect("filled")).collect(),
        }
    }
}

/// Group partner of each chord and whether it must share the side.
fn partners(d: &SignedChordDiagram) -> Vec<Option<(usize, bool)>> {
    let mut partner = vec![None; d.len()];
    for (group, members) in d.groups() {
        if let [a, b] = members[..] {
            let same = matches!(group, ChordGroup::TriadPair(_));
            partner[a] = Some((b, same));
            partner[b] = Some((a, same));
        }
    }
    partner
}

/// `Some(0)` for a zero matrix, `Some(1)` for `vvᵀ`, `None` otherwise.
fn small_rank(d: &SignedChordDiagram, members: &[usize], visits: &mut u64) -> Option<usize> {
    let chords = d.chords();
    let mut any = false;
    for (x, &i) in members.iter().enumerate() {
        let ni = chords[i].sign.is_negative();
        any |= ni;
        for &j in &members[x + 1..] {
            *visits += 1;
            let nj = chords[j].sign.is_negative();
            if chords[i].links(&chords[j]) != (ni && nj) {
                return None;
            }
        }
    }
    Some(usize::from(any))
}

fn verify(
    d: &SignedChordDiagram,
    p: &Partition,
    visits: &mut u64,
    accept: impl Fn(usize, usize) -> bool,
) -> bool {
    if check_permissible(d, p).is_err() {
        return false;
    }
    let w = small_rank(d, &p.indices(Side::W), visits);
    let b = small_rank(d, &p.indices(Side::B), visits);
    matches!((w, b), (Some(w), Some(b)) if accept(w, b))
}

fn require_nonorientable(d: &SignedChordDiagram) -> Result<()> {
    match source_sink_gate(d) {
        Orientability::Orientable => Err(Error::OrientableGate),
        Orientability::Nonorientable => Ok(()),
    }
}

/// Negative chords all start on `W`; every assigned chord sends its linked
/// positive chords to the other side; triad partners follow and double
/// partners cross. Leftovers are seeded one at a time. Accepts iff the result
/// is permissible with ranks `(1, 0)`.
pub fn rp2_on_expansion(d: &SignedChordDiagram) -> Result<FastVerdict> {
    require_nonorientable(d)?;
    Ok(rp2_core(d))
}

fn rp2_core(d: &SignedChordDiagram) -> FastVerdict {
    let partner = partners(d);
    let mut state = AssignmentState::new(d.len());
    let negatives: Vec<usize> = (0..d.len())
        .filter(|&i| d.chords()[i].sign.is_negative())
        .collect();
    state.seed(&negatives, Side::W);
    state.fill(d, Rule::ProjectivePlane, &partner);
    let p = state.partition();
    let mut visits = state.visits;
    // negatives sit on W, so B can only reach rank 0
    let ok = verify(d, &p, &mut visits, |w, b| w + b == 1);
    FastVerdict {
        embeddable: ok,
        witness: ok.then_some(p),
        pair_visits: visits,
    }
}

fn mobius_core(d: &SignedChordDiagram) -> FastVerdict {
    let partner = partners(d);
    let mut state = AssignmentState::new(d.len());
    state.fill(d, Rule::MobiusBands, &partner);

    // components are independent; orient them so that both sides get a
    // negative chord if at all possible
    let mut negatives = vec![[0usize; 2]; state.components];
    for (i, c) in d.chords().iter().enumerate() {
        if c.sign.is_negative() {
            let side = state.side[i].expect("filled") as usize;
            negatives[state.component[i]][side] += 1;
        }
    }
    let both = negatives.iter().any(|n| n[0] > 0 && n[1] > 0);
    let mut flip = vec![false; state.components];
    if !both {
        let with: Vec<usize> = (0..state.components)
            .filter(|&k| negatives[k][0] + negatives[k][1] > 0)
            .collect();
        if let [first, rest @ ..] = &with[..] {
            let first_side = usize::from(negatives[*first][0] == 0);
            for &k in rest {
                let side = usize::from(negatives[k][0] == 0);
                flip[k] = side == first_side;
            }
        }
    }
    let p = Partition {
        sides: (0..d.len())
            .map(|i| {
                let s = state.side[i].expect("filled");
                if flip[state.component[i]] {
                    s.other()
                } else {
                    s
                }
            })
            .collect(),
    };
    let mut visits = state.visits;
    let ok = verify(d, &p, &mut visits, |w, b| w == 1 && b == 1);
    FastVerdict {
        embeddable: ok,
        witness: ok.then_some(p),
        pair_visits: visits,
    }
}

/// Separation into two sides of rank 1 each: a positive chord sends every
/// linked chord across; a negative chord sends linked positive chords and
/// unlinked negative chords across; group partners as for the projective
/// plane.
pub fn klein_case_mobius(d: &SignedChordDiagram) -> Result<FastVerdict> {
    require_nonorientable(d)?;
    Ok(mobius_core(d))
}

/// Clauses over chord sides; literal `2v` puts chord `v` on `W`, `2v + 1`
/// on `B`.
struct TwoSat {
    graph: DiGraph<(), ()>,
}

impl TwoSat {
    fn new(vars: usize) -> Self {
        let mut graph = DiGraph::with_capacity(2 * vars, 0);
        for _ in 0..2 * vars {
            graph.add_node(());
        }
        TwoSat { graph }
    }

    fn lit(v: usize, side: Side) -> usize {
        2 * v + usize::from(side == Side::B)
    }

    /// At least one of the two placements holds.
    fn either(&mut self, a: usize, b: usize) {
        self.graph
            .add_edge(NodeIndex::new(a ^ 1), NodeIndex::new(b), ());
        self.graph
            .add_edge(NodeIndex::new(b ^ 1), NodeIndex::new(a), ());
    }

    fn solve(&self) -> Option<Vec<Side>> {
        let mut comp = vec![0; self.graph.node_count()];
        // components come out sinks first
        for (k, scc) in tarjan_scc(&self.graph).iter().enumerate() {
            for n in scc {
                comp[n.index()] = k;
            }
        }
        (0..comp.len() / 2)
            .map(|v| {
                let (w, b) = (comp[2 * v], comp[2 * v + 1]);
                match w.cmp(&b) {
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Less => Some(Side::W),
                    std::cmp::Ordering::Greater => Some(Side::B),
                }
            })
            .collect()
    }
}

/// Looks for a separation of `d` with `c` on a side of rank 2 and the other
/// side of rank 0. Every negative chord lies on the rank-2 side, and surgery
/// at `c` leaves that side with rank 1 in the reduced diagram; both side
/// conditions are then pairwise, except that the reduced side must keep a
/// negative chord, which is enforced by pinning candidates one at a time.
fn disc_exact(d: &SignedChordDiagram, c: usize, visits: &mut u64) -> Result<DiscVerdict> {
    let (reduced, map) = reverse_segment_transform_mapped(d, c)?;
    let chords = d.chords();
    let reduced_chords = reduced.chords();
    let n = d.len();
    let mut back = vec![usize::MAX; reduced.len()];
    for (i, m) in map.iter().enumerate() {
        if let Some(x) = m {
            back[*x] = i;
        }
    }

    let mut base = TwoSat::new(reduced.len());
    let w = |x: usize| TwoSat::lit(x, Side::W);
    let b = |x: usize| TwoSat::lit(x, Side::B);
    for x in 0..reduced.len() {
        if chords[back[x]].sign.is_negative() {
            base.either(w(x), w(x));
        }
    }
    for (group, members) in d.groups() {
        let pair: Vec<Option<usize>> = members.iter().map(|&i| map[i]).collect();
        let same = matches!(group, ChordGroup::TriadPair(_));
        match pair[..] {
            [Some(x), Some(y)] if same => {
                base.either(w(x), b(y));
                base.either(b(x), w(y));
            }
            [Some(x), Some(y)] => {
                base.either(w(x), w(y));
                base.either(b(x), b(y));
            }
            // the partner of the chord at which surgery happened
            [Some(x), None] | [None, Some(x)] => {
                let side = if same { Side::W } else { Side::B };
                base.either(TwoSat::lit(x, side), TwoSat::lit(x, side));
            }
            _ => {}
        }
    }
    for x in 0..reduced.len() {
        for y in x + 1..reduced.len() {
            *visits += 1;
            let (rx, ry) = (&reduced_chords[x], &reduced_chords[y]);
            let together_w = rx.links(ry) == (rx.sign.is_negative() && ry.sign.is_negative());
            if !together_w {
                base.either(b(x), b(y));
            }
            let (ox, oy) = (&chords[back[x]], &chords[back[y]]);
            let together_b = !ox.links(oy) && !ox.sign.is_negative() && !oy.sign.is_negative();
            if !together_b {
                base.either(w(x), w(y));
            }
        }
    }

    let lift = |sides: &[Side]| Partition {
        sides: (0..n)
            .map(|i| map[i].map_or(Side::W, |x| sides[x]))
            .collect(),
    };
    let pins = (0..reduced.len()).filter(|&x| reduced_chords[x].sign.is_negative());
    let mut attempts = std::iter::once(None).chain(pins.map(Some));
    let found = attempts.find_map(|pin| {
        let solution = match pin {
            None => base.solve(),
            Some(x) => {
                let mut pinned = TwoSat {
                    graph: base.graph.clone(),
                };
                pinned.either(w(x), w(x));
                pinned.solve()
            }
        }?;
        let p = lift(&solution);
        (check_permissible(d, &p).is_ok() && side_ranks(d, &p).ok() == Some((2, 0)))
            .then_some((solution, p))
    });
    *visits += (n * n) as u64;
    Ok(match found {
        Some((solution, p)) => DiscVerdict {
            embeddable: true,
            chord: Some(c),
            transformed: Some(reduced),
            reduced_witness: Some(Partition { sides: solution }),
            witness: Some(p),
            pair_visits: 0,
        },
        None => DiscVerdict {
            embeddable: false,
            chord: None,
            transformed: None,
            reduced_witness: None,
            witness: None,
            pair_visits: 0,
        },
    })
}

fn disc_mobius_propagation(
    d: &SignedChordDiagram,
    c: usize,
    visits: &mut u64,
) -> Result<DiscVerdict> {
    let (reduced, _) = reverse_segment_transform_mapped(d, c)?;
    let verdict = mobius_core(&reduced);
    *visits += verdict.pair_visits;
    Ok(DiscVerdict {
        embeddable: verdict.embeddable,
        chord: verdict.embeddable.then_some(c),
        reduced_witness: verdict.witness,
        transformed: verdict.embeddable.then_some(reduced),
        witness: None,
        pair_visits: 0,
    })
}

/// Surgery at a negative chord, then a decision on the reduced diagram.
///
/// With [`DiscMethod::Exact`] a single negative chord suffices, since every
/// negative chord lies on the rank-2 side of such a separation.
pub fn klein_case_disc(d: &SignedChordDiagram, options: KleinOptions) -> Result<DiscVerdict> {
    let negatives: Vec<usize> = (0..d.len())
        .filter(|&i| d.chords()[i].sign.is_negative())
        .collect();
    if negatives.is_empty() {
        return Err(Error::OrientableGate);
    }
    let tried = match (options.method, options.choice) {
        (DiscMethod::Exact, _) | (_, NegativeChordChoice::First) => &negatives[..1],
        (_, NegativeChordChoice::Every) => &negatives[..],
    };
    let mut pair_visits = 0;
    let mut last = None;
    for &c in tried {
        let verdict = match options.method {
            DiscMethod::Exact => disc_exact(d, c, &mut pair_visits)?,
            DiscMethod::MobiusPropagation => disc_mobius_propagation(d, c, &mut pair_visits)?,
        };
        if verdict.embeddable {
            return Ok(DiscVerdict {
                pair_visits,
                ..verdict
            });
        }
        last = Some(verdict);
    }
    let verdict = last.expect("at least one negative chord");
    Ok(DiscVerdict {
        pair_visits,
        ..verdict
    })
}

pub fn klein_on_expansion(d: &SignedChordDiagram, options: KleinOptions) -> Result<KleinVerdict> {
    let mobius = klein_case_mobius(d)?;
    if mobius.embeddable {
        return Ok(KleinVerdict {
            embeddable: true,
            mobius,
            disc: None,
        });
    }
    let disc = klein_case_disc(d, options)?;
    Ok(KleinVerdict {
        embeddable: disc.embeddable,
        mobius,
        disc: Some(disc),
    })
}

fn graph_expansion(graph: &StarGraph) -> Result<SignedChordDiagram> {
    let circuit = build_rotating_splitting_circuit(graph)?;
    Ok(expansion_for(graph, &circuit)?.diagram)
}

pub fn rp2_embeddable(graph: &StarGraph) -> Result<FastVerdict> {
    rp2_on_expansion(&graph_expansion(graph)?)
}

pub fn klein_embeddable(graph: &StarGraph) -> Result<KleinVerdict> {
    klein_embeddable_with(graph, KleinOptions::default())
}

pub fn klein_embeddable_with(graph: &StarGraph, options: KleinOptions) -> Result<KleinVerdict> {
    klein_on_expansion(&graph_expansion(graph)?, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chord_model::{Chord, Sign};
    use crate::genus_solver::side_ranks;

    fn free(chords: &[(usize, usize, Sign)]) -> SignedChordDiagram {
        let chords = chords
            .iter()
            .enumerate()
            .map(|(i, &(a, b, s))| Chord::new(a, b, s, ChordGroup::Free(i)))
            .collect::<Vec<_>>();
        SignedChordDiagram::new(2 * chords.len(), chords).unwrap()
    }

    fn one_vertex(degree: usize, loops: &[(usize, usize)]) -> StarGraph {
        let mut g = StarGraph::new();
        let v = g.add_vertex("v", degree);
        for &(a, b) in loops {
            g.join((v, a), (v, b));
        }
        g
    }

    use Sign::*;

    #[test]
    fn rp2_examples() {
        let g1 = one_vertex(4, &[(0, 2), (1, 3)]);
        let g3 = one_vertex(6, &[(0, 2), (1, 4), (3, 5)]);
        let v = rp2_embeddable(&g1).unwrap();
        assert!(v.embeddable);
        assert_eq!(
            v.witness,
            Some(Partition {
                sides: vec![Side::W]
            })
        );
        assert!(!rp2_embeddable(&g3).unwrap().embeddable);

        let linked = free(&[(0, 2, Negative), (1, 3, Negative)]);
        let v = rp2_on_expansion(&linked).unwrap();
        assert!(v.embeddable);
        assert_eq!(side_ranks(&linked, v.witness.as_ref().unwrap()), Ok((1, 0)));
    }

    #[test]
    fn mobius_examples() {
        let unlinked = free(&[(0, 1, Negative), (2, 3, Negative)]);
        let v = klein_case_mobius(&unlinked).unwrap();
        assert!(v.embeddable);
        assert_eq!(
            side_ranks(&unlinked, v.witness.as_ref().unwrap()),
            Ok((1, 1))
        );

        let g3 = one_vertex(6, &[(0, 2), (1, 4), (3, 5)]);
        assert!(
            !klein_case_mobius(&graph_expansion(&g3).unwrap())
                .unwrap()
                .embeddable
        );
        assert!(
            !klein_case_mobius(&free(&[(0, 1, Negative)]))
                .unwrap()
                .embeddable
        );
    }

    #[test]
    fn mobius_needs_component_choice() {
        // two linked negatives impose nothing on each other; they must be split
        let d = free(&[(0, 2, Negative), (1, 3, Negative)]);
        let v = klein_case_mobius(&d).unwrap();
        assert!(v.embeddable);
        assert_eq!(side_ranks(&d, v.witness.as_ref().unwrap()), Ok((1, 1)));
    }

    #[test]
    fn disc_examples() {
        let single = free(&[(0, 1, Negative)]);
        let v = klein_case_disc(&single, KleinOptions::default()).unwrap();
        assert!(!v.embeddable);

        let d = free(&[(0, 3, Negative), (1, 4, Positive), (2, 5, Positive)]);
        let v = klein_case_disc(&d, KleinOptions::default()).unwrap();
        assert!(v.embeddable);
        assert_eq!(v.chord, Some(0));
        assert_eq!(side_ranks(&d, v.witness.as_ref().unwrap()), Ok((2, 0)));
        let propagation = KleinOptions {
            method: DiscMethod::MobiusPropagation,
            choice: NegativeChordChoice::Every,
        };
        assert!(klein_case_disc(&d, propagation).unwrap().embeddable);

        let all_positive = free(&[(0, 1, Positive)]);
        assert_eq!(
            klein_case_disc(&all_positive, KleinOptions::default()),
            Err(Error::OrientableGate)
        );
    }

    #[test]
    fn klein_examples() {
        let g1 = one_vertex(4, &[(0, 2), (1, 3)]);
        let g3 = one_vertex(6, &[(0, 2), (1, 4), (3, 5)]);
        assert!(klein_embeddable(&g3).unwrap().embeddable);
        assert!(!klein_embeddable(&g1).unwrap().embeddable);
        let d = free(&[(0, 1, Negative), (2, 3, Negative)]);
        assert!(
            klein_on_expansion(&d, KleinOptions::default())
                .unwrap()
                .embeddable
        );
    }

    #[test]
    fn propagation_on_the_reduced_diagram_misses_g3() {
        // G3 has only the separation with both chords on one side (ranks 2
        // and 0); surgery leaves a single negative chord, which no Möbius
        // separation accepts
        let g3 = one_vertex(6, &[(0, 2), (1, 4), (3, 5)]);
        let propagation = KleinOptions {
            method: DiscMethod::MobiusPropagation,
            choice: NegativeChordChoice::Every,
        };
        assert!(!klein_embeddable_with(&g3, propagation).unwrap().embeddable);
        let exact = klein_embeddable(&g3).unwrap();
        let d = graph_expansion(&g3).unwrap();
        assert_eq!(side_ranks(&d, exact.witness().unwrap()), Ok((2, 0)));
    }

    #[test]
    fn orientable_gate() {
        let g2 = one_vertex(4, &[(0, 1), (2, 3)]);
        assert_eq!(rp2_embeddable(&g2), Err(Error::OrientableGate));
        assert!(matches!(klein_embeddable(&g2), Err(Error::OrientableGate)));
    }
}
