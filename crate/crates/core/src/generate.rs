//! Graph and diagram generators for property tests, benchmarks and the
//! oracle sweep. Random generators are seeded and reproducible.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chord_model::{Chord, ChordGroup, Sign, SignedChordDiagram};
use crate::star_graph::{HalfEdgeRef, StarGraph};

/// All perfect matchings of `0..n` (`n` even), each as a list of pairs with
/// the smaller element first.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(
        free: &mut Vec<usize>,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let first = free.remove(0);
        for k in 0..free.len() {
            let partner = free.remove(k);
            acc.push((first, partner));
            go(free, acc, out);
            acc.pop();
            free.insert(k, partner);
        }
        free.insert(0, first);
    }
    assert!(n.is_multiple_of(2), "perfect matchings need an even count");
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

fn graph_from_matching(degrees: &[usize], matching: &[(usize, usize)]) -> StarGraph {
    let mut g = StarGraph::new();
    let mut refs = Vec::new();
    for (i, &d) in degrees.iter().enumerate() {
        let v = g.add_vertex(format!("v{i}"), d);
        refs.extend((0..d).map(|slot| HalfEdgeRef { vertex: v, slot }));
    }
    for &(a, b) in matching {
        g.join(
            (refs[a].vertex, refs[a].slot),
            (refs[b].vertex, refs[b].slot),
        );
    }
    g
}

/// Every connected ∗-graph on one or two vertices, one per degree sequence
/// and half-edge matching (labelled, so isomorphic copies repeat).
pub fn small_graphs() -> Vec<StarGraph> {
    let sequences: [&[usize]; 5] = [&[4], &[6], &[4, 4], &[4, 6], &[6, 6]];
    let mut out = Vec::new();
    for degrees in sequences {
        let total = degrees.iter().sum();
        for m in perfect_matchings(total) {
            let g = graph_from_matching(degrees, &m);
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

/// A connected ∗-graph with `vertices` vertices of random degree 4 or 6 and
/// a uniformly random pairing of half-edges, resampled until connected.
pub fn random_graph(rng: &mut impl Rng, vertices: usize) -> StarGraph {
    assert!(vertices > 0, "a graph needs a vertex");
    loop {
        let degrees: Vec<usize> = (0..vertices)
            .map(|_| if rng.gen_bool(0.5) { 4 } else { 6 })
            .collect();
        let total: usize = degrees.iter().sum();
        let mut halves: Vec<usize> = (0..total).collect();
        halves.shuffle(rng);
        let matching: Vec<(usize, usize)> = halves.chunks(2).map(|p| (p[0], p[1])).collect();
        let g = graph_from_matching(&degrees, &matching);
        if g.is_connected() {
            return g;
        }
    }
}

/// `count` connected graphs with between 1 and `max_vertices` vertices.
pub fn random_graphs(seed: u64, count: usize, max_vertices: usize) -> Vec<StarGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_vertices);
            random_graph(&mut rng, n)
        })
        .collect()
}

fn free_diagram(
    matching: &[(usize, usize)],
    negative: impl Fn(usize) -> bool,
) -> SignedChordDiagram {
    let chords = matching
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let sign = if negative(i) {
                Sign::Negative
            } else {
                Sign::Positive
            };
            Chord::new(a, b, sign, ChordGroup::Free(i))
        })
        .collect();
    SignedChordDiagram::new(2 * matching.len(), chords).expect("matching is well formed")
}

/// A diagram of `chords` free chords with a uniform random matching, each
/// chord negative with probability `negative`.
pub fn random_diagram(rng: &mut impl Rng, chords: usize, negative: f64) -> SignedChordDiagram {
    let mut points: Vec<usize> = (0..2 * chords).collect();
    points.shuffle(rng);
    let matching: Vec<(usize, usize)> = points.chunks(2).map(|p| (p[0], p[1])).collect();
    let signs: Vec<bool> = (0..chords).map(|_| rng.gen_bool(negative)).collect();
    free_diagram(&matching, |i| signs[i])
}

/// Every signed diagram of free chords with at most `max_chords` chords.
pub fn all_diagrams(max_chords: usize) -> Vec<SignedChordDiagram> {
    let mut out = Vec::new();
    for m in 0..=max_chords {
        for matching in perfect_matchings(2 * m) {
            for mask in 0..1u32 << m {
                out.push(free_diagram(&matching, |i| mask >> i & 1 == 1));
            }
        }
    }
    out
}
