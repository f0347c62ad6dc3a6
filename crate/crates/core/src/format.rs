//! Text formats for graphs, chord diagrams and circuits.
//!
//! Graph files hold `vertex <name> <4|6>` and `edge <name>.<slot>
//! <name>.<slot>` lines; diagram files hold a `points <2m>` header followed by
//! `chord <p> <q> <+|-> <free|triad|double>:<vertex>` lines. In both, `#`
//! starts a comment and blank lines are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::chord_model::{
    Chord, ChordGroup, Sign, SignedChordDiagram, SignedStarChordDiagram, StarElement,
};
use crate::circuits::RotatingSplittingCircuit;
use crate::error::{Error, Result};
use crate::star_graph::{HalfEdgeRef, StarGraph};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_number(line: usize, s: &str, what: &str) -> Result<usize> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        return Err(parse_error(
            line,
            format!("{what} `{s}` is not a decimal number"),
        ));
    }
    s.parse()
        .map_err(|_| parse_error(line, format!("{what} `{s}` is too large")))
}

pub fn parse_graph(text: &str) -> Result<StarGraph> {
    let mut graph = StarGraph::new();
    let mut names = HashMap::new();
    let mut vertex_line = Vec::new();
    let mut used: Vec<Vec<Option<usize>>> = Vec::new();

    for (line, words) in content_lines(text) {
        match words[..] {
            ["vertex", name, degree] => {
                if !is_name(name) {
                    return Err(parse_error(line, format!("invalid vertex name `{name}`")));
                }
                let degree = parse_number(line, degree, "degree")?;
                if degree != 4 && degree != 6 {
                    return Err(parse_error(
                        line,
                        format!("vertex {name} has degree {degree}, expected 4 or 6"),
                    ));
                }
                if names.contains_key(name) {
                    return Err(parse_error(line, format!("vertex {name} is declared twice")));
                }
                names.insert(name, graph.add_vertex(name, degree));
                vertex_line.push(line);
                used.push(vec![None; degree]);
            }
            ["edge", a, b] => {
                let mut ends = [HalfEdgeRef::new(0, 0); 2];
                for (end, s) in ends.iter_mut().zip([a, b]) {
                    let (name, slot) = s
                        .split_once('.')
                        .ok_or_else(|| parse_error(line, format!("expected <name>.<slot>, found `{s}`")))?;
                    let vertex = *names
                        .get(name)
                        .ok_or_else(|| parse_error(line, format!("unknown vertex `{name}`")))?;
                    let slot = parse_number(line, slot, "slot")?;
                    let degree = graph.vertices()[vertex].degree;
                    if slot >= degree {
                        return Err(parse_error(
                            line,
                            format!("slot {slot} out of range for {name} of degree {degree}"),
                        ));
                    }
                    if let Some(previous) = used[vertex][slot] {
                        return Err(parse_error(
                            line,
                            format!("slot {name}.{slot} already used on line {previous}"),
                        ));
                    }
                    used[vertex][slot] = Some(line);
                    *end = HalfEdgeRef::new(vertex, slot);
                }
                graph.add_edge(ends[0], ends[1]);
            }
            _ => {
                return Err(parse_error(
                    line,
                    format!("expected `vertex <name> <4|6>` or `edge <name>.<slot> <name>.<slot>`, found `{}`", words.join(" ")),
                ))
            }
        }
    }
    for (v, slots) in used.iter().enumerate() {
        if let Some(slot) = slots.iter().position(Option::is_none) {
            return Err(parse_error(
                vertex_line[v],
                format!("slot {}.{slot} has no edge", graph.name(v)),
            ));
        }
    }
    graph.ensure_valid()?;
    Ok(graph)
}

pub fn write_graph(graph: &StarGraph) -> String {
    let mut out = String::new();
    for v in graph.vertices() {
        let _ = writeln!(out, "vertex {} {}", v.name, v.degree);
    }
    for [a, b] in graph.edges() {
        let _ = writeln!(
            out,
            "edge {}.{} {}.{}",
            graph.name(a.vertex),
            a.slot,
            graph.name(b.vertex),
            b.slot
        );
    }
    out
}

/// `free:<v>`, `triad:<v>` or `double:<v>`.
pub fn group_tag(group: ChordGroup) -> String {
    match group {
        ChordGroup::Free(v) => format!("free:{v}"),
        ChordGroup::TriadPair(v) => format!("triad:{v}"),
        ChordGroup::DoublePair(v) => format!("double:{v}"),
    }
}

fn parse_group(line: usize, s: &str) -> Result<ChordGroup> {
    let (kind, v) = s.split_once(':').ok_or_else(|| {
        parse_error(
            line,
            format!("expected <free|triad|double>:<vertex>, found `{s}`"),
        )
    })?;
    let v = parse_number(line, v, "group vertex")?;
    match kind {
        "free" => Ok(ChordGroup::Free(v)),
        "triad" => Ok(ChordGroup::TriadPair(v)),
        "double" => Ok(ChordGroup::DoublePair(v)),
        _ => Err(parse_error(line, format!("unknown group kind `{kind}`"))),
    }
}

fn parse_sign(line: usize, s: &str) -> Result<Sign> {
    match s {
        "+" => Ok(Sign::Positive),
        "-" => Ok(Sign::Negative),
        _ => Err(parse_error(
            line,
            format!("expected sign + or -, found `{s}`"),
        )),
    }
}

pub fn parse_diagram(text: &str) -> Result<SignedChordDiagram> {
    let mut points = None;
    let mut chords = Vec::new();
    let mut last_line = 0;
    for (line, words) in content_lines(text) {
        last_line = line;
        match (points, &words[..]) {
            (None, ["points", n]) => points = Some(parse_number(line, n, "point count")?),
            (None, _) => return Err(parse_error(line, "expected `points <2m>` before any chord")),
            (Some(_), ["chord", p, q, sign, group]) => {
                let p = parse_number(line, p, "point")?;
                let q = parse_number(line, q, "point")?;
                if p == q {
                    return Err(parse_error(
                        line,
                        format!("chord joins point {p} to itself"),
                    ));
                }
                chords.push(Chord::new(
                    p,
                    q,
                    parse_sign(line, sign)?,
                    parse_group(line, group)?,
                ));
            }
            (Some(_), _) => {
                return Err(parse_error(
                    line,
                    format!(
                        "expected `chord <p> <q> <+|-> <group>`, found `{}`",
                        words.join(" ")
                    ),
                ))
            }
        }
    }
    let points =
        points.ok_or_else(|| parse_error(last_line.max(1), "missing `points <2m>` header"))?;
    let d = SignedChordDiagram::new(points, chords)?;
    d.check_groups()?;
    Ok(d)
}

pub fn write_diagram(d: &SignedChordDiagram) -> String {
    let mut out = format!("points {}\n", d.point_count());
    for c in d.chords() {
        let _ = writeln!(
            out,
            "chord {} {} {} {}",
            c.ends[0],
            c.ends[1],
            c.sign,
            group_tag(c.group)
        );
    }
    out
}

/// One line per element: `chord p q s`, `triad p q r s s s` or
/// `double a b c s s`, each followed by the vertex name.
pub fn write_star_diagram(graph: &StarGraph, d: &SignedStarChordDiagram) -> String {
    let mut out = format!("points {}\n", d.point_count);
    for e in &d.elements {
        let _ = match e {
            StarElement::Chord { ends, sign, vertex } => {
                writeln!(
                    out,
                    "chord {} {} {} {}",
                    ends[0],
                    ends[1],
                    sign,
                    graph.name(*vertex)
                )
            }
            StarElement::Triad {
                ends,
                signs,
                vertex,
            } => writeln!(
                out,
                "triad {} {} {} {} {} {} {}",
                ends[0],
                ends[1],
                ends[2],
                signs[0],
                signs[1],
                signs[2],
                graph.name(*vertex)
            ),
            StarElement::DoubleChord {
                principal,
                others,
                signs,
                vertex,
            } => writeln!(
                out,
                "double {} {} {} {} {} {}",
                principal,
                others[0],
                others[1],
                signs[0],
                signs[1],
                graph.name(*vertex)
            ),
        };
    }
    out
}

/// The passages of the circuit in order, `v.in->v.out`, each followed by
/// the edge `e<index>` leading to the next passage.
pub fn write_circuit(graph: &StarGraph, circuit: &RotatingSplittingCircuit) -> Result<String> {
    let edge_at = graph.edge_at()?;
    let words: Vec<String> = circuit
        .passages()
        .iter()
        .map(|p| {
            let name = graph.name(p.vertex);
            format!(
                "{name}.{}->{name}.{} e{}",
                p.arrive, p.depart, edge_at[p.vertex][p.depart]
            )
        })
        .collect();
    Ok(words.join(" "))
}
