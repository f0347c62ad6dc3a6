//! Machine-readable reports. Every report is a JSON object carrying
//! `"schema": 1` and the name of the command that produced it; object keys
//! are sorted, so equal inputs give byte-identical output.

use serde_json::{json, Map, Value};

use crate::chord_model::{Expansion, SignedChordDiagram, SignedStarChordDiagram, StarElement};
use crate::circuits::RotatingSplittingCircuit;
use crate::error::{Error, Result};
use crate::fast_tests::{FastVerdict, KleinVerdict};
use crate::format::group_tag;
use crate::genus_solver::{GenusReport, Orientability, Partition, Side};
use crate::star_graph::StarGraph;

pub const SCHEMA: u64 = 1;

/// Adds the schema and command fields to an object.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(map) => map,
        other => {
            let mut map = Map::new();
            map.insert("result".into(), other);
            map
        }
    };
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("command".into(), json!(command));
    Value::Object(map)
}

/// Pretty-printed with a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Stable snake_case identifier of an error kind.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::EqualSlots(..) => "equal_slots",
        Error::SlotOutOfRange { .. } => "slot_out_of_range",
        Error::UnsupportedDegree(_) => "unsupported_degree",
        Error::UnknownVertex(_) => "unknown_vertex",
        Error::InvalidGraph(_) => "invalid_graph",
        Error::EmptyGraph => "empty_graph",
        Error::Disconnected => "disconnected",
        Error::InvalidTransitions(_) => "invalid_transitions",
        Error::NotRotatingSix(_) => "not_rotating_six",
        Error::CircuitMismatch(_) => "circuit_mismatch",
        Error::MalformedDiagram(_) => "malformed_diagram",
        Error::NoSuchChord(_) => "no_such_chord",
        Error::PositiveChord(_) => "positive_chord",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::NotPermissible(_) => "not_permissible",
        Error::OrientableGate => "orientable_gate",
        Error::TooLarge { .. } => "too_large",
        Error::Parse { .. } => "parse",
    }
}

pub fn error_report(command: &str, e: &Error) -> Value {
    let mut error = json!({ "kind": error_kind(e), "message": e.to_string() });
    if let Error::Parse { line, .. } = e {
        error["line"] = json!(line);
    }
    envelope(command, json!({ "error": error }))
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::W => "W",
        Side::B => "B",
    }
}

pub fn partition_json(p: &Partition) -> Value {
    json!(p.sides.iter().map(|&s| side_name(s)).collect::<Vec<_>>())
}

fn orientability_name(o: Orientability) -> &'static str {
    match o {
        Orientability::Orientable => "orientable",
        Orientability::Nonorientable => "nonorientable",
    }
}

pub fn check_report(graph: &StarGraph) -> Value {
    envelope(
        "check",
        json!({
            "valid": graph.validate().is_valid(),
            "connected": graph.is_connected(),
            "vertices": graph.vertex_count(),
            "edges": graph.edges().len(),
            "degree_4": graph.vertices().iter().filter(|v| v.degree == 4).count(),
            "degree_6": graph.vertices().iter().filter(|v| v.degree == 6).count(),
        }),
    )
}

pub fn circuit_report(graph: &StarGraph, circuit: &RotatingSplittingCircuit) -> Result<Value> {
    let edge_at = graph.edge_at()?;
    let passages = circuit
        .passages()
        .iter()
        .map(|p| {
            json!({
                "vertex": graph.name(p.vertex),
                "arrive": p.arrive,
                "depart": p.depart,
                "edge": edge_at[p.vertex][p.depart],
            })
        })
        .collect::<Vec<_>>();
    let kinds = (0..graph.vertex_count())
        .map(|v| {
            circuit.kind(graph, v).map(
                |k| json!({ "vertex": graph.name(v), "kind": format!("{k:?}").to_lowercase() }),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(envelope(
        "circuit",
        json!({ "passages": passages, "vertices": kinds }),
    ))
}

pub fn star_diagram_report(graph: &StarGraph, d: &SignedStarChordDiagram) -> Value {
    let signs =
        |s: &[crate::chord_model::Sign]| s.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let elements = d
        .elements
        .iter()
        .map(|e| match e {
            StarElement::Chord { ends, sign, vertex } => json!({
                "type": "chord", "vertex": graph.name(*vertex), "points": ends, "signs": signs(&[*sign]),
            }),
            StarElement::Triad { ends, signs: s, vertex } => json!({
                "type": "triad", "vertex": graph.name(*vertex), "points": ends, "signs": signs(s),
            }),
            StarElement::DoubleChord {
                principal,
                others,
                signs: s,
                vertex,
            } => json!({
                "type": "double", "vertex": graph.name(*vertex),
                "points": [principal, others[0], others[1]], "signs": signs(s),
            }),
        })
        .collect::<Vec<_>>();
    envelope(
        "diagram",
        json!({ "points": d.point_count, "elements": elements }),
    )
}

pub fn diagram_json(d: &SignedChordDiagram) -> Value {
    let chords = d
        .chords()
        .iter()
        .map(|c| {
            json!({
                "ends": c.ends,
                "sign": c.sign.to_string(),
                "group": group_tag(c.group),
            })
        })
        .collect::<Vec<_>>();
    json!({ "points": d.point_count(), "chords": chords })
}

pub fn expansion_report(x: &Expansion) -> Value {
    let mut body = diagram_json(&x.diagram);
    body["origin"] = json!(x.origin);
    envelope("expand", body)
}

pub fn spectrum_report(r: &GenusReport) -> Value {
    let witnesses: Map<String, Value> = r
        .witnesses
        .iter()
        .map(|(g, p)| (g.to_string(), partition_json(p)))
        .collect();
    envelope(
        "spectrum",
        json!({
            "orientability": orientability_name(r.orientability),
            "chords": r.chord_count,
            "groups": r.group_count,
            "spectrum": r.spectrum,
            "min_genus": r.min_genus(),
            "witnesses": witnesses,
        }),
    )
}

pub fn genus_report(g: usize, r: &GenusReport) -> Value {
    envelope(
        "genus",
        json!({
            "genus": g,
            "achievable": r.spectrum.contains(&g),
            "witness": r.witnesses.get(&g).map(partition_json),
        }),
    )
}

pub fn rp2_report(v: &FastVerdict) -> Value {
    envelope(
        "rp2",
        json!({
            "embeddable": v.embeddable,
            "witness": v.witness.as_ref().map(partition_json),
            "pair_visits": v.pair_visits,
        }),
    )
}

pub fn klein_report(v: &KleinVerdict) -> Value {
    let case = if v.mobius.embeddable {
        Some("mobius")
    } else if v.embeddable {
        Some("disc")
    } else {
        None
    };
    let disc = v.disc.as_ref().map(|d| {
        json!({
            "embeddable": d.embeddable,
            "chord": d.chord,
            "transformed": d.transformed.as_ref().map(diagram_json),
            "reduced_witness": d.reduced_witness.as_ref().map(partition_json),
        })
    });
    envelope(
        "klein",
        json!({
            "embeddable": v.embeddable,
            "case": case,
            "witness": v.witness().map(partition_json),
            "disc": disc,
            "pair_visits": v.pair_visits(),
        }),
    )
}
