//! Textual formats for ipomsets, HDAs, tracks and d-paths, plus DOT export
//! of the 1-skeleton.  Parsing goes through the module validators;
//! serialization is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::geometry::{Rat, Segment};
use crate::hda::{Hda, HdaError};
use crate::ipomset::{validate_ipomset, Ipomset, IpomsetError, RawIpomset};
use crate::precubical::{validate_precubical, PrecubicalError, RawPrecubical};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {0}: {1}")]
    Syntax(usize, String),
    #[error(transparent)]
    Ipomset(#[from] IpomsetError),
    #[error(transparent)]
    Precubical(#[from] PrecubicalError),
    #[error(transparent)]
    Hda(#[from] HdaError),
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        if l.is_empty() {
            None
        } else {
            Some((i + 1, l.split_whitespace().collect()))
        }
    })
}

pub fn parse_ipomset(text: &str) -> Result<Ipomset, ParseError> {
    let mut raw = RawIpomset::default();
    for (ln, words) in data_lines(text) {
        match words.as_slice() {
            ["elem", id, label, rest @ ..] => {
                let src = rest.contains(&"src");
                let tgt = rest.contains(&"tgt");
                if !rest.iter().all(|w| *w == "src" || *w == "tgt") {
                    return Err(ParseError::Syntax(ln, "expected src/tgt flags".into()));
                }
                raw.elements
                    .push((id.to_string(), label.to_string(), src, tgt));
            }
            ["prec", a, b] => raw.precedence.push((a.to_string(), b.to_string())),
            ["evord", a, b] => raw.event_order.push((a.to_string(), b.to_string())),
            _ => {
                return Err(ParseError::Syntax(ln, format!("unrecognized: {words:?}")));
            }
        }
    }
    Ok(validate_ipomset(&raw)?)
}

pub fn serialize_ipomset(p: &Ipomset) -> String {
    let mut out = String::new();
    for e in &p.elements {
        out.push_str(&format!("elem {e} {}", p.labels[e]));
        if p.sources.contains(e) {
            out.push_str(" src");
        }
        if p.targets.contains(e) {
            out.push_str(" tgt");
        }
        out.push('\n');
    }
    for (a, b) in &p.precedence {
        out.push_str(&format!("prec {a} {b}\n"));
    }
    for (a, b) in &p.event_order {
        out.push_str(&format!("evord {a} {b}\n"));
    }
    out
}

pub fn parse_hda(text: &str) -> Result<Hda, ParseError> {
    let mut raw = RawPrecubical::default();
    let mut labels: BTreeMap<String, String> = BTreeMap::new();
    let mut initial = BTreeSet::new();
    let mut accepting = BTreeSet::new();
    for (ln, words) in data_lines(text) {
        match words.as_slice() {
            ["cell", id, dim] => {
                let d: usize = dim
                    .parse()
                    .map_err(|_| ParseError::Syntax(ln, "bad dimension".into()))?;
                raw.cells.push((id.to_string(), d));
            }
            ["face", id, i, nu, f] => {
                let i: usize = i
                    .parse()
                    .map_err(|_| ParseError::Syntax(ln, "bad face index".into()))?;
                let nu: u8 = nu
                    .parse()
                    .map_err(|_| ParseError::Syntax(ln, "bad polarity".into()))?;
                if nu > 1 {
                    return Err(ParseError::Syntax(ln, "polarity must be 0 or 1".into()));
                }
                raw.faces.push((id.to_string(), i, nu, f.to_string()));
            }
            ["label", e, l] => {
                labels.insert(e.to_string(), l.to_string());
            }
            ["initial", c] => {
                initial.insert(c.to_string());
            }
            ["accepting", c] => {
                accepting.insert(c.to_string());
            }
            _ => {
                return Err(ParseError::Syntax(ln, format!("unrecognized: {words:?}")));
            }
        }
    }
    let pc = validate_precubical(&raw)?;
    Ok(Hda::new(pc, &labels, initial, accepting)?)
}

pub fn serialize_hda(h: &Hda) -> String {
    let mut out = String::new();
    for (c, d) in &h.pc.dims {
        out.push_str(&format!("cell {c} {d}\n"));
    }
    for (c, arr) in &h.pc.faces {
        for (i, pair) in arr.iter().enumerate() {
            for (nu, f) in pair.iter().enumerate() {
                out.push_str(&format!("face {c} {} {nu} {f}\n", i + 1));
            }
        }
    }
    for (e, l) in &h.labeling.edge_labels {
        out.push_str(&format!("label {e} {l}\n"));
    }
    for c in &h.initial {
        out.push_str(&format!("initial {c}\n"));
    }
    for c in &h.accepting {
        out.push_str(&format!("accepting {c}\n"));
    }
    out
}

pub fn parse_track_cells(text: &str) -> Vec<String> {
    text.split('#')
        .next()
        .unwrap_or("")
        .split_whitespace()
        .map(|s| s.to_string())
        .collect()
}

fn parse_rat(s: &str, ln: usize) -> Result<Rat, ParseError> {
    let parts: Vec<&str> = s.split('/').collect();
    let bad = || ParseError::Syntax(ln, format!("bad rational `{s}`"));
    match parts.as_slice() {
        [n] => Ok(BigRational::from(
            n.parse::<BigInt>().map_err(|_| bad())?,
        )),
        [n, d] => Ok(BigRational::new(
            n.parse::<BigInt>().map_err(|_| bad())?,
            d.parse::<BigInt>().map_err(|_| bad())?,
        )),
        _ => Err(bad()),
    }
}

pub fn parse_dpath(text: &str) -> Result<Vec<Segment>, ParseError> {
    let mut segments: Vec<Segment> = Vec::new();
    for (ln, words) in data_lines(text) {
        if words[0] == "seg" {
            if words.len() != 2 {
                return Err(ParseError::Syntax(ln, "expected `seg <cell>`".into()));
            }
            segments.push(Segment {
                cell: words[1].to_string(),
                waypoints: Vec::new(),
            });
        } else {
            let seg = segments
                .last_mut()
                .ok_or_else(|| ParseError::Syntax(ln, "waypoint before any `seg`".into()))?;
            let coords: Result<Vec<Rat>, ParseError> =
                words.iter().map(|w| parse_rat(w, ln)).collect();
            seg.waypoints.push(coords?);
        }
    }
    Ok(segments)
}

pub fn serialize_dpath(segments: &[Segment]) -> String {
    let mut out = String::new();
    for seg in segments {
        out.push_str(&format!("seg {}\n", seg.cell));
        for w in &seg.waypoints {
            let coords: Vec<String> = w.iter().map(|c| c.to_string()).collect();
            out.push_str(&coords.join(" "));
            out.push('\n');
        }
    }
    out
}

/// DOT digraph of the 1-skeleton with edge labels, initial/accepting
/// decorations, and one comment per square.  Deterministic bytes.
pub fn export_dot(h: &Hda) -> String {
    let mut out = String::from("digraph hda {\n");
    for v in h.pc.cells_of_dim(0) {
        let mut attrs = Vec::new();
        if h.initial.contains(&v) {
            attrs.push("shape=diamond".to_string());
        }
        if h.accepting.contains(&v) {
            attrs.push("peripheries=2".to_string());
        }
        let attr = if attrs.is_empty() {
            String::new()
        } else {
            format!(" [{}]", attrs.join(", "))
        };
        out.push_str(&format!("  \"{v}\"{attr};\n"));
    }
    for e in h.pc.cells_of_dim(1) {
        let lo = h.pc.face1(&e, 1, 0).unwrap();
        let hi = h.pc.face1(&e, 1, 1).unwrap();
        let l = &h.labeling.edge_labels[&e];
        out.push_str(&format!("  \"{lo}\" -> \"{hi}\" [label=\"{l}\"];\n"));
    }
    for s in h.pc.cells_of_dim(2) {
        let t = h.labeling.cell_tuples[&s].join(",");
        out.push_str(&format!("  // square {s} ({t})\n"));
    }
    out.push_str("}\n");
    out
}
