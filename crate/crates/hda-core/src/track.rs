//! Tracks: face-connected cell sequences, their interval-ipomset labels,
//! filling, the internal track of a track object, and bounded enumeration
//! of accepting tracks.

use std::collections::{BTreeMap, BTreeSet};
use itertools::Itertools;
use thiserror::Error;

use crate::hda::{track_object, Hda, TrackObject};
use crate::ipomset::{glue, validate_ipomset, ElemId, Ipomset, IpomsetError, LinearPomset, RawIpomset};
use crate::precubical::CellId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrackError {
    #[error("cells `{0}` and `{1}` are related by no iterated face map")]
    NotFaceRelated(CellId, CellId),
    #[error("track is empty")]
    Empty,
    #[error("unknown cell `{0}`")]
    UnknownCell(CellId),
    #[error(transparent)]
    Ipomset(#[from] IpomsetError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// x_i = δ⁰_A x_{i+1}
    Lower(BTreeSet<usize>),
    /// x_{i+1} = δ¹_A x_i
    Upper(BTreeSet<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Track {
    pub cells: Vec<CellId>,
    pub steps: Vec<Step>,
}

/// Infer the unique face relation between adjacent cells.
fn infer_step(x: &Hda, a: &str, b: &str) -> Result<Step, TrackError> {
    let da = x.pc.dim(a);
    let db = x.pc.dim(b);
    if da <= db {
        let diff = db - da;
        for set in (1..=db).combinations(diff) {
            let aset: BTreeSet<usize> = set.into_iter().collect();
            if x.pc.face(b, &aset, 0).ok().as_deref() == Some(a) {
                return Ok(Step::Lower(aset));
            }
        }
    }
    if da >= db {
        let diff = da - db;
        for set in (1..=da).combinations(diff) {
            let aset: BTreeSet<usize> = set.into_iter().collect();
            if x.pc.face(a, &aset, 1).ok().as_deref() == Some(b) {
                return Ok(Step::Upper(aset));
            }
        }
    }
    Err(TrackError::NotFaceRelated(a.to_string(), b.to_string()))
}

pub fn validate_track(x: &Hda, cells: &[CellId]) -> Result<Track, TrackError> {
    if cells.is_empty() {
        return Err(TrackError::Empty);
    }
    for c in cells {
        if !x.pc.dims.contains_key(c) {
            return Err(TrackError::UnknownCell(c.clone()));
        }
    }
    let mut steps = Vec::new();
    for w in cells.windows(2) {
        steps.push(infer_step(x, &w[0], &w[1])?);
    }
    Ok(Track {
        cells: cells.to_vec(),
        steps,
    })
}

/// Discrete ipomset over the events of `carrier` with the interfaces given
/// by the events of `srcs` and `tgts` (all linear pomsets over event ids).
pub(crate) fn discrete_over(
    carrier: &LinearPomset,
    srcs: &LinearPomset,
    tgts: &LinearPomset,
) -> Ipomset {
    let mut raw = RawIpomset::default();
    let in_s: BTreeSet<&ElemId> = srcs.elements.iter().collect();
    let in_t: BTreeSet<&ElemId> = tgts.elements.iter().collect();
    for e in &carrier.elements {
        raw.elements.push((
            e.clone(),
            carrier.labels[e].clone(),
            in_s.contains(e),
            in_t.contains(e),
        ));
    }
    for i in 0..carrier.elements.len() {
        for j in i + 1..carrier.elements.len() {
            raw.event_order
                .push((carrier.elements[i].clone(), carrier.elements[j].clone()));
        }
    }
    validate_ipomset(&raw).expect("discrete step label is valid")
}

/// The label of a track: a gluing of identities, starters (on lower steps)
/// and terminators (on upper steps); always an interval ipomset.
pub fn track_label(x: &Hda, rho: &Track) -> Ipomset {
    let first = x.cell_label(&rho.cells[0]);
    let mut acc = Ipomset::identity(&first);
    for (i, step) in rho.steps.iter().enumerate() {
        let a = x.cell_label(&rho.cells[i]);
        let b = x.cell_label(&rho.cells[i + 1]);
        let piece = match step {
            Step::Lower(_) => discrete_over(&b, &a, &b),
            Step::Upper(_) => discrete_over(&a, &a, &b),
        };
        acc = glue(&acc, &piece).expect("track step interfaces always match");
    }
    acc
}

/// Refine a track into a full one: every step elementary, no adjacent
/// repeats.  The label is unchanged up to isomorphism.
pub fn fill(x: &Hda, rho: &Track) -> Track {
    let mut cells: Vec<CellId> = vec![rho.cells[0].clone()];
    for (i, step) in rho.steps.iter().enumerate() {
        let a = &rho.cells[i];
        let b = &rho.cells[i + 1];
        match step {
            Step::Lower(aset) => {
                // a = δ⁰_A b: walk up through nested subsets of A
                let idx: Vec<usize> = aset.iter().cloned().collect();
                for k in (0..idx.len()).rev() {
                    let sub: BTreeSet<usize> = idx[..k].iter().cloned().collect();
                    cells.push(x.pc.face(b, &sub, 0).unwrap());
                }
                if aset.is_empty() {
                    cells.push(b.clone());
                }
            }
            Step::Upper(aset) => {
                let idx: Vec<usize> = aset.iter().cloned().collect();
                for k in 1..=idx.len() {
                    let sub: BTreeSet<usize> = idx[..k].iter().cloned().collect();
                    cells.push(x.pc.face(a, &sub, 1).unwrap());
                }
                if aset.is_empty() {
                    cells.push(b.clone());
                }
            }
        }
    }
    cells.dedup();
    validate_track(x, &cells).expect("fill produces a valid track")
}

/// The internal track of a track object: from the initial to the accepting
/// cell, with label isomorphic to P, built along the antichain
/// decomposition.
pub fn canonical_track(p: &Ipomset) -> Result<(TrackObject, Track), IpomsetError> {
    let pieces = p.decompose_interval()?;
    let tob = track_object(p);
    let m = pieces.len();
    let mut first: BTreeMap<ElemId, usize> = BTreeMap::new();
    let mut last: BTreeMap<ElemId, usize> = BTreeMap::new();
    for (i, piece) in pieces.iter().enumerate() {
        for e in &piece.elements {
            first.entry(e.clone()).or_insert(i);
            last.insert(e.clone(), i);
        }
    }
    let outside = |e: &ElemId, i: usize| -> char {
        if last.get(e).map(|l| *l < i).unwrap_or(false) {
            '1'
        } else {
            '0'
        }
    };
    let word = |i: usize, f: &dyn Fn(&ElemId) -> char| -> CellId {
        let values: BTreeMap<ElemId, char> = tob
            .elems
            .iter()
            .map(|e| {
                let v = if pieces[i].elements.contains(e) {
                    f(e)
                } else {
                    outside(e, i)
                };
                (e.clone(), v)
            })
            .collect();
        tob.cell_of_values(&values)
    };
    let mut cells = Vec::new();
    for i in 0..m {
        let srcs = pieces[i].sources.clone();
        let tgts = pieces[i].targets.clone();
        cells.push(word(i, &|e| if srcs.contains(e) { '*' } else { '0' }));
        cells.push(word(i, &|_| '*'));
        cells.push(word(i, &|e| if tgts.contains(e) { '*' } else { '1' }));
    }
    cells.dedup();
    let track = validate_track(&tob.hda, &cells).expect("internal track is valid");
    Ok((tob, track))
}

/// All full accepting tracks with at most `max_steps` elementary steps,
/// in deterministic order.
pub fn enumerate_accepting_tracks(x: &Hda, max_steps: usize) -> Vec<Track> {
    enumerate_accepting_tracks_ext(x, max_steps).0
}

/// As `enumerate_accepting_tracks`, also reporting whether the step bound
/// cut off any extensible path.
pub fn enumerate_accepting_tracks_ext(x: &Hda, max_steps: usize) -> (Vec<Track>, bool) {
    // cofaces: cell c ↦ cells having c as elementary lower face
    let mut cofaces: BTreeMap<CellId, BTreeSet<CellId>> = BTreeMap::new();
    for (cell, dim) in &x.pc.dims {
        for i in 1..=*dim {
            let f = x.pc.face1(cell, i, 0).unwrap();
            cofaces.entry(f).or_default().insert(cell.clone());
        }
    }
    let successors = |c: &CellId| -> Vec<CellId> {
        let mut out: BTreeSet<CellId> = cofaces.get(c).cloned().unwrap_or_default();
        for i in 1..=x.pc.dim(c) {
            out.insert(x.pc.face1(c, i, 1).unwrap());
        }
        out.remove(c);
        out.into_iter().collect()
    };
    let mut results = Vec::new();
    let mut truncated = false;
    let mut stack: Vec<Vec<CellId>> = x.initial.iter().map(|c| vec![c.clone()]).collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        let cur = path.last().unwrap().clone();
        if x.accepting.contains(&cur) {
            results.push(validate_track(x, &path).unwrap());
        }
        let succs = successors(&cur);
        if path.len() - 1 < max_steps {
            for s in succs.into_iter().rev() {
                let mut next = path.clone();
                next.push(s);
                stack.push(next);
            }
        } else if !succs.is_empty() {
            truncated = true;
        }
    }
    (results, truncated)
}
