//! Piecewise-linear directed paths through the geometric realization:
//! carriers, interval arrangements, d-path labels, and center paths of
//! tracks.  All coordinates are exact rationals.

use std::collections::{BTreeMap, BTreeSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::hda::Hda;
use crate::ipomset::{validate_ipomset, Ipomset, RawIpomset};
use crate::precubical::{CellId, EventId};
use crate::track::{fill, Track};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn half() -> Rat {
    rat(1, 2)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeoError {
    #[error("coordinate out of [0,1]")]
    OutOfRange,
    #[error("point in cell `{0}` has {1} coordinates, expected {2}")]
    WrongArity(CellId, usize, usize),
    #[error("segment waypoints are not coordinatewise increasing")]
    NotDirected,
    #[error("segments {0} and {1} do not meet")]
    Discontinuous(usize, usize),
    #[error("path has no segments")]
    Empty,
    #[error("unknown cell `{0}`")]
    UnknownCell(CellId),
}

/// A point given by a cell and interior coordinates (its carrier).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlPoint {
    pub cell: CellId,
    pub coords: Vec<Rat>,
}

/// Normalize a point: every boundary coordinate is absorbed by the
/// corresponding face map until all coordinates are strictly interior.
pub fn carrier(x: &Hda, cell: &str, coords: &[Rat]) -> Result<PlPoint, GeoError> {
    let dim = *x
        .pc
        .dims
        .get(cell)
        .ok_or_else(|| GeoError::UnknownCell(cell.to_string()))?;
    if coords.len() != dim {
        return Err(GeoError::WrongArity(cell.to_string(), coords.len(), dim));
    }
    let zero = Rat::zero();
    let one = Rat::one();
    for c in coords {
        if *c < zero || *c > one {
            return Err(GeoError::OutOfRange);
        }
    }
    let mut cell = cell.to_string();
    let mut coords: Vec<Rat> = coords.to_vec();
    loop {
        let pos = coords.iter().position(|c| *c == zero || *c == one);
        match pos {
            None => return Ok(PlPoint { cell, coords }),
            Some(i) => {
                let nu = if coords[i] == one { 1 } else { 0 };
                cell = x.pc.face1(&cell, i + 1, nu).unwrap();
                coords.remove(i);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub cell: CellId,
    pub waypoints: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DPath {
    pub segments: Vec<Segment>,
}

pub fn validate_dpath(x: &Hda, segments: &[Segment]) -> Result<DPath, GeoError> {
    if segments.is_empty() {
        return Err(GeoError::Empty);
    }
    for seg in segments {
        let dim = *x
            .pc
            .dims
            .get(&seg.cell)
            .ok_or_else(|| GeoError::UnknownCell(seg.cell.clone()))?;
        if seg.waypoints.is_empty() {
            return Err(GeoError::Empty);
        }
        for w in &seg.waypoints {
            if w.len() != dim {
                return Err(GeoError::WrongArity(seg.cell.clone(), w.len(), dim));
            }
            for c in w {
                if *c < Rat::zero() || *c > Rat::one() {
                    return Err(GeoError::OutOfRange);
                }
            }
        }
        for pair in seg.waypoints.windows(2) {
            if pair[0].iter().zip(pair[1].iter()).any(|(a, b)| a > b) {
                return Err(GeoError::NotDirected);
            }
        }
    }
    for (i, pair) in segments.windows(2).enumerate() {
        let end = carrier(x, &pair[0].cell, pair[0].waypoints.last().unwrap())?;
        let start = carrier(x, &pair[1].cell, pair[1].waypoints.first().unwrap())?;
        if end != start {
            return Err(GeoError::Discontinuous(i, i + 1));
        }
    }
    Ok(DPath {
        segments: segments.to_vec(),
    })
}

/// One linear piece of the path: on global time [t0, t1] the point moves
/// linearly from `from` to `to` within `cell`.
struct Piece {
    cell: CellId,
    t0: Rat,
    t1: Rat,
    from: Vec<Rat>,
    to: Vec<Rat>,
}

fn pieces_of(path: &DPath) -> Vec<Piece> {
    let m = path.segments.len() as i64;
    let mut out = Vec::new();
    for (i, seg) in path.segments.iter().enumerate() {
        let s0 = rat(i as i64, m);
        let s1 = rat(i as i64 + 1, m);
        if seg.waypoints.len() == 1 {
            out.push(Piece {
                cell: seg.cell.clone(),
                t0: s0,
                t1: s1,
                from: seg.waypoints[0].clone(),
                to: seg.waypoints[0].clone(),
            });
            continue;
        }
        let k = (seg.waypoints.len() - 1) as i64;
        for (j, pair) in seg.waypoints.windows(2).enumerate() {
            let j = j as i64;
            let dur = (&s1 - &s0) / rat(k, 1);
            out.push(Piece {
                cell: seg.cell.clone(),
                t0: &s0 + &dur * rat(j, 1),
                t1: &s0 + &dur * rat(j + 1, 1),
                from: pair[0].clone(),
                to: pair[1].clone(),
            });
        }
    }
    out
}

impl Piece {
    fn at(&self, t: &Rat) -> Vec<Rat> {
        if self.t1 == self.t0 {
            return self.from.clone();
        }
        let s = (t - &self.t0) / (&self.t1 - &self.t0);
        self.from
            .iter()
            .zip(self.to.iter())
            .map(|(a, b)| a + (b - a) * &s)
            .collect()
    }
}

/// Evaluate the path at global time t (within the piece owning t).
pub fn eval(x: &Hda, path: &DPath, t: &Rat) -> PlPoint {
    let pieces = pieces_of(path);
    let piece = pieces
        .iter()
        .find(|p| *t >= p.t0 && *t <= p.t1)
        .expect("time within [0,1]");
    carrier(x, &piece.cell, &piece.at(t)).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalComponent {
    pub lo: Rat,
    pub lo_closed: bool,
    pub hi: Rat,
    pub hi_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalArrangement {
    pub components: BTreeMap<EventId, Vec<IntervalComponent>>,
}

/// The ordered partition of [0,1] induced by all piece boundaries and all
/// interior boundary-crossing times: alternating points and open intervals.
enum Item {
    Point(Rat),
    Open(Rat, Rat),
}

fn partition(path: &DPath) -> Vec<Item> {
    let pieces = pieces_of(path);
    let mut cuts: BTreeSet<Rat> = BTreeSet::new();
    cuts.insert(Rat::zero());
    cuts.insert(Rat::one());
    for p in &pieces {
        cuts.insert(p.t0.clone());
        cuts.insert(p.t1.clone());
        for (a, b) in p.from.iter().zip(p.to.iter()) {
            if a == b {
                continue;
            }
            for v in [Rat::zero(), Rat::one()] {
                // a + (b-a)s = v
                let s = (&v - a) / (b - a);
                if s > Rat::zero() && s < Rat::one() {
                    cuts.insert(&p.t0 + (&p.t1 - &p.t0) * s);
                }
            }
        }
    }
    let cuts: Vec<Rat> = cuts.into_iter().collect();
    let mut items = Vec::new();
    for (i, c) in cuts.iter().enumerate() {
        items.push(Item::Point(c.clone()));
        if i + 1 < cuts.len() {
            items.push(Item::Open(c.clone(), cuts[i + 1].clone()));
        }
    }
    items
}

fn active_events(x: &Hda, path: &DPath, t: &Rat) -> BTreeSet<EventId> {
    let p = eval(x, path, t);
    x.events.event_tuple[&p.cell].iter().copied().collect()
}

fn item_sample(item: &Item) -> Rat {
    match item {
        Item::Point(t) => t.clone(),
        Item::Open(a, b) => (a + b) / rat(2, 1),
    }
}

/// Per-event maximal activity intervals.  A component is a maximal run of
/// partition items on which the event is active; single-point components in
/// the interior are discarded (the activity region is open off the
/// endpoints of [0,1]).
pub fn interval_arrangement(x: &Hda, path: &DPath) -> IntervalArrangement {
    let items = partition(path);
    let active: Vec<BTreeSet<EventId>> = items
        .iter()
        .map(|it| active_events(x, path, &item_sample(it)))
        .collect();
    let mut all_events: BTreeSet<EventId> = BTreeSet::new();
    for a in &active {
        all_events.extend(a.iter().copied());
    }
    for e in x.events.event_of_edge.values() {
        all_events.insert(*e);
    }
    let mut components: BTreeMap<EventId, Vec<IntervalComponent>> = BTreeMap::new();
    for e in all_events {
        let mut comps = Vec::new();
        let mut run: Option<IntervalComponent> = None;
        for (it, act) in items.iter().zip(active.iter()) {
            if act.contains(&e) {
                let (lo, lo_closed, hi, hi_closed) = match it {
                    Item::Point(t) => (t.clone(), true, t.clone(), true),
                    Item::Open(a, b) => (a.clone(), false, b.clone(), false),
                };
                match &mut run {
                    None => {
                        run = Some(IntervalComponent {
                            lo,
                            lo_closed,
                            hi,
                            hi_closed,
                        })
                    }
                    Some(r) => {
                        r.hi = hi;
                        r.hi_closed = hi_closed;
                    }
                }
            } else if let Some(r) = run.take() {
                comps.push(r);
            }
        }
        if let Some(r) = run.take() {
            comps.push(r);
        }
        comps.retain(|c| {
            c.lo != c.hi || c.lo == Rat::zero() || c.lo == Rat::one()
        });
        components.insert(e, comps);
    }
    IntervalArrangement { components }
}

/// The label of a d-path: one element per arrangement component, ordered by
/// interval precedence, with the event order induced at common activity
/// times; sources and targets are the components containing 0 and 1.
pub fn dpath_label(x: &Hda, path: &DPath) -> Ipomset {
    let arr = interval_arrangement(x, path);
    let event_label: BTreeMap<EventId, String> = x
        .events
        .event_of_edge
        .iter()
        .map(|(e, ev)| (*ev, x.labeling.edge_labels[e].clone()))
        .collect();
    let elem_id = |e: EventId, k: usize| format!("e{e}.{k}");
    let mut raw = RawIpomset::default();
    for (e, comps) in &arr.components {
        for (k, c) in comps.iter().enumerate() {
            let src = c.lo == Rat::zero() && c.lo_closed;
            let tgt = c.hi == Rat::one() && c.hi_closed;
            raw.elements
                .push((elem_id(*e, k), event_label[e].clone(), src, tgt));
        }
    }
    // precedence: entirely-earlier components
    let flat: Vec<(EventId, usize, &IntervalComponent)> = arr
        .components
        .iter()
        .flat_map(|(e, cs)| cs.iter().enumerate().map(move |(k, c)| (*e, k, c)))
        .collect();
    for (e1, k1, c1) in &flat {
        for (e2, k2, c2) in &flat {
            if (e1, k1) == (e2, k2) {
                continue;
            }
            let before = c1.hi < c2.lo
                || (c1.hi == c2.lo && !(c1.hi_closed && c2.lo_closed));
            if before {
                raw.precedence.push((elem_id(*e1, *k1), elem_id(*e2, *k2)));
            }
        }
    }
    // event order: at every partition item, the carrier cell's tuple orders
    // the simultaneously active components
    let component_at = |e: EventId, t: &Rat| -> Option<usize> {
        arr.components.get(&e).and_then(|cs| {
            cs.iter().position(|c| {
                (*t > c.lo || (*t == c.lo && c.lo_closed))
                    && (*t < c.hi || (*t == c.hi && c.hi_closed))
            })
        })
    };
    for it in partition(path) {
        let t = item_sample(&it);
        let p = eval(x, path, &t);
        let tuple = &x.events.event_tuple[&p.cell];
        for i in 0..tuple.len() {
            for j in i + 1..tuple.len() {
                if let (Some(ki), Some(kj)) =
                    (component_at(tuple[i], &t), component_at(tuple[j], &t))
                {
                    raw.event_order
                        .push((elem_id(tuple[i], ki), elem_id(tuple[j], kj)));
                }
            }
        }
    }
    validate_ipomset(&raw).expect("d-path label is a valid ipomset")
}

/// The center path of a track: fill the track, then move through each cell
/// pinning running coordinates at 1/2, entering new coordinates from 0 and
/// releasing finished ones to 1.
pub fn track_to_center_path(x: &Hda, rho: &Track) -> DPath {
    path_through_pins(x, rho, &|_| half())
}

/// Generalized center path: each elementary step pins coordinates at the
/// values chosen by `pin` (indexed by step number), allowing randomized
/// piecewise-linear paths with the same crossing structure.
pub fn path_through_pins(x: &Hda, rho: &Track, pin: &dyn Fn(usize) -> Rat) -> DPath {
    let full = fill(x, rho);
    // pins[k] = interior value used for the coordinates of cell k
    let mut segments: Vec<Segment> = Vec::new();
    // current pinned coordinates of the current cell
    let mut cur: Vec<Rat> = vec![half(); x.pc.dim(&full.cells[0])];
    if full.cells.len() == 1 {
        return validate_dpath(
            x,
            &[Segment {
                cell: full.cells[0].clone(),
                waypoints: vec![cur],
            }],
        )
        .expect("constant center path is valid");
    }
    for (k, step) in full.steps.iter().enumerate() {
        let a = &full.cells[k];
        let b = &full.cells[k + 1];
        match step {
            crate::track::Step::Lower(aset) => {
                // a = δ⁰_i b: enter b, new coordinate i moves 0 → pin
                let i = *aset.iter().next().unwrap();
                let mut from = cur.clone();
                from.insert(i - 1, Rat::zero());
                let target = pin(k);
                let mut to = from.clone();
                to[i - 1] = target;
                segments.push(Segment {
                    cell: b.clone(),
                    waypoints: vec![from, to.clone()],
                });
                cur = to;
            }
            crate::track::Step::Upper(aset) => {
                // b = δ¹_i a: inside a, coordinate i moves pin → 1
                let i = *aset.iter().next().unwrap();
                let from = cur.clone();
                let mut to = cur.clone();
                to[i - 1] = Rat::one();
                segments.push(Segment {
                    cell: a.clone(),
                    waypoints: vec![from, to.clone()],
                });
                cur = to;
                cur.remove(i - 1);
            }
        }
    }
    validate_dpath(x, &segments).expect("center path is a valid d-path")
}
