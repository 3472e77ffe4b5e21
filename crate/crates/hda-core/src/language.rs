//! Languages of HDAs: membership (by morphism search, cross-checked in
//! debug builds against a track search), bounded enumeration, weak closure,
//! and construction of an HDA from a finite set of generators.

use std::collections::{BTreeMap, BTreeSet};

use crate::hda::{coproduct, find_hda_map, track_object, Hda, HdaError};
use crate::ipomset::{
    glue, validate_ipomset, CanonicalIpomset, ElemId, Ipomset, IpomsetError, RawIpomset,
};
use crate::precubical::CellId;
use crate::track::discrete_over;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSet {
    pub canon: BTreeSet<CanonicalIpomset>,
    /// true when the enumeration bounds were hit, so the set may be partial
    pub truncated: bool,
}

impl LanguageSet {
    pub fn exact(canon: BTreeSet<CanonicalIpomset>) -> Self {
        LanguageSet {
            canon,
            truncated: false,
        }
    }
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Language membership: `P ∈ L(X)` iff P is interval and there is an HDA
/// map from its track object into X.
pub fn member(p: &Ipomset, x: &Hda, budget: u64) -> Result<bool, HdaError> {
    if !p.is_interval() {
        return Ok(false);
    }
    let tob = track_object(p);
    let by_map = find_hda_map(&tob.hda, x, budget)?.is_some();
    #[cfg(debug_assertions)]
    {
        let by_tracks = member_by_tracks(p, x).expect("interval checked above");
        debug_assert_eq!(
            by_map, by_tracks,
            "morphism-search and track-search membership disagree"
        );
    }
    Ok(by_map)
}

/// The alternative membership decision: search for an accepting track whose
/// label is isomorphic to P, guided by the antichain decomposition.  The
/// state space is (cell, decomposition stage), memoized.
pub fn member_by_tracks(p: &Ipomset, x: &Hda) -> Result<bool, IpomsetError> {
    if !p.is_interval() {
        return Ok(false);
    }
    let pieces = p.decompose_interval()?;
    // stage k: about to run piece k from a cell whose events match its
    // source interface positionally
    let piece_data: Vec<(Vec<String>, Vec<usize>, Vec<usize>)> = pieces
        .iter()
        .map(|piece| {
            let lin = piece.as_linear();
            let labels: Vec<String> = lin.label_seq();
            let starts: Vec<usize> = lin
                .elements
                .iter()
                .enumerate()
                .filter(|(_, e)| !piece.sources.contains(*e))
                .map(|(i, _)| i + 1)
                .collect();
            let ends: Vec<usize> = lin
                .elements
                .iter()
                .enumerate()
                .filter(|(_, e)| !piece.targets.contains(*e))
                .map(|(i, _)| i + 1)
                .collect();
            (labels, starts, ends)
        })
        .collect();
    // cofaces by (face, index set) for the starter transitions
    let mut memo: BTreeMap<(CellId, usize), bool> = BTreeMap::new();
    let src_labels: Vec<String> = pieces
        .first()
        .map(|pc| pc.source_interface().label_seq())
        .unwrap_or_default();
    for i in &x.initial {
        if x.labeling.cell_tuples[i] == src_labels
            && run_pieces(x, &piece_data, i, 0, &mut memo)
        {
            return Ok(true);
        }
    }
    Ok(false)
}

fn run_pieces(
    x: &Hda,
    pieces: &[(Vec<String>, Vec<usize>, Vec<usize>)],
    cell: &CellId,
    k: usize,
    memo: &mut BTreeMap<(CellId, usize), bool>,
) -> bool {
    if k == pieces.len() {
        return x.accepting.contains(cell);
    }
    if let Some(v) = memo.get(&(cell.clone(), k)) {
        return *v;
    }
    memo.insert((cell.clone(), k), false); // cycle guard
    let (labels, starts, ends) = &pieces[k];
    let start_set: BTreeSet<usize> = starts.iter().copied().collect();
    let end_set: BTreeSet<usize> = ends.iter().copied().collect();
    let mut ok = false;
    // starter: find y of matching label tuple with δ⁰_starts y = cell
    for y in x.pc.cells_of_dim(labels.len()) {
        if &x.labeling.cell_tuples[&y] != labels {
            continue;
        }
        if x.pc.face(&y, &start_set, 0).ok().as_ref() != Some(cell) {
            continue;
        }
        // terminator: deterministic upper face
        let z = x.pc.face(&y, &end_set, 1).unwrap();
        if run_pieces(x, pieces, &z, k + 1, memo) {
            ok = true;
            break;
        }
    }
    memo.insert((cell.clone(), k), ok);
    ok
}

/// All canonical labels of accepting tracks within the step bound whose
/// element count is within the size bound.  Search states are pairs of a
/// cell and the canonical label accumulated so far; a state revisited later
/// (with less step budget left) adds nothing and is pruned.
pub fn enumerate_language(x: &Hda, max_size: usize, max_steps: usize) -> LanguageSet {
    let mut cofaces: BTreeMap<CellId, BTreeSet<CellId>> = BTreeMap::new();
    for (cell, dim) in &x.pc.dims {
        for i in 1..=*dim {
            let f = x.pc.face1(cell, i, 0).unwrap();
            cofaces.entry(f).or_default().insert(cell.clone());
        }
    }
    // successor cells, each tagged with whether the step is a lower coface
    let successors = |c: &CellId| -> Vec<(CellId, bool)> {
        let mut out: Vec<(CellId, bool)> = Vec::new();
        for s in cofaces.get(c).into_iter().flatten() {
            out.push((s.clone(), true));
        }
        for i in 1..=x.pc.dim(c) {
            out.push((x.pc.face1(c, i, 1).unwrap(), false));
        }
        out
    };
    let mut canon = BTreeSet::new();
    let mut truncated = false;
    let mut seen: BTreeSet<(CellId, CanonicalIpomset)> = BTreeSet::new();
    let mut frontier: Vec<(CellId, Ipomset)> = Vec::new();
    for c in &x.initial {
        let acc = Ipomset::identity(&x.cell_label(c));
        if seen.insert((c.clone(), acc.canonical_form())) {
            if x.accepting.contains(c) && acc.len() <= max_size {
                canon.insert(acc.canonical_form());
            }
            frontier.push((c.clone(), acc));
        }
    }
    for _ in 0..max_steps {
        if frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for (cell, acc) in &frontier {
            let a = x.cell_label(cell);
            for (s, lower) in successors(cell) {
                let b = x.cell_label(&s);
                let piece = if lower {
                    discrete_over(&b, &a, &b)
                } else {
                    discrete_over(&a, &a, &b)
                };
                let glued = glue(acc, &piece).expect("track step interfaces always match");
                if glued.len() > max_size {
                    truncated = true;
                    continue;
                }
                let key = glued.canonical_form();
                if seen.insert((s.clone(), key.clone())) {
                    if x.accepting.contains(&s) {
                        canon.insert(key);
                    }
                    next.push((s, glued));
                }
            }
        }
        frontier = next;
    }
    if frontier.iter().any(|(c, _)| !successors(c).is_empty()) {
        truncated = true;
    }
    LanguageSet { canon, truncated }
}

/// All interval ipomsets subsumed by some member of the generator set, up
/// to isomorphism: enumerate the precedence-order extensions that remain
/// valid and interval.
pub fn weak_closure(gens: &[Ipomset]) -> Result<LanguageSet, IpomsetError> {
    let mut canon = BTreeSet::new();
    for p in gens {
        if !p.is_interval() {
            return Err(IpomsetError::NotInterval);
        }
        canon.extend(interval_extensions(p).canon);
    }
    Ok(LanguageSet::exact(canon))
}

/// The interval order-extensions of an arbitrary ipomset, up to isomorphism.
/// Unlike `weak_closure` this accepts non-interval inputs, e.g. parallel
/// compositions, whose extensions give the language of a tensor product.
/// Extensions are explored one forced pair at a time, deduplicated by
/// canonical form, so each extension is visited once up to isomorphism.
pub fn interval_extensions(p: &Ipomset) -> LanguageSet {
    let mut canon = BTreeSet::new();
    let mut seen: BTreeSet<CanonicalIpomset> = BTreeSet::new();
    seen.insert(p.canonical_form());
    let mut stack = vec![p.clone()];
    while let Some(q) = stack.pop() {
        if q.is_interval() {
            canon.insert(q.canonical_form());
        }
        let elems: Vec<ElemId> = q.elements.iter().cloned().collect();
        for a in &elems {
            for b in &elems {
                if a == b || !q.incomparable(a, b) {
                    continue;
                }
                if let Some(rel) = close_over(&q.precedence, (a.clone(), b.clone())) {
                    if let Ok(r) = build_extension(&q, &rel) {
                        if seen.insert(r.canonical_form()) {
                            stack.push(r);
                        }
                    }
                }
            }
        }
    }
    LanguageSet::exact(canon)
}

fn close_over(
    rel: &BTreeSet<(ElemId, ElemId)>,
    add: (ElemId, ElemId),
) -> Option<BTreeSet<(ElemId, ElemId)>> {
    let mut rel = rel.clone();
    rel.insert(add);
    loop {
        let mut new = Vec::new();
        for (a, b) in &rel {
            for (c, d) in &rel {
                if b == c && !rel.contains(&(a.clone(), d.clone())) {
                    new.push((a.clone(), d.clone()));
                }
            }
        }
        if new.is_empty() {
            break;
        }
        rel.extend(new);
    }
    if rel.iter().any(|(a, b)| a == b) {
        None
    } else {
        Some(rel)
    }
}

/// Build the extension of `p` with the given precedence relation: the event
/// order is restricted to the still-incomparable pairs.
fn build_extension(
    p: &Ipomset,
    prec: &BTreeSet<(ElemId, ElemId)>,
) -> Result<Ipomset, IpomsetError> {
    let raw = RawIpomset {
        elements: p
            .elements
            .iter()
            .map(|e| {
                (
                    e.clone(),
                    p.labels[e].clone(),
                    p.sources.contains(e),
                    p.targets.contains(e),
                )
            })
            .collect(),
        precedence: prec.iter().cloned().collect(),
        event_order: p
            .event_order
            .iter()
            .filter(|(a, b)| {
                !prec.contains(&(a.clone(), b.clone())) && !prec.contains(&(b.clone(), a.clone()))
            })
            .cloned()
            .collect(),
    };
    validate_ipomset(&raw)
}

/// The coproduct of the generators' track objects; its language is the weak
/// closure of the generator set.
pub fn hda_from_language(gens: &[Ipomset]) -> Result<Hda, HdaError> {
    for p in gens {
        if !p.is_interval() {
            return Err(HdaError::Ipomset(IpomsetError::NotInterval));
        }
    }
    let mut acc: Option<Hda> = None;
    for p in gens {
        let t = track_object(p).hda;
        acc = Some(match acc {
            None => t,
            Some(a) => coproduct(&a, &t).0,
        });
    }
    Ok(acc.unwrap_or_else(empty_hda))
}

pub fn empty_hda() -> Hda {
    Hda::new(
        crate::precubical::validate_precubical(&crate::precubical::RawPrecubical::default())
            .unwrap(),
        &BTreeMap::new(),
        BTreeSet::new(),
        BTreeSet::new(),
    )
    .unwrap()
}
