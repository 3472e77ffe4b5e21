//! Pomsets with interfaces and event orders.
//!
//! An `Ipomset` carries two strict partial orders: the precedence order
//! (temporal) and the event order (which linearizes concurrent elements),
//! together with labels and source/target interfaces.  Every pair of
//! distinct elements must be comparable by at least one of the two orders.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub type ElemId = String;
pub type Label = String;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IpomsetError {
    #[error("order is not irreflexive (cycle through `{0}`)")]
    NotIrreflexive(ElemId),
    #[error("elements `{0}` and `{1}` comparable by neither order")]
    NotTotal(ElemId, ElemId),
    #[error("bad interface at `{0}`: source not minimal or target not maximal")]
    BadInterface(ElemId),
    #[error("duplicate element id `{0}`")]
    DuplicateId(ElemId),
    #[error("relation mentions unknown element `{0}`")]
    UnknownElement(ElemId),
    #[error("target interface of the left operand does not match the source interface of the right")]
    InterfaceMismatch,
    #[error("precedence order is not an interval order")]
    NotInterval,
}

/// A linearly ordered labeled set; the list order is the event order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearPomset {
    pub elements: Vec<ElemId>,
    pub labels: BTreeMap<ElemId, Label>,
}

impl LinearPomset {
    pub fn new(pairs: &[(&str, &str)]) -> Self {
        LinearPomset {
            elements: pairs.iter().map(|(e, _)| e.to_string()).collect(),
            labels: pairs
                .iter()
                .map(|(e, l)| (e.to_string(), l.to_string()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Labels in event order; two interfaces match iff these agree.
    pub fn label_seq(&self) -> Vec<Label> {
        self.elements.iter().map(|e| self.labels[e].clone()).collect()
    }
}

/// Raw, unchecked ipomset data as assembled by parsers and constructions.
#[derive(Debug, Clone, Default)]
pub struct RawIpomset {
    /// (id, label, in source interface, in target interface)
    pub elements: Vec<(ElemId, Label, bool, bool)>,
    pub precedence: Vec<(ElemId, ElemId)>,
    pub event_order: Vec<(ElemId, ElemId)>,
}

/// A validated ipomset; both orders are stored transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ipomset {
    pub elements: BTreeSet<ElemId>,
    pub precedence: BTreeSet<(ElemId, ElemId)>,
    pub event_order: BTreeSet<(ElemId, ElemId)>,
    pub labels: BTreeMap<ElemId, Label>,
    pub sources: BTreeSet<ElemId>,
    pub targets: BTreeSet<ElemId>,
}

/// Transitive closure of a relation over `elems`; `Err` holds an element on a cycle.
fn close_transitive(
    elems: &BTreeSet<ElemId>,
    pairs: &[(ElemId, ElemId)],
) -> Result<BTreeSet<(ElemId, ElemId)>, ElemId> {
    let mut rel: BTreeSet<(ElemId, ElemId)> = pairs.iter().cloned().collect();
    loop {
        let mut added = Vec::new();
        for (a, b) in &rel {
            for (c, d) in &rel {
                if b == c && !rel.contains(&(a.clone(), d.clone())) {
                    added.push((a.clone(), d.clone()));
                }
            }
        }
        if added.is_empty() {
            break;
        }
        rel.extend(added);
    }
    for e in elems {
        if rel.contains(&(e.clone(), e.clone())) {
            return Err(e.clone());
        }
    }
    Ok(rel)
}

pub fn validate_ipomset(raw: &RawIpomset) -> Result<Ipomset, IpomsetError> {
    let mut elements = BTreeSet::new();
    let mut labels = BTreeMap::new();
    let mut sources = BTreeSet::new();
    let mut targets = BTreeSet::new();
    for (id, label, src, tgt) in &raw.elements {
        if !elements.insert(id.clone()) {
            return Err(IpomsetError::DuplicateId(id.clone()));
        }
        labels.insert(id.clone(), label.clone());
        if *src {
            sources.insert(id.clone());
        }
        if *tgt {
            targets.insert(id.clone());
        }
    }
    for (a, b) in raw.precedence.iter().chain(raw.event_order.iter()) {
        for e in [a, b] {
            if !elements.contains(e) {
                return Err(IpomsetError::UnknownElement(e.clone()));
            }
        }
    }
    let precedence = close_transitive(&elements, &raw.precedence)
        .map_err(IpomsetError::NotIrreflexive)?;
    let event_order = close_transitive(&elements, &raw.event_order)
        .map_err(IpomsetError::NotIrreflexive)?;
    let p = Ipomset {
        elements,
        precedence,
        event_order,
        labels,
        sources,
        targets,
    };
    for a in &p.elements {
        for b in &p.elements {
            if a < b && !p.comparable(a, b) {
                return Err(IpomsetError::NotTotal(a.clone(), b.clone()));
            }
        }
    }
    for s in &p.sources {
        if p.elements.iter().any(|x| p.before(x, s)) {
            return Err(IpomsetError::BadInterface(s.clone()));
        }
    }
    for t in &p.targets {
        if p.elements.iter().any(|x| p.before(t, x)) {
            return Err(IpomsetError::BadInterface(t.clone()));
        }
    }
    Ok(p)
}

impl Ipomset {
    /// Convenience constructor for fixtures and tests.
    pub fn build(
        elems: &[(&str, &str, bool, bool)],
        prec: &[(&str, &str)],
        ev: &[(&str, &str)],
    ) -> Result<Ipomset, IpomsetError> {
        validate_ipomset(&RawIpomset {
            elements: elems
                .iter()
                .map(|(e, l, s, t)| (e.to_string(), l.to_string(), *s, *t))
                .collect(),
            precedence: prec
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            event_order: ev
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        })
    }

    pub fn empty() -> Ipomset {
        Ipomset {
            elements: BTreeSet::new(),
            precedence: BTreeSet::new(),
            event_order: BTreeSet::new(),
            labels: BTreeMap::new(),
            sources: BTreeSet::new(),
            targets: BTreeSet::new(),
        }
    }

    /// The identity ipomset on a linear pomset: discrete, S = T = U.
    pub fn identity(s: &LinearPomset) -> Ipomset {
        let mut ev = Vec::new();
        for i in 0..s.elements.len() {
            for j in i + 1..s.elements.len() {
                ev.push((s.elements[i].clone(), s.elements[j].clone()));
            }
        }
        validate_ipomset(&RawIpomset {
            elements: s
                .elements
                .iter()
                .map(|e| (e.clone(), s.labels[e].clone(), true, true))
                .collect(),
            precedence: Vec::new(),
            event_order: ev,
        })
        .expect("identity ipomset is always valid")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn before(&self, a: &str, b: &str) -> bool {
        self.precedence.contains(&(a.to_string(), b.to_string()))
    }

    pub fn ev_before(&self, a: &str, b: &str) -> bool {
        self.event_order.contains(&(a.to_string(), b.to_string()))
    }

    fn comparable(&self, a: &str, b: &str) -> bool {
        self.before(a, b) || self.before(b, a) || self.ev_before(a, b) || self.ev_before(b, a)
    }

    pub fn incomparable(&self, a: &str, b: &str) -> bool {
        a != b && !self.before(a, b) && !self.before(b, a)
    }

    pub fn is_discrete(&self) -> bool {
        self.precedence.is_empty()
    }

    /// An antichain (or any precedence-free subset) as a linear pomset
    /// ordered by the event order.
    fn linearize(&self, subset: &BTreeSet<ElemId>) -> LinearPomset {
        let mut elems: Vec<ElemId> = subset.iter().cloned().collect();
        elems.sort_by(|a, b| {
            if self.ev_before(a, b) {
                std::cmp::Ordering::Less
            } else if self.ev_before(b, a) {
                std::cmp::Ordering::Greater
            } else {
                a.cmp(b)
            }
        });
        LinearPomset {
            elements: elems,
            labels: subset
                .iter()
                .map(|e| (e.clone(), self.labels[e].clone()))
                .collect(),
        }
    }

    pub fn source_interface(&self) -> LinearPomset {
        self.linearize(&self.sources)
    }

    pub fn target_interface(&self) -> LinearPomset {
        self.linearize(&self.targets)
    }

    /// All elements as a linear pomset; meaningful when `self` is discrete.
    pub fn as_linear(&self) -> LinearPomset {
        self.linearize(&self.elements)
    }

    /// The canonical linear position order: filtration by iterated
    /// precedence-minimal strata, refined by the event order inside each
    /// stratum (where it is total, the strata being antichains).
    pub fn canonical_order(&self) -> Vec<ElemId> {
        let mut remaining: BTreeSet<ElemId> = self.elements.clone();
        let mut out = Vec::new();
        while !remaining.is_empty() {
            let level: BTreeSet<ElemId> = remaining
                .iter()
                .filter(|x| !remaining.iter().any(|y| self.before(y, x)))
                .cloned()
                .collect();
            let lin = self.linearize(&level);
            for e in &lin.elements {
                remaining.remove(e);
            }
            out.extend(lin.elements);
        }
        out
    }

    pub fn canonical_form(&self) -> CanonicalIpomset {
        let order = self.canonical_order();
        let n = order.len();
        let rank = order
            .iter()
            .map(|e| {
                (
                    self.labels[e].clone(),
                    self.sources.contains(e),
                    self.targets.contains(e),
                )
            })
            .collect();
        let mut prec = vec![vec![false; n]; n];
        let mut ev = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if self.before(&order[i], &order[j]) {
                    prec[i][j] = true;
                }
                if self.incomparable(&order[i], &order[j]) && self.ev_before(&order[i], &order[j]) {
                    ev[i][j] = true;
                }
            }
        }
        CanonicalIpomset {
            size: n,
            rank,
            precedence_matrix: prec,
            essential_event_matrix: ev,
        }
    }

    pub fn isomorphic(&self, other: &Ipomset) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// True iff the precedence order is 2+2-free.
    pub fn is_interval(&self) -> bool {
        for (a, b) in &self.precedence {
            for (c, d) in &self.precedence {
                if a != c
                    && a != d
                    && b != c
                    && b != d
                    && self.incomparable(a, c)
                    && self.incomparable(a, d)
                    && self.incomparable(b, c)
                    && self.incomparable(b, d)
                {
                    return false;
                }
            }
        }
        true
    }

    /// All maximal precedence-antichains (maximal cliques of the
    /// incomparability graph).  Small instances only.
    fn maximal_antichains(&self) -> Vec<BTreeSet<ElemId>> {
        let elems: Vec<ElemId> = self.elements.iter().cloned().collect();
        let mut out: Vec<BTreeSet<ElemId>> = Vec::new();
        let mut current: Vec<ElemId> = Vec::new();
        self.antichain_rec(&elems, 0, &mut current, &mut out);
        out
    }

    fn antichain_rec(
        &self,
        elems: &[ElemId],
        start: usize,
        current: &mut Vec<ElemId>,
        out: &mut Vec<BTreeSet<ElemId>>,
    ) {
        // maximal iff no element outside extends the antichain
        let extendable = |set: &[ElemId]| {
            elems
                .iter()
                .filter(|e| !set.contains(e))
                .any(|e| set.iter().all(|x| self.incomparable(e, x)))
        };
        if !extendable(current) && !current.is_empty() {
            let set: BTreeSet<ElemId> = current.iter().cloned().collect();
            if !out.contains(&set) {
                out.push(set);
            }
        }
        for i in start..elems.len() {
            if current.iter().all(|x| self.incomparable(&elems[i], x)) {
                current.push(elems[i].clone());
                self.antichain_rec(elems, i + 1, current, out);
                current.pop();
            }
        }
    }

    /// The maximal antichains sorted by the order ≺ (X ≺ Y iff no element of
    /// Y precedes an element of X).  `None` when ≺ is not linear, i.e. when
    /// the precedence order is not an interval order.
    pub fn antichain_chain(&self) -> Option<Vec<BTreeSet<ElemId>>> {
        let mut chains = self.maximal_antichains();
        let le = |x: &BTreeSet<ElemId>, y: &BTreeSet<ElemId>| {
            x.iter().all(|a| y.iter().all(|b| !self.before(b, a)))
        };
        let mut out = Vec::new();
        while !chains.is_empty() {
            let pos = chains
                .iter()
                .position(|x| chains.iter().all(|y| le(x, y)))?;
            out.push(chains.remove(pos));
        }
        Some(out)
    }

    /// Decomposition of an interval ipomset into discrete pieces, one per
    /// maximal antichain, with matching intermediate interfaces.
    pub fn decompose_interval(&self) -> Result<Vec<Ipomset>, IpomsetError> {
        if !self.is_interval() {
            return Err(IpomsetError::NotInterval);
        }
        if self.is_empty() {
            return Ok(vec![self.clone()]);
        }
        let chain = self.antichain_chain().ok_or(IpomsetError::NotInterval)?;
        let m = chain.len();
        let mut pieces = Vec::new();
        for (i, anti) in chain.iter().enumerate() {
            let srcs: BTreeSet<ElemId> = if i == 0 {
                self.sources.clone()
            } else {
                anti.intersection(&chain[i - 1]).cloned().collect()
            };
            let tgts: BTreeSet<ElemId> = if i == m - 1 {
                self.targets.clone()
            } else {
                anti.intersection(&chain[i + 1]).cloned().collect()
            };
            let raw = RawIpomset {
                elements: anti
                    .iter()
                    .map(|e| {
                        (
                            e.clone(),
                            self.labels[e].clone(),
                            srcs.contains(e),
                            tgts.contains(e),
                        )
                    })
                    .collect(),
                precedence: Vec::new(),
                event_order: self
                    .event_order
                    .iter()
                    .filter(|(a, b)| anti.contains(a) && anti.contains(b))
                    .cloned()
                    .collect(),
            };
            pieces.push(validate_ipomset(&raw)?);
        }
        Ok(pieces)
    }

    /// Refinement of `decompose_interval` into a chain of elementary
    /// starters and terminators (each starting or terminating one element).
    pub fn elementary_chain(&self) -> Result<Vec<Ipomset>, IpomsetError> {
        let pieces = self.decompose_interval()?;
        let mut out = Vec::new();
        for piece in &pieces {
            let all = &piece.elements;
            // starters: grow from the sources one element at a time
            let mut present: BTreeSet<ElemId> = piece.sources.clone();
            let added: Vec<ElemId> = piece
                .linearize(&all.difference(&present).cloned().collect())
                .elements;
            for e in added {
                let before: BTreeSet<ElemId> = present.clone();
                present.insert(e.clone());
                out.push(discrete_step(piece, &present, &before, &present));
            }
            // terminators: shrink down to the targets one element at a time
            let removed: Vec<ElemId> = piece
                .linearize(&all.difference(&piece.targets).cloned().collect())
                .elements;
            let mut targets: BTreeSet<ElemId> = all.clone();
            for e in removed {
                let carrier = targets.clone();
                targets.remove(&e);
                out.push(discrete_step(piece, &carrier, &carrier, &targets));
            }
            if out.is_empty() || (piece.sources == *all && piece.targets == *all) {
                // piece is an identity; keep it as its own (non-elementary) step
                out.push(piece.clone());
            }
        }
        Ok(out)
    }
}

/// A discrete ipomset over `carrier` (a subset of `host`'s elements) with
/// the stated interfaces, inheriting labels and event order from `host`.
fn discrete_step(
    host: &Ipomset,
    carrier: &BTreeSet<ElemId>,
    srcs: &BTreeSet<ElemId>,
    tgts: &BTreeSet<ElemId>,
) -> Ipomset {
    validate_ipomset(&RawIpomset {
        elements: carrier
            .iter()
            .map(|e| {
                (
                    e.clone(),
                    host.labels[e].clone(),
                    srcs.contains(e),
                    tgts.contains(e),
                )
            })
            .collect(),
        precedence: Vec::new(),
        event_order: host
            .event_order
            .iter()
            .filter(|(a, b)| carrier.contains(a) && carrier.contains(b))
            .cloned()
            .collect(),
    })
    .expect("discrete step over an antichain is valid")
}

/// Canonical form: two ipomsets are isomorphic iff their canonical forms are
/// equal.  Positions follow the filtration order of `canonical_order`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalIpomset {
    pub size: usize,
    pub rank: Vec<(Label, bool, bool)>,
    pub precedence_matrix: Vec<Vec<bool>>,
    pub essential_event_matrix: Vec<Vec<bool>>,
}

impl CanonicalIpomset {
    /// Rebuild a concrete ipomset (elements named by position).
    pub fn to_ipomset(&self) -> Ipomset {
        let ids: Vec<ElemId> = (0..self.size).map(|i| format!("p{i}")).collect();
        let mut raw = RawIpomset::default();
        for (i, (l, s, t)) in self.rank.iter().enumerate() {
            raw.elements.push((ids[i].clone(), l.clone(), *s, *t));
        }
        for i in 0..self.size {
            for j in 0..self.size {
                if self.precedence_matrix[i][j] {
                    raw.precedence.push((ids[i].clone(), ids[j].clone()));
                }
                if self.essential_event_matrix[i][j] {
                    raw.event_order.push((ids[i].clone(), ids[j].clone()));
                }
            }
        }
        validate_ipomset(&raw).expect("canonical form encodes a valid ipomset")
    }
}

/// Witness maps tracing the operands' elements into a composite.
#[derive(Debug, Clone)]
pub struct GlueWitness {
    pub left: BTreeMap<ElemId, ElemId>,
    pub right: BTreeMap<ElemId, ElemId>,
}

pub fn glue(p: &Ipomset, q: &Ipomset) -> Result<Ipomset, IpomsetError> {
    glue_with_witness(p, q).map(|(r, _)| r)
}

/// Gluing composition: targets of `p` are identified with sources of `q`
/// via the unique label-sequence bijection of the interfaces.
pub fn glue_with_witness(
    p: &Ipomset,
    q: &Ipomset,
) -> Result<(Ipomset, GlueWitness), IpomsetError> {
    let tp = p.target_interface();
    let sq = q.source_interface();
    if tp.label_seq() != sq.label_seq() {
        return Err(IpomsetError::InterfaceMismatch);
    }
    let mut left: BTreeMap<ElemId, ElemId> = BTreeMap::new();
    let mut right: BTreeMap<ElemId, ElemId> = BTreeMap::new();
    for e in &p.elements {
        left.insert(e.clone(), format!("l.{e}"));
    }
    for (t, s) in tp.elements.iter().zip(sq.elements.iter()) {
        right.insert(s.clone(), left[t].clone());
    }
    for e in &q.elements {
        if !q.sources.contains(e) {
            right.insert(e.clone(), format!("r.{e}"));
        }
    }
    let mut raw = RawIpomset::default();
    for e in &p.elements {
        raw.elements.push((
            left[e].clone(),
            p.labels[e].clone(),
            p.sources.contains(e),
            false,
        ));
    }
    for e in &q.elements {
        if q.sources.contains(e) {
            continue;
        }
        raw.elements
            .push((right[e].clone(), q.labels[e].clone(), false, false));
    }
    // target interface of the composite is the (mapped) target of q
    for (id, _, _, tgt) in raw.elements.iter_mut() {
        *tgt = q
            .targets
            .iter()
            .any(|t| right.get(t).map(|m| m == id).unwrap_or(false));
    }
    for (a, b) in &p.precedence {
        raw.precedence.push((left[a].clone(), left[b].clone()));
    }
    for (a, b) in &q.precedence {
        raw.precedence.push((right[a].clone(), right[b].clone()));
    }
    for a in &p.elements {
        if p.targets.contains(a) {
            continue;
        }
        for b in &q.elements {
            if q.sources.contains(b) {
                continue;
            }
            raw.precedence.push((left[a].clone(), right[b].clone()));
        }
    }
    for (a, b) in &p.event_order {
        raw.event_order.push((left[a].clone(), left[b].clone()));
    }
    for (a, b) in &q.event_order {
        raw.event_order.push((right[a].clone(), right[b].clone()));
    }
    let glued = validate_ipomset(&raw)?;
    Ok((glued, GlueWitness { left, right }))
}

pub fn parallel(p: &Ipomset, q: &Ipomset) -> Ipomset {
    parallel_with_witness(p, q).0
}

/// Parallel composition: disjoint union with every element of `p` placed
/// before every element of `q` in the event order (non-commutative).
pub fn parallel_with_witness(p: &Ipomset, q: &Ipomset) -> (Ipomset, GlueWitness) {
    let mut left: BTreeMap<ElemId, ElemId> = BTreeMap::new();
    let mut right: BTreeMap<ElemId, ElemId> = BTreeMap::new();
    let mut raw = RawIpomset::default();
    for e in &p.elements {
        left.insert(e.clone(), format!("l.{e}"));
        raw.elements.push((
            format!("l.{e}"),
            p.labels[e].clone(),
            p.sources.contains(e),
            p.targets.contains(e),
        ));
    }
    for e in &q.elements {
        right.insert(e.clone(), format!("r.{e}"));
        raw.elements.push((
            format!("r.{e}"),
            q.labels[e].clone(),
            q.sources.contains(e),
            q.targets.contains(e),
        ));
    }
    for (a, b) in &p.precedence {
        raw.precedence.push((left[a].clone(), left[b].clone()));
    }
    for (a, b) in &q.precedence {
        raw.precedence.push((right[a].clone(), right[b].clone()));
    }
    for (a, b) in &p.event_order {
        raw.event_order.push((left[a].clone(), left[b].clone()));
    }
    for (a, b) in &q.event_order {
        raw.event_order.push((right[a].clone(), right[b].clone()));
    }
    for a in &p.elements {
        for b in &q.elements {
            raw.event_order.push((left[a].clone(), right[b].clone()));
        }
    }
    let r = validate_ipomset(&raw).expect("parallel composition of valid ipomsets is valid");
    (r, GlueWitness { left, right })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumptionWitness {
    pub bijection: BTreeMap<ElemId, ElemId>,
}

/// Search for a subsumption map `f: P → Q` witnessing P ⊑ Q: a label- and
/// interface-preserving bijection that reflects precedence and preserves
/// the event order on precedence-antichain pairs of P.
pub fn subsumes(p: &Ipomset, q: &Ipomset) -> Option<SubsumptionWitness> {
    if p.len() != q.len() {
        return None;
    }
    let order = p.canonical_order();
    let mut assign: BTreeMap<ElemId, ElemId> = BTreeMap::new();
    let mut used: BTreeSet<ElemId> = BTreeSet::new();
    if subsume_rec(p, q, &order, 0, &mut assign, &mut used) {
        Some(SubsumptionWitness { bijection: assign })
    } else {
        None
    }
}

fn subsume_rec(
    p: &Ipomset,
    q: &Ipomset,
    order: &[ElemId],
    idx: usize,
    assign: &mut BTreeMap<ElemId, ElemId>,
    used: &mut BTreeSet<ElemId>,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let x = &order[idx];
    let candidates: Vec<ElemId> = q
        .elements
        .iter()
        .filter(|y| {
            !used.contains(*y)
                && q.labels[*y] == p.labels[x]
                && q.sources.contains(*y) == p.sources.contains(x)
                && q.targets.contains(*y) == p.targets.contains(x)
        })
        .cloned()
        .collect();
    'cand: for y in candidates {
        for (x2, y2) in assign.iter() {
            // precedence reflection: f(x) <_Q f(y) ⟹ x <_P y, both directions
            if q.before(&y, y2) && !p.before(x, x2) {
                continue 'cand;
            }
            if q.before(y2, &y) && !p.before(x2, x) {
                continue 'cand;
            }
            // essential event order preserved on antichain pairs of P
            if p.incomparable(x, x2) {
                if p.ev_before(x, x2) && !q.ev_before(&y, y2) {
                    continue 'cand;
                }
                if p.ev_before(x2, x) && !q.ev_before(y2, &y) {
                    continue 'cand;
                }
            }
        }
        assign.insert(x.clone(), y.clone());
        used.insert(y.clone());
        if subsume_rec(p, q, order, idx + 1, assign, used) {
            return true;
        }
        assign.remove(x);
        used.remove(&y);
    }
    false
}
