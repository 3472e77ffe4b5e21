//! Higher-dimensional automata: event-consistent labeled precubical sets
//! with initial and accepting cells, their maps, coproduct, tensor product,
//! track objects, and a backtracking morphism search.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

use crate::ipomset::{
    glue_with_witness, ElemId, Ipomset, IpomsetError, Label, LinearPomset, SubsumptionWitness,
};
use crate::precubical::{
    cell_label, extend_labeling, universal_events, CellId, InconsistencyWitness, Labeling,
    PrecubicalError, PrecubicalSet, RawPrecubical, UniversalEvents,
};

#[derive(Debug, Error)]
pub enum HdaError {
    #[error(transparent)]
    Precubical(#[from] PrecubicalError),
    #[error(transparent)]
    Ipomset(#[from] IpomsetError),
    #[error("not event consistent at cell `{}`", .0.cell)]
    NotEventConsistent(Box<InconsistencyWitness>),
    #[error("initial/accepting cell `{0}` does not exist")]
    UnknownMarkedCell(CellId),
    #[error("map does not commute with face {i}^{nu} at `{cell}`")]
    FaceNonCommuting { cell: CellId, i: usize, nu: u8 },
    #[error("map breaks the label of `{0}`")]
    LabelBroken(CellId),
    #[error("map breaks initial/accepting status of `{0}`")]
    InterfaceBroken(CellId),
    #[error("map is not defined on cell `{0}`")]
    MapNotTotal(CellId),
    #[error("search budget exceeded")]
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hda {
    pub pc: PrecubicalSet,
    pub labeling: Labeling,
    pub events: UniversalEvents,
    pub initial: BTreeSet<CellId>,
    pub accepting: BTreeSet<CellId>,
}

impl Hda {
    pub fn new(
        pc: PrecubicalSet,
        edge_labels: &BTreeMap<CellId, Label>,
        initial: BTreeSet<CellId>,
        accepting: BTreeSet<CellId>,
    ) -> Result<Hda, HdaError> {
        let labeling = extend_labeling(&pc, edge_labels)?;
        let events = universal_events(&pc).map_err(HdaError::NotEventConsistent)?;
        for c in initial.iter().chain(accepting.iter()) {
            if !pc.dims.contains_key(c) {
                return Err(HdaError::UnknownMarkedCell(c.clone()));
            }
        }
        Ok(Hda {
            pc,
            labeling,
            events,
            initial,
            accepting,
        })
    }

    pub fn cell_label(&self, cell: &str) -> LinearPomset {
        cell_label(&self.pc, &self.events, &self.labeling, cell)
    }

    /// Deterministic cell order used by searches and enumerations.
    pub fn sorted_cells(&self) -> Vec<CellId> {
        self.pc.dims.keys().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HdaMap {
    pub cell_map: BTreeMap<CellId, CellId>,
}

pub fn validate_map(f: &BTreeMap<CellId, CellId>, x: &Hda, y: &Hda) -> Result<HdaMap, HdaError> {
    for cell in x.pc.dims.keys() {
        let img = f
            .get(cell)
            .ok_or_else(|| HdaError::MapNotTotal(cell.clone()))?;
        let dim = x.pc.dim(cell);
        if !y.pc.dims.contains_key(img) || y.pc.dim(img) != dim {
            return Err(HdaError::LabelBroken(cell.clone()));
        }
        if x.labeling.cell_tuples[cell] != y.labeling.cell_tuples[img] {
            return Err(HdaError::LabelBroken(cell.clone()));
        }
        for i in 1..=dim {
            for nu in 0..2u8 {
                let fx = x.pc.face1(cell, i, nu)?;
                let fy = y.pc.face1(img, i, nu)?;
                if f.get(&fx) != Some(&fy) {
                    return Err(HdaError::FaceNonCommuting {
                        cell: cell.clone(),
                        i,
                        nu,
                    });
                }
            }
        }
    }
    for c in &x.initial {
        if !y.initial.contains(&f[c]) {
            return Err(HdaError::InterfaceBroken(c.clone()));
        }
    }
    for c in &x.accepting {
        if !y.accepting.contains(&f[c]) {
            return Err(HdaError::InterfaceBroken(c.clone()));
        }
    }
    Ok(HdaMap { cell_map: f.clone() })
}

/// Disjoint union of HDAs; cells prefixed `a.` and `b.`, with the witness
/// inclusions returned alongside.
pub fn coproduct(x: &Hda, y: &Hda) -> (Hda, HdaMap, HdaMap) {
    let mut raw = RawPrecubical::default();
    let mut edge_labels = BTreeMap::new();
    let mut initial = BTreeSet::new();
    let mut accepting = BTreeSet::new();
    let mut inc_x = BTreeMap::new();
    let mut inc_y = BTreeMap::new();
    for (pref, h, inc) in [("a.", x, &mut inc_x), ("b.", y, &mut inc_y)] {
        for (c, d) in &h.pc.dims {
            raw.cells.push((format!("{pref}{c}"), *d));
            inc.insert(c.clone(), format!("{pref}{c}"));
            for i in 1..=*d {
                for nu in 0..2u8 {
                    let fc = h.pc.face1(c, i, nu).unwrap();
                    raw.faces
                        .push((format!("{pref}{c}"), i, nu, format!("{pref}{fc}")));
                }
            }
        }
        for (e, l) in &h.labeling.edge_labels {
            edge_labels.insert(format!("{pref}{e}"), l.clone());
        }
        for c in &h.initial {
            initial.insert(format!("{pref}{c}"));
        }
        for c in &h.accepting {
            accepting.insert(format!("{pref}{c}"));
        }
    }
    let pc = crate::precubical::validate_precubical(&raw).expect("coproduct is precubical");
    let h = Hda::new(pc, &edge_labels, initial, accepting).expect("coproduct is a valid HDA");
    (h, HdaMap { cell_map: inc_x }, HdaMap { cell_map: inc_y })
}

fn tensor_id(x: &str, y: &str) -> CellId {
    format!("({x}|{y})")
}

/// Tensor product: cells are pairs, faces act on the left component for
/// directions up to its dimension and on the right above it; labels
/// concatenate; initial and accepting cells are products.
pub fn tensor(x: &Hda, y: &Hda) -> Hda {
    let mut raw = RawPrecubical::default();
    let mut edge_labels = BTreeMap::new();
    for (cx, dx) in &x.pc.dims {
        for (cy, dy) in &y.pc.dims {
            let id = tensor_id(cx, cy);
            raw.cells.push((id.clone(), dx + dy));
            for i in 1..=(dx + dy) {
                for nu in 0..2u8 {
                    let face = if i <= *dx {
                        tensor_id(&x.pc.face1(cx, i, nu).unwrap(), cy)
                    } else {
                        tensor_id(cx, &y.pc.face1(cy, i - dx, nu).unwrap())
                    };
                    raw.faces.push((id.clone(), i, nu, face));
                }
            }
            if dx + dy == 1 {
                let l = if *dx == 1 {
                    x.labeling.edge_labels[cx].clone()
                } else {
                    y.labeling.edge_labels[cy].clone()
                };
                edge_labels.insert(id, l);
            }
        }
    }
    let pc = crate::precubical::validate_precubical(&raw).expect("tensor is precubical");
    let initial = x
        .initial
        .iter()
        .flat_map(|a| y.initial.iter().map(move |b| tensor_id(a, b)))
        .collect();
    let accepting = x
        .accepting
        .iter()
        .flat_map(|a| y.accepting.iter().map(move |b| tensor_id(a, b)))
        .collect();
    Hda::new(pc, &edge_labels, initial, accepting).expect("tensor of HDAs is a valid HDA")
}

/// Track object of an ipomset, together with the element order fixing the
/// meaning of the cell-id value words.
#[derive(Debug, Clone)]
pub struct TrackObject {
    pub hda: Hda,
    /// elements of P in canonical (filtration) order = value-word positions
    pub elems: Vec<ElemId>,
    /// the host ipomset
    pub p: Ipomset,
}

const ADMISSIBLE: [(char, char); 5] = [('0', '0'), ('*', '0'), ('1', '0'), ('1', '*'), ('1', '1')];

fn admissible(a: char, b: char) -> bool {
    ADMISSIBLE.contains(&(a, b))
}

impl TrackObject {
    pub fn initial_cell(&self) -> CellId {
        self.hda.initial.iter().next().unwrap().clone()
    }

    pub fn accepting_cell(&self) -> CellId {
        self.hda.accepting.iter().next().unwrap().clone()
    }

    /// The value a cell assigns to an element of P.
    pub fn value(&self, cell: &str, elem: &str) -> char {
        let pos = self.elems.iter().position(|e| e == elem).unwrap();
        cell.chars().nth(pos).unwrap()
    }

    pub fn cell_of_values(&self, values: &BTreeMap<ElemId, char>) -> CellId {
        self.elems.iter().map(|e| values[e]).collect()
    }

    /// The running elements of a cell, in event order.
    pub fn star_set(&self, cell: &str) -> Vec<ElemId> {
        let mut stars: Vec<ElemId> = self
            .elems
            .iter()
            .zip(cell.chars())
            .filter(|(_, c)| *c == '*')
            .map(|(e, _)| e.clone())
            .collect();
        stars.sort_by(|a, b| {
            if self.p.ev_before(a, b) {
                std::cmp::Ordering::Less
            } else if self.p.ev_before(b, a) {
                std::cmp::Ordering::Greater
            } else {
                a.cmp(b)
            }
        });
        stars
    }
}

/// Build the track object: cells are the relation-preserving maps from
/// (P, <) to ({0,⊛,1}, ≺), faces rewrite the i-th running element in event
/// order, the initial cell starts the sources, the accepting cell has
/// finished everything but the targets.
pub fn track_object(p: &Ipomset) -> TrackObject {
    let elems = p.canonical_order();
    let n = elems.len();
    let mut cells: Vec<String> = Vec::new();
    let mut stack: Vec<String> = vec![String::new()];
    while let Some(w) = stack.pop() {
        if w.len() == n {
            cells.push(w);
            continue;
        }
        for c in ['0', '*', '1'] {
            stack.push(format!("{w}{c}"));
        }
    }
    cells.retain(|w| {
        let v: Vec<char> = w.chars().collect();
        (0..n).all(|i| {
            (0..n).all(|j| !p.before(&elems[i], &elems[j]) || admissible(v[i], v[j]))
        })
    });
    let word_id = |w: &str| -> CellId {
        if w.is_empty() {
            "-".to_string()
        } else {
            w.to_string()
        }
    };
    let mut raw = RawPrecubical::default();
    let mut edge_labels = BTreeMap::new();
    for w in &cells {
        let v: Vec<char> = w.chars().collect();
        let mut stars: Vec<usize> = (0..n).filter(|i| v[*i] == '*').collect();
        stars.sort_by(|&a, &b| {
            if p.ev_before(&elems[a], &elems[b]) {
                std::cmp::Ordering::Less
            } else if p.ev_before(&elems[b], &elems[a]) {
                std::cmp::Ordering::Greater
            } else {
                elems[a].cmp(&elems[b])
            }
        });
        raw.cells.push((word_id(w), stars.len()));
        for (i, &pos) in stars.iter().enumerate() {
            for nu in 0..2u8 {
                let mut fv = v.clone();
                fv[pos] = if nu == 0 { '0' } else { '1' };
                let fw: String = fv.into_iter().collect();
                raw.faces.push((word_id(w), i + 1, nu, word_id(&fw)));
            }
        }
        if stars.len() == 1 {
            edge_labels.insert(word_id(w), p.labels[&elems[stars[0]]].clone());
        }
    }
    let pc = crate::precubical::validate_precubical(&raw)
        .expect("track object is a valid precubical set");
    let cell_for = |stars: &BTreeSet<ElemId>, done: char| -> CellId {
        let w: String = elems
            .iter()
            .map(|e| if stars.contains(e) { '*' } else { done })
            .collect();
        word_id(&w)
    };
    let initial = BTreeSet::from([cell_for(&p.sources, '0')]);
    let accepting = BTreeSet::from([cell_for(&p.targets, '1')]);
    let hda = Hda::new(pc, &edge_labels, initial, accepting).expect("track object is a valid HDA");
    TrackObject {
        hda,
        elems,
        p: p.clone(),
    }
}

/// The HDA map □Q → □P induced by a subsumption witness f: Q → P
/// (precomposition with the inverse bijection); injective on cells.
pub fn subsumption_to_map(
    sub: &TrackObject,
    sup: &TrackObject,
    w: &SubsumptionWitness,
) -> Result<HdaMap, HdaError> {
    let mut inv: BTreeMap<ElemId, ElemId> = BTreeMap::new();
    for (q, p) in &w.bijection {
        inv.insert(p.clone(), q.clone());
    }
    let mut cell_map = BTreeMap::new();
    for cell in sub.hda.pc.dims.keys() {
        let values: BTreeMap<ElemId, char> = sup
            .elems
            .iter()
            .map(|p| (p.clone(), sub.value(cell, &inv[p])))
            .collect();
        cell_map.insert(cell.clone(), sup.cell_of_values(&values));
    }
    validate_map(&cell_map, &sub.hda, &sup.hda)
}

/// The two embeddings of the pushout decomposition of □^{Q*R}: cells of □Q
/// extended by 0 on the elements of R that have not started, cells of □R
/// extended by 1 on the elements of Q already finished.
pub fn pushout_embeddings(
    q: &Ipomset,
    r: &Ipomset,
) -> Result<(TrackObject, HdaMap, HdaMap), HdaError> {
    let (glued, wit) = glue_with_witness(q, r)?;
    let comp = track_object(&glued);
    let tq = track_object(q);
    let tr = track_object(r);
    let mut j0 = BTreeMap::new();
    for cell in tq.hda.pc.dims.keys() {
        let values: BTreeMap<ElemId, char> = comp
            .elems
            .iter()
            .map(|e| {
                let v = match wit.left.iter().find(|(_, img)| *img == e) {
                    Some((orig, _)) => tq.value(cell, orig),
                    None => '0',
                };
                (e.clone(), v)
            })
            .collect();
        j0.insert(cell.clone(), comp.cell_of_values(&values));
    }
    let mut j1 = BTreeMap::new();
    for cell in tr.hda.pc.dims.keys() {
        let values: BTreeMap<ElemId, char> = comp
            .elems
            .iter()
            .map(|e| {
                let from_r = wit.right.iter().find(|(_, img)| *img == e);
                let v = match from_r {
                    Some((orig, _)) => tr.value(cell, orig),
                    None => '1',
                };
                (e.clone(), v)
            })
            .collect();
        j1.insert(cell.clone(), comp.cell_of_values(&values));
    }
    // the embeddings need not preserve initial/accepting status, so validate
    // only the precubical-map part by checking against interface-free hosts
    let mut tq_h = tq.hda.clone();
    let mut tr_h = tr.hda.clone();
    let mut comp_free = comp.hda.clone();
    comp_free.initial = comp.hda.pc.dims.keys().cloned().collect();
    comp_free.accepting = comp_free.initial.clone();
    tq_h.initial = tq.hda.pc.dims.keys().cloned().collect();
    tq_h.accepting = tq_h.initial.clone();
    tr_h.initial = tr_h.pc.dims.keys().cloned().collect();
    tr_h.accepting = tr_h.initial.clone();
    let m0 = validate_map(&j0, &tq_h, &comp_free)?;
    let m1 = validate_map(&j1, &tr_h, &comp_free)?;
    Ok((comp, m0, m1))
}

/// Backtracking search for an HDA map X → Y: images chosen in decreasing
/// dimension, most-constrained cell first, with face-commutation
/// propagation and label pruning.  `budget` bounds propagation steps.
pub fn find_hda_map(x: &Hda, y: &Hda, budget: u64) -> Result<Option<HdaMap>, HdaError> {
    // candidate images per cell: equal dimension and label tuple,
    // initial/accepting preserved
    let mut cells: Vec<CellId> = x.sorted_cells();
    let mut cands: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
    for c in &cells {
        let list: Vec<CellId> = y
            .sorted_cells()
            .into_iter()
            .filter(|d| {
                y.pc.dim(d) == x.pc.dim(c)
                    && y.labeling.cell_tuples[d] == x.labeling.cell_tuples[c]
                    && (!x.initial.contains(c) || y.initial.contains(d))
                    && (!x.accepting.contains(c) || y.accepting.contains(d))
            })
            .collect();
        if list.is_empty() {
            return Ok(None);
        }
        cands.insert(c.clone(), list);
    }
    cells.sort_by(|a, b| {
        (std::cmp::Reverse(x.pc.dim(a)), cands[a].len(), a.clone()).cmp(&(
            std::cmp::Reverse(x.pc.dim(b)),
            cands[b].len(),
            b.clone(),
        ))
    });
    let mut assign: BTreeMap<CellId, CellId> = BTreeMap::new();
    let mut steps: u64 = 0;
    if search(x, y, &cells, 0, &cands, &mut assign, &mut steps, budget)? {
        Ok(Some(validate_map(&assign, x, y)?))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    x: &Hda,
    y: &Hda,
    cells: &[CellId],
    idx: usize,
    cands: &BTreeMap<CellId, Vec<CellId>>,
    assign: &mut BTreeMap<CellId, CellId>,
    steps: &mut u64,
    budget: u64,
) -> Result<bool, HdaError> {
    if idx == cells.len() {
        return Ok(true);
    }
    let cell = &cells[idx];
    if assign.contains_key(cell) {
        return search(x, y, cells, idx + 1, cands, assign, steps, budget);
    }
    for img in &cands[cell] {
        let mut trail: Vec<CellId> = Vec::new();
        if propagate(x, y, cell, img, cands, assign, &mut trail, steps, budget)?
            && search(x, y, cells, idx + 1, cands, assign, steps, budget)?
        {
            return Ok(true);
        }
        for c in trail {
            assign.remove(&c);
        }
    }
    Ok(false)
}

/// Assign `cell ↦ img` and propagate through all iterated faces; records
/// added assignments in `trail` for rollback.
#[allow(clippy::too_many_arguments)]
fn propagate(
    x: &Hda,
    y: &Hda,
    cell: &CellId,
    img: &CellId,
    cands: &BTreeMap<CellId, Vec<CellId>>,
    assign: &mut BTreeMap<CellId, CellId>,
    trail: &mut Vec<CellId>,
    steps: &mut u64,
    budget: u64,
) -> Result<bool, HdaError> {
    *steps += 1;
    if *steps > budget {
        return Err(HdaError::Budget);
    }
    if let Some(prev) = assign.get(cell) {
        return Ok(prev == img);
    }
    if !cands[cell].contains(img) {
        return Ok(false);
    }
    assign.insert(cell.clone(), img.clone());
    trail.push(cell.clone());
    let dim = x.pc.dim(cell);
    for i in 1..=dim {
        for nu in 0..2u8 {
            let fx = x.pc.face1(cell, i, nu)?;
            let fy = y.pc.face1(img, i, nu)?;
            if !propagate(x, y, &fx, &fy, cands, assign, trail, steps, budget)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
