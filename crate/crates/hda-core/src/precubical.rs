//! Precubical sets: graded cells with elementary face maps, standard cubes,
//! labelings, and universal events.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

use crate::ipomset::{Label, LinearPomset};

pub type CellId = String;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrecubicalError {
    #[error("face identity violated at cell `{cell}` (i={i}, j={j}, nu={nu}, mu={mu})")]
    IdentityViolation {
        cell: CellId,
        i: usize,
        j: usize,
        nu: u8,
        mu: u8,
    },
    #[error("face of `{0}` points to unknown cell `{1}`")]
    DanglingFace(CellId, CellId),
    #[error("face of `{cell}` in direction {i} has dimension {got}, expected {want}")]
    BadDimension {
        cell: CellId,
        i: usize,
        got: usize,
        want: usize,
    },
    #[error("face index {0} out of range for cell `{1}`")]
    IndexOutOfRange(usize, CellId),
    #[error("not event consistent: {0}")]
    NotEventConsistent(String),
    #[error("inconsistent edge labels on square `{square}` in direction {direction}")]
    InconsistentEdgeLabels { square: CellId, direction: usize },
    #[error("unknown cell `{0}`")]
    UnknownCell(CellId),
    #[error("duplicate cell id `{0}`")]
    DuplicateCell(CellId),
    #[error("edge `{0}` has no label")]
    MissingLabel(CellId),
}

#[derive(Debug, Clone, Default)]
pub struct RawPrecubical {
    pub cells: Vec<(CellId, usize)>,
    /// (cell, direction i ≥ 1, polarity ν ∈ {0,1}, face cell)
    pub faces: Vec<(CellId, usize, u8, CellId)>,
}

/// A validated precubical set.  Faces are stored per cell as a dense array
/// indexed by direction, each entry holding the lower and upper face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecubicalSet {
    pub dims: BTreeMap<CellId, usize>,
    pub faces: BTreeMap<CellId, Vec<[CellId; 2]>>,
}

pub fn validate_precubical(raw: &RawPrecubical) -> Result<PrecubicalSet, PrecubicalError> {
    let mut dims: BTreeMap<CellId, usize> = BTreeMap::new();
    for (id, dim) in &raw.cells {
        if dims.insert(id.clone(), *dim).is_some() {
            return Err(PrecubicalError::DuplicateCell(id.clone()));
        }
    }
    let mut faces: BTreeMap<CellId, Vec<[CellId; 2]>> = BTreeMap::new();
    for (id, dim) in &dims {
        faces.insert(id.clone(), vec![[String::new(), String::new()]; *dim]);
    }
    for (cell, i, nu, face) in &raw.faces {
        let dim = *dims
            .get(cell)
            .ok_or_else(|| PrecubicalError::UnknownCell(cell.clone()))?;
        if *i < 1 || *i > dim {
            return Err(PrecubicalError::IndexOutOfRange(*i, cell.clone()));
        }
        let fdim = *dims
            .get(face)
            .ok_or_else(|| PrecubicalError::DanglingFace(cell.clone(), face.clone()))?;
        if fdim + 1 != dim {
            return Err(PrecubicalError::BadDimension {
                cell: cell.clone(),
                i: *i,
                got: fdim,
                want: dim - 1,
            });
        }
        faces.get_mut(cell).unwrap()[*i - 1][*nu as usize] = face.clone();
    }
    for (cell, arr) in &faces {
        for (i, pair) in arr.iter().enumerate() {
            for f in pair {
                if f.is_empty() {
                    return Err(PrecubicalError::DanglingFace(
                        cell.clone(),
                        format!("<missing face {} of {}>", i + 1, cell),
                    ));
                }
            }
        }
    }
    let x = PrecubicalSet { dims, faces };
    // precubical identities: δ_i^ν δ_j^μ = δ_{j−1}^μ δ_i^ν for i < j
    for (cell, dim) in &x.dims {
        for j in 2..=*dim {
            for i in 1..j {
                for nu in 0..2u8 {
                    for mu in 0..2u8 {
                        let a = x.elementary(&x.elementary(cell, j, mu), i, nu);
                        let b = x.elementary(&x.elementary(cell, i, nu), j - 1, mu);
                        if a != b {
                            return Err(PrecubicalError::IdentityViolation {
                                cell: cell.clone(),
                                i,
                                j,
                                nu,
                                mu,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(x)
}

impl PrecubicalSet {
    pub fn dim(&self, cell: &str) -> usize {
        self.dims[cell]
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<CellId> {
        self.dims
            .iter()
            .filter(|(_, dim)| **dim == d)
            .map(|(c, _)| c.clone())
            .collect()
    }

    pub fn max_dim(&self) -> usize {
        self.dims.values().copied().max().unwrap_or(0)
    }

    fn elementary(&self, cell: &str, i: usize, nu: u8) -> CellId {
        self.faces[cell][i - 1][nu as usize].clone()
    }

    /// Iterated face δ^ν_A, applied in descending index order.
    pub fn face(
        &self,
        cell: &str,
        a: &BTreeSet<usize>,
        nu: u8,
    ) -> Result<CellId, PrecubicalError> {
        let dim = *self
            .dims
            .get(cell)
            .ok_or_else(|| PrecubicalError::UnknownCell(cell.to_string()))?;
        for &i in a {
            if i < 1 || i > dim {
                return Err(PrecubicalError::IndexOutOfRange(i, cell.to_string()));
            }
        }
        let mut current = cell.to_string();
        for &i in a.iter().rev() {
            current = self.elementary(&current, i, nu);
        }
        Ok(current)
    }

    /// Single elementary face, with bounds checking.
    pub fn face1(&self, cell: &str, i: usize, nu: u8) -> Result<CellId, PrecubicalError> {
        self.face(cell, &BTreeSet::from([i]), nu)
    }
}

/// Standard cube on a linear pomset: cells are the functions S → {0, ⊛, 1},
/// encoded as strings over the alphabet `0`, `*`, `1` in event order.
/// Returns the complex and the top cell.
pub fn standard_cube(s: &LinearPomset) -> (PrecubicalSet, CellId) {
    let n = s.len();
    if n == 0 {
        // a single vertex; "-" stands for the empty value word
        let x = validate_precubical(&RawPrecubical {
            cells: vec![("-".to_string(), 0)],
            faces: Vec::new(),
        })
        .unwrap();
        return (x, "-".to_string());
    }
    let mut raw = RawPrecubical::default();
    let mut stack = vec![String::new()];
    let mut words = Vec::new();
    while let Some(w) = stack.pop() {
        if w.len() == n {
            words.push(w);
            continue;
        }
        for c in ['0', '*', '1'] {
            stack.push(format!("{w}{c}"));
        }
    }
    for w in &words {
        let dim = w.chars().filter(|c| *c == '*').count();
        raw.cells.push((w.clone(), dim));
        let mut i = 0;
        for (pos, c) in w.chars().enumerate() {
            if c == '*' {
                i += 1;
                for nu in 0..2u8 {
                    let mut fw: Vec<char> = w.chars().collect();
                    fw[pos] = if nu == 0 { '0' } else { '1' };
                    raw.faces
                        .push((w.clone(), i, nu, fw.into_iter().collect()));
                }
            }
        }
    }
    let x = validate_precubical(&raw).expect("standard cube is a valid precubical set");
    (x, "*".repeat(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub edge_labels: BTreeMap<CellId, Label>,
    pub cell_tuples: BTreeMap<CellId, Vec<Label>>,
}

/// Extend edge labels to all cells: the i-th entry of an n-cell's tuple is
/// the label of the edge obtained by collapsing all directions except i to
/// their lower face.
pub fn extend_labeling(
    x: &PrecubicalSet,
    edge_labels: &BTreeMap<CellId, Label>,
) -> Result<Labeling, PrecubicalError> {
    for e in x.cells_of_dim(1) {
        if !edge_labels.contains_key(&e) {
            return Err(PrecubicalError::MissingLabel(e));
        }
    }
    // consistency on squares: opposite edges carry equal labels
    for sq in x.cells_of_dim(2) {
        for dir in 1..=2 {
            let lo = x.face1(&sq, dir, 0)?;
            let hi = x.face1(&sq, dir, 1)?;
            if edge_labels[&lo] != edge_labels[&hi] {
                return Err(PrecubicalError::InconsistentEdgeLabels {
                    square: sq.clone(),
                    direction: dir,
                });
            }
        }
    }
    let mut cell_tuples = BTreeMap::new();
    for (cell, dim) in &x.dims {
        let mut tuple = Vec::new();
        for i in 1..=*dim {
            let a: BTreeSet<usize> = (1..=*dim).filter(|j| *j != i).collect();
            let edge = x.face(cell, &a, 0)?;
            tuple.push(edge_labels[&edge].clone());
        }
        cell_tuples.insert(cell.clone(), tuple);
    }
    Ok(Labeling {
        edge_labels: edge_labels.clone(),
        cell_tuples,
    })
}

pub type EventId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalEvents {
    pub event_of_edge: BTreeMap<CellId, EventId>,
    pub event_tuple: BTreeMap<CellId, Vec<EventId>>,
    pub num_events: usize,
}

/// Witness returned when event identification is impossible: a 2-cell (or
/// higher cell) whose events collide, with an edge chain connecting the two
/// lower faces through the square-identification steps.
#[derive(Debug, Clone)]
pub struct InconsistencyWitness {
    pub cell: CellId,
    pub chain: Vec<CellId>,
}

struct UnionFind {
    parent: Vec<usize>,
    /// merge edges (a, b) recorded for witness reconstruction
    merges: Vec<(usize, usize)>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            merges: Vec::new(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        self.merges.push((a, b));
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
    /// A path from `a` to `b` in the graph of recorded merges.
    fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (x, y) in &self.merges {
            adj.entry(*x).or_default().push(*y);
            adj.entry(*y).or_default().push(*x);
        }
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([a]);
        let mut seen = BTreeSet::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for y in adj.get(&x).cloned().unwrap_or_default() {
                if seen.insert(y) {
                    prev.insert(y, x);
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = prev[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// Compute the universal events: the transitive closure of the relation
/// identifying the two opposite edges of every square, in every direction.
/// Fails when the lower faces of some 2-cell coincide or a higher cell's
/// event tuple has repeated entries.
pub fn universal_events(
    x: &PrecubicalSet,
) -> Result<UniversalEvents, Box<InconsistencyWitness>> {
    let edges: Vec<CellId> = x.cells_of_dim(1);
    let index: BTreeMap<CellId, usize> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let mut uf = UnionFind::new(edges.len());
    for sq in x.cells_of_dim(2) {
        for dir in 1..=2 {
            let lo = x.face1(&sq, dir, 0).unwrap();
            let hi = x.face1(&sq, dir, 1).unwrap();
            uf.union(index[&lo], index[&hi]);
        }
    }
    for sq in x.cells_of_dim(2) {
        let a = x.face1(&sq, 1, 0).unwrap();
        let b = x.face1(&sq, 2, 0).unwrap();
        if uf.find(index[&a]) == uf.find(index[&b]) {
            let chain = uf
                .path(index[&b], index[&a])
                .into_iter()
                .map(|i| edges[i].clone())
                .collect();
            return Err(Box::new(InconsistencyWitness { cell: sq, chain }));
        }
    }
    // renumber events by smallest incident edge id
    let mut rep_min: BTreeMap<usize, CellId> = BTreeMap::new();
    for (e, i) in &index {
        let r = uf.find(*i);
        let entry = rep_min.entry(r).or_insert_with(|| e.clone());
        if e < entry {
            *entry = e.clone();
        }
    }
    let mut reps: Vec<(CellId, usize)> = rep_min.iter().map(|(r, e)| (e.clone(), *r)).collect();
    reps.sort();
    let rep_event: BTreeMap<usize, EventId> = reps
        .iter()
        .enumerate()
        .map(|(k, (_, r))| (*r, k))
        .collect();
    let mut event_of_edge = BTreeMap::new();
    for (e, i) in &index {
        event_of_edge.insert(e.clone(), rep_event[&uf.find(*i)]);
    }
    // event tuples of all cells; entries must be pairwise distinct
    let mut event_tuple = BTreeMap::new();
    for (cell, dim) in &x.dims {
        let mut tuple = Vec::new();
        for i in 1..=*dim {
            let a: BTreeSet<usize> = (1..=*dim).filter(|j| *j != i).collect();
            let edge = x.face(cell, &a, 0).unwrap();
            tuple.push(event_of_edge[&edge]);
        }
        for i in 0..tuple.len() {
            for j in i + 1..tuple.len() {
                if tuple[i] == tuple[j] {
                    return Err(Box::new(InconsistencyWitness {
                        cell: cell.clone(),
                        chain: Vec::new(),
                    }));
                }
            }
        }
        event_tuple.insert(cell.clone(), tuple);
    }
    Ok(UniversalEvents {
        event_of_edge,
        event_tuple,
        num_events: reps.len(),
    })
}

/// The label of a cell: its event tuple as a linear pomset, ordered by
/// tuple position, with events labeled through the labeling.
pub fn cell_label(
    x: &PrecubicalSet,
    events: &UniversalEvents,
    labeling: &Labeling,
    cell: &str,
) -> LinearPomset {
    let tuple = &events.event_tuple[cell];
    let labels = &labeling.cell_tuples[cell];
    let _ = x;
    LinearPomset {
        elements: tuple.iter().map(|e| format!("e{e}")).collect(),
        labels: tuple
            .iter()
            .zip(labels.iter())
            .map(|(e, l)| (format!("e{e}"), l.clone()))
            .collect(),
    }
}
