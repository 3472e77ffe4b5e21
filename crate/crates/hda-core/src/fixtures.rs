//! Shared example ipomsets, precubical sets and HDAs used by the test
//! suites and reachable from the CLI docs.  Cell naming follows the value
//! words of standard cubes where possible.

use std::collections::{BTreeMap, BTreeSet};

use crate::geometry::{rat, Segment};
use crate::hda::Hda;
use crate::ipomset::Ipomset;
use crate::precubical::{validate_precubical, CellId, PrecubicalSet, RawPrecubical};

fn build_pc(cells: &[(&str, usize)], faces: &[(&str, usize, u8, &str)]) -> PrecubicalSet {
    validate_precubical(&RawPrecubical {
        cells: cells.iter().map(|(c, d)| (c.to_string(), *d)).collect(),
        faces: faces
            .iter()
            .map(|(c, i, nu, f)| (c.to_string(), *i, *nu, f.to_string()))
            .collect(),
    })
    .expect("fixture precubical set is valid")
}

fn build_hda(
    cells: &[(&str, usize)],
    faces: &[(&str, usize, u8, &str)],
    labels: &[(&str, &str)],
    initial: &[&str],
    accepting: &[&str],
) -> Hda {
    let pc = build_pc(cells, faces);
    let labels: BTreeMap<CellId, String> = labels
        .iter()
        .map(|(e, l)| (e.to_string(), l.to_string()))
        .collect();
    Hda::new(
        pc,
        &labels,
        initial.iter().map(|c| c.to_string()).collect::<BTreeSet<_>>(),
        accepting.iter().map(|c| c.to_string()).collect(),
    )
    .expect("fixture HDA is valid")
}

/// a concurrent with c<d; the event order puts a above the c,d row.
pub fn a_cd_pomset() -> Ipomset {
    Ipomset::build(
        &[("a", "a", false, false), ("c", "c", false, false), ("d", "d", false, false)],
        &[("c", "d")],
        &[("a", "c"), ("a", "d")],
    )
    .unwrap()
}

/// The interval "N": a<b, c<b, c<d, with c⋖a, d⋖a, d⋖b.
pub fn n_shape() -> Ipomset {
    Ipomset::build(
        &[
            ("a", "a", false, false),
            ("b", "b", false, false),
            ("c", "c", false, false),
            ("d", "d", false, false),
        ],
        &[("a", "b"), ("c", "b"), ("c", "d")],
        &[("c", "a"), ("d", "a"), ("d", "b")],
    )
    .unwrap()
}

/// The 2+2: a<b and c<d only; not an interval order.
pub fn two_plus_two() -> Ipomset {
    Ipomset::build(
        &[
            ("a", "a", false, false),
            ("b", "b", false, false),
            ("c", "c", false, false),
            ("d", "d", false, false),
        ],
        &[("a", "b"), ("c", "d")],
        &[("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")],
    )
    .unwrap()
}

/// Left gluing operand: {a,b,c}, b<c, a above, T = {a}.
pub fn glue_left() -> Ipomset {
    Ipomset::build(
        &[("a", "a", false, true), ("b", "b", false, false), ("c", "c", false, false)],
        &[("b", "c")],
        &[("a", "b"), ("a", "c")],
    )
    .unwrap()
}

/// Right gluing operand: {a,d} discrete, S = {a}.
pub fn glue_right() -> Ipomset {
    Ipomset::build(
        &[("a", "a", true, false), ("d", "d", false, false)],
        &[],
        &[("a", "d")],
    )
    .unwrap()
}

/// The two generators of L(□^{a<b} ⊗ □^{c<d}): the interval
/// strengthenings of (a<b) ∥ (c<d).
pub fn para_generators() -> (Ipomset, Ipomset) {
    let elems = [
        ("a", "a", false, false),
        ("b", "b", false, false),
        ("c", "c", false, false),
        ("d", "d", false, false),
    ];
    let ev = [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")];
    let g1 = Ipomset::build(&elems, &[("a", "b"), ("c", "d"), ("c", "b")], &ev).unwrap();
    let g2 = Ipomset::build(&elems, &[("a", "b"), ("c", "d"), ("a", "d")], &ev).unwrap();
    (g1, g2)
}

/// The linear pomset a<b<a.
pub fn loop_first_pomset() -> Ipomset {
    Ipomset::build(
        &[("a1", "a", false, false), ("b1", "b", false, false), ("a2", "a", false, false)],
        &[("a1", "b1"), ("b1", "a2")],
        &[],
    )
    .unwrap()
}

/// The 7-element pomset produced by running the loop squares z, w, x, y.
pub fn loop_second_pomset() -> Ipomset {
    Ipomset::build(
        &[
            ("a1", "a", false, false),
            ("b1", "b", false, false),
            ("c", "c", false, false),
            ("a2", "a", false, false),
            ("d", "d", false, false),
            ("b2", "b", false, false),
            ("a3", "a", false, false),
        ],
        &[
            ("a1", "b1"),
            ("a1", "c"),
            ("b1", "a2"),
            ("b1", "d"),
            ("c", "d"),
            ("c", "b2"),
            ("a2", "b2"),
            ("d", "a3"),
            ("b2", "a3"),
        ],
        &[("b1", "c"), ("a2", "c"), ("a2", "d"), ("b2", "d")],
    )
    .unwrap()
}

/// {a,b,c} with a<b, b⋖c and c⋖a: the event order is no partial order,
/// but both restrictions to antichains are linear.
pub fn order_not_order() -> Ipomset {
    Ipomset::build(
        &[("a", "a", false, false), ("b", "b", false, false), ("c", "c", false, false)],
        &[("a", "b")],
        &[("b", "c"), ("c", "a")],
    )
    .unwrap()
}

const SQUARE_CELLS: [(&str, usize); 9] = [
    ("00", 0),
    ("10", 0),
    ("01", 0),
    ("11", 0),
    ("*0", 1),
    ("*1", 1),
    ("0*", 1),
    ("1*", 1),
    ("**", 2),
];

const SQUARE_FACES: [(&str, usize, u8, &str); 12] = [
    ("*0", 1, 0, "00"),
    ("*0", 1, 1, "10"),
    ("*1", 1, 0, "01"),
    ("*1", 1, 1, "11"),
    ("0*", 1, 0, "00"),
    ("0*", 1, 1, "01"),
    ("1*", 1, 0, "10"),
    ("1*", 1, 1, "11"),
    ("**", 1, 0, "0*"),
    ("**", 1, 1, "1*"),
    ("**", 2, 0, "*0"),
    ("**", 2, 1, "*1"),
];

const SQUARE_LABELS: [(&str, &str); 4] = [("*0", "a"), ("*1", "a"), ("0*", "b"), ("1*", "b")];

/// One filled square: a and b concurrent; two universal events.
pub fn filled_square_hda() -> Hda {
    build_hda(&SQUARE_CELLS, &SQUARE_FACES, &SQUARE_LABELS, &["00"], &["11"])
}

/// The same boundary without the square: a.b + b.a; four universal events.
pub fn hollow_square_hda() -> Hda {
    build_hda(
        &SQUARE_CELLS[..8],
        &SQUARE_FACES[..8],
        &SQUARE_LABELS,
        &["00"],
        &["11"],
    )
}

/// Three squares x, y, z in a row whose left vertical edge v0 is identified
/// with the bottom edge of z; a valid precubical set that admits no event
/// identification.
pub fn self_linked_pc() -> PrecubicalSet {
    build_pc(
        &[
            ("p00", 0),
            ("p01", 0),
            ("p10", 0),
            ("p11", 0),
            ("p21", 0),
            ("p31", 0),
            ("v0", 1),
            ("v1", 1),
            ("v2", 1),
            ("v3", 1),
            ("h0", 1),
            ("h1", 1),
            ("H0", 1),
            ("H1", 1),
            ("H2", 1),
            ("x", 2),
            ("y", 2),
            ("z", 2),
        ],
        &[
            ("v0", 1, 0, "p00"),
            ("v0", 1, 1, "p01"),
            ("v1", 1, 0, "p10"),
            ("v1", 1, 1, "p11"),
            ("v2", 1, 0, "p00"),
            ("v2", 1, 1, "p21"),
            ("v3", 1, 0, "p01"),
            ("v3", 1, 1, "p31"),
            ("h0", 1, 0, "p00"),
            ("h0", 1, 1, "p10"),
            ("h1", 1, 0, "p10"),
            ("h1", 1, 1, "p00"),
            ("H0", 1, 0, "p01"),
            ("H0", 1, 1, "p11"),
            ("H1", 1, 0, "p11"),
            ("H1", 1, 1, "p21"),
            ("H2", 1, 0, "p21"),
            ("H2", 1, 1, "p31"),
            ("x", 1, 0, "v0"),
            ("x", 1, 1, "v1"),
            ("x", 2, 0, "h0"),
            ("x", 2, 1, "H0"),
            ("y", 1, 0, "v1"),
            ("y", 1, 1, "v2"),
            ("y", 2, 0, "h1"),
            ("y", 2, 1, "H1"),
            ("z", 1, 0, "v2"),
            ("z", 1, 1, "v3"),
            ("z", 2, 0, "v0"),
            ("z", 2, 1, "H2"),
        ],
    )
}

/// Two filled squares executing a concurrently with c.d.  Direction 1 is
/// the vertical a axis, so both square tuples start with a.
pub fn hda_a_cd() -> Hda {
    build_hda(
        &[
            ("p00", 0),
            ("p10", 0),
            ("p20", 0),
            ("p01", 0),
            ("p11", 0),
            ("p21", 0),
            ("c0", 1),
            ("c1", 1),
            ("d0", 1),
            ("d1", 1),
            ("va0", 1),
            ("va1", 1),
            ("va2", 1),
            ("s1", 2),
            ("s2", 2),
        ],
        &[
            ("c0", 1, 0, "p00"),
            ("c0", 1, 1, "p10"),
            ("c1", 1, 0, "p01"),
            ("c1", 1, 1, "p11"),
            ("d0", 1, 0, "p10"),
            ("d0", 1, 1, "p20"),
            ("d1", 1, 0, "p11"),
            ("d1", 1, 1, "p21"),
            ("va0", 1, 0, "p00"),
            ("va0", 1, 1, "p01"),
            ("va1", 1, 0, "p10"),
            ("va1", 1, 1, "p11"),
            ("va2", 1, 0, "p20"),
            ("va2", 1, 1, "p21"),
            ("s1", 1, 0, "c0"),
            ("s1", 1, 1, "c1"),
            ("s1", 2, 0, "va0"),
            ("s1", 2, 1, "va1"),
            ("s2", 1, 0, "d0"),
            ("s2", 1, 1, "d1"),
            ("s2", 2, 0, "va1"),
            ("s2", 2, 1, "va2"),
        ],
        &[
            ("c0", "c"),
            ("c1", "c"),
            ("d0", "d"),
            ("d1", "d"),
            ("va0", "a"),
            ("va1", "a"),
            ("va2", "a"),
        ],
        &["p00"],
        &["p21"],
    )
}

/// Four squares x, y, z, w arranged in a staircase with the bottom-left and
/// top-right horizontal edges identified, giving a two-dimensional loop.
/// Direction 1 is horizontal; verticals of x, y carry `vd`, of z, w `vc`.
fn loop_hda_with(vd: &str, vc: &str) -> Hda {
    build_hda(
        &[
            ("p00", 0),
            ("p10", 0),
            ("p20", 0),
            ("p01", 0),
            ("p11", 0),
            ("p21", 0),
            ("p31", 0),
            ("p12", 0),
            ("ha0", 1),
            ("ha1", 1),
            ("ha2", 1),
            ("hb0", 1),
            ("hb1", 1),
            ("hb2", 1),
            ("vd0", 1),
            ("vd1", 1),
            ("vd2", 1),
            ("vc1", 1),
            ("vc2", 1),
            ("vc3", 1),
            ("x", 2),
            ("y", 2),
            ("z", 2),
            ("w", 2),
        ],
        &[
            ("ha0", 1, 0, "p00"),
            ("ha0", 1, 1, "p10"),
            ("ha1", 1, 0, "p01"),
            ("ha1", 1, 1, "p11"),
            ("ha2", 1, 0, "p21"),
            ("ha2", 1, 1, "p31"),
            ("hb0", 1, 0, "p10"),
            ("hb0", 1, 1, "p20"),
            ("hb1", 1, 0, "p11"),
            ("hb1", 1, 1, "p21"),
            ("hb2", 1, 0, "p12"),
            ("hb2", 1, 1, "p00"),
            ("vd0", 1, 0, "p00"),
            ("vd0", 1, 1, "p01"),
            ("vd1", 1, 0, "p10"),
            ("vd1", 1, 1, "p11"),
            ("vd2", 1, 0, "p20"),
            ("vd2", 1, 1, "p21"),
            ("vc1", 1, 0, "p11"),
            ("vc1", 1, 1, "p12"),
            ("vc2", 1, 0, "p21"),
            ("vc2", 1, 1, "p00"),
            ("vc3", 1, 0, "p31"),
            ("vc3", 1, 1, "p10"),
            ("x", 1, 0, "vd0"),
            ("x", 1, 1, "vd1"),
            ("x", 2, 0, "ha0"),
            ("x", 2, 1, "ha1"),
            ("y", 1, 0, "vd1"),
            ("y", 1, 1, "vd2"),
            ("y", 2, 0, "hb0"),
            ("y", 2, 1, "hb1"),
            ("z", 1, 0, "vc1"),
            ("z", 1, 1, "vc2"),
            ("z", 2, 0, "hb1"),
            ("z", 2, 1, "hb2"),
            ("w", 1, 0, "vc2"),
            ("w", 1, 1, "vc3"),
            ("w", 2, 0, "ha2"),
            ("w", 2, 1, "ha0"),
        ],
        &[
            ("ha0", "a"),
            ("ha1", "a"),
            ("ha2", "a"),
            ("hb0", "b"),
            ("hb1", "b"),
            ("hb2", "b"),
            ("vd0", vd),
            ("vd1", vd),
            ("vd2", vd),
            ("vc1", vc),
            ("vc2", vc),
            ("vc3", vc),
        ],
        &["p01"],
        &["p31"],
    )
}

/// Loop HDA whose language contains a<b<a and the 7-element pomset from
/// running z, w, x, y.
pub fn hda_loop() -> Hda {
    loop_hda_with("d", "c")
}

/// The loop variant carrying c on the x, y verticals and d on z, w.
pub fn dpath_loop_hda() -> Hda {
    loop_hda_with("c", "d")
}

/// The wrap-around d-path through the loop: x, y, z, w, x, y, hitting the
/// i-th edge crossing at time i/6 and ending inside the right c edge.
pub fn dpath_loop_path() -> Vec<Segment> {
    let seg = |cell: &str, from: [(i64, i64); 2], to: [(i64, i64); 2]| Segment {
        cell: cell.to_string(),
        waypoints: vec![
            vec![rat(from[0].0, from[0].1), rat(from[1].0, from[1].1)],
            vec![rat(to[0].0, to[0].1), rat(to[1].0, to[1].1)],
        ],
    };
    vec![
        seg("x", [(1, 5), (2, 5)], [(1, 1), (1, 2)]),
        seg("y", [(0, 1), (1, 2)], [(1, 2), (1, 1)]),
        seg("z", [(1, 2), (0, 1)], [(1, 1), (1, 2)]),
        seg("w", [(0, 1), (1, 2)], [(1, 2), (1, 1)]),
        seg("x", [(1, 2), (0, 1)], [(1, 1), (1, 2)]),
        seg("y", [(0, 1), (1, 2)], [(1, 1), (3, 5)]),
    ]
}

/// A vertex, an a edge, a cube on b, d, c, and a square on b, e hanging off
/// the cube's far upper edge; hosts the six-cell mixed-step track below.
pub fn track_complex() -> Hda {
    let mut cells: Vec<(String, usize)> = vec![("v".into(), 0), ("ea".into(), 1)];
    let mut faces: Vec<(String, usize, u8, String)> = vec![
        ("ea".into(), 1, 0, "v".into()),
        ("ea".into(), 1, 1, "k000".into()),
    ];
    // the cube as a standard 3-cube with ids prefixed k
    let mut words = vec![String::new()];
    for _ in 0..3 {
        words = words
            .iter()
            .flat_map(|w| ["0", "*", "1"].iter().map(move |c| format!("{w}{c}")))
            .collect();
    }
    for w in &words {
        let dim = w.chars().filter(|c| *c == '*').count();
        cells.push((format!("k{w}"), dim));
        let mut i = 0;
        for (pos, c) in w.chars().enumerate() {
            if c == '*' {
                i += 1;
                for nu in 0..2u8 {
                    let mut fw: Vec<char> = w.chars().collect();
                    fw[pos] = if nu == 0 { '0' } else { '1' };
                    let fw: String = fw.into_iter().collect();
                    faces.push((format!("k{w}"), i, nu, format!("k{fw}")));
                }
            }
        }
    }
    for (id, dim) in [("q", 2), ("qe0", 1), ("qe1", 1), ("qb1", 1), ("q10", 0), ("q11", 0)] {
        cells.push((id.into(), dim));
    }
    for (c, i, nu, f) in [
        ("q", 1, 0, "qe0"),
        ("q", 1, 1, "qe1"),
        ("q", 2, 0, "k*11"),
        ("q", 2, 1, "qb1"),
        ("qe0", 1, 0, "k011"),
        ("qe0", 1, 1, "q10"),
        ("qe1", 1, 0, "k111"),
        ("qe1", 1, 1, "q11"),
        ("qb1", 1, 0, "q10"),
        ("qb1", 1, 1, "q11"),
    ] {
        faces.push((c.into(), i, nu as u8, f.into()));
    }
    let mut labels: BTreeMap<CellId, String> = BTreeMap::new();
    labels.insert("ea".into(), "a".into());
    labels.insert("qe0".into(), "e".into());
    labels.insert("qe1".into(), "e".into());
    labels.insert("qb1".into(), "b".into());
    for w in &words {
        if w.chars().filter(|c| *c == '*').count() == 1 {
            let pos = w.chars().position(|c| c == '*').unwrap();
            let l = ["b", "d", "c"][pos];
            labels.insert(format!("k{w}"), l.to_string());
        }
    }
    let pc = validate_precubical(&RawPrecubical { cells, faces })
        .expect("track complex is a valid precubical set");
    Hda::new(
        pc,
        &labels,
        BTreeSet::from(["v".to_string()]),
        BTreeSet::from(["q11".to_string()]),
    )
    .expect("track complex is a valid HDA")
}

/// The six-cell track through `track_complex`: vertex, edge, vertex, cube,
/// far edge, square, with steps Lower, Upper, Lower(3), Upper(2), Lower.
pub fn track_complex_track() -> Vec<CellId> {
    ["v", "ea", "k000", "k***", "k*11", "q"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}
