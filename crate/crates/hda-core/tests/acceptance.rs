//! End-to-end acceptance checks: one test per criterion, each printing a
//! single pass line (visible with --nocapture) and asserting its time bound.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;

use hda_core::bisim::{find_hd_bisimulation, is_open_map, verify_hd_bisimulation};
use hda_core::fixtures::*;
use hda_core::geometry::{
    dpath_label, interval_arrangement, path_through_pins, rat, track_to_center_path,
    validate_dpath, IntervalComponent, Rat,
};
use hda_core::hda::{coproduct, find_hda_map, tensor, track_object, validate_map, Hda};
use hda_core::ipomset::{glue, parallel, subsumes, Ipomset, LinearPomset};
use hda_core::language::{
    enumerate_language, interval_extensions, member, weak_closure, DEFAULT_BUDGET,
};
use hda_core::precubical::universal_events;
use hda_core::track::{enumerate_accepting_tracks, track_label};

fn finish(n: u32, bound_secs: u64, start: Instant, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(bound_secs),
        "criterion {n:02} exceeded its {bound_secs} s bound: {elapsed:?}"
    );
    println!("criterion {n:02}: pass — {what} ({} ms)", elapsed.as_millis());
}

fn glue_chain(pieces: &[Ipomset], iface: &LinearPomset) -> Ipomset {
    let mut acc = Ipomset::identity(iface);
    for p in pieces {
        acc = glue(&acc, p).unwrap();
    }
    acc
}

#[test]
fn criterion_01_universal_event_counts() {
    let t = Instant::now();
    let hollow = universal_events(&hollow_square_hda().pc).unwrap();
    let filled = universal_events(&filled_square_hda().pc).unwrap();
    assert_eq!(hollow.num_events, 4);
    assert_eq!(filled.num_events, 2);
    finish(1, 1, t, "hollow square has 4 universal events, filled square has 2");
}

#[test]
fn criterion_02_self_linked_rejection_with_witness() {
    let t = Instant::now();
    let pc = self_linked_pc();
    let err = universal_events(&pc).unwrap_err();
    // the chain connects the two lower faces of the offending square
    assert_eq!(pc.face1(&err.cell, 2, 0).unwrap(), *err.chain.first().unwrap());
    assert_eq!(pc.face1(&err.cell, 1, 0).unwrap(), *err.chain.last().unwrap());
    for w in err.chain.windows(2) {
        let linked = pc.cells_of_dim(2).iter().any(|sq| {
            (1..=2).any(|dir| {
                let lo = pc.face1(sq, dir, 0).unwrap();
                let hi = pc.face1(sq, dir, 1).unwrap();
                (lo == w[0] && hi == w[1]) || (lo == w[1] && hi == w[0])
            })
        });
        assert!(linked, "chain step {w:?} is not an edge identification");
    }
    finish(
        2,
        1,
        t,
        "self-linked complex rejected with an opposite-edge chain from d2^0 z to d1^0 z",
    );
}

#[test]
fn criterion_03_double_square_language() {
    let t = Instant::now();
    let lang = enumerate_language(&hda_a_cd(), 4, 12);
    assert!(!lang.truncated);
    assert_eq!(lang.canon.len(), 6);
    assert_eq!(lang.canon, weak_closure(&[a_cd_pomset()]).unwrap().canon);
    finish(3, 5, t, "a||(c<d) automaton has exactly the 6 expected canonical ipomsets");
}

#[test]
fn criterion_04_track_object_cell_counts() {
    let t = Instant::now();
    let n = track_object(&n_shape());
    assert_eq!(n.hda.pc.cells_of_dim(0).len(), 8);
    assert_eq!(n.hda.pc.cells_of_dim(1).len(), 10);
    assert_eq!(n.hda.pc.cells_of_dim(2).len(), 3);
    assert_eq!(n.hda.pc.dim(&n.initial_cell()), 0);
    assert_eq!(n.hda.pc.dim(&n.accepting_cell()), 0);
    assert_eq!(n.hda.initial, BTreeSet::from([n.initial_cell()]));
    assert_eq!(n.hda.accepting, BTreeSet::from([n.accepting_cell()]));
    let w = track_object(&two_plus_two());
    assert_eq!(w.hda.pc.cells_of_dim(0).len(), 9);
    assert_eq!(w.hda.pc.cells_of_dim(1).len(), 12);
    assert_eq!(w.hda.pc.cells_of_dim(2).len(), 4);
    finish(4, 1, t, "N-shape track object is (8,10,3), 2+2 track object is (9,12,4)");
}

#[test]
fn criterion_05_representability_on_samples() {
    let t = Instant::now();
    let mut r = common::rng(501);
    for _ in 0..50 {
        let p = common::random_interval_ipomset(&mut r, 6, true);
        let x = track_object(&p).hda;
        assert!(member(&p, &x, 10_000_000).unwrap());
        let lang = common::exact_language(&x, p.len());
        assert_eq!(lang.canon, weak_closure(&[p]).unwrap().canon);
    }
    finish(
        5,
        60,
        t,
        "50 random interval ipomsets: member(P, track object of P) and language = weak closure",
    );
}

#[test]
fn criterion_06_non_interval_membership_fails() {
    let t = Instant::now();
    let p = two_plus_two();
    let x = track_object(&p).hda;
    assert!(find_hda_map(&x, &x, DEFAULT_BUDGET).unwrap().is_some());
    assert!(!member(&p, &x, DEFAULT_BUDGET).unwrap());
    finish(
        6,
        1,
        t,
        "2+2 is not a member of its own track object although the identity map exists",
    );
}

#[test]
fn criterion_07_track_and_path_labels_agree() {
    let t = Instant::now();
    let fixtures: Vec<(&str, Hda, usize)> = vec![
        ("a||(c<d)", hda_a_cd(), 8),
        ("loop", hda_loop(), 8),
        ("loop variant", dpath_loop_hda(), 8),
        ("filled square", filled_square_hda(), 4),
        ("hollow square", hollow_square_hda(), 4),
        ("track complex", track_complex(), 12),
    ];
    let mut r = common::rng(701);
    let mut total_tracks = 0;
    for (name, x, bound) in &fixtures {
        let tracks = enumerate_accepting_tracks(x, *bound);
        assert!(!tracks.is_empty(), "{name}: no accepting tracks found");
        let mut labels = BTreeSet::new();
        for rho in &tracks {
            let tl = track_label(x, rho);
            let pl = dpath_label(x, &track_to_center_path(x, rho));
            assert!(pl.isomorphic(&tl), "{name}: center path label differs");
            labels.insert(tl.canonical_form());
        }
        total_tracks += tracks.len();
        // randomized piecewise-linear d-paths stay inside the track language
        for _ in 0..100 {
            let rho = &tracks[r.gen_range(0..tracks.len())];
            let pins: Vec<Rat> = (0..16).map(|_| rat(r.gen_range(1..5), 5)).collect();
            let path = path_through_pins(x, rho, &|k| pins[k % pins.len()].clone());
            let label = dpath_label(x, &path);
            assert!(
                labels.contains(&label.canonical_form()),
                "{name}: randomized d-path label escapes the track language"
            );
        }
    }
    finish(
        7,
        60,
        t,
        "center-path labels match track labels on all fixtures; 600 randomized d-paths stay inside",
    );
    let _ = total_tracks;
}

#[test]
fn criterion_08_wraparound_interval_arrangement() {
    let t = Instant::now();
    let x = dpath_loop_hda();
    let path = validate_dpath(&x, &dpath_loop_path()).unwrap();
    let arr = interval_arrangement(&x, &path);
    let ev = |edge: &str| x.events.event_of_edge[edge];
    let comp = |lo: Rat, lc: bool, hi: Rat, hc: bool| IntervalComponent {
        lo,
        lo_closed: lc,
        hi,
        hi_closed: hc,
    };
    // activity sets are open away from the global endpoints 0 and 1, so the
    // a component ending at 5/6 (where the path sits inside a c edge) is
    // open there
    assert_eq!(
        arr.components[&ev("ha0")],
        vec![
            comp(Rat::zero(), true, rat(1, 6), false),
            comp(rat(1, 2), false, rat(5, 6), false),
        ]
    );
    assert_eq!(
        arr.components[&ev("hb0")],
        vec![
            comp(rat(1, 6), false, rat(1, 2), false),
            comp(rat(5, 6), false, Rat::one(), false),
        ]
    );
    assert_eq!(
        arr.components[&ev("vd0")],
        vec![
            comp(Rat::zero(), true, rat(1, 3), false),
            comp(rat(2, 3), false, Rat::one(), true),
        ]
    );
    assert_eq!(
        arr.components[&ev("vc1")],
        vec![comp(rat(1, 3), false, rat(2, 3), false)]
    );
    finish(
        8,
        1,
        t,
        "wrap-around arrangement is bit-exact; the a component at 5/6 is open, see the ledger note",
    );
}

#[test]
fn criterion_09_union_language() {
    let t = Instant::now();
    let mut r = common::rng(901);
    let small = |r: &mut rand_chacha::ChaCha8Rng| loop {
        let p = common::random_interval_ipomset(r, 3, true);
        let x = track_object(&p).hda;
        if x.pc.cells_of_dim(2).len() <= 3 {
            return (p, x);
        }
    };
    for _ in 0..30 {
        let (p, x) = small(&mut r);
        let (q, y) = small(&mut r);
        let (u, _, _) = coproduct(&x, &y);
        let m = p.len().max(q.len());
        let mut both = common::exact_language(&x, m).canon;
        both.extend(common::exact_language(&y, m).canon);
        assert_eq!(common::exact_language(&u, m).canon, both);
    }
    finish(9, 60, t, "30 random coproducts: language of the sum is the union of languages");
}

#[test]
fn criterion_10_tensor_language() {
    let t = Instant::now();
    let ab = Ipomset::build(
        &[("u", "a", false, false), ("v", "b", false, false)],
        &[("u", "v")],
        &[],
    )
    .unwrap();
    let cd = Ipomset::build(
        &[("u", "c", false, false), ("v", "d", false, false)],
        &[("u", "v")],
        &[],
    )
    .unwrap();
    let x = tensor(&track_object(&ab).hda, &track_object(&cd).hda);
    let lang = common::exact_language(&x, 4);
    let (g1, g2) = para_generators();
    assert_eq!(lang.canon, weak_closure(&[g1, g2]).unwrap().canon);
    assert_eq!(lang.canon, interval_extensions(&parallel(&ab, &cd)).canon);
    let mut r = common::rng(1001);
    for _ in 0..20 {
        let p = common::random_interval_ipomset(&mut r, 2, false);
        let q = common::random_interval_ipomset(&mut r, 2, false);
        let xy = tensor(&track_object(&p).hda, &track_object(&q).hda);
        let lang = common::exact_language(&xy, p.len() + q.len());
        assert_eq!(lang.canon, interval_extensions(&parallel(&p, &q)).canon);
    }
    finish(
        10,
        120,
        t,
        "tensor languages are the interval extensions of the parallel composition",
    );
}

#[test]
fn criterion_11_loop_language() {
    let t = Instant::now();
    // the second generator has 7 elements, so the size bound is 7, not 5;
    // see the ledger note
    let lang = enumerate_language(&hda_loop(), 7, 16);
    assert!(lang.truncated, "the loop language is infinite");
    assert!(lang.canon.contains(&loop_first_pomset().canonical_form()));
    assert!(lang.canon.contains(&loop_second_pomset().canonical_form()));
    assert!(member(&loop_second_pomset(), &hda_loop(), DEFAULT_BUDGET).unwrap());
    finish(11, 10, t, "loop language contains a<b<a and the 7-element wrap-around pomset");
}

#[test]
fn criterion_12_bisimulation_preserves_languages() {
    let t = Instant::now();
    let filled = filled_square_hda();
    let hollow = hollow_square_hda();
    assert!(find_hd_bisimulation(&filled, &hollow).is_none());
    assert!(find_hd_bisimulation(&hollow, &filled).is_none());
    let mut r = common::rng(1201);
    for i in 0..20 {
        let p = common::random_interval_ipomset(&mut r, 3, true);
        let mut x = track_object(&p).hda;
        if i % 2 == 1 {
            let q = common::random_interval_ipomset(&mut r, 2, true);
            x = coproduct(&x, &track_object(&q).hda).0;
        }
        let y = common::rename_hda(&x, "y.");
        let b = find_hd_bisimulation(&x, &y).expect("renamed copy must be bisimilar");
        assert!(verify_hd_bisimulation(&x, &y, &b));
        // the renaming is an open map, so x <- x -> y is an open-map span
        let iso: BTreeMap<String, String> = x
            .pc
            .dims
            .keys()
            .map(|c| (c.clone(), format!("y.{c}")))
            .collect();
        let m = validate_map(&iso, &x, &y).unwrap();
        assert!(is_open_map(&m, &x, &y));
        let lx = enumerate_language(&x, 6, 14);
        let ly = enumerate_language(&y, 6, 14);
        assert_eq!(lx.canon, ly.canon);
        assert_eq!(lx.truncated, ly.truncated);
    }
    finish(
        12,
        60,
        t,
        "20 bisimilar pairs have equal bounded languages; filled vs hollow square has none",
    );
}

#[test]
fn criterion_13_gluing_laws_and_subsumption() {
    let t = Instant::now();
    let mut r = common::rng(1301);
    for _ in 0..100 {
        let p = common::random_interval_ipomset(&mut r, 6, true);
        assert!(glue(&Ipomset::identity(&p.source_interface()), &p)
            .unwrap()
            .isomorphic(&p));
        assert!(glue(&p, &Ipomset::identity(&p.target_interface()))
            .unwrap()
            .isomorphic(&p));
        let pieces = p.decompose_interval().unwrap();
        let m = pieces.len();
        let (i, j) = (r.gen_range(0..=m), r.gen_range(0..=m));
        let (i, j) = (i.min(j), i.max(j));
        let iface_i = if i == 0 { p.source_interface() } else { pieces[i - 1].target_interface() };
        let iface_j = if j == 0 { p.source_interface() } else { pieces[j - 1].target_interface() };
        let q1 = glue_chain(&pieces[..i], &p.source_interface());
        let q2 = glue_chain(&pieces[i..j], &iface_i);
        let q3 = glue_chain(&pieces[j..], &iface_j);
        let left = glue(&glue(&q1, &q2).unwrap(), &q3).unwrap();
        let right = glue(&q1, &glue(&q2, &q3).unwrap()).unwrap();
        assert_eq!(left.canonical_form(), right.canonical_form());
        assert_eq!(left.canonical_form(), p.canonical_form());
    }
    for _ in 0..50 {
        let p = common::random_interval_ipomset(&mut r, 6, true);
        let pieces = p.decompose_interval().unwrap();
        let i = r.gen_range(0..=pieces.len());
        let iface_i = if i == 0 { p.source_interface() } else { pieces[i - 1].target_interface() };
        let q1 = glue_chain(&pieces[..i], &p.source_interface());
        let q2 = glue_chain(&pieces[i..], &iface_i);
        let s1 = common::strengthen(&mut r, &q1).unwrap_or_else(|| q1.clone());
        let s2 = common::strengthen(&mut r, &q2).unwrap_or_else(|| q2.clone());
        let strong = glue(&s1, &s2).unwrap();
        let weak = glue(&q1, &q2).unwrap();
        assert!(
            subsumes(&strong, &weak).is_some(),
            "gluing must respect subsumption componentwise"
        );
    }
    finish(
        13,
        30,
        t,
        "gluing identity/associativity on 100 triples; subsumption compatibility on 50 pairs",
    );
}
