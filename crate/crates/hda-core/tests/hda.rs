use std::collections::{BTreeMap, BTreeSet};

use hda_core::fixtures::*;
use hda_core::hda::*;
use hda_core::ipomset::{subsumes, Ipomset};

fn single(label: &str) -> Ipomset {
    Ipomset::build(&[(label, label, false, false)], &[], &[]).unwrap()
}

#[test]
fn track_object_of_a_cd() {
    let t = track_object(&a_cd_pomset());
    assert_eq!(t.elems, ["a", "c", "d"].map(String::from));
    assert_eq!(t.hda.pc.cells_of_dim(0).len(), 6);
    assert_eq!(t.hda.pc.cells_of_dim(1).len(), 7);
    assert_eq!(t.hda.pc.cells_of_dim(2).len(), 2);
    assert_eq!(t.initial_cell(), "000");
    assert_eq!(t.accepting_cell(), "111");
    // the inadmissible states: d running or done before c finishes
    assert!(!t.hda.pc.dims.contains_key("00*"));
    assert!(!t.hda.pc.dims.contains_key("0*1"));
}

#[test]
fn track_object_interfaces_follow_the_ipomset() {
    let t = track_object(&glue_left());
    assert_eq!(t.elems, ["a", "b", "c"].map(String::from));
    assert_eq!(t.initial_cell(), "000");
    // a is in the target interface: it is still running on acceptance
    assert_eq!(t.accepting_cell(), "*11");
    assert_eq!(t.value("*11", "a"), '*');
    assert_eq!(t.star_set("*11"), vec!["a"]);
    let r = track_object(&glue_right());
    assert_eq!(r.elems, ["a", "d"].map(String::from));
    assert_eq!(r.initial_cell(), "*0");
    assert_eq!(r.accepting_cell(), "11");
}

#[test]
fn subsumption_induces_a_track_object_embedding() {
    let seq = Ipomset::build(
        &[("a", "a", false, false), ("b", "b", false, false)],
        &[("a", "b")],
        &[],
    )
    .unwrap();
    let par = Ipomset::build(
        &[("a", "a", false, false), ("b", "b", false, false)],
        &[],
        &[("a", "b")],
    )
    .unwrap();
    let w = subsumes(&seq, &par).unwrap();
    let sub = track_object(&seq);
    let sup = track_object(&par);
    assert_eq!(sub.hda.pc.dims.len(), 5);
    assert_eq!(sup.hda.pc.dims.len(), 9);
    let m = subsumption_to_map(&sub, &sup, &w).unwrap();
    let images: BTreeSet<&String> = m.cell_map.values().collect();
    assert_eq!(images.len(), 5, "embedding must be injective");
}

#[test]
fn pushout_embeddings_cover_the_composite() {
    let q = glue_left();
    let r = glue_right();
    let (comp, j0, j1) = pushout_embeddings(&q, &r).unwrap();
    let tq = track_object(&q);
    let tr = track_object(&r);
    // seam: end of the left part = start of the right part
    assert_eq!(
        j0.cell_map[&tq.accepting_cell()],
        j1.cell_map[&tr.initial_cell()]
    );
    // every cell of the composite lies in one of the two images
    let covered: BTreeSet<&String> = j0.cell_map.values().chain(j1.cell_map.values()).collect();
    for c in comp.hda.pc.dims.keys() {
        assert!(covered.contains(c), "cell {c} not covered");
    }
    // overlap is exactly the seam fiber: cells constant off the interface
    let seam = j0.cell_map[&tq.accepting_cell()].clone();
    let im0: BTreeSet<&String> = j0.cell_map.values().collect();
    let im1: BTreeSet<&String> = j1.cell_map.values().collect();
    let overlap: Vec<&&String> = im0.intersection(&im1).collect();
    assert!(overlap.contains(&&&seam));
}

#[test]
fn morphism_search_respects_structure() {
    let t = track_object(&a_cd_pomset());
    let x = hda_a_cd();
    let m = find_hda_map(&t.hda, &x, 1_000_000).unwrap().unwrap();
    validate_map(&m.cell_map, &t.hda, &x).unwrap();
    assert_eq!(m.cell_map["000"], "p00");
    assert_eq!(m.cell_map["111"], "p21");

    // the hollow square embeds into the filled one, not conversely
    let hollow = hollow_square_hda();
    let filled = filled_square_hda();
    assert!(find_hda_map(&hollow, &filled, 1_000_000).unwrap().is_some());
    assert!(find_hda_map(&filled, &hollow, 1_000_000).unwrap().is_none());

    assert!(matches!(
        find_hda_map(&t.hda, &x, 3),
        Err(HdaError::Budget)
    ));
}

#[test]
fn map_validation_detects_breakage() {
    let hollow = hollow_square_hda();
    let filled = filled_square_hda();
    let identity: BTreeMap<String, String> = hollow
        .pc
        .dims
        .keys()
        .map(|c| (c.clone(), c.clone()))
        .collect();
    validate_map(&identity, &hollow, &filled).unwrap();
    let mut swapped = identity.clone();
    swapped.insert("*0".to_string(), "*1".to_string());
    assert!(matches!(
        validate_map(&swapped, &hollow, &filled),
        Err(HdaError::FaceNonCommuting { .. })
    ));
    // dropping a cell fails either at totality or at an incident face
    let mut partial = identity.clone();
    partial.remove("10");
    assert!(validate_map(&partial, &hollow, &filled).is_err());
}

#[test]
fn tensor_is_the_product_of_shapes() {
    let ta = track_object(&single("a")).hda;
    let tb = track_object(&single("b")).hda;
    let t = tensor(&ta, &tb);
    assert_eq!(t.pc.dims.len(), 9);
    let sq = t.pc.cells_of_dim(2);
    assert_eq!(sq.len(), 1);
    assert_eq!(t.labeling.cell_tuples[&sq[0]], vec!["a", "b"]);
    assert_eq!(t.initial, BTreeSet::from(["(0|0)".to_string()]));
    assert_eq!(t.accepting, BTreeSet::from(["(1|1)".to_string()]));
}

#[test]
fn coproduct_includes_both_summands() {
    let x = hda_a_cd();
    let y = hda_loop();
    let (u, ix, iy) = coproduct(&x, &y);
    assert_eq!(u.pc.dims.len(), x.pc.dims.len() + y.pc.dims.len());
    assert_eq!(u.initial.len(), 2);
    validate_map(&ix.cell_map, &x, &u).unwrap();
    validate_map(&iy.cell_map, &y, &u).unwrap();
}
