mod common;

use hda_core::fixtures::*;
use hda_core::ipomset::*;

#[test]
fn event_order_need_not_be_a_partial_order() {
    // a<b with b⋖c and c⋖a: valid despite the event-order "cycle" through
    // the precedence edge, since each antichain restriction is linear
    let p = order_not_order();
    assert_eq!(p.canonical_order(), ["c", "a", "b"].map(String::from));
}

#[test]
fn rejects_cycles_totality_and_bad_interfaces() {
    assert!(matches!(
        Ipomset::build(&[("a", "a", false, false)], &[("a", "a")], &[]),
        Err(IpomsetError::NotIrreflexive(_))
    ));
    assert!(matches!(
        Ipomset::build(
            &[("a", "a", false, false), ("b", "b", false, false)],
            &[],
            &[]
        ),
        Err(IpomsetError::NotTotal(_, _))
    ));
    // a source that is not minimal
    assert!(matches!(
        Ipomset::build(
            &[("a", "a", false, false), ("b", "b", true, false)],
            &[("a", "b")],
            &[]
        ),
        Err(IpomsetError::BadInterface(_))
    ));
    assert!(matches!(
        Ipomset::build(&[("a", "a", false, false)], &[("a", "b")], &[]),
        Err(IpomsetError::UnknownElement(_))
    ));
}

#[test]
fn gluing_composes_interfaces() {
    let (r, _) = glue_with_witness(&glue_left(), &glue_right()).unwrap();
    assert_eq!(r.len(), 4);
    // b<c<d with a concurrent to all three
    let expect = Ipomset::build(
        &[
            ("a", "a", false, false),
            ("b", "b", false, false),
            ("c", "c", false, false),
            ("d", "d", false, false),
        ],
        &[("b", "c"), ("c", "d")],
        &[("a", "b"), ("a", "c"), ("a", "d")],
    )
    .unwrap();
    assert!(r.isomorphic(&expect));
    assert!(r.sources.is_empty() && r.targets.is_empty());
}

#[test]
fn gluing_requires_matching_interfaces() {
    let p = Ipomset::build(&[("a", "a", false, true)], &[], &[]).unwrap();
    let q = Ipomset::build(&[("b", "b", true, false)], &[], &[]).unwrap();
    assert!(matches!(glue(&p, &q), Err(IpomsetError::InterfaceMismatch)));
}

#[test]
fn parallel_of_chains_is_two_plus_two() {
    let ab = Ipomset::build(
        &[("a", "a", false, false), ("b", "b", false, false)],
        &[("a", "b")],
        &[],
    )
    .unwrap();
    let cd = Ipomset::build(
        &[("c", "c", false, false), ("d", "d", false, false)],
        &[("c", "d")],
        &[],
    )
    .unwrap();
    let r = parallel(&ab, &cd);
    assert!(!r.is_interval());
    // note the non-commutative event order: left operand below right
    let expect = Ipomset::build(
        &[
            ("a", "a", false, false),
            ("b", "b", false, false),
            ("c", "c", false, false),
            ("d", "d", false, false),
        ],
        &[("a", "b"), ("c", "d")],
        &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .unwrap();
    assert!(r.isomorphic(&expect));
}

#[test]
fn interval_recognition() {
    assert!(n_shape().is_interval());
    assert!(!two_plus_two().is_interval());
    assert!(a_cd_pomset().is_interval());
    assert!(loop_second_pomset().is_interval());
    assert!(two_plus_two().antichain_chain().is_none());
}

#[test]
fn n_shape_decomposition_reglues() {
    let p = n_shape();
    let pieces = p.decompose_interval().unwrap();
    assert_eq!(pieces.len(), 3);
    for piece in &pieces {
        assert!(piece.is_discrete());
    }
    let mut acc = pieces[0].clone();
    for piece in &pieces[1..] {
        acc = glue(&acc, piece).unwrap();
    }
    assert!(acc.isomorphic(&p));
}

#[test]
fn discrete_elementary_chain_has_one_move_per_step() {
    // 3 elements, S={a}, T={b}: two starters then two terminators
    let p = Ipomset::build(
        &[("a", "a", true, false), ("b", "b", false, true), ("c", "c", false, false)],
        &[],
        &[("a", "b"), ("b", "c")],
    )
    .unwrap();
    let chain = p.elementary_chain().unwrap();
    assert_eq!(chain.len(), 4);
    let mut acc = chain[0].clone();
    for piece in &chain[1..] {
        acc = glue(&acc, piece).unwrap();
    }
    assert!(acc.isomorphic(&p));
}

#[test]
fn subsumption_finds_smoothing_witness() {
    let seq = Ipomset::build(
        &[("a", "a", false, false), ("b", "b", false, false)],
        &[("a", "b")],
        &[("a", "b")],
    )
    .unwrap();
    let par = Ipomset::build(
        &[("a", "a", false, false), ("b", "b", false, false)],
        &[],
        &[("a", "b")],
    )
    .unwrap();
    assert!(subsumes(&seq, &par).is_some());
    assert!(subsumes(&par, &seq).is_none());
    assert!(subsumes(&par, &par).is_some());
}

#[test]
fn canonical_form_separates_and_identifies() {
    let p = n_shape();
    let renamed = Ipomset::build(
        &[
            ("x", "a", false, false),
            ("y", "b", false, false),
            ("z", "c", false, false),
            ("w", "d", false, false),
        ],
        &[("x", "y"), ("z", "y"), ("z", "w")],
        &[("z", "x"), ("w", "x"), ("w", "y")],
    )
    .unwrap();
    assert!(p.isomorphic(&renamed));
    assert!(!p.isomorphic(&two_plus_two()));
    assert!(p.isomorphic(&p.canonical_form().to_ipomset()));
}

#[test]
fn identity_laws_for_gluing() {
    let mut r = common::rng(11);
    for _ in 0..30 {
        let p = common::random_interval_ipomset(&mut r, 5, true);
        let ids = Ipomset::identity(&p.source_interface());
        let idt = Ipomset::identity(&p.target_interface());
        assert!(glue(&ids, &p).unwrap().isomorphic(&p));
        assert!(glue(&p, &idt).unwrap().isomorphic(&p));
    }
}
