mod common;

use hda_core::fixtures::*;
use hda_core::geometry::validate_dpath;
use hda_core::io::*;

#[test]
fn ipomset_round_trip() {
    for p in [
        a_cd_pomset(),
        n_shape(),
        two_plus_two(),
        glue_left(),
        glue_right(),
        loop_second_pomset(),
        order_not_order(),
    ] {
        let text = serialize_ipomset(&p);
        let q = parse_ipomset(&text).unwrap();
        assert_eq!(p, q);
    }
    let mut r = common::rng(41);
    for _ in 0..25 {
        let p = common::random_interval_ipomset(&mut r, 6, true);
        assert_eq!(parse_ipomset(&serialize_ipomset(&p)).unwrap(), p);
    }
}

#[test]
fn ipomset_parse_errors() {
    assert!(matches!(
        parse_ipomset("elem a"),
        Err(ParseError::Syntax(1, _))
    ));
    assert!(matches!(
        parse_ipomset("elem a a\nprec a b"),
        Err(ParseError::Ipomset(_))
    ));
    assert!(matches!(
        parse_ipomset("elem a a flag"),
        Err(ParseError::Syntax(1, _))
    ));
    // comments and blank lines are ignored, with correct line numbers
    assert!(matches!(
        parse_ipomset("# header\n\nbogus line"),
        Err(ParseError::Syntax(3, _))
    ));
}

#[test]
fn hda_round_trip() {
    for x in [
        hda_a_cd(),
        hda_loop(),
        dpath_loop_hda(),
        filled_square_hda(),
        hollow_square_hda(),
        track_complex(),
    ] {
        let text = serialize_hda(&x);
        let y = parse_hda(&text).unwrap();
        assert_eq!(x, y);
    }
}

#[test]
fn hda_parse_errors() {
    assert!(matches!(
        parse_hda("cell v x"),
        Err(ParseError::Syntax(1, _))
    ));
    assert!(matches!(
        parse_hda("cell e 1\nface e 1 2 e"),
        Err(ParseError::Syntax(2, _))
    ));
    // dangling faces are caught by validation
    assert!(matches!(
        parse_hda("cell e 1\nface e 1 0 v\nface e 1 1 v\nlabel e a"),
        Err(ParseError::Precubical(_))
    ));
    // unlabeled edge
    assert!(matches!(
        parse_hda("cell v 0\ncell e 1\nface e 1 0 v\nface e 1 1 v"),
        Err(ParseError::Hda(_))
    ));
}

#[test]
fn dpath_round_trip() {
    let x = dpath_loop_hda();
    let segs = dpath_loop_path();
    let text = serialize_dpath(&segs);
    let parsed = parse_dpath(&text).unwrap();
    assert_eq!(
        validate_dpath(&x, &parsed).unwrap(),
        validate_dpath(&x, &segs).unwrap()
    );
    assert!(matches!(
        parse_dpath("1/2 1/3"),
        Err(ParseError::Syntax(1, _))
    ));
    assert!(matches!(
        parse_dpath("seg x\n1/2 nope"),
        Err(ParseError::Syntax(2, _))
    ));
}

#[test]
fn track_cells_ignore_comments() {
    assert_eq!(
        parse_track_cells("v ea k000 # tail comment"),
        ["v", "ea", "k000"].map(String::from).to_vec()
    );
}

#[test]
fn dot_export_is_deterministic_and_complete() {
    let x = hda_a_cd();
    let dot = export_dot(&x);
    assert_eq!(dot, export_dot(&x));
    assert!(dot.starts_with("digraph hda {"));
    assert!(dot.contains("\"p00\" [shape=diamond]"));
    assert!(dot.contains("\"p21\" [peripheries=2]"));
    assert_eq!(dot.matches(" -> ").count(), x.pc.cells_of_dim(1).len());
    assert!(dot.contains("// square s1 (a,c)"));
    assert!(dot.contains("// square s2 (a,d)"));
}
