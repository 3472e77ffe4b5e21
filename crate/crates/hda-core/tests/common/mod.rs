//! Shared helpers for the integration tests: seeded randomness and
//! generators for interval ipomsets and derived HDAs.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use hda_core::hda::Hda;
use hda_core::ipomset::{validate_ipomset, Ipomset, RawIpomset};
use hda_core::language::{enumerate_language, LanguageSet};
use hda_core::precubical::{validate_precubical, RawPrecubical};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random interval ipomset from a random interval representation: element i
/// occupies [l_i, r_i] and precedes j iff r_i < l_j; the event order on
/// overlapping pairs follows element index.
pub fn random_interval_ipomset(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    with_interfaces: bool,
) -> Ipomset {
    let n = rng.gen_range(1..=max_n);
    let labels = ["a", "b", "c"];
    let ivs: Vec<(i32, i32)> = (0..n)
        .map(|_| {
            let l = rng.gen_range(0..5i32);
            (l, rng.gen_range(l..5i32 + 1))
        })
        .collect();
    let maxr = ivs.iter().map(|x| x.1).max().unwrap();
    let mut raw = RawIpomset::default();
    for (i, iv) in ivs.iter().enumerate() {
        let lab = labels[rng.gen_range(0..labels.len())];
        let src = with_interfaces && iv.0 == 0 && rng.gen_bool(0.5);
        let tgt = with_interfaces && iv.1 == maxr && rng.gen_bool(0.5);
        raw.elements
            .push((format!("e{i}"), lab.to_string(), src, tgt));
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if ivs[i].1 < ivs[j].0 {
                raw.precedence.push((format!("e{i}"), format!("e{j}")));
            } else if i < j && ivs[j].1 >= ivs[i].0 {
                raw.event_order.push((format!("e{i}"), format!("e{j}")));
            }
        }
    }
    validate_ipomset(&raw).expect("interval representation yields a valid ipomset")
}

/// A strictly more ordered variant of `p` (one incomparable pair forced),
/// or None if every strengthening breaks intervality or no pair is free.
pub fn strengthen(rng: &mut ChaCha8Rng, p: &Ipomset) -> Option<Ipomset> {
    let elems: Vec<String> = p.elements.iter().cloned().collect();
    let mut cands = Vec::new();
    for x in &elems {
        for y in &elems {
            if p.incomparable(x, y) && !p.sources.contains(y) && !p.targets.contains(x) {
                cands.push((x.clone(), y.clone()));
            }
        }
    }
    cands.shuffle(rng);
    for (x, y) in cands {
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
            precedence: p
                .precedence
                .iter()
                .cloned()
                .chain(std::iter::once((x.clone(), y.clone())))
                .collect(),
            event_order: p.event_order.iter().cloned().collect(),
        };
        if let Ok(q) = validate_ipomset(&raw) {
            if q.is_interval() {
                return Some(q);
            }
        }
    }
    None
}

/// Clone an HDA with every cell id prefixed; an isomorphic copy.
pub fn rename_hda(x: &Hda, prefix: &str) -> Hda {
    let mut raw = RawPrecubical::default();
    for (c, d) in &x.pc.dims {
        raw.cells.push((format!("{prefix}{c}"), *d));
        for i in 1..=*d {
            for nu in 0..2u8 {
                let f = x.pc.face1(c, i, nu).unwrap();
                raw.faces
                    .push((format!("{prefix}{c}"), i, nu, format!("{prefix}{f}")));
            }
        }
    }
    let labels: BTreeMap<String, String> = x
        .labeling
        .edge_labels
        .iter()
        .map(|(e, l)| (format!("{prefix}{e}"), l.clone()))
        .collect();
    let initial: BTreeSet<String> = x.initial.iter().map(|c| format!("{prefix}{c}")).collect();
    let accepting: BTreeSet<String> =
        x.accepting.iter().map(|c| format!("{prefix}{c}")).collect();
    Hda::new(validate_precubical(&raw).unwrap(), &labels, initial, accepting).unwrap()
}

/// Exact bounded language of an acyclic HDA: bounds chosen generously and
/// asserted to be non-truncating.
pub fn exact_language(x: &Hda, max_size: usize) -> LanguageSet {
    let lang = enumerate_language(x, max_size, 2 * max_size + 2);
    assert!(
        !lang.truncated,
        "language enumeration unexpectedly truncated"
    );
    lang
}
