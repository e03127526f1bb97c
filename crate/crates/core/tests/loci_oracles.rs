use std::collections::HashSet;

use schubert_a2::alcove::{elements_up_to, AffineElement, Parity};
use schubert_a2::bruhat::{subexpression_set, Hexagon};
use schubert_a2::kumar::{kumar_singular_set, kumar_smooth};
use schubert_a2::loci::{
    attached_edges, classify_schubert, dim_bound_check, enumerate_smooth_varieties, locus_report, maximal_singular,
    maximal_singular_generic, singular_codim, singular_set, small_edge_family, smooth_points, Classification,
};
use schubert_a2::qstat::{is_rationally_smooth, maximal_elements, nrs_codimension, nrs_set};

fn el(s: &str) -> AffineElement {
    AffineElement::parse(s).unwrap()
}

fn set(v: Vec<AffineElement>) -> HashSet<AffineElement> {
    v.into_iter().collect()
}

#[test]
fn smooth_points_match_kumar() {
    for w in elements_up_to(9) {
        let closed = set(smooth_points(&w));
        for x in subexpression_set(&w.word()) {
            assert_eq!(closed.contains(&x), kumar_smooth(&w, &x).unwrap(), "w = {w}, x = {x}");
        }
    }
}

#[test]
fn codimension_one_points_are_smooth() {
    for w in elements_up_to(12) {
        let smooth = set(smooth_points(&w));
        for x in subexpression_set(&w.word()) {
            if x.length() + 1 == w.length() {
                assert!(smooth.contains(&x), "w = {w}, x = {x}");
            }
        }
    }
}

#[test]
fn generic_type_one_has_36_smooth_points() {
    let w = elements_up_to(16)
        .into_iter()
        .find(|w| {
            !w.is_spiral()
                && w.type_of().unwrap() == 1
                && Hexagon::new(w).map(|h| h.parity() == Parity::Even && (0..6).all(|i| h.edge(i).len() >= 6)).unwrap()
        })
        .expect("a generic even Type 1 element");
    assert_eq!(smooth_points(&w).len(), 36, "w = {w}");
}

#[test]
fn at_most_36_smooth_points() {
    for w in elements_up_to(14) {
        assert!(smooth_points(&w).len() <= 36, "w = {w}");
    }
}

#[test]
fn smooth_implies_rationally_smooth() {
    for w in elements_up_to(12) {
        let nrs = nrs_set(&w);
        for x in smooth_points(&w) {
            assert!(!nrs.contains(&x), "w = {w}, x = {x}");
        }
    }
}

#[test]
fn singular_set_is_downward_closed() {
    for w in elements_up_to(11) {
        let sing = set(singular_set(&w));
        for x in &sing {
            for y in subexpression_set(&x.word()) {
                assert!(sing.contains(&y), "w = {w}, x = {x}, y = {y}");
            }
        }
    }
}

#[test]
fn maximal_singular_matches_kumar() {
    for w in elements_up_to(9) {
        let generic = maximal_elements(&kumar_singular_set(&w).unwrap());
        assert_eq!(maximal_singular(&w), generic, "w = {w}");
    }
}

#[test]
fn maximal_singular_matches_closed_smooth_locus() {
    for w in elements_up_to(13) {
        assert_eq!(maximal_singular(&w), maximal_singular_generic(&w), "w = {w}");
    }
}

#[test]
fn long_attached_edges_give_codim_two() {
    for w in elements_up_to(13) {
        let (a, b) = attached_edges(&w);
        let c = singular_codim(&w);
        if a >= 6 || b >= 6 {
            assert_eq!(c, Some(2), "w = {w}");
            let top = maximal_singular(&w).iter().map(|x| x.length()).max();
            assert_eq!(top, Some(w.length() - 2));
        } else if c.is_some() && !w.is_twisted_spiral() {
            assert_eq!(c, nrs_codimension(&w), "w = {w}");
        }
    }
}

#[test]
fn singular_codim_matches_kumar() {
    for w in elements_up_to(9) {
        let sing = kumar_singular_set(&w).unwrap();
        let expect = sing.iter().map(|x| x.length()).max().map(|m| w.length() - m);
        assert_eq!(singular_codim(&w), expect, "w = {w}");
    }
}

#[test]
fn one_long_edge_of_length_four() {
    // Even Type 1 with a length-4 attached edge: only x is maximal.
    let w = elements_up_to(13)
        .into_iter()
        .find(|w| {
            let (a, b) = attached_edges(w);
            !w.is_spiral()
                && w.type_of().unwrap() == 1
                && Hexagon::new(w).unwrap().parity() == Parity::Even
                && ((a >= 6 && b == 4) || (b >= 6 && a == 4))
        })
        .unwrap();
    assert_eq!(maximal_singular(&w).len(), 1, "w = {w}");
}

#[test]
fn classification_examples() {
    assert_eq!(classify_schubert(&el("0102")), Classification::Smooth);
    assert_eq!(classify_schubert(&el("0120")), Classification::Singular);
    let ts7 = elements_up_to(7).into_iter().find(|w| w.length() == 7 && w.is_twisted_spiral()).unwrap();
    assert_eq!(classify_schubert(&ts7), Classification::RationallySmoothOnly);
    for w in elements_up_to(6).into_iter().filter(|w| w.length() == 6) {
        assert_eq!(classify_schubert(&w), Classification::Singular, "w = {w}");
    }
}

#[test]
fn classification_matches_loci() {
    for w in elements_up_to(11) {
        let expect = if singular_set(&w).is_empty() {
            Classification::Smooth
        } else if nrs_set(&w).is_empty() {
            Classification::RationallySmoothOnly
        } else {
            Classification::Singular
        };
        assert_eq!(classify_schubert(&w), expect, "w = {w}");
    }
}

#[test]
fn smooth_varieties_table() {
    let table = enumerate_smooth_varieties();
    let total: usize = table.iter().map(|r| r.count).sum();
    assert_eq!(total, 31);
    let mut per_len = [0usize; 6];
    for r in &table {
        per_len[r.length] += r.count;
        assert_eq!(r.members.len(), r.count);
    }
    assert_eq!(per_len, [1, 3, 6, 9, 6, 6]);
    let five: Vec<_> = table.iter().filter(|r| r.length == 5).collect();
    assert_eq!(five.len(), 1);
    assert_eq!(five[0].pattern, "ijkik");
    assert_eq!(five[0].count, 6);
    for w in elements_up_to(9) {
        let listed = table.iter().any(|r| r.members.contains(&w.to_string()));
        assert_eq!(listed, singular_set(&w).is_empty(), "w = {w}");
    }
}

#[test]
fn small_edge_family_counts() {
    let fam = small_edge_family();
    let smooth = fam.iter().filter(|w| classify_schubert(w) == Classification::Smooth).count();
    assert_eq!(smooth, 31);
    for w in &fam {
        let (a, b) = attached_edges(w);
        assert!(a < 6 && b < 6);
    }
    // The family is exactly where the singular locus is not of codimension 2.
    for w in elements_up_to(12) {
        let inside = fam.contains(&w);
        assert_eq!(inside, singular_codim(&w) != Some(2), "w = {w}");
    }
}

#[test]
fn rationally_smooth_cases() {
    for w in elements_up_to(12) {
        let rs = nrs_set(&w).is_empty();
        assert_eq!(rs, is_rationally_smooth(&w), "w = {w}");
    }
}

#[test]
fn dimension_bounds() {
    for w in elements_up_to(12) {
        assert!(dim_bound_check(&w), "w = {w}");
    }
}

#[test]
fn dimension_bound_is_sharp() {
    let mut found = 0;
    for w in elements_up_to(12) {
        if w.length() < 7 || w.is_spiral() || w.type_of().unwrap() != 1 {
            continue;
        }
        let hex = Hexagon::new(&w).unwrap();
        if hex.parity() != Parity::Even {
            continue;
        }
        let x = hex.vertices[3];
        let low = w.right_parabolic().iter().map(|u| x.compose(u)).min_by_key(|y| y.length()).unwrap();
        assert!(smooth_points(&w).contains(&low));
        // Twisted spirals stop one short of the bound.
        let gap = if w.is_twisted_spiral() { 5 } else { 6 };
        assert_eq!(low.length() + gap, w.length(), "w = {w}");
        found += usize::from(gap == 6);
    }
    assert!(found > 0);
}

#[test]
fn deep_points_are_singular() {
    for w in elements_up_to(12) {
        let smooth = set(smooth_points(&w));
        for x in subexpression_set(&w.word()) {
            if x.length() + 7 <= w.length() {
                assert!(!smooth.contains(&x), "w = {w}, x = {x}");
            }
        }
    }
}

#[test]
fn report_is_consistent() {
    let w = el("0121021");
    let r = locus_report(&w);
    assert_eq!(r.owner, w);
    assert!(r.summary.smooth_count <= 36);
    for e in &r.entries {
        assert!(!(e.smooth && e.nrs));
        assert_eq!(e.length, e.x.length());
    }
    let v = serde_json::to_value(&r).unwrap();
    assert!(v["entries"].is_array());
    assert_eq!(v["summary"]["classification"], "singular");
}
