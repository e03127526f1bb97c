use std::collections::{HashMap, HashSet};

use proptest::prelude::*;
use schubert_a2::alcove::{elements_up_to, AffineElement, FiniteRoot, Parity, Reflection};
use schubert_a2::bruhat::{subexpression_set, Hexagon};
use schubert_a2::qstat::{
    base_case, is_rationally_smooth, lookup_holds, maximal_nrs, maximal_nrs_generic, nrs, nrs_codimension, nrs_scan,
    nrs_set, q_brute, q_structured, BaseCase, QStructured, QTable, QTag,
};

fn el(s: &str) -> AffineElement {
    AffineElement::parse(s).unwrap()
}

/// q straight from the definition, using subexpressions for the order and a
/// generous range of reflection levels.
fn q_oracle(w: &AffineElement, x: &AffineElement) -> u32 {
    let below = subexpression_set(&w.word());
    assert!(below.contains(x));
    let bound = w.length() as i64 + 2;
    let mut n = 0;
    for r in FiniteRoot::POSITIVE {
        for k in -bound..=bound {
            if below.contains(&Reflection::new(r, k).element().compose(x)) {
                n += 1;
            }
        }
    }
    (n - w.length()) as u32
}

fn non_spiral(max: usize) -> impl Iterator<Item = AffineElement> {
    elements_up_to(max).into_iter().filter(|w| !w.is_spiral())
}

#[test]
fn brute_matches_definition() {
    for w in elements_up_to(8) {
        for x in subexpression_set(&w.word()) {
            assert_eq!(q_brute(&w, &x).unwrap(), q_oracle(&w, &x), "w = {w}, x = {x}");
        }
    }
}

#[test]
fn q_at_owner_is_zero() {
    for w in elements_up_to(12) {
        assert_eq!(q_brute(&w, &w).unwrap(), 0, "w = {w}");
    }
}

#[test]
fn q_not_below_is_an_error() {
    assert!(q_brute(&el("01"), &el("2")).is_err());
    assert!(q_structured(&el("0121"), &el("20")).is_err());
}

#[test]
fn structured_equals_brute() {
    let mut checked = 0;
    for w in non_spiral(12) {
        let brute = QTable::brute(&w).as_map();
        let table = QTable::structured(&w).unwrap();
        assert_eq!(table.entries.len(), brute.len());
        for e in &table.entries {
            assert_eq!(e.q, brute[&e.x], "w = {w}, x = {}, tag {:?}", e.x, e.tag);
        }
        checked += 1;
    }
    assert_eq!(checked, 165);
}

#[test]
fn structured_equals_brute_longer() {
    for w in non_spiral(16).filter(|w| w.length() > 12) {
        let brute = QTable::brute(&w).as_map();
        for e in QTable::structured(&w).unwrap().entries {
            assert_eq!(e.q, brute[&e.x], "w = {w}, x = {}", e.x);
        }
    }
}

#[test]
fn structured_rejects_spirals() {
    assert!(QStructured::new(&el("0120")).is_err());
}

#[test]
fn translation_adds_two_on_deep_shells() {
    for w in non_spiral(14) {
        let Ok(inner) = w.translate_out_of_chamber() else { continue };
        if inner.is_spiral() || inner.chamber() != w.chamber() {
            continue;
        }
        let hex = Hexagon::new(&w).unwrap();
        for k in 3.. {
            let shell = hex.shell(k);
            if shell.is_empty() {
                break;
            }
            for x in shell {
                assert_eq!(q_brute(&w, &x).unwrap(), q_brute(&inner, &x).unwrap() + 2, "w = {w}, x = {x}");
            }
        }
    }
}

#[test]
fn q_is_constant_on_right_parabolic_orbits() {
    for w in elements_up_to(11) {
        let q = QTable::brute(&w).as_map();
        for (x, v) in &q {
            for u in w.right_parabolic() {
                let y = x.compose(&u);
                assert_eq!(q[&y], *v, "w = {w}, x = {x}, y = {y}");
            }
        }
    }
}

#[test]
fn base_cases_are_classified() {
    let mut seen: HashMap<BaseCase, usize> = HashMap::new();
    for w in non_spiral(12) {
        let Some(b) = base_case(&w) else { continue };
        *seen.entry(b).or_default() += 1;
        let hex = Hexagon::new(&w).unwrap();
        let t = w.type_of().unwrap();
        match b {
            BaseCase::One => {
                assert!(w.is_twisted_spiral(), "{w}");
                assert_eq!((hex.parity(), t), (Parity::Even, 1));
            }
            BaseCase::Two => assert_eq!((hex.parity(), t), (Parity::Even, 2)),
            BaseCase::Three => assert_eq!((hex.parity(), t), (Parity::Odd, 1)),
            BaseCase::Four => assert_eq!((hex.parity(), t), (Parity::Odd, 2)),
        }
    }
    assert_eq!(seen.len(), 4);
}

#[test]
fn structured_tags() {
    let w = el("0121");
    for e in QTable::structured(&w).unwrap().entries {
        assert_eq!(e.tag, QTag::BaseCase);
    }
    let long = non_spiral(14).find(|w| base_case(w).is_none() && w.length() >= 12).unwrap();
    let tags: HashSet<QTag> = QTable::structured(&long).unwrap().entries.iter().map(|e| e.tag).collect();
    assert!(tags.contains(&QTag::OuterShell));
    assert!(tags.contains(&QTag::Translation));
}

#[test]
fn nrs_matches_scan() {
    for w in elements_up_to(10) {
        for x in subexpression_set(&w.word()) {
            assert_eq!(nrs(&w, &x).unwrap(), nrs_scan(&w, &x).unwrap(), "w = {w}, x = {x}");
        }
    }
}

#[test]
fn nrs_is_downward_closed() {
    for w in elements_up_to(11) {
        let set = nrs_set(&w);
        for x in &set {
            for y in subexpression_set(&x.word()) {
                assert!(set.contains(&y), "w = {w}, x = {x}, y = {y}");
            }
        }
    }
}

#[test]
fn rational_smoothness_matches_empty_nrs() {
    let mut smooth_counts = [0usize; 5];
    for w in elements_up_to(14) {
        let rs = nrs_set(&w).is_empty();
        assert_eq!(is_rationally_smooth(&w), rs, "w = {w}");
        if rs && w.length() == 4 {
            smooth_counts[0] += 1;
        }
    }
    assert!(smooth_counts[0] > 0);
}

#[test]
fn maximal_nrs_matches_generic() {
    for w in elements_up_to(14) {
        assert_eq!(maximal_nrs(&w), maximal_nrs_generic(&w), "w = {w}");
    }
}

#[test]
fn nrs_codimension_values() {
    for w in elements_up_to(14) {
        let Some(c) = nrs_codimension(&w) else { continue };
        if w.length() < 6 {
            continue;
        }
        let expect = if w.is_spiral() {
            3
        } else if Hexagon::new(&w).unwrap().parity() == Parity::Even && w.type_of().unwrap() == 1 {
            4
        } else {
            3
        };
        assert_eq!(c, expect, "w = {w}");
    }
}

#[test]
fn q_at_maximal_nrs_points() {
    for w in non_spiral(14).filter(|w| w.length() >= 6 && !w.is_twisted_spiral()) {
        let q = QTable::brute(&w).as_map();
        for z in maximal_nrs(&w) {
            assert!(q[&z] == 1 || q[&z] == 2, "w = {w}, z = {z}");
        }
    }
}

#[test]
fn lookup_property() {
    for w in elements_up_to(13) {
        assert!(lookup_holds(&w), "w = {w}");
    }
}

#[test]
fn qtable_json_shape() {
    let t = QTable::brute(&el("0121"));
    let v: serde_json::Value = serde_json::to_value(&t).unwrap();
    assert_eq!(v["owner"], "0121");
    assert_eq!(v["entries"].as_array().unwrap().len(), t.entries.len());
    assert_eq!(v["entries"][0]["tag"], "brute");
}

fn arb_element(max: usize) -> impl Strategy<Value = AffineElement> {
    prop::collection::vec(0u8..3, 0..max).prop_map(|w| AffineElement::from_word(&w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn structured_agrees_on_random_elements(w in arb_element(22)) {
        prop_assume!(!w.is_spiral() && !w.is_identity());
        let q = QTable::brute(&w).as_map();
        let engine = QStructured::new(&w).unwrap();
        for (x, v) in q {
            prop_assert_eq!(engine.value(&x).unwrap().0, v);
        }
    }
}
