//! Exhaustive verification suites, one per acceptance criterion.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::alcove::{elements_up_to, spiral_factorizations, AffineElement, FiniteRoot, Parity, Reflection};
use crate::bruhat::{interval, leq, subexpression_set, Hexagon, Hull};
use crate::kumar::{equivariant_multiplicity, kumar_singular_set, setup_move_check, setup_move_check_left};
use crate::loci::{
    attached_edges, classify_schubert, dim_bound_check, enumerate_smooth_varieties, maximal_singular, singular_codim,
    singular_set, small_edge_family, smooth_points, Classification,
};
use crate::qstat::{
    is_rationally_smooth, lookup_holds, maximal_elements, maximal_nrs, maximal_nrs_generic, nrs_codimension, nrs_scan,
    nrs_set, q_in, reflections_into, QTable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Order, hexagon, q and lookup suites.
    pub order: usize,
    pub translation: usize,
    pub kumar: usize,
    pub setup: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { order: 12, translation: 10, kumar: 9, setup: 8 }
    }
}

impl Bounds {
    /// Caps every bound at `n`.
    pub fn capped(n: usize) -> Bounds {
        let d = Bounds::default();
        Bounds { order: d.order.min(n), translation: d.translation.min(n), kumar: d.kumar.min(n), setup: d.setup.min(n) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hexagon,
    Q,
    Lookup,
    Kumar,
    Loci,
    All,
}

impl Suite {
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::Hexagon => vec![1, 2, 10],
            Suite::Q => vec![3, 4],
            Suite::Lookup => vec![5],
            Suite::Kumar => vec![6, 7],
            Suite::Loci => vec![8, 9],
            Suite::All => (1..=10).collect(),
        }
    }
}

const MAX_REPORTED: usize = 5;

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn run<T: Sync>(&mut self, items: &[T], f: impl Fn(&T) -> Option<String> + Sync) {
        let mut bad: Vec<String> = items.par_iter().filter_map(&f).collect();
        self.checked += items.len();
        bad.truncate(MAX_REPORTED.saturating_sub(self.failures.len()));
        self.failures.extend(bad);
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_REPORTED {
            self.failures.push(msg());
        }
    }

    fn finish(self, criterion: u8, name: &'static str) -> CheckResult {
        CheckResult { criterion, name, passed: self.failures.is_empty(), checked: self.checked, failures: self.failures }
    }
}

fn upto(n: usize) -> Vec<AffineElement> {
    elements_up_to(n)
}

fn non_spiral(n: usize) -> Vec<AffineElement> {
    upto(n).into_iter().filter(|w| !w.is_spiral()).collect()
}

fn as_set(v: Vec<AffineElement>) -> HashSet<AffineElement> {
    v.into_iter().collect()
}

pub fn run(criterion: u8, b: &Bounds) -> CheckResult {
    match criterion {
        1 => hexagon_characterization(b),
        2 => spiral_hulls(b),
        3 => q_equivalence(b),
        4 => translation_move(b),
        5 => heredity_and_lookup(b),
        6 => kumar_cross_check(b),
        7 => setup_and_simple_moves(b),
        8 => enumerations(b),
        9 => loci_structure(b),
        10 => inversion_identity(b),
        _ => panic!("criterion {criterion} out of range"),
    }
}

pub fn run_suite(suite: Suite, b: &Bounds) -> Vec<CheckResult> {
    suite.criteria().into_iter().map(|c| run(c, b)).collect()
}

fn interval_vs_oracle(ws: &[AffineElement], t: &mut Tally) {
    t.run(ws, |w| {
        let fast = as_set(interval(w));
        (fast != subexpression_set(&w.word())).then(|| format!("interval mismatch at {w}"))
    });
}

fn hexagon_characterization(b: &Bounds) -> CheckResult {
    let mut t = Tally::default();
    interval_vs_oracle(&non_spiral(b.order), &mut t);
    t.finish(1, "hexagon characterization")
}

fn spiral_hulls(b: &Bounds) -> CheckResult {
    let mut t = Tally::default();
    let ws: Vec<_> = upto(b.order).into_iter().filter(|w| w.is_spiral()).collect();
    interval_vs_oracle(&ws, &mut t);
    t.finish(2, "spiral hulls")
}

fn q_equivalence(b: &Bounds) -> CheckResult {
    let mut t = Tally::default();
    t.run(&non_spiral(b.order), |w| {
        let brute = QTable::brute(w).as_map();
        let table = QTable::structured(w).ok()?;
        table.entries.iter().find(|e| brute.get(&e.x) != Some(&e.q)).map(|e| format!("q({w}, {}) differs", e.x))
    });
    t.finish(3, "q structured = q brute")
}

fn translation_move(b: &Bounds) -> CheckResult {
    let mut t = Tally::default();
    t.run(&non_spiral(b.translation), |w| {
        let up = w.translate_into_chamber().ok()?;
        if up.length() != w.length() + 4 {
            return Some(format!("length of t(a){w} is {}", up.length()));
        }
        let inner = QTable::brute(w).as_map();
        let outer = QTable::brute(&up).as_map();
        inner
            .iter()
            .find(|(x, q)| outer.get(x) != Some(&(**q + 2)))
            .map(|(x, _)| format!("q(t(a){w}, {x}) is not q({w}, {x}) + 2"))
    });
    t.finish(4, "translation move")
}

fn heredity_and_lookup(b: &Bounds) -> CheckResult {
    let mut t = Tally::default();
    t.run(&non_spiral(b.order), |w| {
        let q = QTable::brute(w).as_map();
        let nrs = nrs_set(w);
        for (x, v) in &q {
            if *v > 0 && Hull::of(x).interval().iter().any(|y| q[y] == 0) {
                return Some(format!("heredity fails below {x} in {w}"));
            }
            if nrs.contains(x) != (*v > 0) {
                return Some(format!("nrs at {x} in {w} is not q > 0"));
            }
        }
        None
    });
    let sample: Vec<_> = upto(b.order.min(9));
    t.run(&sample, |w| {
        let q = QTable::brute(w).as_map();
        q.keys()
            .find(|x| nrs_scan(w, x).ok() != Some(nrs_set(w).contains(x)))
            .map(|x| format!("scan and closure disagree at {x} in {w}"))
    });
    t.run(&upto(b.order), |w| (!lookup_holds(w)).then(|| format!("lookup fails for {w}")));
    t.finish(5, "heredity and lookup")
}

fn kumar_cross_check(b: &Bounds) -> CheckResult {
    let mut t = Tally::default();
    t.run(&upto(b.kumar), |w| {
        let closed = as_set(smooth_points(w));
        let sing = kumar_singular_set(w).ok()?;
        Hull::of(w)
            .interval()
            .into_iter()
            .find(|x| closed.contains(x) == sing.contains(x))
            .map(|x| format!("smoothness of {x} in {w} disagrees with Kumar"))
    });
    let ws: Vec<_> = non_spiral(b.kumar).into_iter().filter(|w| !w.is_identity()).collect();
    t.run(&ws, |w| {
        let words: Vec<Vec<u8>> =
            spiral_factorizations(w).ok()?.iter().map(|(u, v)| [u.word(), v.word()].concat()).collect();
        Hull::of(w).interval().into_iter().find_map(|x| {
            let a = equivariant_multiplicity(w, &x, &words[0]).ok()?;
            let c = equivariant_multiplicity(w, &x, &words[1]).ok()?;
            (a != c).then(|| format!("multiplicity at {x} in {w} depends on the word"))
        })
    });
    t.finish(6, "Kumar cross-check")
}

fn setup_and_simple_moves(b: &Bounds) -> CheckResult {
    let mut t = Tally::default();
    let ws = upto(b.setup);
    t.run(&ws, |w| {
        let hull = Hull::of(w);
        let ivl = hull.interval();
        for x in &ivl {
            for s in 0..3u8 {
                let si = AffineElement::simple(s);
                let (ws_, xs) = (w.compose(&si), x.compose(&si));
                if ws_.length() > w.length() && !leq(&xs, w) && setup_move_check(w, x, s).ok() != Some(true) {
                    return Some(format!("right setup move fails for ({x}, {w}, {s})"));
                }
                let (sw, sx) = (si.compose(w), si.compose(x));
                if sw.length() > w.length() && !leq(&sx, w) && setup_move_check_left(w, x, s).ok() != Some(true) {
                    return Some(format!("left setup move fails for ({x}, {w}, {s})"));
                }
            }
        }
        let q: HashMap<_, _> = ivl.iter().map(|x| (*x, q_in(&hull, x))).collect();
        let nrs = nrs_set(w);
        let smooth = as_set(smooth_points(w));
        let lookup = |x: &AffineElement| {
            let witnessed = q[x] > 0
                || reflections_into(&hull, x).iter().any(|r| {
                    let y = r.element().compose(x);
                    y.length() > x.length() && q[&y] > 0
                });
            witnessed == nrs.contains(x)
        };
        for u in w.right_descents() {
            let su = AffineElement::simple(u);
            for x in upto(w.length() + 1) {
                if leq(&x, w) != leq(&x.compose(&su), w) {
                    return Some(format!("simple move (a) fails for {x} in {w}"));
                }
            }
            for x in &ivl {
                let y = x.compose(&su);
                if q[x] != q[&y] {
                    return Some(format!("simple move (b) fails for {x} in {w}"));
                }
                if nrs.contains(x) != nrs.contains(&y) || smooth.contains(x) != smooth.contains(&y) {
                    return Some(format!("simple move (c) fails for {x} in {w}"));
                }
                if lookup(x) != lookup(&y) {
                    return Some(format!("simple move (d) fails for {x} in {w}"));
                }
            }
        }
        None
    });
    t.finish(7, "setup and simple moves")
}

/// Elements with both attached edges short, as (total, singular).
pub fn small_edge_counts() -> (usize, usize) {
    let fam = small_edge_family();
    let singular = fam.iter().filter(|w| classify_schubert(w) != Classification::Smooth).count();
    (fam.len(), singular)
}

fn enumerations(b: &Bounds) -> CheckResult {
    let mut t = Tally::default();
    let table = enumerate_smooth_varieties();
    let mut per_len = [0usize; 6];
    for r in &table {
        if r.length < 6 {
            per_len[r.length] += r.count;
        }
    }
    let total: usize = table.iter().map(|r| r.count).sum();
    t.expect(total == 31 && per_len == [1, 3, 6, 9, 6, 6], || format!("smooth table has {total} entries, {per_len:?}"));
    let (fam, sing) = small_edge_counts();
    t.expect(fam == 64 && sing == 33, || format!("small-edge family has {fam} elements, {sing} singular (expected 64, 33)"));
    t.run(&upto(b.order), |w| {
        (is_rationally_smooth(w) != nrs_set(w).is_empty()).then(|| format!("rational smoothness of {w} misclassified"))
    });
    t.run(&upto(b.kumar), |w| {
        let smooth = singular_set(w).is_empty();
        (smooth != (classify_schubert(w) == Classification::Smooth)).then(|| format!("smoothness of {w} misclassified"))
    });
    t.finish(8, "global enumerations")
}

fn bound_class(w: &AffineElement) -> Option<(u8, Parity, usize)> {
    let h = Hexagon::new(w).ok()?;
    let tp = w.type_of().ok()?;
    let d = match (tp, h.parity()) {
        (1, Parity::Even) => 6,
        (1, Parity::Odd) | (_, Parity::Even) => 5,
        _ => 4,
    };
    Some((tp, h.parity(), d))
}

fn loci_structure(b: &Bounds) -> CheckResult {
    let mut t = Tally::default();
    let big: Vec<_> = non_spiral(b.order).into_iter().filter(|w| w.length() >= 6).collect();
    t.run(&big, |w| (maximal_nrs(w) != maximal_nrs_generic(w)).then(|| format!("maximal nrs of {w}")));
    t.run(&upto(b.kumar), |w| {
        let generic = maximal_elements(&kumar_singular_set(w).ok()?);
        (maximal_singular(w) != generic).then(|| format!("maximal singular points of {w}"))
    });
    t.run(&upto(b.order), |w| {
        let (a, c) = attached_edges(w);
        let top = singular_set(w).iter().map(|x| x.length()).max();
        let codim = top.map(|m| w.length() - m);
        if codim != singular_codim(w) {
            return Some(format!("singular codimension of {w}"));
        }
        ((a >= 6 || c >= 6) && codim != Some(2)).then(|| format!("{w} has a long edge but codimension {codim:?}"))
    });
    t.run(&big, |w| {
        let c = nrs_codimension(w)?;
        let even_one = bound_class(w).map(|(tp, p, _)| tp == 1 && p == Parity::Even).unwrap_or(false);
        let expect = if even_one { 4 } else { 3 };
        (c != expect).then(|| format!("nrs codimension of {w} is {c}"))
    });
    let all = upto(b.order);
    t.run(&all, |w| (smooth_points(w).len() > 36).then(|| format!("{w} has more than 36 smooth points")));
    let witness = upto(16).into_iter().find(|w| {
        !w.is_spiral()
            && w.type_of().ok() == Some(1)
            && Hexagon::new(w).map(|h| h.parity() == Parity::Even && (0..6).all(|i| h.edge(i).len() >= 6)).unwrap_or(false)
    });
    t.expect(witness.map(|w| smooth_points(&w).len()) == Some(36), || "no 36-point witness".to_string());
    t.run(&all, |w| (!dim_bound_check(w)).then(|| format!("smooth point below the bound in {w}")));
    let mut sharp: HashSet<(u8, Parity)> = HashSet::new();
    for w in &all {
        let Some((tp, p, d)) = bound_class(w) else { continue };
        if w.is_twisted_spiral() || w.length() < 7 {
            continue;
        }
        if smooth_points(w).iter().any(|x| x.length() + d == w.length()) {
            sharp.insert((tp, p));
        }
    }
    t.expect(sharp.len() == 4, || format!("sharpness witnesses only for {sharp:?}"));
    t.finish(9, "loci structure")
}

fn inversion_identity(b: &Bounds) -> CheckResult {
    let mut t = Tally::default();
    t.run(&upto(b.order), |w| {
        let bound = w.length() as i64 + 2;
        let n = FiniteRoot::POSITIVE
            .into_iter()
            .flat_map(|r| (-bound..=bound).map(move |k| Reflection::new(r, k)))
            .filter(|r| r.element().compose(w).length() < w.length())
            .count();
        (n != w.length()).then(|| format!("{w} has {n} inversions"))
    });
    t.finish(10, "inversion identity")
}
