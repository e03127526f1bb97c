//! Smooth and singular loci, their maximal points and codimensions, and the
//! global enumerations of smooth Schubert varieties.

use std::collections::HashSet;

use serde::Serialize;

use crate::alcove::{elements_up_to, AffineElement, Parity};
use crate::bruhat::{Hexagon, Hull};
use crate::kumar::kumar_singular_set;
use crate::qstat::{base_case, is_rationally_smooth, maximal_elements, maximal_nrs, nrs_codimension, nrs_set, BaseCase, QTable};

fn sorted(mut v: Vec<AffineElement>) -> Vec<AffineElement> {
    v.sort_by_cached_key(|x| (x.length(), x.word()));
    v.dedup();
    v
}

/// Alcove counts of the two hull edges meeting at w.
pub fn attached_edges(w: &AffineElement) -> (usize, usize) {
    match Hull::of(w) {
        Hull::Hexagon(h) => (h.edge(0).len(), h.edge(5).len()),
        Hull::Degenerate(d) if d.vertices.len() < 4 => (d.vertices.len(), d.vertices.len()),
        Hull::Degenerate(d) => (d.edge(0).len(), d.edge(d.vertices.len() - 1).len()),
    }
}

fn has_long_edge(w: &AffineElement) -> bool {
    let (a, b) = attached_edges(w);
    a >= 6 || b >= 6
}

/// Points near the six hexagon vertices; Kumar scan for spiral w.
pub fn smooth_points(w: &AffineElement) -> Vec<AffineElement> {
    if w.is_spiral() {
        let hull = Hull::of(w);
        let sing = kumar_singular_set(w).expect("interval points are below w");
        return hull.interval().into_iter().filter(|x| !sing.contains(x)).collect();
    }
    let hex = Hexagon::new(w).expect("non-spiral");
    let mut out = Vec::new();
    let rw = w.right_parabolic();
    if rw.len() == 6 {
        for v in hex.vertices {
            out.extend(rw.iter().map(|u| v.compose(u)));
        }
    } else {
        for i in 0..6 {
            let v = hex.vertices[i];
            let mut hat = vec![v];
            hat.extend(hex.edge(i).get(1).copied());
            let prev = hex.edge((i + 5) % 6);
            if prev.len() >= 2 {
                hat.push(prev[prev.len() - 2]);
            }
            out.extend(hat.iter().flat_map(|y| rw.iter().map(move |u| y.compose(u))));
        }
    }
    out.retain(|x| hex.contains(x));
    sorted(out)
}

pub fn singular_set(w: &AffineElement) -> Vec<AffineElement> {
    let smooth: HashSet<AffineElement> = smooth_points(w).into_iter().collect();
    Hull::of(w).interval().into_iter().filter(|x| !smooth.contains(x)).collect()
}

pub fn maximal_singular_generic(w: &AffineElement) -> Vec<AffineElement> {
    maximal_elements(&singular_set(w).into_iter().collect())
}

/// The edge alcoves two steps from w on its attached edges, when those edges
/// hold at least six alcoves.
pub fn edge_points(w: &AffineElement) -> Vec<AffineElement> {
    let Ok(hex) = Hexagon::new(w) else { return Vec::new() };
    let mut out = Vec::new();
    let e0 = hex.edge(0);
    if e0.len() >= 6 {
        out.push(e0[2]);
    }
    let e5 = hex.edge(5);
    if e5.len() >= 6 {
        out.push(e5[e5.len() - 3]);
    }
    out
}

/// Maximal singular points: the edge points together with the maximal nrs
/// points lying below neither of them.
pub fn maximal_singular(w: &AffineElement) -> Vec<AffineElement> {
    if w.is_spiral() {
        return maximal_singular_generic(w);
    }
    if classify_schubert(w) == Classification::Smooth {
        return Vec::new();
    }
    let xs = edge_points(w);
    if xs.is_empty() {
        return maximal_nrs(w);
    }
    let hulls: Vec<Hull> = xs.iter().map(Hull::of).collect();
    let mut out = xs.clone();
    out.extend(maximal_nrs(w).into_iter().filter(|z| !hulls.iter().any(|h| h.contains(z))));
    sorted(out)
}

/// l(w) minus the largest length of a singular point; None when smooth.
pub fn singular_codim(w: &AffineElement) -> Option<usize> {
    if classify_schubert(w) == Classification::Smooth {
        return None;
    }
    if has_long_edge(w) {
        return Some(2);
    }
    if is_rationally_smooth(w) {
        let top = maximal_singular(w).iter().map(|x| x.length()).max()?;
        return Some(w.length() - top);
    }
    nrs_codimension(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Smooth,
    RationallySmoothOnly,
    Singular,
}

pub fn classify_schubert(w: &AffineElement) -> Classification {
    match (is_rationally_smooth(w), w.length() <= 5) {
        (true, true) => Classification::Smooth,
        (true, false) => Classification::RationallySmoothOnly,
        _ => Classification::Singular,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothClass {
    pub length: usize,
    pub pattern: String,
    pub count: usize,
    pub members: Vec<String>,
}

const PATTERNS: [&str; 8] = ["", "i", "ij", "iji", "ijk", "ijik", "kiji", "ijkik"];

fn pattern_of(w: &AffineElement) -> Option<&'static str> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    PATTERNS.into_iter().find(|p| {
        p.len() == w.length()
            && perms.iter().any(|perm| {
                let word: Vec<u8> = p.bytes().map(|c| perm[(c - b'i') as usize]).collect();
                AffineElement::from_word(&word) == *w
            })
    })
}

/// Smooth X_w grouped by length and reduced-word pattern (i, j, k distinct).
pub fn enumerate_smooth_varieties() -> Vec<SmoothClass> {
    let mut rows: Vec<SmoothClass> = Vec::new();
    for w in elements_up_to(8) {
        if classify_schubert(&w) != Classification::Smooth {
            continue;
        }
        let pattern = match pattern_of(&w) {
            Some("") => "e".to_string(),
            Some(p) => p.to_string(),
            None => w.word_string(),
        };
        match rows.iter_mut().find(|r| r.pattern == pattern && r.length == w.length()) {
            Some(r) => {
                r.count += 1;
                r.members.push(w.to_string());
            }
            None => rows.push(SmoothClass { length: w.length(), pattern, count: 1, members: vec![w.to_string()] }),
        }
    }
    rows
}

/// Past this length every attached edge is long.
const FAMILY_SEARCH: usize = 14;

/// Elements with both attached edges shorter than six alcoves.
pub fn small_edge_family() -> Vec<AffineElement> {
    elements_up_to(FAMILY_SEARCH).into_iter().filter(|w| !has_long_edge(w)).collect()
}

/// Every smooth point x satisfies l(x) >= l(w) - d, d by type and chamber.
pub fn dim_bound_check(w: &AffineElement) -> bool {
    let d = match Hexagon::new(w) {
        Err(_) => 6,
        Ok(h) => match (w.type_of().unwrap_or(1), h.parity()) {
            (1, Parity::Even) => 6,
            (1, Parity::Odd) | (_, Parity::Even) => 5,
            _ => 4,
        },
    };
    smooth_points(w).iter().all(|x| x.length() + d >= w.length())
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusEntry {
    pub x: AffineElement,
    pub length: usize,
    pub q: u32,
    pub nrs: bool,
    pub smooth: bool,
    pub shell: Option<usize>,
    pub maximal_nrs: bool,
    pub maximal_singular: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusSummary {
    pub classification: Classification,
    pub nrs_codim: Option<usize>,
    pub singular_codim: Option<usize>,
    pub smooth_count: usize,
    pub base_case: Option<BaseCase>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusReport {
    pub owner: AffineElement,
    pub entries: Vec<LocusEntry>,
    pub summary: LocusSummary,
}

pub fn locus_report(w: &AffineElement) -> LocusReport {
    let q = QTable::best(w).as_map();
    let nrs = nrs_set(w);
    let smooth: HashSet<AffineElement> = smooth_points(w).into_iter().collect();
    let max_nrs: HashSet<AffineElement> = maximal_nrs(w).into_iter().collect();
    let max_sing: HashSet<AffineElement> = maximal_singular(w).into_iter().collect();
    let hex = Hexagon::new(w).ok();
    let entries = Hull::of(w)
        .interval()
        .into_iter()
        .map(|x| LocusEntry {
            x,
            length: x.length(),
            q: q[&x],
            nrs: nrs.contains(&x),
            smooth: smooth.contains(&x),
            shell: hex.as_ref().and_then(|h| h.shell_index(&x).ok()),
            maximal_nrs: max_nrs.contains(&x),
            maximal_singular: max_sing.contains(&x),
        })
        .collect();
    LocusReport {
        owner: *w,
        entries,
        summary: LocusSummary {
            classification: classify_schubert(w),
            nrs_codim: nrs_codimension(w),
            singular_codim: singular_codim(w),
            smooth_count: smooth.len(),
            base_case: base_case(w),
        },
    }
}
