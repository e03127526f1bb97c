//! The Carrell-Peterson statistic q(w,x) = #{reflections r : rx <= w} - l(w),
//! computed by brute force and by the shell/translation recursion.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::alcove::{AffineElement, FiniteRoot, Orientation, Parity, Point, Reflection, Region};
use crate::bruhat::{Hexagon, Hull};
use crate::error::{Error, Result};

fn not_below(x: &AffineElement, w: &AffineElement) -> Error {
    Error::NotBelow { x: x.to_string(), w: w.to_string() }
}

/// Reflections r with r x inside the hull.
pub fn reflections_into(hull: &Hull, x: &AffineElement) -> Vec<Reflection> {
    let p = x.center();
    let mut out = Vec::new();
    for r in FiniteRoot::POSITIVE {
        let (lo, hi) = hull.pairing_range(r);
        let v = p.pairing3(r);
        // The image has pairing 6k - v, which must lie in [lo, hi].
        let kmin = (lo + v).div_euclid(6) + i64::from((lo + v).rem_euclid(6) != 0);
        let kmax = (hi + v).div_euclid(6);
        for k in kmin..=kmax {
            let y = p.reflect(r, k);
            if let Some(ye) = AffineElement::from_center(y) {
                if hull.contains(&ye) {
                    out.push(Reflection::new(r, k));
                }
            }
        }
    }
    out
}

/// q computed against a prebuilt hull; `x` must lie in it.
pub fn q_in(hull: &Hull, x: &AffineElement) -> u32 {
    let n = reflections_into(hull, x).len();
    let l = hull.owner().length();
    debug_assert!(n >= l);
    (n - l) as u32
}

pub fn q_brute(w: &AffineElement, x: &AffineElement) -> Result<u32> {
    let hull = Hull::of(w);
    if !hull.contains(x) {
        return Err(not_below(x, w));
    }
    Ok(q_in(&hull, x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QTag {
    Brute,
    BaseCase,
    OuterShell,
    Translation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QEntry {
    pub x: AffineElement,
    pub q: u32,
    pub tag: QTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QTable {
    pub owner: AffineElement,
    pub entries: Vec<QEntry>,
}

impl QTable {
    pub fn brute(w: &AffineElement) -> QTable {
        let hull = Hull::of(w);
        let entries = hull
            .interval()
            .into_iter()
            .map(|x| QEntry { x, q: q_in(&hull, &x), tag: QTag::Brute })
            .collect();
        QTable { owner: *w, entries }
    }

    pub fn structured(w: &AffineElement) -> Result<QTable> {
        let engine = QStructured::new(w)?;
        let entries = engine
            .hexagon()
            .interval()
            .into_iter()
            .map(|x| {
                let (q, tag) = engine.value(&x).expect("x in interval");
                QEntry { x, q, tag }
            })
            .collect();
        Ok(QTable { owner: *w, entries })
    }

    /// Structured values for non-spiral owners, brute force otherwise.
    pub fn best(w: &AffineElement) -> QTable {
        QTable::structured(w).unwrap_or_else(|_| QTable::brute(w))
    }

    pub fn get(&self, x: &AffineElement) -> Option<u32> {
        self.entries.iter().find(|e| e.x == *x).map(|e| e.q)
    }

    pub fn as_map(&self) -> HashMap<AffineElement, u32> {
        self.entries.iter().map(|e| (e.x, e.q)).collect()
    }
}

/// The four kinds of element not obtained from a smaller one by translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BaseCase {
    /// Even chamber, Type 1: twisted spiral.
    One,
    /// Even chamber, Type 2.
    Two,
    /// Odd chamber, Type 1.
    Three,
    /// Odd chamber, Type 2.
    Four,
}

/// None for translates and for spiral elements.
pub fn base_case(w: &AffineElement) -> Option<BaseCase> {
    let c = w.chamber()?;
    let inner = w.translate_out_of_chamber().ok()?;
    if inner.classify() == Region::Chamber(c) {
        return None;
    }
    let t = w.type_of().ok()?;
    Some(match (c.parity(), t) {
        (Parity::Even, 1) => BaseCase::One,
        (Parity::Even, _) => BaseCase::Two,
        (Parity::Odd, 1) => BaseCase::Three,
        (Parity::Odd, _) => BaseCase::Four,
    })
}

/// A line of constant `Point::string_coord(root)`.
#[derive(Clone, Copy, Debug)]
struct Line {
    root: FiniteRoot,
    c: i64,
}

impl Line {
    fn through(root: FiniteRoot, p: Point) -> Line {
        Line { root, c: p.string_coord(root) }
    }

    fn value(&self, p: Point) -> i64 {
        p.string_coord(self.root) - self.c
    }
}

/// Closed triangle cut out by three lines in the three root directions.
fn in_triangle(lines: [Line; 3], p: Point) -> bool {
    let by = |r: FiniteRoot| *lines.iter().find(|l| l.root == r).expect("one line per direction");
    let (l1, l2, l3) = (by(FiniteRoot::ALPHA1), by(FiniteRoot::ALPHA2), by(FiniteRoot::ALPHA_TILDE));
    // The string coordinates satisfy g3 = g1 + g2.
    let delta = l3.c - l1.c - l2.c;
    let (v1, v2, v3) = (l1.value(p), l2.value(p), l3.value(p));
    if delta == 0 {
        return v1 == 0 && v2 == 0;
    }
    v1 * delta.signum() >= 0 && v2 * delta.signum() >= 0 && v3 * delta.signum() <= 0
}

/// Interior geometry of a Base Case 4 hexagon of length at least 7.
#[derive(Clone, Debug)]
struct Case4 {
    red: [Line; 3],
    green: [Line; 2],
    /// (near line, far line) bounding the two blue families.
    blue: [(Line, Line); 2],
    deep: Vec<AffineElement>,
}

impl Case4 {
    fn new(hex: &Hexagon) -> Option<Case4> {
        let segs = hex.special_segments();
        let seg = segs.iter().find(|s| !s.alcoves.is_empty())?;
        let u: Vec<usize> = if seg.carrier == (1, 2) {
            (0..6).collect()
        } else {
            (0..6).map(|i| (6 - i) % 6).collect()
        };
        let d = |i: usize| Line::through(hex.diagonal_root(u[i]), hex.vertices[u[i]].center());
        let deep = hex
            .interval()
            .into_iter()
            .filter(|x| hex.shell_index(x).map(|k| k >= 2).unwrap_or(false))
            .collect();
        Some(Case4 { red: [d(0), d(4), d(5)], green: [d(1), d(2)], blue: [(d(1), d(4)), (d(2), d(5))], deep })
    }

    fn is_red(&self, p: Point) -> bool {
        in_triangle(self.red, p)
    }

    fn is_green(&self, p: Point) -> bool {
        self.green.iter().any(|l| l.value(p) == 0)
    }

    fn value(&self, x: &AffineElement) -> Option<u32> {
        let p = x.center();
        if self.is_red(p) {
            return Some(2);
        }
        if self.is_green(p) {
            return Some(1);
        }
        let mut val = None;
        for (near, far) in self.blue {
            let (a, b) = (near.value(p), far.c - near.c);
            if a == 0 || a.signum() != b.signum() || a.abs() >= b.abs() {
                continue;
            }
            let g = p.string_coord(near.root);
            let mut string: Vec<Point> = self
                .deep
                .iter()
                .map(|y| y.center())
                .filter(|c| c.string_coord(near.root) == g && !self.is_red(*c) && !self.is_green(*c))
                .collect();
            string.sort();
            let end = string.first()?.orientation()?;
            let last = string.last()?.orientation()?;
            debug_assert_eq!(end, last);
            let v = if p.orientation()? == end { 2 } else { 1 };
            debug_assert!(val.is_none() || val == Some(v));
            val = Some(v);
        }
        val
    }
}

struct Level {
    hex: Hexagon,
    type_of: u8,
    base: Option<BaseCase>,
    special: HashSet<AffineElement>,
    special_lines: Vec<Line>,
    rw: Vec<AffineElement>,
    case4: Option<Case4>,
}

impl Level {
    fn new(w: &AffineElement) -> Result<Level> {
        let hex = Hexagon::new(w)?;
        let base = base_case(w);
        let segs = hex.special_segments();
        let special = segs.iter().flat_map(|s| s.alcoves.iter().copied()).collect();
        let special_lines = segs
            .iter()
            .map(|s| {
                let r = hex.edge_root(s.carrier.0).expect("special edges are never degenerate");
                Line::through(r.positive().0, hex.vertices[s.carrier.0].center())
            })
            .collect();
        let case4 = if base == Some(BaseCase::Four) && w.length() >= 7 { Case4::new(&hex) } else { None };
        Ok(Level {
            type_of: w.type_of()?,
            rw: w.right_parabolic(),
            hex,
            base,
            special,
            special_lines,
            case4,
        })
    }

    fn meets_special(&self, x: &AffineElement) -> bool {
        self.rw.iter().any(|u| self.special.contains(&x.compose(u)))
    }

    fn two_in_from_special(&self, x: &AffineElement) -> bool {
        let p = x.center();
        self.special_lines.iter().any(|l| l.value(p).abs() == 6)
    }

    fn outer(&self, x: &AffineElement, shell: usize) -> u32 {
        let special = || u32::from(self.meets_special(x));
        match (self.hex.parity(), self.type_of) {
            (Parity::Even, 1) => 0,
            (Parity::Odd, 1) => special(),
            (Parity::Even, _) => u32::from(shell == 2),
            (Parity::Odd, _) => match shell {
                0 | 1 => special(),
                _ if self.two_in_from_special(x) => 2,
                _ => 1,
            },
        }
    }

    fn base_value(&self, b: BaseCase, x: &AffineElement, shell: usize) -> u32 {
        let l = self.hex.owner.length();
        match b {
            BaseCase::One => 0,
            BaseCase::Two => u32::from(shell >= 2),
            BaseCase::Three if l <= 4 => 0,
            BaseCase::Three if shell <= 2 => self.outer(x, shell),
            BaseCase::Three => 1,
            BaseCase::Four if l <= 5 => {
                if shell <= 1 {
                    0
                } else {
                    2
                }
            }
            BaseCase::Four if shell <= 1 => u32::from(self.meets_special(x)),
            BaseCase::Four => self
                .case4
                .as_ref()
                .and_then(|c| c.value(x))
                .expect("every deep alcove is red, green or blue"),
        }
    }
}

/// q for a non-spiral owner, from the outer-shell rules, the base cases and
/// the translation recursion.
pub struct QStructured {
    levels: Vec<Level>,
}

impl QStructured {
    pub fn new(w: &AffineElement) -> Result<QStructured> {
        if w.is_spiral() {
            return Err(Error::Spiral(w.word_string()));
        }
        let mut levels = vec![Level::new(w)?];
        while levels.last().unwrap().base.is_none() {
            let next = levels.last().unwrap().hex.owner.translate_out_of_chamber()?;
            levels.push(Level::new(&next)?);
        }
        Ok(QStructured { levels })
    }

    pub fn hexagon(&self) -> &Hexagon {
        &self.levels[0].hex
    }

    pub fn value(&self, x: &AffineElement) -> Result<(u32, QTag)> {
        let owner = self.levels[0].hex.owner;
        for (depth, lvl) in self.levels.iter().enumerate() {
            let shell = lvl.hex.shell_index(x).map_err(|_| not_below(x, &owner))?;
            let lift = 2 * depth as u32;
            let tag = |t| if depth == 0 { t } else { QTag::Translation };
            if let Some(b) = lvl.base {
                return Ok((lift + lvl.base_value(b, x, shell), tag(QTag::BaseCase)));
            }
            if shell <= 2 {
                return Ok((lift + lvl.outer(x, shell), tag(QTag::OuterShell)));
            }
        }
        unreachable!("the recursion ends at a base case")
    }
}

pub fn q_structured(w: &AffineElement, x: &AffineElement) -> Result<u32> {
    QStructured::new(w)?.value(x).map(|(q, _)| q)
}

/// x is nrs in X_w iff some y with x <= y <= w has q(w,y) > 0.
pub fn nrs_scan(w: &AffineElement, x: &AffineElement) -> Result<bool> {
    let hull = Hull::of(w);
    if !hull.contains(x) {
        return Err(not_below(x, w));
    }
    Ok(hull
        .interval()
        .iter()
        .any(|y| q_in(&hull, y) > 0 && Hull::of(y).contains(x)))
}

pub fn nrs(w: &AffineElement, x: &AffineElement) -> Result<bool> {
    if w.is_spiral() {
        nrs_scan(w, x)
    } else {
        Ok(q_brute(w, x)? > 0)
    }
}

/// All nrs points of X_w, computed as the lower closure of {q > 0}.
pub fn nrs_set(w: &AffineElement) -> HashSet<AffineElement> {
    let hull = Hull::of(w);
    let mut out = HashSet::new();
    for y in hull.interval() {
        if q_in(&hull, &y) > 0 && !out.contains(&y) {
            out.extend(Hull::of(&y).interval());
        }
    }
    out
}

/// Bruhat-maximal elements of a set.
pub fn maximal_elements(set: &HashSet<AffineElement>) -> Vec<AffineElement> {
    let mut items: Vec<AffineElement> = set.iter().copied().collect();
    items.sort_by_cached_key(|x| std::cmp::Reverse(x.length()));
    let mut maxima: Vec<(AffineElement, Hull)> = Vec::new();
    for x in items {
        if !maxima.iter().any(|(_, h)| h.contains(&x)) {
            maxima.push((x, Hull::of(&x)));
        }
    }
    let mut out: Vec<AffineElement> = maxima.into_iter().map(|(x, _)| x).collect();
    out.sort_by_cached_key(|x| (x.length(), x.word()));
    out
}

pub fn maximal_nrs_generic(w: &AffineElement) -> Vec<AffineElement> {
    maximal_elements(&nrs_set(w))
}

/// The points p = w1 + b and p' = w5 + b that start the special segments,
/// kept only when the segment is nonempty.
pub fn special_endpoints(hex: &Hexagon) -> Vec<AffineElement> {
    hex.special_segments()
        .iter()
        .filter_map(|s| {
            let near = if s.carrier == (1, 2) { 1 } else { 5 };
            let edge = hex.edge(s.carrier.0);
            let p = if near == 1 { edge.get(2) } else { edge.iter().rev().nth(2) };
            p.filter(|p| s.alcoves.contains(p)).copied()
        })
        .collect()
}

/// z1 = w s t u and z2 = w s u t, s the unique right descent of a Type 2 element.
pub fn type_two_corners(w: &AffineElement) -> Option<(AffineElement, AffineElement)> {
    let d = w.right_descents();
    if d.len() != 1 {
        return None;
    }
    let s = d[0];
    let others: Vec<u8> = (0..3).filter(|&i| i != s).collect();
    let (t, u) = (others[0], others[1]);
    let z1 = w.compose(&AffineElement::from_word(&[s, t, u]));
    let z2 = w.compose(&AffineElement::from_word(&[s, u, t]));
    Some((z1, z2))
}

pub fn is_rationally_smooth(w: &AffineElement) -> bool {
    if w.length() <= 3 {
        return true;
    }
    if w.is_spiral() {
        return false;
    }
    if w.is_twisted_spiral() {
        return true;
    }
    w.length() == 4 && matches!(base_case(w), Some(BaseCase::Two) | Some(BaseCase::Three))
}

/// Maximal nrs points from the case list; generic scan for spiral and small w.
pub fn maximal_nrs(w: &AffineElement) -> Vec<AffineElement> {
    if is_rationally_smooth(w) {
        return Vec::new();
    }
    if w.is_spiral() {
        return maximal_nrs_generic(w);
    }
    let hex = Hexagon::new(w).expect("non-spiral");
    let c = hex.chamber;
    let base = base_case(w);
    let t = w.type_of().expect("w is not the identity");
    let mut out: Vec<AffineElement> = match (c.parity(), t) {
        (Parity::Even, 1) => vec![w.translate_out_of_chamber().expect("non-spiral")],
        (Parity::Even, _) => {
            let (z1, z2) = type_two_corners(w).expect("Type 2");
            if base == Some(BaseCase::Two) {
                [z1, z2].into_iter().filter(|z| z.chamber() == Some(c)).collect()
            } else {
                vec![z1, z2]
            }
        }
        (Parity::Odd, 1) => special_endpoints(&hex),
        (Parity::Odd, _) if base == Some(BaseCase::Four) && w.length() == 5 => {
            vec![w.translate_out_of_chamber().expect("non-spiral")]
        }
        (Parity::Odd, _) if base == Some(BaseCase::Four) => {
            let (z1, z2) = type_two_corners(w).expect("Type 2");
            let (inside, outside) = if z1.chamber() == Some(c) { (z1, z2) } else { (z2, z1) };
            let other_wall = other_wall(w);
            let mut v = vec![inside, other_wall.element().compose(&outside)];
            v.extend(special_endpoints(&hex));
            v
        }
        (Parity::Odd, _) => {
            let (z1, z2) = type_two_corners(w).expect("Type 2");
            let mut v = vec![z1, z2];
            v.extend(special_endpoints(&hex));
            v
        }
    };
    out.sort_by_cached_key(|x| (x.length(), x.word()));
    out.dedup();
    out
}

/// The chamber wall of w not adjacent to the fundamental strip that w's
/// translate t(-a)w falls into.
fn other_wall(w: &AffineElement) -> Reflection {
    let c = w.chamber().expect("non-spiral");
    let inner = w.translate_out_of_chamber().expect("non-spiral").center();
    let walls = c.walls();
    let crossed = walls.iter().position(|&(r, k)| {
        let v = inner.pairing3(r);
        if k == 0 {
            v > 0
        } else {
            v < 3
        }
    });
    let idx = match crossed {
        Some(i) => 1 - i,
        None => 0,
    };
    Reflection::new(walls[idx].0, walls[idx].1)
}

/// Checks the Lookup property: nrs at x iff q > 0 at x or at some rx > x below w.
pub fn lookup_holds(w: &AffineElement) -> bool {
    let hull = Hull::of(w);
    let ivl = hull.interval();
    let q: HashMap<AffineElement, u32> = ivl.iter().map(|x| (*x, q_in(&hull, x))).collect();
    let nrs = nrs_set(w);
    ivl.iter().all(|x| {
        let witnessed = q[x] > 0
            || reflections_into(&hull, x).iter().any(|r| {
                let y = r.element().compose(x);
                y.length() > x.length() && q[&y] > 0
            });
        nrs.contains(x) == witnessed
    })
}

/// l(w) minus the largest length of a maximal nrs point; None when rationally smooth.
pub fn nrs_codimension(w: &AffineElement) -> Option<usize> {
    let m = maximal_nrs(w);
    let top = m.iter().map(|z| z.length()).max()?;
    Some(w.length() - top)
}

/// Shell-ring prediction for even-chamber Type 1 owners: 2k on shells
/// 3k..3k+2, frozen once the orbit x R(w) meets the diagonal triangle.
pub fn even_type_one_ring_value(w: &AffineElement, x: &AffineElement) -> Option<u32> {
    let hex = Hexagon::new(w).ok()?;
    if hex.parity() != Parity::Even || w.type_of().ok()? != 1 {
        return None;
    }
    let shell = hex.shell_index(x).ok()?;
    Some(2 * (shell / 3) as u32)
}

pub fn orientation_of(x: &AffineElement) -> Orientation {
    x.center().orientation().expect("alcove centers have an orientation")
}
