//! Bruhat order on W through hexagon membership, with a subexpression
//! oracle kept independent of all geometry.

use std::collections::HashSet;

use serde::Serialize;

use crate::alcove::{
    strip_generators, AffineElement, ChamberId, FiniteRoot, Parity, Point, Reflection, Region,
};
use crate::error::{Error, Result};

/// Every element expressible as a subword of `word`.
pub fn subexpression_set(word: &[u8]) -> HashSet<AffineElement> {
    let mut set = HashSet::new();
    set.insert(AffineElement::identity());
    for &i in word {
        let s = AffineElement::simple(i);
        let grown: Vec<AffineElement> = set.iter().map(|x| x.compose(&s)).collect();
        set.extend(grown);
    }
    set
}

pub fn leq_oracle(x: &AffineElement, w: &AffineElement) -> bool {
    x.length() <= w.length() && subexpression_set(&w.word()).contains(x)
}

/// Per-direction bounds on `Point::string_coord`, one pair per positive root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Slabs([(i64, i64); 3]);

impl Slabs {
    fn of(points: impl Iterator<Item = Point> + Clone) -> Slabs {
        let mut b = [(i64::MAX, i64::MIN); 3];
        for (slot, r) in b.iter_mut().zip(FiniteRoot::POSITIVE) {
            for p in points.clone() {
                let g = p.string_coord(r);
                slot.0 = slot.0.min(g);
                slot.1 = slot.1.max(g);
            }
        }
        Slabs(b)
    }

    fn contains(&self, p: Point) -> bool {
        FiniteRoot::POSITIVE.iter().zip(self.0).all(|(&r, (lo, hi))| {
            let g = p.string_coord(r);
            lo <= g && g <= hi
        })
    }

    fn depth(&self, p: Point) -> Option<i64> {
        if !self.contains(p) {
            return None;
        }
        FiniteRoot::POSITIVE
            .iter()
            .zip(self.0)
            .map(|(&r, (lo, hi))| {
                let g = p.string_coord(r);
                (g - lo).min(hi - g) / 3
            })
            .min()
    }
}

/// The hexagon whose lattice points are the lower interval of a non-spiral element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hexagon {
    pub owner: AffineElement,
    pub chamber: ChamberId,
    /// (a,i), (b,j), (g,k): ccw wall, cw wall, and the nearer g-hyperplane.
    pub hyperplanes: [Reflection; 3],
    /// Counterclockwise from the owner.
    pub vertices: [AffineElement; 6],
    slabs: Slabs,
}

/// The hull of a spiral element: a quadrilateral, or the chain {e, w}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateHull {
    pub owner: AffineElement,
    pub vertices: Vec<AffineElement>,
    slabs: Option<Slabs>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hull {
    Hexagon(Hexagon),
    Degenerate(DegenerateHull),
}

/// The half-strip used as the reference for spiral hulls.
pub const REFERENCE_STRIP: u8 = 4;

impl Hexagon {
    pub fn new(w: &AffineElement) -> Result<Hexagon> {
        let chamber = w.chamber().ok_or_else(|| Error::Spiral(w.word_string()))?;
        let [(a, i), (b, j)] = chamber.walls();
        let g = chamber.gamma();
        let k = if w.center().pairing3(g) > 3 { 1 } else { 0 };
        let ra = Reflection::new(a, i);
        let rb = Reflection::new(b, j);
        let rg = Reflection::new(g, k);
        let (sa, sb, sg) = (ra.element(), rb.element(), rg.element());
        let w1 = sa.compose(w);
        let w5 = sb.compose(w);
        let vertices = [*w, w1, sg.compose(&w1), sg.compose(w), sg.compose(&w5), w5];
        let slabs = Slabs::of(vertices.iter().map(|v| v.center()));
        Ok(Hexagon { owner: *w, chamber, hyperplanes: [ra, rb, rg], vertices, slabs })
    }

    pub fn parity(&self) -> Parity {
        self.chamber.parity()
    }

    pub fn contains(&self, x: &AffineElement) -> bool {
        self.slabs.contains(x.center())
    }

    pub fn contains_point(&self, p: Point) -> bool {
        self.slabs.contains(p)
    }

    /// k such that x lies on the k-shell.
    pub fn shell_index(&self, x: &AffineElement) -> Result<usize> {
        self.slabs
            .depth(x.center())
            .map(|d| d as usize)
            .ok_or_else(|| Error::NotBelow { x: x.to_string(), w: self.owner.to_string() })
    }

    pub fn shell(&self, k: usize) -> Vec<AffineElement> {
        interval_in(&self.slabs, |p| self.slabs.contains(p))
            .into_iter()
            .filter(|x| self.slabs.depth(x.center()) == Some(k as i64))
            .collect()
    }

    /// Alcoves whose centers lie on the edge from vertex `i` to vertex `i+1`,
    /// ordered from vertex `i`.
    pub fn edge(&self, i: usize) -> Vec<AffineElement> {
        segment(self.vertices[i].center(), self.vertices[(i + 1) % 6].center())
    }

    /// Root parallel to the edge from vertex `i` to `i+1`.
    pub fn edge_root(&self, i: usize) -> Option<FiniteRoot> {
        direction_root(self.vertices[i].center(), self.vertices[(i + 1) % 6].center())
    }

    /// The root string through vertex `i` not parallel to its two edges,
    /// clipped to the hexagon and ordered from the vertex inward.
    pub fn diagonal(&self, i: usize) -> Vec<AffineElement> {
        let r = self.diagonal_root(i);
        let start = self.vertices[i].center();
        let step = r.weights();
        let mut out = Vec::new();
        for dir in [1, -1] {
            let mut n = if dir == 1 { 0 } else { -1 };
            loop {
                let p = start.offset(step, n);
                if !self.slabs.contains(p) {
                    break;
                }
                if let Some(x) = AffineElement::from_center(p) {
                    out.push((n.abs(), x));
                }
                n += dir;
            }
        }
        out.sort_by_key(|(n, _)| *n);
        out.into_iter().map(|(_, x)| x).collect()
    }

    pub fn diagonal_root(&self, i: usize) -> FiniteRoot {
        let prev = self.edge_root((i + 5) % 6).map(|r| r.positive().0);
        let next = self.edge_root(i).map(|r| r.positive().0);
        *FiniteRoot::POSITIVE
            .iter()
            .find(|&&r| Some(r) != prev && Some(r) != next)
            .unwrap()
    }

    /// Special segments on the edges w1w2 and w4w5 of an odd-chamber hexagon.
    /// Empty for even chambers.
    pub fn special_segments(&self) -> Vec<SpecialSegment> {
        if self.parity() == Parity::Even {
            return Vec::new();
        }
        [(1usize, 4usize, 5usize), (4, 1, 2)]
            .iter()
            .map(|&(start, near, far)| self.cut_segment(start, near, far))
            .collect()
    }

    /// On edge (start, start+1), the alcoves between the crossings of the
    /// diagonals from `near` (landing by `start`) and `far` (landing by `start+1`).
    fn cut_segment(&self, start: usize, near: usize, far: usize) -> SpecialSegment {
        let alcoves = self.edge(start);
        let origin = self.vertices[start].center();
        let land = |v: usize| -> Option<(i64, i64)> {
            let r = self.diagonal_root(v);
            let e = self.edge_root(start)?.weights();
            let target = self.vertices[v].center().string_coord(r);
            let denom = Point::new(e.0, e.1).string_coord(r);
            let num = target - origin.string_coord(r);
            Some(if denom < 0 { (-num, -denom) } else { (num, denom) })
        };
        let mut inside = Vec::new();
        if let (Some((n1, d1)), Some((n2, d2)), Some(e)) = (land(near), land(far), self.edge_root(start)) {
            let step = e.weights();
            for x in &alcoves {
                let c = x.center();
                let t = if step.0 != 0 { (c.a - origin.a) / step.0 } else { (c.b - origin.b) / step.1 };
                if t * d1 >= n1 && t * d2 <= n2 {
                    inside.push(*x);
                }
            }
        }
        SpecialSegment { carrier: (start, (start + 1) % 6), edge_len: alcoves.len(), alcoves: inside }
    }

    pub fn diagonals_and_special(&self) -> DiagonalData {
        let special = self.special_segments();
        DiagonalData {
            diagonals: (0..6).map(|i| self.diagonal(i)).collect(),
            special_edges: special.iter().map(|s| s.carrier).collect(),
            segments: special,
        }
    }

    pub fn interval(&self) -> Vec<AffineElement> {
        interval_in(&self.slabs, |p| self.slabs.contains(p))
    }
}

/// A stretch of a special edge cut out by the opposite diagonals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialSegment {
    pub carrier: (usize, usize),
    pub edge_len: usize,
    pub alcoves: Vec<AffineElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalData {
    pub diagonals: Vec<Vec<AffineElement>>,
    pub special_edges: Vec<(usize, usize)>,
    pub segments: Vec<SpecialSegment>,
}

impl DegenerateHull {
    pub fn new(w: &AffineElement) -> Result<DegenerateHull> {
        let strip = match w.classify() {
            Region::Chamber(_) => return Err(Error::NotSpiral(w.word_string())),
            Region::IdentityAlcove => None,
            Region::SpiralStrip(id) => Some(id),
        };
        if w.length() <= 1 {
            let mut vertices = vec![*w];
            if !w.is_identity() {
                vertices.push(AffineElement::identity());
            }
            return Ok(DegenerateHull { owner: *w, vertices, slabs: None });
        }
        let strip = strip.expect("spiral of length at least 2 lies in one half-strip");
        let perm = strip_permutation(strip);
        let mut inv = [0u8; 3];
        for (i, &p) in perm.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        let reference = w.permute_generators(inv);
        let s1 = Reflection::new(FiniteRoot::ALPHA1, 0).element();
        let st = Reflection::new(FiniteRoot::ALPHA_TILDE, 0).element();
        let w3 = st.compose(&reference);
        let vertices: Vec<AffineElement> = [reference, s1.compose(&reference), s1.compose(&w3), w3]
            .iter()
            .map(|v| v.permute_generators(perm))
            .collect();
        let slabs = Some(Slabs::of(vertices.iter().map(|v| v.center())));
        Ok(DegenerateHull { owner: *w, vertices, slabs })
    }

    pub fn contains(&self, x: &AffineElement) -> bool {
        match &self.slabs {
            Some(s) => s.contains(x.center()),
            None => self.vertices.contains(x),
        }
    }

    pub fn interval(&self) -> Vec<AffineElement> {
        match &self.slabs {
            Some(s) => interval_in(s, |p| s.contains(p)),
            None => {
                let mut v = self.vertices.clone();
                v.sort_by_key(|x| x.length());
                v
            }
        }
    }

    /// Alcoves on the side from vertex `i` to `i+1` of the quadrilateral.
    pub fn edge(&self, i: usize) -> Vec<AffineElement> {
        let n = self.vertices.len();
        if n < 4 {
            return Vec::new();
        }
        segment(self.vertices[i].center(), self.vertices[(i + 1) % n].center())
    }
}

/// The permutation of generators carrying the reference half-strip onto `strip`.
pub fn strip_permutation(strip: u8) -> [u8; 3] {
    let (i0, j0) = strip_generators(REFERENCE_STRIP);
    let (i, j) = strip_generators(strip);
    let mut perm = [0u8; 3];
    perm[i0 as usize] = i;
    perm[j0 as usize] = j;
    perm[(3 - i0 - j0) as usize] = 3 - i - j;
    perm
}

impl Hull {
    pub fn of(w: &AffineElement) -> Hull {
        if w.is_spiral() {
            Hull::Degenerate(DegenerateHull::new(w).expect("spiral"))
        } else {
            Hull::Hexagon(Hexagon::new(w).expect("non-spiral"))
        }
    }

    pub fn owner(&self) -> AffineElement {
        match self {
            Hull::Hexagon(h) => h.owner,
            Hull::Degenerate(d) => d.owner,
        }
    }

    pub fn contains(&self, x: &AffineElement) -> bool {
        match self {
            Hull::Hexagon(h) => h.contains(x),
            Hull::Degenerate(d) => d.contains(x),
        }
    }

    pub fn vertices(&self) -> Vec<AffineElement> {
        match self {
            Hull::Hexagon(h) => h.vertices.to_vec(),
            Hull::Degenerate(d) => d.vertices.clone(),
        }
    }

    pub fn interval(&self) -> Vec<AffineElement> {
        match self {
            Hull::Hexagon(h) => h.interval(),
            Hull::Degenerate(d) => d.interval(),
        }
    }

    /// Range of pairing3 with `r` over the hull's vertex centers.
    pub fn pairing_range(&self, r: FiniteRoot) -> (i64, i64) {
        let vals: Vec<i64> = self.vertices().iter().map(|v| v.center().pairing3(r)).collect();
        (*vals.iter().min().unwrap(), *vals.iter().max().unwrap())
    }
}

pub fn leq(x: &AffineElement, w: &AffineElement) -> bool {
    Hull::of(w).contains(x)
}

pub fn interval(w: &AffineElement) -> Vec<AffineElement> {
    Hull::of(w).interval()
}

fn interval_in(slabs: &Slabs, keep: impl Fn(Point) -> bool) -> Vec<AffineElement> {
    let [(l1, h1), (l2, h2), _] = slabs.0;
    // g1 = -(a + 2b) and g2 = 2a + b.
    let corners = [(l1, l2), (l1, h2), (h1, l2), (h1, h2)];
    let a_vals: Vec<i64> = corners.iter().map(|&(g1, g2)| (2 * g2 + g1).div_euclid(3)).collect();
    let b_vals: Vec<i64> = corners.iter().map(|&(g1, g2)| (-g2 - 2 * g1).div_euclid(3)).collect();
    let (amin, amax) = (*a_vals.iter().min().unwrap() - 1, *a_vals.iter().max().unwrap() + 1);
    let (bmin, bmax) = (*b_vals.iter().min().unwrap() - 1, *b_vals.iter().max().unwrap() + 1);
    let mut out = Vec::new();
    for a in amin..=amax {
        for b in bmin..=bmax {
            let p = Point::new(a, b);
            if p.is_center() && keep(p) {
                out.push(AffineElement::from_center(p).expect("center"));
            }
        }
    }
    out.sort_by_cached_key(|x| (x.length(), x.word()));
    out
}

/// Root whose weight vector is a positive multiple of q - p.
pub fn direction_root(p: Point, q: Point) -> Option<FiniteRoot> {
    let (da, db) = (q.a - p.a, q.b - p.b);
    if (da, db) == (0, 0) {
        return None;
    }
    [FiniteRoot::ALPHA1, FiniteRoot::ALPHA2, FiniteRoot::ALPHA_TILDE]
        .iter()
        .flat_map(|&r| [r, -r])
        .find(|r| {
            let (x, y) = r.weights();
            x * db == y * da && x * da + y * db > 0
        })
}

/// Alcove centers on the closed segment from p to q, ordered from p.
pub fn segment(p: Point, q: Point) -> Vec<AffineElement> {
    let Some(r) = direction_root(p, q) else {
        return AffineElement::from_center(p).into_iter().collect();
    };
    let step = r.weights();
    let n = if step.0 != 0 { (q.a - p.a) / step.0 } else { (q.b - p.b) / step.1 };
    (0..=n).filter_map(|t| AffineElement::from_center(p.offset(step, t))).collect()
}

#[derive(Serialize)]
struct HyperplaneJson {
    root: &'static str,
    level: i64,
}

#[derive(Serialize)]
struct HexagonJson {
    owner: AffineElement,
    chamber: String,
    hyperplanes: Vec<HyperplaneJson>,
    vertices: Vec<AffineElement>,
}

impl Serialize for Hexagon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HexagonJson {
            owner: self.owner,
            chamber: self.chamber.to_string(),
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|r| HyperplaneJson { root: r.root.name(), level: r.level })
                .collect(),
            vertices: self.vertices.to_vec(),
        }
        .serialize(s)
    }
}
