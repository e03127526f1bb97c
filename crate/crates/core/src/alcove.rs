//! The affine Weyl group of type A2 acting on the plane.
//!
//! Points are stored scaled by three in the two simple-root pairings, so
//! every center, vertex and reflection used here has integer coordinates.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the six roots, as coefficients in the simple-root basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteRoot {
    c1: i64,
    c2: i64,
}

impl FiniteRoot {
    pub const ALPHA1: FiniteRoot = FiniteRoot { c1: 1, c2: 0 };
    pub const ALPHA2: FiniteRoot = FiniteRoot { c1: 0, c2: 1 };
    pub const ALPHA_TILDE: FiniteRoot = FiniteRoot { c1: 1, c2: 1 };
    pub const POSITIVE: [FiniteRoot; 3] = [Self::ALPHA1, Self::ALPHA2, Self::ALPHA_TILDE];

    pub fn new(c1: i64, c2: i64) -> Result<Self> {
        let ok = matches!((c1, c2), (1, 0) | (-1, 0) | (0, 1) | (0, -1) | (1, 1) | (-1, -1));
        if ok {
            Ok(FiniteRoot { c1, c2 })
        } else {
            Err(Error::InvalidRoot(c1, c2))
        }
    }

    pub fn coeffs(self) -> (i64, i64) {
        (self.c1, self.c2)
    }

    pub fn is_positive(self) -> bool {
        self.c1 >= 0 && self.c2 >= 0
    }

    /// The positive root on the same line, with the sign relating them.
    pub fn positive(self) -> (FiniteRoot, i64) {
        if self.is_positive() {
            (self, 1)
        } else {
            (-self, -1)
        }
    }

    /// Unscaled pairings ((r, a1), (r, a2)); also the step between
    /// adjacent lattice points along an r-string in scaled coordinates.
    pub fn weights(self) -> (i64, i64) {
        (2 * self.c1 - self.c2, 2 * self.c2 - self.c1)
    }

    pub fn name(self) -> &'static str {
        match (self.c1, self.c2) {
            (1, 0) => "a1",
            (-1, 0) => "-a1",
            (0, 1) => "a2",
            (0, -1) => "-a2",
            (1, 1) => "at",
            _ => "-at",
        }
    }
}

impl Neg for FiniteRoot {
    type Output = FiniteRoot;
    fn neg(self) -> FiniteRoot {
        FiniteRoot { c1: -self.c1, c2: -self.c2 }
    }
}

impl fmt::Display for FiniteRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point v stored as (3(v,a1), 3(v,a2)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Up,
    Down,
}

impl Point {
    /// Center of the fundamental alcove.
    pub const Q: Point = Point { a: 1, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Point { a, b }
    }

    /// Three times the pairing with `r`.
    pub fn pairing3(self, r: FiniteRoot) -> i64 {
        let (c1, c2) = r.coeffs();
        c1 * self.a + c2 * self.b
    }

    pub fn is_center(self) -> bool {
        self.a.rem_euclid(3) != 0 && (self.a - self.b).rem_euclid(3) == 0
    }

    pub fn orientation(self) -> Option<Orientation> {
        if !self.is_center() {
            return None;
        }
        Some(if self.a.rem_euclid(3) == 1 { Orientation::Up } else { Orientation::Down })
    }

    /// A linear functional constant along lines parallel to `r`. Its value
    /// at a lattice point is a multiple of 3; consecutive r-strings differ by 3.
    pub fn string_coord(self, r: FiniteRoot) -> i64 {
        let (x, y) = r.weights();
        y * self.a - x * self.b
    }

    /// Reflection across H_{r,k}.
    pub fn reflect(self, r: FiniteRoot, k: i64) -> Point {
        let d = self.pairing3(r) - 3 * k;
        let (x, y) = r.weights();
        Point { a: self.a - d * x, b: self.b - d * y }
    }

    pub fn offset(self, step: (i64, i64), n: i64) -> Point {
        Point { a: self.a + n * step.0, b: self.b + n * step.1 }
    }

    /// Euclidean coordinates in units of the alcove edge, with a1 at -30
    /// degrees and a2 vertical.
    pub fn plane(self) -> (f64, f64) {
        let x = (2 * self.a + self.b) as f64 / 6.0;
        let y = self.b as f64 * 3f64.sqrt() / 6.0;
        (x, y)
    }
}

type Mat = [[i64; 2]; 2];

const IDENTITY_MAT: Mat = [[1, 0], [0, 1]];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut m = [[0; 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

fn mat_vec(a: &Mat, v: [i64; 2]) -> [i64; 2] {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

fn mat_inv(a: &Mat) -> Mat {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    debug_assert!(det == 1 || det == -1);
    [[a[1][1] * det, -a[0][1] * det], [-a[1][0] * det, a[0][0] * det]]
}

fn reflection_mat(r: FiniteRoot) -> Mat {
    let (c1, c2) = r.coeffs();
    let (g1, g2) = r.weights();
    [[1 - c1 * g1, -c1 * g2], [-c2 * g1, 1 - c2 * g2]]
}

/// Reduced words of the six finite Weyl group elements, in a fixed order.
const FINITE_WORDS: [&[u8]; 6] = [&[], &[1], &[2], &[1, 2], &[2, 1], &[1, 2, 1]];
const FINITE_NAMES: [&str; 6] = ["e", "s1", "s2", "s1s2", "s2s1", "s1s2s1"];

/// An element t(lambda) f of the affine Weyl group. `lam` is in root
/// coordinates; `f` acts on root coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    lam: [i64; 2],
    f: Mat,
}

impl Default for AffineElement {
    fn default() -> Self {
        Self::identity()
    }
}

impl AffineElement {
    pub fn identity() -> Self {
        AffineElement { lam: [0, 0], f: IDENTITY_MAT }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn translation(root_coeffs: (i64, i64)) -> Self {
        AffineElement { lam: [root_coeffs.0, root_coeffs.1], f: IDENTITY_MAT }
    }

    pub fn translation_by(r: FiniteRoot, n: i64) -> Self {
        let (c1, c2) = r.coeffs();
        Self::translation((n * c1, n * c2))
    }

    /// The simple reflection s_i; s_0 is the reflection across H_{at,1}.
    pub fn simple(i: u8) -> Self {
        match i {
            0 => Reflection { root: FiniteRoot::ALPHA_TILDE, level: 1 }.element(),
            1 => AffineElement { lam: [0, 0], f: reflection_mat(FiniteRoot::ALPHA1) },
            2 => AffineElement { lam: [0, 0], f: reflection_mat(FiniteRoot::ALPHA2) },
            _ => panic!("simple index {i} out of range"),
        }
    }

    pub fn translation_part(&self) -> (i64, i64) {
        (self.lam[0], self.lam[1])
    }

    pub fn finite_part(&self) -> AffineElement {
        AffineElement { lam: [0, 0], f: self.f }
    }

    pub fn finite_name(&self) -> &'static str {
        let idx = FINITE_WORDS
            .iter()
            .position(|w| AffineElement::from_word(w).f == self.f)
            .expect("finite part is one of six matrices");
        FINITE_NAMES[idx]
    }

    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        let shifted = mat_vec(&self.f, other.lam);
        AffineElement {
            lam: [self.lam[0] + shifted[0], self.lam[1] + shifted[1]],
            f: mat_mul(&self.f, &other.f),
        }
    }

    pub fn inverse(&self) -> AffineElement {
        let inv = mat_inv(&self.f);
        let l = mat_vec(&inv, self.lam);
        AffineElement { lam: [-l[0], -l[1]], f: inv }
    }

    pub fn act(&self, p: Point) -> Point {
        let b = mat_inv(&self.f);
        let a = b[0][0] * p.a + b[1][0] * p.b;
        let bb = b[0][1] * p.a + b[1][1] * p.b;
        let (l1, l2) = (self.lam[0], self.lam[1]);
        Point { a: a + 3 * (2 * l1 - l2), b: bb + 3 * (2 * l2 - l1) }
    }

    /// Image of a finite root under the finite part.
    pub fn act_root(&self, r: FiniteRoot) -> FiniteRoot {
        let (c1, c2) = r.coeffs();
        let v = mat_vec(&self.f, [c1, c2]);
        FiniteRoot { c1: v[0], c2: v[1] }
    }

    /// The alcove center wq.
    pub fn center(&self) -> Point {
        self.act(Point::Q)
    }

    /// The unique element whose alcove center is `p`, if `p` is a center.
    pub fn from_center(p: Point) -> Option<AffineElement> {
        if !p.is_center() {
            return None;
        }
        for word in FINITE_WORDS {
            let f = AffineElement::from_word(word);
            let fq = f.center();
            let (d1, d2) = (p.a - fq.a, p.b - fq.b);
            if d1 % 3 != 0 || d2 % 3 != 0 {
                continue;
            }
            let (e1, e2) = (d1 / 3, d2 / 3);
            let (n1, n2) = (2 * e1 + e2, e1 + 2 * e2);
            if n1 % 3 == 0 && n2 % 3 == 0 {
                return Some(AffineElement { lam: [n1 / 3, n2 / 3], f: f.f });
            }
        }
        None
    }

    pub fn length(&self) -> usize {
        let p = self.center();
        FiniteRoot::POSITIVE
            .iter()
            .map(|&r| {
                let u = Point::Q.pairing3(r);
                let v = p.pairing3(r);
                (u.div_euclid(3) - v.div_euclid(3)).unsigned_abs() as usize
            })
            .sum()
    }

    pub fn from_word(word: &[u8]) -> AffineElement {
        word.iter()
            .fold(Self::identity(), |acc, &i| acc.compose(&Self::simple(i)))
    }

    /// Parses a digit string over {0,1,2}. The empty string and "e" are the identity.
    pub fn parse(s: &str) -> Result<AffineElement> {
        Ok(Self::from_word(&parse_word(s)?))
    }

    pub fn right_descents(&self) -> Vec<u8> {
        let l = self.length();
        (0..3).filter(|&i| self.compose(&Self::simple(i)).length() < l).collect()
    }

    pub fn left_descents(&self) -> Vec<u8> {
        let l = self.length();
        (0..3).filter(|&i| Self::simple(i).compose(self).length() < l).collect()
    }

    /// Reduced word, built by repeatedly stripping the smallest right descent.
    pub fn word(&self) -> Vec<u8> {
        let mut w = *self;
        let mut out = Vec::with_capacity(self.length());
        while !w.is_identity() {
            let i = w.right_descents()[0];
            out.push(i);
            w = w.compose(&Self::simple(i));
        }
        out.reverse();
        out
    }

    pub fn word_string(&self) -> String {
        word_string(&self.word())
    }

    /// The form "(l1, l2; finite part)".
    pub fn canonical_string(&self) -> String {
        format!("({}, {}; {})", self.lam[0], self.lam[1], self.finite_name())
    }

    pub fn classify(&self) -> Region {
        classify_point(self.center())
    }

    /// True for elements whose alcove lies in a fundamental root strip,
    /// including the identity.
    pub fn is_spiral(&self) -> bool {
        !matches!(self.classify(), Region::Chamber(_))
    }

    pub fn is_twisted_spiral(&self) -> bool {
        if self.is_spiral() {
            return false;
        }
        let l = self.length();
        (0..3).any(|i| {
            let z = self.compose(&Self::simple(i));
            let lz = z.length();
            lz + 1 == l && lz.is_multiple_of(2) && lz > 0 && z.is_spiral()
        })
    }

    /// Number of simple s with w < ws.
    pub fn type_of(&self) -> Result<u8> {
        if self.is_identity() {
            return Err(Error::IdentityHasNoType);
        }
        Ok(3 - self.right_descents().len() as u8)
    }

    pub fn chamber(&self) -> Option<ChamberId> {
        match self.classify() {
            Region::Chamber(c) => Some(c),
            _ => None,
        }
    }

    /// t(a)w where a is the root pointing into w's chamber.
    pub fn translate_into_chamber(&self) -> Result<AffineElement> {
        let c = self.chamber().ok_or_else(|| Error::Spiral(self.word_string()))?;
        Ok(AffineElement::translation_by(c.root(), 1).compose(self))
    }

    /// t(-a)w; the inverse of `translate_into_chamber`.
    pub fn translate_out_of_chamber(&self) -> Result<AffineElement> {
        let c = self.chamber().ok_or_else(|| Error::Spiral(self.word_string()))?;
        Ok(AffineElement::translation_by(c.root(), -1).compose(self))
    }

    /// Relabels generators by a permutation of {0,1,2}; every such
    /// permutation is a diagram automorphism.
    pub fn permute_generators(&self, perm: [u8; 3]) -> AffineElement {
        let word: Vec<u8> = self.word().iter().map(|&i| perm[i as usize]).collect();
        Self::from_word(&word)
    }

    /// The parabolic subgroup generated by the right descents.
    pub fn right_parabolic(&self) -> Vec<AffineElement> {
        parabolic(&self.right_descents())
    }

    /// The parabolic subgroup generated by the left descents.
    pub fn left_parabolic(&self) -> Vec<AffineElement> {
        parabolic(&self.left_descents())
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.word_string();
        if s.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&s)
        }
    }
}

impl Serialize for AffineElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.word_string())
    }
}

impl<'de> Deserialize<'de> for AffineElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        AffineElement::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub fn parse_word(s: &str) -> Result<Vec<u8>> {
    let s = s.trim();
    if s == "e" {
        return Ok(Vec::new());
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            '2' => Ok(2),
            _ => Err(Error::ParseWord(c)),
        })
        .collect()
}

pub fn word_string(word: &[u8]) -> String {
    word.iter().map(|i| char::from(b'0' + i)).collect()
}

fn parabolic(gens: &[u8]) -> Vec<AffineElement> {
    let mut out = vec![AffineElement::identity()];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &g in gens {
            let y = x.compose(&AffineElement::simple(g));
            if !out.contains(&y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// The affine reflection across H_{root,level}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Reflection {
    pub root: FiniteRoot,
    pub level: i64,
}

impl Reflection {
    /// Normalizes to a positive root: s_{-a,k} = s_{a,-k}.
    pub fn new(root: FiniteRoot, level: i64) -> Self {
        let (r, sign) = root.positive();
        Reflection { root: r, level: sign * level }
    }

    /// s_{a,k} = t(k a) s_a.
    pub fn element(&self) -> AffineElement {
        let s = AffineElement { lam: [0, 0], f: reflection_mat(self.root) };
        AffineElement::translation_by(self.root, self.level).compose(&s)
    }

    /// All reflections of the given root family whose levels lie in `range`.
    pub fn family(root: FiniteRoot, range: std::ops::RangeInclusive<i64>) -> impl Iterator<Item = Reflection> {
        range.map(move |k| Reflection::new(root, k))
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s({},{})", self.root, self.level)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChamberId {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl ChamberId {
    pub const ALL: [ChamberId; 6] =
        [ChamberId::I, ChamberId::II, ChamberId::III, ChamberId::IV, ChamberId::V, ChamberId::VI];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn parity(self) -> Parity {
        if self.index().is_multiple_of(2) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// The root a with t(a) mapping the chamber into itself.
    pub fn root(self) -> FiniteRoot {
        match self {
            ChamberId::I => FiniteRoot::ALPHA_TILDE,
            ChamberId::II => FiniteRoot::ALPHA2,
            ChamberId::III => -FiniteRoot::ALPHA1,
            ChamberId::IV => -FiniteRoot::ALPHA_TILDE,
            ChamberId::V => -FiniteRoot::ALPHA2,
            ChamberId::VI => FiniteRoot::ALPHA1,
        }
    }

    /// Walls (root, level) of the chamber, counterclockwise wall first.
    pub fn walls(self) -> [(FiniteRoot, i64); 2] {
        use FiniteRoot as R;
        match self {
            ChamberId::I => [(R::ALPHA1, 1), (R::ALPHA2, 1)],
            ChamberId::II => [(R::ALPHA_TILDE, 1), (R::ALPHA1, 0)],
            ChamberId::III => [(R::ALPHA2, 1), (R::ALPHA_TILDE, 0)],
            ChamberId::IV => [(R::ALPHA1, 0), (R::ALPHA2, 0)],
            ChamberId::V => [(R::ALPHA_TILDE, 0), (R::ALPHA1, 1)],
            ChamberId::VI => [(R::ALPHA2, 0), (R::ALPHA_TILDE, 1)],
        }
    }

    /// The positive root not used by either wall.
    pub fn gamma(self) -> FiniteRoot {
        let [(a, _), (b, _)] = self.walls();
        *FiniteRoot::POSITIVE.iter().find(|&&r| r != a && r != b).unwrap()
    }

    /// Ids of the two half-strips bounding the chamber (clockwise side first).
    pub fn boundary_strips(self) -> [u8; 2] {
        let i = self.index() as u8;
        [i + 1, (i + 1) % 6 + 1]
    }

    pub fn roman(self) -> &'static str {
        ["I", "II", "III", "IV", "V", "VI"][self.index()]
    }
}

impl fmt::Display for ChamberId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

/// Where an alcove sits relative to the fundamental root strips.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    IdentityAlcove,
    /// Half-strip ids 1..=6 run counterclockwise from the one pointing east.
    SpiralStrip(u8),
    Chamber(ChamberId),
}

impl Region {
    pub fn parity(self) -> Option<Parity> {
        match self {
            Region::Chamber(c) => Some(c.parity()),
            _ => None,
        }
    }
}

/// Half-strip ids containing the alcove center `p`, in increasing order.
pub fn strips_of(p: Point) -> Vec<u8> {
    let mut ids = Vec::new();
    let in_strip = |r: FiniteRoot| {
        let v = p.pairing3(r);
        0 < v && v < 3
    };
    if in_strip(FiniteRoot::ALPHA2) {
        ids.push(if 2 * p.a + p.b > 3 { 1 } else { 4 });
    }
    if in_strip(FiniteRoot::ALPHA1) {
        ids.push(if p.a + 2 * p.b > 3 { 2 } else { 5 });
    }
    if in_strip(FiniteRoot::ALPHA_TILDE) {
        ids.push(if p.b > p.a { 3 } else { 6 });
    }
    ids.sort_unstable();
    ids
}

pub fn classify_point(p: Point) -> Region {
    if p == Point::Q {
        return Region::IdentityAlcove;
    }
    if let Some(&id) = strips_of(p).first() {
        return Region::SpiralStrip(id);
    }
    let sign = |r: FiniteRoot| p.pairing3(r) > 0;
    let s = (sign(FiniteRoot::ALPHA1), sign(FiniteRoot::ALPHA2), sign(FiniteRoot::ALPHA_TILDE));
    let c = match s {
        (true, true, true) => ChamberId::I,
        (false, true, true) => ChamberId::II,
        (false, true, false) => ChamberId::III,
        (false, false, false) => ChamberId::IV,
        (true, false, false) => ChamberId::V,
        (true, false, true) => ChamberId::VI,
        _ => unreachable!("sign pattern (+,+,-) or (-,-,+) is impossible"),
    };
    Region::Chamber(c)
}

/// Label a with `neighbor = w s_a`.
pub fn wall_label(w: &AffineElement, neighbor: &AffineElement) -> Result<u8> {
    (0..3)
        .find(|&a| w.compose(&AffineElement::simple(a)) == *neighbor)
        .ok_or_else(|| Error::NotAdjacent(w.to_string(), neighbor.to_string()))
}

/// The spiral element of length `len` in the half-strip whose reduced
/// words begin s_i s_j.
pub fn spiral_element(i: u8, j: u8, len: usize) -> AffineElement {
    let k = 3 - i - j;
    let cycle = [i, j, k];
    let word: Vec<u8> = (0..len).map(|n| cycle[n % 3]).collect();
    AffineElement::from_word(&word)
}

/// The ordered generator pair (i, j) whose spirals fill half-strip `id`.
pub fn strip_generators(id: u8) -> (u8, u8) {
    for i in 0..3 {
        for j in 0..3 {
            if i != j && spiral_element(i, j, 2).classify() == Region::SpiralStrip(id) {
                return (i, j);
            }
        }
    }
    unreachable!("every half-strip holds a length-2 spiral")
}

/// Two factorizations w = uv with u, v spiral and lengths adding, one for
/// each half-strip bounding w's chamber. u is the longest such prefix.
pub fn spiral_factorizations(w: &AffineElement) -> Result<[(AffineElement, AffineElement); 2]> {
    let c = w.chamber().ok_or_else(|| Error::Spiral(w.word_string()))?;
    let l = w.length();
    let mut out = Vec::with_capacity(2);
    for id in c.boundary_strips() {
        let (i, j) = strip_generators(id);
        let best = (0..=l)
            .rev()
            .map(|n| spiral_element(i, j, n))
            .find_map(|u| {
                let v = u.inverse().compose(w);
                (v.is_spiral() && u.length() + v.length() == l).then_some((u, v))
            })
            .expect("the trivial factorization e * w is excluded only for spiral w");
        out.push(best);
    }
    Ok([out[0], out[1]])
}

/// Every element of length at most `max_len`, ordered by length then word.
pub fn elements_up_to(max_len: usize) -> Vec<AffineElement> {
    let mut layers: Vec<Vec<AffineElement>> = vec![vec![AffineElement::identity()]];
    let mut seen = std::collections::HashSet::new();
    seen.insert(AffineElement::identity());
    for n in 1..=max_len {
        let mut next = Vec::new();
        for w in &layers[n - 1] {
            for i in 0..3 {
                let y = w.compose(&AffineElement::simple(i));
                if y.length() == n && seen.insert(y) {
                    next.push(y);
                }
            }
        }
        next.sort_by_key(|w| w.word());
        layers.push(next);
    }
    layers.into_iter().flatten().collect()
}
