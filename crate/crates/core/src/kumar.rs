//! Affine real roots, the sets Psi^w_x, equivariant multiplicities and
//! Kumar's smoothness criterion.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::alcove::{AffineElement, FiniteRoot, Point, Reflection};
use crate::bruhat::{leq, Hull};
use crate::error::{Error, Result};
use crate::qstat::reflections_into;

/// A real root a0 b0 + a1 b1 + a2 b2 of the affine root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RealRoot([i64; 3]);

impl RealRoot {
    pub fn new(a0: i64, a1: i64, a2: i64) -> Result<RealRoot> {
        if FiniteRoot::new(a1 - a0, a2 - a0).is_err() {
            return Err(Error::NotReal(a0, a1, a2));
        }
        Ok(RealRoot([a0, a1, a2]))
    }

    pub fn simple(i: u8) -> RealRoot {
        let mut c = [0; 3];
        c[i as usize] = 1;
        RealRoot(c)
    }

    /// alpha + n delta, with delta = b0 + b1 + b2.
    pub fn from_parts(alpha: FiniteRoot, n: i64) -> RealRoot {
        let (c1, c2) = alpha.coeffs();
        RealRoot([n, n + c1, n + c2])
    }

    pub fn coeffs(self) -> [i64; 3] {
        self.0
    }

    pub fn finite(self) -> FiniteRoot {
        let [a0, a1, a2] = self.0;
        FiniteRoot::new(a1 - a0, a2 - a0).expect("real root")
    }

    /// The coefficient of delta.
    pub fn level(self) -> i64 {
        self.0[0]
    }

    pub fn is_positive(self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl Neg for RealRoot {
    type Output = RealRoot;
    fn neg(self) -> RealRoot {
        RealRoot(self.0.map(|c| -c))
    }
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&linear_string(self.0))
    }
}

pub fn simple_root_action(i: u8, r: RealRoot) -> RealRoot {
    let i = i as usize;
    let mut c = r.0;
    let others: i64 = (0..3).filter(|&j| j != i).map(|j| c[j]).sum();
    c[i] = others - c[i];
    RealRoot(c)
}

/// The action of s_{i_1} ... s_{i_k} on a root.
pub fn word_action(word: &[u8], r: RealRoot) -> RealRoot {
    word.iter().rev().fold(r, |acc, &i| simple_root_action(i, acc))
}

/// w(r), from the finite part of w and the conjugate reflection.
pub fn element_action(w: &AffineElement, r: RealRoot) -> RealRoot {
    let fin = w.act_root(r.finite());
    let refl = reflection_of(if r.is_positive() { r } else { -r }).expect("positive");
    let conj = w.compose(&refl.element()).compose(&w.inverse());
    let (pos, _) = fin.positive();
    let level = conj.act(Point::new(0, 0)).pairing3(pos) / 6;
    let root = root_of(Reflection::new(pos, level));
    if root.finite() == fin {
        root
    } else {
        -root
    }
}

/// alpha + n delta corresponds to s_{alpha,-n}.
pub fn reflection_of(r: RealRoot) -> Result<Reflection> {
    if !r.is_positive() {
        let [a0, a1, a2] = r.0;
        return Err(Error::NotPositive(a0, a1, a2));
    }
    Ok(Reflection::new(r.finite(), -r.level()))
}

/// The positive real root of a reflection.
pub fn root_of(s: Reflection) -> RealRoot {
    let r = RealRoot::from_parts(s.root, -s.level);
    if r.is_positive() {
        r
    } else {
        -r
    }
}

/// Positive real roots b with s_b x <= w, sorted.
pub fn psi_set(w: &AffineElement, x: &AffineElement) -> Result<Vec<RealRoot>> {
    let hull = Hull::of(w);
    psi_in(&hull, x)
}

fn psi_in(hull: &Hull, x: &AffineElement) -> Result<Vec<RealRoot>> {
    if !hull.contains(x) {
        return Err(Error::NotBelow { x: x.to_string(), w: hull.owner().to_string() });
    }
    let mut out: Vec<RealRoot> = reflections_into(hull, x).into_iter().map(root_of).collect();
    out.sort();
    Ok(out)
}

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow)
}

/// Integer polynomial in b0, b1, b2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<[u32; 3], i128>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: i128) -> Poly {
        Poly::monomial([0, 0, 0], c)
    }

    pub fn var(i: u8) -> Poly {
        let mut e = [0; 3];
        e[i as usize] = 1;
        Poly::monomial(e, 1)
    }

    pub fn monomial(exps: [u32; 3], c: i128) -> Poly {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        Poly { terms }
    }

    pub fn linear(c: [i64; 3]) -> Poly {
        (0..3u8).fold(Poly::zero(), |acc, i| acc + Poly::var(i) * Poly::constant(c[i as usize] as i128))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 3], i128)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = checked(terms.get(e).copied().unwrap_or(0).checked_add(*c))?;
            if v == 0 {
                terms.remove(e);
            } else {
                terms.insert(*e, v);
            }
        }
        Ok(Poly { terms })
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        let mut out: BTreeMap<[u32; 3], i128> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                let prod = checked(c1.checked_mul(*c2))?;
                let slot = out.entry(e).or_insert(0);
                *slot = checked(slot.checked_add(prod))?;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(Poly { terms: out })
    }

    pub fn try_neg(&self) -> Result<Poly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(*e, checked(c.checked_neg())?);
        }
        Ok(Poly { terms })
    }

    /// Exact quotient by a primitive linear form, if it divides.
    pub fn div_linear(&self, form: [i64; 3]) -> Option<Poly> {
        let v = form.iter().position(|&c| c != 0)?;
        let cv = form[v] as i128;
        let key = |e: &[u32; 3]| (e[v], e[(v + 1) % 3], e[(v + 2) % 3]);
        let lin = Poly::linear(form);
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some((e, c)) = rem.terms.iter().max_by_key(|(e, _)| key(e)).map(|(e, c)| (*e, *c)) {
            if e[v] == 0 || c % cv != 0 {
                return None;
            }
            let mut qe = e;
            qe[v] -= 1;
            let q = Poly::monomial(qe, c / cv);
            rem = rem.try_add(&q.try_mul(&lin).ok()?.try_neg().ok()?).ok()?;
            quo = quo.try_add(&q).ok()?;
        }
        Some(quo)
    }

    /// p(images[0], images[1], images[2]).
    pub fn substitute(&self, images: &[Poly; 3]) -> Result<Poly> {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(*c);
            for i in 0..3 {
                for _ in 0..e[i] {
                    t = t.try_mul(&images[i])?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    pub fn apply_simple(&self, i: u8) -> Result<Poly> {
        let images = [0u8, 1, 2].map(|j| Poly::linear(simple_root_action(i, RealRoot::simple(j)).0));
        self.substitute(&images)
    }

    /// Terms in graded lexicographic order, largest first.
    fn sorted_terms(&self) -> Vec<([u32; 3], i128)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(e, _)| std::cmp::Reverse((e[0] + e[1] + e[2], *e)));
        v
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        self.try_add(&rhs).expect("polynomial overflow")
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.try_mul(&rhs).expect("polynomial overflow")
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.try_neg().expect("polynomial overflow")
    }
}

fn monomial_string(e: [u32; 3]) -> String {
    let parts: Vec<String> = (0..3)
        .filter(|&i| e[i] > 0)
        .map(|i| if e[i] == 1 { format!("b{i}") } else { format!("b{i}^{}", e[i]) })
        .collect();
    parts.join("*")
}

fn signed_join(terms: impl Iterator<Item = (i128, String)>) -> String {
    let mut out = String::new();
    for (k, (c, mono)) in terms.enumerate() {
        let body = match (c.unsigned_abs(), mono.is_empty()) {
            (a, true) => a.to_string(),
            (1, false) => mono,
            (a, false) => format!("{a}*{mono}"),
        };
        match (k, c < 0) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn linear_string(c: [i64; 3]) -> String {
    signed_join((0..3).filter(|&i| c[i] != 0).map(|i| (c[i] as i128, format!("b{i}"))))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&signed_join(self.sorted_terms().into_iter().map(|(e, c)| (c, monomial_string(e)))))
    }
}

/// An exact rational function: a polynomial over a product of linear forms.
#[derive(Clone, Debug)]
pub struct RationalNF {
    num: Poly,
    den: Vec<[i64; 3]>,
}

/// Flips a form so its first nonzero coefficient is positive.
fn normalize_form(c: [i64; 3]) -> ([i64; 3], bool) {
    match c.iter().find(|&&v| v != 0) {
        Some(&v) if v < 0 => (c.map(|x| -x), true),
        _ => (c, false),
    }
}

fn multiset_minus(a: &[[i64; 3]], b: &[[i64; 3]]) -> Vec<[i64; 3]> {
    let mut rest = b.to_vec();
    let mut out = Vec::new();
    for f in a {
        if let Some(i) = rest.iter().position(|g| g == f) {
            rest.swap_remove(i);
        } else {
            out.push(*f);
        }
    }
    out
}

fn product(forms: &[[i64; 3]]) -> Result<Poly> {
    forms.iter().try_fold(Poly::constant(1), |acc, f| acc.try_mul(&Poly::linear(*f)))
}

impl RationalNF {
    pub fn zero() -> RationalNF {
        RationalNF { num: Poly::zero(), den: Vec::new() }
    }

    pub fn one() -> RationalNF {
        RationalNF::from_poly(Poly::constant(1))
    }

    pub fn from_poly(p: Poly) -> RationalNF {
        RationalNF { num: p, den: Vec::new() }
    }

    pub fn reciprocal(r: RealRoot) -> RationalNF {
        RationalNF::new(Poly::constant(1), vec![r])
    }

    pub fn new(num: Poly, den: Vec<RealRoot>) -> RationalNF {
        Self::try_new(num, den.into_iter().map(|r| r.0).collect()).expect("polynomial overflow")
    }

    pub fn try_new(mut num: Poly, den: Vec<[i64; 3]>) -> Result<RationalNF> {
        let mut forms = Vec::with_capacity(den.len());
        for f in den {
            let (g, flip) = normalize_form(f);
            if g == [0, 0, 0] {
                return Err(Error::SetupHypothesis("zero linear form in a denominator"));
            }
            if flip {
                num = num.try_neg()?;
            }
            forms.push(g);
        }
        let mut out = RationalNF { num, den: forms };
        out.reduce();
        Ok(out)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut kept = Vec::with_capacity(self.den.len());
        for f in std::mem::take(&mut self.den) {
            match self.num.div_linear(f) {
                Some(q) => self.num = q,
                None => kept.push(f),
            }
        }
        kept.sort();
        self.den = kept;
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &[[i64; 3]] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn try_add(&self, other: &RationalNF) -> Result<RationalNF> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let extra_self = multiset_minus(&other.den, &self.den);
        let extra_other = multiset_minus(&self.den, &other.den);
        let a = self.num.try_mul(&product(&extra_self)?)?;
        let b = other.num.try_mul(&product(&extra_other)?)?;
        let mut den = self.den.clone();
        den.extend(extra_self);
        Self::try_new(a.try_add(&b)?, den)
    }

    pub fn try_mul(&self, other: &RationalNF) -> Result<RationalNF> {
        let mut den = self.den.clone();
        den.extend_from_slice(&other.den);
        Self::try_new(self.num.try_mul(&other.num)?, den)
    }

    /// a/D == b/E by comparing a * prod(E) with b * prod(D).
    pub fn cross_equal(&self, other: &RationalNF) -> bool {
        let lhs = product(&other.den).and_then(|p| self.num.try_mul(&p));
        let rhs = product(&self.den).and_then(|p| other.num.try_mul(&p));
        matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
    }

    /// The action of s_i on the root variables.
    pub fn apply_simple(&self, i: u8) -> RationalNF {
        let num = self.num.apply_simple(i).expect("polynomial overflow");
        let den = self.den.iter().map(|f| Self::act_form(i, *f)).collect();
        Self::try_new(num, den).expect("polynomial overflow")
    }

    fn act_form(i: u8, f: [i64; 3]) -> [i64; 3] {
        simple_root_action(i, RealRoot(f)).0
    }
}

impl PartialEq for RationalNF {
    fn eq(&self, other: &Self) -> bool {
        self.cross_equal(other)
    }
}

impl Eq for RationalNF {}

impl Add for RationalNF {
    type Output = RationalNF;
    fn add(self, rhs: RationalNF) -> RationalNF {
        self.try_add(&rhs).expect("polynomial overflow")
    }
}

impl Sub for RationalNF {
    type Output = RationalNF;
    fn sub(self, rhs: RationalNF) -> RationalNF {
        self + (-rhs)
    }
}

impl Mul for RationalNF {
    type Output = RationalNF;
    fn mul(self, rhs: RationalNF) -> RationalNF {
        self.try_mul(&rhs).expect("polynomial overflow")
    }
}

impl Neg for RationalNF {
    type Output = RationalNF;
    fn neg(self) -> RationalNF {
        RationalNF { num: -self.num, den: self.den }
    }
}

impl fmt::Display for RationalNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string();
        if self.den.is_empty() {
            return f.write_str(&num);
        }
        let mut counts: Vec<([i64; 3], usize)> = Vec::new();
        for d in &self.den {
            match counts.last_mut() {
                Some((g, n)) if g == d => *n += 1,
                _ => counts.push((*d, 1)),
            }
        }
        let den: String = counts
            .iter()
            .map(|(g, n)| {
                let base = format!("({})", linear_string(*g));
                if *n == 1 {
                    base
                } else {
                    format!("{base}^{n}")
                }
            })
            .collect();
        let num = if self.num.terms.len() > 1 { format!("({num})") } else { num };
        if counts.len() == 1 && counts[0].1 == 1 {
            write!(f, "{num}/{den}")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

impl Serialize for RationalNF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<([u32; 3], String)> = self.num.sorted_terms().into_iter().map(|(e, c)| (e, c.to_string())).collect();
        let mut st = s.serialize_struct("RationalNF", 3)?;
        st.serialize_field("display", &self.to_string())?;
        st.serialize_field("numerator", &terms)?;
        st.serialize_field("denominator", &self.den)?;
        st.end()
    }
}

/// e^w_x as the signed sum over subexpressions of `word` multiplying to x.
pub fn equivariant_multiplicity(w: &AffineElement, x: &AffineElement, word: &[u8]) -> Result<RationalNF> {
    if AffineElement::from_word(word) != *w || word.len() != w.length() {
        return Err(Error::NotReduced(crate::alcove::word_string(word)));
    }
    if !leq(x, w) {
        return Ok(RationalNF::zero());
    }
    let l = word.len();
    // suffix[j] is the product of word[j..].
    let mut suffix = vec![AffineElement::identity(); l + 1];
    for j in (0..l).rev() {
        suffix[j] = AffineElement::simple(word[j]).compose(&suffix[j + 1]);
    }
    let hulls: Vec<Hull> = suffix.iter().map(Hull::of).collect();
    let mut states: HashMap<AffineElement, RationalNF> = HashMap::from([(AffineElement::identity(), RationalNF::one())]);
    for (j, &i) in word.iter().enumerate() {
        let s = AffineElement::simple(i);
        let b = RealRoot::simple(i);
        let mut next: HashMap<AffineElement, RationalNF> = HashMap::new();
        for (pi, val) in &states {
            for take in [false, true] {
                let p = if take { pi.compose(&s) } else { *pi };
                if !hulls[j + 1].contains(&p.inverse().compose(x)) {
                    continue;
                }
                let term = val.try_mul(&RationalNF::try_new(Poly::constant(1), vec![element_action(&p, b).0])?)?;
                let slot = next.entry(p).or_insert_with(RationalNF::zero);
                *slot = slot.try_add(&term)?;
            }
        }
        states = next;
    }
    let total = states.remove(x).unwrap_or_else(RationalNF::zero);
    Ok(if l % 2 == 1 { -total } else { total })
}

/// e^w_x using the canonical reduced word of w.
pub fn multiplicity(w: &AffineElement, x: &AffineElement) -> Result<RationalNF> {
    equivariant_multiplicity(w, x, &w.word())
}

/// The target value (-1)^(l(w)-l(x)) / prod Psi^w_x.
pub fn smooth_target(w: &AffineElement, x: &AffineElement) -> Result<RationalNF> {
    let psi = psi_set(w, x)?;
    let sign = if (w.length() - x.length()).is_multiple_of(2) { 1 } else { -1 };
    RationalNF::try_new(Poly::constant(sign), psi.into_iter().map(|r| r.0).collect())
}

/// Kumar's criterion: x is smooth in X_w iff e^w_x equals the target.
pub fn kumar_smooth(w: &AffineElement, x: &AffineElement) -> Result<bool> {
    let target = smooth_target(w, x)?;
    Ok(multiplicity(w, x)? == target)
}

/// Kumar-singular points of X_w.
pub fn kumar_singular_set(w: &AffineElement) -> Result<HashSet<AffineElement>> {
    let mut out = HashSet::new();
    for x in Hull::of(w).interval() {
        if !kumar_smooth(w, &x)? {
            out.insert(x);
        }
    }
    Ok(out)
}

fn setup_hypotheses(w: &AffineElement, x: &AffineElement, ws: &AffineElement, xs: &AffineElement) -> Result<()> {
    if !leq(x, w) {
        return Err(Error::NotBelow { x: x.to_string(), w: w.to_string() });
    }
    if ws.length() < w.length() {
        return Err(Error::SetupHypothesis("w < ws"));
    }
    if leq(xs, w) {
        return Err(Error::SetupHypothesis("xs is not below w"));
    }
    Ok(())
}

/// Checks Psi^{ws}_{xs} = Psi^w_x + {x b} and e^{ws}_{xs} = e^w_x / (x b).
pub fn setup_move_check(w: &AffineElement, x: &AffineElement, s: u8) -> Result<bool> {
    let si = AffineElement::simple(s);
    let (ws, xs) = (w.compose(&si), x.compose(&si));
    setup_hypotheses(w, x, &ws, &xs)?;
    let xb = element_action(x, RealRoot::simple(s));
    let mut expect = psi_set(w, x)?;
    if expect.contains(&xb) {
        return Ok(false);
    }
    expect.push(xb);
    expect.sort();
    let word = w.word();
    let lhs = equivariant_multiplicity(&ws, &xs, &[word.clone(), vec![s]].concat())?;
    let rhs = equivariant_multiplicity(w, x, &word)?.try_mul(&RationalNF::reciprocal(xb))?;
    Ok(psi_set(&ws, &xs)? == expect && lhs == rhs)
}

/// Checks Psi^{sw}_{sx} = s(Psi^w_x) + {b} and e^{sw}_{sx} = s(e^w_x) / b.
pub fn setup_move_check_left(w: &AffineElement, x: &AffineElement, s: u8) -> Result<bool> {
    let si = AffineElement::simple(s);
    let (sw, sx) = (si.compose(w), si.compose(x));
    setup_hypotheses(w, x, &sw, &sx)?;
    let b = RealRoot::simple(s);
    let mut expect: Vec<RealRoot> = psi_set(w, x)?.into_iter().map(|r| simple_root_action(s, r)).collect();
    if expect.contains(&b) {
        return Ok(false);
    }
    expect.push(b);
    expect.sort();
    let word = w.word();
    let lhs = equivariant_multiplicity(&sw, &sx, &[vec![s], word.clone()].concat())?;
    let rhs = equivariant_multiplicity(w, x, &word)?.apply_simple(s).try_mul(&RationalNF::reciprocal(b))?;
    Ok(psi_set(&sw, &sx)? == expect && lhs == rhs)
}
