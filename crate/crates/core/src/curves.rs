//! Free homotopy classes of closed curves as cyclic words, weighted
//! multicurves, and the enumeration-based quantities built on them:
//! geometric intersection numbers and length-ratio bounds.

use std::cell::{OnceCell, RefCell};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dd::{Dd, DdMat};
use crate::error::{Error, Result};
use crate::hypgeom::{IsometryKind, Mobius};
use crate::mp::{MobiusMp, Mp};
use crate::surface::HolonomyRep;

/// Default cap on the number of words any single enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// A generator or its inverse. Generator `2k` is `a_{k+1}`, `2k + 1` is `b_{k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((2 * generator + inverse as usize) as u16)
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u16)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.generator();
        let name = match (g.is_multiple_of(2), self.is_inverse()) {
            (true, false) => 'a',
            (true, true) => 'A',
            (false, false) => 'b',
            (false, true) => 'B',
        };
        write!(f, "{}{}", name, g / 2 + 1)
    }
}

/// Free reduction of a word.
pub fn reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

fn cyclic_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let w = reduce(&word);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == w[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

fn least_rotation(word: &[Letter]) -> Vec<Letter> {
    let n = word.len();
    let mut best = 0;
    for start in 1..n {
        let ord = (0..n)
            .map(|i| word[(start + i) % n].cmp(&word[(best + i) % n]))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal);
        if ord == Ordering::Less {
            best = start;
        }
    }
    (0..n).map(|i| word[(best + i) % n]).collect()
}

/// A conjugacy class in the surface group, stored as the lexicographically
/// least rotation of the cyclically reduced word or of its inverse.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveClass {
    letters: Vec<Letter>,
}

impl CurveClass {
    pub fn new(word: Vec<Letter>) -> Result<Self> {
        let w = cyclic_reduce(word);
        if w.is_empty() {
            return Err(Error::TrivialWord);
        }
        let fwd = least_rotation(&w);
        let bwd = least_rotation(&inverse_word(&w));
        Ok(CurveClass { letters: fwd.min(bwd) })
    }

    /// Whether `word` is already the canonical representative of its class.
    pub fn is_canonical(word: &[Letter]) -> bool {
        match CurveClass::new(word.to_vec()) {
            Ok(c) => c.letters == word,
            Err(_) => false,
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, plus one.
    pub fn generator_span(&self) -> usize {
        self.letters.iter().map(|l| l.generator() + 1).max().unwrap_or(0)
    }

    /// The class `w^k` with `k` maximal, returned as `(w, k)`.
    pub fn root(&self) -> (CurveClass, usize) {
        let n = self.letters.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (0..n).all(|i| self.letters[i] == self.letters[i % p]) {
                let root = CurveClass::new(self.letters[..p].to_vec()).expect("nonempty root");
                return (root, n / p);
            }
        }
        unreachable!()
    }

    pub fn is_primitive(&self) -> bool {
        self.root().1 == 1
    }

    pub fn power(&self, k: usize) -> CurveClass {
        let w: Vec<Letter> = (0..k).flat_map(|_| self.letters.iter().copied()).collect();
        CurveClass::new(w).expect("powers of nontrivial classes are nontrivial")
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses words such as `a1b1A1B1`; upper case letters are inverses.
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        let (offset, inv) = match c {
            'a' => (0, false),
            'A' => (0, true),
            'b' => (1, false),
            'B' => (1, true),
            _ => return Err(Error::InvalidInput(format!("unexpected character {c:?} in word"))),
        };
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let k: usize = digits
            .parse()
            .map_err(|_| Error::InvalidInput(format!("missing handle index after {c:?}")))?;
        if k == 0 {
            return Err(Error::InvalidInput("handle indices start at 1".into()));
        }
        out.push(Letter::new(2 * (k - 1) + offset, inv));
    }
    Ok(out)
}

impl FromStr for CurveClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CurveClass::new(parse_word(s)?)
    }
}

impl Serialize for CurveClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CurveClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A multicurve component: an explicit class or a decomposition edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Class(CurveClass),
    Edge(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedMulticurve {
    components: Vec<(Component, f64)>,
}

impl WeightedMulticurve {
    /// Merges repeated components by adding their weights.
    pub fn new(parts: Vec<(Component, f64)>) -> Result<Self> {
        let mut components: Vec<(Component, f64)> = Vec::new();
        for (c, w) in parts {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidInput(format!("weights must be positive, got {w}")));
            }
            match components.iter_mut().find(|(d, _)| *d == c) {
                Some((_, acc)) => *acc += w,
                None => components.push((c, w)),
            }
        }
        if components.is_empty() {
            return Err(Error::InvalidInput("multicurve has no components".into()));
        }
        Ok(WeightedMulticurve { components })
    }

    pub fn edge(index: usize, weight: f64) -> Result<Self> {
        Self::new(vec![(Component::Edge(index), weight)])
    }

    pub fn components(&self) -> &[(Component, f64)] {
        &self.components
    }
}

fn component_class<'a>(rep: &'a HolonomyRep, c: &'a Component) -> Result<&'a CurveClass> {
    match c {
        Component::Class(k) => Ok(k),
        Component::Edge(i) => rep.curve_words.get(*i).ok_or_else(|| {
            Error::InvalidInput(format!("edge {i} out of range ({} edges)", rep.curve_words.len()))
        }),
    }
}

/// `Σ a_i length(c_i)`.
pub fn multicurve_length(rep: &HolonomyRep, mc: &WeightedMulticurve) -> Result<f64> {
    let mut total = 0.0;
    for (c, w) in mc.components() {
        total += w * rep.curve_length(component_class(rep, c)?)?;
    }
    Ok(total)
}

/// Number of freely reduced words of length at most `radius` on `letters` letters.
pub fn ball_size(letters: u64, radius: u32) -> u64 {
    let mut total: u64 = 1;
    let mut layer: u64 = letters;
    for _ in 0..radius {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(letters.saturating_sub(1));
    }
    total
}

/// A group element reached by a reduced word.
#[derive(Clone, Copy, Debug)]
pub struct BallEntry {
    pub len: u8,
    /// The image, rounded to f64.
    pub element: Mobius,
    /// Low parts of the double-double image.
    lo: [f64; 4],
    /// Product of the letter bounds: scale of the rounding error.
    pub(crate) bound: f64,
    code: u128,
}

const CODE_BITS: u32 = 6;

impl BallEntry {
    pub(crate) fn accurate(&self) -> DdMat {
        DdMat::from_parts(&self.element, &self.lo)
    }

    pub fn word(&self) -> Vec<Letter> {
        (0..self.len as u32)
            .map(|i| {
                let c = (self.code >> (CODE_BITS * i)) & ((1 << CODE_BITS) - 1);
                Letter::from_code(c as usize - 1)
            })
            .collect()
    }
}

/// Every freely reduced word of length at most `radius`, with its image.
/// Ordered by first letter, then depth first; the identity comes first.
pub fn word_ball(rep: &HolonomyRep, radius: u32, budget: u64) -> Result<Vec<BallEntry>> {
    let nletters = 2 * rep.generator_count();
    let needed = ball_size(nletters as u64, radius);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    if nletters >= (1 << CODE_BITS) || radius as usize * CODE_BITS as usize > 128 {
        return Err(Error::InvalidInput("word ball too large to encode".into()));
    }
    let mats: Vec<DdMat> = (0..nletters).map(|c| rep.letter_dd(Letter::from_code(c))).collect();
    let bounds: Vec<f64> = (0..nletters).map(|c| letter_bound(&rep.letter(Letter::from_code(c)))).collect();
    let entry = |len: u8, m: &DdMat, bound: f64, code: u128| BallEntry { len, element: m.hi(), lo: m.lo(), bound, code };
    let root = entry(0, &DdMat::IDENTITY, 1.0, 0);
    if radius == 0 {
        return Ok(vec![root]);
    }
    let branches: Vec<Vec<BallEntry>> = (0..nletters)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut stack = vec![(mats[first], bounds[first], 1u8, (first as u128) + 1, first)];
            while let Some((m, bound, len, code, last)) = stack.pop() {
                out.push(entry(len, &m, bound, code));
                if len as u32 == radius {
                    continue;
                }
                for next in (0..nletters).rev() {
                    if next == last ^ 1 {
                        continue;
                    }
                    let code = code | ((next as u128 + 1) << (CODE_BITS * len as u32));
                    stack.push((m.mul(&mats[next]), bound * bounds[next], len + 1, code, next));
                }
            }
            out
        })
        .collect();
    let mut all = Vec::with_capacity(needed as usize);
    all.push(root);
    for b in branches {
        all.extend(b);
    }
    Ok(all)
}

/// All canonical classes of word length `1..=max_word_length` with
/// hyperbolic holonomy, shortest first, lexicographic within a length.
pub fn enumerate_classes(rep: &HolonomyRep, max_word_length: u32, budget: u64) -> Result<Vec<CurveClass>> {
    if max_word_length == 0 {
        return Err(Error::InvalidInput("max_word_length must be at least 1".into()));
    }
    let nletters = 2 * rep.generator_count();
    let needed = ball_size(nletters as u64, max_word_length) - 1;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    let mut out = Vec::new();
    for len in 1..=max_word_length as usize {
        let mut layer: Vec<CurveClass> = (0..nletters)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut found = Vec::new();
                let mut word = vec![Letter::from_code(first)];
                collect_canonical(rep, nletters, len, &mut word, &mut found);
                found
            })
            .collect();
        layer.sort();
        out.extend(layer);
    }
    Ok(out)
}

fn collect_canonical(
    rep: &HolonomyRep,
    nletters: usize,
    len: usize,
    word: &mut Vec<Letter>,
    found: &mut Vec<CurveClass>,
) {
    if word.len() == len {
        if word[0] != word[len - 1].inverse()
            && CurveClass::is_canonical(word)
            && rep.evaluate(word).classify() == IsometryKind::Hyperbolic
        {
            found.push(CurveClass::new(word.clone()).expect("reduced"));
        }
        return;
    }
    let last = *word.last().expect("nonempty");
    for c in 0..nletters {
        let l = Letter::from_code(c);
        if l == last.inverse() {
            continue;
        }
        // Canonical words start with their least letter.
        if l < word[0] {
            continue;
        }
        word.push(l);
        collect_canonical(rep, nletters, len, word, found);
        word.pop();
    }
}

/// Tolerance used to identify geodesics up to the stabilizer action.
pub const ENDPOINT_TOLERANCE: f64 = 1e-7;

/// A translate of one axis seen from another axis normalized to `(0, ∞)`.
/// `phase` is the position along the base axis modulo its translation
/// length; `invariant` is the crossing cosine or the distance cosh.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TranslateKey {
    pub side: i8,
    pub phase: f64,
    pub invariant: f64,
    pub len: u8,
    pub index: usize,
    pub translate: Translate,
}

fn keys_match(a: &TranslateKey, b: &TranslateKey, tol: f64) -> bool {
    a.side == b.side && (a.invariant - b.invariant).abs() <= tol * a.invariant.abs().max(1.0)
}

/// Window within which two keys are candidates for the same coset.
pub(crate) const DEDUPE_WINDOW: f64 = 1e-6;

/// Collapses keys that agree up to `tol`, with the phase compared
/// cyclically modulo `period`, and that `same` confirms. Each survivor
/// keeps its shortest word.
///
/// Far translates crowd together in phase and invariant, so the window
/// alone cannot separate them; `same` decides.
pub(crate) fn dedupe_translates(
    mut keys: Vec<TranslateKey>,
    period: f64,
    tol: f64,
    same: impl Fn(&TranslateKey, &TranslateKey) -> bool,
) -> Vec<TranslateKey> {
    keys.sort_by(|a, b| {
        a.phase
            .total_cmp(&b.phase)
            .then(a.side.cmp(&b.side))
            .then(a.invariant.total_cmp(&b.invariant))
            .then(a.len.cmp(&b.len))
            .then(a.index.cmp(&b.index))
    });
    let mut uniq: Vec<TranslateKey> = Vec::new();
    for k in keys {
        let mut merged = false;
        for u in uniq.iter_mut().rev() {
            if u.phase < k.phase - tol {
                break;
            }
            if keys_match(u, &k, tol) && same(u, &k) {
                if (k.len, k.index) < (u.len, u.index) {
                    u.len = k.len;
                    u.index = k.index;
                    u.translate = k.translate;
                }
                merged = true;
                break;
            }
        }
        if !merged {
            uniq.push(k);
        }
    }
    // Wrap-around: phases just below the period meet phases just above zero.
    let mut dead = vec![false; uniq.len()];
    let n = uniq.len();
    for hi in (0..n).rev() {
        if uniq[hi].phase < period - tol {
            break;
        }
        for lo in 0..n {
            if lo >= hi || uniq[lo].phase > tol {
                break;
            }
            if dead[lo] || dead[hi] {
                continue;
            }
            if uniq[hi].phase - period >= uniq[lo].phase - tol
                && keys_match(&uniq[lo], &uniq[hi], tol)
                && same(&uniq[lo], &uniq[hi])
            {
                if (uniq[hi].len, uniq[hi].index) < (uniq[lo].len, uniq[lo].index) {
                    uniq[lo].len = uniq[hi].len;
                    uniq[lo].index = uniq[hi].index;
                    uniq[lo].translate = uniq[hi].translate;
                }
                dead[hi] = true;
            }
        }
    }
    uniq.into_iter().zip(dead).filter(|(_, d)| !d).map(|(u, _)| u).collect()
}

/// Reduces `x` into `[0, period)`.
pub(crate) fn wrap_phase(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

fn cross(ends: &[[Dd; 2]; 2]) -> f64 {
    ends[0][0].mul(ends[1][1]).add(ends[0][1].mul(ends[1][0]).neg()).to_f64()
}

/// A geodesic by its attracting and repelling endpoint vectors, kept in
/// extended precision and rounded to double-double.
#[derive(Clone, Debug)]
pub(crate) struct Line {
    dd: [[Dd; 2]; 2],
    mp: [[Mp; 2]; 2],
}

impl Line {
    pub fn new(mp: [[Mp; 2]; 2]) -> Line {
        let dd = [[mp[0][0].to_dd(), mp[0][1].to_dd()], [mp[1][0].to_dd(), mp[1][1].to_dd()]];
        Line { dd, mp }
    }
}

/// Coordinates sending the attracting end of an axis to `∞` and the
/// repelling end to `0`: the adjugate of the eigenvector matrix.
pub(crate) struct AxisFrame {
    adj: DdMat,
    adj_mp: MobiusMp,
    det: f64,
}

impl AxisFrame {
    pub fn new(line: &Line) -> AxisFrame {
        let [x, y] = line.dd;
        let [xm, ym] = &line.mp;
        let adj_mp = MobiusMp { a: ym[1].clone(), b: -ym[0].clone(), c: -xm[1].clone(), d: xm[0].clone() };
        AxisFrame { adj: DdMat([y[1], y[0].neg(), x[1].neg(), x[0]]), adj_mp, det: cross(&line.dd) }
    }
}

/// Relative rounding of one double-double product step, with slack.
const DD_UNIT: f64 = 1e-30;

/// Smallest endpoint coordinate, relative to the rounding scale, for which
/// the double-double translate is used as is.
const DD_MARGIN: f64 = 1e14;

/// Bound on the max-norm of a letter, doubled to absorb product growth.
pub(crate) fn letter_bound(m: &Mobius) -> f64 {
    2.0 * m.a.abs().max(m.b.abs()).max(m.c.abs()).max(m.d.abs())
}

/// A translate of a line given by homogeneous endpoint vectors, seen in
/// coordinates where the base axis is `(0, ∞)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Translate {
    p: [f64; 2],
    q: [f64; 2],
    /// `det[p q]`, taken from the factors to avoid cancellation.
    det: f64,
}

impl Translate {
    /// Translate of `line` by `frame · element`. Computed in double-double
    /// and redone in extended precision when an endpoint coordinate is
    /// within reach of the rounding error.
    pub fn new(rep: &HolonomyRep, frame: &AxisFrame, element: &BallEntry, line: &Line) -> Translate {
        Translate::from_mat(frame, &element.accurate(), element.bound, element.len as u32, line, || {
            rep.precise_evaluate(&element.word())
        })
    }

    fn from_mat(
        frame: &AxisFrame,
        d: &DdMat,
        bound: f64,
        steps: u32,
        line: &Line,
        exact: impl FnOnce() -> MobiusMp,
    ) -> Translate {
        let apply = |v: [Dd; 2]| {
            let w = frame.adj.apply(d.apply(v));
            [w[0].to_f64(), w[1].to_f64()]
        };
        let det = frame.det * cross(&line.dd);
        let (p, q) = (apply(line.dd[0]), apply(line.dd[1]));
        let err = 4.0 * bound * (steps + 4) as f64 * DD_UNIT;
        if p.iter().chain(&q).all(|x| x.abs() > DD_MARGIN * err) {
            return Translate { p, q, det };
        }
        let m = frame.adj_mp.mul(&exact());
        let apply = |v: &[Mp; 2]| {
            let w = m.apply(v);
            [w[0].to_f64(), w[1].to_f64()]
        };
        Translate { p: apply(&line.mp[0]), q: apply(&line.mp[1]), det }
    }

    /// Both endpoints sit on the base, one at `0` and one at `∞`.
    pub fn is_base(&self, tol: f64) -> bool {
        let at_zero = |v: [f64; 2]| v[0].abs() <= tol * v[1].abs();
        let at_inf = |v: [f64; 2]| v[1].abs() <= tol * v[0].abs();
        (at_zero(self.p) && at_inf(self.q)) || (at_inf(self.p) && at_zero(self.q))
    }

    fn sign(v: [f64; 2]) -> bool {
        (v[0] < 0.0) != (v[1] < 0.0)
    }

    /// Endpoints on opposite sides of `(0, ∞)`.
    pub fn crosses_base(&self) -> bool {
        Self::sign(self.p) != Self::sign(self.q)
    }

    /// `-1` for the negative half-line, `+1` for the positive one.
    pub fn side(&self) -> i8 {
        if Self::sign(self.p) {
            -1
        } else {
            1
        }
    }

    /// `log √|pq|`: the foot of the translate's symmetry point on the base.
    pub fn phase(&self) -> f64 {
        0.5 * (self.p[0].abs().ln() + self.q[0].abs().ln() - self.p[1].abs().ln() - self.q[1].abs().ln())
    }

    /// `|p + q| / |q − p|`, the cosine of the crossing angle.
    pub fn crossing_cosine(&self) -> f64 {
        let (s, t) = (self.p[0] * self.q[1], self.q[0] * self.p[1]);
        (s + t).abs() / self.det.abs()
    }

    /// `(|p| + |q|) / ||q| − |p||`, the hyperbolic cosine of the distance
    /// to a disjoint base.
    pub fn distance_cosh(&self) -> f64 {
        let (s, t) = ((self.p[0] * self.q[1]).abs(), (self.q[0] * self.p[1]).abs());
        (s + t) / self.det.abs()
    }
}

/// Test that two ball translates of a line are one line up to a power of
/// the base element `c`: `x = D_b⁻¹ cᵏ D_a` must preserve the line.
///
/// In the base frame `c` scales by `e^ℓ`, which gives `k` and screens out
/// most pairs in double precision. Survivors are decided in extended
/// precision: conjugated into the frame of the line, `x` is diagonal
/// exactly when it preserves it, while for any other element the product
/// of the off-diagonal entries is `(u − 1)/2` with `u` the distance cosh
/// between the line and its image.
///
/// With `separation`, a lower bound for `sinh` of half the distance between
/// distinct images of the line, pairs are settled in double-double once its
/// rounding is small against that gap.
pub(crate) struct CosetTest<'a> {
    rep: &'a HolonomyRep,
    ball: &'a [BallEntry],
    base: MobiusMp,
    base_dd: DdMat,
    line_frame: AxisFrame,
    period: f64,
    separation: Option<f64>,
    /// `D_i · adj F` per ball index, built on demand.
    carried: Vec<OnceCell<MobiusMp>>,
    powers: RefCell<HashMap<i64, MobiusMp>>,
}

/// Log-scale agreement required before extended precision is consulted.
const COSET_WINDOW: f64 = 1e-12;

/// Bits of working precision given up to rounding when deciding that an
/// off-diagonal entry vanishes.
const COSET_GUARD_BITS: i64 = 48;
const DD_GUARD_BITS: f64 = 16.0;

fn log_ratio(v: [f64; 2]) -> f64 {
    v[0].abs().ln() - v[1].abs().ln()
}

fn log2_max(m: &MobiusMp) -> i64 {
    [&m.a, &m.b, &m.c, &m.d].iter().map(|x| x.log2_floor()).max().unwrap_or(0)
}

impl<'a> CosetTest<'a> {
    pub fn new(
        rep: &'a HolonomyRep,
        base: &[Letter],
        line: &Line,
        ball: &'a [BallEntry],
        period: f64,
        separation: Option<f64>,
    ) -> Self {
        CosetTest {
            rep,
            ball,
            base: rep.precise_evaluate(base),
            base_dd: base.iter().fold(DdMat::IDENTITY, |m, &l| m.mul(&rep.letter_dd(l))),
            line_frame: AxisFrame::new(line),
            period,
            separation,
            carried: vec![OnceCell::new(); ball.len()],
            powers: RefCell::new(HashMap::new()),
        }
    }

    fn base_power_dd(&self, k: i64) -> DdMat {
        let (mut acc, mut n) = (DdMat::IDENTITY, k.unsigned_abs());
        let mut step = if k < 0 { self.base_dd.adjugate() } else { self.base_dd };
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&step);
            }
            step = step.mul(&step);
            n >>= 1;
        }
        acc
    }

    /// `Some` when double-double decides the pair.
    fn same_dd(&self, ea: &BallEntry, eb: &BallEntry, k: i64) -> Option<bool> {
        let ck = self.base_power_dd(k);
        let f = &self.line_frame.adj;
        let y = f.mul(&eb.accurate().adjugate()).mul(&ck).mul(&ea.accurate()).mul(&f.adjugate());
        let scale = ea.bound.log2()
            + eb.bound.log2()
            + ck.max_abs().log2()
            + 2.0 * self.base_dd.max_abs().log2()
            + ((k.unsigned_abs() + 1) as f64).log2()
            + 8.0;
        let bits = (self.rep.accuracy_bits() as f64).min(106.0);
        let limit = (scale - bits + DD_GUARD_BITS).exp2();
        let [_, b, c, _] = y.0;
        if b.to_f64().abs() > limit || c.to_f64().abs() > limit {
            return Some(false);
        }
        let gap = self.separation?;
        (limit / self.line_frame.det.abs() < 0.5 * gap).then_some(true)
    }

    fn base_power(&self, k: i64) -> MobiusMp {
        let (mut acc, mut step, mut n) = (MobiusMp::identity(), self.base.clone(), k.unsigned_abs());
        if k < 0 {
            step = step.inverse();
        }
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&step);
            }
            step = step.mul(&step);
            n >>= 1;
        }
        acc
    }

    pub fn same(&self, a: &TranslateKey, b: &TranslateKey) -> bool {
        let (ta, tb) = (&a.translate, &b.translate);
        let k = ((log_ratio(tb.p) - log_ratio(ta.p)) / self.period).round();
        let close = |x: [f64; 2], y: [f64; 2]| {
            Translate::sign(x) == Translate::sign(y) && (log_ratio(x) + k * self.period - log_ratio(y)).abs() <= COSET_WINDOW
        };
        if !(close(ta.p, tb.p) && close(ta.q, tb.q)) {
            return false;
        }
        let (ea, eb) = (&self.ball[a.index], &self.ball[b.index]);
        if let Some(same) = self.same_dd(ea, eb, k as i64) {
            return same;
        }
        let carried = |i: usize| {
            self.carried[i].get_or_init(|| {
                self.rep.precise_evaluate(&self.ball[i].word()).mul(&self.line_frame.adj_mp.inverse())
            })
        };
        let k = k as i64;
        let mut powers = self.powers.borrow_mut();
        let ck = powers.entry(k).or_insert_with(|| self.base_power(k));
        // Rounding is relative to the product of letter norms, not to the
        // entries of the result; squaring `c` also pays its conditioning.
        let scale = (ea.bound.log2() + eb.bound.log2()).ceil() as i64
            + log2_max(ck)
            + 2 * log2_max(&self.base)
            + (k.unsigned_abs() + 1).ilog2() as i64
            + 9;
        // `y = F D_b⁻¹ cᵏ D_a adj F`, and `F D_b⁻¹ = adj(D_b adj F)`.
        let m = ck.mul(carried(a.index));
        let pb = carried(b.index).inverse();
        let y = MobiusMp {
            a: Mp::zero(),
            b: &pb.a * &m.b + &pb.b * &m.d,
            c: &pb.c * &m.a + &pb.d * &m.c,
            d: Mp::zero(),
        };
        let limit = scale - self.rep.accuracy_bits() + COSET_GUARD_BITS;
        y.b.log2_floor() <= limit && y.c.log2_floor() <= limit
    }
}

/// Tuning of the intersection count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionConfig {
    /// Smallest radius at which exactness may be claimed.
    pub certification_radius: u32,
    pub budget: u64,
}

impl Default for IntersectionConfig {
    fn default() -> Self {
        IntersectionConfig { certification_radius: 4, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionResult {
    pub count_lower_bound: u64,
    pub certified_exact: bool,
    pub enumeration_radius: u32,
    /// Count seen with words of length at most `r`, for `r = 0..=radius`.
    pub counts_by_radius: Vec<u64>,
}

/// Geometric intersection number of two closed curves, counted as crossing
/// pairs of lifts modulo the deck group.
///
/// The count uses the primitive roots of both classes and is scaled by the
/// product of their powers. `certified_exact` is a heuristic: the radius
/// reached the certification radius, the count was unchanged over the last
/// two radius increments, and every crossing has a non-degenerate angle.
pub fn intersection_number(
    rep: &HolonomyRep,
    c1: &CurveClass,
    c2: &CurveClass,
    radius: u32,
    config: &IntersectionConfig,
) -> Result<IntersectionResult> {
    let (r1, k1) = c1.root();
    let (r2, k2) = c2.root();
    let period = rep.curve_length(&r1)?;
    let n = AxisFrame::new(&rep.axis_line(r1.letters())?);
    let axis2 = rep.axis_line(r2.letters())?;
    let ball = word_ball(rep, radius, config.budget)?;

    let keys: Vec<TranslateKey> = ball
        .par_iter()
        .enumerate()
        .filter_map(|(index, e)| {
            let t = Translate::new(rep, &n, e, &axis2);
            if t.is_base(ENDPOINT_TOLERANCE) || !t.crosses_base() {
                return None;
            }
            let phase = wrap_phase(t.phase(), period);
            Some(TranslateKey { side: 0, phase, invariant: t.crossing_cosine(), len: e.len, index, translate: t })
        })
        .collect();
    let test = CosetTest::new(rep, r1.letters(), &axis2, &ball, period, None);
    let uniq = dedupe_translates(keys, period, DEDUPE_WINDOW, |a, b| test.same(a, b));

    let mut counts_by_radius = vec![0u64; radius as usize + 1];
    for u in &uniq {
        for c in counts_by_radius.iter_mut().skip(u.len as usize) {
            *c += 1;
        }
    }
    let scale = (k1 * k2) as u64;
    for c in counts_by_radius.iter_mut() {
        *c *= scale;
    }
    let count = counts_by_radius[radius as usize];
    let stable = radius >= 2 && {
        let r = radius as usize;
        counts_by_radius[r] == counts_by_radius[r - 1] && counts_by_radius[r] == counts_by_radius[r - 2]
    };
    let angles_ok = uniq.iter().all(|u| u.invariant <= 1.0 - 1e-9);
    Ok(IntersectionResult {
        count_lower_bound: count,
        certified_exact: radius >= config.certification_radius && stable && angles_ok,
        enumeration_radius: radius,
        counts_by_radius,
    })
}

/// `max_c ℓ_c(h′)/ℓ_c(h)` over enumerated classes: a lower bound for the
/// best Lipschitz constant `exp d_Th(h, h′)`.
pub fn thurston_ratio_lower_bound(
    rep_h: &HolonomyRep,
    rep_h2: &HolonomyRep,
    max_word_length: u32,
    budget: u64,
) -> Result<f64> {
    if rep_h.genus != rep_h2.genus {
        return Err(Error::DimensionMismatch {
            expected: rep_h.genus as usize,
            got: rep_h2.genus as usize,
        });
    }
    let classes = enumerate_classes(rep_h, max_word_length, budget)?;
    let ratios: Vec<f64> = classes
        .par_iter()
        .map(|c| Ok(rep_h2.curve_length(c)? / rep_h.curve_length(c)?))
        .collect::<Result<_>>()?;
    Ok(ratios.into_iter().fold(f64::NEG_INFINITY, f64::max))
}
