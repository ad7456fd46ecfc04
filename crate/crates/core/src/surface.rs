//! Pants decompositions, Fenchel-Nielsen coordinates and the holonomy
//! representation they determine.
//!
//! The canonical decomposition is a chain of handles: every handle is a pair
//! of pants glued to itself along a non-separating curve `α_k`, cut off by a
//! separating curve `μ_k`; the `μ_k` hang off a linear spine of pants joined
//! by curves `ν_k`. Genus 2 has no spine and a single separating curve.
//!
//! Each pair of pants is realized by a right-angled hexagon traced with a
//! frame (an element of PSL(2,R) viewed as a unit tangent vector based at
//! `i`). Boundary holonomies translate along the hexagon's long sides with
//! the hexagon on their left; gluing maps send the start of one side onto
//! the end of the other, reversed, and then slide by the twist.
//!
//! Twist convention: a positive twist shifts the far side of the curve to
//! the left as seen when crossing it, i.e. increasing `τ_i` is the left
//! earthquake along `α_i`. Zero twist aligns seam feet, so a seam crossing a
//! self-glued curve closes up into a geodesic orthogonal to it.

use serde::{Deserialize, Serialize};

use crate::curves::{CurveClass, Letter, Line};
use crate::dd::{Dd, DdMat};
use crate::error::{Error, Result};
use crate::mp::{length_from_trace, MobiusMp, Mp, PREC};
use crate::hypgeom::Mobius;

/// Lengths below this are rejected as degenerate.
pub const MIN_LENGTH: f64 = 1e-4;
/// Largest accepted relator residual.
pub const RELATOR_TOLERANCE: f64 = 1e-6;

/// One side of a decomposition curve: a pair of pants and a boundary slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Attachment {
    pub pants: usize,
    pub slot: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveRole {
    /// Non-separating curve inside handle `k` (1-based).
    Handle(usize),
    /// Curve cutting handle `k` off the rest of the surface.
    Separating(usize),
    /// Spine curve between spine pants `k` and `k + 1`.
    Spine(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PantsEdge {
    pub sides: [Attachment; 2],
    pub role: CurveRole,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceTopology {
    pub genus: u32,
    pub pants_count: usize,
    pub edges: Vec<PantsEdge>,
}

impl SurfaceTopology {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn euler_characteristic_abs(&self) -> f64 {
        (2 * self.genus - 2) as f64
    }

    /// Degree of each pair of pants, self-loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.pants_count];
        for e in &self.edges {
            for s in &e.sides {
                deg[s.pants] += 1;
            }
        }
        deg
    }
}

/// The chain-of-handles decomposition of the closed genus `genus` surface.
///
/// Pants `0..g` are the handles, `g..2g−2` the spine. Edges are ordered
/// `α_1..α_g`, then the separating curves, then the spine curves.
pub fn standard_topology(genus: u32) -> Result<SurfaceTopology> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let g = genus as usize;
    let at = |pants, slot| Attachment { pants, slot };
    let spine = |k: usize| g + k - 1; // spine pants Q_k, k = 1..g−2
    let mut edges = Vec::with_capacity(3 * g - 3);
    for k in 0..g {
        edges.push(PantsEdge { sides: [at(k, 0), at(k, 1)], role: CurveRole::Handle(k + 1) });
    }
    if g == 2 {
        edges.push(PantsEdge { sides: [at(0, 2), at(1, 2)], role: CurveRole::Separating(1) });
    } else {
        edges.push(PantsEdge { sides: [at(0, 2), at(spine(1), 0)], role: CurveRole::Separating(1) });
        for k in 2..g {
            edges.push(PantsEdge {
                sides: [at(spine(k - 1), 1), at(k - 1, 2)],
                role: CurveRole::Separating(k),
            });
        }
        edges.push(PantsEdge {
            sides: [at(spine(g - 2), 2), at(g - 1, 2)],
            role: CurveRole::Separating(g),
        });
        for k in 1..g - 2 {
            edges.push(PantsEdge {
                sides: [at(spine(k), 2), at(spine(k + 1), 0)],
                role: CurveRole::Spine(k),
            });
        }
    }
    Ok(SurfaceTopology { genus, pants_count: 2 * g - 2, edges })
}

/// Lengths and twists on the curves of the canonical decomposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FNCoordinates {
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

impl FNCoordinates {
    pub fn new(lengths: Vec<f64>, twists: Vec<f64>) -> Result<Self> {
        if lengths.len() != twists.len() {
            return Err(Error::DimensionMismatch { expected: lengths.len(), got: twists.len() });
        }
        for &l in &lengths {
            if !(l > 0.0) || !l.is_finite() {
                return Err(Error::NonPositiveLength(l));
            }
        }
        if let Some(t) = twists.iter().find(|t| !t.is_finite()) {
            return Err(Error::InvalidInput(format!("twist must be finite, got {t}")));
        }
        Ok(FNCoordinates { lengths, twists })
    }

    /// Lengths log-uniform in `[0.05, 10]`, twists uniform in `[−20, 20]`.
    pub fn sample<R: rand::Rng + ?Sized>(rng: &mut R, genus: u32) -> Self {
        let n = 3 * genus.max(2) as usize - 3;
        let (lo, hi) = (0.05f64.ln(), 10f64.ln());
        let lengths = (0..n).map(|_| rng.gen_range(lo..=hi).exp()).collect();
        let twists = (0..n).map(|_| rng.gen_range(-20.0..=20.0)).collect();
        FNCoordinates { lengths, twists }
    }

    /// All lengths `len`, all twists zero.
    pub fn uniform(genus: u32, len: f64) -> Result<Self> {
        let n = 3 * genus as usize - 3;
        Self::new(vec![len; n], vec![0.0; n])
    }
}

/// A Fuchsian representation of the surface group in standard generators
/// `a_1, b_1, …, a_g, b_g` with `∏[a_k, b_k] = ±I`.
///
/// `generators` are rounded to double precision for fast enumeration; curve
/// lengths and the relator check are evaluated on a 512-bit copy,
/// since large twists make the generators' entries big enough that plain
/// products lose the digits needed for cancellation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HolonomyRep {
    pub genus: u32,
    pub generators: Vec<Mobius>,
    pub relator_residual: f64,
    /// One word per decomposition edge, in edge order.
    pub curve_words: Vec<CurveClass>,
    /// The generators in extended precision. Absent in older output, in
    /// which case the rounded generators stand in.
    #[serde(default)]
    precise: Vec<MobiusMp>,
}

impl PartialEq for HolonomyRep {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus
            && self.generators == other.generators
            && self.relator_residual == other.relator_residual
            && self.curve_words == other.curve_words
    }
}

impl HolonomyRep {
    pub fn euler_characteristic_abs(&self) -> f64 {
        (2 * self.genus - 2) as f64
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Bits to which the generators are known: the extended precision copy
    /// is lost on deserialization.
    pub(crate) fn accuracy_bits(&self) -> i64 {
        if self.precise.is_empty() {
            52
        } else {
            PREC as i64
        }
    }

    /// Matrix of a single letter.
    pub fn letter(&self, l: Letter) -> Mobius {
        let m = self.generators[l.generator()];
        if l.is_inverse() {
            m.inverse()
        } else {
            m
        }
    }

    /// Image of a word, multiplied left to right.
    pub fn evaluate(&self, word: &[Letter]) -> Mobius {
        word.iter().fold(Mobius::IDENTITY, |acc, &l| acc.compose(&self.letter(l)))
    }

    fn precise_letter(&self, l: Letter) -> MobiusMp {
        let m = match self.precise.get(l.generator()) {
            Some(m) => m.clone(),
            None => MobiusMp::from_f64(&self.generators[l.generator()]),
        };
        if l.is_inverse() {
            m.inverse()
        } else {
            m
        }
    }

    pub(crate) fn precise_evaluate(&self, word: &[Letter]) -> MobiusMp {
        word.iter().fold(MobiusMp::identity(), |acc, &l| acc.mul(&self.precise_letter(l)))
    }

    /// A letter rounded to double-double.
    pub(crate) fn letter_dd(&self, l: Letter) -> DdMat {
        let m = self.precise_letter(l);
        let split = |x: &Mp| {
            let hi = x.to_f64();
            Dd::new(hi, (x.clone() - Mp::from_f64(hi)).to_f64())
        };
        DdMat([split(&m.a), split(&m.b), split(&m.c), split(&m.d)])
    }

    /// Axis endpoints of a word's image as eigenvectors, attracting first.
    pub(crate) fn axis_line(&self, word: &[Letter]) -> Result<Line> {
        let m = self.precise_evaluate(word);
        m.axis_vectors().map(Line::new).ok_or_else(|| Error::NotHyperbolic { trace: m.trace().abs().to_f64() })
    }

    /// Image of a word computed in extended precision, then rounded.
    pub fn evaluate_accurate(&self, word: &[Letter]) -> Mobius {
        self.precise_evaluate(word).to_mobius()
    }

    /// Trace of a word's image, in extended precision.
    pub fn trace(&self, word: &[Letter]) -> f64 {
        self.precise_evaluate(word).trace().to_f64()
    }

    pub fn curve_length(&self, c: &CurveClass) -> Result<f64> {
        curve_length(self, c)
    }

    /// The representation `g ρ g⁻¹`, an isometric copy.
    pub fn conjugated(&self, g: &Mobius) -> HolonomyRep {
        let gm = MobiusMp::from_f64(g).normalized();
        let gi = gm.inverse();
        let precise: Vec<MobiusMp> = (0..self.generators.len())
            .map(|i| gm.mul(&self.precise_letter(Letter::from_code(2 * i))).mul(&gi))
            .collect();
        HolonomyRep {
            genus: self.genus,
            generators: precise.iter().map(MobiusMp::to_mobius).collect(),
            relator_residual: self.relator_residual,
            curve_words: self.curve_words.clone(),
            precise,
        }
    }

    /// Residual of the trace check `|tr ρ(word_i)| = 2 cosh(ℓ_i/2)` per edge.
    pub fn trace_residuals(&self, fn_coords: &FNCoordinates) -> Vec<f64> {
        self.curve_words
            .iter()
            .zip(&fn_coords.lengths)
            .map(|(w, &l)| {
                let t = self.trace(w.letters()).abs();
                (t - 2.0 * (0.5 * l).cosh()).abs() / (2.0 * (0.5 * l).cosh())
            })
            .collect()
    }
}

/// Geodesic length of the class's holonomy image.
pub fn curve_length(rep: &HolonomyRep, c: &CurveClass) -> Result<f64> {
    let t = rep.precise_evaluate(c.letters()).trace();
    let abs = t.abs().to_f64();
    if abs > 2.0 + 1e-9 {
        Ok(length_from_trace(&t))
    } else {
        Err(Error::NotHyperbolic { trace: abs })
    }
}

/// Bers' constant `6√(3π)(g − 1)`.
pub fn bers_constant(genus: u32) -> Result<f64> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    Ok(6.0 * (3.0 * std::f64::consts::PI).sqrt() * (genus as f64 - 1.0))
}

/// `cosh x` and `sinh x` from one exponential.
fn cosh_sinh(x: &Mp) -> (Mp, Mp) {
    let e = x.exp();
    let r = e.recip();
    ((&e + &r).scale(-1), (e - r).scale(-1))
}

/// Translation along `i∞` by the seam opposite `c`, where `a`, `b`, `c` are
/// alternate sides of a right-angled hexagon.
fn seam_dilation(a: &Mp, b: &Mp, c: &Mp) -> MobiusMp {
    let (ca, sa) = cosh_sinh(a);
    let (cb, sb) = cosh_sinh(b);
    let (cc, _) = cosh_sinh(c);
    let x = (cc + &ca * &cb) / (&sa * &sb);
    let e = (x.clone() + (&x * &x - Mp::one()).sqrt()).sqrt();
    let r = e.recip();
    MobiusMp { a: e, b: Mp::zero(), c: Mp::zero(), d: r }
}

/// Frames along a right-angled hexagon with alternate sides `l_i / 2`.
struct PantsFrames {
    /// Frame at the start of long side `i`, heading along it.
    start: [MobiusMp; 3],
    /// Frame at the end of long side `i`.
    end: [MobiusMp; 3],
    /// Boundary translation along side `i`, hexagon on the left.
    boundary: [MobiusMp; 3],
}

impl PantsFrames {
    fn new(lengths: [f64; 3]) -> Self {
        let half = lengths.map(|l| Mp::from_f64(0.5 * l));
        // Seam between long sides i and i+1 is opposite the third one.
        let seam = [
            seam_dilation(&half[0], &half[1], &half[2]),
            seam_dilation(&half[1], &half[2], &half[0]),
            seam_dilation(&half[2], &half[0], &half[1]),
        ];
        let turn = MobiusMp::quarter_turn();
        let mut start: [MobiusMp; 3] = std::array::from_fn(|_| MobiusMp::identity());
        let mut end = start.clone();
        let mut frame = MobiusMp::identity();
        for i in 0..3 {
            start[i] = frame.clone();
            frame = frame.mul(&MobiusMp::dilation(&half[i])).normalized();
            end[i] = frame.clone();
            frame = frame.mul(&turn).mul(&seam[i]).mul(&turn).normalized();
        }
        let boundary = std::array::from_fn(|i| {
            start[i].mul(&MobiusMp::dilation(&Mp::from_f64(lengths[i]))).mul(&start[i].inverse())
        });
        PantsFrames { start, end, boundary }
    }

    /// Isometry carrying `other`'s side `j` across side `i` of `self`.
    fn glue(&self, i: usize, other: &PantsFrames, j: usize, twist: f64) -> MobiusMp {
        self.end[i]
            .mul(&MobiusMp::dilation(&Mp::from_f64(twist)))
            .mul(&MobiusMp::half_turn())
            .mul(&other.start[j].inverse())
    }
}

/// Builds the holonomy of the marked surface with the given coordinates.
pub fn build_holonomy(topo: &SurfaceTopology, coords: &FNCoordinates) -> Result<HolonomyRep> {
    let canonical = standard_topology(topo.genus)?;
    if *topo != canonical {
        return Err(Error::UnsupportedTopology);
    }
    let n = topo.edge_count();
    if coords.lengths.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: coords.lengths.len() });
    }
    if coords.twists.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: coords.twists.len() });
    }
    for &l in &coords.lengths {
        if !(l > 0.0) || !l.is_finite() {
            return Err(Error::NonPositiveLength(l));
        }
        if l < MIN_LENGTH {
            return Err(Error::DegenerateLength(l));
        }
    }
    if let Some(t) = coords.twists.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidInput(format!("twist must be finite, got {t}")));
    }

    let g = topo.genus as usize;
    let mut slot_len = vec![[0.0; 3]; topo.pants_count];
    for (e, edge) in topo.edges.iter().enumerate() {
        for s in &edge.sides {
            slot_len[s.pants][s.slot] = coords.lengths[e];
        }
    }
    let frames: Vec<PantsFrames> = slot_len.iter().map(|l| PantsFrames::new(*l)).collect();

    // Develop the spine tree from the first handle.
    let mut placement: Vec<Option<MobiusMp>> = vec![None; topo.pants_count];
    placement[0] = Some(MobiusMp::identity());
    let mut progress = true;
    while progress {
        progress = false;
        for (e, edge) in topo.edges.iter().enumerate() {
            let [v, w] = edge.sides;
            if v.pants == w.pants || placement[w.pants].is_some() {
                continue;
            }
            if let Some(pv) = placement[v.pants].clone() {
                let glue = frames[v.pants].glue(v.slot, &frames[w.pants], w.slot, coords.twists[e]);
                placement[w.pants] = Some(pv.mul(&glue).normalized());
                progress = true;
            }
        }
    }

    let mut precise = Vec::with_capacity(2 * g);
    for k in 0..g {
        let [v, w] = topo.edges[k].sides;
        let p = placement[k].clone().ok_or_else(|| Error::NumericalFailure("pants not placed".into()))?;
        let pinv = p.inverse();
        let t0 = p.mul(&frames[k].boundary[0]).mul(&pinv);
        let stable = p.mul(&frames[k].glue(v.slot, &frames[k], w.slot, coords.twists[k])).mul(&pinv);
        precise.push(t0.inverse().normalized());
        precise.push(stable.inverse().normalized());
    }
    let precise = recentre(&precise);
    let generators: Vec<Mobius> = precise.iter().map(|m| m.to_mobius()).collect();

    let curve_words = canonical_curve_words(topo)?;
    let relator = relator_word(topo.genus);
    let residual = relator
        .iter()
        .fold(MobiusMp::identity(), |acc, l| {
            let m = &precise[l.generator()];
            acc.mul(&if l.is_inverse() { m.inverse() } else { m.clone() })
        })
        .distance_to_identity();
    if !(residual <= RELATOR_TOLERANCE) {
        return Err(Error::NumericalFailure(format!("relator residual {residual:e} exceeds 1e-6")));
    }
    Ok(HolonomyRep { genus: topo.genus, generators, relator_residual: residual, curve_words, precise })
}

fn displacement(gens: &[Mobius], h: &Mobius) -> f64 {
    let hinv = h.inverse();
    gens.iter()
        .map(|g| {
            let m = hinv.mul_raw(g).mul_raw(h);
            m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d
        })
        .sum()
}

/// Conjugates the generators so that `i` roughly minimizes the summed
/// displacement `Σ 2 cosh d(z, g z)`. Long chains of pants otherwise drift
/// far from the base point and double precision products lose digits.
fn recentre(gens: &[MobiusMp]) -> Vec<MobiusMp> {
    let approx: Vec<Mobius> = gens.iter().map(|m| m.to_mobius_raw()).collect();
    let moves = |dx: f64, ds: f64| Mobius::dilation(ds).compose(&Mobius { a: 1.0, b: dx, c: 0.0, d: 1.0 });
    let mut x = 0.0;
    let mut s = 0.0;
    let at = |x: f64, s: f64| Mobius { a: 1.0, b: x, c: 0.0, d: 1.0 }.compose(&Mobius::dilation(s));
    let mut f = displacement(&approx, &at(x, s));
    let fd = 1e-6;
    for _ in 0..200 {
        if !f.is_finite() {
            break;
        }
        let h = at(x, s);
        let df = |dx, ds| displacement(&approx, &h.compose(&moves(dx, ds)));
        let gx = (df(fd, 0.0) - df(-fd, 0.0)) / (2.0 * fd);
        let gs = (df(0.0, fd) - df(0.0, -fd)) / (2.0 * fd);
        let norm = gx.hypot(gs);
        if !(norm > 1e-9 * f) {
            break;
        }
        let mut step = (f / norm).min(1.0);
        let mut improved = false;
        while step > 1e-12 {
            let trial = h.compose(&moves(-step * gx / norm, -step * gs / norm));
            let ft = displacement(&approx, &trial);
            if ft < f {
                // trial = [[e^{s/2}, x e^{-s/2}], [0, e^{-s/2}]] up to sign.
                let sign = trial.a.signum();
                s = 2.0 * (sign * trial.a).ln();
                x = sign * trial.b * (0.5 * s).exp();
                f = ft;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    let e = Mp::from_f64(0.5 * s).exp();
    let er = e.recip();
    let xer = &Mp::from_f64(x) * &er;
    let h = MobiusMp { a: e.clone(), b: xer.clone(), c: Mp::zero(), d: er.clone() };
    let hinv = MobiusMp { a: er, b: -xer, c: Mp::zero(), d: e };
    gens.iter().map(|g| hinv.mul(g).mul(&h)).collect()
}

/// `[a_k, b_k] = a_k b_k a_k⁻¹ b_k⁻¹` for handle `k` (1-based).
fn commutator(k: usize) -> [Letter; 4] {
    let a = Letter::new(2 * (k - 1), false);
    let b = Letter::new(2 * (k - 1) + 1, false);
    [a, b, a.inverse(), b.inverse()]
}

/// `∏_k [a_k, b_k]` as a word.
pub fn relator_word(genus: u32) -> Vec<Letter> {
    (1..=genus as usize).flat_map(commutator).collect()
}

fn canonical_curve_words(topo: &SurfaceTopology) -> Result<Vec<CurveClass>> {
    topo.edges
        .iter()
        .map(|e| {
            let word: Vec<Letter> = match e.role {
                CurveRole::Handle(k) => vec![Letter::new(2 * (k - 1), false)],
                CurveRole::Separating(k) => commutator(k).to_vec(),
                CurveRole::Spine(k) => (1..=k + 1).flat_map(commutator).collect(),
            };
            CurveClass::new(word)
        })
        .collect()
}
