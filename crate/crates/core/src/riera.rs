//! Truncated Riera series for the Weil-Petersson gradient of a length
//! function.
//!
//! Each translate of the axis of `C` by a ball word is normalized against
//! the axis itself. Side, foot position along the axis and distance pick
//! out candidate duplicates; a pair is merged only when the words differ by
//! an element stabilizing the axis, which enumerates the double cosets
//! `⟨C⟩\Γ/⟨C⟩` reached by the ball. Every term is positive, so the
//! truncated sum bounds the full series from below.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{
    dedupe_translates, word_ball, wrap_phase, AxisFrame, CosetTest, CurveClass, Translate, TranslateKey,
    DEDUPE_WINDOW, DEFAULT_BUDGET, ENDPOINT_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::surface::HolonomyRep;

/// Distance below which a translate counts as tangent and is skipped.
pub const NEAR_TANGENT_DISTANCE: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RieraReport {
    /// `(2/π) ℓ_c`.
    pub base_term: f64,
    /// `(2/π) Σ F(u)` over the cosets reached.
    pub series_sum: f64,
    pub lower_bound: f64,
    pub n_terms: usize,
    pub word_radius: u32,
    pub crossing_detected: bool,
    pub near_tangent_skipped: usize,
    pub curve_length: f64,
    /// Smallest `u` among retained terms, if any.
    pub min_u: Option<f64>,
}

/// One retained double coset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RieraTerm {
    /// Shortest ball word reaching the coset.
    pub word: String,
    /// `cosh` of the distance between the two axes.
    pub u: f64,
    pub term: f64,
}

/// `u log((u+1)/(u−1)) − 2`, positive for `u > 1`.
pub fn riera_term(u: f64) -> f64 {
    if u > 8.0 {
        // 2 Σ u^{-2k}/(2k+1)
        let x = (u * u).recip();
        let mut p = x;
        let mut s = 0.0f64;
        let mut k = 1.0;
        loop {
            let t = p / (2.0 * k + 1.0);
            s += t;
            if t <= 1e-18 * s {
                break 2.0 * s;
            }
            p *= x;
            k += 1.0;
        }
    } else {
        u * (2.0 / (u - 1.0)).ln_1p() - 2.0
    }
}

/// Neumaier-compensated sum in the given order.
fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = 0.0f64;
    let mut c = 0.0f64;
    for x in xs {
        let t = s + x;
        if s.abs() >= x.abs() {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    s + c
}

struct Collected {
    length: f64,
    terms: Vec<(TranslateKey, Vec<crate::curves::Letter>)>,
    near_tangent: usize,
}

fn collect(rep: &HolonomyRep, c: &CurveClass, radius: u32, budget: u64) -> Result<Collected> {
    let (_, k) = c.root();
    if k > 1 {
        return Err(Error::NotSimple(format!("{c} is a proper power")));
    }
    let length = rep.curve_length(c)?;
    let axis = rep.axis_line(c.letters())?;
    let n = AxisFrame::new(&axis);
    let ball = word_ball(rep, radius, budget)?;

    enum Seen {
        Skip,
        Tangent,
        Cross(usize),
        Term(TranslateKey),
    }
    let seen: Vec<Seen> = ball
        .par_iter()
        .enumerate()
        .map(|(index, e)| {
            let t = Translate::new(rep, &n, e, &axis);
            if t.is_base(ENDPOINT_TOLERANCE) {
                return Seen::Skip;
            }
            if t.crosses_base() {
                return Seen::Cross(index);
            }
            let u = t.distance_cosh();
            if !u.is_finite() || u.acosh() <= NEAR_TANGENT_DISTANCE {
                return Seen::Tangent;
            }
            let phase = wrap_phase(t.phase(), length);
            Seen::Term(TranslateKey { side: t.side(), phase, invariant: u, len: e.len, index, translate: t })
        })
        .collect();

    let mut keys = Vec::new();
    let mut tangent_keys = Vec::new();
    for (index, s) in seen.into_iter().enumerate() {
        match s {
            Seen::Skip => {}
            Seen::Tangent => tangent_keys.push(index),
            Seen::Cross(i) => {
                let w: String = ball[i].word().iter().map(|l| l.to_string()).collect();
                return Err(Error::NotSimple(format!("translate by {w} crosses the axis of {c}")));
            }
            Seen::Term(key) => keys.push(key),
        }
    }
    // Distinct lifts of a simple curve are two collar widths `w` apart, and
    // `sinh w = 1 / sinh(ℓ/2)`.
    let gap = (0.5 * length).sinh().recip();
    let test = CosetTest::new(rep, c.letters(), &axis, &ball, length, Some(gap));
    let uniq = dedupe_translates(keys, length, DEDUPE_WINDOW, |a, b| test.same(a, b));
    let terms = uniq.into_iter().map(|k| (k, ball[k.index].word())).collect();
    Ok(Collected { length, terms, near_tangent: tangent_keys.len() })
}

/// Lower bound for `‖grad ℓ_c‖²_WP` from cosets reached by words of length
/// at most `word_radius`.
///
/// `c` is canonical up to conjugacy, so a conjugate word gives the same
/// report. The window is a ball around the base point of the
/// representation, not around the axis; different holonomies of one
/// surface can therefore reach different cosets at the same radius.
pub fn wp_grad_normsq_lower(rep: &HolonomyRep, c: &CurveClass, word_radius: u32) -> Result<RieraReport> {
    wp_grad_normsq_lower_with_budget(rep, c, word_radius, DEFAULT_BUDGET)
}

pub fn wp_grad_normsq_lower_with_budget(
    rep: &HolonomyRep,
    c: &CurveClass,
    word_radius: u32,
    budget: u64,
) -> Result<RieraReport> {
    let col = collect(rep, c, word_radius, budget)?;
    let mut us: Vec<f64> = col.terms.iter().map(|(k, _)| k.invariant).collect();
    // Smallest terms first.
    us.sort_by(|a, b| b.total_cmp(a));
    let sum = compensated_sum(us.iter().map(|&u| riera_term(u)));
    let base_term = 2.0 / PI * col.length;
    let series_sum = 2.0 / PI * sum;
    Ok(RieraReport {
        base_term,
        series_sum,
        lower_bound: base_term + series_sum,
        n_terms: us.len(),
        word_radius,
        crossing_detected: false,
        near_tangent_skipped: col.near_tangent,
        curve_length: col.length,
        min_u: us.last().copied(),
    })
}

/// Retained terms, largest first.
pub fn riera_terms(rep: &HolonomyRep, c: &CurveClass, word_radius: u32, budget: u64) -> Result<Vec<RieraTerm>> {
    let col = collect(rep, c, word_radius, budget)?;
    let mut out: Vec<RieraTerm> = col
        .terms
        .into_iter()
        .map(|(k, w)| RieraTerm {
            word: w.iter().map(|l| l.to_string()).collect(),
            u: k.invariant,
            term: riera_term(k.invariant),
        })
        .collect();
    out.sort_by(|a, b| a.u.total_cmp(&b.u).then_with(|| a.word.cmp(&b.word)));
    Ok(out)
}

/// `√(lower bound) · |χ| / ℓ_c`, an empirical estimate of the constant in
/// the linear gradient bound at this surface and curve.
pub fn mainestimate_ratio(rep: &HolonomyRep, c: &CurveClass, word_radius: u32) -> Result<f64> {
    let r = wp_grad_normsq_lower(rep, c, word_radius)?;
    Ok(r.lower_bound.sqrt() * rep.euler_characteristic_abs() / r.curve_length)
}
