//! Closed-form volume and distance bounds, pointwise energy densities and
//! the two explicit example families.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::curves::{parse_word, CurveClass};
use crate::error::{Error, Result};
use crate::surface::{build_holonomy, standard_topology, FNCoordinates};

fn chi(genus: u32) -> Result<f64> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    Ok((2 * genus - 2) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeBracket {
    pub lower: f64,
    pub upper: f64,
    pub genus: u32,
}

impl VolumeBracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// `[ℓ/4, ℓ/4 + (π²/2)|χ|]`.
pub fn volume_bracket_from_lamination(lam_length: f64, genus: u32) -> Result<VolumeBracket> {
    let chi = chi(genus)?;
    if !(lam_length >= 0.0) {
        return Err(Error::NegativeLength(lam_length));
    }
    let lower = lam_length / 4.0;
    Ok(VolumeBracket { lower, upper: lower + PI * PI / 2.0 * chi, genus })
}

/// `π²|χ|`.
pub fn fuchsian_volume(genus: u32) -> Result<f64> {
    Ok(PI * PI * chi(genus)?)
}

/// `(π²/2)|χ| + π|χ| e^{d}`.
pub fn thurston_upper_bound(dth: f64, genus: u32) -> Result<f64> {
    let chi = chi(genus)?;
    if !(dth >= 0.0) {
        return Err(Error::InvalidInput(format!("distance must be nonnegative, got {dth}")));
    }
    Ok(PI * PI / 2.0 * chi + PI * chi * dth.exp())
}

/// `(π²/2)|χ| + (|χ|²/4a²)(e^{d} − 1)`.
pub fn closing_upper_bound(dth: f64, a: f64, genus: u32) -> Result<f64> {
    let chi = chi(genus)?;
    if !(a > 0.0) {
        return Err(Error::InvalidInput(format!("constant a must be positive, got {a}")));
    }
    if !(dth >= 0.0) {
        return Err(Error::InvalidInput(format!("distance must be nonnegative, got {dth}")));
    }
    Ok(PI * PI / 2.0 * chi + chi * chi / (4.0 * a * a) * dth.exp_m1())
}

/// `exp(a d/|χ| − b|χ|) − c`; may be negative.
pub fn wp_lower_bound_form(dwp: f64, a: f64, b: f64, c: f64, genus: u32) -> Result<f64> {
    let chi = chi(genus)?;
    if !(a > 0.0) {
        return Err(Error::InvalidInput(format!("constant a must be positive, got {a}")));
    }
    if !(dwp >= 0.0) {
        return Err(Error::InvalidInput(format!("distance must be nonnegative, got {dwp}")));
    }
    Ok((a * dwp / chi - b * chi).exp() - c)
}

/// `√(2πℓ)`: distance to the stratum where a curve of length `ℓ` is pinched.
pub fn wp_pinching(ell: f64) -> Result<f64> {
    if !(ell >= 0.0) {
        return Err(Error::NegativeLength(ell));
    }
    Ok((2.0 * PI * ell).sqrt())
}

/// `(|χ|/a) log(m(3g−3)/L)`.
pub fn wp_level_distance(m: f64, big_l: f64, genus: u32, a: f64) -> Result<f64> {
    let chi = chi(genus)?;
    if !(a > 0.0) || !(big_l > 0.0) || !(m > 0.0) {
        return Err(Error::InvalidInput(format!("need m, L, a > 0, got m = {m}, L = {big_l}, a = {a}")));
    }
    Ok(chi / a * (m * (3 * genus - 3) as f64 / big_l).ln())
}

/// `2√(2πL)`.
pub fn wp_level_diameter(big_l: f64) -> Result<f64> {
    Ok(2.0 * wp_pinching(big_l)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub norm_df: f64,
    pub norm_del: f64,
    pub norm_delbar: f64,
    pub schatten_trace: f64,
    pub orientation_preserving: bool,
}

/// Densities of a differential given in orthonormal frames, row major.
pub fn pointwise_densities(m: [[f64; 2]; 2]) -> DensityReport {
    let [[a, b], [c, d]] = m;
    let det = a * d - b * c;
    let p = (a + d).hypot(c - b);
    let q = (a - d).hypot(b + c);
    let s1 = 0.5 * (p + q);
    let s2 = if s1 > 0.0 { det.abs() / s1 } else { 0.0 };
    let sgn = if det < 0.0 { -1.0 } else { 1.0 };
    DensityReport {
        norm_df: s1.hypot(s2),
        norm_del: (s1 + sgn * s2) / SQRT_2,
        norm_delbar: (s1 - sgn * s2) / SQRT_2,
        schatten_trace: s1 + s2,
        orientation_preserving: det > 0.0,
    }
}

/// `4 arcsinh(cosh(ℓ_μ/4) / sinh(1/2n))`.
pub fn prop52_beta_closed_form(n: u32, mu_length: f64) -> f64 {
    4.0 * ((0.25 * mu_length).cosh() / (0.5 / n as f64).sinh()).asinh()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop52Report {
    pub n: u32,
    pub genus: u32,
    pub mu_length: f64,
    pub alpha_length: f64,
    pub weight: f64,
    pub lamination_length: f64,
    /// Closed form as stated.
    pub beta_length: f64,
    /// `−1 + n/ℓ_β`.
    pub ratio_floor: f64,
    pub bracket: VolumeBracket,
    /// `ℓ_β` read from the genus-2 holonomy.
    pub holonomy_beta_length: f64,
    pub cross_check_relative_error: f64,
    pub cross_check_passed: bool,
}

pub const PROP52_CROSS_CHECK_TOLERANCE: f64 = 1e-5;

/// The pinched family: `α` of length `1/n` inside a one-holed torus cut
/// off by `μ`, with `β` crossing `α` once orthogonally and `λ = n·α`.
pub fn example_prop52(n: u32, mu_length: f64) -> Result<Prop52Report> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if !(mu_length > 0.0) {
        return Err(Error::NonPositiveLength(mu_length));
    }
    let alpha = 1.0 / n as f64;
    let weight = n as f64;
    // Weight n on a curve of length 1/n, evaluated as n/n to stay exact.
    let lamination_length = weight / n as f64;
    let beta_length = prop52_beta_closed_form(n, mu_length);
    let topo = standard_topology(2)?;
    let rep = build_holonomy(&topo, &FNCoordinates::new(vec![alpha, 1.0, mu_length], vec![0.0; 3])?)?;
    let beta = CurveClass::new(parse_word("b1")?)?;
    let holonomy_beta_length = rep.curve_length(&beta)?;
    let err = (holonomy_beta_length - beta_length).abs() / beta_length;
    Ok(Prop52Report {
        n,
        genus: 2,
        mu_length,
        alpha_length: alpha,
        weight,
        lamination_length,
        beta_length,
        ratio_floor: -1.0 + n as f64 / beta_length,
        bracket: volume_bracket_from_lamination(lamination_length, 2)?,
        holonomy_beta_length,
        cross_check_relative_error: err,
        cross_check_passed: err <= PROP52_CROSS_CHECK_TOLERANCE,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogFit {
    pub c1: f64,
    pub c2: f64,
    pub max_residual: f64,
}

/// Least-squares fit `ℓ_β(n) ≈ c1 log n + c2` over `n = 2..=n_max`.
pub fn fit_prop52_constants(mu_length: f64, n_max: u32) -> Result<LogFit> {
    if n_max < 3 {
        return Err(Error::InvalidInput("need n_max ≥ 3 for a fit".into()));
    }
    let pts: Vec<(f64, f64)> =
        (2..=n_max).map(|n| ((n as f64).ln(), prop52_beta_closed_form(n, mu_length))).collect();
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    let c1 = sxy / sxx;
    let c2 = my - c1 * mx;
    let max_residual = pts.iter().map(|(x, y)| (y - c1 * x - c2).abs()).fold(0.0, f64::max);
    Ok(LogFit { c1, c2, max_residual })
}

/// Distance `2 arcsinh(1/(2 sinh(u/4)))` between two boundaries of a pair
/// of pants with all boundary lengths `u`.
pub fn pants_boundary_distance(u: f64) -> f64 {
    2.0 * (0.5 / (0.25 * u).sinh()).asinh()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct C0Search {
    pub c0: f64,
    pub argmax: f64,
    pub unimodal: bool,
}

/// `(3/8) max_u u r(u)` by golden-section search on `[1e-3, 50]`, after a
/// grid scan confirms a single peak.
pub fn optimal_c0() -> C0Search {
    let f = |u: f64| 0.375 * u * pants_boundary_distance(u);
    let (lo, hi) = (1e-3f64, 50.0f64);
    let grid: Vec<f64> = (0..=2000).map(|i| f(lo + (hi - lo) * i as f64 / 2000.0)).collect();
    let turns = grid.windows(3).filter(|w| (w[1] - w[0]) * (w[2] - w[1]) < 0.0).count();
    let (mut a, mut b) = (lo, hi);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-6 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    let u = 0.5 * (a + b);
    C0Search { c0: f(u), argmax: u, unimodal: turns == 1 }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenusOptimalityReport {
    pub genus: u32,
    pub u: f64,
    pub weight: f64,
    pub r_u: f64,
    /// `w(3g−3)u`.
    pub lamination_length: f64,
    /// `1 + ℓ_λ/((3g−3) u r(u))`, an upper estimate of `exp d_Th`.
    pub exp_dth_upper: f64,
    /// `(3/8) u r(u) |χ|`, floor for `Vol / (exp d_Th − 1)`.
    pub volume_ratio_floor: f64,
    pub bracket: VolumeBracket,
    pub c0: C0Search,
}

/// All pants curves of length `u`, earthquake of weight `w` along all of
/// them.
pub fn example_genus_optimality(genus: u32, u: f64, weight: f64) -> Result<GenusOptimalityReport> {
    let chi = chi(genus)?;
    if !(u > 0.0) {
        return Err(Error::NonPositiveLength(u));
    }
    if !(weight > 0.0) || !weight.is_finite() {
        return Err(Error::InvalidInput(format!("weight must be positive, got {weight}")));
    }
    let edges = (3 * genus - 3) as f64;
    let r_u = pants_boundary_distance(u);
    let lamination_length = weight * edges * u;
    Ok(GenusOptimalityReport {
        genus,
        u,
        weight,
        r_u,
        lamination_length,
        exp_dth_upper: 1.0 + lamination_length / (edges * u * r_u),
        volume_ratio_floor: 0.375 * u * r_u * chi,
        bracket: volume_bracket_from_lamination(lamination_length, genus)?,
        c0: optimal_c0(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets() {
        let b = volume_bracket_from_lamination(4.0, 2).unwrap();
        assert_eq!((b.lower, b.upper), (1.0, 1.0 + PI * PI));
        assert_eq!(fuchsian_volume(3).unwrap(), 4.0 * PI * PI);
        assert!(matches!(volume_bracket_from_lamination(1.0, 1), Err(Error::GenusTooSmall(1))));
        assert!(matches!(volume_bracket_from_lamination(-1.0, 2), Err(Error::NegativeLength(_))));
        assert!((thurston_upper_bound(0.0, 2).unwrap() - (PI * PI + 2.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn densities() {
        let id = pointwise_densities([[1.0, 0.0], [0.0, 1.0]]);
        assert!((id.norm_df - SQRT_2).abs() < 1e-15 && id.schatten_trace == 2.0);
        assert!((id.norm_del - SQRT_2).abs() < 1e-15 && id.norm_delbar.abs() < 1e-15);
        let refl = pointwise_densities([[1.0, 0.0], [0.0, -1.0]]);
        assert!(!refl.orientation_preserving);
        assert!((refl.schatten_trace - SQRT_2 * refl.norm_delbar).abs() < 1e-15);
        let s = 3.0;
        let st = pointwise_densities([[s, 0.0], [0.0, 1.0 / s]]);
        assert!((st.norm_del - (s + 1.0 / s) / SQRT_2).abs() < 1e-15);
        assert!((st.norm_delbar - (s - 1.0 / s) / SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn c0_search() {
        let c = optimal_c0();
        assert!(c.unimodal);
        assert!((c.c0 - 1.30).abs() < 0.01, "{c:?}");
        let r = example_genus_optimality(3, 1.0, 0.5).unwrap();
        assert_eq!(r.lamination_length, 0.5 * 6.0 * 1.0);
        assert!(r.exp_dth_upper >= 1.0);
        let u = 4.0 * 0.5f64.asinh();
        assert!((pants_boundary_distance(u) - 2.0 * 1f64.asinh()).abs() < 1e-15);
    }

    #[test]
    fn pinched_family() {
        let mut last = f64::NEG_INFINITY;
        for n in 1..=8 {
            let r = example_prop52(n, 2.0).unwrap();
            assert_eq!(r.lamination_length, 1.0);
            assert!(r.ratio_floor > last);
            last = r.ratio_floor;
            assert_eq!(r.bracket.lower, 0.25);
        }
        let fit = fit_prop52_constants(2.0, 64).unwrap();
        assert!(fit.c1 > 0.0);
    }
}
