//! Earthquakes along weighted pants curves and the collar test map.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curves::CurveClass;
use crate::error::{Error, Result};
use crate::hypgeom::collar_width;
use crate::surface::{build_holonomy, FNCoordinates, SurfaceTopology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Left => 1.0,
            Direction::Right => -1.0,
        }
    }

    pub fn reversed(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

/// A multicurve on the decomposition edges, one weight per edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistSpec {
    pub weights: Vec<f64>,
    pub direction: Direction,
}

impl TwistSpec {
    pub fn new(weights: Vec<f64>, direction: Direction) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidInput(format!("weights must be finite and nonnegative, got {w}")));
        }
        if !weights.iter().any(|&w| w > 0.0) {
            return Err(Error::InvalidInput("at least one weight must be positive".into()));
        }
        Ok(TwistSpec { weights, direction })
    }

    /// Weight `w` on `edge`, zero elsewhere.
    pub fn single(edge_count: usize, edge: usize, w: f64, direction: Direction) -> Result<Self> {
        if edge >= edge_count {
            return Err(Error::InvalidInput(format!("edge {edge} out of range 0..{edge_count}")));
        }
        let mut weights = vec![0.0; edge_count];
        weights[edge] = w;
        Self::new(weights, direction)
    }

    pub fn reversed(&self) -> TwistSpec {
        TwistSpec { weights: self.weights.clone(), direction: self.direction.reversed() }
    }

    /// `ℓ_λ(h) = Σ w_i ℓ_i`.
    pub fn lamination_length(&self, coords: &FNCoordinates) -> Result<f64> {
        check_dims(coords, self)?;
        Ok(self.weights.iter().zip(&coords.lengths).map(|(w, l)| w * l).sum())
    }
}

fn check_dims(coords: &FNCoordinates, spec: &TwistSpec) -> Result<()> {
    if coords.twists.len() != spec.weights.len() {
        return Err(Error::DimensionMismatch { expected: coords.twists.len(), got: spec.weights.len() });
    }
    Ok(())
}

/// Shifts each twist by `±w_i`; lengths are untouched.
pub fn earthquake(coords: &FNCoordinates, spec: &TwistSpec) -> Result<FNCoordinates> {
    check_dims(coords, spec)?;
    let s = spec.direction.sign();
    let twists = coords.twists.iter().zip(&spec.weights).map(|(t, w)| t + s * w).collect();
    Ok(FNCoordinates { lengths: coords.lengths.clone(), twists })
}

/// Central difference of `ℓ_witness` in the twist of `edge`.
pub fn twist_length_derivative(
    topo: &SurfaceTopology,
    coords: &FNCoordinates,
    edge: usize,
    witness: &CurveClass,
    step: f64,
) -> Result<f64> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidInput(format!("step must be positive, got {step}")));
    }
    if edge >= coords.twists.len() {
        return Err(Error::InvalidInput(format!("edge {edge} out of range 0..{}", coords.twists.len())));
    }
    let at = |t: f64| -> Result<f64> {
        let mut c = coords.clone();
        c.twists[edge] += t;
        build_holonomy(topo, &c)?.curve_length(witness)
    };
    Ok((at(step)? - at(-step)?) / (2.0 * step))
}

/// `L + ℓ_λ / d(L)`, where `d` is the collar half-width.
pub fn growth_bound(big_l: f64, lamination_length: f64) -> Result<f64> {
    Ok(big_l + lamination_length / collar_width(big_l)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthEntry {
    pub edge: usize,
    pub length_before: f64,
    pub length_after: f64,
    pub bound: f64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub big_l: f64,
    pub lamination_length: f64,
    pub bound: f64,
    pub entries: Vec<GrowthEntry>,
    pub all_satisfied: bool,
    /// The lamination lives on the decomposition, so every edge is disjoint
    /// from it and keeps its length.
    pub trivially_disjoint: bool,
}

/// Checks `ℓ_{α_j}(h′) ≤ L + ℓ_λ(h)/d(L)` on every edge after the
/// earthquake, with lengths read off the rebuilt holonomy.
pub fn length_growth_bound_check(
    topo: &SurfaceTopology,
    coords: &FNCoordinates,
    spec: &TwistSpec,
    big_l: f64,
) -> Result<GrowthReport> {
    check_dims(coords, spec)?;
    if let Some((i, l)) = coords.lengths.iter().enumerate().find(|(_, &l)| !(l <= big_l)) {
        return Err(Error::PreconditionViolated(format!("edge {i} has length {l} > L = {big_l}")));
    }
    let lam = spec.lamination_length(coords)?;
    let bound = growth_bound(big_l, lam)?;
    let after = build_holonomy(topo, &earthquake(coords, spec)?)?;
    let entries: Vec<GrowthEntry> = after
        .curve_words
        .iter()
        .enumerate()
        .map(|(edge, w)| {
            let length_after = after.curve_length(w)?;
            Ok(GrowthEntry {
                edge,
                length_before: coords.lengths[edge],
                length_after,
                bound,
                satisfied: length_after <= bound,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GrowthReport {
        big_l,
        lamination_length: lam,
        bound,
        all_satisfied: entries.iter().all(|e| e.satisfied),
        entries,
        trivially_disjoint: true,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub total_energy: f64,
    /// `∫_U ‖df‖ dA` over the collar.
    pub collar_contribution: f64,
    /// `√2 · Area(S ∖ U)`.
    pub isometric_contribution: f64,
    pub eps: f64,
    pub core_length: f64,
    pub quadrature_points: usize,
    /// Difference to the estimate with half the panels. Steep ramps are
    /// not yet in the asymptotic regime, so no Richardson factor is applied.
    pub quadrature_tolerance: f64,
    /// `cosh(ε) ℓ_λ + 2√2 π|χ|`.
    pub bound: f64,
}

/// Quintic smoothstep on `[0, 1]` and its derivative.
fn smoothstep(s: f64) -> (f64, f64) {
    let s = s.clamp(0.0, 1.0);
    (s * s * s * (10.0 + s * (-15.0 + 6.0 * s)), 30.0 * s * s * (1.0 - s) * (1.0 - s))
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// Energy of the collar test map for a weighted curve with `ℓ_λ =
/// mc_length` on a core of unit length.
pub fn collar_testmap_energy(genus: u32, mc_length: f64, eps: f64, ramp_resolution: usize) -> Result<EnergyReport> {
    collar_testmap_energy_with_core(genus, mc_length, 1.0, eps, ramp_resolution)
}

/// Energy `∫_S ‖df_ε‖ dA` of the map that shears the `ε`-collar of a core
/// geodesic of length `core_length` by a smoothstep ramp of total shift
/// `mc_length / core_length` and is an isometry elsewhere.
pub fn collar_testmap_energy_with_core(
    genus: u32,
    mc_length: f64,
    core_length: f64,
    eps: f64,
    ramp_resolution: usize,
) -> Result<EnergyReport> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::NonPositiveEps(eps));
    }
    if !(mc_length >= 0.0) || !mc_length.is_finite() {
        return Err(Error::NegativeLength(mc_length));
    }
    if !(core_length > 0.0) || !core_length.is_finite() {
        return Err(Error::NonPositiveLength(core_length));
    }
    let chi = (2 * genus - 2) as f64;
    let area = 2.0 * PI * chi;
    let collar_area = 2.0 * core_length * eps.sinh();
    if collar_area > area {
        return Err(Error::PreconditionViolated(format!(
            "collar area {collar_area} exceeds surface area {area}"
        )));
    }
    let panels = ramp_resolution.max(64);
    let w = mc_length / core_length;
    let integrand = |r: f64| {
        let (_, ds) = smoothstep((r + eps) / (2.0 * eps));
        let g1 = w * ds / (2.0 * eps);
        (2.0 + g1 * g1).sqrt() * r.cosh()
    };
    let fine = core_length * simpson(integrand, -eps, eps, panels);
    let coarse = core_length * simpson(integrand, -eps, eps, panels / 2);
    let isometric = 2f64.sqrt() * (area - collar_area);
    let n = panels + panels % 2;
    Ok(EnergyReport {
        total_energy: isometric + fine,
        collar_contribution: fine,
        isometric_contribution: isometric,
        eps,
        core_length,
        quadrature_points: n + 1,
        quadrature_tolerance: (fine - coarse).abs(),
        bound: eps.cosh() * mc_length + 2.0 * 2f64.sqrt() * PI * chi,
    })
}

/// Ramp derivative `g′_ε` sampled on the Simpson grid, for checking the
/// pointwise bound `√(2 + g′²) ≤ √2 + g′`.
pub fn ramp_derivative_grid(mc_length: f64, core_length: f64, eps: f64, ramp_resolution: usize) -> Vec<f64> {
    let n = ramp_resolution.max(64);
    let n = n + n % 2;
    let w = mc_length / core_length;
    (0..=n)
        .map(|i| {
            let r = -eps + 2.0 * eps * i as f64 / n as f64;
            w * smoothstep((r + eps) / (2.0 * eps)).1 / (2.0 * eps)
        })
        .collect()
}
