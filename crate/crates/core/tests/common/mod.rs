//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use adsvol::curves::{CurveClass, Letter};
use adsvol::hypgeom::{BoundaryPoint, Mobius};
use adsvol::surface::{build_holonomy, standard_topology, FNCoordinates, HolonomyRep};

pub fn genus2(lengths: [f64; 3], twists: [f64; 3]) -> HolonomyRep {
    let topo = standard_topology(2).unwrap();
    build_holonomy(&topo, &FNCoordinates::new(lengths.to_vec(), twists.to_vec()).unwrap()).unwrap()
}

pub fn class(s: &str) -> CurveClass {
    s.parse().unwrap()
}

/// Every freely reduced word of length at most `radius`, identity included.
pub fn reduced_words(generators: usize, radius: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for code in 0..2 * generators {
                let l = Letter::from_code(code);
                if w.last().is_some_and(|&p: &Letter| p == l.inverse()) {
                    continue;
                }
                let mut v: Vec<Letter> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn inv(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

fn cat(parts: &[&[Letter]]) -> Vec<Letter> {
    parts.concat()
}

fn power(w: &[Letter], j: i64) -> Vec<Letter> {
    let base = if j < 0 { inv(w) } else { w.to_vec() };
    base.repeat(j.unsigned_abs() as usize)
}

fn homogeneous(p: BoundaryPoint) -> [f64; 2] {
    match p {
        BoundaryPoint::Finite(x) => [x, 1.0],
        BoundaryPoint::Infinity => [1.0, 0.0],
    }
}

fn act(m: &Mobius, v: [f64; 2]) -> [f64; 2] {
    [m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]]
}

fn cross(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

fn endpoints(rep: &HolonomyRep, w: &[Letter]) -> [[f64; 2]; 2] {
    let axis = rep.evaluate_accurate(w).axis().unwrap();
    [homogeneous(axis.p), homogeneous(axis.q)]
}

/// Coordinates in which the axis of `c` runs from 0 to ∞.
struct Normal {
    ends: [[f64; 2]; 2],
}

impl Normal {
    fn new(rep: &HolonomyRep, c: &[Letter]) -> Normal {
        Normal { ends: endpoints(rep, c) }
    }

    fn map(&self, v: [f64; 2]) -> f64 {
        cross(v, self.ends[0]) / cross(v, self.ends[1])
    }

    /// Normalized endpoints of `m` applied to the geodesic with ends `g`.
    fn image(&self, m: &Mobius, g: &[[f64; 2]; 2]) -> (f64, f64) {
        (self.map(act(m, g[0])), self.map(act(m, g[1])))
    }
}

/// `|tr(C X C⁻¹ X⁻¹) − 2|`, zero exactly when `X` preserves the axis of `C`.
fn commutator_defect(rep: &HolonomyRep, c: &[Letter], x: &[Letter]) -> f64 {
    (rep.trace(&cat(&[c, x, &inv(c), &inv(x)])) - 2.0).abs()
}

pub struct RieraOracle {
    pub n_terms: usize,
    pub reps: Vec<(String, f64, f64)>,
    pub sum: f64,
    pub length: f64,
}

/// Brute-force Riera sum over double cosets `⟨C⟩ D ⟨C⟩`, `|D| ≤ radius`.
///
/// `u` comes from the trace identity
/// `|tr(C·DCD⁻¹) − tr(C·DC⁻¹D⁻¹)| = 4 sinh²(ℓ/2) u`; two words are merged
/// only after `D₂⁻¹ Cʲ D₁` is shown to commute with `C`.
pub fn riera_oracle(rep: &HolonomyRep, c: &CurveClass, radius: usize) -> RieraOracle {
    let c = c.letters().to_vec();
    let length = 2.0 * (0.5 * rep.trace(&c).abs()).acosh();
    let scale = 4.0 * (0.5 * length).sinh().powi(2);
    let normal = Normal::new(rep, &c);
    let mut reps: Vec<(Vec<Letter>, f64, f64)> = Vec::new();
    for d in reduced_words(rep.generator_count(), radius) {
        let di = inv(&d);
        let u = (rep.trace(&cat(&[&c, &d, &c, &di])) - rep.trace(&cat(&[&c, &d, &inv(&c), &di]))).abs() / scale;
        if u < 1.0 + 1e-9 {
            continue;
        }
        let (p, q) = normal.image(&rep.evaluate_accurate(&d), &normal.ends);
        let phase = 0.5 * (p * q).abs().ln();
        let merged = reps.iter().any(|(w, u2, ph2)| {
            if (u - u2).abs() > 1e-9 * u {
                return false;
            }
            let j = ((phase - ph2) / length).round() as i64;
            [j - 1, j, j + 1, -j - 1, -j, -j + 1]
                .iter()
                .any(|&k| commutator_defect(rep, &c, &cat(&[&inv(w), &power(&c, k), &d])) < 1e-6)
        });
        if !merged {
            reps.push((d, u, phase));
        }
    }
    let mut terms: Vec<f64> = reps.iter().map(|&(_, u, _)| 2.0 * u * (1.0 / u).atanh() - 2.0).collect();
    terms.sort_by(f64::total_cmp);
    let reps = reps
        .into_iter()
        .map(|(w, u, ph)| (w.iter().map(|l| l.to_string()).collect(), u, ph))
        .collect();
    RieraOracle { n_terms: terms.len(), reps, sum: terms.iter().sum(), length }
}

/// Crossing points of lifts of `c2` on the axis of `c1`, counted in one
/// fundamental segment of that axis.
pub fn intersection_oracle(rep: &HolonomyRep, c1: &CurveClass, c2: &CurveClass, radius: usize) -> usize {
    let l1 = 2.0 * (0.5 * rep.trace(c1.letters()).abs()).acosh();
    let normal = Normal::new(rep, c1.letters());
    let a2 = endpoints(rep, c2.letters());
    let mut phases: Vec<f64> = Vec::new();
    for d in reduced_words(rep.generator_count(), radius) {
        let (p, q) = normal.image(&rep.evaluate_accurate(&d), &a2);
        if p * q >= 0.0 {
            continue;
        }
        let phase = (0.5 * (-p * q).ln()).rem_euclid(l1);
        let close = |a: f64| {
            let d = (a - phase).abs();
            d.min(l1 - d) < 1e-6
        };
        if !phases.iter().any(|&a| close(a)) {
            phases.push(phase);
        }
    }
    phases.len()
}

/// Richardson-extrapolated derivative of `ℓ_γ` in the twist of one edge.
pub fn twist_derivative_oracle(coords: &FNCoordinates, genus: u32, edge: usize, witness: &CurveClass) -> f64 {
    let topo = standard_topology(genus).unwrap();
    let at = |dt: f64| {
        let mut t = coords.twists.clone();
        t[edge] += dt;
        let fnc = FNCoordinates::new(coords.lengths.clone(), t).unwrap();
        build_holonomy(&topo, &fnc).unwrap().curve_length(witness).unwrap()
    };
    let central = |h: f64| (at(h) - at(-h)) / (2.0 * h);
    let h = 1e-2;
    let (d1, d2, d3) = (central(h), central(h / 2.0), central(h / 4.0));
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

/// Canonical orbit of a cyclically reduced word under rotation and inversion.
pub fn orbit_key(w: &[Letter]) -> Vec<usize> {
    let n = w.len();
    let mut best: Option<Vec<usize>> = None;
    for word in [w.to_vec(), inv(w)] {
        for r in 0..n {
            let rot: Vec<usize> = (0..n).map(|i| word[(i + r) % n].code()).collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Unoriented cyclic classes of cyclically reduced words, length `1..=max`.
pub fn brute_class_count(generators: usize, max: usize) -> usize {
    let mut keys = std::collections::BTreeSet::new();
    for w in reduced_words(generators, max) {
        if w.is_empty() || w[0] == w[w.len() - 1].inverse() {
            continue;
        }
        keys.insert(orbit_key(&w));
    }
    keys.len()
}
