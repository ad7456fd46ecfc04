// Frozen reference values are kept digit for digit as computed.
#![allow(clippy::excessive_precision)]

mod common;

use adsvol::bounds::{example_prop52, optimal_c0, pants_boundary_distance, prop52_beta_closed_form};
use adsvol::curves::{enumerate_classes, intersection_number, IntersectionConfig, DEFAULT_BUDGET};
use adsvol::deform::twist_length_derivative;
use adsvol::hypgeom::{collar_width, geodesic_distance, hexagon_seam, GeodesicLine};
use adsvol::riera::{riera_term, wp_grad_normsq_lower};
use adsvol::surface::{standard_topology, FNCoordinates};
use common::*;

// Reference values from 40-digit evaluations.
#[test]
fn frozen_scalars() {
    assert!((collar_width(1.0).unwrap() - 1.406_829_113_747_295_3).abs() < 1e-14);
    assert!((hexagon_seam(0.5, 0.5, 0.5) - 2.868_695_141_619_821_9).abs() < 1e-14);
    assert!((pants_boundary_distance(1.0) - 2.868_695_141_619_821_9).abs() < 1e-14);
    for (u, f) in [
        (1.5, 0.414_156_868_651_150_56),
        (2.0, 0.197_224_577_336_219_38),
        (8.0, 0.010_515_426_247_248_621),
        (100.0, 6.667_066_695_240_317_6e-5),
    ] {
        assert!((riera_term(u) - f).abs() < 1e-13 * f, "F({u})");
    }
    let c0 = optimal_c0();
    assert!((c0.c0 - 1.300_783_576_704_477_1).abs() < 1e-12);
    assert!((c0.argmax - 2.633_915_793_849_633).abs() < 1e-6);
    for (n, b) in [(1, 6.058_568_832_404_193), (2, 8.805_910_589_726_514), (8, 14.343_870_332_725_163)] {
        assert!((prop52_beta_closed_form(n, 2.0) - b).abs() < 1e-12);
        assert_eq!(example_prop52(n, 2.0).unwrap().beta_length, prop52_beta_closed_form(n, 2.0));
    }
}

/// Point at arclength `t` along the geodesic from `p` to `q`.
fn point_on(p: f64, q: f64, t: f64) -> (f64, f64) {
    // z = i e^t under w = (q z + p)/(z + 1).
    let (zr, zi) = (0.0, t.exp());
    let (nr, ni) = (q * zr + p, q * zi);
    let (dr, di) = (zr + 1.0, zi);
    let den = dr * dr + di * di;
    let (wr, wi) = ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den);
    (wr, wi.abs())
}

fn golden(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..110 {
        let x1 = b - g * (b - a);
        let x2 = a + g * (b - a);
        if f(x1) < f(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    f(0.5 * (a + b))
}

#[test]
fn geodesic_distance_matches_minimization() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut pairs = vec![((-1.0, 1.0), (2.0, 5.0)), ((0.1, 0.3), (-4.0, -0.7)), ((-2.0, 3.0), (3.5, 40.0))];
    while pairs.len() < 1000 {
        let mut e: Vec<f64> = (0..4).map(|_| rng.gen_range(-10.0..10.0)).collect();
        e.sort_by(f64::total_cmp);
        if e.windows(2).all(|w| w[1] - w[0] > 0.05) {
            pairs.push(((e[0], e[1]), (e[2], e[3])));
        }
    }
    for (g1, g2) in pairs {
        let dist = |x: (f64, f64), y: (f64, f64)| {
            let d2 = (x.0 - y.0).powi(2) + (x.1 - y.1).powi(2);
            (1.0 + d2 / (2.0 * x.1 * y.1)).acosh()
        };
        let inner = |t1: f64| {
            let x = point_on(g1.0, g1.1, t1);
            golden(-30.0, 30.0, |t2| dist(x, point_on(g2.0, g2.1, t2)))
        };
        let brute = golden(-30.0, 30.0, inner);
        let lib = geodesic_distance(&GeodesicLine::between(g1.0, g1.1).unwrap(), &GeodesicLine::between(g2.0, g2.1).unwrap());
        assert!((lib - brute).abs() < 1e-8, "{lib} vs {brute}");
    }
}

#[test]
fn class_count_matches_brute_force() {
    let rep = genus2([1.0; 3], [0.0; 3]);
    assert_eq!(brute_class_count(4, 2), 20);
    for len in 1..=3 {
        let lib = enumerate_classes(&rep, len, DEFAULT_BUDGET).unwrap();
        assert_eq!(lib.len(), brute_class_count(4, len as usize), "length {len}");
        let keys: std::collections::BTreeSet<_> = lib.iter().map(|c| orbit_key(c.letters())).collect();
        assert_eq!(keys.len(), lib.len());
    }
}

#[test]
fn riera_matches_brute_force() {
    let rep = genus2([1.0; 3], [0.0; 3]);
    let c = rep.curve_words[0].clone();
    for radius in 0..=4 {
        let o = riera_oracle(&rep, &c, radius);
        let r = wp_grad_normsq_lower(&rep, &c, radius as u32).unwrap();
        assert_eq!(r.n_terms, o.n_terms, "radius {radius}");
        let want = 2.0 / std::f64::consts::PI * (o.length + o.sum);
        assert!((r.lower_bound - want).abs() < 1e-8, "radius {radius}: {} vs {want}", r.lower_bound);
    }
}

#[test]
fn riera_dedupe_on_asymmetric_surface() {
    let rep = genus2([0.9, 1.3, 0.7], [0.4, -0.3, 0.1]);
    for c in [rep.curve_words[0].clone(), rep.curve_words[2].clone(), class("b1")] {
        for radius in 0..=3 {
            let o = riera_oracle(&rep, &c, radius);
            let r = wp_grad_normsq_lower(&rep, &c, radius as u32).unwrap();
            assert_eq!(r.n_terms, o.n_terms, "{c} radius {radius}");
            let want = 2.0 / std::f64::consts::PI * (o.length + o.sum);
            assert!((r.lower_bound - want).abs() < 1e-8);
        }
    }
}

#[test]
fn intersection_matches_fundamental_domain() {
    let rep = genus2([1.0, 1.2, 0.8], [0.3, 0.0, -0.2]);
    let cfg = IntersectionConfig::default();
    for (a, b, topological) in [("a1", "b1", 1), ("b1", "a1a1b1", 2), ("a1b1", "a1B1", 2), ("a1", "b2", 0)] {
        let (a, b) = (class(a), class(b));
        let lib = intersection_number(&rep, &a, &b, 4, &cfg).unwrap();
        let oracle = intersection_oracle(&rep, &a, &b, 4);
        assert_eq!(lib.count_lower_bound as usize, oracle, "{a} {b}");
        assert_eq!(oracle, topological, "{a} {b}");
    }
}

#[test]
fn twist_derivative_matches_richardson() {
    let topo = standard_topology(2).unwrap();
    let coords = FNCoordinates::new(vec![0.8, 1.2, 1.0], vec![0.1, 0.5, -0.25]).unwrap();
    for (edge, w) in [(0, "b1"), (0, "a1b1"), (1, "b2a2"), (2, "b1b2"), (2, "a1b1b2")] {
        let c = class(w);
        let lib = twist_length_derivative(&topo, &coords, edge, &c, 1e-4).unwrap();
        let oracle = twist_derivative_oracle(&coords, 2, edge, &c);
        assert!((lib - oracle).abs() < 1e-6, "{edge} {w}: {lib} vs {oracle}");
    }
}
