//! Release acceptance checks. Each prints one PASS or FAIL line; the
//! process exits non-zero if any fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use adsvol::bounds::{
    example_prop52, fuchsian_volume, optimal_c0, pointwise_densities, wp_level_diameter, wp_level_distance,
    wp_pinching, PROP52_CROSS_CHECK_TOLERANCE,
};
use adsvol::curves::{intersection_number, CurveClass, IntersectionConfig, Letter};
use adsvol::deform::{collar_testmap_energy, twist_length_derivative};
use adsvol::hypgeom::collar_width;
use adsvol::riera::{mainestimate_ratio, wp_grad_normsq_lower};
use adsvol::surface::{bers_constant, build_holonomy, standard_topology, FNCoordinates, HolonomyRep};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BASE_TERM_TOL: f64 = 1e-12;
const ORACLE_TOL: f64 = 1e-8;
const TWIST_SLACK: f64 = 1e-3;
const DENSITY_TOL: f64 = 1e-10;
const HOLONOMY_TOL: f64 = 1e-6;
const FORMULA_TOL: f64 = 1e-12;
const C0_TARGET: f64 = 1.30;
const C0_TOL: f64 = 0.01;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_rep(rng: &mut ChaCha8Rng) -> (FNCoordinates, HolonomyRep) {
    let coords = FNCoordinates::sample(rng, 2);
    let rep = build_holonomy(&standard_topology(2).unwrap(), &coords).unwrap();
    (coords, rep)
}

fn c1_base_term() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let (_, rep) = random_rep(&mut rng);
        for c in rep.curve_words.iter().chain([&class("b1")]) {
            let r = wp_grad_normsq_lower(&rep, c, 0).unwrap();
            let want = 2.0 / PI * rep.curve_length(c).unwrap();
            worst = worst.max((r.lower_bound - want).abs());
        }
    }
    outcome(worst <= BASE_TERM_TOL, format!("max |bound − (2/π)ℓ| = {worst:.1e} over 50 surfaces"))
}

fn c2_oracle() -> Outcome {
    let rep = genus2([1.0; 3], [0.0; 3]);
    let c = rep.curve_words[0].clone();
    let mut worst: f64 = 0.0;
    let mut counts = Vec::new();
    let mut same_count = true;
    for radius in 0..=5 {
        let o = riera_oracle(&rep, &c, radius);
        let r = wp_grad_normsq_lower(&rep, &c, radius as u32).unwrap();
        worst = worst.max((r.lower_bound - 2.0 / PI * (o.length + o.sum)).abs());
        same_count &= o.n_terms == r.n_terms;
        counts.push(r.n_terms);
    }
    outcome(
        worst <= ORACLE_TOL && same_count,
        format!("max deviation {worst:.1e}, cosets {counts:?}, counts agree: {same_count}"),
    )
}

fn sample_curves(rep: &HolonomyRep) -> [CurveClass; 3] {
    [rep.curve_words[0].clone(), rep.curve_words[2].clone(), class("b1")]
}

fn c3_monotone() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = 0;
    for _ in 0..20 {
        let (_, rep) = random_rep(&mut rng);
        for c in sample_curves(&rep) {
            let mut last = f64::NEG_INFINITY;
            for r in 0..=5 {
                let lb = wp_grad_normsq_lower(&rep, &c, r).unwrap().lower_bound;
                if lb < last {
                    violations += 1;
                }
                last = lb;
            }
        }
    }
    outcome(violations == 0, format!("{violations} violations over 20 surfaces × 3 curves × radii 0..5"))
}

fn c4_gradient() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut below_floor = 0;
    let mut min_ratio = f64::INFINITY;
    for _ in 0..20 {
        let (_, rep) = random_rep(&mut rng);
        for c in sample_curves(&rep) {
            let ratio = mainestimate_ratio(&rep, &c, 4).unwrap();
            let floor = (2.0 / (PI * rep.curve_length(&c).unwrap())).sqrt() * rep.euler_characteristic_abs();
            if ratio < floor {
                below_floor += 1;
            }
            min_ratio = min_ratio.min(ratio);
        }
    }
    let beta = class("b1");
    let sweep: Vec<f64> = [1.0, 0.5, 0.1, 0.05]
        .iter()
        .map(|&l1| mainestimate_ratio(&genus2([l1, 1.0, 1.0], [0.0; 3]), &beta, 4).unwrap())
        .collect();
    let sweep_min = sweep.iter().copied().fold(f64::INFINITY, f64::min);
    // Bounded away from zero: the thin end keeps at least half the thick value.
    let steady = sweep_min >= 0.5 * sweep[0];
    outcome(
        below_floor == 0 && steady,
        format!(
            "{below_floor} samples below floor, sample min {min_ratio:.4}; thin sweep {:?}, min {sweep_min:.4}",
            sweep.iter().map(|r| (r * 1e4).round() / 1e4).collect::<Vec<_>>()
        ),
    )
}

fn c5_pinched_family() -> Outcome {
    let reports: Vec<_> = (1..=8).map(|n| example_prop52(n, 2.0).unwrap()).collect();
    let unit = reports.iter().all(|r| r.lamination_length == 1.0);
    let worst = reports.iter().map(|r| r.cross_check_relative_error).fold(0.0, f64::max);
    let cross = worst <= PROP52_CROSS_CHECK_TOLERANCE;
    let increasing = reports.windows(2).all(|w| w[1].ratio_floor > w[0].ratio_floor);
    let upper = 0.25 + PI * PI / 2.0 * 2.0;
    let bracket = reports.iter().all(|r| r.bracket.lower == 0.25 && (r.bracket.upper - upper).abs() <= FORMULA_TOL);
    let ratio = reports[0].holonomy_beta_length / reports[0].beta_length;
    outcome(
        unit && cross && increasing && bracket,
        format!(
            "lamination 1: {unit}; closed form vs holonomy rel err {worst:.3} (holonomy/closed = {ratio:.6}); \
             floor increasing: {increasing}; bracket constant: {bracket}"
        ),
    )
}

fn c6_c0() -> Outcome {
    let s = optimal_c0();
    outcome(
        (s.c0 - C0_TARGET).abs() <= C0_TOL && s.unimodal,
        format!("C0 = {:.6} at u = {:.6}, unimodal: {}", s.c0, s.argmax, s.unimodal),
    )
}

fn random_witness(rng: &mut ChaCha8Rng) -> CurveClass {
    loop {
        let len = rng.gen_range(1..=4);
        let w: Vec<Letter> = (0..len).map(|_| Letter::from_code(rng.gen_range(0..8))).collect();
        if let Ok(c) = CurveClass::new(w) {
            return c;
        }
    }
}

fn c7_twist() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let topo = standard_topology(2).unwrap();
    let cfg = IntersectionConfig::default();
    let (mut violations, mut worst, mut done) = (0, f64::NEG_INFINITY, 0);
    while done < 100 {
        let (coords, rep) = random_rep(&mut rng);
        let witness = random_witness(&mut rng);
        let edge = rng.gen_range(0..3);
        let Ok(d) = twist_length_derivative(&topo, &coords, edge, &witness, 1e-5) else { continue };
        let i = intersection_number(&rep, &witness, &rep.curve_words[edge], 4, &cfg).unwrap().count_lower_bound;
        if d.abs() > i as f64 + TWIST_SLACK {
            violations += 1;
        }
        worst = worst.max(d.abs() - i as f64);
        done += 1;
    }
    outcome(violations == 0, format!("{violations} violations in 100 pairs, max |d| − ι = {worst:.2e}"))
}

fn c8_energy() -> Outcome {
    let iso = 2.0 * 2f64.sqrt() * PI * 2.0;
    let zero = collar_testmap_energy(2, 0.0, 0.1, 256).unwrap();
    let zero_ok = (zero.total_energy - iso).abs() <= zero.quadrature_tolerance + 4.0 * f64::EPSILON * iso;
    let mut bounded = true;
    let mut converging = true;
    let mut gaps = Vec::new();
    for mc in [0.5, 1.0, 2.0] {
        let mut last_gap = f64::INFINITY;
        for eps in [0.2, 0.1, 0.05] {
            let r = collar_testmap_energy(2, mc, eps, 256).unwrap();
            bounded &= r.total_energy <= eps.cosh() * mc + iso + r.quadrature_tolerance;
            let gap = (r.total_energy - (mc + iso)).abs();
            converging &= gap < last_gap;
            last_gap = gap;
        }
        gaps.push(last_gap);
    }
    outcome(
        zero_ok && bounded && converging,
        format!(
            "isometry energy off by {:.1e}; bounded: {bounded}; gap shrinking: {converging}, final gaps {:?}",
            (zero.total_energy - iso).abs(),
            gaps.iter().map(|g| (g * 1e6).round() / 1e6).collect::<Vec<_>>()
        ),
    )
}

fn c9_densities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let m = [[rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)], [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]];
        let r = pointwise_densities(m);
        worst = worst.max((r.norm_df.powi(2) - r.norm_del.powi(2) - r.norm_delbar.powi(2)).abs());
        worst = worst.max((r.schatten_trace - 2f64.sqrt() * r.norm_del.max(r.norm_delbar)).abs());
    }
    outcome(worst <= DENSITY_TOL, format!("max identity residual {worst:.1e} over 10^4 matrices"))
}

fn c10_holonomy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut relator, mut trace): (f64, f64) = (0.0, 0.0);
    for _ in 0..200 {
        let (coords, rep) = random_rep(&mut rng);
        relator = relator.max(rep.relator_residual);
        trace = trace.max(rep.trace_residuals(&coords).into_iter().fold(0.0, f64::max));
    }
    outcome(
        relator <= HOLONOMY_TOL && trace <= HOLONOMY_TOL,
        format!("max relator residual {relator:.1e}, max trace residual {trace:.1e} over 200 samples"),
    )
}

fn c11_intersection() -> Outcome {
    let cfg = IntersectionConfig::default();
    let rep = genus2([0.9, 1.4, 1.1], [0.2, -0.5, 0.3]);
    let mut disjoint = true;
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let r = intersection_number(&rep, &rep.curve_words[a], &rep.curve_words[b], 4, &cfg).unwrap();
        disjoint &= r.count_lower_bound == 0 && r.certified_exact;
    }
    let beta = class("b1");
    let mut once = true;
    for n in 1..=8 {
        let h = genus2([1.0 / n as f64, 1.0, 2.0], [0.0; 3]);
        once &= intersection_number(&h, &h.curve_words[0], &beta, 4, &cfg).unwrap().count_lower_bound == 1;
    }
    let mut oracle = true;
    let asym = genus2([1.0, 1.2, 0.8], [0.3, 0.0, -0.2]);
    for (a, b) in [("a1", "b1"), ("b1", "a1a1b1"), ("a1b1", "a1B1")] {
        let (a, b) = (class(a), class(b));
        let lib = intersection_number(&asym, &a, &b, 4, &cfg).unwrap().count_lower_bound as usize;
        oracle &= lib == intersection_oracle(&asym, &a, &b, 4);
    }
    outcome(
        disjoint && once && oracle,
        format!("edges disjoint and certified: {disjoint}; ι(α, β) = 1 for n = 1..8: {once}; oracle cases agree: {oracle}"),
    )
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn c12_formulas() -> Outcome {
    let mut worst: f64 = 0.0;
    worst = worst.max(rel(fuchsian_volume(2).unwrap(), 2.0 * PI * PI));
    worst = worst.max(rel(bers_constant(2).unwrap(), 6.0 * (3.0 * PI).sqrt()));
    worst = worst.max(rel(collar_width(2.0 * 1f64.asinh()).unwrap(), 1f64.asinh()));
    for k in 1..=40 {
        let x = k as f64 * 0.25;
        worst = worst.max(rel(wp_pinching(x).unwrap(), (2.0 * PI * x).sqrt()));
        worst = worst.max(rel(wp_level_diameter(x).unwrap(), 2.0 * (2.0 * PI * x).sqrt()));
        for genus in [2u32, 3, 7] {
            for (m, a) in [(1.0, 1.0), (3.5, 0.4), (10.0, 2.0)] {
                let chi = (2 * genus - 2) as f64;
                let want = chi / a * (m * (3 * genus - 3) as f64 / x).ln();
                worst = worst.max(rel(wp_level_distance(m, x, genus, a).unwrap(), want));
            }
        }
    }
    outcome(worst <= FORMULA_TOL, format!("max relative deviation {worst:.1e}"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("Riera base term at radius 0", Duration::from_secs(1), c1_base_term),
        ("Riera pipeline vs brute-force oracle", Duration::from_secs(30), c2_oracle),
        ("truncation monotonicity", Duration::from_secs(120), c3_monotone),
        ("gradient ratio floor and thin sweep", Duration::from_secs(120), c4_gradient),
        ("pinched torus family", Duration::from_secs(10), c5_pinched_family),
        ("genus-optimality constant", Duration::from_secs(1), c6_c0),
        ("twist first variation", Duration::from_secs(120), c7_twist),
        ("collar energy endpoints", Duration::from_secs(5), c8_energy),
        ("energy density identities", Duration::from_secs(1), c9_densities),
        ("holonomy invariants", Duration::from_secs(30), c10_holonomy),
        ("intersection numbers", Duration::from_secs(60), c11_intersection),
        ("closed-form evaluators", Duration::from_secs(1), c12_formulas),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let took = start.elapsed();
        let pass = o.pass && took <= *limit;
        if !pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {} [{:.2}s, limit {}s]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
