// Lower bounds for the Weil-Petersson gradient norm of a length function.

use adsvol::riera::{mainestimate_ratio, riera_terms, wp_grad_normsq_lower};
use adsvol::surface::{build_holonomy, standard_topology, FNCoordinates};

pub fn run() -> adsvol::Result<()> {
    let topo = standard_topology(2)?;
    let rep = build_holonomy(&topo, &FNCoordinates::new(vec![1.0, 1.0, 1.0], vec![0.0; 3])?)?;
    let c = rep.curve_words[0].clone();
    println!("curve {c}, length {:.6}", rep.curve_length(&c)?);
    for r in 0..=5 {
        let rep_r = wp_grad_normsq_lower(&rep, &c, r)?;
        println!(
            "radius {r}: {:>6} cosets, series {:.10}, bound {:.10}",
            rep_r.n_terms, rep_r.series_sum, rep_r.lower_bound
        );
    }
    println!("closest translates:");
    for t in riera_terms(&rep, &c, 3, 1_000_000)?.iter().take(6) {
        println!("  {:<8} u = {:.9}  F(u) = {:.9}", t.word, t.u, t.term);
    }
    println!("ratio estimate {:.6}", mainestimate_ratio(&rep, &c, 5)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
