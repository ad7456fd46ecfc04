// Fenchel-Nielsen coordinates to a holonomy representation.

use adsvol::surface::{build_holonomy, standard_topology, FNCoordinates};

pub fn run() -> adsvol::Result<()> {
    for genus in [2, 3, 4] {
        let topo = standard_topology(genus)?;
        let n = topo.edge_count();
        let lengths: Vec<f64> = (0..n).map(|i| 0.8 + 0.1 * i as f64).collect();
        let twists: Vec<f64> = (0..n).map(|i| 0.3 * (i as f64 - 1.0)).collect();
        let coords = FNCoordinates::new(lengths, twists)?;
        let rep = build_holonomy(&topo, &coords)?;
        let worst = rep.trace_residuals(&coords).into_iter().fold(0.0, f64::max);
        println!(
            "genus {genus}: {} pants, {n} edges, relator residual {:.1e}, trace check {:.1e}",
            topo.pants_count, rep.relator_residual, worst
        );
        for (i, w) in rep.curve_words.iter().enumerate() {
            println!("  edge {i}: {w:<12} length {:.12}", rep.curve_length(w)?);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
