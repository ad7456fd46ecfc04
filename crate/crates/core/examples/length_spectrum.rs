// Shortest closed geodesics among short words.

use adsvol::curves::{enumerate_classes, DEFAULT_BUDGET};
use adsvol::surface::{build_holonomy, standard_topology, FNCoordinates};

pub fn run() -> adsvol::Result<()> {
    let topo = standard_topology(2)?;
    let rep = build_holonomy(&topo, &FNCoordinates::new(vec![1.0, 1.5, 2.0], vec![0.3, 0.0, -0.4])?)?;
    let classes = enumerate_classes(&rep, 4, DEFAULT_BUDGET)?;
    let mut spectrum = classes
        .iter()
        .map(|c| Ok((rep.curve_length(c)?, c.clone())))
        .collect::<adsvol::Result<Vec<_>>>()?;
    spectrum.sort_by(|a, b| a.0.total_cmp(&b.0));
    println!("{} classes up to word length 4", spectrum.len());
    for (l, c) in spectrum.iter().take(12) {
        println!("{l:>12.6}  {c}  primitive={}", c.is_primitive());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
