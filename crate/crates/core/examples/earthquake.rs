// Twisting along pants curves and the first variation of length.

use adsvol::curves::{intersection_number, CurveClass, IntersectionConfig};
use adsvol::deform::{earthquake, length_growth_bound_check, twist_length_derivative, Direction, TwistSpec};
use adsvol::surface::{build_holonomy, standard_topology, FNCoordinates};

pub fn run() -> adsvol::Result<()> {
    let topo = standard_topology(2)?;
    let coords = FNCoordinates::new(vec![0.8, 1.2, 1.0], vec![0.0, 0.5, -0.25])?;
    let spec = TwistSpec::single(3, 0, 0.5, Direction::Left)?;
    let moved = earthquake(&coords, &spec)?;
    println!("twists {:?} -> {:?}", coords.twists, moved.twists);
    println!("and back: {:?}", earthquake(&moved, &spec.reversed())?.twists);

    let rep = build_holonomy(&topo, &coords)?;
    let cfg = IntersectionConfig::default();
    for w in ["b1", "a1b1", "b1b1a2", "a1B1a2"] {
        let c: CurveClass = w.parse()?;
        let d = twist_length_derivative(&topo, &coords, 0, &c, 1e-4)?;
        let i = intersection_number(&rep, &c, &rep.curve_words[0], 4, &cfg)?;
        println!("d/dt length({w}) = {d:+.6}, bounded by i = {}", i.count_lower_bound);
    }

    let report = length_growth_bound_check(&topo, &coords, &TwistSpec::new(vec![1.0, 0.0, 2.0], Direction::Right)?, 1.5)?;
    println!("growth bound {:.6}, all satisfied: {}", report.bound, report.all_satisfied);
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
