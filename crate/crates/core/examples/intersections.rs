// Intersection numbers between decomposition curves and a few transversals.

use adsvol::curves::{intersection_number, CurveClass, IntersectionConfig};
use adsvol::surface::{build_holonomy, standard_topology, FNCoordinates};

pub fn run() -> adsvol::Result<()> {
    let topo = standard_topology(2)?;
    let rep = build_holonomy(&topo, &FNCoordinates::new(vec![1.0, 1.0, 1.0], vec![0.0; 3])?)?;
    let mut curves: Vec<CurveClass> = rep.curve_words.clone();
    for w in ["b1", "b2", "a1b1", "a1a1b1"] {
        curves.push(w.parse()?);
    }
    let cfg = IntersectionConfig::default();
    print!("{:>10}", "");
    for c in &curves {
        print!("{:>10}", c.to_string());
    }
    println!();
    for x in &curves {
        print!("{:>10}", x.to_string());
        for y in &curves {
            let r = intersection_number(&rep, x, y, 4, &cfg)?;
            let mark = if r.certified_exact { "" } else { "?" };
            print!("{:>10}", format!("{}{mark}", r.count_lower_bound));
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
