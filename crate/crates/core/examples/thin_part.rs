// The gradient ratio as one pants curve is pinched.

use adsvol::curves::CurveClass;
use adsvol::riera::wp_grad_normsq_lower;
use adsvol::surface::{build_holonomy, standard_topology, FNCoordinates};

pub fn run() -> adsvol::Result<()> {
    let topo = standard_topology(2)?;
    let beta: CurveClass = "b1".parse()?;
    println!("{:>6} {:>10} {:>12} {:>8} {:>8}", "l1", "len(b1)", "bound", "ratio", "floor");
    for l1 in [1.0, 0.5, 0.1, 0.05] {
        let rep = build_holonomy(&topo, &FNCoordinates::new(vec![l1, 1.0, 1.0], vec![0.0; 3])?)?;
        let r = wp_grad_normsq_lower(&rep, &beta, 4)?;
        let chi = rep.euler_characteristic_abs();
        let ratio = r.lower_bound.sqrt() * chi / r.curve_length;
        let floor = r.base_term.sqrt() * chi / r.curve_length;
        println!("{l1:>6} {:>10.5} {:>12.6} {ratio:>8.4} {floor:>8.4}", r.curve_length, r.lower_bound);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
