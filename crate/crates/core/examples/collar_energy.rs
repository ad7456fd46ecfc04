// Energy of the collar test map approaching the earthquake.

use adsvol::deform::collar_testmap_energy;

pub fn run() -> adsvol::Result<()> {
    let limit = |mc: f64| mc + 2.0 * 2f64.sqrt() * std::f64::consts::PI * 2.0;
    for mc in [0.0, 0.5, 1.0, 2.0] {
        println!("length {mc}: limit {:.6}", limit(mc));
        for eps in [0.4, 0.2, 0.1, 0.05, 0.01] {
            let r = collar_testmap_energy(2, mc, eps, 256)?;
            println!(
                "  eps {eps:<5} energy {:.9}  bound {:.9}  quadrature {:.1e}",
                r.total_energy, r.bound, r.quadrature_tolerance
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
