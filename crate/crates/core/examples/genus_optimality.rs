// The constant in the volume against Thurston distance estimate.

use adsvol::bounds::{example_genus_optimality, optimal_c0, pants_boundary_distance};

pub fn run() -> adsvol::Result<()> {
    let c0 = optimal_c0();
    println!("C0 = {:.9} at u = {:.6} (single peak: {})", c0.c0, c0.argmax, c0.unimodal);
    for u in [0.5, 1.0, c0.argmax, 5.0] {
        println!("u = {u:.4}: r(u) = {:.6}, (3/8) u r(u) = {:.6}", pants_boundary_distance(u), 0.375 * u * pants_boundary_distance(u));
    }
    for genus in [2, 5, 10] {
        let r = example_genus_optimality(genus, c0.argmax, 1.0)?;
        println!(
            "genus {genus}: lamination {:.4}, exp d <= {:.6}, volume ratio >= {:.4}",
            r.lamination_length, r.exp_dth_upper, r.volume_ratio_floor
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
