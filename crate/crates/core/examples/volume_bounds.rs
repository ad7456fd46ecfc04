// Volume brackets, distance bounds and the pointwise energy densities.

use adsvol::bounds::{
    closing_upper_bound, fuchsian_volume, pointwise_densities, thurston_upper_bound, volume_bracket_from_lamination,
    wp_level_diameter, wp_level_distance, wp_lower_bound_form, wp_pinching,
};

pub fn run() -> adsvol::Result<()> {
    for genus in [2, 3, 5] {
        println!("genus {genus}: fuchsian volume {:.6}", fuchsian_volume(genus)?);
        for lam in [0.0, 1.0, 10.0] {
            let b = volume_bracket_from_lamination(lam, genus)?;
            println!("  lamination {lam:>5}: [{:.4}, {:.4}]", b.lower, b.upper);
        }
        for d in [0.0, 1.0, 3.0] {
            println!(
                "  d = {d}: upper {:.4}, closing (a = 1) {:.4}, wp form {:.4}",
                thurston_upper_bound(d, genus)?,
                closing_upper_bound(d, 1.0, genus)?,
                wp_lower_bound_form(d, 1.0, 0.1, 0.0, genus)?
            );
        }
        println!(
            "  level set: distance {:.4}, diameter {:.4}, pinching {:.4}",
            wp_level_distance(2.0, 1.0, genus, 1.0)?,
            wp_level_diameter(1.0)?,
            wp_pinching(0.5)?
        );
    }
    for m in [[[1.0, 0.0], [0.0, 1.0]], [[2.0, 0.5], [0.0, 0.5]], [[1.0, 0.0], [0.0, -1.0]]] {
        println!("{m:?}: {:?}", pointwise_densities(m));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
