// Length ratios between two surfaces bound the Thurston distance below.

use adsvol::bounds::{closing_upper_bound, volume_bracket_from_lamination};
use adsvol::curves::{thurston_ratio_lower_bound, DEFAULT_BUDGET};
use adsvol::deform::{earthquake, Direction, TwistSpec};
use adsvol::surface::{build_holonomy, standard_topology, FNCoordinates};

pub fn run() -> adsvol::Result<()> {
    let topo = standard_topology(2)?;
    let h = FNCoordinates::new(vec![1.0, 1.0, 1.0], vec![0.0; 3])?;
    let rep_h = build_holonomy(&topo, &h)?;
    for w in [0.5, 1.0, 2.0, 4.0] {
        let spec = TwistSpec::new(vec![w, w, 0.0], Direction::Left)?;
        let rep_h2 = build_holonomy(&topo, &earthquake(&h, &spec)?)?;
        let ratio = thurston_ratio_lower_bound(&rep_h, &rep_h2, 4, DEFAULT_BUDGET)?;
        let lam = spec.lamination_length(&h)?;
        let bracket = volume_bracket_from_lamination(lam, 2)?;
        let closing = closing_upper_bound(ratio.ln().max(0.0), 1.0, 2)?;
        println!(
            "weight {w}: ratio >= {ratio:.6}, lamination {lam:.3}, volume >= {:.3}, closing bound at a = 1: {closing:.3}",
            bracket.lower
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
