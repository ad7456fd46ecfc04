// The family with bounded volume and diverging Thurston distance.

use adsvol::bounds::{example_prop52, fit_prop52_constants};

pub fn run() -> adsvol::Result<()> {
    println!("{:>3} {:>8} {:>12} {:>12} {:>10} {:>18}", "n", "length", "closed form", "holonomy", "floor", "bracket");
    for n in 1..=8 {
        let r = example_prop52(n, 2.0)?;
        println!(
            "{n:>3} {:>8} {:>12.6} {:>12.6} {:>10.4}   [{:.2}, {:.4}]",
            r.lamination_length, r.beta_length, r.holonomy_beta_length, r.ratio_floor, r.bracket.lower, r.bracket.upper
        );
    }
    let fit = fit_prop52_constants(2.0, 64)?;
    println!("fitted: length ~ {:.4} log n + {:.4} (max residual {:.2e})", fit.c1, fit.c2, fit.max_residual);
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
