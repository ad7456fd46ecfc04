// Isometries of the upper half-plane: classification, axes, distances.

use adsvol::hypgeom::{
    collar_width, common_perpendicular, geodesic_distance, geodesics_cross, hexagon_seam, GeodesicLine, Mobius,
};

pub fn run() -> adsvol::Result<()> {
    let g = Mobius::new(2.0, 1.0, 1.0, 1.0)?;
    println!("{g:?} is {:?}, translation length {:.6}", g.classify(), g.translation_length()?);
    let axis = g.axis()?;
    println!("axis {axis:?}");

    let h = Mobius::rotation(0.7);
    println!("rotation is {:?}", h.classify());

    let a = GeodesicLine::between(-1.0, 1.0)?;
    let b = GeodesicLine::between(2.0, 5.0)?;
    println!("cross: {}  distance: {:.9}", geodesics_cross(&a, &b)?, geodesic_distance(&a, &b));
    if let Some((p, q)) = common_perpendicular(&a, &b) {
        println!("feet {p:?} {q:?}, span {:.9}", p.distance(&q));
    }

    for eps in [2.0, 1.0, 0.1, 0.01] {
        println!("collar half-width around length {eps}: {:.6}", collar_width(eps)?);
    }
    println!("seam of the (1,1,1) hexagon: {:.9}", hexagon_seam(0.5, 0.5, 0.5));
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
