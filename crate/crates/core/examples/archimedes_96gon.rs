//! Archimedes' doubling from the hexagon to the 96-gon, with the classical
//! bracket `223/71 < π < 22/7` certified at the last step.
//!
//! Run with `cargo run --example archimedes_96gon`.

use archimedes_pi::interval::{compare_certain, IntervalScalar, Verdict};
use archimedes_pi::polygons::{pi_bounds, scheme_measures, RegularScheme};

fn main() {
    let prec = 96;
    println!("{:>6}  {:<22} {:<22}", "sides", "p/2", "P/2");
    let mut scheme = RegularScheme::new(6, 0).unwrap();
    for _ in 0..=4 {
        let m = scheme_measures(scheme, prec).unwrap();
        println!(
            "{:>6}  {:<22.18} {:<22.18}",
            scheme.edge_count(),
            m.perimeter_in.mul_pow2(-1).lo_decimal(),
            m.perimeter_circ.mul_pow2(-1).hi_decimal(),
        );
        scheme = scheme.refine();
    }

    let bounds = pi_bounds(RegularScheme::new(6, 4).unwrap(), prec).unwrap();
    let lo = IntervalScalar::point(bounds.lo().clone(), prec);
    let hi = IntervalScalar::point(bounds.hi().clone(), prec);
    let below =
        compare_certain(&IntervalScalar::from_ratio(223, 71, prec), &lo) == Verdict::CertainlyLess;
    let above =
        compare_certain(&hi, &IntervalScalar::from_ratio(22, 7, prec)) == Verdict::CertainlyLess;
    println!("223/71 < p/2: {below}");
    println!("P/2 < 22/7:   {above}");
}
