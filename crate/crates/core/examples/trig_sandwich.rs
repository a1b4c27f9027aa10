//! Sine and cosine read off the polygon arclength map, and the bracket
//! `1 < θ / sin θ < 1 / cos θ` closing on 1 as `θ → 0`.
//!
//! Run with `cargo run --example trig_sandwich`.

use archimedes_pi::interval::{Dyadic, IntervalScalar};
use archimedes_pi::trig::{geometric_point, sandwich_report, SANDWICH_CSV_HEADER};

fn main() {
    let prec = 128;
    let theta = IntervalScalar::from_ratio(1, 2, prec);
    let p = geometric_point(&theta, prec).unwrap();
    println!("cos(1/2) = {:.20}", p.x().mid_f64());
    println!("sin(1/2) = {:.20}", p.y().mid_f64());

    println!("{SANDWICH_CSV_HEADER}");
    for k in 1..=12 {
        let theta = IntervalScalar::point(Dyadic::pow2(-k), prec);
        println!("{}", sandwich_report(&theta, prec).unwrap().csv_row());
    }
}
