//! Random circuits on the circle: as the mesh shrinks, inscribed and
//! circumscribed perimeters squeeze `2π` from both sides.
//!
//! Run with `cargo run --example circuits`.

use archimedes_pi::circuits::{circuit_measures, random_circuit};
use archimedes_pi::interval::IntervalScalar;
use archimedes_pi::trig::two_pi;

fn main() {
    let prec = 128;
    let tp = two_pi(prec);
    println!(
        "{:>4} {:>7} {:>12} {:>12} {:>12}",
        "k", "points", "2π − in", "circ − 2π", "mesh"
    );
    for k in 1..=8 {
        let cap = IntervalScalar::one(prec).mul_pow2(-k);
        let c = random_circuit(3, &cap, 2024, prec).unwrap();
        let m = circuit_measures(&c).unwrap();
        println!(
            "{k:>4} {:>7} {:>12.3e} {:>12.3e} {:>12.3e}",
            c.len(),
            tp.sub(&m.perimeter_in).mid_f64(),
            m.perimeter_circ.sub(&tp).mid_f64(),
            m.mesh.hi().to_f64(),
        );
    }
}
