//! Outward-rounded interval arithmetic on dyadic endpoints.
//!
//! Run with `cargo run --example interval_arithmetic`.

use archimedes_pi::interval::{compare_certain, IntervalScalar};

fn show(label: &str, x: &IntervalScalar) {
    let (lo, hi) = x.to_decimal_pair();
    println!("{label:<28} [{lo}, {hi}]  width {:.3e}", x.width_f64());
}

fn main() {
    for prec in [24, 53, 128] {
        let two = IntervalScalar::from_int(2, prec);
        let root = two.sqrt().expect("2 ≥ 0");
        show(&format!("sqrt(2) at {prec} bits"), &root);
        // The square encloses 2 but is no longer a point.
        show(&format!("sqrt(2)^2 at {prec} bits"), &root.sqr());
    }

    let third = IntervalScalar::from_ratio(1, 3, 64);
    let sum = third.add(&third).add(&third);
    show("1/3 + 1/3 + 1/3", &sum);
    println!("contains 1: {}", sum.contains(&IntervalScalar::one(64)));

    let a = IntervalScalar::from_decimal("3.1415926", 64).unwrap();
    let b = IntervalScalar::from_ratio(22, 7, 64);
    println!("3.1415926 vs 22/7: {}", compare_certain(&a, &b));
    println!(
        "1/3 vs 3/9: {}",
        compare_certain(&third, &IntervalScalar::from_ratio(3, 9, 64))
    );

    let straddle = IntervalScalar::from_int(-1, 64).hull(&IntervalScalar::one(64));
    match IntervalScalar::one(64).div(&straddle) {
        Ok(q) => show("1 / [-1, 1]", &q),
        Err(e) => println!("1 / [-1, 1]: {e}"),
    }
}
