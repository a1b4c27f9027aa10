//! Decimal digits of π certified by polygon enclosures alone.
//!
//! Run with `cargo run --example pi_digits -- 40`.

use archimedes_pi::polygons::pi_digits;

fn main() {
    let count = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(30);
    match pi_digits(count) {
        Ok(digits) => println!("{digits}"),
        Err(e) => {
            eprintln!("pi_digits({count}): {e}");
            std::process::exit(1);
        }
    }
}
