//! Chords that close up after `N` steps and `k` turns: star polygons and
//! their per-turn perimeters, which increase toward `2π` as the chord
//! shortens.
//!
//! Run with `cargo run --example rational_paths`.

use archimedes_pi::rational::{coprime_pairs, gamma_path, realize_rational};
use archimedes_pi::trig::two_pi;

fn main() {
    let prec = 96;
    let mut rows = Vec::new();
    for (k, n) in coprime_pairs(9) {
        let r = realize_rational(k, n, prec).unwrap();
        let path = gamma_path(&r).unwrap();
        rows.push((
            r.chord().mid_f64(),
            k,
            n,
            path.len(),
            r.normalized().mid_f64(),
        ));
    }
    rows.sort_by(|a, b| b.0.total_cmp(&a.0));
    println!(
        "{:>5} {:>10} {:>8} {:>14}",
        "k/N", "chord", "points", "(N/k)·chord"
    );
    for (chord, k, n, points, per_turn) in rows {
        println!(
            "{:>5} {chord:>10.6} {points:>8} {per_turn:>14.10}",
            format!("{k}/{n}")
        );
    }
    println!("2π = {:.10}", two_pi(prec).mid_f64());
}
