//! Regular partitions of an arc: cumulative chords, projection gaps and
//! tangent segments, with the chord and tangent comparison laws.
//!
//! Run with `cargo run --example chord_laws`.

use archimedes_pi::chords::{chord_compare, partition_profile, tangent_compare, ArcSpec};
use archimedes_pi::interval::IntervalScalar;

fn main() {
    let prec = 128;
    let arc = ArcSpec::from_chord(IntervalScalar::from_ratio(3, 2, prec)).unwrap();
    let n = 6;
    let profile = partition_profile(&arc, n, prec).unwrap();
    println!(
        "arc with chord 1.5 split into {n} equal steps, step chord {:.12}",
        profile.step_chord.mid_f64()
    );
    println!(
        "{:>3} {:>16} {:>16} {:>16}",
        "k", "|P1 P(k+1)|", "projection gap", "tangent segment"
    );
    for k in 0..n as usize {
        println!(
            "{:>3} {:>16.12} {:>16.12} {:>16.12}",
            k + 1,
            profile.cumulative_chords[k].mid_f64(),
            profile.projections[k].mid_f64(),
            profile.tangent_segments[k].mid_f64(),
        );
    }
    for (m, n) in [(1, 2), (2, 5), (5, 6)] {
        let c = chord_compare(&arc, m, n, prec).unwrap();
        let t = tangent_compare(&arc, m, n, prec).unwrap();
        println!(
            "m={m} n={n}: m·ℓ_n vs n·ℓ_m {}, n·L_m vs m·L_n {}",
            c.verdict, t.verdict
        );
    }
}
