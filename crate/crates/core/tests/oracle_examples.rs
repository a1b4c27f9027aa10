//! Worked examples checked against the independent series oracle.

mod common;

use archimedes_pi::chords::{
    chord_compare, partition_profile, solve_regular_chord, tangent_compare, ArcSpec,
};
use archimedes_pi::circuits::{
    circuit_measures, grid_circuit, random_circuit, step_by_chord, tangent_intersection,
    CirclePoint, VertexTable,
};
use archimedes_pi::interval::{IntervalScalar, Verdict};
use archimedes_pi::polygons::{
    circumscribed_edge, halve_edge, pi_bounds, pi_digits, scheme_measures, seed_edge, vertex_gap,
    RegularScheme,
};
use archimedes_pi::rational::{gamma_path, normalized_compare, realize_rational, Mode};
use archimedes_pi::trig::{arc_measure, geometric_point, sandwich_report};
use common::*;

const PREC: u32 = 160;
const TIGHT: i64 = 140;

fn dec(s: &str) -> IntervalScalar {
    IntervalScalar::from_decimal(s, PREC).unwrap()
}

#[test]
fn halved_edges_are_sines() {
    let sq = halve_edge(&seed_edge(4, PREC).unwrap()).unwrap();
    assert!(agrees(&sq, &(sin(&pi_times(1, 8)) * 2), TIGHT));
    let hex = halve_edge(&seed_edge(6, PREC).unwrap()).unwrap();
    assert!(agrees(&hex, &(sin(&pi_times(1, 12)) * 2), TIGHT));
    let tiny = halve_edge(&dec("0.001")).unwrap();
    assert!(strictly_between(&tiny, "0.0005", "0.00051"));
    assert!(tiny.width_f64() < 1e-40);
}

#[test]
fn circumscribed_edges_are_tangents() {
    let hex = circumscribed_edge(&IntervalScalar::one(PREC)).unwrap();
    assert!(agrees(&hex, &(tan(&pi_times(1, 6)) * 2), TIGHT));
    let tri = circumscribed_edge(&seed_edge(3, PREC).unwrap()).unwrap();
    assert!(agrees(&tri, &(tan(&pi_times(1, 3)) * 2), TIGHT));
}

#[test]
fn vertex_gaps_are_secants_minus_one() {
    let hex_edge = circumscribed_edge(&IntervalScalar::one(PREC)).unwrap();
    let h = vertex_gap(&hex_edge).unwrap();
    let sec = div(&one(), &cos(&pi_times(1, 6))) - one();
    assert!(agrees(&h, &sec, TIGHT));
    assert!(strictly_between(
        &vertex_gap(&dec("0.01")).unwrap(),
        "0.000012",
        "0.000013"
    ));
}

#[test]
fn hexagon_measures_at_depth_zero() {
    let s = scheme_measures(RegularScheme::new(6, 0).unwrap(), PREC).unwrap();
    let root3 = sqrt(&int(3));
    assert!(agrees(&s.perimeter_in, &int(6), TIGHT));
    assert!(agrees(&s.perimeter_circ, &(&root3 * 4), TIGHT));
    assert!(agrees(&s.area_in, &(&root3 * 3 / 2), TIGHT));
    assert!(agrees(&s.area_circ, &(&root3 * 2), TIGHT));
}

#[test]
fn octagon_perimeter() {
    let s = scheme_measures(RegularScheme::new(4, 1).unwrap(), PREC).unwrap();
    assert!(agrees(&s.perimeter_in, &(sin(&pi_times(1, 8)) * 16), TIGHT));
    assert!(strictly_between(&s.perimeter_in, "6.1229349", "6.1229350"));
}

#[test]
fn seed_brackets() {
    let point = |d: &archimedes_pi::interval::Dyadic| IntervalScalar::point(d.clone(), PREC);
    let hex = pi_bounds(RegularScheme::new(6, 0).unwrap(), PREC).unwrap();
    assert!(close(&point(hex.lo()), &int(3), TIGHT));
    assert!(close(&point(hex.hi()), &(sqrt(&int(3)) * 2), TIGHT));
    let tri = pi_bounds(RegularScheme::new(3, 0).unwrap(), PREC).unwrap();
    assert!(close(&point(tri.lo()), &(sqrt(&int(3)) * 3 / 2), TIGHT));
    assert!(close(&point(tri.hi()), &(sqrt(&int(3)) * 3), TIGHT));
    assert!(tri.contains(&enclose(&pi(), PREC)));
}

#[test]
fn digits_match_machin() {
    for d in [1, 2, 5, 20, 50, 120] {
        assert_eq!(pi_digits(d).unwrap(), common::pi_digits(d), "{d} digits");
    }
}

#[test]
fn two_hexagon_steps() {
    let top = CirclePoint::new(IntervalScalar::zero(PREC), IntervalScalar::one(PREC)).unwrap();
    let p = step_by_chord(&top, &IntervalScalar::one(PREC)).unwrap();
    assert!(agrees(p.x(), &-cos(&pi_times(1, 6)), TIGHT));
    assert!(agrees(p.y(), &ratio(1, 2), TIGHT));
    assert!(top.dist(&p).overlaps(&IntervalScalar::one(PREC)));
}

#[test]
fn tangents_at_a_sixth() {
    let p = CirclePoint::start(PREC);
    let q = step_by_chord(&p, &IntervalScalar::one(PREC)).unwrap();
    let t = tangent_intersection(&p, &q).unwrap();
    assert!(agrees(&t.x, &one(), TIGHT));
    assert!(agrees(&t.y, &tan(&pi_times(1, 6)), TIGHT));
}

#[test]
fn irregular_twelve_gon_circuit() {
    let table = VertexTable::new(2, PREC).unwrap();
    let c = grid_circuit(&table, &[0, 2, 5, 8, 10]).unwrap();
    let m = circuit_measures(&c).unwrap();
    let expected: num_bigint::BigInt = [2, 3, 3, 2, 2]
        .iter()
        .map(|&a| sin(&pi_times(a, 12)) * 2)
        .sum();
    assert!(agrees(&m.perimeter_in, &expected, 120));
    let circ: num_bigint::BigInt = [2, 3, 3, 2, 2]
        .iter()
        .map(|&a| tan(&pi_times(a, 12)) * 2)
        .sum();
    assert!(agrees(&m.perimeter_circ, &circ, 120));
}

#[test]
fn fine_random_circuit_perimeter() {
    let c = random_circuit(64, &dec("0.1"), 1, 128).unwrap();
    assert!(c.len() >= 64);
    let m = circuit_measures(&c).unwrap();
    assert!(strictly_between(&m.perimeter_in, "6.27", "6.2832"));
    assert!(less(&m.perimeter_in, &enclose(&(pi() * 2), 128)));
}

#[test]
fn regular_chords_of_arcs() {
    let quarter = solve_regular_chord(&ArcSpec::quarter(PREC), 2, PREC).unwrap();
    assert!(agrees(&quarter, &(sin(&pi_times(1, 8)) * 2), 100));
    let sixth = solve_regular_chord(&ArcSpec::sixth(PREC), 2, PREC).unwrap();
    assert!(agrees(&sixth, &(sin(&pi_times(1, 12)) * 2), 100));
    let halved = halve_edge(&IntervalScalar::one(PREC)).unwrap();
    assert!(sixth.overlaps(&halved));
}

/// In the symmetric frame the points of a quarter arc cut into `n` sit at
/// angles `π/4 + kπ/(2n)` and the gaps are differences of cosines.
#[test]
fn projection_gaps_are_cosine_differences() {
    for n in [2, 3, 4, 7] {
        let profile = partition_profile(&ArcSpec::quarter(PREC), n, PREC).unwrap();
        let x = |k: i64| cos(&(pi_times(1, 4) + pi_times(k, 2 * n as i64)));
        for (k, gap) in profile.projections.iter().enumerate() {
            let k = k as i64;
            assert!(agrees(gap, &(x(k) - x(k + 1)), 100), "n={n} k={k}");
        }
    }
}

/// `P_{1,k}` lies on the tangent at `P_1` at distance `tan((k−1)φ/2)` for
/// the step angle `φ`.
#[test]
fn tangent_segments_are_tangent_differences() {
    let n = 4;
    let profile = partition_profile(&ArcSpec::quarter(PREC), n, PREC).unwrap();
    let t = |k: i64| tan(&pi_times(k, 16));
    for (k, seg) in profile.tangent_segments.iter().enumerate() {
        let k = k as i64 + 1;
        assert!(agrees(seg, &(t(k) - t(k - 1)), 100), "k={k}");
    }
    for (k, len) in profile.tangent_lengths.iter().enumerate() {
        assert!(agrees(len, &(t(k as i64 + 1) * 2), 100));
    }
}

#[test]
fn chord_law_examples() {
    let c = chord_compare(&ArcSpec::quarter(PREC), 1, 2, PREC).unwrap();
    assert_eq!(c.verdict, Verdict::CertainlyLess);
    assert!(agrees(&c.lhs, &(sin(&pi_times(1, 8)) * 4), 100));
    assert!(agrees(&c.rhs, &sqrt(&int(2)), 100));
    let wide = ArcSpec::from_chord(dec("1.99")).unwrap();
    assert_eq!(
        chord_compare(&wide, 1, 2, PREC).unwrap().verdict,
        Verdict::CertainlyLess
    );
    let doubling = chord_compare(&ArcSpec::sixth(PREC), 2, 4, PREC).unwrap();
    assert_eq!(doubling.verdict, Verdict::CertainlyLess);
    assert!(agrees(&doubling.lhs, &(sin(&pi_times(1, 12)) * 8), 100));
}

#[test]
fn tangent_law_examples() {
    let q = tangent_compare(&ArcSpec::quarter(PREC), 1, 2, PREC).unwrap();
    assert_eq!(q.verdict, Verdict::CertainlyLess);
    assert!(agrees(&q.lhs, &(tan(&pi_times(1, 8)) * 4), 100));
    assert!(agrees(&q.rhs, &int(2), 100));
    let s = tangent_compare(&ArcSpec::sixth(PREC), 1, 2, PREC).unwrap();
    assert!(agrees(&s.lhs, &(tan(&pi_times(1, 12)) * 4), 100));
    assert!(agrees(&s.rhs, &(tan(&pi_times(1, 6)) * 2), 100));
    assert!(tangent_compare(&ArcSpec::sixth(PREC), 2, 2, PREC).is_err());
}

#[test]
fn pentagram_chord_and_order() {
    let star = realize_rational(2, 5, PREC).unwrap();
    assert!(agrees(star.chord(), &(sin(&pi_times(2, 5)) * 2), 100));
    let pentagon = gamma_path(&realize_rational(1, 5, PREC).unwrap()).unwrap();
    let path = gamma_path(&star).unwrap();
    for (i, p) in path.iter().enumerate() {
        assert!(p.overlaps(&pentagon[(2 * i) % 5]), "vertex {i}");
    }
}

#[test]
fn normalized_comparison_with_the_triangle() {
    let star = realize_rational(2, 5, PREC).unwrap();
    let tri = realize_rational(1, 3, PREC).unwrap();
    let c = normalized_compare(&star, &tri, Mode::Inscribed).unwrap();
    assert_eq!(c.verdict, Verdict::CertainlyLess);
    assert!(agrees(&c.lhs, &(sin(&pi_times(2, 5)) * 5), 100));
    assert!(agrees(&c.rhs, &(sqrt(&int(3)) * 3), 100));
}

#[test]
fn arc_measures_are_multiples_of_pi() {
    let q = arc_measure(1, 4, PREC).unwrap();
    assert!(agrees(&q.theta, &pi_times(1, 2), 120));
    assert!(agrees(&q.sector_area, &pi_times(1, 4), 120));
    assert!(agrees(
        &arc_measure(1, 6, PREC).unwrap().theta,
        &pi_times(1, 3),
        120
    ));
}

#[test]
fn geometric_point_at_one_radian() {
    let p = geometric_point(&IntervalScalar::one(PREC), PREC).unwrap();
    let (s, c) = sin_cos(&one());
    assert!(agrees(p.x(), &c, 140));
    assert!(agrees(p.y(), &s, 140));
}

#[test]
fn sandwich_examples() {
    let x = decimal("0.1");
    let r = sandwich_report(&dec("0.1"), PREC).unwrap();
    assert!(r.holds());
    assert!(agrees(&r.mid, &div(&x, &sin(&x)), 120));
    assert!(agrees(&r.upper, &div(&one(), &cos(&x)), 120));
    let small = sandwich_report(&dec("0.001"), PREC).unwrap();
    assert!(less(&small.gap(), &dec("0.000001")));
    let eighth = arc_measure(1, 8, PREC).unwrap().theta;
    let r = sandwich_report(&eighth, PREC).unwrap();
    let quarter_pi = pi_times(1, 4);
    assert!(agrees(&r.mid, &div(&quarter_pi, &sin(&quarter_pi)), 120));
    assert!(agrees(&r.upper, &sqrt(&int(2)), 120));
}
