//! Regular inscribed and circumscribed `2^m·n`-gons of the unit circle.
//!
//! Everything here is built from field operations and square roots on
//! [`IntervalScalar`]; no angle ever appears. The refinement recurrences are
//! written in forms that never subtract nearly equal quantities, so the
//! interval width stays proportional to the value even after dozens of
//! halvings.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Dyadic, IntervalScalar};

/// Extra working bits carried through a refinement chain.
const GUARD_BITS: u32 = 32;

/// Index `(n, m)` of the regular inscribed polygon `g(m, n)` and its
/// circumscribed partner `G(m, n)`, both with `2^m·n` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegularScheme {
    n: u32,
    m: u32,
}

impl RegularScheme {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::PreconditionViolation(format!(
                "a regular polygon needs at least 3 edges, got {n}"
            )));
        }
        Ok(RegularScheme { n, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn edge_count(&self) -> BigUint {
        BigUint::from(self.n) << self.m
    }

    /// The scheme one refinement deeper.
    pub fn refine(&self) -> Self {
        RegularScheme {
            n: self.n,
            m: self.m + 1,
        }
    }
}

/// The seven measures of `g(m, n)` and `G(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeMeasures {
    /// Inscribed edge `ℓ`.
    pub ell: IntervalScalar,
    /// Circumscribed edge `L`.
    pub circ_edge: IntervalScalar,
    /// Inscribed perimeter `p = 2^m·n·ℓ`.
    pub perimeter_in: IntervalScalar,
    /// Circumscribed perimeter `P = 2^m·n·L`.
    pub perimeter_circ: IntervalScalar,
    /// Inscribed area `a = ½·p·√(1 − ℓ²/4)`.
    pub area_in: IntervalScalar,
    /// Circumscribed area `A = ½·P`.
    pub area_circ: IntervalScalar,
    /// Distance `h` from a vertex of `G(m, n)` to the circle.
    pub vertex_gap: IntervalScalar,
}

impl SchemeMeasures {
    fn with_precision(&self, prec: u32) -> Self {
        SchemeMeasures {
            ell: self.ell.with_precision(prec),
            circ_edge: self.circ_edge.with_precision(prec),
            perimeter_in: self.perimeter_in.with_precision(prec),
            perimeter_circ: self.perimeter_circ.with_precision(prec),
            area_in: self.area_in.with_precision(prec),
            area_circ: self.area_circ.with_precision(prec),
            vertex_gap: self.vertex_gap.with_precision(prec),
        }
    }
}

/// Edge of the regular `n`-gon inscribed in the unit circle, for the three
/// polygons with a compass-and-straightedge seed.
pub fn seed_edge(n: u32, prec: u32) -> Result<IntervalScalar> {
    let square = match n {
        3 => 3,
        4 => 2,
        6 => 1,
        _ => return Err(Error::UnsupportedSeed(n)),
    };
    IntervalScalar::from_int(square, prec).sqrt()
}

fn check_chord(ell: &IntervalScalar) -> Result<()> {
    let two = Dyadic::from_int(2);
    if ell.lo().signum() > 0 && *ell.hi() < two {
        Ok(())
    } else {
        Err(Error::InvalidChord)
    }
}

/// Chord of half the arc cut off by the chord `ell`.
///
/// Evaluated as `ℓ / √(2 + √(4 − ℓ²))`, which equals `√(2 − √(4 − ℓ²))`
/// without the cancellation of the latter for small `ℓ`.
pub fn halve_edge(ell: &IntervalScalar) -> Result<IntervalScalar> {
    check_chord(ell)?;
    let prec = ell.precision();
    let four = IntervalScalar::from_int(4, prec);
    let two = IntervalScalar::from_int(2, prec);
    let inner = four.sub(&ell.sqr()).clamp_nonneg().sqrt()?;
    ell.div(&two.add(&inner).sqrt()?)
}

/// `√(1 − ℓ²/4)`, the distance from the centre to the chord `ℓ`.
fn apothem(ell: &IntervalScalar) -> Result<IntervalScalar> {
    let one = IntervalScalar::one(ell.precision());
    one.sub(&ell.sqr().mul_pow2(-2)).clamp_nonneg().sqrt()
}

/// Edge of the circumscribed polygon matching the inscribed chord `ell`:
/// `L = ℓ / √(1 − ℓ²/4)`.
pub fn circumscribed_edge(ell: &IntervalScalar) -> Result<IntervalScalar> {
    check_chord(ell)?;
    ell.div(&apothem(ell)?)
}

/// Distance from a vertex of a circumscribed polygon with edge `L` to the
/// circle, evaluated as `(L/2)² / (√(1 + (L/2)²) + 1)`.
pub fn vertex_gap(circ_edge: &IntervalScalar) -> Result<IntervalScalar> {
    if circ_edge.lo().signum() <= 0 {
        return Err(Error::InvalidEdge);
    }
    let one = IntervalScalar::one(circ_edge.precision());
    let half_sq = circ_edge.mul_pow2(-1).sqr();
    half_sq.div(&one.add(&half_sq).sqrt()?.add(&one))
}

fn check_precision(prec: u32) -> Result<()> {
    if prec < 16 {
        return Err(Error::PreconditionViolation(format!(
            "precision must be at least 16 bits, got {prec}"
        )));
    }
    Ok(())
}

fn working_precision(prec: u32, m: u32) -> u32 {
    prec + GUARD_BITS + (32 - m.leading_zeros())
}

/// Measures of `g(m, n)` and `G(m, n)`, starting from the seed edge.
pub fn scheme_measures(s: RegularScheme, prec: u32) -> Result<SchemeMeasures> {
    check_precision(prec)?;
    let seed = seed_edge(s.n, working_precision(prec, s.m))?;
    scheme_measures_from_edge(s, &seed, prec)
}

/// Measures of `g(m, n)` and `G(m, n)` from an externally supplied enclosure
/// of the base `n`-gon edge.
pub fn scheme_measures_from_edge(
    s: RegularScheme,
    base_edge: &IntervalScalar,
    prec: u32,
) -> Result<SchemeMeasures> {
    check_precision(prec)?;
    let wp = working_precision(prec, s.m).max(base_edge.precision());
    let mut ell = base_edge.with_precision(wp);
    for _ in 0..s.m {
        ell = halve_edge(&ell)?;
    }
    let edges = BigInt::from(s.n);
    let m = i64::from(s.m);
    let q = apothem(&ell)?;
    let circ_edge = ell.div(&q)?;
    let perimeter_in = ell.scale(edges.clone()).mul_pow2(m);
    let perimeter_circ = circ_edge.scale(edges).mul_pow2(m);
    let area_in = perimeter_in.mul(&q).mul_pow2(-1);
    let area_circ = perimeter_circ.mul_pow2(-1);
    let vertex_gap = vertex_gap(&circ_edge)?;
    let measures = SchemeMeasures {
        ell,
        circ_edge,
        perimeter_in,
        perimeter_circ,
        area_in,
        area_circ,
        vertex_gap,
    };
    Ok(measures.with_precision(prec))
}

/// `[p/2, P/2]`, an enclosure of `π` from `g(m, n)` and `G(m, n)`.
pub fn pi_bounds(s: RegularScheme, prec: u32) -> Result<IntervalScalar> {
    let measures = scheme_measures(s, prec)?;
    Ok(bracket_from(&measures, prec))
}

fn bracket_from(measures: &SchemeMeasures, prec: u32) -> IntervalScalar {
    IntervalScalar::new(
        measures.perimeter_in.lo().mul_pow2(-1),
        measures.perimeter_circ.hi().mul_pow2(-1),
        prec,
    )
}

/// Knobs of the adaptive digit loop.
#[derive(Clone, Debug, PartialEq)]
pub struct DigitsConfig {
    /// Base polygon; must have a seed edge.
    pub n: u32,
    /// Largest accepted digit count.
    pub max_digits: usize,
    /// Number of `(m, precision)` rounds before giving up.
    pub max_rounds: usize,
    /// Initial depth is `ceil(depth_per_digit · d)`.
    pub depth_per_digit: f64,
    /// Depth increment when the polygon gap dominates.
    pub depth_step: u32,
    /// Initial precision is `max(min_precision, bits_per_digit · d)`.
    pub bits_per_digit: u32,
    pub min_precision: u32,
}

impl Default for DigitsConfig {
    fn default() -> Self {
        DigitsConfig {
            n: 6,
            max_digits: 10_000,
            max_rounds: 40,
            depth_per_digit: 1.7,
            depth_step: 4,
            bits_per_digit: 4,
            min_precision: 64,
        }
    }
}

/// The first `d` significant decimal digits of `π`, truncated and certified.
pub fn pi_digits(d: usize) -> Result<String> {
    pi_digits_with(d, &DigitsConfig::default())
}

pub fn pi_digits_with(d: usize, config: &DigitsConfig) -> Result<String> {
    if d == 0 || d > config.max_digits {
        return Err(Error::PreconditionViolation(format!(
            "digit count must lie in 1..={}, got {d}",
            config.max_digits
        )));
    }
    let d_bits = u32::try_from(d).unwrap_or(u32::MAX);
    let mut prec = config
        .min_precision
        .max(config.bits_per_digit.saturating_mul(d_bits));
    let mut m = (config.depth_per_digit * d as f64).ceil() as u32;
    let target = IntervalScalar::from_ratio(1, BigInt::from(10).pow(d_bits + 2), 64);
    for _ in 0..config.max_rounds {
        let measures = scheme_measures(RegularScheme::new(config.n, m)?, prec)?;
        let bounds = bracket_from(&measures, prec);
        if bounds.width() < *target.lo() {
            let lo = truncate_digits(bounds.lo(), d);
            if lo == truncate_digits(bounds.hi(), d) {
                return Ok(lo);
            }
        }
        let rounding = measures
            .perimeter_in
            .width()
            .add_exact(&measures.perimeter_circ.width())
            .mul_pow2(-1);
        let gap = measures
            .perimeter_circ
            .lo()
            .add_exact(&measures.perimeter_in.hi().neg())
            .mul_pow2(-1);
        let quarter = target.lo().mul_pow2(-2);
        let rounding_dominates = rounding > quarter;
        let gap_dominates = gap > quarter;
        if rounding_dominates {
            prec *= 2;
        }
        if gap_dominates || !rounding_dominates {
            m += config.depth_step;
        }
    }
    Err(Error::IterationCapExceeded(config.max_rounds))
}

/// `x` truncated to `d` significant digits, for `1 ≤ x < 10`.
fn truncate_digits(x: &Dyadic, d: usize) -> String {
    let scaled = x.mul_exact(&Dyadic::from_int(BigInt::from(10).pow(d as u32 - 1)));
    let digits = scaled.floor().to_string();
    if d == 1 {
        digits
    } else {
        format!("{}.{}", &digits[..1], &digits[1..])
    }
}

/// One row of the polygon report, endpoints as outward-rounded decimals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasuresRow {
    pub n: u32,
    pub m: u32,
    pub precision: u32,
    pub p_lo: String,
    pub p_hi: String,
    #[serde(rename = "P_lo")]
    pub cap_p_lo: String,
    #[serde(rename = "P_hi")]
    pub cap_p_hi: String,
    pub a_lo: String,
    pub a_hi: String,
    #[serde(rename = "A_lo")]
    pub cap_a_lo: String,
    #[serde(rename = "A_hi")]
    pub cap_a_hi: String,
    pub h_hi: String,
}

impl MeasuresRow {
    pub fn new(s: RegularScheme, prec: u32, measures: &SchemeMeasures) -> Self {
        let (p_lo, p_hi) = measures.perimeter_in.to_decimal_pair();
        let (cap_p_lo, cap_p_hi) = measures.perimeter_circ.to_decimal_pair();
        let (a_lo, a_hi) = measures.area_in.to_decimal_pair();
        let (cap_a_lo, cap_a_hi) = measures.area_circ.to_decimal_pair();
        MeasuresRow {
            n: s.n,
            m: s.m,
            precision: prec,
            p_lo,
            p_hi,
            cap_p_lo,
            cap_p_hi,
            a_lo,
            a_hi,
            cap_a_lo,
            cap_a_hi,
            h_hi: measures.vertex_gap.hi_decimal(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::compare_certain;
    use crate::interval::Verdict;

    fn dec(text: &str) -> IntervalScalar {
        IntervalScalar::from_decimal(text, 128).unwrap()
    }

    fn inside(x: &IntervalScalar, lo: &str, hi: &str) -> bool {
        compare_certain(&dec(lo), x) == Verdict::CertainlyLess
            && compare_certain(x, &dec(hi)) == Verdict::CertainlyLess
    }

    #[test]
    fn seeds() {
        assert_eq!(seed_edge(6, 64).unwrap(), IntervalScalar::one(64));
        assert!(inside(
            &seed_edge(4, 64).unwrap(),
            "1.41421356",
            "1.41421357"
        ));
        assert!(inside(
            &seed_edge(3, 64).unwrap(),
            "1.73205080",
            "1.73205081"
        ));
        assert_eq!(seed_edge(5, 64), Err(Error::UnsupportedSeed(5)));
    }

    #[test]
    fn halving_rejects_improper_chords() {
        assert_eq!(
            halve_edge(&IntervalScalar::from_int(2, 64)),
            Err(Error::InvalidChord)
        );
        assert_eq!(
            halve_edge(&IntervalScalar::zero(64)),
            Err(Error::InvalidChord)
        );
        assert_eq!(
            circumscribed_edge(&IntervalScalar::from_int(-1, 64)),
            Err(Error::InvalidChord)
        );
        assert_eq!(
            vertex_gap(&IntervalScalar::zero(64)),
            Err(Error::InvalidEdge)
        );
    }

    #[test]
    fn halving_a_tiny_chord_is_nearly_exact_halving() {
        let h = halve_edge(&dec("0.001")).unwrap();
        assert!(inside(&h, "0.0005", "0.00051"));
        assert!(h.width_f64() < 1e-35);
    }

    #[test]
    fn square_closed_forms() {
        let sq = seed_edge(4, 128).unwrap();
        let l = circumscribed_edge(&sq).unwrap();
        assert!(l.contains_value(&Dyadic::from_int(2)));
        assert!(inside(&vertex_gap(&l).unwrap(), "0.41421356", "0.41421357"));
    }

    #[test]
    fn hexagon_measures() {
        let s = RegularScheme::new(6, 0).unwrap();
        let ms = scheme_measures(s, 96).unwrap();
        assert_eq!(ms.perimeter_in, IntervalScalar::from_int(6, 96));
        assert!(inside(&ms.perimeter_circ, "6.92820323", "6.92820324"));
        assert!(inside(&ms.area_in, "2.59807621", "2.59807622"));
        assert!(inside(&ms.area_circ, "3.46410161", "3.46410162"));
    }

    #[test]
    fn ninety_six_gon_sits_inside_the_classical_bracket() {
        let bounds = pi_bounds(RegularScheme::new(6, 4).unwrap(), 96).unwrap();
        let low = IntervalScalar::from_ratio(223, 71, 96);
        let high = IntervalScalar::from_ratio(22, 7, 96);
        assert_eq!(compare_certain(&low, &bounds), Verdict::CertainlyLess);
        assert_eq!(compare_certain(&bounds, &high), Verdict::CertainlyLess);
        assert!(inside(&bounds, "3.1410", "3.1428"));
    }

    #[test]
    fn triangle_bracket_is_weak_but_valid() {
        let bounds = pi_bounds(RegularScheme::new(3, 0).unwrap(), 64).unwrap();
        assert!(inside(&bounds, "2.598", "5.197"));
        assert!(bounds.lo_decimal().starts_with("2.598"));
    }

    #[test]
    fn scheme_rejects_degenerate_inputs() {
        assert!(RegularScheme::new(2, 0).is_err());
        let s = RegularScheme::new(6, 1).unwrap();
        assert!(matches!(
            scheme_measures(s, 8),
            Err(Error::PreconditionViolation(_))
        ));
        assert_eq!(s.edge_count(), BigUint::from(12u32));
        assert_eq!(s.refine().edge_count(), BigUint::from(24u32));
    }

    #[test]
    fn deep_refinement_keeps_relative_width() {
        let ms = scheme_measures(RegularScheme::new(6, 60).unwrap(), 128).unwrap();
        let rel = ms.perimeter_in.width_f64() / ms.perimeter_in.mid_f64();
        assert!(rel < 2f64.powi(-120), "relative width {rel}");
    }

    #[test]
    fn truncation() {
        let x = Dyadic::from_ratio(
            &BigInt::from(314159),
            &BigInt::from(100000),
            64,
            crate::interval::Round::Down,
        );
        assert_eq!(truncate_digits(&x, 1), "3");
        assert_eq!(truncate_digits(&x, 5), "3.1415");
    }

    #[test]
    fn short_digit_strings() {
        assert_eq!(pi_digits(1).unwrap(), "3");
        assert_eq!(pi_digits(5).unwrap(), "3.1415");
        assert!(pi_digits(0).is_err());
    }

    #[test]
    fn tiny_round_cap_is_reported() {
        let config = DigitsConfig {
            max_rounds: 0,
            ..DigitsConfig::default()
        };
        assert_eq!(
            pi_digits_with(3, &config),
            Err(Error::IterationCapExceeded(0))
        );
    }

    #[test]
    fn report_row_uses_capitalised_keys() {
        let s = RegularScheme::new(6, 0).unwrap();
        let row = MeasuresRow::new(s, 64, &scheme_measures(s, 64).unwrap());
        let json = serde_json::to_value(&row).unwrap();
        assert_eq!(json["p_lo"], "6");
        assert!(json.get("P_hi").is_some() && json.get("A_lo").is_some());
    }
}
