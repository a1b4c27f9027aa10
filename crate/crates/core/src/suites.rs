//! Verification suites: each checks one family of certified inequalities
//! and reports one row per check.
//!
//! A row passes when its verdict matches the expected one. An `Overlap`
//! where a strict order is expected is inconclusive; the opposite strict
//! order is a violation. Identity rows expect `Overlap` and additionally
//! bound the hull width.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chords::{compare_adaptive, partition_profile, ArcSpec, Law};
use crate::circuits::{circuit_measures, CircuitSampler};
use crate::error::{Error, Result};
use crate::interval::{compare_certain, Dyadic, IntervalScalar, Verdict};
use crate::polygons::{pi_bounds, scheme_measures, RegularScheme, SchemeMeasures};
use crate::rational::sweep_rational;
use crate::trig::{sandwich_report, two_pi};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Monotone,
    Bounds,
    Identities,
    HRatio,
    ChordCompare,
    TangentCompare,
    Projections,
    TangentProfile,
    Rational,
    CircuitSandwich,
    AreaSandwich,
    TrigSandwich,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Monotone,
        Suite::Bounds,
        Suite::Identities,
        Suite::HRatio,
        Suite::ChordCompare,
        Suite::TangentCompare,
        Suite::Projections,
        Suite::TangentProfile,
        Suite::Rational,
        Suite::CircuitSandwich,
        Suite::AreaSandwich,
        Suite::TrigSandwich,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Monotone => "monotone",
            Suite::Bounds => "bounds",
            Suite::Identities => "identities",
            Suite::HRatio => "h-ratio",
            Suite::ChordCompare => "chord-compare",
            Suite::TangentCompare => "tangent-compare",
            Suite::Projections => "projections",
            Suite::TangentProfile => "tangent-profile",
            Suite::Rational => "rational",
            Suite::CircuitSandwich => "circuit-sandwich",
            Suite::AreaSandwich => "area-sandwich",
            Suite::TrigSandwich => "trig-sandwich",
        }
    }

    /// Starting precision when the configuration does not set one.
    pub fn default_precision(self) -> u32 {
        match self {
            Suite::Monotone | Suite::Bounds | Suite::Identities | Suite::HRatio => 256,
            Suite::CircuitSandwich | Suite::AreaSandwich | Suite::TrigSandwich => 128,
            _ => 64,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::PreconditionViolation(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Randomized samples for the arc suites.
    pub samples: usize,
    pub seed: u64,
    /// Starting precision; `None` selects the suite default.
    pub precision: Option<u32>,
    /// Precision cap for escalation.
    pub cap: u32,
    /// Largest depth `m` in the polygon grids.
    pub max_depth: u32,
    /// Largest `N` in the rational sweep.
    pub max_denominator: u32,
    /// Circuits per mesh cap.
    pub circuits: usize,
    /// Mesh caps run over `2^−k` for `k = 1..=max_mesh_exp`.
    pub max_mesh_exp: u32,
    /// Arguments run over `2^−k` for `k = 1..=max_theta_exp`.
    pub max_theta_exp: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            samples: 1000,
            seed: 1,
            precision: None,
            cap: 4096,
            max_depth: 25,
            max_denominator: 24,
            circuits: 100,
            max_mesh_exp: 8,
            max_theta_exp: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Violated,
    Inconclusive,
}

/// One certified check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub suite: Suite,
    /// The inequality or identity checked, `lhs` against `rhs`.
    pub check: String,
    pub sample_seed: Option<u64>,
    pub arc_chord: Option<String>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub lhs: [String; 2],
    pub rhs: [String; 2],
    pub verdict: Verdict,
    pub expected: Verdict,
    pub precision_used: u32,
    pub status: Status,
}

fn pair(x: &IntervalScalar) -> [String; 2] {
    let (lo, hi) = x.to_decimal_pair();
    [lo, hi]
}

impl SuiteRow {
    /// A strict comparison of `lhs` against `rhs` expected to be `expected`.
    fn ordered(
        suite: Suite,
        check: &str,
        lhs: &IntervalScalar,
        rhs: &IntervalScalar,
        expected: Verdict,
    ) -> Self {
        let verdict = compare_certain(lhs, rhs);
        let status = if verdict == expected {
            Status::Pass
        } else if verdict == Verdict::Overlap {
            Status::Inconclusive
        } else {
            Status::Violated
        };
        SuiteRow {
            suite,
            check: check.to_string(),
            sample_seed: None,
            arc_chord: None,
            m: None,
            n: None,
            lhs: pair(lhs),
            rhs: pair(rhs),
            verdict,
            expected,
            precision_used: lhs.precision().max(rhs.precision()),
            status,
        }
    }

    /// `lhs ≡ rhs`: the intervals overlap and their hull is narrower than
    /// `2^(8−prec)` relative to the magnitude.
    fn identity(suite: Suite, check: &str, lhs: &IntervalScalar, rhs: &IntervalScalar) -> Self {
        let mut row = SuiteRow::ordered(suite, check, lhs, rhs, Verdict::Overlap);
        let prec = row.precision_used;
        let scale = lhs.mag().max(Dyadic::one());
        let bound = scale.mul_exact(&Dyadic::pow2(8 - i64::from(prec)));
        let tight = lhs.hull(rhs).width() < bound;
        row.status = if row.verdict == Verdict::Overlap && tight {
            Status::Pass
        } else {
            Status::Violated
        };
        row
    }

    /// `lhs` and `rhs` are the same interval.
    fn exact(suite: Suite, check: &str, lhs: &IntervalScalar, rhs: &IntervalScalar) -> Self {
        let mut row = SuiteRow::ordered(suite, check, lhs, rhs, Verdict::Overlap);
        row.status = if lhs == rhs {
            Status::Pass
        } else {
            Status::Violated
        };
        row
    }

    /// `lhs` and `rhs` enclose a common value.
    fn overlapping(suite: Suite, check: &str, lhs: &IntervalScalar, rhs: &IntervalScalar) -> Self {
        let mut row = SuiteRow::ordered(suite, check, lhs, rhs, Verdict::Overlap);
        if row.verdict != Verdict::Overlap {
            row.status = Status::Violated;
        }
        row
    }

    /// A check that could not be settled below the precision cap.
    fn inconclusive(suite: Suite, check: &str, cap: u32) -> Self {
        SuiteRow {
            suite,
            check: check.to_string(),
            sample_seed: None,
            arc_chord: None,
            m: None,
            n: None,
            lhs: [String::new(), String::new()],
            rhs: [String::new(), String::new()],
            verdict: Verdict::Overlap,
            expected: Verdict::CertainlyLess,
            precision_used: cap,
            status: Status::Inconclusive,
        }
    }

    fn at(mut self, m: Option<u32>, n: Option<u32>) -> Self {
        self.m = m;
        self.n = n;
        self
    }

    fn sampled(mut self, seed: u64, arc_chord: &str) -> Self {
        self.sample_seed = Some(seed);
        self.arc_chord = Some(arc_chord.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("rows serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub rows: Vec<SuiteRow>,
    /// Informational observations that do not gate the outcome.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn violations(&self) -> usize {
        self.count(Status::Violated)
    }

    pub fn inconclusive(&self) -> usize {
        self.count(Status::Inconclusive)
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0 && self.inconclusive() == 0
    }

    fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }
}

/// Seed of sample `index` under `base`, by the SplitMix64 finalizer.
pub fn sample_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Rerun `f` at doubled precision while any row is inconclusive or the
/// bisection stalls, up to `cap`.
fn escalate(
    start: u32,
    cap: u32,
    f: impl Fn(u32) -> Result<Vec<SuiteRow>>,
) -> Result<Vec<SuiteRow>> {
    let mut prec = start;
    loop {
        match f(prec) {
            Ok(rows) if prec * 2 > cap || rows.iter().all(|r| r.status != Status::Inconclusive) => {
                return Ok(rows)
            }
            Err(Error::BisectionStall | Error::InconclusivePrecision(_)) if prec * 2 > cap => {
                return Err(Error::InconclusivePrecision(cap))
            }
            Ok(_) | Err(Error::BisectionStall | Error::InconclusivePrecision(_)) => prec *= 2,
            Err(e) => return Err(e),
        }
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let prec = config
        .precision
        .unwrap_or_else(|| suite.default_precision());
    let mut notes = Vec::new();
    let rows = match suite {
        Suite::Monotone | Suite::Bounds | Suite::Identities | Suite::HRatio => {
            polygon_suite(suite, config, prec, &mut notes)?
        }
        Suite::ChordCompare => compare_suite(Law::Chord, config, prec)?,
        Suite::TangentCompare => compare_suite(Law::Tangent, config, prec)?,
        Suite::Projections | Suite::TangentProfile => profile_suite(suite, config, prec)?,
        Suite::Rational => rational_suite(config, prec)?,
        Suite::CircuitSandwich | Suite::AreaSandwich => circuit_suite(suite, config, prec)?,
        Suite::TrigSandwich => trig_suite(config, prec)?,
    };
    Ok(SuiteReport { suite, rows, notes })
}

const SEEDED: [u32; 3] = [3, 4, 6];

fn polygon_grid(config: &SuiteConfig, prec: u32) -> Result<Vec<(u32, Vec<SchemeMeasures>)>> {
    SEEDED
        .par_iter()
        .map(|&n| {
            let column = (0..=config.max_depth + 1)
                .into_par_iter()
                .map(|m| scheme_measures(RegularScheme::new(n, m)?, prec))
                .collect::<Result<Vec<_>>>()?;
            Ok((n, column))
        })
        .collect()
}

/// Heron's formula for the triangle with sides `1, 1, ℓ`, evaluated with
/// 32 guard bits.
fn heron_sector(ell: &IntervalScalar) -> Result<IntervalScalar> {
    let prec = ell.precision();
    let ell = &ell.with_precision(prec + 32);
    let one = IntervalScalar::one(prec + 32);
    let half = ell.mul_pow2(-1);
    let s = one.add(&half);
    let product = s.mul(&s.sub(&one)).mul(&s.sub(&one)).mul(&s.sub(ell));
    Ok(product.clamp_nonneg().sqrt()?.with_precision(prec))
}

fn polygon_suite(
    suite: Suite,
    config: &SuiteConfig,
    prec: u32,
    notes: &mut Vec<String>,
) -> Result<Vec<SuiteRow>> {
    let grid = polygon_grid(config, prec)?;
    let mut rows = Vec::new();
    let mut ratios = Vec::new();
    let less = Verdict::CertainlyLess;
    for (n, column) in &grid {
        for m in 0..=config.max_depth {
            let (cur, next) = (&column[m as usize], &column[m as usize + 1]);
            let at = |row: SuiteRow| row.at(Some(m), Some(*n));
            match suite {
                Suite::Monotone => {
                    rows.push(at(SuiteRow::ordered(
                        suite,
                        "p(m) < p(m+1)",
                        &cur.perimeter_in,
                        &next.perimeter_in,
                        less,
                    )));
                    rows.push(at(SuiteRow::ordered(
                        suite,
                        "P(m+1) < P(m)",
                        &next.perimeter_circ,
                        &cur.perimeter_circ,
                        less,
                    )));
                    rows.push(at(SuiteRow::ordered(
                        suite,
                        "a(m) < a(m+1)",
                        &cur.area_in,
                        &next.area_in,
                        less,
                    )));
                    rows.push(at(SuiteRow::ordered(
                        suite,
                        "A(m+1) < A(m)",
                        &next.area_circ,
                        &cur.area_circ,
                        less,
                    )));
                }
                Suite::Bounds => {
                    rows.push(at(SuiteRow::ordered(
                        suite,
                        "p < P",
                        &cur.perimeter_in,
                        &cur.perimeter_circ,
                        less,
                    )));
                    rows.push(at(SuiteRow::ordered(
                        suite,
                        "a < A",
                        &cur.area_in,
                        &cur.area_circ,
                        less,
                    )));
                    rows.push(at(SuiteRow::ordered(
                        suite,
                        "l(m+1) < L(m)/2",
                        &next.ell,
                        &cur.circ_edge.mul_pow2(-1),
                        less,
                    )));
                }
                Suite::Identities => {
                    let count =
                        IntervalScalar::from_int(RegularScheme::new(*n, m)?.edge_count(), prec);
                    let heron = heron_sector(&cur.ell)?
                        .with_precision(prec + 32)
                        .mul(&count)
                        .with_precision(prec);
                    rows.push(at(SuiteRow::identity(
                        suite,
                        "a = sum of Heron triangles",
                        &cur.area_in,
                        &heron,
                    )));
                    let kites = cur.circ_edge.mul_pow2(-1).mul(&count);
                    rows.push(at(SuiteRow::identity(
                        suite,
                        "A = P/2",
                        &cur.area_circ,
                        &kites,
                    )));
                }
                Suite::HRatio => {
                    rows.push(at(SuiteRow::ordered(
                        suite,
                        "3h(m+1) < h(m)",
                        &next.vertex_gap.scale(3),
                        &cur.vertex_gap,
                        less,
                    )));
                    if m >= 10 {
                        let ratio = cur.vertex_gap.div(&next.vertex_gap)?;
                        ratios.push((*n, m, ratio));
                    }
                }
                _ => unreachable!("polygon suites only"),
            }
        }
    }
    if suite == Suite::Identities {
        rows.extend(cross_scheme_rows(prec)?);
    }
    if let Some(note) = ratio_note(&ratios) {
        notes.push(note);
    }
    Ok(rows)
}

/// Range of `h(m)/h(m+1)` over the grid for `m ≥ 10`, rounded outward.
fn ratio_note(ratios: &[(u32, u32, IntervalScalar)]) -> Option<String> {
    let range = ratios
        .iter()
        .map(|(_, _, r)| r)
        .cloned()
        .reduce(|a, b| a.hull(&b))?;
    let (lo, hi) = range.with_precision(48).to_decimal_pair();
    Some(format!("h(m)/h(m+1) for m >= 10 lies in [{lo}, {hi}]"))
}

/// Limits of `p_n(40)/2` for the three seeds agree and are narrower than
/// `10^−20`.
fn cross_scheme_rows(prec: u32) -> Result<Vec<SuiteRow>> {
    let suite = Suite::Identities;
    let depth = 40;
    let bounds = SEEDED
        .iter()
        .map(|&n| pi_bounds(RegularScheme::new(n, depth)?, prec))
        .collect::<Result<Vec<_>>>()?;
    let tolerance = IntervalScalar::from_ratio(1, 10u128.pow(20), prec);
    let mut rows = Vec::new();
    for (i, b) in bounds.iter().enumerate() {
        let n = Some(SEEDED[i]);
        rows.push(
            SuiteRow::ordered(
                suite,
                "width(pi bounds) < 1e-20",
                &IntervalScalar::point(b.width(), prec),
                &tolerance,
                Verdict::CertainlyLess,
            )
            .at(Some(depth), n),
        );
        for (j, other) in bounds.iter().enumerate().skip(i + 1) {
            let check = format!("pi bounds for n={} and n={} overlap", SEEDED[i], SEEDED[j]);
            rows.push(SuiteRow::overlapping(suite, &check, b, other).at(Some(depth), n));
        }
    }
    Ok(rows)
}

/// A random arc with chord in `(0.1, 1.99)` and indices `1 ≤ m < n ≤ max_n`,
/// the chord as an exact four-digit decimal.
fn random_arc(seed: u64, max_n: u32) -> (u32, u32, u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chord = rng.gen_range(1001..=19899);
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(1..n);
    (chord, m, n)
}

fn chord_text(chord: u32) -> String {
    format!("{}.{:04}", chord / 10_000, chord % 10_000)
}

fn arc_at(chord: u32) -> impl Fn(u32) -> Result<ArcSpec> {
    move |prec| ArcSpec::from_chord(IntervalScalar::from_ratio(chord, 10_000, prec))
}

fn compare_suite(law: Law, config: &SuiteConfig, prec: u32) -> Result<Vec<SuiteRow>> {
    let suite = match law {
        Law::Chord => Suite::ChordCompare,
        Law::Tangent => Suite::TangentCompare,
    };
    let check = match law {
        Law::Chord => "m*l_n < n*l_m",
        Law::Tangent => "n*L_m < m*L_n",
    };
    (0..config.samples as u64)
        .into_par_iter()
        .map(|i| {
            let seed = sample_seed(config.seed, i);
            let (chord, m, n) = random_arc(seed, 32);
            let text = chord_text(chord);
            let row = match compare_adaptive(law, arc_at(chord), m, n, prec, config.cap) {
                Ok((c, used)) => {
                    let (a, b) = match law {
                        Law::Chord => (&c.rhs, &c.lhs),
                        Law::Tangent => (&c.lhs, &c.rhs),
                    };
                    let mut row = SuiteRow::ordered(suite, check, a, b, Verdict::CertainlyLess);
                    row.precision_used = used;
                    row
                }
                Err(Error::InconclusivePrecision(cap)) => SuiteRow::inconclusive(suite, check, cap),
                Err(e) => return Err(e),
            };
            Ok(row.at(Some(m), Some(n)).sampled(seed, &text))
        })
        .collect()
}

fn profile_rows(suite: Suite, chord: u32, n: u32, prec: u32) -> Result<Vec<SuiteRow>> {
    let arc = arc_at(chord)(prec)?;
    let profile = partition_profile(&arc, n, prec)?;
    let less = Verdict::CertainlyLess;
    let mut rows = Vec::new();
    match suite {
        Suite::Projections => {
            let gaps = &profile.projections;
            let nu = n as usize;
            for i in 0..nu.div_ceil(2) - 1 {
                rows.push(
                    SuiteRow::ordered(suite, "gap_i < gap_(i+1)", &gaps[i], &gaps[i + 1], less)
                        .at(Some(i as u32 + 1), Some(n)),
                );
            }
            for i in 0..nu / 2 {
                let mut row = SuiteRow::ordered(
                    suite,
                    "gap_i = gap_(n+1-i)",
                    &gaps[i],
                    &gaps[nu - 1 - i],
                    Verdict::Overlap,
                );
                row.status = if gaps[i] == gaps[nu - 1 - i] {
                    Status::Pass
                } else {
                    Status::Violated
                };
                rows.push(row.at(Some(i as u32 + 1), Some(n)));
            }
            let total = gaps
                .iter()
                .skip(1)
                .fold(gaps[0].clone(), |acc, g| acc.add(g));
            rows.push(
                SuiteRow::overlapping(suite, "sum of gaps = chord", &total, arc.chord_total())
                    .at(None, Some(n)),
            );
            let mut prefix = IntervalScalar::zero(prec);
            let step = arc.chord_total().div(&IntervalScalar::from_int(n, prec))?;
            // Strict below the midpoint; at s = n/2 for even n both sides are half the chord.
            for s in 1..=n / 2 {
                prefix = prefix.add(&gaps[s as usize - 1]);
                let row = if 2 * s == n {
                    SuiteRow::overlapping(
                        suite,
                        "|q_1 q_(n/2+1)| = chord/2",
                        &prefix,
                        &step.scale(s),
                    )
                } else {
                    SuiteRow::ordered(
                        suite,
                        "|q_1 q_(s+1)| < s*chord/n",
                        &prefix,
                        &step.scale(s),
                        less,
                    )
                };
                rows.push(row.at(Some(s), Some(n)));
            }
        }
        Suite::TangentProfile => {
            for (i, w) in profile.tangent_segments.windows(2).enumerate() {
                rows.push(
                    SuiteRow::ordered(suite, "T_k < T_(k+1)", &w[0], &w[1], less)
                        .at(Some(i as u32 + 1), Some(n)),
                );
            }
        }
        _ => unreachable!("profile suites only"),
    }
    Ok(rows)
}

fn profile_suite(suite: Suite, config: &SuiteConfig, prec: u32) -> Result<Vec<SuiteRow>> {
    let per_sample = (0..config.samples as u64)
        .into_par_iter()
        .map(|i| {
            let seed = sample_seed(config.seed, i);
            let (chord, _, n) = random_arc(seed, 16);
            let text = chord_text(chord);
            let rows = match escalate(prec, config.cap, |p| profile_rows(suite, chord, n, p)) {
                Ok(rows) => rows,
                Err(Error::InconclusivePrecision(cap)) => {
                    vec![SuiteRow::inconclusive(suite, "profile", cap).at(None, Some(n))]
                }
                Err(e) => return Err(e),
            };
            Ok(rows
                .into_iter()
                .map(|r| r.sampled(seed, &text))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_sample.into_iter().flatten().collect())
}

fn rational_suite(config: &SuiteConfig, prec: u32) -> Result<Vec<SuiteRow>> {
    let suite = Suite::Rational;
    let sweep = match sweep_rational(config.max_denominator, prec, config.cap) {
        Ok(sweep) => sweep,
        Err(Error::InconclusivePrecision(cap)) => {
            return Ok(vec![SuiteRow::inconclusive(suite, "sweep", cap)])
        }
        Err(e) => return Err(e),
    };
    let mut rows = Vec::new();
    for (i, (ins, circ)) in sweep.inscribed.iter().zip(&sweep.circumscribed).enumerate() {
        let longer = &sweep.lengths[i];
        let at = |row: SuiteRow| row.at(Some(longer.denominator()), Some(longer.numerator()));
        rows.push(at(SuiteRow::ordered(
            suite,
            "inscribed: longer < shorter per turn",
            &ins.lhs,
            &ins.rhs,
            Verdict::CertainlyLess,
        )));
        rows.push(at(SuiteRow::ordered(
            suite,
            "circumscribed: longer > shorter per turn",
            &circ.lhs,
            &circ.rhs,
            Verdict::CertainlyGreater,
        )));
    }
    for (r, row) in sweep.lengths.iter().zip(&sweep.rows) {
        let mut check = SuiteRow::ordered(
            suite,
            "path closes with winding k",
            r.chord(),
            r.chord(),
            Verdict::Overlap,
        );
        check.status = if row.winding_checked {
            Status::Pass
        } else {
            Status::Violated
        };
        rows.push(check.at(Some(row.k), Some(row.n)));
    }
    Ok(rows)
}

fn circuit_suite(suite: Suite, config: &SuiteConfig, prec: u32) -> Result<Vec<SuiteRow>> {
    let tp = two_pi(prec);
    let pi = tp.mul_pow2(-1);
    let less = Verdict::CertainlyLess;
    let mut rows = Vec::new();
    let mut worst: Option<IntervalScalar> = None;
    for k in 1..=config.max_mesh_exp {
        let cap = IntervalScalar::point(Dyadic::pow2(-i64::from(k)), prec);
        let sampler = CircuitSampler::new(3, &cap, prec)?;
        let per_circuit = (0..config.circuits as u64)
            .into_par_iter()
            .map(|i| {
                let seed = sample_seed(config.seed, u64::from(k) << 32 | i);
                let c = sampler.sample(seed);
                let measures = circuit_measures(&c)?;
                let n = Some(c.len() as u32);
                let rows = match suite {
                    Suite::CircuitSandwich => vec![
                        SuiteRow::ordered(
                            suite,
                            "perimeter_in < 2pi",
                            &measures.perimeter_in,
                            &tp,
                            less,
                        ),
                        SuiteRow::ordered(
                            suite,
                            "2pi < perimeter_circ",
                            &tp,
                            &measures.perimeter_circ,
                            less,
                        ),
                        SuiteRow::ordered(suite, "mesh < cap", &measures.mesh, &cap, less),
                    ],
                    _ => vec![
                        SuiteRow::ordered(suite, "area_in < pi", &measures.area_in, &pi, less),
                        SuiteRow::ordered(suite, "pi < area_circ", &pi, &measures.area_circ, less),
                        SuiteRow::exact(
                            suite,
                            "area_circ = perimeter_circ/2",
                            &measures.area_circ,
                            &measures.perimeter_circ.mul_pow2(-1),
                        ),
                    ],
                };
                let gap = match suite {
                    Suite::CircuitSandwich => tp.sub(&measures.perimeter_in),
                    _ => pi.sub(&measures.area_in),
                };
                let rows: Vec<SuiteRow> = rows
                    .into_iter()
                    .map(|r| {
                        let mut r = r.at(Some(k), n);
                        r.sample_seed = Some(seed);
                        r
                    })
                    .collect();
                Ok((rows, gap))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut level_worst: Option<IntervalScalar> = None;
        for (r, gap) in per_circuit {
            rows.extend(r);
            level_worst = Some(match level_worst {
                None => gap,
                Some(w) => w.max(&gap),
            });
        }
        let level_worst = level_worst.unwrap_or_else(|| IntervalScalar::zero(prec));
        if let Some(prev) = &worst {
            rows.push(
                SuiteRow::ordered(
                    suite,
                    "worst gap(k) < worst gap(k-1)",
                    &level_worst,
                    prev,
                    less,
                )
                .at(Some(k), None),
            );
        }
        worst = Some(level_worst);
    }
    Ok(rows)
}

fn trig_suite(config: &SuiteConfig, prec: u32) -> Result<Vec<SuiteRow>> {
    let suite = Suite::TrigSandwich;
    let less = Verdict::CertainlyLess;
    let one = IntervalScalar::one(prec);
    let mut rows = Vec::new();
    let mut previous: Option<IntervalScalar> = None;
    for k in 1..=config.max_theta_exp {
        let theta = IntervalScalar::point(Dyadic::pow2(-i64::from(k)), prec);
        let report = sandwich_report(&theta, prec)?;
        let gap = report.gap();
        let at = |row: SuiteRow| row.at(Some(k), None);
        rows.push(at(SuiteRow::ordered(
            suite,
            "1 < theta/sin",
            &one,
            &report.mid,
            less,
        )));
        rows.push(at(SuiteRow::ordered(
            suite,
            "theta/sin < 1/cos",
            &report.mid,
            &report.upper,
            less,
        )));
        rows.push(at(SuiteRow::ordered(
            suite,
            "theta/sin - 1 < theta^2",
            &gap,
            &theta.sqr(),
            less,
        )));
        if let Some(prev) = &previous {
            rows.push(at(SuiteRow::ordered(
                suite,
                "gap(k) < gap(k-1)",
                &gap,
                prev,
                less,
            )));
        }
        previous = Some(gap);
    }
    // The 1e-9 bound is calibrated for θ = 2^−16.
    if let Some(last) = previous.filter(|_| config.max_theta_exp >= 16) {
        let tolerance = IntervalScalar::from_ratio(1, 1_000_000_000, prec);
        rows.push(
            SuiteRow::ordered(suite, "final gap < 1e-9", &last, &tolerance, less)
                .at(Some(config.max_theta_exp), None),
        );
    }
    Ok(rows)
}
