//! Circuits: counterclockwise point sequences on the unit circle, with the
//! measures of their inscribed and circumscribed polygons.

mod point;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use point::{
    step_by_chord, step_by_chord_clockwise, tangent_intersection, CirclePoint, PlanePoint,
    PointRecord, Rotation,
};

use crate::error::{Error, Result};
use crate::interval::{compare_certain, IntervalScalar, Verdict};
use crate::polygons::{halve_edge, seed_edge};

/// Whether the edge `a → b` certainly passes strictly across the ray
/// through `dir`: `Some(true)`, `Some(false)` or `None` when undecided.
///
/// Only meaningful for edges shorter than a half turn.
pub fn crosses_ray(a: &CirclePoint, b: &CirclePoint, dir: &CirclePoint) -> Option<bool> {
    let before = a.cross(dir);
    let after = dir.cross(b);
    if before.is_certainly_negative() || after.is_certainly_negative() {
        Some(false)
    } else if before.is_certainly_positive() && after.is_certainly_positive() {
        Some(true)
    } else {
        None
    }
}

/// Turns made by the closed path `points[0] → … → points[last] → points[0]`,
/// each edge shorter than a half turn and counterclockwise.
///
/// Counts the edges strictly crossing the ray through `points[0]`, plus one
/// for the closing edge; `None` if some edge cannot be decided.
pub fn winding_number(points: &[CirclePoint]) -> Option<u32> {
    let dir = &points[0];
    let mut turns = 1;
    for pair in points[1..].windows(2) {
        if crosses_ray(&pair[0], &pair[1], dir)? {
            turns += 1;
        }
    }
    Some(turns)
}

/// A counterclockwise sequence of distinct points on the circle, closed
/// implicitly by returning from the last point to the first. Every arc
/// between consecutive points is shorter than half the circle and the
/// sequence winds around the centre exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    points: Vec<CirclePoint>,
}

impl Circuit {
    pub fn new(points: Vec<CirclePoint>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidCircuit(format!(
                "a circuit needs at least 3 points, got {}",
                points.len()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            let q = &points[(i + 1) % points.len()];
            if !p.cross(q).is_certainly_positive() {
                return Err(Error::InvalidCircuit(format!(
                    "arc {} is not certified counterclockwise and shorter than half the circle",
                    i + 1
                )));
            }
        }
        match winding_number(&points) {
            Some(1) => Ok(Circuit { points }),
            Some(w) => Err(Error::InvalidCircuit(format!(
                "winds {w} times around the centre"
            ))),
            None => Err(Error::InvalidCircuit("winding number not certified".into())),
        }
    }

    /// The distinct points `P_1, …, P_n`; `P_{n+1} = P_1` is implied.
    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn precision(&self) -> u32 {
        self.points
            .iter()
            .map(CirclePoint::precision)
            .max()
            .unwrap_or(2)
    }

    /// Consecutive pairs `(P_i, P_{i+1})`, including the closing pair.
    pub fn edges(&self) -> impl Iterator<Item = (&CirclePoint, &CirclePoint)> {
        let n = self.points.len();
        (0..n).map(move |i| (&self.points[i], &self.points[(i + 1) % n]))
    }
}

/// Perimeters, areas and edge extremes of a circuit's two polygons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitMeasures {
    pub perimeter_in: IntervalScalar,
    pub perimeter_circ: IntervalScalar,
    pub area_in: IntervalScalar,
    pub area_circ: IntervalScalar,
    /// Longest chord.
    pub mesh: IntervalScalar,
    /// Shortest chord.
    pub min_edge: IntervalScalar,
}

pub fn circuit_measures(c: &Circuit) -> Result<CircuitMeasures> {
    let prec = c.precision();
    let one = IntervalScalar::one(prec);
    let mut perimeter_in = IntervalScalar::zero(prec);
    let mut perimeter_circ = IntervalScalar::zero(prec);
    let mut area_in = IntervalScalar::zero(prec);
    let mut mesh: Option<IntervalScalar> = None;
    let mut min_edge: Option<IntervalScalar> = None;
    for (p, q) in c.edges() {
        let chord = p.dist(q);
        let t = tangent_intersection(p, q)?;
        let tangents = t.dist(&p.as_plane()).add(&t.dist(&q.as_plane()));
        let apothem = one.sub(&chord.sqr().mul_pow2(-2)).clamp_nonneg().sqrt()?;
        area_in = area_in.add(&chord.mul(&apothem).mul_pow2(-1));
        perimeter_in = perimeter_in.add(&chord);
        perimeter_circ = perimeter_circ.add(&tangents);
        mesh = Some(mesh.map_or_else(|| chord.clone(), |m| m.max(&chord)));
        min_edge = Some(min_edge.map_or_else(|| chord.clone(), |m| m.min(&chord)));
    }
    let area_circ = perimeter_circ.mul_pow2(-1);
    Ok(CircuitMeasures {
        perimeter_in,
        perimeter_circ,
        area_in,
        area_circ,
        mesh: mesh.expect("circuits are nonempty"),
        min_edge: min_edge.expect("circuits are nonempty"),
    })
}

/// The `3·2^m` vertices of `g(m, 3)`, counterclockwise from `(1, 0)`,
/// built by chord stepping from the halved triangle edge.
#[derive(Debug)]
pub struct VertexTable {
    m: u32,
    edge: IntervalScalar,
    vertices: Vec<CirclePoint>,
}

impl VertexTable {
    pub fn new(m: u32, prec: u32) -> Result<Self> {
        let wp = prec + 32;
        let mut edge = seed_edge(3, wp)?;
        for _ in 0..m {
            edge = halve_edge(&edge)?;
        }
        let count = 3usize << m;
        let rotation = Rotation::from_chord(&edge)?;
        let mut vertices = Vec::with_capacity(count);
        let mut p = CirclePoint::start(wp);
        for _ in 0..count {
            let next = rotation.apply(&p);
            vertices.push(p.with_precision(prec));
            p = next;
        }
        Ok(VertexTable {
            m,
            edge: edge.with_precision(prec),
            vertices,
        })
    }

    pub fn depth(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge of `g(m, 3)`.
    pub fn edge(&self) -> &IntervalScalar {
        &self.edge
    }

    pub fn vertex(&self, j: usize) -> &CirclePoint {
        &self.vertices[j % self.vertices.len()]
    }
}

/// Extra refinement levels beyond the coarsest admissible grid, so that
/// random steps have room to vary.
const GRID_SLACK: u32 = 3;

/// Generator of random circuits on one vertex grid; the grid is built once
/// and shared by every sample.
#[derive(Clone, Debug)]
pub struct CircuitSampler {
    table: Arc<VertexTable>,
    min_points: usize,
    max_step: usize,
}

impl CircuitSampler {
    /// Sampler for circuits with at least `k` points and every chord
    /// certainly shorter than `mesh_cap`.
    pub fn new(k: usize, mesh_cap: &IntervalScalar, prec: u32) -> Result<Self> {
        if k < 3 {
            return Err(Error::PreconditionViolation(format!("need k ≥ 3, got {k}")));
        }
        if !mesh_cap.is_certainly_positive() {
            return Err(Error::PreconditionViolation(
                "mesh cap must be positive".into(),
            ));
        }
        let mut m0 = 0;
        let mut edge = seed_edge(3, prec)?;
        while (3usize << m0) < k || compare_certain(&edge, mesh_cap) != Verdict::CertainlyLess {
            edge = halve_edge(&edge)?;
            m0 += 1;
        }
        let table = VertexTable::new(m0 + GRID_SLACK, prec)?;
        CircuitSampler::on_table(Arc::new(table), k, mesh_cap)
    }

    /// Sampler on a prebuilt grid.
    pub fn on_table(table: Arc<VertexTable>, k: usize, mesh_cap: &IntervalScalar) -> Result<Self> {
        let count = table.len();
        let start = table.vertex(0);
        let mut max_step = 0;
        for s in 1..=(count / k).min((count - 1) / 2) {
            let p = table.vertex(s);
            let short = compare_certain(&start.dist(p), mesh_cap) == Verdict::CertainlyLess;
            if !short || !start.cross(p).is_certainly_positive() {
                break;
            }
            max_step = s;
        }
        if max_step == 0 {
            return Err(Error::PreconditionViolation(
                "vertex grid too coarse for the mesh cap".into(),
            ));
        }
        let min_points = k.max(count.div_ceil(max_step));
        Ok(CircuitSampler {
            table,
            min_points,
            max_step,
        })
    }

    pub fn table(&self) -> &Arc<VertexTable> {
        &self.table
    }

    /// Largest number of grid steps between consecutive circuit points.
    pub fn max_step(&self) -> usize {
        self.max_step
    }

    /// A circuit determined entirely by `seed`.
    pub fn sample(&self, seed: u64) -> Circuit {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = self.table.len();
        let max_points = (self.min_points + self.min_points / 4).min(count);
        let n_points = rng.gen_range(self.min_points..=max_points);
        let mut steps = vec![1usize; n_points];
        let mut spare = count - n_points;
        while spare > 0 {
            let i = rng.gen_range(0..n_points);
            if steps[i] < self.max_step {
                steps[i] += 1;
                spare -= 1;
            }
        }
        let offset = rng.gen_range(0..count);
        let mut j = offset;
        let mut points = Vec::with_capacity(n_points);
        for step in steps {
            points.push(self.table.vertex(j).clone());
            j += step;
        }
        Circuit::new(points).expect("grid circuits satisfy the circuit invariants")
    }
}

/// A random circuit of at least `k` points drawn from a regular vertex
/// grid, every chord certainly shorter than `mesh_cap`.
pub fn random_circuit(
    k: usize,
    mesh_cap: &IntervalScalar,
    seed: u64,
    prec: u32,
) -> Result<Circuit> {
    Ok(CircuitSampler::new(k, mesh_cap, prec)?.sample(seed))
}

/// Measures as outward-rounded decimal pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasuresRecord {
    pub perimeter_in: [String; 2],
    pub perimeter_circ: [String; 2],
    pub area_in: [String; 2],
    pub area_circ: [String; 2],
    pub mesh: [String; 2],
    pub min_edge: [String; 2],
}

fn pair(x: &IntervalScalar) -> [String; 2] {
    let (lo, hi) = x.to_decimal_pair();
    [lo, hi]
}

impl From<&CircuitMeasures> for MeasuresRecord {
    fn from(m: &CircuitMeasures) -> Self {
        MeasuresRecord {
            perimeter_in: pair(&m.perimeter_in),
            perimeter_circ: pair(&m.perimeter_circ),
            area_in: pair(&m.area_in),
            area_circ: pair(&m.area_circ),
            mesh: pair(&m.mesh),
            min_edge: pair(&m.min_edge),
        }
    }
}

/// A circuit with its measures, in the fixture format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitRecord {
    pub precision: u32,
    pub points: Vec<PointRecord>,
    pub measures: MeasuresRecord,
}

impl CircuitRecord {
    pub fn new(c: &Circuit, measures: &CircuitMeasures) -> Self {
        CircuitRecord {
            precision: c.precision(),
            points: c.points().iter().map(PointRecord::from).collect(),
            measures: measures.into(),
        }
    }

    pub fn to_circuit(&self) -> Result<Circuit> {
        let points = self
            .points
            .iter()
            .map(|p| p.to_point(self.precision))
            .collect::<Result<Vec<_>>>()?;
        Circuit::new(points)
    }
}

/// Vertices of `g(m, 3)` at the listed grid indices, as a circuit.
pub fn grid_circuit(table: &VertexTable, indices: &[usize]) -> Result<Circuit> {
    Circuit::new(indices.iter().map(|&j| table.vertex(j).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Dyadic;

    const PREC: u32 = 128;

    fn dec(s: &str) -> IntervalScalar {
        IntervalScalar::from_decimal(s, PREC).unwrap()
    }

    fn less(a: &IntervalScalar, b: &IntervalScalar) -> bool {
        compare_certain(a, b) == Verdict::CertainlyLess
    }

    #[test]
    fn square_circuit_measures() {
        let table = VertexTable::new(2, PREC).unwrap();
        let sq = grid_circuit(&table, &[0, 3, 6, 9]).unwrap();
        let ms = circuit_measures(&sq).unwrap();
        assert!(less(&dec("5.65685"), &ms.perimeter_in) && less(&ms.perimeter_in, &dec("5.65686")));
        assert!(ms.perimeter_circ.contains_value(&Dyadic::from_int(8)));
        assert!(ms.area_in.contains_value(&Dyadic::from_int(2)));
        assert!(ms.area_circ.contains_value(&Dyadic::from_int(4)));
        assert!(ms.perimeter_circ.width_f64() < 1e-30);
    }

    #[test]
    fn hexagon_circuit_measures() {
        let table = VertexTable::new(1, PREC).unwrap();
        let hex = grid_circuit(&table, &[0, 1, 2, 3, 4, 5]).unwrap();
        let ms = circuit_measures(&hex).unwrap();
        assert!(ms.perimeter_in.contains_value(&Dyadic::from_int(6)));
        assert!(ms.mesh.contains_value(&Dyadic::one()));
        assert!(less(&dec("3.4641016"), &ms.area_circ) && less(&ms.area_circ, &dec("3.4641017")));
    }

    #[test]
    fn half_circle_arcs_are_rejected() {
        let table = VertexTable::new(1, PREC).unwrap();
        assert!(matches!(
            grid_circuit(&table, &[0, 1, 3]),
            Err(Error::InvalidCircuit(_))
        ));
        assert!(matches!(
            grid_circuit(&table, &[0, 1]),
            Err(Error::InvalidCircuit(_))
        ));
    }

    #[test]
    fn double_winding_is_rejected() {
        let table = VertexTable::new(1, PREC).unwrap();
        let err = grid_circuit(&table, &[0, 2, 4, 7, 3, 5]);
        assert!(matches!(err, Err(Error::InvalidCircuit(_))));
    }

    #[test]
    fn clockwise_order_is_rejected() {
        let table = VertexTable::new(1, PREC).unwrap();
        assert!(grid_circuit(&table, &[0, 5, 4, 3, 2, 1]).is_err());
    }

    #[test]
    fn table_closes_on_itself() {
        let table = VertexTable::new(6, PREC).unwrap();
        let last = table.vertex(table.len() - 1);
        let closing = step_by_chord(last, table.edge()).unwrap();
        assert!(closing.overlaps(table.vertex(0)));
        assert!(table.vertex(96).x().contains_value(&Dyadic::from_int(-1)));
    }

    #[test]
    fn random_circuits_honour_their_contract() {
        let c = random_circuit(6, &dec("1.1"), 42, PREC).unwrap();
        assert!(c.len() >= 6);
        assert!(less(&circuit_measures(&c).unwrap().mesh, &dec("1.1")));
        let tri = random_circuit(3, &IntervalScalar::from_int(2, PREC), 7, PREC).unwrap();
        assert_eq!(tri.len(), 3);
    }

    #[test]
    fn random_circuits_are_deterministic() {
        let cap = dec("0.3");
        let a = random_circuit(8, &cap, 99, PREC).unwrap();
        let b = random_circuit(8, &cap, 99, PREC).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_circuit(8, &cap, 100, PREC).unwrap());
    }

    #[test]
    fn fine_circuit_perimeter() {
        let c = random_circuit(64, &dec("0.1"), 1, PREC).unwrap();
        assert!(c.len() >= 64);
        let p = circuit_measures(&c).unwrap().perimeter_in;
        assert!(less(&dec("6.27"), &p) && less(&p, &dec("6.2832")));
    }

    #[test]
    fn record_roundtrip() {
        let c = random_circuit(5, &dec("1.5"), 3, 64).unwrap();
        let rec = CircuitRecord::new(&c, &circuit_measures(&c).unwrap());
        let json = serde_json::to_string(&rec).unwrap();
        let back: CircuitRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_circuit().unwrap().len(), c.len());
    }

    #[test]
    fn triangle_winds_once() {
        let table = VertexTable::new(0, PREC).unwrap();
        let tri = [
            table.vertex(0).clone(),
            table.vertex(1).clone(),
            table.vertex(2).clone(),
        ];
        assert_eq!(winding_number(&tri), Some(1));
    }
}
