//! Integral-affine spheres from polarization vectors: ℓ-vectors of chamber
//! vectors, the per-cusp symmetry conditions, Symington polygons with
//! surgeries, the doubled sphere's singularities and charges, and the
//! Enriques symmetry acting on a built sphere.
//!
//! A hemisphere is described by a toric model: a cyclic list of boundary
//! slots, each with a primitive edge direction. Consecutive directions form
//! a lattice basis, so every slot carries a self-intersection `D̄²` with
//! `e_{i−1} + e_{i+1} = −D̄² e_i`. Internal blow-ups appear as nodes
//! (charge-one singularities whose monodromy fixes the edge direction), and
//! each lowers the slot's self-intersection by one. The point of the doubled
//! sphere at a polygon vertex whose incoming and outgoing edges are `a` and
//! `b`, with zero-length slots `z₁ … z_m` in between, has charge
//! `6(m+1) + 2ΣD²(zᵢ) + D²(a) + D²(b)`.

use crate::diagrams::Chart;
use crate::error::{Error, Result};
use crate::folding::cusp_label_map;
use crate::roots::CoxeterDiagram;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Vec2 = [i64; 2];
pub type Mat2 = [[i64; 2]; 2];
pub type Point = [Rational64; 2];

/// `ℓ = (λ·αᵢ)ᵢ`, indexed in vertex order of the chart's diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationVector {
    pub chart: Chart,
    pub entries: Vec<i64>,
}

impl PolarizationVector {
    pub fn new(chart: Chart, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != chart.len() {
            return Err(Error::Dimension { expected: chart.len(), got: entries.len() });
        }
        if let Some(i) = entries.iter().position(|&x| x < 0) {
            return Err(Error::OutsideChamber(chart.labels()[i]));
        }
        Ok(PolarizationVector { chart, entries })
    }

    /// Parse the compact notation `2,0^15,2,4` (exponents repeat an entry).
    pub fn parse(chart: Chart, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (v, k) = match tok.split_once('^') {
                Some((v, k)) => (v, k.parse::<usize>().map_err(|e| Error::Invalid(format!("{tok}: {e}")))?),
                None => (tok, 1),
            };
            let v: i64 = v.parse().map_err(|e| Error::Invalid(format!("{tok}: {e}")))?;
            entries.extend(std::iter::repeat_n(v, k));
        }
        PolarizationVector::new(chart, entries)
    }

    /// Entry at display label `k`.
    pub fn at(&self, k: usize) -> i64 {
        self.entries[self.chart.index(k)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_interior(&self) -> bool {
        self.entries.iter().all(|&x| x > 0)
    }
}

impl fmt::Display for PolarizationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.entries.len() {
            let v = self.entries[i];
            let mut j = i;
            while j < self.entries.len() && self.entries[j] == v {
                j += 1;
            }
            parts.push(if j - i > 1 { format!("{v}^{}", j - i) } else { v.to_string() });
            i = j;
        }
        write!(f, "({})", parts.join(","))
    }
}

/// Products of `λ` with the simple roots of `d`.
pub fn ell_from_lambda(chart: Chart, d: &CoxeterDiagram, lambda: &[i64]) -> Result<PolarizationVector> {
    if lambda.len() != d.lattice.rank() {
        return Err(Error::Dimension { expected: d.lattice.rank(), got: lambda.len() });
    }
    if d.len() != chart.len() {
        return Err(Error::ChartMismatch(format!("diagram has {} roots, chart {chart} has {}", d.len(), chart.len())));
    }
    let entries: Vec<i64> = d.roots.iter().map(|a| d.lattice.dot(lambda, a)).collect();
    PolarizationVector::new(chart, entries)
}

/// Chart of the unfolded diagram at a cusp.
pub fn cusp_chart(cusp: u8) -> Result<Chart> {
    match cusp {
        2 => Ok(Chart::Unimodular),
        1 | 3 | 4 | 5 => Ok(Chart::TwoElementary),
        _ => Err(Error::Invalid(format!("no cusp {cusp}"))),
    }
}

/// One linear condition on ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Equal(usize, usize),
    Zero(usize),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Equal(a, b) => write!(f, "ℓ_{a}=ℓ_{b}"),
            Condition::Zero(a) => write!(f, "ℓ_{a}=0"),
        }
    }
}

/// The conditions on ℓ for `λ` to lie in the folded chamber of a cusp.
pub fn symmetry_conditions(cusp: u8) -> Result<Vec<Condition>> {
    use Condition::*;
    Ok(match cusp {
        1 => (0..8).map(|i| Equal(i, i + 8)).chain([Equal(16, 18), Equal(17, 19)]).collect(),
        2 => (1..=9).map(|i| Equal(i, 20 - i)).collect(),
        3 => (1..=7).map(|i| Equal(i, 16 - i)).chain([Equal(17, 19), Zero(20)]).collect(),
        4 => (0..16)
            .filter_map(|i| {
                let j = (28 - i) % 16;
                (i < j).then_some(Equal(i, j))
            })
            .chain([Equal(16, 19), Equal(17, 18), Equal(20, 21)])
            .collect(),
        5 => (0..8).map(|i| Zero(2 * i + 1)).collect(),
        _ => return Err(Error::Invalid(format!("no cusp {cusp}"))),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryCheck {
    pub cusp: u8,
    pub holds: bool,
    /// Conditions that fail, as text such as `ℓ_1≠0`.
    pub violated: Vec<String>,
}

/// Whether ℓ satisfies the symmetry conditions of the cusp.
pub fn symmetry_predicate(cusp: u8, ell: &PolarizationVector) -> Result<SymmetryCheck> {
    let chart = cusp_chart(cusp)?;
    if ell.chart != chart {
        return Err(Error::ChartMismatch(format!("cusp {cusp} uses the {chart} chart, got {}", ell.chart)));
    }
    let violated: Vec<String> = symmetry_conditions(cusp)?
        .into_iter()
        .filter(|c| match *c {
            Condition::Equal(a, b) => ell.at(a) != ell.at(b),
            Condition::Zero(a) => ell.at(a) != 0,
        })
        .map(|c| c.to_string().replace('=', "≠"))
        .collect();
    Ok(SymmetryCheck { cusp, holds: violated.is_empty(), violated })
}

/// The same test phrased through the folding: ℓ is constant on label orbits
/// and vanishes on the roots reflected in.
pub fn fold_invariant(cusp: u8, ell: &PolarizationVector) -> Result<bool> {
    let (chart, map, crossed) = cusp_label_map(cusp);
    if ell.chart != chart {
        return Err(Error::ChartMismatch(format!("cusp {cusp} uses the {chart} chart")));
    }
    Ok(chart.labels().into_iter().all(|k| ell.at(k) == ell.at(map(k))) && crossed.iter().all(|&k| ell.at(k) == 0))
}

/// `num/den · ℓ_label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub label: usize,
    pub num: i64,
    pub den: i64,
}

impl Term {
    pub const fn whole(label: usize) -> Term {
        Term { label, num: 1, den: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotConfig {
    pub direction: Vec2,
    /// Edge length before surgery, as a combination of entries.
    pub length: Vec<Term>,
    /// A surgery of size `ℓ_label / 2` on this edge.
    pub surgery: Option<usize>,
    /// Further internal blow-ups on this edge, without tracked positions.
    pub extra_nodes: usize,
    /// The edge closing the polygon; its length is whatever closes it.
    pub closing: bool,
}

/// `ℓ_label = 2 (width − s_a − s_b)` for two parallel surgered edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthCheck {
    pub slots: [usize; 2],
    pub label: usize,
}

/// Edge dictionary for one chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartConfig {
    pub chart: Chart,
    pub slots: Vec<SlotConfig>,
    pub widths: Vec<WidthCheck>,
}

const OCTAGON: [Vec2; 8] = [[1, -1], [1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1]];

/// Coefficients of one side of the fibre relation, `(label, coefficient)`.
const FIBRE_RIGHT: [(usize, i64); 9] = [(2, 2), (3, 4), (4, 6), (5, 5), (6, 4), (7, 3), (8, 2), (9, 1), (1, 3)];

impl ChartConfig {
    pub fn builtin(chart: Chart) -> ChartConfig {
        match chart {
            Chart::TwoElementary => {
                // octagon directions on even slots, their sums on odd slots;
                // odd slots have length ℓ/2 (their roots are the full
                // preimages of the boundary curves, the even ones half of
                // theirs); the four diagonal slots carry one surgery each
                let slots = (0..16)
                    .map(|i| {
                        let k = i / 2;
                        let direction = if i % 2 == 0 {
                            OCTAGON[k]
                        } else {
                            let (a, b) = (OCTAGON[k], OCTAGON[(k + 1) % 8]);
                            [a[0] + b[0], a[1] + b[1]]
                        };
                        SlotConfig {
                            direction,
                            length: vec![Term { label: i, num: 1, den: if i % 2 == 0 { 1 } else { 2 } }],
                            surgery: (i % 4 == 0).then_some(16 + i / 4),
                            extra_nodes: 0,
                            closing: false,
                        }
                    })
                    .collect();
                ChartConfig { chart, slots, widths: vec![WidthCheck { slots: [0, 8], label: 20 }, WidthCheck { slots: [4, 12], label: 21 }] }
            }
            Chart::Unimodular => {
                // vertical sides of height half the fibre degree, the middle
                // root on top, and a horizontal base
                let right: Vec<Term> = FIBRE_RIGHT.iter().map(|&(k, c)| Term { label: k, num: c, den: 2 }).collect();
                let left: Vec<Term> = FIBRE_RIGHT.iter().map(|&(k, c)| Term { label: 20 - k, num: c, den: 2 }).collect();
                let slot = |direction, length, extra_nodes, closing| SlotConfig { direction, length, surgery: None, extra_nodes, closing };
                ChartConfig {
                    chart,
                    slots: vec![
                        slot([0, 1], right, 4, false),
                        slot([-1, 0], vec![Term::whole(10)], 2, false),
                        slot([0, -1], left, 4, false),
                        slot([1, 0], vec![], 0, true),
                    ],
                    widths: vec![],
                }
            }
        }
    }

    /// Structural checks: consecutive directions form a lattice basis.
    pub fn check(&self) -> Result<()> {
        let n = self.slots.len();
        for i in 0..n {
            let (a, b) = (self.slots[i].direction, self.slots[(i + 1) % n].direction);
            if det(a, b) != 1 {
                return Err(Error::Invalid(format!("slots {i} and {} do not form a basis", (i + 1) % n)));
            }
        }
        if self.slots.iter().filter(|s| s.closing).count() > 1 {
            return Err(Error::Invalid("more than one closing slot".into()));
        }
        Ok(())
    }

    /// Toric self-intersection of each slot.
    pub fn self_intersections(&self) -> Vec<i64> {
        let n = self.slots.len();
        (0..n)
            .map(|i| {
                let e = self.slots[i].direction;
                let p = self.slots[(i + n - 1) % n].direction;
                let q = self.slots[(i + 1) % n].direction;
                let s = [p[0] + q[0], p[1] + q[1]];
                debug_assert_eq!(det(s, e), 0);
                -(s[0] * e[0] + s[1] * e[1]) / (e[0] * e[0] + e[1] * e[1])
            })
            .collect()
    }

    /// Build the config and verify it against the worked examples.
    pub fn validated(chart: Chart) -> Result<ChartConfig> {
        let c = ChartConfig::builtin(chart);
        c.check()?;
        for ex in worked_examples().iter().filter(|e| e.ell.chart == chart) {
            ex.verify(&c)?;
        }
        Ok(c)
    }
}

fn det(a: Vec2, b: Vec2) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn r(x: i64) -> Rational64 {
    Rational64::from_integer(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonEdge {
    pub slot: usize,
    pub direction: Vec2,
    pub length: i64,
    pub start: Vec2,
}

impl PolygonEdge {
    pub fn vector(&self) -> Vec2 {
        [self.direction[0] * self.length, self.direction[1] * self.length]
    }

    pub fn end(&self) -> Vec2 {
        [self.start[0] + self.direction[0] * self.length, self.start[1] + self.direction[1] * self.length]
    }
}

/// An internal blow-up: a charge-one singularity whose monodromy fixes the
/// direction of its edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub slot: usize,
    /// Root whose entry sets the surgery size.
    pub label: Option<usize>,
    pub size: i64,
    #[serde(with = "point_serde")]
    pub position: Option<Point>,
}

/// A Symington polygon: the edges of a toric model (zero lengths kept) and
/// its surgeries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymingtonPolygon {
    pub ell: PolarizationVector,
    pub edges: Vec<PolygonEdge>,
    pub nodes: Vec<Node>,
    /// Slot of the edge added to close the polygon.
    pub closing_slot: Option<usize>,
    pub self_intersections: Vec<i64>,
}

/// `{"edges": [[dx,dy,len]], "surgeries": [[edge,size]], "closing": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub edges: Vec<[i64; 3]>,
    pub surgeries: Vec<[i64; 2]>,
    pub closing: Option<String>,
}

impl SymingtonPolygon {
    /// Edges of positive length as vectors, in order.
    pub fn edge_vectors(&self) -> Vec<Vec2> {
        self.edges.iter().filter(|e| e.length > 0).map(|e| e.vector()).collect()
    }

    /// Surgeries of positive size, as (edge vector, size).
    pub fn surgeries(&self) -> Vec<(Vec2, i64)> {
        self.nodes.iter().filter(|n| n.label.is_some() && n.size > 0).map(|n| (self.edges[n.slot].vector(), n.size)).collect()
    }

    /// Distinct polygon vertices in boundary order.
    pub fn vertices(&self) -> Vec<Vec2> {
        let mut out: Vec<Vec2> = Vec::new();
        for e in &self.edges {
            if out.last() != Some(&e.start) {
                out.push(e.start);
            }
        }
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        out
    }

    /// Self-intersection after the internal blow-ups.
    pub fn blown_up_self_intersection(&self, slot: usize) -> i64 {
        self.self_intersections[slot] - self.nodes.iter().filter(|n| n.slot == slot).count() as i64
    }

    pub fn to_json(&self) -> PolygonJson {
        let visible: Vec<usize> = self.edges.iter().filter(|e| e.length > 0).map(|e| e.slot).collect();
        PolygonJson {
            edges: self.edges.iter().filter(|e| e.length > 0).map(|e| [e.direction[0], e.direction[1], e.length]).collect(),
            surgeries: self
                .nodes
                .iter()
                .filter(|n| n.label.is_some() && n.size > 0)
                .map(|n| [visible.iter().position(|&s| s == n.slot).map_or(-1, |p| p as i64), n.size])
                .collect(),
            closing: self.closing_slot.map(|_| "horizontal-base".to_string()),
        }
    }

    /// SVG drawing of the hemisphere: edges, surgery nodes and vertices.
    pub fn to_svg(&self) -> String {
        let vs = self.vertices();
        let xs: Vec<i64> = vs.iter().map(|v| v[0]).collect();
        let ys: Vec<i64> = vs.iter().map(|v| v[1]).collect();
        let (x0, x1) = (*xs.iter().min().unwrap_or(&0), *xs.iter().max().unwrap_or(&0));
        let (y0, y1) = (*ys.iter().min().unwrap_or(&0), *ys.iter().max().unwrap_or(&0));
        let scale = 40.0;
        let pad = 20.0;
        let w = (x1 - x0) as f64 * scale + 2.0 * pad;
        let h = (y1 - y0) as f64 * scale + 2.0 * pad;
        let map = |x: f64, y: f64| (pad + (x - x0 as f64) * scale, pad + (y1 as f64 - y) * scale);
        let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n");
        let pts: Vec<String> = vs
            .iter()
            .map(|v| {
                let (a, b) = map(v[0] as f64, v[1] as f64);
                format!("{a:.1},{b:.1}")
            })
            .collect();
        s.push_str(&format!("  <polygon points=\"{}\" fill=\"#eef\" stroke=\"blue\" stroke-width=\"2\"/>\n", pts.join(" ")));
        for n in &self.nodes {
            if let Some(p) = &n.position {
                let (a, b) = map(to_f64(p[0]), to_f64(p[1]));
                s.push_str(&format!(
                    "  <path d=\"M{:.1},{:.1} l6,10 l-12,0 z\" fill=\"red\"><title>{}</title></path>\n",
                    a,
                    b - 6.0,
                    n.label.map_or("node".to_string(), |k| format!("alpha{k} size {}", n.size))
                ));
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

fn to_f64(x: Rational64) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

mod point_serde {
    use super::Point;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(p: &Option<Point>, s: S) -> Result<S::Ok, S::Error> {
        p.as_ref().map(|p| [p[0].to_string(), p[1].to_string()]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Point>, D::Error> {
        let v: Option<[String; 2]> = Option::deserialize(d)?;
        v.map(|[a, b]| Ok([a.parse().map_err(serde::de::Error::custom)?, b.parse().map_err(serde::de::Error::custom)?])).transpose()
    }
}

fn eval_terms(ell: &PolarizationVector, terms: &[Term]) -> Rational64 {
    terms.iter().fold(Rational64::zero(), |acc, t| acc + Rational64::new(t.num * ell.at(t.label), t.den))
}

/// Inward normal covector of an edge direction (the polygon is counterclockwise).
fn inward(d: Vec2) -> Vec2 {
    [-d[1], d[0]]
}

fn pair(c: Vec2, p: Vec2) -> i64 {
    c[0] * p[0] + c[1] * p[1]
}

/// Assemble the polygon of ℓ and check that it closes.
pub fn build_polygon(config: &ChartConfig, ell: &PolarizationVector) -> Result<SymingtonPolygon> {
    if ell.chart != config.chart {
        return Err(Error::ChartMismatch(format!("ℓ is for {}, config for {}", ell.chart, config.chart)));
    }
    let sizes: Vec<Option<i64>> = config
        .slots
        .iter()
        .map(|s| {
            s.surgery
                .map(|k| {
                    let v = ell.at(k);
                    if v % 2 != 0 {
                        Err(Error::OddEntry { index: k, value: v })
                    } else {
                        Ok(v / 2)
                    }
                })
                .transpose()
        })
        .collect::<Result<_>>()?;
    let mut lengths: Vec<Option<i64>> = Vec::new();
    for (s, size) in config.slots.iter().zip(&sizes) {
        if s.closing {
            lengths.push(None);
            continue;
        }
        let l = eval_terms(ell, &s.length) + r(size.unwrap_or(0));
        if !l.is_integer() {
            let odd = s.length.iter().find(|t| t.den > 1 && (t.num * ell.at(t.label)) % t.den != 0);
            return Err(match odd {
                Some(t) => Error::OddEntry { index: t.label, value: ell.at(t.label) },
                None => Error::Invalid(format!("edge length {l} is not integral")),
            });
        }
        lengths.push(Some(l.to_integer()));
    }
    let mut sum = [0i64; 2];
    for (s, l) in config.slots.iter().zip(&lengths) {
        if let Some(l) = l {
            sum[0] += s.direction[0] * l;
            sum[1] += s.direction[1] * l;
        }
    }
    let closing_slot = config.slots.iter().position(|s| s.closing);
    if let Some(c) = closing_slot {
        let d = config.slots[c].direction;
        let along = -pair(d, sum);
        if det(d, sum) != 0 || along < 0 {
            return Err(Error::NotClosed(sum[0], sum[1]));
        }
        let nn = pair(d, d);
        if along % nn != 0 {
            return Err(Error::NotClosed(sum[0], sum[1]));
        }
        lengths[c] = Some(along / nn);
    } else if sum != [0, 0] {
        return Err(Error::NotClosed(sum[0], sum[1]));
    }
    let mut edges = Vec::new();
    let mut at = [0i64, 0];
    for (i, (s, l)) in config.slots.iter().zip(&lengths).enumerate() {
        let e = PolygonEdge { slot: i, direction: s.direction, length: l.expect("all lengths set"), start: at };
        at = e.end();
        edges.push(e);
    }
    debug_assert_eq!(at, [0, 0]);
    for w in &config.widths {
        let [a, b] = w.slots;
        let nu = inward(edges[a].direction);
        let width = pair(nu, edges[b].start) - pair(nu, edges[a].start);
        let expected = 2 * (width - sizes[a].unwrap_or(0) - sizes[b].unwrap_or(0));
        if ell.at(w.label) != expected {
            return Err(Error::Invalid(format!(
                "l{} = {} but the surgeries on slots {a} and {b} are {} apart",
                w.label,
                ell.at(w.label),
                Rational64::new(expected, 2)
            )));
        }
    }
    let mut nodes = Vec::new();
    for (i, s) in config.slots.iter().enumerate() {
        if let (Some(k), Some(size)) = (s.surgery, sizes[i]) {
            let e = &edges[i];
            let n = inward(e.direction);
            let height = Rational64::new(size, pair(n, n));
            let mid = |c: usize| r(e.start[c]) + Rational64::new(e.direction[c] * e.length, 2);
            let position = [mid(0) + height * r(n[0]), mid(1) + height * r(n[1])];
            nodes.push(Node { slot: i, label: Some(k), size, position: Some(position) });
        }
        for _ in 0..s.extra_nodes {
            nodes.push(Node { slot: i, label: None, size: 0, position: None });
        }
    }
    Ok(SymingtonPolygon { ell: ell.clone(), edges, nodes, closing_slot, self_intersections: config.self_intersections() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Glue {
    Double,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Place {
    Hemisphere,
    OppositeHemisphere,
    Equator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Singularity {
    pub tag: String,
    pub place: Place,
    pub charge: i64,
    /// Counterclockwise monodromy in the local chart.
    pub monodromy: Mat2,
    #[serde(with = "point_serde")]
    pub position: Option<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityInventory {
    pub glue: Glue,
    pub items: Vec<Singularity>,
}

/// `w ↦ w + k·det(d, w)·d`.
pub fn shear(d: Vec2, k: i64) -> Mat2 {
    [[1 - k * d[0] * d[1], k * d[0] * d[0]], [-k * d[1] * d[1], 1 + k * d[0] * d[1]]]
}

pub fn mat_mul(a: Mat2, b: Mat2) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn mat_vec(a: Mat2, v: Vec2) -> Vec2 {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

/// The shear parameter `k` of a matrix conjugate to `[[1,k],[0,1]]` with `k > 0`.
pub fn shear_charge(m: Mat2) -> Option<i64> {
    let n = [[m[0][0] - 1, m[0][1]], [m[1][0], m[1][1] - 1]];
    if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1 || m[0][0] + m[1][1] != 2 {
        return None;
    }
    if n == [[0, 0], [0, 0]] {
        return Some(0);
    }
    // rows of n are multiples of the covector (−d_y, d_x); k is the gcd of all entries
    let row = if n[0] != [0, 0] { n[0] } else { n[1] };
    let rg = num_integer::gcd(row[0], row[1]);
    let v = [row[1] / rg, -row[0] / rg];
    let g = n.iter().flatten().fold(0i64, |a, &b| num_integer::gcd(a, b));
    let k = if shear(v, g) == m {
        g
    } else if shear(v, -g) == m {
        -g
    } else {
        return None;
    };
    (k > 0).then_some(k)
}

/// Gluing reflection across slot `i`: fixes the edge and splits the slot's
/// contribution evenly between its two ends.
fn gluing_reflection(p: &SymingtonPolygon, i: usize) -> Mat2 {
    let n = p.edges.len();
    let e = p.edges[i].direction;
    let prev = p.edges[(i + n - 1) % n].direction;
    // −prev = x·e + m with det(e, m) = 1
    let m0 = [-prev[0], -prev[1]];
    let x = if e[0] != 0 { (m0[0] - (-e[1]) * det(e, m0)) / e[0] } else { (m0[1] - e[0] * det(e, m0)) / e[1] };
    let m = [m0[0] - x * e[0], m0[1] - x * e[1]];
    debug_assert_eq!(det(e, m), 1);
    let k = p.blown_up_self_intersection(i) - 2 * x;
    // R(e) = e, R(m) = −m + k e, written in the standard basis
    let basis = [[e[0], m[0]], [e[1], m[1]]];
    let inv = [[m[1], -m[0]], [-e[1], e[0]]];
    let local = [[1, k], [0, -1]];
    mat_mul(basis, mat_mul(local, inv))
}

/// Singularities of the hemisphere (`None`) or of the doubled sphere.
pub fn singularity_inventory(p: &SymingtonPolygon, glue: Glue) -> SingularityInventory {
    let mut items: Vec<Singularity> = Vec::new();
    let places: &[Place] = match glue {
        Glue::Double => &[Place::Hemisphere, Place::OppositeHemisphere],
        Glue::None => &[Place::Hemisphere],
    };
    for &place in places {
        for (idx, node) in p.nodes.iter().enumerate() {
            let d = p.edges[node.slot].direction;
            let on_equator = node.position.is_some() && node.size == 0;
            if on_equator && place == Place::OppositeHemisphere {
                continue;
            }
            let (place, charge) = match (on_equator, glue) {
                (true, Glue::Double) => (Place::Equator, 2),
                _ => (place, 1),
            };
            let tag = match node.label {
                Some(k) => format!("node alpha{k}"),
                None => format!("node {idx} on slot {}", node.slot),
            };
            // nodes at one point with parallel invariant lines collide
            if let Some(pos) = &node.position {
                if let Some(it) =
                    items.iter_mut().find(|it| it.place == place && it.position.as_ref() == Some(pos) && shear_direction_parallel(it.monodromy, d))
                {
                    it.charge += charge;
                    it.monodromy = shear(d, it.charge);
                    it.tag = format!("{} + {tag}", it.tag);
                    continue;
                }
            }
            items.push(Singularity { tag, place, charge, monodromy: shear(d, charge), position: node.position });
        }
    }
    if glue == Glue::Double {
        items.extend(corner_singularities(p));
    }
    SingularityInventory { glue, items }
}

fn shear_direction_parallel(m: Mat2, d: Vec2) -> bool {
    mat_vec(m, d) == d
}

/// Doubled polygon vertices with nonzero charge.
fn corner_singularities(p: &SymingtonPolygon) -> Vec<Singularity> {
    let n = p.edges.len();
    let Some(first) = p.edges.iter().position(|e| e.length > 0) else {
        return vec![];
    };
    let mut out = Vec::new();
    let mut i = first;
    loop {
        // edge i is positive; walk the zero-length slots after it
        let mut j = (i + 1) % n;
        let mut zeros = Vec::new();
        while p.edges[j].length == 0 {
            zeros.push(j);
            j = (j + 1) % n;
        }
        let charge = 6 * (zeros.len() as i64 + 1)
            + 2 * zeros.iter().map(|&z| p.blown_up_self_intersection(z)).sum::<i64>()
            + p.blown_up_self_intersection(i)
            + p.blown_up_self_intersection(j);
        let monodromy = mat_mul(gluing_reflection(p, i), gluing_reflection(p, j));
        if charge != 0 {
            let v = p.edges[j].start;
            out.push(Singularity { tag: format!("corner ({},{})", v[0], v[1]), place: Place::Equator, charge, monodromy, position: Some([r(v[0]), r(v[1])]) });
        }
        i = j;
        if i == first {
            break;
        }
    }
    out
}

/// Total charge of a sphere, or the partial sum for a disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChargeTotal {
    Sphere(i64),
    Disk(i64),
}

pub fn total_charge(inv: &SingularityInventory) -> ChargeTotal {
    let s = inv.items.iter().map(|x| x.charge).sum();
    match inv.glue {
        Glue::Double => ChargeTotal::Sphere(s),
        Glue::None => ChargeTotal::Disk(s),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedLocus {
    Empty,
    Circle,
}

/// The Enriques symmetry on a built sphere: an affine involution of each
/// hemisphere, possibly followed by swapping the two hemispheres.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryAction {
    pub cusp: u8,
    pub linear: Mat2,
    #[serde(with = "point_serde")]
    pub center: Option<Point>,
    pub swaps_hemispheres: bool,
    pub slot_permutation: Vec<usize>,
    pub node_permutation: Vec<usize>,
    pub fixed_locus: FixedLocus,
}

fn cusp_motion(cusp: u8) -> Result<(Mat2, bool)> {
    Ok(match cusp {
        1 => ([[-1, 0], [0, -1]], true),
        2 => ([[-1, 0], [0, 1]], false),
        3 => ([[0, 1], [1, 0]], false),
        4 => ([[1, 0], [0, -1]], false),
        5 => ([[1, 0], [0, 1]], true),
        _ => return Err(Error::Invalid(format!("no cusp {cusp}"))),
    })
}

impl SymmetryAction {
    fn apply(&self, x: &Point) -> Point {
        let c = self.center.expect("center");
        let d = [x[0] - c[0], x[1] - c[1]];
        let a = self.linear;
        [c[0] + r(a[0][0]) * d[0] + r(a[0][1]) * d[1], c[1] + r(a[1][0]) * d[0] + r(a[1][1]) * d[1]]
    }

    /// The action applied twice is the identity on slots, nodes and points.
    pub fn is_involution(&self) -> bool {
        let sq = mat_mul(self.linear, self.linear);
        sq == [[1, 0], [0, 1]]
            && self.slot_permutation.iter().enumerate().all(|(i, &j)| self.slot_permutation[j] == i)
            && self.node_permutation.iter().enumerate().all(|(i, &j)| self.node_permutation[j] == i)
    }
}

/// The Enriques symmetry of a polygon satisfying the cusp's conditions.
pub fn enriques_symmetry_action(cusp: u8, p: &SymingtonPolygon) -> Result<SymmetryAction> {
    if !symmetry_predicate(cusp, &p.ell)?.holds {
        return Err(Error::Invalid(format!("ℓ is not symmetric for cusp {cusp}")));
    }
    let (linear, swaps) = cusp_motion(cusp)?;
    let vs = p.vertices();
    let k = vs.len() as i64;
    let center = [Rational64::new(vs.iter().map(|v| v[0]).sum(), k), Rational64::new(vs.iter().map(|v| v[1]).sum(), k)];
    let mut act = SymmetryAction {
        cusp,
        linear,
        center: Some(center),
        swaps_hemispheres: swaps,
        slot_permutation: vec![],
        node_permutation: vec![],
        fixed_locus: FixedLocus::Empty,
    };
    let det_a = linear[0][0] * linear[1][1] - linear[0][1] * linear[1][0];
    // slots: the image of a counterclockwise edge is traversed backwards when
    // the map reverses orientation
    for e in &p.edges {
        let mut d = mat_vec(linear, e.direction);
        if det_a < 0 {
            d = [-d[0], -d[1]];
        }
        let j = p.edges.iter().position(|f| f.direction == d).ok_or_else(|| Error::Invalid(format!("no edge in direction {d:?}")))?;
        if p.edges[j].length != e.length {
            return Err(Error::Invalid(format!("slot {} of length {} maps to slot {j} of length {}", e.slot, e.length, p.edges[j].length)));
        }
        act.slot_permutation.push(j);
    }
    for v in &vs {
        let img = act.apply(&[r(v[0]), r(v[1])]);
        if !vs.iter().any(|w| [r(w[0]), r(w[1])] == img) {
            return Err(Error::Invalid(format!("vertex {v:?} has no image")));
        }
    }
    for (i, n) in p.nodes.iter().enumerate() {
        let target = act.slot_permutation[n.slot];
        let j = match &n.position {
            Some(pos) => {
                let img = act.apply(pos);
                p.nodes.iter().position(|m| m.position.as_ref() == Some(&img) && m.size == n.size && m.slot == target)
            }
            None => {
                let rank = p.nodes[..i].iter().filter(|m| m.slot == n.slot && m.position.is_none()).count();
                p.nodes.iter().enumerate().filter(|(_, m)| m.slot == target && m.position.is_none()).nth(rank).map(|(j, _)| j)
            }
        };
        act.node_permutation.push(j.ok_or_else(|| Error::Invalid(format!("node {i} has no image")))?);
    }
    // a reflection of the disk fixes a chord, which doubles to a circle; with
    // the swap, fixed points lie on the equator and are fixed by the linear part
    act.fixed_locus = match (swaps, det_a, linear == [[1, 0], [0, 1]]) {
        (false, -1, _) | (true, _, true) => FixedLocus::Circle,
        _ => FixedLocus::Empty,
    };
    Ok(act)
}

/// A worked example: ℓ, the cusp, and the expected polygon data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkedExample {
    pub name: String,
    pub cusp: u8,
    pub ell: PolarizationVector,
    pub edges: Vec<Vec2>,
    pub surgeries: Vec<(Vec2, i64)>,
    pub closing: bool,
}

impl WorkedExample {
    /// Build the example with a config and compare with the expected data.
    pub fn verify(&self, c: &ChartConfig) -> Result<SymingtonPolygon> {
        let p = build_polygon(c, &self.ell)?;
        let edges = rotate_to(&p.edge_vectors(), self.edges.first());
        let ok = edges == self.edges && p.surgeries() == self.surgeries && p.closing_slot.is_some() == self.closing;
        if !ok {
            return Err(Error::Invalid(format!(
                "{}: got edges {:?} surgeries {:?}, expected {:?} {:?}",
                self.name,
                edges,
                p.surgeries(),
                self.edges,
                self.surgeries
            )));
        }
        Ok(p)
    }
}

/// Cyclic rotation starting at `first`, without the closing edge when it
/// does not appear in the expected list.
fn rotate_to(v: &[Vec2], first: Option<&Vec2>) -> Vec<Vec2> {
    match first.and_then(|f| v.iter().position(|x| x == f)) {
        Some(k) => v[k..].iter().chain(&v[..k]).cloned().collect(),
        None => v.to_vec(),
    }
}

/// The three worked examples, with their expected edge sequences.
pub fn worked_examples() -> Vec<WorkedExample> {
    let ex = |name: &str, cusp: u8, chart: Chart, ell: &str, edges: Vec<Vec2>, surgeries: Vec<(Vec2, i64)>, closing| WorkedExample {
        name: name.to_string(),
        cusp,
        ell: PolarizationVector::parse(chart, ell).expect("static example"),
        edges,
        surgeries,
        closing,
    };
    vec![
        ex(
            "B3(2,0^15,2,4,6,4,0,4)",
            3,
            Chart::TwoElementary,
            "2,0^15,2,4,6,4,0,4",
            vec![[3, -3], [2, 2], [-3, 3], [-2, -2]],
            vec![([3, -3], 1), ([2, 2], 2), ([-3, 3], 3), ([-2, -2], 2)],
            false,
        ),
        ex(
            "B5(0,0,2,0^7,1,0^3,1,0,0,0,2,0,2,6)",
            5,
            Chart::TwoElementary,
            "0,0,2,0^7,1,0^3,1,0,0,0,2,0,2,6",
            vec![[2, 0], [-1, 1], [-1, 0], [0, -1]],
            vec![([-1, 1], 1)],
            false,
        ),
        ex("B2(0,1,0^7,2,0^7,1,0)", 2, Chart::Unimodular, "0,1,0^7,2,0^7,1,0", vec![[0, 1], [-2, 0], [0, -1], [2, 0]], vec![], true),
    ]
}

/// A built example: polygon, sphere inventory and symmetry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExampleBuild {
    pub example: WorkedExample,
    pub polygon: SymingtonPolygon,
    pub symmetry: SymmetryCheck,
    pub inventory: SingularityInventory,
    pub total: ChargeTotal,
    pub action: SymmetryAction,
}

pub fn build_example(ex: &WorkedExample) -> Result<ExampleBuild> {
    let config = ChartConfig::validated(ex.ell.chart)?;
    let polygon = ex.verify(&config)?;
    let symmetry = symmetry_predicate(ex.cusp, &ex.ell)?;
    let inventory = singularity_inventory(&polygon, Glue::Double);
    let total = total_charge(&inventory);
    let action = enriques_symmetry_action(ex.cusp, &polygon)?;
    Ok(ExampleBuild { example: ex.clone(), polygon, symmetry, inventory, total, action })
}

/// Charges of an inventory summed by place.
pub fn charge_by_place(inv: &SingularityInventory) -> BTreeMap<Place, i64> {
    let mut m = BTreeMap::new();
    for it in &inv.items {
        *m.entry(it.place).or_insert(0) += it.charge;
    }
    m
}

/// Whether two rational points coincide.
pub fn same_point(a: &Point, b: &Point) -> bool {
    (a[0] - b[0]).is_zero() && (a[1] - b[1]).abs().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let l = PolarizationVector::parse(Chart::TwoElementary, "2,0^15,2,4,6,4,0,4").unwrap();
        assert_eq!(l.entries.len(), 22);
        assert_eq!(l.at(18), 6);
        assert_eq!(l.to_string(), "(2,0^15,2,4,6,4,0,4)");
        assert!(PolarizationVector::parse(Chart::TwoElementary, "1,2").is_err());
    }

    #[test]
    fn configs_are_smooth() {
        for chart in Chart::ALL {
            ChartConfig::builtin(chart).check().unwrap();
        }
    }

    #[test]
    fn boundary_self_intersections_alternate() {
        let c = ChartConfig::builtin(Chart::TwoElementary);
        let d = c.self_intersections();
        // after one blow-up on each diagonal slot: −4 on even slots, −1 on odd
        for (i, &x) in d.iter().enumerate() {
            let blown = x - i64::from(c.slots[i].surgery.is_some());
            assert_eq!(blown, if i % 2 == 0 { -4 } else { -1 }, "slot {i}");
        }
    }

    #[test]
    fn worked_examples_validate() {
        for chart in Chart::ALL {
            ChartConfig::validated(chart).unwrap();
        }
    }

    #[test]
    fn shear_round_trip() {
        for d in [[1, 0], [0, 1], [1, -1], [2, 1], [-1, 2]] {
            for k in 1..4 {
                assert_eq!(shear_charge(shear(d, k)), Some(k));
            }
        }
        assert_eq!(shear_charge([[-1, 0], [0, -1]]), None);
    }

    #[test]
    fn odd_surgery_entry_rejected() {
        let c = ChartConfig::builtin(Chart::TwoElementary);
        let l = PolarizationVector::parse(Chart::TwoElementary, "2,0^15,1,4,6,4,0,4").unwrap();
        assert_eq!(build_polygon(&c, &l).unwrap_err(), Error::OddEntry { index: 16, value: 1 });
    }
}
