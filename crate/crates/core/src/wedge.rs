//! Closed forms for a bouquet of circles `C_1, …, C_n` joined at one point `O`.
//!
//! With `φ_i(t) = t²/(2l_i) - t/2`, `L = Σ l_i`, a positive integer `g`, and
//! `K = (2g - 2)·O`, the admissible measure of `K` is
//! `μ = ((g - n)/g)·δ_O + Σ dt_i/(g·l_i)` and its Green function is
//!
//! ```text
//! g(x, y) = φ_i(x - y) - ((g-1)/g)(φ_i(x) + φ_i(y)) + L/(12g²)   x, y ∈ C_i
//! g(x, y) = (1/g)(φ_i(x) + φ_j(y)) + L/(12g²)                     x ∈ C_i, y ∈ C_j, i ≠ j
//! ```
//!
//! with `c(G, K) = L(2g - 1)/(12g²)`. None of this shares code with the general
//! solver in [`crate::admissible`], so the two can be compared.

use num_traits::{Signed, Zero};

use crate::calculus::Measure;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSpec, MetrizedGraph, PointLocation, VertexDivisor, VertexId};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeSpec {
    lengths: Vec<Rational>,
    genus: u32,
}

/// A point of the bouquet: circle index (0-based) and coordinate from `O`.
/// Coordinate 0 is `O` whichever circle is named.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgePoint {
    pub circle: usize,
    pub coordinate: Rational,
}

impl WedgePoint {
    pub fn new(circle: usize, coordinate: Rational) -> Self {
        WedgePoint { circle, coordinate }
    }

    pub fn origin() -> Self {
        WedgePoint::new(0, Rational::zero())
    }
}

impl WedgeSpec {
    pub fn new(lengths: Vec<Rational>, genus: u32) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if let Some((i, l)) = lengths.iter().enumerate().find(|(_, l)| !l.is_positive()) {
            return Err(Error::NonpositiveLength {
                edge: format!("C{}", i + 1),
                length: l.clone(),
            });
        }
        if genus == 0 {
            return Err(Error::GenusTooSmall { required: 1, found: 0 });
        }
        Ok(WedgeSpec { lengths, genus })
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn circle_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn total_length(&self) -> Rational {
        self.lengths.iter().fold(Rational::zero(), |acc, l| acc + l)
    }

    fn g(&self) -> Rational {
        int(i64::from(self.genus))
    }

    /// The bouquet as a metrized graph: vertex `O`, loops `C1..Cn` in order.
    pub fn graph(&self) -> MetrizedGraph {
        let edges: Vec<EdgeSpec> = self
            .lengths
            .iter()
            .enumerate()
            .map(|(i, l)| EdgeSpec::new(format!("C{}", i + 1), "O", "O", l.clone()))
            .collect();
        MetrizedGraph::build(&["O"], &edges).expect("a bouquet is a valid graph")
    }

    /// `K = (2g - 2)·O` on [`WedgeSpec::graph`].
    pub fn divisor(&self) -> VertexDivisor {
        let graph = self.graph();
        VertexDivisor::point(&graph, VertexId(0), int(2 * i64::from(self.genus) - 2))
    }

    /// Where a wedge point sits on [`WedgeSpec::graph`].
    pub fn location(&self, point: &WedgePoint) -> Result<PointLocation> {
        let l = self.circle_length(point.circle)?;
        let t = reduce(&point.coordinate, l);
        if t.is_zero() {
            Ok(PointLocation::Vertex(VertexId(0)))
        } else {
            Ok(PointLocation::Edge {
                edge: EdgeId(point.circle),
                offset: t,
            })
        }
    }

    fn circle_length(&self, index: usize) -> Result<&Rational> {
        self.lengths.get(index).ok_or(Error::IndexOutOfRange {
            index,
            count: self.lengths.len(),
        })
    }
}

/// `t` reduced into `[0, l)`.
fn reduce(t: &Rational, l: &Rational) -> Rational {
    let q = (t / l).floor();
    t - q * l
}

/// `φ(t) = t²/(2l) - t/2` for the representative of `t` in `[0, l)`.
pub fn circle_phi(l: &Rational, t: &Rational) -> Result<Rational> {
    if !l.is_positive() {
        return Err(Error::NonpositiveLength {
            edge: "circle".into(),
            length: l.clone(),
        });
    }
    let t = reduce(t, l);
    Ok(&t * &t / (int(2) * l) - t / int(2))
}

/// `((g - n)/g)·δ_O + Σ dt_i/(g·l_i)` on [`WedgeSpec::graph`].
pub fn wedge_measure(spec: &WedgeSpec) -> Measure {
    let g = spec.g();
    let n = int(spec.circle_count() as i64);
    let graph = spec.graph();
    let densities = spec.lengths.iter().map(|l| (&g * l).recip()).collect();
    Measure::new(&graph, vec![(&g - n) / &g], densities).expect("dimensions match the bouquet")
}

pub fn wedge_green(spec: &WedgeSpec, x: &WedgePoint, y: &WedgePoint) -> Result<Rational> {
    let g = spec.g();
    let lx = spec.circle_length(x.circle)?;
    let ly = spec.circle_length(y.circle)?;
    let tail = spec.total_length() / (int(12) * &g * &g);
    let phi_x = circle_phi(lx, &x.coordinate)?;
    let phi_y = circle_phi(ly, &y.coordinate)?;
    let value = if x.circle == y.circle {
        let diff = circle_phi(lx, &(&x.coordinate - &y.coordinate))?;
        diff - (&g - int(1)) / &g * (phi_x + phi_y) + tail
    } else {
        (phi_x + phi_y) / &g + tail
    };
    Ok(value)
}

/// `c(G, K) = L(2g - 1)/(12g²)`.
pub fn wedge_constant(spec: &WedgeSpec) -> Rational {
    let g = spec.g();
    spec.total_length() * (int(2) * &g - int(1)) / (int(12) * &g * &g)
}

/// `g(K, y) + g(y, y)` from the closed forms.
pub fn wedge_constant_at(spec: &WedgeSpec, y: &WedgePoint) -> Result<Rational> {
    let k = int(2 * i64::from(spec.genus) - 2);
    Ok(k * wedge_green(spec, &WedgePoint::origin(), y)? + wedge_green(spec, y, y)?)
}

/// True when `g < n`, i.e. the vertex mass of the measure is negative.
pub fn has_negative_mass(spec: &WedgeSpec) -> bool {
    (spec.genus as usize) < spec.circle_count()
}
