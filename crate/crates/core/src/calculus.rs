//! Piecewise-quadratic functions, measures, and the Laplacian between them.
//!
//! Functions live in the space of continuous functions that are quadratic on each
//! edge (in the tail-anchored arc-length coordinate). Measures are combinations of
//! vertex point masses and uniform densities on edges. The distributional Laplacian
//! maps the first space to the second:
//!
//! ```text
//! Δf = -f'' dt - Σ_v (Σ outgoing one-sided derivatives of f at v) δ_v
//! ```
//!
//! and the vertex maps `p` (restriction to vertices) and `q` (collapse of measures
//! onto vertices) intertwine `Δ` with the weighted Laplacian matrix `L`:
//! `q ∘ Δ = L ∘ p`.

use std::ops::Index;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MetrizedGraph, PointLocation, Refinement, VertexId};
use crate::linalg::SquareMatrix;
use crate::rational::{int, Rational};

/// `c2·t² + c1·t + c0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quadratic {
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
}

impl Quadratic {
    pub fn new(c2: Rational, c1: Rational, c0: Rational) -> Self {
        Quadratic { c2, c1, c0 }
    }

    pub fn constant(c0: Rational) -> Self {
        Quadratic::new(Rational::zero(), Rational::zero(), c0)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        (&self.c2 * t + &self.c1) * t + &self.c0
    }

    pub fn derivative(&self, t: &Rational) -> Rational {
        int(2) * &self.c2 * t + &self.c1
    }

    /// `∫_0^l` of the polynomial.
    pub fn integral(&self, l: &Rational) -> Rational {
        let l2 = l * l;
        &self.c2 * &l2 * l / int(3) + &self.c1 * &l2 / int(2) + &self.c0 * l
    }

    /// The polynomial `t ↦ self(t + shift)`.
    pub fn shifted(&self, shift: &Rational) -> Quadratic {
        Quadratic {
            c2: self.c2.clone(),
            c1: int(2) * &self.c2 * shift + &self.c1,
            c0: self.eval(shift),
        }
    }

    fn plus(&self, other: &Quadratic) -> Quadratic {
        Quadratic::new(&self.c2 + &other.c2, &self.c1 + &other.c1, &self.c0 + &other.c0)
    }

    fn scaled(&self, factor: &Rational) -> Quadratic {
        Quadratic::new(&self.c2 * factor, &self.c1 * factor, &self.c0 * factor)
    }
}

/// Values indexed by the vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexVector(pub Vec<Rational>);

impl VertexVector {
    pub fn zeros(graph: &MetrizedGraph) -> Self {
        VertexVector(vec![Rational::zero(); graph.vertex_count()])
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Index<VertexId> for VertexVector {
    type Output = Rational;

    fn index(&self, v: VertexId) -> &Rational {
        &self.0[v.0]
    }
}

/// A function that is quadratic on every edge. Continuity at vertices is not
/// enforced at construction; operations that need it check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseQuadratic {
    pieces: Vec<Quadratic>,
}

impl PiecewiseQuadratic {
    pub fn new(graph: &MetrizedGraph, pieces: Vec<Quadratic>) -> Result<Self> {
        if pieces.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.edge_count(),
                found: pieces.len(),
            });
        }
        Ok(PiecewiseQuadratic { pieces })
    }

    pub fn constant(graph: &MetrizedGraph, value: Rational) -> Self {
        PiecewiseQuadratic {
            pieces: vec![Quadratic::constant(value); graph.edge_count()],
        }
    }

    /// The function that is linear on every edge with the given vertex values.
    pub fn linear_interpolation(graph: &MetrizedGraph, values: &VertexVector) -> Self {
        let pieces = graph
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (&values[e.tail], &values[e.head]);
                Quadratic::new(Rational::zero(), (b - a) / &e.length, a.clone())
            })
            .collect();
        PiecewiseQuadratic { pieces }
    }

    pub fn pieces(&self) -> &[Quadratic] {
        &self.pieces
    }

    pub fn piece(&self, e: EdgeId) -> &Quadratic {
        &self.pieces[e.0]
    }

    /// Vertex values, or the first vertex where incident pieces disagree.
    pub fn vertex_values(&self, graph: &MetrizedGraph) -> Result<VertexVector> {
        let mut values: Vec<Option<Rational>> = vec![None; graph.vertex_count()];
        for (edge, piece) in graph.edges().iter().zip(&self.pieces) {
            for (v, value) in [(edge.tail, piece.c0.clone()), (edge.head, piece.eval(&edge.length))] {
                match &values[v.0] {
                    Some(existing) if *existing != value => {
                        return Err(Error::DiscontinuousFunction(graph.vertex_name(v).to_string()))
                    }
                    Some(_) => {}
                    None => values[v.0] = Some(value),
                }
            }
        }
        // connected graphs with at least one edge touch every vertex
        Ok(VertexVector(values.into_iter().map(|v| v.unwrap_or_default()).collect()))
    }

    pub fn is_continuous(&self, graph: &MetrizedGraph) -> bool {
        self.vertex_values(graph).is_ok()
    }

    pub fn eval(&self, graph: &MetrizedGraph, point: &PointLocation) -> Result<Rational> {
        match point {
            PointLocation::Vertex(v) => Ok(self.vertex_values(graph)?[*v].clone()),
            PointLocation::Edge { edge, offset } => Ok(self.pieces[edge.0].eval(offset)),
        }
    }

    pub fn plus(&self, other: &PiecewiseQuadratic) -> Self {
        PiecewiseQuadratic {
            pieces: self.pieces.iter().zip(&other.pieces).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        PiecewiseQuadratic {
            pieces: self.pieces.iter().map(|p| p.scaled(factor)).collect(),
        }
    }

    pub fn plus_constant(&self, value: &Rational) -> Self {
        PiecewiseQuadratic {
            pieces: self
                .pieces
                .iter()
                .map(|p| Quadratic::new(p.c2.clone(), p.c1.clone(), &p.c0 + value))
                .collect(),
        }
    }

    /// The same function on a refinement of its graph.
    pub fn refine(&self, refinement: &Refinement) -> Self {
        PiecewiseQuadratic {
            pieces: refinement
                .origin
                .iter()
                .map(|(parent, start)| self.pieces[parent.0].shifted(start))
                .collect(),
        }
    }

    /// The same function with every length scaled by `factor` and every value by
    /// `value_factor`.
    pub fn rescaled(&self, factor: &Rational, value_factor: &Rational) -> Self {
        PiecewiseQuadratic {
            pieces: self
                .pieces
                .iter()
                .map(|p| {
                    Quadratic::new(
                        &p.c2 * value_factor / (factor * factor),
                        &p.c1 * value_factor / factor,
                        &p.c0 * value_factor,
                    )
                })
                .collect(),
        }
    }
}

/// Vertex point masses plus a uniform density `a_e·dt` on each edge. Signed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    vertex_mass: Vec<Rational>,
    edge_density: Vec<Rational>,
}

impl Measure {
    pub fn zero(graph: &MetrizedGraph) -> Self {
        Measure {
            vertex_mass: vec![Rational::zero(); graph.vertex_count()],
            edge_density: vec![Rational::zero(); graph.edge_count()],
        }
    }

    pub fn new(graph: &MetrizedGraph, vertex_mass: Vec<Rational>, edge_density: Vec<Rational>) -> Result<Self> {
        if vertex_mass.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.vertex_count(),
                found: vertex_mass.len(),
            });
        }
        if edge_density.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.edge_count(),
                found: edge_density.len(),
            });
        }
        Ok(Measure {
            vertex_mass,
            edge_density,
        })
    }

    pub fn dirac(graph: &MetrizedGraph, v: VertexId) -> Self {
        let mut m = Measure::zero(graph);
        m.vertex_mass[v.0] = Rational::one();
        m
    }

    /// Arc-length measure `dt` on one edge.
    pub fn lebesgue(graph: &MetrizedGraph, e: EdgeId) -> Self {
        let mut m = Measure::zero(graph);
        m.edge_density[e.0] = Rational::one();
        m
    }

    pub fn vertex_mass(&self, v: VertexId) -> &Rational {
        &self.vertex_mass[v.0]
    }

    pub fn edge_density(&self, e: EdgeId) -> &Rational {
        &self.edge_density[e.0]
    }

    pub fn vertex_masses(&self) -> &[Rational] {
        &self.vertex_mass
    }

    pub fn edge_densities(&self) -> &[Rational] {
        &self.edge_density
    }

    pub fn total_mass(&self, graph: &MetrizedGraph) -> Rational {
        let points = self.vertex_mass.iter().fold(Rational::zero(), |acc, m| acc + m);
        graph
            .edges()
            .iter()
            .zip(&self.edge_density)
            .fold(points, |acc, (e, a)| acc + a * &e.length)
    }

    pub fn is_nonnegative(&self) -> bool {
        let zero = Rational::zero();
        self.vertex_mass.iter().chain(&self.edge_density).all(|x| *x >= zero)
    }

    pub fn plus(&self, other: &Measure) -> Measure {
        Measure {
            vertex_mass: self.vertex_mass.iter().zip(&other.vertex_mass).map(|(a, b)| a + b).collect(),
            edge_density: self.edge_density.iter().zip(&other.edge_density).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn minus(&self, other: &Measure) -> Measure {
        self.plus(&other.scaled(&-Rational::one()))
    }

    pub fn scaled(&self, factor: &Rational) -> Measure {
        Measure {
            vertex_mass: self.vertex_mass.iter().map(|a| a * factor).collect(),
            edge_density: self.edge_density.iter().map(|a| a * factor).collect(),
        }
    }

    /// The same measure on a refinement of its graph.
    pub fn refine(&self, refinement: &Refinement) -> Measure {
        let mut vertex_mass = self.vertex_mass.clone();
        vertex_mass.resize(refinement.graph.vertex_count(), Rational::zero());
        Measure {
            vertex_mass,
            edge_density: refinement
                .origin
                .iter()
                .map(|(parent, _)| self.edge_density[parent.0].clone())
                .collect(),
        }
    }
}

/// Sum of outgoing one-sided derivatives at every vertex.
pub fn dirac_of(graph: &MetrizedGraph, f: &PiecewiseQuadratic) -> Result<VertexVector> {
    f.vertex_values(graph)?;
    let mut out = VertexVector::zeros(graph);
    for (edge, piece) in graph.edges().iter().zip(f.pieces()) {
        out.0[edge.tail.0] += &piece.c1;
        out.0[edge.head.0] -= piece.derivative(&edge.length);
    }
    Ok(out)
}

/// `Δf = -f'' dt - δ(f)`.
pub fn laplacian_of(graph: &MetrizedGraph, f: &PiecewiseQuadratic) -> Result<Measure> {
    let dirac = dirac_of(graph, f)?;
    Ok(Measure {
        vertex_mass: dirac.0.into_iter().map(|x| -x).collect(),
        edge_density: f.pieces().iter().map(|p| int(-2) * &p.c2).collect(),
    })
}

/// Collapses a measure onto vertices: each edge sends half its mass to each end.
pub fn q_map(graph: &MetrizedGraph, m: &Measure) -> VertexVector {
    let mut out = VertexVector(m.vertex_mass.clone());
    let half = Rational::new(1.into(), 2.into());
    for (edge, density) in graph.edges().iter().zip(&m.edge_density) {
        if density.is_zero() {
            continue;
        }
        let share = density * &edge.length * &half;
        out.0[edge.tail.0] += &share;
        out.0[edge.head.0] += &share;
    }
    out
}

/// Restriction to vertices.
pub fn p_map(graph: &MetrizedGraph, f: &PiecewiseQuadratic) -> Result<VertexVector> {
    f.vertex_values(graph)
}

/// The weighted Laplacian with conductance `1/l(e)` per non-loop edge.
pub fn laplacian_matrix(graph: &MetrizedGraph) -> SquareMatrix {
    let mut matrix = SquareMatrix::zeros(graph.vertex_count());
    for edge in graph.edges().iter().filter(|e| !e.is_loop()) {
        let conductance = edge.length.recip();
        let (t, h) = (edge.tail.0, edge.head.0);
        matrix.add_to(t, t, &conductance);
        matrix.add_to(h, h, &conductance);
        matrix.add_to(t, h, &-&conductance);
        matrix.add_to(h, t, &-&conductance);
    }
    matrix
}

pub fn integrate(graph: &MetrizedGraph, f: &PiecewiseQuadratic, m: &Measure) -> Result<Rational> {
    let values = f.vertex_values(graph)?;
    let points = values
        .0
        .iter()
        .zip(&m.vertex_mass)
        .filter(|(_, mass)| !mass.is_zero())
        .fold(Rational::zero(), |acc, (value, mass)| acc + value * mass);
    Ok(graph
        .edges()
        .iter()
        .zip(f.pieces())
        .zip(&m.edge_density)
        .filter(|(_, density)| !density.is_zero())
        .fold(points, |acc, ((edge, piece), density)| acc + density * piece.integral(&edge.length)))
}

/// Returns the unique `f` with `Δf = target` and `f(base) = 0`.
pub fn solve_poisson(graph: &MetrizedGraph, target: &Measure, base: VertexId) -> Result<PiecewiseQuadratic> {
    Ok(solve_poisson_many(graph, std::slice::from_ref(target), base)?
        .pop()
        .expect("one solution per target"))
}

/// [`solve_poisson`] for several targets sharing one elimination.
///
/// Each edge gets the bubble `c2·t·(t - l)` with `c2 = -a_e/2`, which carries the
/// edge density and whose `q`-image vanishes; the vertex values then solve
/// `L x = q(target)` with `x[base] = 0`.
pub fn solve_poisson_many(graph: &MetrizedGraph, targets: &[Measure], base: VertexId) -> Result<Vec<PiecewiseQuadratic>> {
    for target in targets {
        let mass = target.total_mass(graph);
        if !mass.is_zero() {
            return Err(Error::NonzeroMass(mass));
        }
    }
    let rhs: Vec<Vec<Rational>> = targets.iter().map(|t| q_map(graph, t).0).collect();
    let solutions = laplacian_matrix(graph).solve_pinned(&rhs, base.0)?;
    Ok(targets
        .iter()
        .zip(solutions)
        .map(|(target, x)| poisson_from_values(graph, target, VertexVector(x)))
        .collect())
}

/// The solution of `Δf = target` with the given vertex values, which must
/// already satisfy the vertex equations. Vertex masses of `target` are not read.
pub(crate) fn poisson_from_values(graph: &MetrizedGraph, target: &Measure, values: VertexVector) -> PiecewiseQuadratic {
    let linear = PiecewiseQuadratic::linear_interpolation(graph, &values);
    let pieces = graph
        .edges()
        .iter()
        .zip(linear.pieces)
        .zip(&target.edge_density)
        .map(|((edge, lin), density)| {
            let c2 = -density / int(2);
            let c1 = &lin.c1 - &c2 * &edge.length;
            Quadratic::new(c2, c1, lin.c0)
        })
        .collect();
    PiecewiseQuadratic { pieces }
}
