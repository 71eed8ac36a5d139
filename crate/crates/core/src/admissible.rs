//! Admissible measures, Green functions, and the admissible constant.
//!
//! For a vertex divisor `D` with `deg D ≠ -2` there is exactly one probability
//! measure `μ` (point masses on vertices plus uniform edge densities) and one
//! symmetric kernel `g_μ` such that `Δ_y g_μ(x, ·) = δ_x - μ`,
//! `∫ g_μ(x, ·) μ = 0`, and `g_μ(D, y) + g_μ(y, y)` is a constant `c(G, D)`.
//!
//! The measure is assembled as `μ_D = (δ_D + 2·μ_can) / (deg D + 2)` from the
//! canonical measure `μ_can = Σ_v (1 - v(v)/2) δ_v + Σ_e dt / (l(e) + R_e)`, where
//! `R_e` is the resistance between the ends of `e` with `e` removed. Nothing
//! downstream relies on that formula: [`verify_admissibility`] re-checks all six
//! defining properties from the data alone.

use num_traits::{One, Zero};

use crate::calculus::{self, integrate, laplacian_of, q_map, Measure, PiecewiseQuadratic, VertexVector};
use crate::error::{Error, Result};
use crate::graph::{MetrizedGraph, PointLocation, Refinement, VertexDivisor, VertexId};
use crate::linalg::SquareMatrix;
use crate::rational::{int, render, Rational};

/// Two-point resistance with conductance `1/l(e)` on every edge.
pub fn effective_resistance(graph: &MetrizedGraph, x: &PointLocation, y: &PointLocation) -> Result<Rational> {
    if x == y {
        return Ok(Rational::zero());
    }
    let refined = graph.refine(&[x.clone(), y.clone()])?;
    let (a, b) = (refined.points[0], refined.points[1]);
    let h = &refined.graph;
    let mut current = vec![Rational::zero(); h.vertex_count()];
    current[a.0] = Rational::one();
    current[b.0] = -Rational::one();
    let potential = calculus::laplacian_matrix(h).solve_pinned(&[current], b.0)?;
    Ok(potential[0][a.0].clone())
}

/// Potentials of unit currents entering at each vertex and leaving at vertex 0,
/// with vertex 0 grounded; row `v` is the response to the current at `v`.
fn grounded_inverse(graph: &MetrizedGraph) -> Result<Vec<Vec<Rational>>> {
    let n = graph.vertex_count();
    let unit: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j && i != 0 { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    calculus::laplacian_matrix(graph).solve_pinned(&unit, 0)
}

fn resistances_from(inverse: &[Vec<Rational>]) -> SquareMatrix {
    let n = inverse.len();
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, &inverse[i][i] + &inverse[j][j] - int(2) * &inverse[i][j]);
        }
    }
    out
}

/// Resistances between all vertex pairs, from one grounded inverse of the
/// Laplacian matrix.
pub fn resistance_matrix(graph: &MetrizedGraph) -> Result<SquareMatrix> {
    Ok(resistances_from(&grounded_inverse(graph)?))
}

/// The admissible measure for `D = 0`.
pub fn canonical_measure(graph: &MetrizedGraph) -> Result<Measure> {
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    canonical_from(graph, &resistance_matrix(graph)?)
}

fn canonical_from(graph: &MetrizedGraph, resistance: &SquareMatrix) -> Result<Measure> {
    let vertex_mass = graph
        .vertex_ids()
        .map(|v| Rational::one() - Rational::new((graph.valence(v) as i64).into(), 2.into()))
        .collect();
    // dt/(l + R_e) with R_e the resistance of G - e; via l·R_e/(l + R_e) = r this is (l - r)/l².
    let edge_density = graph
        .edges()
        .iter()
        .map(|e| {
            let r = resistance.get(e.tail.0, e.head.0);
            (&e.length - r) / (&e.length * &e.length)
        })
        .collect();
    Measure::new(graph, vertex_mass, edge_density)
}

fn positivity_hypothesis(graph: &MetrizedGraph, divisor: &VertexDivisor) -> bool {
    graph
        .vertex_ids()
        .all(|v| *divisor.coefficient(v) >= int(graph.valence(v) as i64 - 2))
}

/// `μ_D = (δ_D + 2·μ_can) / (deg D + 2)`.
///
/// Signed results are returned as is; when `d_v ≥ v(v) - 2` at every vertex the
/// result is required to be nonnegative.
pub fn admissible_measure(graph: &MetrizedGraph, divisor: &VertexDivisor) -> Result<Measure> {
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    admissible_from(graph, divisor, || resistance_matrix(graph))
}

fn admissible_from(
    graph: &MetrizedGraph,
    divisor: &VertexDivisor,
    resistance: impl FnOnce() -> Result<SquareMatrix>,
) -> Result<Measure> {
    if divisor.coefficients().len() != graph.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: graph.vertex_count(),
            found: divisor.coefficients().len(),
        });
    }
    let denominator = divisor.degree() + int(2);
    if denominator.is_zero() {
        return Err(Error::DegreeMinusTwo);
    }
    let canonical = canonical_from(graph, &resistance()?)?;
    let point_part = Measure::new(graph, divisor.coefficients().to_vec(), vec![Rational::zero(); graph.edge_count()])?;
    let measure = point_part
        .plus(&canonical.scaled(&int(2)))
        .scaled(&denominator.recip());
    if positivity_hypothesis(graph, divisor) && !measure.is_nonnegative() {
        return Err(Error::PositivityViolated);
    }
    Ok(measure)
}

/// The admissible measure of a divisor with its Green function restricted to
/// vertex sources, and the constant `c(G, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenSystem {
    pub divisor: VertexDivisor,
    pub measure: Measure,
    /// `g_μ(v, w)` for vertices `v, w`.
    pub values: SquareMatrix,
    /// `g_μ(v, ·)` for each vertex `v`.
    pub sources: Vec<PiecewiseQuadratic>,
    pub constant: Rational,
}

impl GreenSystem {
    pub fn value(&self, v: VertexId, w: VertexId) -> &Rational {
        self.values.get(v.0, w.0)
    }

    pub fn source(&self, v: VertexId) -> &PiecewiseQuadratic {
        &self.sources[v.0]
    }

    /// `g_μ(D, w) = Σ_v d_v g_μ(v, w)`.
    pub fn divisor_value(&self, w: VertexId) -> Rational {
        self.divisor
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .fold(Rational::zero(), |acc, (v, d)| acc + d * self.values.get(v, w.0))
    }

    /// `Σ_{v,w} d_v g_μ(v, w) e_w`.
    pub fn pairing(&self, d: &[Rational], e: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (v, dv) in d.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (w, ew) in e.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                total += dv * self.values.get(v, w) * ew;
            }
        }
        total
    }

    /// True when the admissible measure has a negative part (allowed, but worth
    /// surfacing to the user).
    pub fn has_negative_mass(&self) -> bool {
        !self.measure.is_nonnegative()
    }
}

/// Builds the Green system of `(G, D)`.
///
/// One grounded inverse of the Laplacian matrix serves both the canonical
/// measure and every Poisson solve: the vertex values of the solution for
/// `δ_x - μ` are row `x` of the inverse minus the response to `q(μ)`.
pub fn green_system(graph: &MetrizedGraph, divisor: &VertexDivisor) -> Result<GreenSystem> {
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut inverse = None;
    let measure = admissible_from(graph, divisor, || {
        let x = grounded_inverse(graph)?;
        let r = resistances_from(&x);
        inverse = Some(x);
        Ok(r)
    })?;
    let inverse = inverse.expect("admissible measure computes the inverse");
    let load = q_map(graph, &measure);
    let response: Vec<Rational> = (0..graph.vertex_count())
        .map(|w| {
            inverse
                .iter()
                .zip(load.as_slice())
                .filter(|(_, m)| !m.is_zero())
                .fold(Rational::zero(), |acc, (row, m)| acc + m * &row[w])
        })
        .collect();
    // Every source carries the same bubbles, so with vertex values x its
    // μ-integral is x·q(μ) plus the integral of the bubbles alone.
    let negated = measure.scaled(&-Rational::one());
    let bubbles = calculus::poisson_from_values(graph, &negated, VertexVector::zeros(graph));
    let bubble_integral = integrate(graph, &bubbles, &measure)?;

    let mut sources = Vec::with_capacity(graph.vertex_count());
    let mut rows = Vec::with_capacity(graph.vertex_count());
    for x in graph.vertex_ids() {
        let mut values: Vec<Rational> = inverse[x.0].iter().zip(&response).map(|(a, b)| a - b).collect();
        let offset = values
            .iter()
            .zip(load.as_slice())
            .filter(|(_, m)| !m.is_zero())
            .fold(bubble_integral.clone(), |acc, (v, m)| acc + v * m);
        for v in &mut values {
            *v -= &offset;
        }
        sources.push(calculus::poisson_from_values(graph, &negated, VertexVector(values.clone())));
        rows.push(values);
    }
    let values = SquareMatrix::from_rows(rows);

    let mut system = GreenSystem {
        divisor: divisor.clone(),
        measure,
        values,
        sources,
        constant: Rational::zero(),
    };
    let at = |v: VertexId| system.divisor_value(v) + system.value(v, v);
    let constant = at(VertexId(0));
    for v in graph.vertex_ids().skip(1) {
        let here = at(v);
        if here != constant {
            return Err(Error::NotAdmissible {
                first_at: graph.vertex_name(VertexId(0)).to_string(),
                first: constant,
                second_at: graph.vertex_name(v).to_string(),
                second: here,
            });
        }
    }
    system.constant = constant;
    Ok(system)
}

/// Green system on the graph refined at `points`; the returned refinement maps
/// each point to its vertex.
pub fn green_system_at(
    graph: &MetrizedGraph,
    divisor: &VertexDivisor,
    points: &[PointLocation],
) -> Result<(Refinement, GreenSystem)> {
    let refinement = graph.refine(points)?;
    let system = green_system(&refinement.graph, &divisor.extend_to(&refinement.graph))?;
    Ok((refinement, system))
}

/// `g_μ(x, y)` for arbitrary points, by subdividing at `x` and `y`.
pub fn green_eval(graph: &MetrizedGraph, divisor: &VertexDivisor, x: &PointLocation, y: &PointLocation) -> Result<Rational> {
    let (refinement, system) = green_system_at(graph, divisor, &[x.clone(), y.clone()])?;
    Ok(system.value(refinement.points[0], refinement.points[1]).clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub property: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub checks: Vec<PropertyCheck>,
}

impl AdmissibilityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn check(&self, property: u8) -> &PropertyCheck {
        &self.checks[usize::from(property) - 1]
    }
}

fn check(property: u8, name: &'static str, failure: Option<String>) -> PropertyCheck {
    PropertyCheck {
        property,
        name,
        passed: failure.is_none(),
        detail: failure.unwrap_or_else(|| "ok".to_string()),
    }
}

/// Checks the six defining properties of an admissible measure and its Green
/// function against `system`, exactly. Property 6 is checked at every vertex and
/// at the midpoint of every edge.
pub fn verify_admissibility(graph: &MetrizedGraph, divisor: &VertexDivisor, system: &GreenSystem) -> AdmissibilityReport {
    let n = graph.vertex_count();
    let shape_ok = system.values.dim() == n
        && system.sources.len() == n
        && system.measure.vertex_masses().len() == n
        && system.measure.edge_densities().len() == graph.edge_count()
        && system.sources.iter().all(|s| s.pieces().len() == graph.edge_count())
        && divisor.coefficients().len() == n;
    if !shape_ok {
        let names = ["total mass", "symmetry", "quadratic on edges", "laplacian", "mean zero", "constant"];
        return AdmissibilityReport {
            checks: names
                .iter()
                .enumerate()
                .map(|(i, name)| check(i as u8 + 1, name, Some("system does not match the graph".into())))
                .collect(),
        };
    }
    let mu = &system.measure;
    let vertex = |v: usize| graph.vertex_name(VertexId(v)).to_string();

    let mass = mu.total_mass(graph);
    let p1 = check(1, "total mass", (mass != Rational::one()).then(|| format!("total mass is {}", render(&mass))));

    let continuity: Vec<Result<calculus::VertexVector>> =
        system.sources.iter().map(|s| s.vertex_values(graph)).collect();

    let mut p2_failure = None;
    'outer: for (i, sampled) in continuity.iter().enumerate() {
        for j in 0..i {
            if system.values.get(i, j) != system.values.get(j, i) {
                p2_failure = Some(format!("g({}, {}) != g({}, {})", vertex(i), vertex(j), vertex(j), vertex(i)));
                break 'outer;
            }
        }
        if let Ok(values) = sampled {
            if let Some(j) = (0..n).find(|&j| values.0[j] != *system.values.get(i, j)) {
                p2_failure = Some(format!("source {} disagrees with g({}, {})", vertex(i), vertex(i), vertex(j)));
                break;
            }
        }
    }
    let p2 = check(2, "symmetry", p2_failure);

    let p3 = check(
        3,
        "quadratic on edges",
        continuity
            .iter()
            .position(|c| c.is_err())
            .map(|i| format!("source {} is discontinuous", vertex(i))),
    );

    let mut p4_failure = None;
    for (x, source) in system.sources.iter().enumerate() {
        let expected = Measure::dirac(graph, VertexId(x)).minus(mu);
        match laplacian_of(graph, source) {
            Ok(lap) if lap == expected => {}
            _ => {
                p4_failure = Some(format!("Δ g({}, ·) != δ - μ", vertex(x)));
                break;
            }
        }
    }
    let p4 = check(4, "laplacian", p4_failure);

    let mut p5_failure = None;
    for (x, source) in system.sources.iter().enumerate() {
        match integrate(graph, source, mu) {
            Ok(value) if value.is_zero() => {}
            Ok(value) => {
                p5_failure = Some(format!("∫ g({}, ·) μ = {}", vertex(x), render(&value)));
                break;
            }
            Err(e) => {
                p5_failure = Some(format!("source {}: {e}", vertex(x)));
                break;
            }
        }
    }
    let p5 = check(5, "mean zero", p5_failure);

    let p6 = check(6, "constant", constancy_failure(graph, divisor, system));

    AdmissibilityReport {
        checks: vec![p1, p2, p3, p4, p5, p6],
    }
}

fn constancy_failure(graph: &MetrizedGraph, divisor: &VertexDivisor, system: &GreenSystem) -> Option<String> {
    let c = &system.constant;
    let d = divisor.coefficients();
    for v in graph.vertex_ids() {
        let at = (0..graph.vertex_count())
            .filter(|&w| !d[w].is_zero())
            .fold(system.value(v, v).clone(), |acc, w| acc + &d[w] * system.values.get(w, v.0));
        if at != *c {
            return Some(format!("value {} at {} differs from c = {}", render(&at), graph.vertex_name(v), render(c)));
        }
    }

    // interior samples: midpoint of every edge
    let midpoints: Vec<PointLocation> = graph
        .edge_ids()
        .map(|e| PointLocation::Edge {
            edge: e,
            offset: graph.length(e) / int(2),
        })
        .collect();
    let refinement = match graph.refine(&midpoints) {
        Ok(r) => r,
        Err(e) => return Some(e.to_string()),
    };
    let h = &refinement.graph;
    let mu = system.measure.refine(&refinement);
    let sources: Vec<PiecewiseQuadratic> = system.sources.iter().map(|s| s.refine(&refinement)).collect();
    let targets: Vec<Measure> = refinement
        .points
        .iter()
        .map(|&y| Measure::dirac(h, y).minus(&mu))
        .collect();
    let diagonal = match calculus::solve_poisson_many(h, &targets, VertexId(0)) {
        Ok(d) => d,
        Err(e) => return Some(format!("cannot solve for interior sources: {e}")),
    };
    for (y, raw) in refinement.points.iter().zip(diagonal) {
        let offset = match integrate(h, &raw, &mu) {
            Ok(value) => value,
            Err(e) => return Some(e.to_string()),
        };
        let values = match raw.vertex_values(h) {
            Ok(values) => values,
            Err(e) => return Some(e.to_string()),
        };
        let mut at = &values[*y] - offset;
        for (w, dw) in d.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            match sources[w].vertex_values(h) {
                Ok(values) => at += dw * &values[*y],
                Err(e) => return Some(e.to_string()),
            }
        }
        if at != *c {
            return Some(format!("value {} at {} differs from c = {}", render(&at), h.vertex_name(*y), render(c)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeId, EdgeSpec};
    use crate::rational::{ratio, zero};

    fn segment(l: Rational) -> MetrizedGraph {
        MetrizedGraph::build(&["a", "b"], &[EdgeSpec::new("e", "a", "b", l)]).unwrap()
    }

    fn bouquet(lengths: &[Rational]) -> MetrizedGraph {
        let edges: Vec<_> = lengths
            .iter()
            .enumerate()
            .map(|(i, l)| EdgeSpec::new(format!("c{}", i + 1), "O", "O", l.clone()))
            .collect();
        MetrizedGraph::build(&["O"], &edges).unwrap()
    }

    fn parallel() -> MetrizedGraph {
        MetrizedGraph::build(
            &["v1", "v2"],
            &[EdgeSpec::new("n1", "v1", "v2", int(1)), EdgeSpec::new("n2", "v1", "v2", int(1))],
        )
        .unwrap()
    }

    fn vertex(v: usize) -> PointLocation {
        PointLocation::Vertex(VertexId(v))
    }

    #[test]
    fn resistance_examples() {
        let l = ratio(7, 3);
        assert_eq!(effective_resistance(&segment(l.clone()), &vertex(0), &vertex(1)).unwrap(), l);
        assert_eq!(effective_resistance(&parallel(), &vertex(0), &vertex(1)).unwrap(), ratio(1, 2));
        let c = bouquet(&[int(1)]);
        let half = c.point_on_edge(EdgeId(0), ratio(1, 2)).unwrap();
        assert_eq!(effective_resistance(&c, &vertex(0), &half).unwrap(), ratio(1, 4));
        assert_eq!(effective_resistance(&c, &half, &vertex(0)).unwrap(), ratio(1, 4));
        assert_eq!(effective_resistance(&c, &half, &half).unwrap(), zero());
    }

    #[test]
    fn canonical_measure_examples() {
        let l = ratio(5, 2);
        let circle = canonical_measure(&bouquet(std::slice::from_ref(&l))).unwrap();
        assert_eq!(circle.vertex_masses(), &[zero()]);
        assert_eq!(circle.edge_densities(), &[l.recip()]);

        let seg = canonical_measure(&segment(int(3))).unwrap();
        assert_eq!(seg.vertex_masses(), &[ratio(1, 2), ratio(1, 2)]);
        assert_eq!(seg.edge_densities(), &[zero()]);

        let lengths = [int(1), ratio(1, 2), int(3)];
        let wedge = canonical_measure(&bouquet(&lengths)).unwrap();
        assert_eq!(wedge.vertex_masses(), &[int(-2)]);
        let expected: Vec<Rational> = lengths.iter().map(|l| l.recip()).collect();
        assert_eq!(wedge.edge_densities(), expected.as_slice());
    }

    #[test]
    fn admissible_measure_examples() {
        let g = bouquet(&[int(1), int(1)]);
        let k = VertexDivisor::from_named(&g, &[("O", int(2))]).unwrap();
        let mu = admissible_measure(&g, &k).unwrap();
        assert_eq!(mu.vertex_masses(), &[zero()]);
        assert_eq!(mu.edge_densities(), &[ratio(1, 2), ratio(1, 2)]);

        let s = segment(int(1));
        let d = VertexDivisor::from_named(&s, &[("a", int(1)), ("b", int(1))]).unwrap();
        let mu = admissible_measure(&s, &d).unwrap();
        assert_eq!(mu.vertex_masses(), &[ratio(1, 2), ratio(1, 2)]);

        let p = parallel();
        assert_eq!(admissible_measure(&p, &VertexDivisor::zero(&p)).unwrap(), canonical_measure(&p).unwrap());
    }

    #[test]
    fn degree_minus_two_is_rejected() {
        let s = segment(int(1));
        let d = VertexDivisor::from_named(&s, &[("a", int(-3)), ("b", int(1))]).unwrap();
        assert_eq!(admissible_measure(&s, &d), Err(Error::DegreeMinusTwo));
        assert!(matches!(green_system(&s, &d), Err(Error::DegreeMinusTwo)));
    }

    #[test]
    fn circle_green_system() {
        let g = bouquet(&[int(1)]);
        let system = green_system(&g, &VertexDivisor::zero(&g)).unwrap();
        assert_eq!(system.value(VertexId(0), VertexId(0)), &ratio(1, 12));
        assert_eq!(system.constant, ratio(1, 12));
    }

    #[test]
    fn parallel_edges_green_system() {
        let g = parallel();
        let d = VertexDivisor::from_named(&g, &[("v1", int(2))]).unwrap();
        let system = green_system(&g, &d).unwrap();
        assert_eq!(system.value(VertexId(0), VertexId(0)), &ratio(1, 24));
        assert_eq!(system.value(VertexId(0), VertexId(1)), &ratio(-1, 12));
        assert_eq!(system.value(VertexId(1), VertexId(1)), &ratio(7, 24));
        assert_eq!(system.constant, ratio(1, 8));
        assert!(verify_admissibility(&g, &d, &system).all_passed());
    }

    #[test]
    fn wedge_green_values() {
        let g = bouquet(&[int(1), int(1)]);
        let k = VertexDivisor::from_named(&g, &[("O", int(2))]).unwrap();
        let system = green_system(&g, &k).unwrap();
        assert_eq!(system.value(VertexId(0), VertexId(0)), &ratio(1, 24));
        assert_eq!(system.constant, ratio(1, 8));

        let circle = bouquet(&[int(1)]);
        let k = VertexDivisor::from_named(&circle, &[("O", int(2))]).unwrap();
        let mid = circle.point_on_edge(EdgeId(0), ratio(1, 2)).unwrap();
        assert_eq!(green_eval(&circle, &k, &vertex(0), &mid).unwrap(), ratio(-1, 24));
        assert_eq!(green_eval(&circle, &k, &mid, &vertex(0)).unwrap(), ratio(-1, 24));
    }

    #[test]
    fn green_eval_symmetric_on_parallel_edges() {
        let g = parallel();
        let d = VertexDivisor::from_named(&g, &[("v1", int(2))]).unwrap();
        assert_eq!(green_eval(&g, &d, &vertex(0), &vertex(1)).unwrap(), ratio(-1, 12));
        assert_eq!(green_eval(&g, &d, &vertex(1), &vertex(0)).unwrap(), ratio(-1, 12));
    }

    #[test]
    fn injected_faults_are_caught() {
        let g = parallel();
        let d = VertexDivisor::from_named(&g, &[("v1", int(2))]).unwrap();
        let system = green_system(&g, &d).unwrap();

        let mut doubled = system.clone();
        doubled.measure = doubled.measure.scaled(&int(2));
        let report = verify_admissibility(&g, &d, &doubled);
        assert!(!report.check(1).passed);
        assert!(!report.all_passed());

        let mut perturbed = system.clone();
        perturbed.values.set(0, 1, ratio(1, 7));
        let report = verify_admissibility(&g, &d, &perturbed);
        assert!(!report.check(2).passed || !report.check(6).passed);

        let mut shifted = system;
        shifted.constant += int(1);
        let report = verify_admissibility(&g, &d, &shifted);
        assert!(!report.check(6).passed);
        assert_eq!(report.passed_count(), 5);
    }

    #[test]
    fn negative_mass_for_wedge_with_small_genus() {
        let g = bouquet(&[int(1), int(1), int(1)]);
        let k = VertexDivisor::from_named(&g, &[("O", int(2))]).unwrap();
        let system = green_system(&g, &k).unwrap();
        assert_eq!(system.measure.vertex_masses(), &[ratio(-1, 2)]);
        assert!(system.has_negative_mass());
        assert!(verify_admissibility(&g, &k, &system).all_passed());
    }
}
