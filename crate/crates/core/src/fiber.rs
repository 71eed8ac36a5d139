//! Dual graphs of semistable fibers and the graph-side terms of the admissible
//! pairing.
//!
//! A fiber is modeled by its dual graph: one vertex per irreducible component
//! (carrying its geometric genus), one unit-length edge per node. Self-intersections
//! are reconstructed from `C_v · F = 0`, so the surface itself never appears.

use num_traits::Zero;

use crate::admissible::{green_system, GreenSystem};
use crate::calculus::{self, laplacian_of, q_map, Measure, PiecewiseQuadratic, VertexVector};
use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, MetrizedGraph, VertexDivisor, VertexId};
use crate::linalg::SquareMatrix;
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGraph {
    graph: MetrizedGraph,
    component_genus: Vec<u32>,
    genus: u32,
}

impl FiberGraph {
    /// Validates unit lengths and derives the curve genus
    /// `g = Σ g_v + (|E| - |V| + 1)`, which must be at least 1.
    pub fn new(graph: MetrizedGraph, component_genus: Vec<u32>) -> Result<Self> {
        if component_genus.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.vertex_count(),
                found: component_genus.len(),
            });
        }
        if let Some(edge) = graph.edges().iter().find(|e| e.length != int(1)) {
            return Err(Error::NonUnitLength {
                edge: edge.id.clone(),
                length: edge.length.clone(),
            });
        }
        let genus = component_genus.iter().map(|&g| i64::from(g)).sum::<i64>() + graph.genus();
        if genus < 1 {
            return Err(Error::GenusTooSmall { required: 1, found: genus });
        }
        Ok(FiberGraph {
            graph,
            component_genus,
            genus: genus as u32,
        })
    }

    /// Builds the dual graph from component names with their genera and one
    /// `(id, component, component)` triple per node.
    pub fn from_components<S: AsRef<str>>(components: &[(S, u32)], nodes: &[(S, S, S)]) -> Result<Self> {
        let names: Vec<&str> = components.iter().map(|(n, _)| n.as_ref()).collect();
        let edges: Vec<EdgeSpec> = nodes
            .iter()
            .map(|(id, a, b)| EdgeSpec::new(id.as_ref(), a.as_ref(), b.as_ref(), int(1)))
            .collect();
        let graph = MetrizedGraph::build(&names, &edges)?;
        FiberGraph::new(graph, components.iter().map(|(_, g)| *g).collect())
    }

    pub fn graph(&self) -> &MetrizedGraph {
        &self.graph
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn component_genus(&self, v: VertexId) -> u32 {
        self.component_genus[v.0]
    }

    /// Number of nodes of the fiber.
    pub fn node_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// `C_v · C_v = -(number of non-loop node branches on C_v)`.
    pub fn self_intersection(&self, v: VertexId) -> i64 {
        -(self.graph.valence(v) as i64 - 2 * self.graph.loop_count(v) as i64)
    }

    /// `K_y = Σ_v (ω · C_v) v` with `ω · C_v = 2 p_a(C_v) - 2 - C_v²` and
    /// `p_a(C_v) = g_v + (loops at v)`.
    pub fn canonical_divisor(&self) -> Result<VertexDivisor> {
        let coefficients: Vec<Rational> = self
            .graph
            .vertex_ids()
            .map(|v| {
                let arithmetic_genus = i64::from(self.component_genus[v.0]) + self.graph.loop_count(v) as i64;
                int(2 * arithmetic_genus - 2 - self.self_intersection(v))
            })
            .collect();
        let divisor = VertexDivisor::from_coefficients(&self.graph, coefficients)?;
        let expected = int(2 * i64::from(self.genus) - 2);
        if divisor.degree() != expected {
            return Err(Error::DegreeMismatch {
                expected,
                found: divisor.degree(),
            });
        }
        Ok(divisor)
    }

    /// `(C_v · C_w)`: node counts off the diagonal, self-intersections on it.
    pub fn intersection_matrix(&self) -> SquareMatrix {
        let n = self.graph.vertex_count();
        let mut matrix = SquareMatrix::zeros(n);
        for edge in self.graph.edges().iter().filter(|e| !e.is_loop()) {
            matrix.add_to(edge.tail.0, edge.head.0, &int(1));
            matrix.add_to(edge.head.0, edge.tail.0, &int(1));
        }
        for v in self.graph.vertex_ids() {
            matrix.set(v.0, v.0, int(self.self_intersection(v)));
        }
        matrix
    }

    /// Admissible data for `(G_y, K_y)`.
    pub fn analyze(&self) -> Result<FiberAnalysis> {
        let divisor = self.canonical_divisor()?;
        let system = green_system(&self.graph, &divisor)?;
        Ok(FiberAnalysis {
            fiber: self.clone(),
            system,
        })
    }
}

/// A fiber with its admissible measure and Green function for `K_y`.
#[derive(Clone, Debug)]
pub struct FiberAnalysis {
    pub fiber: FiberGraph,
    pub system: GreenSystem,
}

impl FiberAnalysis {
    pub fn canonical_divisor(&self) -> &VertexDivisor {
        &self.system.divisor
    }

    pub fn measure(&self) -> &Measure {
        &self.system.measure
    }

    fn check_len(&self, d: &VertexVector) -> Result<()> {
        let n = self.fiber.graph.vertex_count();
        if d.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d.len(),
            });
        }
        Ok(())
    }

    /// `Σ_{v,w} d_v g(v, w) e_w`, where `d_v = D · C_v` and `e_w = E · C_w`.
    pub fn pairing_correction(&self, d: &VertexVector, e: &VertexVector) -> Result<Rational> {
        self.check_len(d)?;
        self.check_len(e)?;
        Ok(self.system.pairing(d.as_slice(), e.as_slice()))
    }

    /// `(D · C_v)_a = d_v + Σ_{w,w'} d_w g(w, w') (C_v · C_{w'})`, checked against
    /// `(Σ_w d_w)·q(μ)(v)`.
    pub fn vertical_admissible_intersection(&self, d: &VertexVector) -> Result<VertexVector> {
        self.check_len(d)?;
        let graph = &self.fiber.graph;
        let n = graph.vertex_count();
        let intersection = self.fiber.intersection_matrix();
        let potential: Vec<Rational> = (0..n)
            .map(|w2| {
                d.0.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .fold(Rational::zero(), |acc, (w, dw)| acc + dw * self.system.values.get(w, w2))
            })
            .collect();
        let correction = intersection.mul_vec(&potential);
        let left: Vec<Rational> = d.0.iter().zip(correction).map(|(a, b)| a + b).collect();

        let degree = d.sum();
        let right: Vec<Rational> = q_map(graph, &self.system.measure).0.iter().map(|q| &degree * q).collect();
        if let Some(v) = (0..n).find(|&v| left[v] != right[v]) {
            return Err(Error::VerticalIntersectionMismatch {
                vertex: graph.vertex_name(VertexId(v)).to_string(),
                left: left[v].clone(),
                right: right[v].clone(),
            });
        }
        Ok(VertexVector(left))
    }

    /// `g(K_y, K_y) - 2(2g - 2)·c(G_y, K_y)`.
    pub fn local_term(&self) -> Result<Rational> {
        local_term_of(&self.system, self.fiber.genus)
    }
}

/// `g(K, K) - 2(2g - 2)·c` for any Green system built on a divisor `K` of degree
/// `2g - 2`. Requires `g ≥ 2`.
pub fn local_term_of(system: &GreenSystem, genus: u32) -> Result<Rational> {
    if genus < 2 {
        return Err(Error::GenusTooSmall {
            required: 2,
            found: i64::from(genus),
        });
    }
    let k = system.divisor.coefficients();
    let self_pairing = system.pairing(k, k);
    Ok(self_pairing - int(2) * int(2 * i64::from(genus) - 2) * &system.constant)
}

/// One vertex of a [`corollary_a2_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexBalance {
    pub vertex: VertexId,
    /// `d_v + Σ_{v'} a(v, v') g(v')`
    pub left: Rational,
    /// `(deg D)·q(μ)(v)`
    pub right: Rational,
}

impl VertexBalance {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

/// Given `∫μ = 1` and `Δg = δ_D - (deg D)·μ`, checks
/// `d_v + Σ_{v'} a(v, v') g(v') = (deg D)·q(μ)(v)` at every vertex.
pub fn corollary_a2_check(
    graph: &MetrizedGraph,
    divisor: &VertexDivisor,
    measure: &Measure,
    g: &PiecewiseQuadratic,
) -> Result<Vec<VertexBalance>> {
    if measure.total_mass(graph) != int(1) {
        return Err(Error::HypothesisViolated(format!(
            "measure has total mass {}",
            measure.total_mass(graph)
        )));
    }
    let degree = divisor.degree();
    let point_part = Measure::new(graph, divisor.coefficients().to_vec(), vec![Rational::zero(); graph.edge_count()])?;
    let expected = point_part.minus(&measure.scaled(&degree));
    if laplacian_of(graph, g)? != expected {
        return Err(Error::HypothesisViolated("Δg != δ_D - (deg D)μ".into()));
    }
    let values = g.vertex_values(graph)?;
    // Σ_{v'} a(v, v') g(v') is -(L g)(v)
    let flow = calculus::laplacian_matrix(graph).mul_vec(values.as_slice());
    let q = q_map(graph, measure);
    Ok(graph
        .vertex_ids()
        .map(|v| VertexBalance {
            vertex: v,
            left: divisor.coefficient(v) - &flow[v.0],
            right: &degree * &q[v],
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::canonical_measure;
    use crate::calculus::{solve_poisson, Quadratic};
    use crate::graph::EdgeId;
    use crate::rational::{ratio, zero};

    fn wedge_fiber(loops: usize, vertex_genus: u32) -> FiberGraph {
        let ids: Vec<String> = (0..loops).map(|i| format!("n{i}")).collect();
        let nodes: Vec<(&str, &str, &str)> = ids.iter().map(|id| (id.as_str(), "O", "O")).collect();
        FiberGraph::from_components(&[("O", vertex_genus)], &nodes).unwrap()
    }

    fn two_nodes() -> FiberGraph {
        FiberGraph::from_components(&[("v1", 1), ("v2", 0)], &[("n1", "v1", "v2"), ("n2", "v1", "v2")]).unwrap()
    }

    fn one_node() -> FiberGraph {
        FiberGraph::from_components(&[("v1", 1), ("v2", 1)], &[("n1", "v1", "v2")]).unwrap()
    }

    fn vv(values: &[i64]) -> VertexVector {
        VertexVector(values.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn fiber_genus() {
        let w = wedge_fiber(2, 0);
        assert_eq!((w.genus(), w.node_count()), (2, 2));
        assert_eq!((two_nodes().genus(), two_nodes().node_count()), (2, 2));
        assert_eq!((one_node().genus(), one_node().node_count()), (2, 1));
    }

    #[test]
    fn fiber_rejects_bad_input() {
        let graph = MetrizedGraph::build(&["a", "b"], &[EdgeSpec::new("e", "a", "b", int(2))]).unwrap();
        assert!(matches!(FiberGraph::new(graph, vec![1, 1]), Err(Error::NonUnitLength { .. })));
        assert!(matches!(
            FiberGraph::from_components(&[("a", 0), ("b", 0)], &[("e", "a", "b")]),
            Err(Error::GenusTooSmall { .. })
        ));
        assert!(matches!(
            FiberGraph::from_components(&[("a", 1), ("b", 0), ("c", 0)], &[("e", "a", "b")]),
            Err(Error::DisconnectedGraph)
        ));
    }

    #[test]
    fn canonical_divisors() {
        assert_eq!(wedge_fiber(2, 0).canonical_divisor().unwrap().coefficients(), &[int(2)]);
        assert_eq!(two_nodes().canonical_divisor().unwrap().coefficients(), &[int(2), int(0)]);
        assert_eq!(one_node().canonical_divisor().unwrap().coefficients(), &[int(1), int(1)]);
    }

    #[test]
    fn intersection_matrices() {
        let rows = |m: SquareMatrix| m.rows().map(|r| r.to_vec()).collect::<Vec<_>>();
        assert_eq!(rows(two_nodes().intersection_matrix()), vec![vec![int(-2), int(2)], vec![int(2), int(-2)]]);
        assert_eq!(rows(one_node().intersection_matrix()), vec![vec![int(-1), int(1)], vec![int(1), int(-1)]]);
        assert_eq!(rows(wedge_fiber(3, 0).intersection_matrix()), vec![vec![zero()]]);
        let f = two_nodes();
        assert_eq!(f.intersection_matrix(), calculus::laplacian_matrix(f.graph()).negated());
    }

    #[test]
    fn pairing_examples() {
        let analysis = two_nodes().analyze().unwrap();
        assert_eq!(analysis.pairing_correction(&vv(&[0, 0]), &vv(&[0, 0])).unwrap(), zero());
        assert_eq!(analysis.pairing_correction(&vv(&[1, 0]), &vv(&[1, 0])).unwrap(), ratio(1, 24));
        assert_eq!(analysis.pairing_correction(&vv(&[1, 0]), &vv(&[0, 1])).unwrap(), ratio(-1, 12));
        assert!(analysis.pairing_correction(&vv(&[1]), &vv(&[0, 1])).is_err());
    }

    #[test]
    fn vertical_intersection_examples() {
        let analysis = two_nodes().analyze().unwrap();
        assert_eq!(
            analysis.measure(),
            &Measure::new(analysis.fiber.graph(), vec![ratio(1, 2), zero()], vec![ratio(1, 4), ratio(1, 4)]).unwrap()
        );
        assert_eq!(analysis.vertical_admissible_intersection(&vv(&[1, 0])).unwrap().0, vec![ratio(3, 4), ratio(1, 4)]);
        assert_eq!(analysis.vertical_admissible_intersection(&vv(&[0, 0])).unwrap().0, vec![zero(), zero()]);
        let wedge = wedge_fiber(2, 0).analyze().unwrap();
        assert_eq!(wedge.vertical_admissible_intersection(&vv(&[1])).unwrap().0, vec![int(1)]);
    }

    #[test]
    fn local_terms() {
        assert_eq!(wedge_fiber(2, 0).analyze().unwrap().local_term().unwrap(), ratio(-1, 3));
        assert_eq!(wedge_fiber(1, 1).analyze().unwrap().local_term().unwrap(), ratio(-1, 6));
        assert_eq!(two_nodes().analyze().unwrap().local_term().unwrap(), ratio(-1, 3));
        let elliptic = wedge_fiber(1, 0).analyze().unwrap();
        assert!(matches!(elliptic.local_term(), Err(Error::GenusTooSmall { .. })));
    }

    #[test]
    fn corollary_a2_on_circle() {
        let l = ratio(3, 2);
        let graph = MetrizedGraph::build(&["O"], &[EdgeSpec::new("c", "O", "O", l.clone())]).unwrap();
        let d = VertexDivisor::point(&graph, VertexId(0), int(1));
        let mu = Measure::lebesgue(&graph, EdgeId(0)).scaled(&l.recip());
        let phi = PiecewiseQuadratic::new(&graph, vec![Quadratic::new(l.recip() / int(2), ratio(-1, 2), zero())]).unwrap();
        let rows = corollary_a2_check(&graph, &d, &mu, &phi).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].left.clone(), rows[0].right.clone()), (int(1), int(1)));
    }

    #[test]
    fn corollary_a2_degree_zero_and_segment() {
        let graph = MetrizedGraph::build(&["a", "b"], &[EdgeSpec::new("e", "a", "b", ratio(5, 3))]).unwrap();
        let mu = canonical_measure(&graph).unwrap();
        let constant = PiecewiseQuadratic::constant(&graph, int(4));
        let rows = corollary_a2_check(&graph, &VertexDivisor::zero(&graph), &mu, &constant).unwrap();
        assert!(rows.iter().all(|r| r.holds() && r.left.is_zero()));

        let d = VertexDivisor::point(&graph, VertexId(0), int(2));
        let target = Measure::dirac(&graph, VertexId(0)).scaled(&int(2)).minus(&mu.scaled(&int(2)));
        let g = solve_poisson(&graph, &target, VertexId(0)).unwrap();
        let rows = corollary_a2_check(&graph, &d, &mu, &g).unwrap();
        assert!(rows.iter().all(VertexBalance::holds));

        let wrong = PiecewiseQuadratic::constant(&graph, int(1));
        assert!(matches!(corollary_a2_check(&graph, &d, &mu, &wrong), Err(Error::HypothesisViolated(_))));
        assert!(matches!(
            corollary_a2_check(&graph, &d, &mu.scaled(&int(2)), &g),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
