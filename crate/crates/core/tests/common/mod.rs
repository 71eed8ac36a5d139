//! Random instance generators shared by the integration tests.

#![allow(dead_code)]

pub mod discrete;

use metrized::calculus::Quadratic;
use metrized::fiber::FiberGraph;
use metrized::rational::{int, ratio};
use metrized::{EdgeSpec, MetrizedGraph, PiecewiseQuadratic, Rational, VertexDivisor};
use num_traits::Zero;
use rand::Rng;

pub fn small_rational<R: Rng>(rng: &mut R, max_numer: i64, max_denom: i64) -> Rational {
    ratio(rng.gen_range(1..=max_numer), rng.gen_range(1..=max_denom))
}

/// Connected graph on `1..=max_vertices` vertices with at most `max_edges`
/// edges: a random spanning tree plus random extra edges (loops and parallel
/// edges included). Lengths `p/q` with `p ≤ 6`, `q ≤ 4`.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> MetrizedGraph {
    let n = rng.gen_range(1..=max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        edges.push((parent, i));
    }
    let room = max_edges - edges.len();
    let min_extra = usize::from(n == 1);
    let extra = rng.gen_range(min_extra..=room.min(n + 3).max(min_extra));
    for _ in 0..extra {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let specs: Vec<EdgeSpec> = edges
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| {
            let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            EdgeSpec::new(format!("e{k}"), names[a].clone(), names[b].clone(), small_rational(rng, 6, 4))
        })
        .collect();
    MetrizedGraph::build(&names, &specs).expect("generator builds connected graphs")
}

/// Divisor with coefficients in `[-3, 4]` over denominators up to 3, avoiding
/// degree -2.
pub fn random_divisor<R: Rng>(rng: &mut R, graph: &MetrizedGraph) -> VertexDivisor {
    loop {
        let coefficients: Vec<Rational> = graph
            .vertex_ids()
            .map(|_| {
                if rng.gen_bool(0.4) {
                    Rational::zero()
                } else {
                    ratio(rng.gen_range(-3..=4), rng.gen_range(1..=3))
                }
            })
            .collect();
        let divisor = VertexDivisor::from_coefficients(graph, coefficients).unwrap();
        if divisor.degree() != int(-2) {
            return divisor;
        }
    }
}

/// Continuous piecewise quadratic with random vertex values and curvatures.
pub fn random_function<R: Rng>(rng: &mut R, graph: &MetrizedGraph) -> PiecewiseQuadratic {
    let values: Vec<Rational> = graph
        .vertex_ids()
        .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
        .collect();
    let pieces = graph
        .edges()
        .iter()
        .map(|e| {
            let c2 = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4));
            let (a, b) = (&values[e.tail.0], &values[e.head.0]);
            let c1 = (b - a - &c2 * &e.length * &e.length) / &e.length;
            Quadratic::new(c2, c1, a.clone())
        })
        .collect();
    PiecewiseQuadratic::new(graph, pieces).unwrap()
}

/// Fiber dual graph with up to `max_components` components and `max_nodes`
/// nodes, component genera in `0..=2`, curve genus at least 1.
pub fn random_fiber<R: Rng>(rng: &mut R, max_components: usize, max_nodes: usize) -> FiberGraph {
    loop {
        let n = rng.gen_range(1..=max_components);
        let mut nodes = Vec::new();
        for i in 1..n {
            nodes.push((rng.gen_range(0..i), i));
        }
        let min_extra = usize::from(n == 1);
        let extra = rng.gen_range(min_extra..=(max_nodes - nodes.len()).max(min_extra));
        for _ in 0..extra {
            nodes.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
        let components: Vec<(String, u32)> = (0..n).map(|i| (format!("C{i}"), rng.gen_range(0..=2))).collect();
        let node_triples: Vec<(String, String, String)> = nodes
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| (format!("p{k}"), components[a].0.clone(), components[b].0.clone()))
            .collect();
        if let Ok(fiber) = FiberGraph::from_components(&components, &node_triples) {
            return fiber;
        }
    }
}
