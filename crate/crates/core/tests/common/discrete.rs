//! Floating-point brute force: every edge becomes a chain of `k` equal resistors
//! and every quantity is recomputed on that finite network.
//!
//! Shares nothing with the exact solver beyond reading the graph: resistances,
//! the admissible measure (lumped onto chain nodes), and the Green function all
//! come from a sparse LDLᵀ factorization of the grounded network Laplacian.

use std::collections::BTreeMap;

use metrized::rational::to_f64;
use metrized::MetrizedGraph;

pub struct Network {
    node_count: usize,
    vertex_count: usize,
    /// Node sequence of each edge, endpoints included.
    chains: Vec<Vec<usize>>,
    /// Segment length of each edge.
    steps: Vec<f64>,
    lengths: Vec<f64>,
    conductances: Vec<BTreeMap<usize, f64>>,
}

impl Network {
    pub fn new(graph: &MetrizedGraph, k: usize) -> Self {
        assert!(k >= 1);
        let vertex_count = graph.vertex_count();
        let mut node_count = vertex_count;
        let mut chains = Vec::new();
        let mut steps = Vec::new();
        let mut lengths = Vec::new();
        for edge in graph.edges() {
            let mut chain = vec![edge.tail.0];
            for _ in 1..k {
                chain.push(node_count);
                node_count += 1;
            }
            chain.push(edge.head.0);
            let length = to_f64(&edge.length);
            chains.push(chain);
            steps.push(length / k as f64);
            lengths.push(length);
        }
        let mut conductances = vec![BTreeMap::new(); node_count];
        for (chain, step) in chains.iter().zip(&steps) {
            for pair in chain.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                if a == b {
                    continue;
                }
                *conductances[a].entry(b).or_insert(0.0) += 1.0 / step;
                *conductances[b].entry(a).or_insert(0.0) += 1.0 / step;
            }
        }
        Network {
            node_count,
            vertex_count,
            chains,
            steps,
            lengths,
            conductances,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    fn factor(&self) -> Factor {
        // chain interiors first keeps fill to one entry per eliminated node
        let order: Vec<usize> = (self.vertex_count..self.node_count).chain(1..self.vertex_count).collect();
        let mut position = vec![usize::MAX; self.node_count];
        for (p, &node) in order.iter().enumerate() {
            position[node] = p;
        }
        let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); order.len()];
        for (p, &node) in order.iter().enumerate() {
            let mut diagonal = 0.0;
            for (&other, &c) in &self.conductances[node] {
                diagonal += c;
                if position[other] != usize::MAX {
                    rows[p].insert(position[other], -c);
                }
            }
            rows[p].insert(p, diagonal);
        }
        let mut pivots = Vec::with_capacity(order.len());
        let mut lower: Vec<Vec<(usize, f64)>> = Vec::with_capacity(order.len());
        for p in 0..order.len() {
            let pivot = rows[p][&p];
            let tail: Vec<(usize, f64)> = rows[p].range(p + 1..).map(|(&j, &v)| (j, v)).collect();
            for &(i, vi) in &tail {
                for &(j, vj) in &tail {
                    *rows[i].entry(j).or_insert(0.0) -= vi * vj / pivot;
                }
            }
            pivots.push(pivot);
            lower.push(tail.into_iter().map(|(j, v)| (j, v / pivot)).collect());
        }
        Factor {
            order,
            position,
            pivots,
            lower,
        }
    }

    fn lumped(&self, vertex_mass: &[f64], density: &[f64]) -> Vec<f64> {
        let mut mass = vec![0.0; self.node_count];
        mass[..self.vertex_count].copy_from_slice(vertex_mass);
        for ((chain, step), a) in self.chains.iter().zip(&self.steps).zip(density) {
            let last = chain.len() - 1;
            for (i, &node) in chain.iter().enumerate() {
                let share = if i == 0 || i == last { 0.5 } else { 1.0 };
                mass[node] += a * step * share;
            }
        }
        mass
    }
}

struct Factor {
    order: Vec<usize>,
    position: Vec<usize>,
    pivots: Vec<f64>,
    lower: Vec<Vec<(usize, f64)>>,
}

impl Factor {
    /// Potentials with node 0 grounded.
    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let mut y: Vec<f64> = self.order.iter().map(|&node| rhs[node]).collect();
        for p in 0..y.len() {
            let yp = y[p];
            for &(j, l) in &self.lower[p] {
                y[j] -= l * yp;
            }
        }
        for (value, pivot) in y.iter_mut().zip(&self.pivots) {
            *value /= pivot;
        }
        for p in (0..y.len()).rev() {
            let mut acc = y[p];
            for &(j, l) in &self.lower[p] {
                acc -= l * y[j];
            }
            y[p] = acc;
        }
        let mut out = vec![0.0; rhs.len()];
        for (node, &p) in self.position.iter().enumerate() {
            if p != usize::MAX {
                out[node] = y[p];
            }
        }
        out
    }
}

/// Vertex Green values `g(v, w)` of the divisor with the given coefficients,
/// computed on the `k`-fold discretization.
pub fn discrete_green(graph: &MetrizedGraph, divisor: &[f64], k: usize) -> Vec<Vec<f64>> {
    let network = Network::new(graph, k);
    let factor = network.factor();
    let n = network.node_count;
    let v = network.vertex_count;

    // canonical measure: 1 - valence/2 at vertices, (l - r)/l² on edges
    let mut vertex_mass: Vec<f64> = graph.vertex_ids().map(|x| 1.0 - graph.valence(x) as f64 / 2.0).collect();
    let density: Vec<f64> = network
        .chains
        .iter()
        .zip(&network.lengths)
        .map(|(chain, &l)| {
            let (a, b) = (chain[0], chain[chain.len() - 1]);
            let r = if a == b {
                0.0
            } else {
                let mut current = vec![0.0; n];
                current[a] = 1.0;
                current[b] = -1.0;
                let u = factor.solve(&current);
                u[a] - u[b]
            };
            (l - r) / (l * l)
        })
        .collect();

    let degree: f64 = divisor.iter().sum();
    for (m, d) in vertex_mass.iter_mut().zip(divisor) {
        *m = (d + 2.0 * *m) / (degree + 2.0);
    }
    let density: Vec<f64> = density.iter().map(|a| 2.0 * a / (degree + 2.0)).collect();
    let mu = network.lumped(&vertex_mass, &density);

    (0..v)
        .map(|x| {
            let mut rhs: Vec<f64> = mu.iter().map(|m| -m).collect();
            rhs[x] += 1.0;
            let u = factor.solve(&rhs);
            let mean: f64 = u.iter().zip(&mu).map(|(a, b)| a * b).sum();
            u[..v].iter().map(|value| value - mean).collect()
        })
        .collect()
}
