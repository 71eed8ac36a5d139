//! Metrized graphs with rational edge lengths.
//!
//! A [`MetrizedGraph`] is a finite connected multigraph (loops and parallel edges
//! allowed) whose edges carry positive rational lengths. Edge orientation is
//! bookkeeping only: it fixes the arc-length coordinate `t ∈ [0, l(e)]` measured
//! from the tail.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Edge description by vertex names, as read from input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub length: Rational,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, tail: impl Into<String>, head: impl Into<String>, length: Rational) -> Self {
        EdgeSpec {
            id: id.into(),
            tail: tail.into(),
            head: head.into(),
            length,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: VertexId,
    pub head: VertexId,
    pub length: Rational,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetrizedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// A point of the graph: a vertex, or an interior point of an edge at
/// `0 < offset < length` from the tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointLocation {
    Vertex(VertexId),
    Edge { edge: EdgeId, offset: Rational },
}

impl MetrizedGraph {
    /// Validates and builds a graph. Vertex and edge order is taken from the input.
    pub fn build<S: AsRef<str>>(vertices: &[S], edges: &[EdgeSpec]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(vertices.len());
        for name in vertices {
            let name = name.as_ref();
            if index.insert(name.to_string(), VertexId(names.len())).is_some() {
                return Err(Error::DuplicateId(name.to_string()));
            }
            names.push(name.to_string());
        }

        let mut seen_edges = HashSet::new();
        let mut built = Vec::with_capacity(edges.len());
        for spec in edges {
            if !seen_edges.insert(spec.id.clone()) {
                return Err(Error::DuplicateId(spec.id.clone()));
            }
            let tail = *index
                .get(&spec.tail)
                .ok_or_else(|| Error::UnknownVertex(spec.tail.clone()))?;
            let head = *index
                .get(&spec.head)
                .ok_or_else(|| Error::UnknownVertex(spec.head.clone()))?;
            if !spec.length.is_positive() {
                return Err(Error::NonpositiveLength {
                    edge: spec.id.clone(),
                    length: spec.length.clone(),
                });
            }
            built.push(Edge {
                id: spec.id.clone(),
                tail,
                head,
                length: spec.length.clone(),
            });
        }

        let graph = MetrizedGraph {
            vertices: names,
            edges: built,
        };
        if graph.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if !graph.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        if graph.edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Ok(graph)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        for edge in &self.edges {
            adjacency[edge.tail.0].push(edge.head.0);
            adjacency[edge.head.0].push(edge.tail.0);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|n| n == name).map(VertexId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.id == name).map(EdgeId)
    }

    pub fn length(&self, e: EdgeId) -> &Rational {
        &self.edges[e.0].length
    }

    pub fn total_length(&self) -> Rational {
        self.edges
            .iter()
            .fold(Rational::zero(), |acc, e| acc + &e.length)
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    /// Number of edge branches at `v`; a loop counts twice.
    pub fn valence(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    pub fn loop_count(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|e| e.is_loop() && e.tail == v)
            .count()
    }

    /// Resolves `(edge, offset)` to a point, mapping offsets 0 and `l(e)` to the
    /// endpoint vertices.
    pub fn point_on_edge(&self, e: EdgeId, offset: Rational) -> Result<PointLocation> {
        let edge = self.edges.get(e.0).ok_or_else(|| Error::UnknownEdge(e.to_string()))?;
        if offset.is_negative() || offset > edge.length {
            return Err(Error::OffsetOutOfRange {
                edge: edge.id.clone(),
                offset,
                length: edge.length.clone(),
            });
        }
        if offset.is_zero() {
            Ok(PointLocation::Vertex(edge.tail))
        } else if offset == edge.length {
            Ok(PointLocation::Vertex(edge.head))
        } else {
            Ok(PointLocation::Edge { edge: e, offset })
        }
    }

    /// Every length multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::NonpositiveLength {
                edge: "<scale>".into(),
                length: factor.clone(),
            });
        }
        let mut scaled = self.clone();
        for edge in &mut scaled.edges {
            edge.length *= factor;
        }
        Ok(scaled)
    }

    /// Splits the edge containing an interior point into two edges meeting at a new
    /// vertex.
    pub fn subdivide(&self, point: &PointLocation) -> Result<(Refinement, VertexId)> {
        if let PointLocation::Vertex(_) = point {
            return Err(Error::PointIsVertex);
        }
        let refinement = self.refine(std::slice::from_ref(point))?;
        let vertex = refinement.points[0];
        Ok((refinement, vertex))
    }

    /// Inserts a vertex at every listed interior point, all at once.
    ///
    /// Existing vertices keep their ids and new vertices are appended. An edge cut
    /// into pieces keeps its id for the piece at its tail; the remaining pieces are
    /// appended after all original edges.
    pub fn refine(&self, points: &[PointLocation]) -> Result<Refinement> {
        let mut cuts: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for point in points {
            match point {
                PointLocation::Vertex(v) => {
                    if v.0 >= self.vertices.len() {
                        return Err(Error::UnknownVertex(v.to_string()));
                    }
                }
                PointLocation::Edge { edge, offset } => {
                    let e = self
                        .edges
                        .get(edge.0)
                        .ok_or_else(|| Error::UnknownEdge(edge.to_string()))?;
                    if !offset.is_positive() || offset >= &e.length {
                        return Err(Error::OffsetOutOfRange {
                            edge: e.id.clone(),
                            offset: offset.clone(),
                            length: e.length.clone(),
                        });
                    }
                    cuts.entry(edge.0).or_default().push(offset.clone());
                }
            }
        }
        for offsets in cuts.values_mut() {
            offsets.sort();
            offsets.dedup();
        }

        let mut vertex_names = self.vertices.clone();
        let mut taken: HashSet<String> = vertex_names.iter().cloned().collect();
        let mut edge_taken: HashSet<String> = self.edges.iter().map(|e| e.id.clone()).collect();
        let mut edges = self.edges.clone();
        let mut origin: Vec<(EdgeId, Rational)> =
            (0..self.edges.len()).map(|i| (EdgeId(i), Rational::zero())).collect();
        let mut appended = Vec::new();
        let mut new_vertex: HashMap<(usize, Rational), VertexId> = HashMap::new();

        for (&e, offsets) in &cuts {
            let parent = &self.edges[e];
            let mut ids = Vec::with_capacity(offsets.len());
            for offset in offsets {
                let name = fresh_name(&mut taken, format!("{}@{}", parent.id, rational::render(offset)));
                let v = VertexId(vertex_names.len());
                vertex_names.push(name);
                new_vertex.insert((e, offset.clone()), v);
                ids.push(v);
            }
            edges[e].head = ids[0];
            edges[e].length = offsets[0].clone();
            for (k, start) in offsets.iter().enumerate() {
                let tail = ids[k];
                let (head, end) = match offsets.get(k + 1) {
                    Some(next) => (ids[k + 1], next.clone()),
                    None => (parent.head, parent.length.clone()),
                };
                let id = fresh_name(&mut edge_taken, format!("{}.{}", parent.id, k + 1));
                appended.push((
                    Edge {
                        id,
                        tail,
                        head,
                        length: &end - start,
                    },
                    (EdgeId(e), start.clone()),
                ));
            }
        }
        for (edge, from) in appended {
            edges.push(edge);
            origin.push(from);
        }

        let graph = MetrizedGraph {
            vertices: vertex_names,
            edges,
        };
        let resolved = points
            .iter()
            .map(|p| match p {
                PointLocation::Vertex(v) => *v,
                PointLocation::Edge { edge, offset } => new_vertex[&(edge.0, offset.clone())],
            })
            .collect();
        Ok(Refinement {
            graph,
            points: resolved,
            origin,
            original_vertices: self.vertices.len(),
        })
    }
}

fn fresh_name(taken: &mut HashSet<String>, mut name: String) -> String {
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    name
}

/// Result of [`MetrizedGraph::refine`].
#[derive(Clone, Debug)]
pub struct Refinement {
    pub graph: MetrizedGraph,
    /// Vertex of the refined graph for each requested point, in request order.
    pub points: Vec<VertexId>,
    /// For each edge of the refined graph: the original edge it lies in and the
    /// offset of its tail within that edge.
    pub origin: Vec<(EdgeId, Rational)>,
    pub original_vertices: usize,
}

/// A divisor supported on the vertex set, with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexDivisor {
    coefficients: Vec<Rational>,
}

impl VertexDivisor {
    pub fn zero(graph: &MetrizedGraph) -> Self {
        VertexDivisor {
            coefficients: vec![Rational::zero(); graph.vertex_count()],
        }
    }

    pub fn from_coefficients(graph: &MetrizedGraph, coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.vertex_count(),
                found: coefficients.len(),
            });
        }
        Ok(VertexDivisor { coefficients })
    }

    /// Absent vertices get coefficient 0; repeated names accumulate.
    pub fn from_named<S: AsRef<str>>(graph: &MetrizedGraph, terms: &[(S, Rational)]) -> Result<Self> {
        let mut divisor = Self::zero(graph);
        for (name, coefficient) in terms {
            let v = graph
                .vertex_by_name(name.as_ref())
                .ok_or_else(|| Error::UnknownVertex(name.as_ref().to_string()))?;
            divisor.coefficients[v.0] += coefficient;
        }
        Ok(divisor)
    }

    pub fn point(graph: &MetrizedGraph, v: VertexId, coefficient: Rational) -> Self {
        let mut divisor = Self::zero(graph);
        divisor.coefficients[v.0] = coefficient;
        divisor
    }

    pub fn coefficient(&self, v: VertexId) -> &Rational {
        &self.coefficients[v.0]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn degree(&self) -> Rational {
        self.coefficients
            .iter()
            .fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Same divisor on a refined graph (new vertices get 0).
    pub fn extend_to(&self, refined: &MetrizedGraph) -> Self {
        let mut coefficients = self.coefficients.clone();
        coefficients.resize(refined.vertex_count(), Rational::zero());
        VertexDivisor { coefficients }
    }
}
