//! The line-based graph file format.
//!
//! ```text
//! # wedge of two unit circles
//! vertex O
//! edge e1 O O 1
//! edge e2 O O 1
//! divisor O 2
//! curve-genus 2
//! ```
//!
//! Vertices must be declared before they are referenced. Repeated `divisor`
//! lines for one vertex add up.

use std::fmt::{self, Write as _};

use metrized::fiber::FiberGraph;
use metrized::rational::{parse, render};
use metrized::{EdgeSpec, MetrizedGraph, Rational, VertexDivisor};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error(transparent)]
    Invalid(Box<metrized::Error>),
}

impl From<metrized::Error> for FileErrorKind {
    fn from(e: metrized::Error) -> Self {
        FileErrorKind::Invalid(Box::new(e))
    }
}

/// A parse or validation failure; `line` is 1-based, or 0 for whole-file checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct FileError {
    pub line: usize,
    #[source]
    pub kind: FileErrorKind,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: ", self.line)?;
        }
        write!(f, "{}", self.kind)
    }
}

impl FileError {
    fn at(line: usize, kind: FileErrorKind) -> Self {
        FileError { line, kind }
    }

    fn syntax(line: usize, message: impl Into<String>) -> Self {
        FileError::at(line, FileErrorKind::Syntax(message.into()))
    }
}

/// Where the divisor used by the graph commands comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorSource {
    /// `divisor` lines.
    Explicit,
    /// The canonical divisor of the fiber described by `component` lines.
    Canonical,
    /// Nothing given: `D = 0`.
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    /// Accumulated coefficients in order of first appearance.
    pub divisor: Vec<(String, Rational)>,
    /// Component genus per vertex, in order of appearance.
    pub component_genus: Vec<(String, u32)>,
    pub curve_genus: Option<u32>,
}

fn expect_args(line: usize, directive: &str, args: &[&str], count: usize) -> Result<(), FileError> {
    if args.len() != count {
        return Err(FileError::syntax(
            line,
            format!("`{directive}` takes {count} argument(s), found {}", args.len()),
        ));
    }
    Ok(())
}

fn rational(line: usize, text: &str) -> Result<Rational, FileError> {
    parse(text).ok_or_else(|| FileError::syntax(line, format!("`{text}` is not a rational p or p/q")))
}

fn unsigned(line: usize, text: &str) -> Result<u32, FileError> {
    text.parse()
        .map_err(|_| FileError::syntax(line, format!("`{text}` is not a nonnegative integer")))
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        let mut file = GraphFile {
            vertices: Vec::new(),
            edges: Vec::new(),
            divisor: Vec::new(),
            component_genus: Vec::new(),
            curve_genus: None,
        };
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or_default();
            let words: Vec<&str> = content.split_whitespace().collect();
            let Some((&directive, args)) = words.split_first() else {
                continue;
            };
            let known = |name: &str| -> Result<(), FileError> {
                if file.vertices.iter().any(|v| v == name) {
                    Ok(())
                } else {
                    Err(FileError::at(line, FileErrorKind::UnknownVertex(name.to_string())))
                }
            };
            match directive {
                "vertex" => {
                    expect_args(line, directive, args, 1)?;
                    if file.vertices.iter().any(|v| v == args[0]) {
                        return Err(FileError::at(line, FileErrorKind::DuplicateId(args[0].to_string())));
                    }
                    file.vertices.push(args[0].to_string());
                }
                "edge" => {
                    expect_args(line, directive, args, 4)?;
                    known(args[1])?;
                    known(args[2])?;
                    if file.edges.iter().any(|e| e.id == args[0]) {
                        return Err(FileError::at(line, FileErrorKind::DuplicateId(args[0].to_string())));
                    }
                    let length = rational(line, args[3])?;
                    if length <= Rational::zero() {
                        return Err(FileError::at(
                            line,
                            metrized::Error::NonpositiveLength {
                                edge: args[0].to_string(),
                                length,
                            }
                            .into(),
                        ));
                    }
                    file.edges.push(EdgeSpec::new(args[0], args[1], args[2], length));
                }
                "divisor" => {
                    expect_args(line, directive, args, 2)?;
                    known(args[0])?;
                    let coefficient = rational(line, args[1])?;
                    match file.divisor.iter_mut().find(|(v, _)| v == args[0]) {
                        Some((_, c)) => *c += coefficient,
                        None => file.divisor.push((args[0].to_string(), coefficient)),
                    }
                }
                "component" => {
                    expect_args(line, directive, args, 2)?;
                    known(args[0])?;
                    let genus = args[1]
                        .strip_prefix("genus=")
                        .ok_or_else(|| FileError::syntax(line, "expected `genus=<int>`"))?;
                    if file.component_genus.iter().any(|(v, _)| v == args[0]) {
                        return Err(FileError::at(line, FileErrorKind::DuplicateId(args[0].to_string())));
                    }
                    file.component_genus.push((args[0].to_string(), unsigned(line, genus)?));
                }
                "curve-genus" => {
                    expect_args(line, directive, args, 1)?;
                    if file.curve_genus.is_some() {
                        return Err(FileError::syntax(line, "`curve-genus` given twice"));
                    }
                    file.curve_genus = Some(unsigned(line, args[0])?);
                }
                other => return Err(FileError::syntax(line, format!("unknown directive `{other}`"))),
            }
        }
        Ok(file)
    }

    /// Canonical text: vertices, edges, divisor, components, curve genus, one
    /// directive per line, no comments. Parsing it gives back `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            writeln!(out, "vertex {v}").unwrap();
        }
        for e in &self.edges {
            writeln!(out, "edge {} {} {} {}", e.id, e.tail, e.head, render(&e.length)).unwrap();
        }
        for (v, c) in &self.divisor {
            writeln!(out, "divisor {v} {}", render(c)).unwrap();
        }
        for (v, g) in &self.component_genus {
            writeln!(out, "component {v} genus={g}").unwrap();
        }
        if let Some(g) = self.curve_genus {
            writeln!(out, "curve-genus {g}").unwrap();
        }
        out
    }

    pub fn graph(&self) -> Result<MetrizedGraph, FileError> {
        MetrizedGraph::build(&self.vertices, &self.edges).map_err(|e| FileError::at(0, e.into()))
    }

    /// The fiber described by `component` lines, if any; vertices without one
    /// have genus 0. A `curve-genus` line must agree with the fiber's genus.
    pub fn fiber(&self, graph: &MetrizedGraph) -> Result<Option<FiberGraph>, FileError> {
        if self.component_genus.is_empty() {
            return Ok(None);
        }
        let genera = graph
            .vertex_names()
            .iter()
            .map(|name| {
                self.component_genus
                    .iter()
                    .find(|(v, _)| v == name)
                    .map_or(0, |(_, g)| *g)
            })
            .collect();
        let fiber = FiberGraph::new(graph.clone(), genera).map_err(|e| FileError::at(0, e.into()))?;
        if let Some(g) = self.curve_genus.filter(|&g| g != fiber.genus()) {
            return Err(FileError::syntax(
                0,
                format!("`curve-genus {g}` disagrees with the components, which give genus {}", fiber.genus()),
            ));
        }
        Ok(Some(fiber))
    }

    /// Explicit `divisor` lines win; otherwise `component` lines give the
    /// canonical divisor of the fiber; otherwise `D = 0`.
    pub fn divisor(&self, graph: &MetrizedGraph) -> Result<(VertexDivisor, DivisorSource), FileError> {
        if !self.divisor.is_empty() {
            let divisor = VertexDivisor::from_named(graph, &self.divisor).map_err(|e| FileError::at(0, e.into()))?;
            return Ok((divisor, DivisorSource::Explicit));
        }
        if let Some(fiber) = self.fiber(graph)? {
            let divisor = fiber.canonical_divisor().map_err(|e| FileError::at(0, e.into()))?;
            return Ok((divisor, DivisorSource::Canonical));
        }
        Ok((VertexDivisor::zero(graph), DivisorSource::Zero))
    }
}
