//! Weighted graphs over F_d and the structures derived from them.

mod blocks;
mod catalog;
mod coloring;
mod kuniform;
mod lc;
mod special;

pub use blocks::{block_decompose, BlockDecomposition};
pub use catalog::connected_catalog;
pub use coloring::{chromatic_coloring, Coloring, MAX_EXACT_VERTICES};
pub use kuniform::{all_square_minors_nonsingular, kuniform_adjacency_check, KUniformReport, MAX_MINOR_DIM};
pub use lc::local_complement;
pub use special::{
    detect_special_class, BcComponent, SpecialClassStructure, SpecialDetection, SpecialRejection,
};

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldMatrix, PrimeDimension};

/// An undirected edge `{u, v}` with nonzero weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: u32,
}

impl Edge {
    /// The endpoint that is not `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Symmetric adjacency matrix with zero diagonal over F_d.
///
/// Edges remember the order in which they were declared; rendering of closed
/// forms lists neighbor terms in that order. Equality ignores it.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: usize,
    dim: PrimeDimension,
    gamma: FieldMatrix,
    edges: Vec<Edge>,
    hint: Option<Vec<u32>>,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.dim == other.dim && self.gamma == other.gamma
    }
}

impl Eq for WeightedGraph {}

impl WeightedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(dim: PrimeDimension, n: usize) -> Self {
        Self { n, dim, gamma: FieldMatrix::zeros(dim, n, n), edges: Vec::new(), hint: None }
    }

    /// Builds a graph from `(u, v, weight)` triples. Weights are reduced mod d;
    /// repeated edges must agree.
    pub fn from_edges(dim: PrimeDimension, n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = Self::empty(dim, n);
        for &(u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Unit-weight graph from an edge list.
    pub fn unit(dim: PrimeDimension, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let triples: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        Self::from_edges(dim, n, &triples)
    }

    /// Builds from a symmetric matrix; edges are listed in row-major order.
    pub fn from_gamma(gamma: FieldMatrix) -> Result<Self> {
        let n = gamma.rows();
        if gamma.cols() != n {
            return Err(Error::DimensionMismatch(format!("{}x{} adjacency", n, gamma.cols())));
        }
        let mut g = Self::empty(gamma.dim(), n);
        for u in 0..n {
            if gamma.get(u, u) != 0 {
                return Err(Error::SelfLoop(u));
            }
            for v in u + 1..n {
                if gamma.get(u, v) != gamma.get(v, u) {
                    return Err(Error::ConflictingEdge {
                        u,
                        v,
                        first: gamma.get(u, v),
                        second: gamma.get(v, u),
                    });
                }
                if gamma.get(u, v) != 0 {
                    g.add_edge(u, v, gamma.get(u, v))?;
                }
            }
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize, w: u32) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let w = w % self.dim.get();
        if w == 0 {
            return Err(Error::ZeroWeight { u, v });
        }
        let existing = self.gamma.get(u, v);
        if existing != 0 {
            if existing != w {
                return Err(Error::ConflictingEdge { u, v, first: existing, second: w });
            }
            return Ok(());
        }
        self.gamma.set(u, v, w);
        self.gamma.set(v, u, w);
        self.edges.push(Edge { u, v, weight: w });
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> PrimeDimension {
        self.dim
    }

    pub fn d(&self) -> u32 {
        self.dim.get()
    }

    pub fn gamma(&self) -> &FieldMatrix {
        &self.gamma
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> u32 {
        self.gamma.get(u, v)
    }

    /// Edges in declaration order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges with `u < v`, sorted.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge { u: e.u.min(e.v), v: e.u.max(e.v), weight: e.weight })
            .collect();
        out.sort_by_key(|e| (e.u, e.v));
        out
    }

    /// Neighbors of `v` with weights, in edge declaration order.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, u32)> {
        self.edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .map(|e| (e.other(v), e.weight))
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.gamma.get(v, u) != 0).count()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.gamma.get(u, v) != 0
    }

    /// Color labels from `color` lines, if every vertex has one.
    pub fn color_hint(&self) -> Option<&[u32]> {
        self.hint.as_deref()
    }

    pub fn with_color_hint(mut self, hint: Option<Vec<u32>>) -> Result<Self> {
        if let Some(h) = &hint {
            if h.len() != self.n {
                return Err(Error::InvalidColoring(format!(
                    "hint has {} labels for {} vertices",
                    h.len(),
                    self.n
                )));
            }
        }
        self.hint = hint;
        Ok(self)
    }

    /// Same adjacency at another prime dimension, weights reduced mod the new d.
    pub fn with_dimension(&self, dim: PrimeDimension) -> Result<Self> {
        let mut g = Self::empty(dim, self.n);
        for e in &self.edges {
            g.add_edge(e.u, e.v, e.weight)?;
        }
        g.hint = self.hint.clone();
        Ok(g)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        let mut g = Self::empty(self.dim, self.n);
        for e in &self.edges {
            g.add_edge(perm[e.u], perm[e.v], e.weight)?;
        }
        Ok(g)
    }

    /// Whether the support graph is connected (the empty graph counts as connected).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..self.n {
                if !seen[u] && self.is_adjacent(v, u) {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Parses the line-oriented graph file format:
    ///
    /// ```text
    /// # comment
    /// dim 3
    /// vertices 2
    /// edge 0 1 2
    /// color 0 0
    /// color 1 1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut dim: Option<PrimeDimension> = None;
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize, usize, u64)> = Vec::new();
        let mut colors: Vec<(usize, usize, u32)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let num = |i: usize| -> Result<u64> {
                let tok = tokens.get(i).ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: format!("`{}` expects more arguments", tokens[0]),
                })?;
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("`{tok}` is not a nonnegative integer"),
                })
            };
            let arity = |k: usize| -> Result<()> {
                if tokens.len() != k + 1 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("`{}` takes {k} arguments", tokens[0]),
                    });
                }
                Ok(())
            };
            match tokens[0] {
                "dim" => {
                    arity(1)?;
                    if dim.is_some() {
                        return Err(Error::Parse { line: line_no, msg: "duplicate `dim`".into() });
                    }
                    let d = num(1)?;
                    dim = Some(PrimeDimension::new(u32::try_from(d).unwrap_or(u32::MAX))?);
                }
                "vertices" => {
                    arity(1)?;
                    if n.is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "duplicate `vertices`".into(),
                        });
                    }
                    n = Some(num(1)? as usize);
                }
                "edge" => {
                    arity(3)?;
                    edges.push((line_no, num(1)? as usize, num(2)? as usize, num(3)?));
                }
                "color" => {
                    arity(2)?;
                    colors.push((line_no, num(1)? as usize, num(2)? as u32));
                }
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("unknown directive `{other}`"),
                    })
                }
            }
        }

        let dim = dim.ok_or(Error::Parse { line: 0, msg: "missing `dim` line".into() })?;
        let n = n.ok_or(Error::Parse { line: 0, msg: "missing `vertices` line".into() })?;
        let mut g = Self::empty(dim, n);
        for (_, u, v, w) in edges {
            g.add_edge(u, v, (w % dim.get() as u64) as u32)?;
        }
        if !colors.is_empty() {
            let mut hint: Vec<Option<u32>> = vec![None; n];
            for (line, v, c) in colors {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if hint[v].replace(c).is_some_and(|old| old != c) {
                    return Err(Error::Parse { line, msg: format!("vertex {v} colored twice") });
                }
            }
            let hint: Option<Vec<u32>> = hint.into_iter().collect();
            let hint = hint.ok_or_else(|| {
                Error::InvalidColoring("color hint must cover every vertex".into())
            })?;
            g.hint = Some(hint);
        }
        Ok(g)
    }

    /// Serializes in the graph file format with edges in sorted order.
    pub fn to_file_string(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "dim {}", self.dim);
        let _ = writeln!(out, "vertices {}", self.n);
        for e in self.sorted_edges() {
            let _ = writeln!(out, "edge {} {} {}", e.u, e.v, e.weight);
        }
        if let Some(h) = &self.hint {
            for (v, c) in h.iter().enumerate() {
                let _ = writeln!(out, "color {v} {c}");
            }
        }
        out
    }
}
