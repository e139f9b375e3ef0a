use std::collections::BTreeMap;

use super::{Coloring, WeightedGraph};
use crate::error::{Error, Result};
use crate::field::FieldMatrix;

/// Off-diagonal blocks `A_{c_i,c_k}` (`k < i`) of Γ grouped by color class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    ordering: Vec<usize>,
    class_sizes: Vec<usize>,
    blocks: BTreeMap<(usize, usize), FieldMatrix>,
}

impl BlockDecomposition {
    /// Vertex permutation listing `c_1..c_χ` in order.
    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// `A_{c_i,c_k}` of shape `n_i × n_k`, for `k < i` (0-based class indices).
    pub fn block(&self, i: usize, k: usize) -> Option<&FieldMatrix> {
        self.blocks.get(&(i, k))
    }

    pub fn blocks(&self) -> &BTreeMap<(usize, usize), FieldMatrix> {
        &self.blocks
    }

    /// Rebuilds Γ in the original vertex labelling.
    pub fn reassemble(&self, template: &FieldMatrix) -> FieldMatrix {
        let n = self.ordering.len();
        let mut out = FieldMatrix::zeros(template.dim(), n, n);
        let offsets: Vec<usize> = self
            .class_sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        for (&(i, k), block) in &self.blocks {
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    let u = self.ordering[offsets[i] + r];
                    let v = self.ordering[offsets[k] + c];
                    out.set(u, v, block.get(r, c));
                    out.set(v, u, block.get(r, c));
                }
            }
        }
        out
    }
}

/// Splits Γ into the blocks between color classes.
pub fn block_decompose(g: &WeightedGraph, c: &Coloring) -> Result<BlockDecomposition> {
    if c.assignment().len() != g.n() {
        return Err(Error::DimensionMismatch("coloring does not match graph".into()));
    }
    for e in g.edges() {
        if c.assignment()[e.u] == c.assignment()[e.v] {
            return Err(Error::ImproperColoring(e.u.min(e.v), e.u.max(e.v)));
        }
    }
    let classes = c.classes();
    let mut blocks = BTreeMap::new();
    for i in 0..classes.len() {
        for k in 0..i {
            blocks.insert((i, k), g.gamma().select(&classes[i], &classes[k]));
        }
    }
    Ok(BlockDecomposition {
        ordering: classes.concat(),
        class_sizes: c.class_sizes(),
        blocks,
    })
}
