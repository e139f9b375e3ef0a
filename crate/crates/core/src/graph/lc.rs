use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::field::FieldMatrix;

/// Weighted local complementation at `a`: `Γ'_bc = Γ_bc + λ Γ_ab Γ_ac` for
/// distinct `b, c ≠ a`. At `d = 2, λ = 1` this toggles edges inside `N_a`.
pub fn local_complement(g: &WeightedGraph, a: usize, lambda: u32) -> Result<WeightedGraph> {
    let n = g.n();
    let d = g.dim();
    if a >= n {
        return Err(Error::VertexOutOfRange { vertex: a, n });
    }
    let lambda = lambda % d.get();
    if lambda == 0 {
        return Err(Error::InvalidArgument("lambda must be nonzero mod d".into()));
    }
    let mut gamma: FieldMatrix = g.gamma().clone();
    for b in 0..n {
        for c in 0..n {
            if b == c || b == a || c == a {
                continue;
            }
            let shift = d.mul(lambda, d.mul(g.weight(a, b), g.weight(a, c)));
            gamma.set(b, c, d.add(g.weight(b, c), shift));
        }
    }
    WeightedGraph::from_gamma(gamma)
}
