//! Schmidt-measure and term-count bounds from coloring data.

use std::collections::VecDeque;

use serde::Serialize;

use crate::closedform::ClosedForm;
use crate::error::{Error, Result};
use crate::graph::{Coloring, WeightedGraph};
use crate::limits::pow_u128;
use crate::subsets::combinations;

pub const MAX_OCT_VERTICES: usize = 20;

/// Bounds are exponents of `d`; `term_*` are the matching powers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtBounds {
    pub n: usize,
    pub d: u32,
    pub chi: usize,
    pub class_sizes: Vec<usize>,
    pub gamma_rank: usize,
    /// `rank(Γ)/2`.
    pub lower_rank: f64,
    /// `Σ_{j<χ} n_j` when that does not exceed `n_χ`; otherwise the
    /// second-largest class for `χ = 3`; `None` beyond that.
    pub lower_color: Option<usize>,
    /// `⌊n/2⌋` for `χ ≤ 2`, else `⌊(n+K)/2⌋`.
    pub upper: usize,
    pub odd_cycle_transversal: usize,
    pub term_lower: Option<u128>,
    /// Only for `χ = 2`.
    pub term_upper: Option<u128>,
}

impl SchmidtBounds {
    pub fn rank_bound_holds(&self) -> bool {
        self.gamma_rank <= 2 * self.upper
    }
}

fn color_condition(sizes: &[usize]) -> Option<usize> {
    let (last, rest) = sizes.split_last()?;
    let sum: usize = rest.iter().sum();
    (sum <= *last).then_some(sum)
}

pub fn schmidt_bounds(g: &WeightedGraph, c: &Coloring) -> Result<SchmidtBounds> {
    if c.assignment().len() != g.n() {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} vertices, graph has {}",
            c.assignment().len(),
            g.n()
        )));
    }
    for e in g.edges() {
        if c.assignment()[e.u] == c.assignment()[e.v] {
            return Err(Error::ImproperColoring(e.u, e.v));
        }
    }
    let n = g.n();
    let d = g.d();
    let chi = c.chi();
    let mut sizes = c.class_sizes();
    sizes.sort_unstable();
    let gamma_rank = g.gamma().rank();
    let lower_color = color_condition(&sizes).or_else(|| (chi == 3).then(|| sizes[1]));
    let k = odd_cycle_transversal(g)?;
    let upper = if chi <= 2 { n / 2 } else { (n + k) / 2 };
    Ok(SchmidtBounds {
        n,
        d,
        chi,
        class_sizes: sizes,
        gamma_rank,
        lower_rank: gamma_rank as f64 / 2.0,
        lower_color,
        upper,
        odd_cycle_transversal: k,
        term_lower: lower_color.map(|x| pow_u128(d as u64, x)),
        term_upper: (chi == 2).then(|| pow_u128(d as u64, upper)),
    })
}

fn bipartite_without(g: &WeightedGraph, removed: &[bool]) -> bool {
    let n = g.n();
    let mut side = vec![None; n];
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).into_iter().map(|(u, _)| u).collect()).collect();
    for s in 0..n {
        if removed[s] || side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].unwrap();
            for &u in &adj[v] {
                if removed[u] {
                    continue;
                }
                match side[u] {
                    None => {
                        side[u] = Some(!sv);
                        queue.push_back(u);
                    }
                    Some(su) if su == sv => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Fewest vertices whose removal leaves a bipartite graph.
pub fn odd_cycle_transversal(g: &WeightedGraph) -> Result<usize> {
    let n = g.n();
    if n > MAX_OCT_VERTICES {
        return Err(Error::SearchTooLarge(format!(
            "odd cycle transversal limited to {MAX_OCT_VERTICES} vertices"
        )));
    }
    for k in 0..=n {
        for subset in combinations(n, k) {
            let mut removed = vec![false; n];
            for v in subset {
                removed[v] = true;
            }
            if bipartite_without(g, &removed) {
                return Ok(k);
            }
        }
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermCount {
    pub m: usize,
    pub terms: u128,
    /// `None` when `Σ_{j<χ} n_j > n_χ`, where no color bound is claimed.
    pub meets_lower: Option<bool>,
}

pub fn term_count(cf: &ClosedForm) -> TermCount {
    let mut sizes = cf.class_sizes().to_vec();
    sizes.sort_unstable();
    TermCount {
        m: cf.m(),
        terms: cf.term_count(),
        meets_lower: color_condition(&sizes).map(|x| x == cf.m()),
    }
}
