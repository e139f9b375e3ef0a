use serde::Serialize;

use super::WeightedGraph;
use crate::error::{Error, Result};

/// Largest vertex count for which the exact chromatic search runs.
pub const MAX_EXACT_VERTICES: usize = 24;

/// A proper coloring with classes ordered by nondecreasing size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    chi: usize,
    assignment: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Coloring {
    /// Builds a coloring from arbitrary labels. Classes are grouped by label in
    /// ascending label order, then stably sorted by size.
    pub fn from_labels(g: &WeightedGraph, labels: &[u32]) -> Result<Self> {
        if labels.len() != g.n() {
            return Err(Error::InvalidColoring(format!(
                "{} labels for {} vertices",
                labels.len(),
                g.n()
            )));
        }
        let mut distinct: Vec<u32> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let mut classes: Vec<Vec<usize>> = distinct
            .iter()
            .map(|&c| (0..g.n()).filter(|&v| labels[v] == c).collect())
            .collect();
        classes.sort_by_key(Vec::len);
        Self::from_classes(g, classes)
    }

    /// Builds from an assignment of color indices, ordering classes by size with
    /// ties broken by smallest vertex.
    pub fn from_assignment(g: &WeightedGraph, assignment: &[usize]) -> Result<Self> {
        if assignment.len() != g.n() {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} vertices",
                assignment.len(),
                g.n()
            )));
        }
        let k = assignment.iter().max().map_or(0, |&m| m + 1);
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (v, &c) in assignment.iter().enumerate() {
            classes[c].push(v);
        }
        classes.retain(|c| !c.is_empty());
        classes.sort_by_key(|c| (c.len(), c[0]));
        Self::from_classes(g, classes)
    }

    fn from_classes(g: &WeightedGraph, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut assignment = vec![usize::MAX; g.n()];
        for (ci, class) in classes.iter().enumerate() {
            for &v in class {
                assignment[v] = ci;
            }
        }
        for e in g.edges() {
            if assignment[e.u] == assignment[e.v] {
                return Err(Error::ImproperColoring(e.u.min(e.v), e.u.max(e.v)));
            }
        }
        Ok(Self { chi: classes.len(), assignment, classes })
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    /// Class index of each vertex.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Classes `c_1..c_χ`, each in ascending vertex order.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// The last (largest) class.
    pub fn last_class(&self) -> &[usize] {
        self.classes.last().map_or(&[], Vec::as_slice)
    }

    /// Vertices of `c_1..c_{χ-1}` concatenated.
    pub fn free_vertices(&self) -> Vec<usize> {
        match self.classes.split_last() {
            Some((_, rest)) => rest.concat(),
            None => Vec::new(),
        }
    }
}

/// Exact minimum coloring, or validation and canonical ordering of `hint`.
pub fn chromatic_coloring(g: &WeightedGraph, hint: Option<&[u32]>) -> Result<Coloring> {
    if let Some(labels) = hint {
        return Coloring::from_labels(g, labels);
    }
    let n = g.n();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::SearchTooLarge(format!(
            "{n} vertices exceeds the exact coloring limit of {MAX_EXACT_VERTICES}; supply a color hint"
        )));
    }
    if n == 0 {
        return Coloring::from_assignment(g, &[]);
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&u| g.is_adjacent(v, u)).fold(0u32, |m, u| m | (1 << u)))
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].count_ones()), v));

    let greedy = greedy_coloring(&adj, &order);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let lower = max_clique(&adj).max(1);

    for k in lower..upper {
        let mut colors = vec![usize::MAX; n];
        if try_color(&adj, &order, 0, k, 0, &mut colors) {
            return Coloring::from_assignment(g, &colors);
        }
    }
    Coloring::from_assignment(g, &greedy)
}

fn greedy_coloring(adj: &[u32], order: &[usize]) -> Vec<usize> {
    let mut colors = vec![usize::MAX; adj.len()];
    for &v in order {
        let mut used = 0u64;
        for u in 0..adj.len() {
            if adj[v] >> u & 1 == 1 && colors[u] != usize::MAX {
                used |= 1 << colors[u];
            }
        }
        colors[v] = (!used).trailing_zeros() as usize;
    }
    colors
}

fn try_color(
    adj: &[u32],
    order: &[usize],
    pos: usize,
    k: usize,
    used: usize,
    colors: &mut [usize],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    // New colors are only opened one at a time, which removes relabeling symmetry.
    for c in 0..k.min(used + 1) {
        let clash = (0..adj.len()).any(|u| adj[v] >> u & 1 == 1 && colors[u] == c);
        if clash {
            continue;
        }
        colors[v] = c;
        if try_color(adj, order, pos + 1, k, used.max(c + 1), colors) {
            return true;
        }
        colors[v] = usize::MAX;
    }
    false
}

fn max_clique(adj: &[u32]) -> usize {
    fn grow(adj: &[u32], candidates: u32, size: usize, best: &mut usize) {
        if candidates == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + candidates.count_ones() as usize <= *best {
            return;
        }
        let mut rest = candidates;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow(adj, rest & adj[v], size + 1, best);
        }
    }
    let all = if adj.len() == 32 { u32::MAX } else { (1u32 << adj.len()) - 1 };
    let mut best = 0;
    grow(adj, all, 0, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeDimension;

    fn d2() -> PrimeDimension {
        PrimeDimension::new(2).unwrap()
    }

    #[test]
    fn six_cycle_classes() {
        let g = WeightedGraph::unit(d2(), 6, &[(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)])
            .unwrap();
        let c = chromatic_coloring(&g, None).unwrap();
        assert_eq!(c.chi(), 2);
        assert_eq!(c.classes(), &[vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn triangle_and_ame_graph() {
        let tri = WeightedGraph::unit(d2(), 3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = chromatic_coloring(&tri, None).unwrap();
        assert_eq!(c.chi(), 3);
        assert_eq!(c.class_sizes(), vec![1, 1, 1]);

        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2), (3, 5), (1, 4)];
        let g = WeightedGraph::unit(d2(), 6, &edges).unwrap();
        let c = chromatic_coloring(&g, None).unwrap();
        assert_eq!(c.chi(), 3);
        assert_eq!(c.class_sizes(), vec![2, 2, 2]);
    }

    #[test]
    fn hint_keeps_label_order_on_ties() {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2), (3, 5), (1, 4)];
        let g = WeightedGraph::unit(d2(), 6, &edges).unwrap();
        let c = chromatic_coloring(&g, Some(&[0, 2, 1, 0, 1, 2])).unwrap();
        assert_eq!(c.classes(), &[vec![0, 3], vec![2, 4], vec![1, 5]]);
    }

    #[test]
    fn improper_hint_rejected() {
        let g = WeightedGraph::unit(d2(), 2, &[(0, 1)]).unwrap();
        assert_eq!(chromatic_coloring(&g, Some(&[0, 0])), Err(Error::ImproperColoring(0, 1)));
    }

    #[test]
    fn large_graph_needs_hint() {
        let g = WeightedGraph::empty(d2(), 25);
        assert!(matches!(chromatic_coloring(&g, None), Err(Error::SearchTooLarge(_))));
    }

    #[test]
    fn edgeless_is_one_color() {
        let g = WeightedGraph::empty(d2(), 3);
        let c = chromatic_coloring(&g, None).unwrap();
        assert_eq!(c.chi(), 1);
        assert!(c.free_vertices().is_empty());
    }

    #[test]
    fn petersen_is_three_chromatic() {
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        let g = WeightedGraph::unit(d2(), 10, &edges).unwrap();
        assert_eq!(chromatic_coloring(&g, None).unwrap().chi(), 3);
    }
}
