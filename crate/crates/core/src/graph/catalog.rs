use std::collections::BTreeSet;

use super::WeightedGraph;
use crate::field::PrimeDimension;

fn pair_bit(i: usize, j: usize) -> u32 {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    1 << (b * (b - 1) / 2 + a)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn canonical(mask: u32, n: usize, perms: &[Vec<usize>]) -> u32 {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| mask & pair_bit(i, j) != 0)
        .collect();
    perms
        .iter()
        .map(|p| edges.iter().fold(0u32, |m, &(i, j)| m | pair_bit(p[i], p[j])))
        .min()
        .unwrap_or(0)
}

fn connected(mask: u32, n: usize) -> bool {
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        for u in 0..n {
            if u != v && mask & pair_bit(u, v) != 0 && seen >> u & 1 == 0 {
                seen |= 1 << u;
                frontier |= 1 << u;
            }
        }
    }
    seen.count_ones() as usize == n
}

/// Every connected unit-weight graph on `1..=max_n` vertices up to isomorphism
/// (1, 1, 2, 6, 21, 112 for n = 1..6), ordered by vertex count then canonical
/// edge mask.
pub fn connected_catalog(max_n: usize, dim: PrimeDimension) -> Vec<WeightedGraph> {
    assert!(max_n <= 7, "catalog generation is brute force");
    let mut out = Vec::new();
    // all graphs on n vertices, connected or not, as canonical masks
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    for n in 1..=max_n {
        if n > 1 {
            let perms = permutations(n);
            let mut next = BTreeSet::new();
            for &mask in &level {
                for nbrs in 0u32..(1 << (n - 1)) {
                    let mut m = mask;
                    for i in 0..n - 1 {
                        if nbrs >> i & 1 == 1 {
                            m |= pair_bit(i, n - 1);
                        }
                    }
                    next.insert(canonical(m, n, &perms));
                }
            }
            level = next;
        }
        for &mask in &level {
            if !connected(mask, n) {
                continue;
            }
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| mask & pair_bit(i, j) != 0)
                .collect();
            out.push(WeightedGraph::unit(dim, n, &edges).expect("valid catalog graph"));
        }
    }
    out
}
