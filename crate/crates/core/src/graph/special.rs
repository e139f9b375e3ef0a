use serde::Serialize;

use super::{Coloring, WeightedGraph};

/// One `B_c` component: its greens and the blues `B_c∖G` attached to them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BcComponent {
    pub greens: Vec<usize>,
    pub blues: Vec<usize>,
}

impl BcComponent {
    /// All vertices of the component in ascending order.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = [self.greens.as_slice(), self.blues.as_slice()].concat();
        v.sort_unstable();
        v
    }
}

/// Partition `R`, `B_u`, and the `(G_k, B_{c,k}∖G_k)` components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialClassStructure {
    pub red: Vec<usize>,
    pub blue_u: Vec<usize>,
    pub components: Vec<BcComponent>,
}

impl SpecialClassStructure {
    pub fn greens(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.components.iter().flat_map(|c| c.greens.clone()).collect();
        g.sort_unstable();
        g
    }

    /// `B_u` together with every `B_c∖G`.
    pub fn blues(&self) -> Vec<usize> {
        let mut b = self.blue_u.clone();
        b.extend(self.components.iter().flat_map(|c| c.blues.iter().copied()));
        b.sort_unstable();
        b
    }

    /// Free-index vertices: reds, then greens component by component.
    pub fn free_vertices(&self) -> Vec<usize> {
        let mut f = self.red.clone();
        f.extend(self.components.iter().flat_map(|c| c.greens.iter().copied()));
        f
    }

    pub fn s(&self) -> usize {
        self.components.len()
    }
}

/// Why a coloring does not have the special-class shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum SpecialRejection {
    UnsupportedChi { chi: usize },
    RedExceedsUnconnectedBlue { n_r: usize, n_bu: usize },
    GreenExceedsBlue { component: usize, n_g: usize, n_b: usize },
    NonzeroBlock { block: String, u: usize, v: usize },
}

impl std::fmt::Display for SpecialRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::UnsupportedChi { chi } => write!(f, "special class needs chi = 2 or 3, got {chi}"),
            Self::RedExceedsUnconnectedBlue { n_r, n_bu } => {
                write!(f, "size condition n_R <= n_Bu fails: n_R = {n_r} > n_Bu = {n_bu}")
            }
            Self::GreenExceedsBlue { component, n_g, n_b } => write!(
                f,
                "size condition n_G <= n_Bc\\G fails in component {component}: {n_g} > {n_b}"
            ),
            Self::NonzeroBlock { block, u, v } => {
                write!(f, "zero block {block} violated by edge {{{u},{v}}}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SpecialDetection {
    Accepted(SpecialClassStructure),
    Rejected(SpecialRejection),
}

impl SpecialDetection {
    pub fn accepted(&self) -> Option<&SpecialClassStructure> {
        match self {
            Self::Accepted(s) => Some(s),
            Self::Rejected(_) => None,
        }
    }
}

/// Finds the `R / B_u / B_c` structure, trying each assignment of the three
/// classes to the red, green and blue roles.
pub fn detect_special_class(g: &WeightedGraph, c: &Coloring) -> SpecialDetection {
    let classes = c.classes();
    match c.chi() {
        2 => SpecialDetection::Accepted(SpecialClassStructure {
            red: classes[0].clone(),
            blue_u: classes[1].clone(),
            components: Vec::new(),
        }),
        3 => {
            const ROLES: [[usize; 3]; 6] =
                [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 0, 1], [1, 2, 0], [2, 1, 0]];
            let mut first = None;
            for [r, gr, b] in ROLES {
                match try_roles(g, &classes[r], &classes[gr], &classes[b]) {
                    Ok(s) => return SpecialDetection::Accepted(s),
                    Err(e) => {
                        first.get_or_insert(e);
                    }
                }
            }
            SpecialDetection::Rejected(first.expect("six role assignments tried"))
        }
        chi => SpecialDetection::Rejected(SpecialRejection::UnsupportedChi { chi }),
    }
}

fn try_roles(
    g: &WeightedGraph,
    red: &[usize],
    green: &[usize],
    blue: &[usize],
) -> Result<SpecialClassStructure, SpecialRejection> {
    let n = g.n();
    let mut role = vec![0u8; n];
    for &v in green {
        role[v] = 1;
    }
    for &v in blue {
        role[v] = 2;
    }

    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<BcComponent> = Vec::new();
    for &start in green {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if role[u] != 0 && comp[u] == usize::MAX && g.is_adjacent(u, v) {
                    comp[u] = id;
                    members.push(u);
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        components.push(BcComponent {
            greens: members.iter().copied().filter(|&v| role[v] == 1).collect(),
            blues: members.iter().copied().filter(|&v| role[v] == 2).collect(),
        });
    }
    let blue_u: Vec<usize> = blue.iter().copied().filter(|&v| comp[v] == usize::MAX).collect();

    for e in g.edges() {
        let (a, b) = (e.u, e.v);
        let label = |x: usize| match role[x] {
            0 => "R".to_string(),
            _ if comp[x] == usize::MAX => "B_u".to_string(),
            1 => format!("G_{}", comp[x] + 1),
            _ => format!("Bc\\G_{}", comp[x] + 1),
        };
        let bad = match (role[a], role[b]) {
            (0, 0) => true,
            (0, _) | (_, 0) => false,
            _ => comp[a] != comp[b] || comp[a] == usize::MAX || role[a] == role[b],
        };
        if bad {
            return Err(SpecialRejection::NonzeroBlock {
                block: format!("{}-{}", label(a), label(b)),
                u: a.min(b),
                v: a.max(b),
            });
        }
    }

    if red.len() > blue_u.len() {
        return Err(SpecialRejection::RedExceedsUnconnectedBlue {
            n_r: red.len(),
            n_bu: blue_u.len(),
        });
    }
    for (k, c) in components.iter().enumerate() {
        if c.greens.len() > c.blues.len() {
            return Err(SpecialRejection::GreenExceedsBlue {
                component: k + 1,
                n_g: c.greens.len(),
                n_b: c.blues.len(),
            });
        }
    }
    Ok(SpecialClassStructure { red: red.to_vec(), blue_u, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeDimension;
    use crate::graph::chromatic_coloring;

    fn example_one() -> (WeightedGraph, Coloring) {
        let d = PrimeDimension::new(2).unwrap();
        let mut edges = Vec::new();
        for r in 0..4 {
            for b in 4..13 {
                edges.push((r, b));
            }
        }
        edges.push((10, 11));
        edges.push((11, 12));
        let g = WeightedGraph::unit(d, 13, &edges).unwrap();
        let mut hint = vec![0u32; 4];
        hint.extend([2; 6]);
        hint.extend([2, 1, 2]);
        let c = chromatic_coloring(&g, Some(&hint)).unwrap();
        (g, c)
    }

    #[test]
    fn example_one_accepted() {
        let (g, c) = example_one();
        let s = detect_special_class(&g, &c);
        let s = s.accepted().expect("accepted");
        assert_eq!(s.red, vec![0, 1, 2, 3]);
        assert_eq!(s.blue_u, (4..10).collect::<Vec<_>>());
        assert_eq!(s.s(), 1);
        assert_eq!(s.components[0].greens, vec![11]);
        assert_eq!(s.components[0].blues, vec![10, 12]);
    }

    #[test]
    fn ame_graph_rejected_on_size() {
        let d = PrimeDimension::new(3).unwrap();
        let g = WeightedGraph::unit(
            d,
            6,
            &[(0, 1), (0, 2), (0, 5), (1, 2), (1, 4), (2, 3), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        let c = chromatic_coloring(&g, Some(&[0, 2, 1, 0, 1, 2])).unwrap();
        assert_eq!(
            detect_special_class(&g, &c),
            SpecialDetection::Rejected(SpecialRejection::RedExceedsUnconnectedBlue {
                n_r: 2,
                n_bu: 0
            })
        );
    }

    #[test]
    fn bipartite_is_degenerate() {
        let d = PrimeDimension::new(2).unwrap();
        let g = WeightedGraph::unit(d, 4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let c = chromatic_coloring(&g, None).unwrap();
        let s = detect_special_class(&g, &c);
        let s = s.accepted().unwrap();
        assert_eq!(s.s(), 0);
        assert_eq!(s.blue_u, c.last_class());
    }
}
