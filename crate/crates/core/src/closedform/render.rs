use super::{ClosedForm, SiteOp, SpecialForm};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Output alphabet for rendered sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    /// `Σ ω^{i1·i3} |i1, i1+i3⟩`
    Unicode,
    /// `sum w^(i1*i3) |i1, i1+i3>`
    Ascii,
}

impl RenderStyle {
    fn mul(self) -> &'static str {
        match self {
            Self::Unicode => "·",
            Self::Ascii => "*",
        }
    }

    fn sum(self) -> &'static str {
        match self {
            Self::Unicode => "Σ",
            Self::Ascii => "sum",
        }
    }

    fn close_ket(self) -> &'static str {
        match self {
            Self::Unicode => "⟩",
            Self::Ascii => ">",
        }
    }

    fn power(self, base: &str, exp: &str) -> String {
        match self {
            Self::Unicode => format!("{base}^{{{exp}}}"),
            Self::Ascii => format!("{base}^({exp})"),
        }
    }
}

/// Per-vertex index names, `i1..in` by default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexNames(Vec<String>);

impl IndexNames {
    pub fn default_for(n: usize) -> Self {
        Self((1..=n).map(|v| format!("i{v}")).collect())
    }

    /// Comma-separated names, one per vertex.
    pub fn parse(list: &str, n: usize) -> Result<Self> {
        let names: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
        if names.len() != n || names.iter().any(String::is_empty) {
            return Err(Error::InvalidArgument(format!(
                "expected {n} comma-separated index names, got {}",
                names.len()
            )));
        }
        Ok(Self(names))
    }

    pub fn get(&self, v: usize) -> &str {
        &self.0[v]
    }
}

fn linear(terms: &[(usize, u32)], names: &IndexNames, style: RenderStyle) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(_, c)| *c != 0)
        .map(|&(v, c)| {
            if c == 1 {
                names.get(v).to_string()
            } else {
                format!("{c}{}{}", style.mul(), names.get(v))
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

fn neighbor_terms(g: &WeightedGraph, v: usize, keep: impl Fn(usize) -> bool) -> Vec<(usize, u32)> {
    g.neighbors(v).into_iter().filter(|&(u, _)| keep(u)).collect()
}

fn ket(entries: &[String], style: RenderStyle) -> String {
    format!("|{}{}", entries.join(", "), style.close_ket())
}

/// Renders `Σ ω^{phase} |kets⟩`. Target entries list their neighbors in edge
/// declaration order; phase terms are sorted by vertex pair.
pub fn render_closed_form(
    cf: &ClosedForm,
    g: &WeightedGraph,
    names: &IndexNames,
    style: RenderStyle,
) -> String {
    let free = cf.free_vertices();
    let is_free = |v: usize| free.contains(&v);
    let entries: Vec<String> = (0..cf.n())
        .map(|v| {
            if is_free(v) {
                names.get(v).to_string()
            } else {
                linear(&neighbor_terms(g, v, is_free), names, style)
            }
        })
        .collect();

    let mut pairs: Vec<(usize, usize, u32)> = Vec::new();
    for a in 0..cf.m() {
        for b in a + 1..cf.m() {
            let q = cf.phase().get(a, b);
            if q != 0 {
                let (x, y) = (free[a].min(free[b]), free[a].max(free[b]));
                pairs.push((x, y, q));
            }
        }
    }
    pairs.sort_unstable();
    let terms: Vec<String> = pairs
        .iter()
        .map(|&(x, y, q)| {
            let body = format!("{}{}{}", names.get(x), style.mul(), names.get(y));
            if q == 1 {
                body
            } else {
                format!("{q}{}{body}", style.mul())
            }
        })
        .collect();

    let k = ket(&entries, style);
    if terms.is_empty() {
        format!("{} {k}", style.sum())
    } else {
        let sep = match style {
            RenderStyle::Unicode => "+",
            RenderStyle::Ascii => " + ",
        };
        let omega = match style {
            RenderStyle::Unicode => "ω",
            RenderStyle::Ascii => "w",
        };
        format!("{} {} {k}", style.sum(), style.power(omega, &terms.join(sep)))
    }
}

/// Renders the Δ-factored form: outer sum, then one
/// `[X^(f) Z^(f) …] sum_{g} |…>` block per component.
pub fn render_special(
    sf: &SpecialForm,
    g: &WeightedGraph,
    names: &IndexNames,
    style: RenderStyle,
) -> String {
    let s = &sf.structure;
    let is_red = |v: usize| s.red.contains(&v);
    let sub = |vs: &[usize]| -> String {
        let list: Vec<&str> = vs.iter().map(|&v| names.get(v)).collect();
        format!("{}_{{{}}}", style.sum(), list.join(","))
    };

    let mut outer_vs = sf.outer_vertices();
    outer_vs.sort_unstable();
    let outer: Vec<String> = outer_vs
        .iter()
        .map(|&v| {
            if is_red(v) {
                names.get(v).to_string()
            } else {
                linear(&neighbor_terms(g, v, is_red), names, style)
            }
        })
        .collect();
    let mut out = format!("{} {}", sub(&s.red), ket(&outer, style));

    let blocks: Vec<String> = sf
        .components
        .iter()
        .map(|comp| {
            let ops: Vec<String> = comp
                .sites
                .iter()
                .map(|site| {
                    let f = linear(&neighbor_terms(g, site.vertex, is_red), names, style);
                    if f == "0" {
                        "I".to_string()
                    } else {
                        let op = match site.op {
                            SiteOp::X => "X",
                            SiteOp::Z => "Z",
                        };
                        style.power(op, &f)
                    }
                })
                .collect();
            let is_green = |v: usize| comp.greens.contains(&v);
            let mut vs = [comp.greens.as_slice(), comp.blues.as_slice()].concat();
            vs.sort_unstable();
            let inner: Vec<String> = vs
                .iter()
                .map(|&v| {
                    if is_green(v) {
                        names.get(v).to_string()
                    } else {
                        linear(&neighbor_terms(g, v, is_green), names, style)
                    }
                })
                .collect();
            let delta = match style {
                RenderStyle::Unicode => format!("({})", ops.join(" ⊗ ")),
                RenderStyle::Ascii => format!("[{}]", ops.join(" ")),
            };
            format!("{delta} {} {}", sub(&comp.greens), ket(&inner, style))
        })
        .collect();
    if !blocks.is_empty() {
        let sep = match style {
            RenderStyle::Unicode => " ⊗ ",
            RenderStyle::Ascii => " (x) ",
        };
        out.push(' ');
        out.push_str(&blocks.join(sep));
    }
    out
}
