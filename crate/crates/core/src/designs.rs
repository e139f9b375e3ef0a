//! Orthogonal arrays read off closed-form generators.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::closedform::{expand, ClosedForm};
use crate::error::{Error, Result};
use crate::field::{advance, row_times, FieldMatrix, PrimeDimension};
use crate::graph::WeightedGraph;
use crate::limits::{check_cap, pow_u128};
use crate::simulator::{k_uniformity, max_mixed_residual};
use crate::subsets::combinations;

pub const MAX_STRENGTH_ROWS: usize = 1 << 20;
pub const MAX_STRENGTH_COLS: usize = 16;
pub const MAX_PROBE_COLS: usize = 8;
pub const MAX_PROBE_ROWS: usize = 256;

/// An `r × n` table over `[0, d)` with its exact strength.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalArray {
    rows: usize,
    cols: usize,
    dim: PrimeDimension,
    table: Vec<Vec<u32>>,
    strength: usize,
}

impl OrthogonalArray {
    pub fn new(dim: PrimeDimension, table: Vec<Vec<u32>>) -> Result<Self> {
        let strength = oa_strength(dim, &table)?;
        let cols = table.first().map_or(0, Vec::len);
        Ok(Self { rows: table.len(), cols, dim, table, strength })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> PrimeDimension {
        self.dim
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    /// Parses the `OA r n d k` text format. The stated strength must match.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or(Error::Parse { line: 0, msg: "missing OA header".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "OA" {
            return Err(Error::Parse { line: hline, msg: "expected `OA r n d k`".into() });
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse { line: hline, msg: format!("bad number `{s}`") })
        };
        let (r, n, d, k) = (num(fields[1])?, num(fields[2])?, num(fields[3])?, num(fields[4])?);
        let dim = PrimeDimension::new(d as u32)?;
        let mut table = Vec::with_capacity(r);
        for (line, l) in lines {
            let row = l
                .split_whitespace()
                .map(|s| match s.parse::<u32>() {
                    Ok(x) if x < dim.get() => Ok(x),
                    _ => Err(Error::Parse { line, msg: format!("bad symbol `{s}`") }),
                })
                .collect::<Result<Vec<u32>>>()?;
            if row.len() != n {
                return Err(Error::Parse { line, msg: format!("expected {n} symbols") });
            }
            table.push(row);
        }
        if table.len() != r {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header declares {r} rows, found {}", table.len()),
            });
        }
        let oa = Self::new(dim, table)?;
        if oa.strength != k {
            return Err(Error::Parse {
                line: hline,
                msg: format!("declared strength {k}, computed {}", oa.strength),
            });
        }
        Ok(oa)
    }
}

impl fmt::Display for OrthogonalArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OA {} {} {} {}", self.rows, self.cols, self.dim, self.strength)?;
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Rows `w·G` for every `w ∈ F_d^m`, in enumeration order.
pub fn oa_from_generator(g: &FieldMatrix) -> Result<OrthogonalArray> {
    let d = g.dim().get();
    let total = check_cap(d as u64, g.rows())?;
    let mut w = vec![0u32; g.rows()];
    let mut table = Vec::with_capacity(total);
    for _ in 0..total {
        let mut row = vec![0u32; g.cols()];
        row_times(g, &w, &mut row);
        table.push(row);
        advance(&mut w, d);
    }
    OrthogonalArray::new(g.dim(), table)
}

/// Whether every `k`-column projection is uniform over `[0, d)^k`.
pub fn is_balanced(dim: PrimeDimension, table: &[Vec<u32>], subset: &[usize]) -> bool {
    let d = dim.get() as u128;
    let cells = pow_u128(d as u64, subset.len());
    let r = table.len() as u128;
    if cells == 0 || r % cells != 0 {
        return false;
    }
    let want = (r / cells) as usize;
    let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
    for row in table {
        *counts.entry(subset.iter().map(|&c| row[c]).collect()).or_default() += 1;
    }
    counts.len() as u128 == cells && counts.values().all(|&c| c == want)
}

/// Largest `k` such that every `k`-subset of columns is balanced.
pub fn oa_strength(dim: PrimeDimension, table: &[Vec<u32>]) -> Result<usize> {
    let r = table.len();
    let n = table.first().map_or(0, Vec::len);
    if r > MAX_STRENGTH_ROWS || n > MAX_STRENGTH_COLS {
        return Err(Error::SearchTooLarge(format!(
            "strength search limited to {MAX_STRENGTH_ROWS} rows and {MAX_STRENGTH_COLS} columns"
        )));
    }
    if let Some(row) = table.iter().find(|row| row.len() != n) {
        return Err(Error::DimensionMismatch(format!("ragged row of length {}", row.len())));
    }
    if table.iter().flatten().any(|&x| x >= dim.get()) {
        return Err(Error::InvalidArgument(format!("symbol outside [0, {dim})")));
    }
    let mut k = 0;
    while k < n && combinations(n, k + 1).iter().all(|s| is_balanced(dim, table, s)) {
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QoaCertificate {
    /// `d^m` rows.
    pub r: u128,
    pub n: usize,
    pub d: u32,
    pub k_star: usize,
    /// Worst deviation from `I/d^k` over all `k_star`-party reductions.
    pub residual: Option<f64>,
}

/// Expands the form and measures its uniformity.
pub fn qoa_certify(cf: &ClosedForm, g: &WeightedGraph) -> Result<QoaCertificate> {
    if g.n() != cf.n() || g.dim() != cf.dim() {
        return Err(Error::DimensionMismatch("closed form and graph disagree".into()));
    }
    let state = expand::<f64>(cf)?;
    let k_star = k_uniformity(&state, 1e-9)?;
    let residual = if k_star > 0 { Some(max_mixed_residual(&state, k_star)?) } else { None };
    Ok(QoaCertificate { r: cf.term_count(), n: cf.n(), d: cf.dim().get(), k_star, residual })
}

fn sorted_projection(rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut v = rows.to_vec();
    v.sort_unstable();
    v
}

/// Searches column permutations and per-column affine relabelings
/// `x ↦ αx + β` for a map sending the rows of `a` onto those of `b`.
pub fn oa_equivalence_probe(a: &OrthogonalArray, b: &OrthogonalArray) -> Result<bool> {
    for oa in [a, b] {
        if oa.cols > MAX_PROBE_COLS || oa.rows > MAX_PROBE_ROWS {
            return Err(Error::SearchTooLarge(format!(
                "probe limited to {MAX_PROBE_COLS} columns and {MAX_PROBE_ROWS} rows"
            )));
        }
    }
    if a.rows != b.rows || a.cols != b.cols || a.dim != b.dim {
        return Ok(false);
    }
    let d = a.dim.get();
    let maps: Vec<(u32, u32)> = (1..d).flat_map(|al| (0..d).map(move |be| (al, be))).collect();
    let mut used = vec![false; a.cols];
    let mut built: Vec<Vec<u32>> = vec![Vec::new(); a.rows];
    Ok(probe(a, b, &maps, d, &mut used, &mut built))
}

fn probe(
    a: &OrthogonalArray,
    b: &OrthogonalArray,
    maps: &[(u32, u32)],
    d: u32,
    used: &mut [bool],
    built: &mut [Vec<u32>],
) -> bool {
    let depth = built[0].len();
    if depth == a.cols {
        return true;
    }
    let target: Vec<Vec<u32>> = b.table.iter().map(|r| r[..=depth].to_vec()).collect();
    let target = sorted_projection(&target);
    for col in 0..a.cols {
        if used[col] {
            continue;
        }
        used[col] = true;
        for &(al, be) in maps {
            for (row, src) in built.iter_mut().zip(&a.table) {
                row.push((al * src[col] + be) % d);
            }
            if sorted_projection(built) == target && probe(a, b, maps, d, used, built) {
                return true;
            }
            for row in built.iter_mut() {
                row.pop();
            }
        }
        used[col] = false;
    }
    false
}
