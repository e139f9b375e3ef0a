//! Closed-form representation `d^{-m/2} Σ_w ω^{Σ_{a<b} Q_ab w_a w_b} |w·G⟩`.
//!
//! Every compiler path produces the same normal form: a list of free vertices
//! carrying summation indices, a generator `G` mapping index assignments to
//! kets, and a strictly upper-triangular phase form `Q`. The remaining
//! (target) vertices form an independent set, and the closed form equals the
//! graph state with `H†` applied on every target.

mod chain;
mod render;
mod special;

pub use chain::{bell_table, chain_operator_form, BellEntry, ChainForm};
pub use render::{render_closed_form, render_special, IndexNames, RenderStyle};
pub use special::{
    compile_special, expand_special, expand_special_exact, verify_special, ComponentForm, DeltaSite, SiteOp,
    SpecialForm,
};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{advance, row_times, FieldMatrix, PrimeDimension};
use crate::graph::{Coloring, WeightedGraph};
use crate::limits::check_cap;
use crate::scalar::Real;
use crate::simulator::{build_graph_state, fidelity_up_to_phase, omega_table, Gate, StateVector};

/// Canonical `(G, Q)` closed form of a graph state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    n: usize,
    dim: PrimeDimension,
    free: Vec<usize>,
    target: Vec<usize>,
    generator: FieldMatrix,
    phase: FieldMatrix,
    chi: usize,
    class_sizes: Vec<usize>,
}

/// Serializable view of a [`ClosedForm`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormData {
    pub n: usize,
    pub d: u32,
    pub m: usize,
    pub chi: usize,
    pub class_sizes: Vec<usize>,
    pub free_vertices: Vec<usize>,
    pub target_vertices: Vec<usize>,
    pub vertex_order: Vec<usize>,
    pub generator: Vec<Vec<u32>>,
    pub phase: Vec<Vec<u32>>,
    pub term_count: String,
}

impl ClosedForm {
    /// Compiles with an explicit free-vertex order. Every other vertex is a
    /// target, and targets must be pairwise non-adjacent.
    pub fn from_free_vertices(
        g: &WeightedGraph,
        free: &[usize],
        chi: usize,
        class_sizes: Vec<usize>,
    ) -> Result<Self> {
        let n = g.n();
        let dim = g.dim();
        let mut is_free = vec![false; n];
        for &v in free {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if std::mem::replace(&mut is_free[v], true) {
                return Err(Error::InvalidArgument(format!("vertex {v} listed twice")));
            }
        }
        let target: Vec<usize> = (0..n).filter(|&v| !is_free[v]).collect();
        for (i, &a) in target.iter().enumerate() {
            for &b in &target[i + 1..] {
                if g.is_adjacent(a, b) {
                    return Err(Error::ImproperColoring(a, b));
                }
            }
        }
        let m = free.len();
        let mut generator = FieldMatrix::zeros(dim, m, n);
        let mut phase = FieldMatrix::zeros(dim, m, m);
        for (a, &fa) in free.iter().enumerate() {
            generator.set(a, fa, 1);
            for &t in &target {
                generator.set(a, t, g.weight(fa, t));
            }
            for (b, &fb) in free.iter().enumerate().skip(a + 1) {
                phase.set(a, b, g.weight(fa, fb));
            }
        }
        Ok(Self { n, dim, free: free.to_vec(), target, generator, phase, chi, class_sizes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> PrimeDimension {
        self.dim
    }

    /// Number of summation indices.
    pub fn m(&self) -> usize {
        self.free.len()
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// Vertices carrying summation indices, in index order.
    pub fn free_vertices(&self) -> &[usize] {
        &self.free
    }

    /// Vertices receiving `H†` in the verification contract.
    pub fn target_vertices(&self) -> &[usize] {
        &self.target
    }

    /// Free vertices followed by targets.
    pub fn vertex_order(&self) -> Vec<usize> {
        [self.free.as_slice(), self.target.as_slice()].concat()
    }

    /// `m × n` generator with columns in original vertex order.
    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    /// Generator with columns permuted into [`vertex_order`](Self::vertex_order),
    /// which has the shape `[I_m | A]`.
    pub fn canonical_generator(&self) -> FieldMatrix {
        let rows: Vec<usize> = (0..self.m()).collect();
        self.generator.select(&rows, &self.vertex_order())
    }

    /// Strictly upper-triangular phase form.
    pub fn phase(&self) -> &FieldMatrix {
        &self.phase
    }

    /// `d^m`.
    pub fn term_count(&self) -> u128 {
        crate::limits::pow_u128(self.dim.get() as u64, self.m())
    }

    pub fn data(&self) -> ClosedFormData {
        ClosedFormData {
            n: self.n,
            d: self.dim.get(),
            m: self.m(),
            chi: self.chi,
            class_sizes: self.class_sizes.clone(),
            free_vertices: self.free.clone(),
            target_vertices: self.target.clone(),
            vertex_order: self.vertex_order(),
            generator: self.generator.to_rows(),
            phase: self.phase.to_rows(),
            term_count: self.term_count().to_string(),
        }
    }

    /// Phase exponent `Σ_{a<b} Q_ab w_a w_b mod d`.
    #[inline]
    pub fn phase_exponent(&self, w: &[u32]) -> u32 {
        let d = self.dim.get() as u64;
        let m = self.m();
        let mut acc = 0u64;
        for a in 0..m {
            if w[a] == 0 {
                continue;
            }
            let mut row = 0u64;
            for b in a + 1..m {
                row += self.phase.get(a, b) as u64 * w[b] as u64;
            }
            acc += (row % d) * w[a] as u64;
        }
        (acc % d) as u32
    }

    /// Returns a copy with one generator entry replaced. Used to build
    /// negative controls.
    pub fn with_generator_entry(&self, row: usize, col: usize, value: u32) -> Self {
        let mut out = self.clone();
        out.generator.set(row, col, value);
        out
    }
}

/// Two-colorable case: `Σ_i |i·[I | A_RB]⟩`.
pub fn compile_two_color(g: &WeightedGraph, c: &Coloring) -> Result<ClosedForm> {
    if c.chi() != 2 {
        return Err(Error::NotApplicable(format!(
            "two-color compiler needs chi = 2, got {}",
            c.chi()
        )));
    }
    compile_chi_color(g, c)
}

/// General case: free indices on `c_1..c_{χ-1}`, kets and phases from Γ.
pub fn compile_chi_color(g: &WeightedGraph, c: &Coloring) -> Result<ClosedForm> {
    if c.assignment().len() != g.n() {
        return Err(Error::DimensionMismatch("coloring does not match graph".into()));
    }
    for e in g.edges() {
        if c.assignment()[e.u] == c.assignment()[e.v] {
            return Err(Error::ImproperColoring(e.u.min(e.v), e.u.max(e.v)));
        }
    }
    if c.chi() == 0 {
        return Err(Error::NotApplicable("graph has no vertices".into()));
    }
    ClosedForm::from_free_vertices(g, &c.free_vertices(), c.chi(), c.class_sizes())
}

/// Calls `visit(w, ket_digits, phase_exponent)` for every index assignment,
/// last index fastest.
pub(crate) fn for_each_term(cf: &ClosedForm, mut visit: impl FnMut(&[u32], &[u32], u32)) -> Result<()> {
    let d = cf.dim.get();
    let total = check_cap(d as u64, cf.m())?;
    let mut w = vec![0u32; cf.m()];
    let mut ket = vec![0u32; cf.n];
    for _ in 0..total {
        row_times(&cf.generator, &w, &mut ket);
        visit(&w, &ket, cf.phase_exponent(&w));
        advance(&mut w, d);
    }
    Ok(())
}

/// Normalized state `d^{-m/2} Σ_w ω^{phase(w)} |w·G⟩`.
pub fn expand<T: Real>(cf: &ClosedForm) -> Result<StateVector<T>> {
    let d = cf.dim.get();
    let mut amps = StateVector::<T>::zeros(cf.dim, cf.n)?.into_amps();
    let omega = omega_table::<T>(d);
    let scale = T::one() / T::lit(d as f64).powi(cf.m() as i32).sqrt();
    for_each_term(cf, |_, ket, e| {
        let idx = crate::simulator::digits_index(ket, d);
        amps[idx] = amps[idx] + omega[e as usize] * scale;
    })?;
    StateVector::from_amplitudes(cf.dim, cf.n, amps)
}

/// Exact expansion: for each ket index, how many terms carry each power of ω.
pub fn expand_exact(cf: &ClosedForm) -> Result<BTreeMap<usize, Vec<u64>>> {
    let d = cf.dim.get();
    let mut out: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for_each_term(cf, |_, ket, e| {
        let idx = crate::simulator::digits_index(ket, d);
        out.entry(idx).or_insert_with(|| vec![0; d as usize])[e as usize] += 1;
    })?;
    Ok(out)
}

/// Brute-force reference: the graph state with `H†` on every target vertex.
pub fn reference_state<T: Real>(g: &WeightedGraph, targets: &[usize]) -> Result<StateVector<T>> {
    let mut s = build_graph_state::<T>(g)?;
    for &t in targets {
        s = s.apply_gate(Gate::Hdag { q: t })?;
    }
    Ok(s)
}

/// Fidelity between the expansion of `cf` and the simulated reference state.
pub fn verify<T: Real>(cf: &ClosedForm, g: &WeightedGraph) -> Result<T> {
    if g.n() != cf.n || g.dim() != cf.dim {
        return Err(Error::DimensionMismatch("closed form does not match graph".into()));
    }
    let reference = reference_state::<T>(g, &cf.target)?;
    let expanded = expand::<T>(cf)?;
    fidelity_up_to_phase(&reference, &expanded)
}

/// `true` when `verify` meets the `1 − 1e−9` contract.
pub fn passes(fidelity: f64) -> bool {
    fidelity >= 1.0 - 1e-9
}
