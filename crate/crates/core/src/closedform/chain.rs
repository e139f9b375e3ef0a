use num_complex::Complex;
use serde::Serialize;

use super::{RenderStyle, SiteOp};
use crate::error::{Error, Result};
use crate::field::{advance, row_times, FieldMatrix, FieldVector, PrimeDimension};
use crate::limits::check_cap;
use crate::scalar::Real;
use crate::simulator::{digits_index, index_digits, Gate, StateVector};

/// Factored action of `H†(even positions) · ∏ CZ^{w_p} · H^{⊗k}` on a
/// path of `k` qudits: `⊗_p P_p^{i_p} · d^{-m/2} Σ_l |l·G⟩`, with `X` on
/// even (0-indexed) positions and `Z` on odd ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainForm {
    k: usize,
    dim: PrimeDimension,
    weights: Vec<u32>,
    sites: Vec<SiteOp>,
    /// One row per odd position, `k` columns.
    generator: FieldMatrix,
}

/// Builds the factored chain operator; `weights[p]` joins positions `p` and `p+1`.
pub fn chain_operator_form(k: usize, weights: &FieldVector, dim: PrimeDimension) -> Result<ChainForm> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("chain length {k} < 2")));
    }
    if weights.len() != k - 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for a chain of {k}",
            weights.len()
        )));
    }
    let weights: Vec<u32> = weights.entries().iter().map(|&w| w % dim.get()).collect();
    let free: Vec<usize> = (1..k).step_by(2).collect();
    let mut generator = FieldMatrix::zeros(dim, free.len(), k);
    for (row, &p) in free.iter().enumerate() {
        generator.set(row, p, 1);
        generator.set(row, p - 1, weights[p - 1]);
        if p + 1 < k {
            generator.set(row, p + 1, weights[p]);
        }
    }
    let sites = (0..k).map(|p| if p % 2 == 0 { SiteOp::X } else { SiteOp::Z }).collect();
    Ok(ChainForm { k, dim, weights, sites, generator })
}

impl ChainForm {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> PrimeDimension {
        self.dim
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn sites(&self) -> &[SiteOp] {
        &self.sites
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    /// Positions carrying a summation index.
    pub fn free_positions(&self) -> Vec<usize> {
        (1..self.k).step_by(2).collect()
    }

    fn check_input(&self, input: &[u32]) -> Result<()> {
        if input.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "input of length {} for a chain of {}",
                input.len(),
                self.k
            )));
        }
        if let Some(&x) = input.iter().find(|&&x| x >= self.dim.get()) {
            return Err(Error::InvalidArgument(format!("digit {x} out of range")));
        }
        Ok(())
    }

    /// Output state from the factored form.
    pub fn apply<T: Real>(&self, input: &[u32]) -> Result<StateVector<T>> {
        self.check_input(input)?;
        check_cap(self.dim.get() as u64, self.k)?;
        let d = self.dim.get();
        let m = self.generator.rows();
        let omega = crate::simulator::omega_table::<T>(d);
        let scale = T::one() / T::lit(d as f64).powi(m as i32).sqrt();
        let mut amps = StateVector::<T>::zeros(self.dim, self.k)?.into_amps();
        let mut l = vec![0u32; m];
        let mut ket = vec![0u32; self.k];
        for _ in 0..(d as usize).pow(m as u32) {
            row_times(&self.generator, &l, &mut ket);
            let mut phase = 0u32;
            for (p, op) in self.sites.iter().enumerate() {
                match op {
                    SiteOp::X => ket[p] = (ket[p] + input[p]) % d,
                    SiteOp::Z => phase = (phase + input[p] * ket[p]) % d,
                }
            }
            let idx = digits_index(&ket, d);
            amps[idx] = amps[idx] + omega[phase as usize] * scale;
            advance(&mut l, d);
        }
        StateVector::from_amplitudes(self.dim, self.k, amps)
    }

    /// Output state from the gate sequence itself.
    pub fn direct<T: Real>(&self, input: &[u32]) -> Result<StateVector<T>> {
        self.check_input(input)?;
        let mut gates: Vec<Gate> = (0..self.k).map(|q| Gate::H { q }).collect();
        for (p, &w) in self.weights.iter().enumerate() {
            if w != 0 {
                gates.push(Gate::CZ { q1: p, q2: p + 1, beta: w });
            }
        }
        gates.extend((0..self.k).step_by(2).map(|q| Gate::Hdag { q }));
        StateVector::basis(self.dim, input)?.apply_all(&gates)
    }

    /// Largest amplitude difference between factored and direct action over
    /// every basis input.
    pub fn max_deviation<T: Real>(&self) -> Result<T> {
        let total = check_cap(self.dim.get() as u64, self.k)?;
        let mut worst = T::zero();
        for x in 0..total {
            let input = index_digits(x, self.k, self.dim.get());
            worst = worst.max(self.apply::<T>(&input)?.max_abs_diff(&self.direct::<T>(&input)?)?);
        }
        Ok(worst)
    }

    /// `X^(i1) (x) Z^(i2) sum_{l2} |l2, l2>`.
    pub fn render(&self, style: RenderStyle) -> String {
        let (sum, sep, close) = match style {
            RenderStyle::Unicode => ("Σ", " ⊗ ", "⟩"),
            RenderStyle::Ascii => ("sum", " (x) ", ">"),
        };
        let mul = match style {
            RenderStyle::Unicode => "·",
            RenderStyle::Ascii => "*",
        };
        let ops: Vec<String> = self
            .sites
            .iter()
            .enumerate()
            .map(|(p, op)| {
                let name = match op {
                    SiteOp::X => "X",
                    SiteOp::Z => "Z",
                };
                match style {
                    RenderStyle::Unicode => format!("{name}^{{i{}}}", p + 1),
                    RenderStyle::Ascii => format!("{name}^(i{})", p + 1),
                }
            })
            .collect();
        let free = self.free_positions();
        let entries: Vec<String> = (0..self.k)
            .map(|p| {
                let terms: Vec<String> = free
                    .iter()
                    .enumerate()
                    .filter_map(|(row, &q)| match self.generator.get(row, p) {
                        0 => None,
                        1 => Some(format!("l{}", q + 1)),
                        c => Some(format!("{c}{mul}l{}", q + 1)),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            })
            .collect();
        let idx: Vec<String> = free.iter().map(|q| format!("l{}", q + 1)).collect();
        format!(
            "{} {sum}_{{{}}} |{}{close}",
            ops.join(sep),
            idx.join(","),
            entries.join(", ")
        )
    }
}

/// One row of the two-qubit Bell correspondence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BellEntry {
    pub input: [u32; 2],
    /// `Phi+`, `Phi-`, `Psi+` or `Psi-`.
    pub label: &'static str,
    /// Exact sign relative to the named Bell state.
    pub sign: i8,
    /// Largest amplitude error against `sign · label`.
    pub residual: f64,
}

fn bell_vector(label: &str) -> [f64; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match label {
        "Phi+" => [h, 0.0, 0.0, h],
        "Phi-" => [h, 0.0, 0.0, -h],
        "Psi+" => [0.0, h, h, 0.0],
        _ => [0.0, h, -h, 0.0],
    }
}

/// Bell map of the two-site chain at `d = 2`, with `Ψ⁻ = (|01⟩ − |10⟩)/√2`.
pub fn bell_table() -> Result<Vec<BellEntry>> {
    let dim = PrimeDimension::new(2)?;
    let form = chain_operator_form(2, &FieldVector::new(dim, [1]), dim)?;
    let mut out = Vec::new();
    for input in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        let state = form.apply::<f64>(&input)?;
        let amps: Vec<Complex<f64>> = state.amps().to_vec();
        let mut best: Option<BellEntry> = None;
        for label in ["Phi+", "Phi-", "Psi+", "Psi-"] {
            let v = bell_vector(label);
            for sign in [1i8, -1] {
                let residual = amps
                    .iter()
                    .zip(v)
                    .map(|(a, b)| (a - Complex::new(sign as f64 * b, 0.0)).norm())
                    .fold(0.0, f64::max);
                if best.as_ref().is_none_or(|e| residual < e.residual) {
                    best = Some(BellEntry { input, label, sign, residual });
                }
            }
        }
        out.extend(best);
    }
    Ok(out)
}
