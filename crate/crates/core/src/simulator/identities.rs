use num_complex::Complex;
use serde::Serialize;

use super::{omega_table, Gate, StateVector};
use crate::error::Result;
use crate::field::PrimeDimension;

/// Residuals of the three operator identities at one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    pub d: u32,
    /// `max |H†₂ CZ |kj⟩ − CX H†₂ |kj⟩|` over all `k, j`.
    pub hdag_cz_residual: f64,
    /// `max |X^a|i⟩ − H† Z^a H|i⟩|` over all `a, i`.
    pub x_conjugation_residual: f64,
    /// `max |(1/d) Σ_l ω^{(k−j)l} − δ_kj|` over all `k, j`.
    pub delta_sum_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Checks `H†CZ = CX H†`, `X^a = H†Z^aH` and the root-of-unity delta sum.
pub fn identity_fixtures(dim: PrimeDimension) -> Result<IdentityReport> {
    let d = dim.get();
    let tol = 1e-12;

    let mut a1 = 0.0f64;
    for k in 0..d {
        for j in 0..d {
            let ket = StateVector::<f64>::basis(dim, &[k, j])?;
            let lhs = ket
                .apply_gate(Gate::CZ { q1: 0, q2: 1, beta: 1 })?
                .apply_gate(Gate::Hdag { q: 1 })?;
            let rhs = ket
                .apply_gate(Gate::Hdag { q: 1 })?
                .apply_gate(Gate::CX { control: 0, target: 1, gamma: 0 })?;
            a1 = a1.max(lhs.max_abs_diff(&rhs)?);
        }
    }

    let mut a3 = 0.0f64;
    for a in 0..d {
        for i in 0..d {
            let ket = StateVector::<f64>::basis(dim, &[i])?;
            let lhs = ket.apply_gate(Gate::X { q: 0, a })?;
            let rhs = ket
                .apply_gate(Gate::H { q: 0 })?
                .apply_gate(Gate::Z { q: 0, a })?
                .apply_gate(Gate::Hdag { q: 0 })?;
            a3 = a3.max(lhs.max_abs_diff(&rhs)?);
        }
    }

    let omega = omega_table::<f64>(d);
    let mut a5 = 0.0f64;
    for k in 0..d {
        for j in 0..d {
            let diff = (k + d - j) % d;
            let sum = (0..d).fold(Complex::new(0.0, 0.0), |acc, l| {
                acc + omega[(diff * l % d) as usize]
            }) / d as f64;
            let delta = if k == j { 1.0 } else { 0.0 };
            a5 = a5.max((sum - Complex::new(delta, 0.0)).norm());
        }
    }

    Ok(IdentityReport {
        d,
        hdag_cz_residual: a1,
        x_conjugation_residual: a3,
        delta_sum_residual: a5,
        tol,
        passed: a1 <= tol && a3 <= tol && a5 <= tol,
    })
}
