use num_complex::Complex;

use super::{build_graph_state, fidelity_up_to_phase};
use crate::error::{Error, Result};
use crate::graph::{local_complement, WeightedGraph};

type C = Complex<f64>;

/// Principal square root of a diagonalizable 2×2 matrix `[[a, b], [c, e]]`
/// with distinct eigenvalues: `√M = (M + r₁r₂ I) / (r₁ + r₂)` where `r_i` are
/// the principal roots of the eigenvalues.
pub fn principal_sqrt_2x2(m: [[C; 2]; 2]) -> Result<[[C; 2]; 2]> {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (tr * tr - det * 4.0).sqrt();
    let l1 = (tr + disc) / 2.0;
    let l2 = (tr - disc) / 2.0;
    let (r1, r2) = (l1.sqrt(), l2.sqrt());
    let denom = r1 + r2;
    if denom.norm() < 1e-14 {
        return Err(Error::NotApplicable("square root formula is singular".into()));
    }
    let p = r1 * r2;
    Ok([
        [(m[0][0] + p) / denom, m[0][1] / denom],
        [m[1][0] / denom, (m[1][1] + p) / denom],
    ])
}

/// `√(−iX)`.
pub fn sqrt_minus_i_x() -> [[C; 2]; 2] {
    let mi = C::new(0.0, -1.0);
    let z = C::new(0.0, 0.0);
    principal_sqrt_2x2([[z, mi], [mi, z]]).expect("distinct eigenvalues")
}

/// `√(iZ)`.
pub fn sqrt_i_z() -> [[C; 2]; 2] {
    let i = C::new(0.0, 1.0);
    let z = C::new(0.0, 0.0);
    principal_sqrt_2x2([[i, z], [z, -i]]).expect("distinct eigenvalues")
}

fn flat(m: [[C; 2]; 2]) -> [C; 4] {
    [m[0][0], m[0][1], m[1][0], m[1][1]]
}

/// Applies `√(−iX)` at `a` and `√(iZ)` on each neighbor of `a`, then compares
/// with the graph state of the locally complemented graph. Qubits only.
pub fn lc_unitary_check(g: &WeightedGraph, a: usize) -> Result<f64> {
    if g.d() != 2 {
        return Err(Error::NotApplicable(format!(
            "local-complement unitary check is defined for d = 2, got d = {}",
            g.d()
        )));
    }
    if a >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: a, n: g.n() });
    }
    let mut s = build_graph_state::<f64>(g)?;
    s = s.apply_local_matrix(a, &flat(sqrt_minus_i_x()))?;
    let sz = flat(sqrt_i_z());
    for b in 0..g.n() {
        if g.is_adjacent(a, b) {
            s = s.apply_local_matrix(b, &sz)?;
        }
    }
    let target = build_graph_state::<f64>(&local_complement(g, a, 1)?)?;
    fidelity_up_to_phase(&s, &target)
}
