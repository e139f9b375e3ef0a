//! Dense state-vector simulation of qudit circuits.
//!
//! Basis ket `|i_0, …, i_{n-1}⟩` lives at index `Σ_k i_k d^{n-1-k}`, so qudit 0
//! is the most significant digit. All gate applications return new states.

mod density;
mod identities;
mod lc_check;

pub use density::{k_uniformity, max_mixed_residual, partial_trace, DensityMatrix};
pub use identities::{identity_fixtures, IdentityReport};
pub use lc_check::{lc_unitary_check, principal_sqrt_2x2, sqrt_minus_i_x, sqrt_i_z};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::PrimeDimension;
use crate::graph::WeightedGraph;
use crate::limits::check_cap;
use crate::scalar::Real;

/// `ω^k = e^{2πik/d}` for `k = 0..d`, computed in f64 before narrowing.
pub fn omega_table<T: Real>(d: u32) -> Vec<Complex<T>> {
    (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64;
            Complex::new(T::lit(theta.cos()), T::lit(theta.sin()))
        })
        .collect()
}

/// Digits of `index` in base `d`, most significant first.
pub fn index_digits(mut index: usize, n: usize, d: u32) -> Vec<u32> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = (index % d as usize) as u32;
        index /= d as usize;
    }
    out
}

/// Inverse of [`index_digits`].
pub fn digits_index(digits: &[u32], d: u32) -> usize {
    digits.iter().fold(0usize, |acc, &x| acc * d as usize + x as usize)
}

/// Single- and two-qudit gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    /// `X^a|i⟩ = |i+a⟩`
    X { q: usize, a: u32 },
    /// `Z^a|i⟩ = ω^{ia}|i⟩`
    Z { q: usize, a: u32 },
    /// `H|i⟩ = d^{-1/2} Σ_l ω^{il}|l⟩`
    H { q: usize },
    /// `H†|i⟩ = d^{-1/2} Σ_l ω^{-il}|l⟩`
    Hdag { q: usize },
    /// `CZ^β|i,j⟩ = ω^{ijβ}|i,j⟩`
    CZ { q1: usize, q2: usize, beta: u32 },
    /// `CX^γ|i,j⟩ = |i, i+j+γ⟩`, control first.
    CX { control: usize, target: usize, gamma: u32 },
}

impl Gate {
    fn qudits(&self) -> Vec<usize> {
        match *self {
            Gate::X { q, .. } | Gate::Z { q, .. } | Gate::H { q } | Gate::Hdag { q } => vec![q],
            Gate::CZ { q1, q2, .. } => vec![q1, q2],
            Gate::CX { control, target, .. } => vec![control, target],
        }
    }
}

/// Dense amplitude vector of `n` qudits of dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    n: usize,
    dim: PrimeDimension,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn from_amplitudes(dim: PrimeDimension, n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        let len = check_cap(dim.get() as u64, n)?;
        if amps.len() != len {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {n} qudits of dimension {dim}",
                amps.len()
            )));
        }
        Ok(Self { n, dim, amps })
    }

    pub fn zeros(dim: PrimeDimension, n: usize) -> Result<Self> {
        let len = check_cap(dim.get() as u64, n)?;
        Ok(Self { n, dim, amps: vec![Complex::new(T::zero(), T::zero()); len] })
    }

    /// Computational basis state `|digits⟩`.
    pub fn basis(dim: PrimeDimension, digits: &[u32]) -> Result<Self> {
        let mut s = Self::zeros(dim, digits.len())?;
        if digits.iter().any(|&x| x >= dim.get()) {
            return Err(Error::InvalidArgument("basis digit out of range".into()));
        }
        s.amps[digits_index(digits, dim.get())] = Complex::new(T::one(), T::zero());
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> PrimeDimension {
        self.dim
    }

    pub fn amps(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub fn amplitude(&self, digits: &[u32]) -> Complex<T> {
        self.amps[digits_index(digits, self.dim.get())]
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn normalized(&self) -> Self {
        let norm = self.norm_sqr().sqrt();
        let mut out = self.clone();
        if norm > T::zero() {
            out.amps.iter_mut().for_each(|a| *a = *a / norm);
        }
        out
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.check_shape(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_shape(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm())))
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "states of {} and {} qudits (d = {} vs {})",
                self.n, other.n, self.dim, other.dim
            )));
        }
        Ok(())
    }

    fn stride(&self, q: usize) -> usize {
        (self.dim.get() as usize).pow((self.n - 1 - q) as u32)
    }

    /// Applies `gate`, returning the new state.
    pub fn apply_gate(&self, gate: Gate) -> Result<Self> {
        let qs = gate.qudits();
        for &q in &qs {
            if q >= self.n {
                return Err(Error::VertexOutOfRange { vertex: q, n: self.n });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidArgument("two-qudit gate on a single qudit".into()));
        }
        let d = self.dim.get();
        let du = d as usize;
        let omega = omega_table::<T>(d);
        let mut out = self.clone();
        match gate {
            Gate::X { q, a } => {
                let s = self.stride(q);
                for (idx, amp) in self.amps.iter().enumerate() {
                    let i = idx / s % du;
                    let j = (i + a as usize) % du;
                    out.amps[idx - i * s + j * s] = *amp;
                }
            }
            Gate::Z { q, a } => {
                let s = self.stride(q);
                for (idx, amp) in out.amps.iter_mut().enumerate() {
                    let i = (idx / s % du) as u32;
                    *amp = *amp * omega[(i * a % d) as usize];
                }
            }
            Gate::H { q } => out = self.apply_fourier(q, false),
            Gate::Hdag { q } => out = self.apply_fourier(q, true),
            Gate::CZ { q1, q2, beta } => {
                let (s1, s2) = (self.stride(q1), self.stride(q2));
                for (idx, amp) in out.amps.iter_mut().enumerate() {
                    let i = (idx / s1 % du) as u32;
                    let j = (idx / s2 % du) as u32;
                    *amp = *amp * omega[(i * j % d * beta % d) as usize];
                }
            }
            Gate::CX { control, target, gamma } => {
                let (sc, st) = (self.stride(control), self.stride(target));
                for (idx, amp) in self.amps.iter().enumerate() {
                    let i = idx / sc % du;
                    let j = idx / st % du;
                    let k = (i + j + gamma as usize) % du;
                    out.amps[idx - j * st + k * st] = *amp;
                }
            }
        }
        Ok(out)
    }

    fn apply_fourier(&self, q: usize, inverse: bool) -> Self {
        let d = self.dim.get();
        let du = d as usize;
        let omega = omega_table::<T>(d);
        let scale = T::one() / T::lit(d as f64).sqrt();
        let mut m = vec![Complex::new(T::zero(), T::zero()); du * du];
        for i in 0..du {
            for l in 0..du {
                let e = (i * l) % du;
                let e = if inverse { (du - e) % du } else { e };
                // m[l][i] = <l|H|i>
                m[l * du + i] = omega[e] * scale;
            }
        }
        self.apply_local_matrix_unchecked(q, &m)
    }

    /// Applies a dense `d×d` matrix (row-major, `m[row*d+col] = ⟨row|M|col⟩`) to qudit `q`.
    pub fn apply_local_matrix(&self, q: usize, m: &[Complex<T>]) -> Result<Self> {
        let du = self.dim.get() as usize;
        if q >= self.n {
            return Err(Error::VertexOutOfRange { vertex: q, n: self.n });
        }
        if m.len() != du * du {
            return Err(Error::DimensionMismatch(format!("{} entries for a {du}x{du} gate", m.len())));
        }
        Ok(self.apply_local_matrix_unchecked(q, m))
    }

    fn apply_local_matrix_unchecked(&self, q: usize, m: &[Complex<T>]) -> Self {
        let du = self.dim.get() as usize;
        let s = self.stride(q);
        let zero = Complex::new(T::zero(), T::zero());
        let mut out = self.clone();
        let mut local = vec![zero; du];
        for base in 0..self.amps.len() {
            if base / s % du != 0 {
                continue;
            }
            for (i, slot) in local.iter_mut().enumerate() {
                *slot = self.amps[base + i * s];
            }
            for row in 0..du {
                let mut acc = zero;
                for (col, v) in local.iter().enumerate() {
                    acc = acc + m[row * du + col] * v;
                }
                out.amps[base + row * s] = acc;
            }
        }
        out
    }

    /// Applies gates in order.
    pub fn apply_all(&self, gates: &[Gate]) -> Result<Self> {
        let mut s = self.clone();
        for &g in gates {
            s = s.apply_gate(g)?;
        }
        Ok(s)
    }
}

/// `|+⟩^{⊗n}` with amplitudes `d^{-n/2}`.
pub fn plus_state<T: Real>(n: usize, dim: PrimeDimension) -> Result<StateVector<T>> {
    let len = check_cap(dim.get() as u64, n)?;
    let a = T::one() / T::lit(len as f64).sqrt();
    StateVector::from_amplitudes(dim, n, vec![Complex::new(a, T::zero()); len])
}

/// Free-function form of [`StateVector::apply_gate`].
pub fn apply_gate<T: Real>(s: &StateVector<T>, gate: Gate) -> Result<StateVector<T>> {
    s.apply_gate(gate)
}

/// `∏ CZ^{Γ_kj} |+⟩^{⊗n}`, applying edges in declaration order.
pub fn build_graph_state<T: Real>(g: &WeightedGraph) -> Result<StateVector<T>> {
    build_graph_state_ordered(g, &(0..g.edges().len()).collect::<Vec<_>>())
}

/// As [`build_graph_state`] with edges applied in the given order.
pub fn build_graph_state_ordered<T: Real>(
    g: &WeightedGraph,
    order: &[usize],
) -> Result<StateVector<T>> {
    let mut s = plus_state::<T>(g.n(), g.dim())?;
    for &i in order {
        let e = g.edges()[i];
        s = s.apply_gate(Gate::CZ { q1: e.u, q2: e.v, beta: e.weight })?;
    }
    Ok(s)
}

/// `|⟨a|b⟩|²`.
pub fn fidelity_up_to_phase<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<T> {
    Ok(a.inner(b)?.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u32) -> PrimeDimension {
        PrimeDimension::new(d).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn plus_examples() {
        let s = plus_state::<f64>(1, dim(2)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(s.amps().iter().all(|a| (a - c(h, 0.0)).norm() < 1e-15));
        let s = plus_state::<f64>(2, dim(2)).unwrap();
        assert!(s.amps().iter().all(|a| (a - c(0.5, 0.0)).norm() < 1e-15));
        let s = plus_state::<f64>(1, dim(3)).unwrap();
        assert_eq!(s.amps().len(), 3);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gate_examples() {
        let zero = StateVector::<f64>::basis(dim(2), &[0]).unwrap();
        let one = zero.apply_gate(Gate::X { q: 0, a: 1 }).unwrap();
        assert_eq!(one, StateVector::basis(dim(2), &[1]).unwrap());

        let s = StateVector::<f64>::basis(dim(3), &[1]).unwrap();
        let z = s.apply_gate(Gate::Z { q: 0, a: 2 }).unwrap();
        let w2 = c((4.0 * std::f64::consts::PI / 3.0).cos(), (4.0 * std::f64::consts::PI / 3.0).sin());
        assert!((z.amplitude(&[1]) - w2).norm() < 1e-15);

        let s = StateVector::<f64>::basis(dim(3), &[1, 1]).unwrap();
        let t = s.apply_gate(Gate::CX { control: 0, target: 1, gamma: 1 }).unwrap();
        assert_eq!(t, StateVector::basis(dim(3), &[1, 0]).unwrap());
    }

    #[test]
    fn cx_control_order_matters() {
        let s = StateVector::<f64>::basis(dim(3), &[2, 0]).unwrap();
        let a = s.apply_gate(Gate::CX { control: 0, target: 1, gamma: 0 }).unwrap();
        let b = s.apply_gate(Gate::CX { control: 1, target: 0, gamma: 0 }).unwrap();
        assert_eq!(a, StateVector::basis(dim(3), &[2, 2]).unwrap());
        assert_eq!(b, s);
    }

    #[test]
    fn k2_graph_state() {
        let g = WeightedGraph::unit(dim(2), 2, &[(0, 1)]).unwrap();
        let s = build_graph_state::<f64>(&g).unwrap();
        let want = [0.5, 0.5, 0.5, -0.5];
        for (a, w) in s.amps().iter().zip(want) {
            assert!((a - c(w, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn edgeless_is_plus() {
        let g = WeightedGraph::empty(dim(3), 3);
        let s = build_graph_state::<f64>(&g).unwrap();
        assert!(s.max_abs_diff(&plus_state(3, dim(3)).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn fidelity_examples() {
        let s = plus_state::<f64>(2, dim(3)).unwrap().apply_gate(Gate::CZ { q1: 0, q2: 1, beta: 2 }).unwrap();
        assert!((fidelity_up_to_phase(&s, &s).unwrap() - 1.0).abs() < 1e-12);
        let phased = StateVector::from_amplitudes(
            s.dim(),
            2,
            s.amps().iter().map(|a| a * Complex::from_polar(1.0, 0.7)).collect(),
        )
        .unwrap();
        assert!((fidelity_up_to_phase(&s, &phased).unwrap() - 1.0).abs() < 1e-12);
        let z = StateVector::<f64>::basis(dim(2), &[0]).unwrap();
        let o = StateVector::<f64>::basis(dim(2), &[1]).unwrap();
        assert_eq!(fidelity_up_to_phase(&z, &o).unwrap(), 0.0);
        assert!(fidelity_up_to_phase(&z, &s).is_err());
    }

    #[test]
    fn index_convention() {
        assert_eq!(digits_index(&[1, 0, 2], 3), 11);
        assert_eq!(index_digits(11, 3, 3), vec![1, 0, 2]);
    }

    #[test]
    fn out_of_range_qudit() {
        let s = plus_state::<f64>(2, dim(2)).unwrap();
        assert!(s.apply_gate(Gate::H { q: 2 }).is_err());
        assert!(s.apply_gate(Gate::CZ { q1: 1, q2: 1, beta: 1 }).is_err());
    }

    #[test]
    fn single_precision_graph_state() {
        let g = WeightedGraph::unit(dim(3), 3, &[(0, 1), (1, 2)]).unwrap();
        let s32 = build_graph_state::<f32>(&g).unwrap();
        let s64 = build_graph_state::<f64>(&g).unwrap();
        for (a, b) in s32.amps().iter().zip(s64.amps()) {
            assert!((a.re as f64 - b.re).abs() < 1e-6 && (a.im as f64 - b.im).abs() < 1e-6);
        }
    }
}
