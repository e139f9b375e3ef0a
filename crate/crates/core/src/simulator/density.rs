use num_complex::Complex;

use super::StateVector;
use crate::error::{Error, Result};
use crate::field::PrimeDimension;
use crate::limits::check_cap;
use crate::scalar::Real;
use crate::subsets::combinations;

/// Reduced density matrix on `keep` (ascending), row-major `D×D` with `D = d^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    keep: Vec<usize>,
    dim: PrimeDimension,
    size: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn k(&self) -> usize {
        self.keep.len()
    }

    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn dim(&self) -> PrimeDimension {
        self.dim
    }

    /// Side length `d^k`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.entries[r * self.size + c]
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.size).fold(Complex::new(T::zero(), T::zero()), |acc, i| acc + self.get(i, i))
    }

    /// Largest `|ρ_rc − conj(ρ_cr)|`.
    pub fn hermiticity_error(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.size {
            for c in 0..self.size {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise deviation from `I / d^k`.
    pub fn mixed_residual(&self) -> T {
        let diag = T::one() / T::lit(self.size as f64);
        let mut worst = T::zero();
        for r in 0..self.size {
            for c in 0..self.size {
                let target = if r == c { diag } else { T::zero() };
                worst = worst.max((self.get(r, c) - Complex::new(target, T::zero())).norm());
            }
        }
        worst
    }
}

/// Traces out every qudit not in `keep`.
pub fn partial_trace<T: Real>(s: &StateVector<T>, keep: &[usize]) -> Result<DensityMatrix<T>> {
    let n = s.n();
    let d = s.dim().get() as usize;
    if keep.is_empty() {
        return Err(Error::InvalidArgument("keep set is empty".into()));
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&q| q >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    check_cap(d as u64, 2 * keep.len())?;
    let size = d.pow(keep.len() as u32);
    let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let rest_size = d.pow(rest.len() as u32);
    let strides: Vec<usize> = (0..n).map(|q| d.pow((n - 1 - q) as u32)).collect();

    let offsets = |qs: &[usize], count: usize| -> Vec<usize> {
        (0..count)
            .map(|mut x| {
                let mut off = 0;
                for &q in qs.iter().rev() {
                    off += (x % d) * strides[q];
                    x /= d;
                }
                off
            })
            .collect()
    };
    let keep_off = offsets(&keep, size);
    let rest_off = offsets(&rest, rest_size);

    let zero = Complex::new(T::zero(), T::zero());
    let amps = s.amps();
    let mut entries = vec![zero; size * size];
    for &ro in &rest_off {
        for (r, &kr) in keep_off.iter().enumerate() {
            let a = amps[kr + ro];
            if a == zero {
                continue;
            }
            for (c, &kc) in keep_off.iter().enumerate() {
                entries[r * size + c] = entries[r * size + c] + a * amps[kc + ro].conj();
            }
        }
    }
    Ok(DensityMatrix { keep, dim: s.dim(), size, entries })
}

/// Largest residual from `I/d^k` over every `k`-subset of qudits.
pub fn max_mixed_residual<T: Real>(s: &StateVector<T>, k: usize) -> Result<T> {
    let mut worst = T::zero();
    for subset in combinations(s.n(), k) {
        worst = worst.max(partial_trace(s, &subset)?.mixed_residual());
    }
    Ok(worst)
}

/// Largest `k ≤ ⌊n/2⌋` with every `k`-party reduction maximally mixed to
/// within `tol`, checked exhaustively; 0 if some single-qudit reduction fails.
pub fn k_uniformity<T: Real>(s: &StateVector<T>, tol: T) -> Result<usize> {
    let mut best = 0;
    for k in 1..=s.n() / 2 {
        if max_mixed_residual(s, k)? > tol {
            break;
        }
        best = k;
    }
    Ok(best)
}
