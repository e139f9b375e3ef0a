use std::collections::BTreeMap;

use serde::Serialize;

use super::{reference_state, ClosedForm};
use crate::error::{Error, Result};
use crate::field::{advance, row_times, FieldMatrix};
use crate::graph::{SpecialClassStructure, WeightedGraph};
use crate::limits::check_cap;
use crate::scalar::Real;
use crate::simulator::{digits_index, fidelity_up_to_phase, omega_table, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SiteOp {
    X,
    Z,
}

/// One factor of Δ: `Z^{f_k}` on a green or `X^{f_k}` on a `B_c` blue, with
/// `f_k = Σ_r Γ_rk u_r` stored as one coefficient per red vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaSite {
    pub vertex: usize,
    pub op: SiteOp,
    pub coeffs: Vec<u32>,
}

impl DeltaSite {
    pub fn exponent(&self, u: &[u32], d: u32) -> u32 {
        let s: u64 = self.coeffs.iter().zip(u).map(|(&c, &x)| c as u64 * x as u64).sum();
        (s % d as u64) as u32
    }
}

/// Inner two-colorable factor `Σ_g |g·[I | A_{G,B_c∖G}]⟩` with its Δ sites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentForm {
    pub greens: Vec<usize>,
    pub blues: Vec<usize>,
    /// Columns are `greens` then `blues`.
    pub generator: FieldMatrix,
    /// Sorted by vertex.
    pub sites: Vec<DeltaSite>,
}

/// Factored special-class form `Σ_u |u·G_out⟩ ⊗_k Δ_k Σ_{g_k} |g_k·G_k⟩`
/// together with its canonical closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialForm {
    pub structure: SpecialClassStructure,
    /// `[I_{n_R} | A_{R,B_u}]`, columns are reds then `B_u`.
    pub outer_generator: FieldMatrix,
    pub components: Vec<ComponentForm>,
    #[serde(skip)]
    pub base: ClosedForm,
}

impl SpecialForm {
    pub fn base(&self) -> &ClosedForm {
        &self.base
    }

    /// Columns of the outer generator.
    pub fn outer_vertices(&self) -> Vec<usize> {
        [self.structure.red.as_slice(), self.structure.blue_u.as_slice()].concat()
    }
}

fn check_structure(g: &WeightedGraph, s: &SpecialClassStructure) -> Result<()> {
    let n = g.n();
    let mut role = vec![None; n];
    let mut mark = |v: usize, r: (u8, usize)| -> Result<()> {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if role[v].replace(r).is_some() {
            return Err(Error::InvalidArgument(format!("vertex {v} appears twice in structure")));
        }
        Ok(())
    };
    for &v in &s.red {
        mark(v, (0, 0))?;
    }
    for &v in &s.blue_u {
        mark(v, (1, 0))?;
    }
    for (k, c) in s.components.iter().enumerate() {
        for &v in &c.greens {
            mark(v, (2, k))?;
        }
        for &v in &c.blues {
            mark(v, (3, k))?;
        }
    }
    if let Some(v) = role.iter().position(Option::is_none) {
        return Err(Error::InvalidArgument(format!("vertex {v} missing from structure")));
    }
    for e in g.edges() {
        let (a, b) = (role[e.u].unwrap(), role[e.v].unwrap());
        let ok = match (a.0.min(b.0), a.0.max(b.0)) {
            (0, 0) => false,
            (0, _) => true,
            (2, 3) => a.1 == b.1,
            _ => false,
        };
        if !ok {
            return Err(Error::NotApplicable(format!(
                "edge {{{},{}}} violates the special-class zero blocks",
                e.u, e.v
            )));
        }
    }
    if s.red.len() > s.blue_u.len() {
        return Err(Error::NotApplicable(format!(
            "n_R = {} exceeds n_Bu = {}",
            s.red.len(),
            s.blue_u.len()
        )));
    }
    for (k, c) in s.components.iter().enumerate() {
        if c.greens.len() > c.blues.len() {
            return Err(Error::NotApplicable(format!(
                "component {}: n_G = {} exceeds n_Bc\\G = {}",
                k + 1,
                c.greens.len(),
                c.blues.len()
            )));
        }
    }
    Ok(())
}

/// Builds the Δ-factored form and its canonical `(G, Q)` counterpart.
pub fn compile_special(g: &WeightedGraph, s: &SpecialClassStructure) -> Result<SpecialForm> {
    check_structure(g, s)?;
    let dim = g.dim();
    let gamma = g.gamma();
    let nr = s.red.len();

    let outer_generator = FieldMatrix::identity(dim, nr).hconcat(&gamma.select(&s.red, &s.blue_u))?;

    let components = s
        .components
        .iter()
        .map(|c| -> Result<ComponentForm> {
            let generator = FieldMatrix::identity(dim, c.greens.len())
                .hconcat(&gamma.select(&c.greens, &c.blues))?;
            let mut sites: Vec<DeltaSite> = c
                .greens
                .iter()
                .map(|&v| (v, SiteOp::Z))
                .chain(c.blues.iter().map(|&v| (v, SiteOp::X)))
                .map(|(vertex, op)| DeltaSite {
                    vertex,
                    op,
                    coeffs: s.red.iter().map(|&r| g.weight(r, vertex)).collect(),
                })
                .collect();
            sites.sort_by_key(|x| x.vertex);
            Ok(ComponentForm { greens: c.greens.clone(), blues: c.blues.clone(), generator, sites })
        })
        .collect::<Result<Vec<_>>>()?;

    let free = s.free_vertices();
    let (chi, sizes) = if s.components.is_empty() {
        (2, vec![nr, s.blue_u.len()])
    } else {
        (3, vec![nr, s.greens().len(), s.blues().len()])
    };
    let base = ClosedForm::from_free_vertices(g, &free, chi, sizes)?;
    Ok(SpecialForm { structure: s.clone(), outer_generator, components, base })
}

/// Exact expansion of the factored form: outer kets, Δ layer, inner kets.
pub fn expand_special_exact(sf: &SpecialForm) -> Result<BTreeMap<usize, Vec<u64>>> {
    let n = sf.base.n();
    let d = sf.base.dim().get();
    let nr = sf.structure.red.len();
    let m = sf.base.m();
    let total = check_cap(d as u64, m)?;
    let outer_cols = sf.outer_vertices();

    let mut w = vec![0u32; m];
    let mut ket = vec![0u32; n];
    let mut outer = vec![0u32; outer_cols.len()];
    let mut out: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for _ in 0..total {
        let (u, rest) = w.split_at(nr);
        row_times(&sf.outer_generator, u, &mut outer);
        for (&v, &x) in outer_cols.iter().zip(&outer) {
            ket[v] = x;
        }
        let mut phase = 0u64;
        let mut offset = 0;
        for comp in &sf.components {
            let gk = &rest[offset..offset + comp.greens.len()];
            offset += comp.greens.len();
            let mut inner = vec![0u32; comp.generator.cols()];
            row_times(&comp.generator, gk, &mut inner);
            for (&v, &x) in comp.greens.iter().chain(&comp.blues).zip(&inner) {
                ket[v] = x;
            }
            for site in &comp.sites {
                let f = site.exponent(u, d);
                match site.op {
                    SiteOp::X => ket[site.vertex] = (ket[site.vertex] + f) % d,
                    SiteOp::Z => phase += f as u64 * ket[site.vertex] as u64,
                }
            }
        }
        let e = (phase % d as u64) as usize;
        out.entry(digits_index(&ket, d)).or_insert_with(|| vec![0; d as usize])[e] += 1;
        advance(&mut w, d);
    }
    Ok(out)
}

/// Normalized state of the factored form.
pub fn expand_special<T: Real>(sf: &SpecialForm) -> Result<StateVector<T>> {
    let d = sf.base.dim().get();
    let hist = expand_special_exact(sf)?;
    let omega = omega_table::<T>(d);
    let scale = T::one() / T::lit(d as f64).powi(sf.base.m() as i32).sqrt();
    let mut amps = StateVector::<T>::zeros(sf.base.dim(), sf.base.n())?.into_amps();
    for (idx, counts) in hist {
        for (e, &c) in counts.iter().enumerate() {
            if c > 0 {
                amps[idx] = amps[idx] + omega[e] * (scale * T::lit(c as f64));
            }
        }
    }
    StateVector::from_amplitudes(sf.base.dim(), sf.base.n(), amps)
}

/// Fidelity of the factored expansion against the graph state with `H†` on
/// `B_u` and every `B_c∖G`.
pub fn verify_special<T: Real>(sf: &SpecialForm, g: &WeightedGraph) -> Result<T> {
    let reference = reference_state::<T>(g, &sf.structure.blues())?;
    fidelity_up_to_phase(&reference, &expand_special::<T>(sf)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{compile_two_color, expand_exact, passes};
    use crate::field::PrimeDimension;
    use crate::graph::{chromatic_coloring, detect_special_class};

    fn example_one(d: u32) -> WeightedGraph {
        let mut edges = Vec::new();
        for r in 0..4 {
            for b in 4..13 {
                edges.push((r, b));
            }
        }
        edges.extend([(10, 11), (11, 12)]);
        let mut hint = vec![0u32; 4];
        hint.extend([2; 6]);
        hint.extend([2, 1, 2]);
        WeightedGraph::unit(PrimeDimension::new(d).unwrap(), 13, &edges)
            .unwrap()
            .with_color_hint(Some(hint))
            .unwrap()
    }

    #[test]
    fn example_one_factors() {
        let g = example_one(2);
        let c = chromatic_coloring(&g, g.color_hint()).unwrap();
        let s = detect_special_class(&g, &c).accepted().cloned().unwrap();
        let sf = compile_special(&g, &s).unwrap();
        assert_eq!(sf.components.len(), 1);
        let sites = &sf.components[0].sites;
        assert_eq!(sites.iter().map(|x| x.op).collect::<Vec<_>>(), [SiteOp::X, SiteOp::Z, SiteOp::X]);
        assert!(sites.iter().all(|x| x.coeffs == vec![1, 1, 1, 1]));
        assert_eq!(sf.components[0].generator.to_rows(), vec![vec![1, 1, 1]]);
        assert_eq!(expand_special_exact(&sf).unwrap(), expand_exact(&sf.base).unwrap());
        assert!(passes(verify_special::<f64>(&sf, &g).unwrap()));
        assert!(passes(crate::closedform::verify::<f64>(&sf.base, &g).unwrap()));
    }

    #[test]
    fn degenerate_matches_two_color() {
        let d = PrimeDimension::new(3).unwrap();
        let g = WeightedGraph::from_edges(d, 5, &[(0, 2, 1), (0, 3, 2), (1, 3, 1), (1, 4, 2)]).unwrap();
        let c = chromatic_coloring(&g, None).unwrap();
        let s = detect_special_class(&g, &c).accepted().cloned().unwrap();
        let sf = compile_special(&g, &s).unwrap();
        assert_eq!(sf.base, compile_two_color(&g, &c).unwrap());
    }

    #[test]
    fn rejects_violated_structure() {
        let g = example_one(2);
        let c = chromatic_coloring(&g, g.color_hint()).unwrap();
        let mut s = detect_special_class(&g, &c).accepted().cloned().unwrap();
        s.blue_u.truncate(2);
        assert!(compile_special(&g, &s).is_err());
    }
}
