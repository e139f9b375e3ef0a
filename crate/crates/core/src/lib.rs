//! Qudit graph states from colored graphs: closed-form compilation, dense
//! simulation, orthogonal arrays, and entanglement bounds.
//!
//! ```
//! use chromastate::{chromatic_coloring, compile_chi_color, verify, PrimeDimension, WeightedGraph};
//!
//! let d = PrimeDimension::new(3).unwrap();
//! let triangle = WeightedGraph::unit(d, 3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
//! let coloring = chromatic_coloring(&triangle, None).unwrap();
//! let form = compile_chi_color(&triangle, &coloring).unwrap();
//! assert!(verify::<f64>(&form, &triangle).unwrap() > 1.0 - 1e-9);
//! ```

pub mod closedform;
pub mod designs;
pub mod entanglement;
pub mod error;
pub mod field;
pub mod graph;
pub mod limits;
pub mod scalar;
pub mod simulator;
pub mod subsets;

pub use closedform::{
    chain_operator_form, compile_chi_color, compile_special, compile_two_color, expand, verify,
    verify_special, ChainForm, ClosedForm, SpecialForm,
};
pub use error::{Error, Result};
pub use field::{FieldMatrix, FieldVector, PrimeDimension};
pub use graph::{chromatic_coloring, Coloring, WeightedGraph};
pub use scalar::Real;

pub type StateVectorF64 = simulator::StateVector<f64>;
pub type StateVectorF32 = simulator::StateVector<f32>;
pub type DensityMatrixF64 = simulator::DensityMatrix<f64>;
pub type DensityMatrixF32 = simulator::DensityMatrix<f32>;
