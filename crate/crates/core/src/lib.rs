pub mod algebra;
pub mod complex;
pub mod derived;
pub mod detect;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod modules;
pub mod poly;
pub mod series;
pub mod sparse;

pub use algebra::{free_rank_over_base, AlgebraJson, BaseChange, LocalAlgebra};
pub use complex::{ChainComplex, ComplexMap};
pub use derived::{bass_truncation, ext_dim, ext_dims, poincare_truncation, tor_dim, tor_dims, FreeResolution};
pub use detect::{Certificate, Outcome, TcStatus, Verdict};
pub use error::{Error, Result};
pub use harness::{run_sweep, Checks, ExperimentRecord, GeneratorSpec, Instance, SweepSummary};
pub use linalg::{Fp, Matrix, Subquotient, Subspace};
pub use modules::{AModule, ModuleMap};
pub use poly::{quotient_algebra, quotient_algebra_from_text, GroebnerBasis, Monomial, MultiPoly};
pub use series::{IntegerPolynomial, RationalSeries};
