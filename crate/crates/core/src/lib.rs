//! Graded commutative algebra over `F_p` and `Z_(p)` for Gorenstein duality
//! computations: Gröbner bases, free resolutions, Ext, local cohomology,
//! Matlis duality and chart manipulation.

pub mod chart;
pub mod coeff;
pub mod degreewise;
pub mod duality;
pub mod complex;
pub mod error;
pub mod graded;
pub mod groebner;
pub mod linalg;
pub mod local_cohomology;
pub mod module;
pub mod poly;
pub mod ring;

pub use coeff::{CoefficientRing, Scalar};
pub use error::AlgebraError;
pub use linalg::{GroupDescriptor, Matrix};
pub use module::ModulePresentation;
pub use poly::{FreeMap, FreeModule, FreeVector, Monomial, Poly};
pub use ring::{GradedRing, ShiftResult};
