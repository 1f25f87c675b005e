//! Explicit lower bounds for Weil heights of algebraic numbers whose
//! conjugates satisfy splitting conditions (totally real, totally p-adic).

pub mod arch;
pub mod arith;
pub mod bounds;
pub mod error;
pub mod local;
pub mod nonarch;
pub mod poly;
pub mod quad;

pub use bounds::{BoundReport, FloorBranch, FloorResult, PlaceTerm, WeightedPlace};
pub use error::{Error, Result};
pub use local::{AlgebraicClass, LocalFieldData, SplittingSpec};
pub use quad::QuadratureResult;
