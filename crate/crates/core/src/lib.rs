//! Exact computations with algebraic families of Harish-Chandra modules for
//! `SL(2, R)` over the projective line, their fibers, and the bijection
//! between admissible duals of the group and its Cartan motion group.

pub mod duals;
pub mod families;
pub mod fiber;
pub mod param;
pub mod pbw;
pub mod poly;
pub mod scalar;
pub mod sheaf;
pub mod tables;
pub mod verify;

pub use families::{make_family, tilde_family, KTypeSet, ModuleFamily};
pub use fiber::{evaluate_fiber, FiberModule};
pub use param::{DualParam, Flavor};
pub use pbw::{BasisKind, Monomial, PbwError, Uea};
pub use poly::{Chart, ChartPoly, Polynomial};
pub use scalar::GaussianRational;
pub use sheaf::{FamilySection, ProjectivePoint};

/// Polynomials over `Q(i)`.
pub type Poly = Polynomial<GaussianRational>;
/// Elements of `U(sl2)` over `Q(i)`.
pub type UeaElement = Uea<GaussianRational>;
