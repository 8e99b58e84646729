//! Quasisymmetric functions: compositions, the `M` and `F` bases, products,
//! the bar involution and principal specialization.

mod composition;
mod expr;
mod qpoly;
mod tpoly;

pub use composition::{descent_composition, Composition};
pub use expr::{Basis, QSymExpr};
pub use qpoly::QPolynomial;
pub use tpoly::TQSymPoly;
