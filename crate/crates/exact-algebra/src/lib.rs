//! Exact arithmetic for the small rings that show up in mod-p deformation
//! arguments: prime fields, their extensions, Galois rings `Z/p^k` with
//! unramified extensions, rationals, quadratic and cyclotomic extensions of
//! the rationals, two-variable rational function fields, and square-zero
//! extensions of finite fields.
//!
//! Rings are runtime values ([`ring::Ring`]), elements are plain data
//! ([`ring::Elem`]), and every operation is mediated by the ring, so a
//! matrix knows where its entries live and mixed-ring arithmetic is a bug
//! caught at the boundary.  On top of that sit dense matrices with
//! division-free characteristic polynomials, row reduction and quotient
//! spaces over fields, Smith normal form over discrete valuation data,
//! Jordan-Chevalley decomposition, nilpotent exp/log, and symmetric powers
//! of 2x2 matrices.
//!
//! Everything is exact; there are no floats anywhere.

pub mod error;
pub mod jordan;
pub mod linalg;
pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod ring;
pub mod snf;
pub mod sympow;

pub use error::{AlgebraError, Result};
pub use jordan::{jordan_chevalley, min_poly, nilpotent_exp, nilpotency_degree, unipotent_log};
pub use linalg::{kernel_basis, rank, solve, QuotientSpace, RrefBuilder, Subspace};
pub use matrix::Matrix;
pub use ring::{Elem, Ring};
pub use snf::{smith_normal_form, SmithNormalForm, Valuation};
pub use sympow::sym_power;
