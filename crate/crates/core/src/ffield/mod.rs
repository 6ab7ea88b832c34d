//! Finite fields GF(p^e) with q ≤ 256, dense matrices and polynomials.

mod echelon;
mod field;
mod mat;
mod poly;

pub use echelon::SemiEchelon;
pub use field::{Elem, Field, MAX_Q};
pub use mat::{grease_depth, set_grease_depth, Echelon, Mat};
pub use poly::{char_poly, char_poly_factors, min_poly, Poly};
