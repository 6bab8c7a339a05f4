//! Algebraic numbers as (minimal polynomial, canonical root index) with
//! certified conjugate enclosures.

mod combine;
mod number;
pub mod roots;
mod unity;

pub use combine::{annihilator, locate_root, sign_of_real, value_ball, CombineOp};
pub use number::{separation_sqr_lower_bound, AlgebraicNumber, ModulusClass};
pub use roots::{isolate_roots, ConjugateSet};
pub use unity::{quotient_annihilator, quotient_unity_order, unity_order_of_root};
