//! Strongly clean decompositions `A = E + U` of square matrices over finite
//! Henselian local rings and their CRT products.
//!
//! Every matrix over `Z/p^k` or `F_p[t]/(t^k)` splits as an idempotent plus a
//! commuting unit. The decomposition is computed from the characteristic
//! polynomial: split it as `g * h` where `g` collects the residue roots at
//! zero, lift a Bézout identity `u*g + v*h = 1`, and take `E = v(A) h(A)`.
//! The [`oracle`] module checks the algorithms against brute force.

pub mod error;
pub mod hensel;
pub mod matclean;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod rings;

pub use error::{Error, Result};
pub use hensel::{
    bezout_lift, hensel_lift, local_factorization, split_at_zero, HenselFactorization, LocalFactorList, ZeroSplit,
};
pub use matclean::{
    idempotent_split_basis, pi_regular_witness, poly_reduce_via_matrix, strongly_clean_decompose, verify_decomposition,
    CleanCase, CleanDecomposition, PiRegularWitness, VerifyFailure,
};
pub use matrix::Mat;
pub use poly::{factor_residue, xgcd_residue, Poly, ResiduePoly};
pub use rings::{crt_combine, crt_split, enumerate, Elem, Family, ResidueElem, RingElem, RingSpec};
