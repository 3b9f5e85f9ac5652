//! Exact algebra: free-group words, integral group rings, Laurent
//! polynomials, Fox derivatives and the alpha/tau/nu specializations.

pub mod fox;
pub mod laurent;
pub mod ring;
pub mod word;

pub use fox::{derivative_of_relator, fox_derivative, nu, specialize, specialize_word, tau};
pub use laurent::{laurent_gcd, LaurentPoly};
pub use ring::GroupRingElement;
pub use word::{is_cyclic_permutation, FreeWord, Generator, Letter, Provenance};
