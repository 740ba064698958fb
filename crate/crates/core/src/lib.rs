//! Exact FI-homology computations for the injective cogenerators
//! `k hom_FI(-, b)^tr` over a field of characteristic zero.

pub mod character;
pub mod conjecture;
pub mod crit;
pub mod decomposition;
pub mod error;
pub mod koszul;
pub mod linalg;
pub mod partition;
pub mod perm;
pub mod tableau;
pub mod theta;
pub mod transfer;
pub mod young_form;

pub use character::{ClassFunction, MonomialAction};
pub use decomposition::DecompositionTable;
pub use error::{FihlError, Result};
pub use partition::{Partition, SkewShape};
pub use perm::Perm;
pub use tableau::StandardTableau;
