//! Group-theoretic engine for decomposing Jacobians of branched covers.
//!
//! Given combinatorial cover data (genera, degrees, ramification structure of
//! a tower `X -> Y -> P1`), this crate enumerates the possible monodromy data,
//! builds the Galois closure `Z -> P1` together with its group `G`, computes
//! exact character tables and the Chevalley-Weil decomposition of the space of
//! regular differentials of `Z`, and searches for quotient curves `C = Z/H`
//! whose Jacobians realize the Prym variety of `X -> Y` up to isogeny.
//!
//! No curve equations appear anywhere: everything runs on permutations,
//! characters and exact cyclotomic arithmetic.

pub mod chartab;
pub mod covers;
pub mod cyclo;
pub mod enumerate;
pub mod perm;
pub mod prym;

pub use chartab::CharacterTable;
pub use covers::{CoverType, MonodromyDatum, Quadruple, RamificationStructure};
pub use cyclo::{CyclotomicNumber, Rational};
pub use perm::{PermGroup, Permutation, SubgroupHandle};

