//! Executable abstract formal systems: the liar construction, the
//! limitation theorems it yields, and two concrete instances.
//!
//! - [`afs`]: the generic kernel (naming, substitution, representability,
//!   diagonal sets, liar witnesses).
//! - [`logic`]: logical systems with negation, `P` and `T`.
//! - [`presburger`]: additive arithmetic of the naturals, decided by
//!   quantifier elimination, with an even/odd naming that defines truth.
//! - [`quineland`]: a quotation language with a `diag` term, a decidable
//!   printer and a true, unprintable Gödel sentence.

pub mod afs;
pub mod logic;
pub mod presburger;
pub mod quineland;

pub use afs::{
    check_representation, diagonal_name_set, diagonal_sentence, enumerate_sentences, generalized_liar_witness,
    image_under_naming, liar_violation, substitute, AfsError, ExprKind, FormalSystem, LiarFacts, LiarWitness,
    NameSet, Outcome, SentenceSet, Violation, ViolationReport,
};
pub use logic::{LimitationVariant, LogicalSystem, SetSpec, Target};
pub use presburger::Presburger;
pub use quineland::Quineland;
