//! Presentations, abelianizations, certified rewriting and Reidemeister–Schreier
//! computations for the groups Γ_n^4 generated by ordered 4-tuples, and their signed and
//! increasing-order relatives.

pub mod error;
pub mod groups;
pub mod homs;
pub mod lattice;
pub mod presentation;
pub mod report;
pub mod schreier;
pub mod symchar;
pub mod verify;
pub mod word;

pub use error::{KmError, Result};
pub use lattice::{AbelianInvariants, SparseIntMatrix};
pub use presentation::{Family, Mode, Presentation, PresentationMeta};
pub use word::{free_reduce, GenSymbol, Letter, Word};
