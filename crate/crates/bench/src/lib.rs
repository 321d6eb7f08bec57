//! Shared fixtures for the benchmarks.

use km_core::groups::build;
use km_core::{Family, Mode, Presentation, SparseIntMatrix};

/// Full presentation of a family, panicking on bad input since fixtures are fixed.
pub fn group(family: Family, n: usize) -> Presentation {
    build(family, n, Mode::Full).expect("fixture parameters are valid")
}

pub fn relation_matrix(family: Family, n: usize) -> SparseIntMatrix {
    group(family, n).abelianized_relation_matrix()
}
