//! Inputs shared by the benchmarks.

use adc_core::{cube, simplex, tensor, AugmentedComplex};

pub type Build = fn() -> AugmentedComplex;

/// Constructors for complexes of increasing size, with a short label for each.
///
/// Atom tables are cached inside a complex, so benchmarks that time atom
/// computation build a fresh complex per iteration.
pub fn complexes() -> Vec<(&'static str, Build)> {
    vec![
        ("simplex3", || simplex(3)),
        ("simplex5", || simplex(5)),
        ("cube3", || cube(3)),
        ("tensor_s2_s2", || {
            tensor(&simplex(2), &simplex(2)).expect("based factors")
        }),
    ]
}
