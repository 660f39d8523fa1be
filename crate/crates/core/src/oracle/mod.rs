//! Ground truth by direct enumeration of factorisations in `S_d`.

mod count;
pub mod graph;
pub mod lemma;
pub mod permutation;
pub(crate) mod search;

pub(crate) use count::CycleTypeClass;
pub use count::{count_factorisations, count_refined, steps, Budget, Flavor, Mode, Oracle};
pub use permutation::{Composition, Permutation};
pub use search::for_each_sequence;
