//! Free-group words: a small text grammar, evaluation on permutations, the
//! value set `G_w` and the verbal subgroup `w(G)`.

mod syntax;
mod values;

pub use syntax::{parse_word, Word};
pub use values::{
    generated_by_values, verbal_subgroup, word_values, word_values_brute_force, ValueSet, ValueSource,
};
