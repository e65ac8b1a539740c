//! Solomon's descent algebra: composition basis, the four Zassenhaus series,
//! Dynkin elements, the permutation realization, the word action, and the
//! canonical morphism into the endomorphisms of a Hopf algebra.

pub mod alpha;
pub mod basis_change;
pub mod composition;
pub mod element;
pub mod permutation;
pub mod series;
pub mod word;

pub use alpha::{HopfEndo, alpha_h, compose_linmap};
pub use basis_change::{BasisChange, change_of_basis, expand_in_words, generator_word};
pub use composition::Composition;
pub use element::{DescentElement, DescentTensor, antipode_series, d_exp, d_log, identity_series};
pub use permutation::{
    PERMUTATION_CAP, Perm, PermutationElement, all_perms, from_permutations, internal_product,
    to_permutations,
};
pub use series::{Side, dynkin, exponential_product, zassenhaus};
pub use word::{TensorElement, Word, act_on_word, is_lie_element, left_bracket, lie_bracket};
