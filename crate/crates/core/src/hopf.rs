//! Concrete graded connected commutative Hopf algebras on rooted trees,
//! with the ladder subalgebra as a second family.

pub mod element;
pub mod forest;
pub mod tree;

pub use element::{
    HopfElement, HopfTensor, antipode, antipode_elem, coproduct, coproduct_elem, reduced_coproduct,
};
pub use forest::{Forest, forests_of_degree, forests_up_to};
pub use tree::{RootedTree, TreeFamily, trees_of_degree};
