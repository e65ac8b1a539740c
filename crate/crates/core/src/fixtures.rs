//! Reusable regularized characters: two closed-form ladder toys and seeded
//! random polar characters. All generation is deterministic for a fixed seed.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::characters::Character;
use crate::error::Result;
use crate::hopf::{RootedTree, TreeFamily, trees_of_degree};
use crate::laurent::LaurentSeries;
use crate::rational::{Rational, inv_factorial, rat};

/// The ladder character φ(l_n) = 1/(n! ε^n): the exponential of the polar
/// degree-one infinitesimal character, so a single stripping step kills it.
pub fn ladder_exponential(truncation: u32) -> Result<Character> {
    let mut tv = BTreeMap::new();
    for n in 1..=truncation {
        tv.insert(
            RootedTree::ladder(n),
            LaurentSeries::monomial(-(n as i32), inv_factorial(n)),
        );
    }
    Character::from_tree_values(TreeFamily::Ladders, truncation, &tv)
}

/// The ladder character φ(l_n) = ε^{-n}, with nontrivial factors at every
/// level.
pub fn ladder_pole(truncation: u32) -> Result<Character> {
    let mut tv = BTreeMap::new();
    for n in 1..=truncation {
        tv.insert(
            RootedTree::ladder(n),
            LaurentSeries::monomial(-(n as i32), rat(1, 1)),
        );
    }
    Character::from_tree_values(TreeFamily::Ladders, truncation, &tv)
}

pub(crate) fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-9i64..=9);
    let den = rng.random_range(1i64..=4);
    rat(num, den)
}

/// A seeded random character: each tree of degree d gets a value with poles
/// down to ε^{-d} and a short holomorphic tail, exact below ε^{N+1}.
pub fn random_polar_character(
    family: TreeFamily,
    truncation: u32,
    seed: u64,
) -> Result<Character> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = truncation as i32 + 1;
    let mut tv = BTreeMap::new();
    for d in 1..=truncation {
        for t in trees_of_degree(family, d) {
            let mut terms = Vec::new();
            for exp in -(d as i32)..=1 {
                terms.push((exp, random_rational(&mut rng)));
            }
            tv.insert(t, LaurentSeries::from_terms(cap, terms));
        }
    }
    Character::from_tree_values(family, truncation, &tv)
}
