//! Change of basis between the Dynkin and Zassenhaus generators.
//!
//! Both families generate the descent algebra freely, so every homogeneous
//! element expands uniquely in the words G_{i1} ∗ ⋯ ∗ G_{ik}, i1+⋯+ik = n.
//! Each word expands in the composition basis as its own composition plus
//! strict refinements, so under the (length, lex) order the word-to-B matrix
//! is triangular with diagonal ∏ lead(G_{ij}); the expansion is obtained by
//! forward substitution.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::factorization::FactorizationMode;
use crate::rational::Rational;

use super::composition::Composition;
use super::element::DescentElement;
use super::series::{Side, dynkin, zassenhaus};

/// Coefficients of a homogeneous element in generator words, keyed by the
/// composition (i1,…,ik) of the word.
pub type WordCoeffs = BTreeMap<Composition, Rational>;

/// The generator word G_{i1} ∗ ⋯ ∗ G_{ik} for a composition, where
/// `generators[i]` is G_{i+1}.
pub fn generator_word(generators: &[DescentElement], index: &Composition) -> DescentElement {
    let mut acc = DescentElement::unit();
    for &part in index.parts() {
        acc = acc.convolve(&generators[part as usize - 1]);
    }
    acc
}

/// Expands a homogeneous weight-n element in the words of the given
/// generators by forward substitution along the refinement-compatible order.
pub fn expand_in_words(
    target: &DescentElement,
    generators: &[DescentElement],
    n: u32,
) -> Result<WordCoeffs> {
    let mut residual = target.clone();
    let mut coeffs = WordCoeffs::new();
    for index in Composition::all_of_weight(n) {
        let word = generator_word(generators, &index);
        let diag = word.coeff(&index);
        if diag.is_zero() {
            return Err(CoreError::BridgeMismatch {
                location: format!("degenerate generator word {index}"),
            });
        }
        let c = residual.coeff(&index) / diag;
        residual = residual.sub(&word.scale(&c));
        if !c.is_zero() {
            coeffs.insert(index, c);
        }
    }
    if !residual.is_zero() {
        return Err(CoreError::BridgeMismatch {
            location: format!("expansion residual {residual}"),
        });
    }
    Ok(coeffs)
}

/// The coefficient tables connecting the Dynkin and Zassenhaus generators up
/// to a weight cap.
#[derive(Debug, Clone)]
pub struct BasisChange {
    /// D_n = Σ c_{i1…ik} Z̃_{i1} ∗ ⋯ ∗ Z̃_{ik}, per degree n.
    pub dynkin_in_right_zassenhaus: BTreeMap<u32, WordCoeffs>,
    /// Z_n expanded in Dynkin words, per degree n.
    pub zassenhaus_in_dynkin: BTreeMap<u32, WordCoeffs>,
}

pub fn change_of_basis(cap: u32) -> Result<BasisChange> {
    let right = zassenhaus(cap, Side::Right, FactorizationMode::Plain);
    let left = zassenhaus(cap, Side::Left, FactorizationMode::Plain);
    let dyn_elems = dynkin(cap);
    let mut dynkin_in_right_zassenhaus = BTreeMap::new();
    let mut zassenhaus_in_dynkin = BTreeMap::new();
    for n in 1..=cap {
        dynkin_in_right_zassenhaus.insert(
            n,
            expand_in_words(&dyn_elems[n as usize - 1], &right, n)?,
        );
        zassenhaus_in_dynkin.insert(n, expand_in_words(&left[n as usize - 1], &dyn_elems, n)?);
    }
    Ok(BasisChange {
        dynkin_in_right_zassenhaus,
        zassenhaus_in_dynkin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn dynkin_in_right_zassenhaus_low_degrees() {
        let tables = change_of_basis(3).unwrap();
        // D₁ = Z̃₁
        let t1 = &tables.dynkin_in_right_zassenhaus[&1];
        assert_eq!(t1.len(), 1);
        assert_eq!(t1[&Composition::single(1)], rat_int(1));
        // D₂ = 2 Z̃₂, with no (1,1) word
        let t2 = &tables.dynkin_in_right_zassenhaus[&2];
        assert_eq!(t2.get(&Composition::single(2)), Some(&rat_int(2)));
        assert_eq!(t2.get(&Composition::new(vec![1, 1])), None);
    }

    #[test]
    fn zassenhaus_in_dynkin_low_degrees() {
        let tables = change_of_basis(2).unwrap();
        // Z₂ = D₂ / 2
        let t2 = &tables.zassenhaus_in_dynkin[&2];
        assert_eq!(t2.get(&Composition::single(2)), Some(&rat(1, 2)));
        assert_eq!(t2.get(&Composition::new(vec![1, 1])), None);
    }

    #[test]
    fn zassenhaus_word_matrix_is_unitriangular() {
        let cap = 8;
        let right = zassenhaus(cap, Side::Right, FactorizationMode::Plain);
        for n in 1..=cap {
            let order = Composition::all_of_weight(n);
            for (i, index) in order.iter().enumerate() {
                let word = generator_word(&right, index);
                assert_eq!(word.coeff(index), rat_int(1), "diagonal at {index}");
                for earlier in &order[..i] {
                    assert!(
                        word.coeff(earlier).is_zero(),
                        "entry above diagonal: word {index}, composition {earlier}"
                    );
                }
            }
        }
    }

    #[test]
    fn expansions_reconstruct_the_targets() {
        let cap = 5;
        let tables = change_of_basis(cap).unwrap();
        let right = zassenhaus(cap, Side::Right, FactorizationMode::Plain);
        let dyn_elems = dynkin(cap);
        for n in 1..=cap {
            let mut rebuilt = DescentElement::zero();
            for (index, c) in &tables.dynkin_in_right_zassenhaus[&n] {
                rebuilt = rebuilt.add(&generator_word(&right, index).scale(c));
            }
            assert_eq!(rebuilt, dyn_elems[n as usize - 1], "D_{n}");
        }
    }
}
