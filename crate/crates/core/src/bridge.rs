//! Universal formulas tying the exponential factor decomposition of the
//! counterterm to the descent algebra.
//!
//! Pushing Id = exp(Z₁) ∗ exp(Z₂) ∗ ⋯ through α_H and composing with a
//! character turns the identity into φ₋⁻¹ = Π exp(φ₋⁻¹ ∘ Z_n); uniqueness of
//! the exponential decomposition forces φ₋⁻¹ ∘ Z_n = λ_n⁻. The β-function is
//! φ₋ ∘ D with D the Dynkin series; expanding D_n in right-Zassenhaus words
//! with the universal coefficients gives the same components.

use crate::bogoliubov::bogoliubov_decompose;
use crate::characters::{Character, InfChar, LinMap, convolve};
use crate::descent::{
    Side, alpha_h, change_of_basis, compose_linmap, dynkin, generator_word, zassenhaus,
};
use crate::error::{CoreError, Result};
use crate::factorization::{FactorizationMode, exp_factorize};

/// The components φ₋⁻¹ ∘ α_H(Z_n), n = 1..=N, after verifying each equals
/// the λ_n⁻ produced by the exponential recursion.
pub fn zassenhaus_counterterm(phi: &Character) -> Result<Vec<InfChar>> {
    let truncation = phi.truncation();
    let family = phi.family();
    let pair = bogoliubov_decompose(phi)?;
    let minus_inv = pair.phi_minus.conv_inverse()?;
    let z_series = zassenhaus(truncation, Side::Left, FactorizationMode::Plain);
    let fact = exp_factorize(phi, FactorizationMode::Plain)?;

    let mut out = Vec::new();
    for (i, z) in z_series.iter().enumerate() {
        let endo = alpha_h(z, family, truncation);
        let composed = compose_linmap(minus_inv.as_linmap(), &endo)?;
        let component = InfChar::try_from_linmap(composed)?;
        let lambda = fact
            .factors_minus
            .get(i)
            .cloned()
            .unwrap_or_else(|| InfChar::zero(family, truncation));
        if !component.as_linmap().agrees_with(lambda.as_linmap())? {
            return Err(CoreError::BridgeMismatch {
                location: format!("counterterm component {}", i + 1),
            });
        }
        out.push(component);
    }
    Ok(out)
}

/// The β-function components β_n = φ₋ ∘ α_H(D_n) for n = 1..=N.
///
/// Two identities are verified along the way: the expansion of β_n in the
/// right-Zassenhaus components of φ₋ with the universal change-of-basis
/// coefficients, and -φ₋ ∘ α_H(Z̃_i) = φ₋⁻¹ ∘ α_H(Z_i).
pub fn beta(phi: &Character) -> Result<Vec<InfChar>> {
    let truncation = phi.truncation();
    let family = phi.family();
    let pair = bogoliubov_decompose(phi)?;
    let phi_minus = &pair.phi_minus;
    let minus_inv = phi_minus.conv_inverse()?;

    let dynkin_elems = dynkin(truncation);
    let left = zassenhaus(truncation, Side::Left, FactorizationMode::Plain);
    let right = zassenhaus(truncation, Side::Right, FactorizationMode::Plain);
    let tables = change_of_basis(truncation)?;

    // φ₋ ∘ Z̃_i and the two sides of the duality identity
    let mut minus_right: Vec<LinMap> = Vec::new();
    for (i, zt) in right.iter().enumerate() {
        let composed = compose_linmap(phi_minus.as_linmap(), &alpha_h(zt, family, truncation))?;
        let dual = compose_linmap(
            minus_inv.as_linmap(),
            &alpha_h(&left[i], family, truncation),
        )?;
        if !composed.neg().agrees_with(&dual)? {
            return Err(CoreError::BridgeMismatch {
                location: format!("-φ₋∘Z̃_{} vs φ₋⁻¹∘Z_{}", i + 1, i + 1),
            });
        }
        minus_right.push(composed);
    }

    let mut out = Vec::new();
    for n in 1..=truncation {
        let endo = alpha_h(&dynkin_elems[n as usize - 1], family, truncation);
        let direct = compose_linmap(phi_minus.as_linmap(), &endo)?;

        // the same component through the universal coefficients
        let mut expanded = LinMap::zero(family, truncation);
        for (index, c) in &tables.dynkin_in_right_zassenhaus[&n] {
            let parts = index.parts();
            let mut word = minus_right[parts[0] as usize - 1].clone();
            for &p in &parts[1..] {
                word = convolve(&word, &minus_right[p as usize - 1])?;
            }
            expanded = expanded.add(&word.scale(c))?;
        }
        if !direct.agrees_with(&expanded)? {
            return Err(CoreError::BridgeMismatch {
                location: format!("β_{n} Dynkin vs right-Zassenhaus expansion"),
            });
        }
        out.push(InfChar::try_from_linmap(direct)?);
    }

    // consistency of the tables themselves: rebuilding D_n from the words
    for n in 1..=truncation {
        let mut rebuilt = crate::descent::DescentElement::zero();
        for (index, c) in &tables.dynkin_in_right_zassenhaus[&n] {
            rebuilt = rebuilt.add(&generator_word(&right, index).scale(c));
        }
        if rebuilt != dynkin_elems[n as usize - 1] {
            return Err(CoreError::BridgeMismatch {
                location: format!("change-of-basis table at degree {n}"),
            });
        }
    }

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ladder_exponential, ladder_pole, random_polar_character};
    use crate::hopf::{Forest, RootedTree, TreeFamily};
    use crate::laurent::LaurentSeries;
    use crate::rational::rat;

    fn l(n: u32) -> Forest {
        Forest::single(RootedTree::ladder(n))
    }

    fn mono(e: i32, num: i64, den: i64) -> LaurentSeries {
        LaurentSeries::monomial(e, rat(num, den))
    }

    #[test]
    fn degree_one_component_is_the_polar_part() {
        // φ₋⁻¹∘α_H(Z₁)(l1) = R₋(φ(l1)) = λ₁⁻(l1)
        let phi = ladder_pole(3).unwrap();
        let comps = zassenhaus_counterterm(&phi).unwrap();
        assert!(comps[0].value(&l(1)).eq_window(&mono(-1, 1, 1)).unwrap());
    }

    #[test]
    fn exponential_toy_has_vanishing_higher_components() {
        let phi = ladder_exponential(4).unwrap();
        let comps = zassenhaus_counterterm(&phi).unwrap();
        assert!(!comps[0].is_zero());
        for c in &comps[1..] {
            assert!(c.is_zero());
        }
    }

    #[test]
    fn unit_character_has_zero_components() {
        let e = Character::unit(TreeFamily::Ladders, 3);
        for c in zassenhaus_counterterm(&e).unwrap() {
            assert!(c.is_zero());
        }
        for b in beta(&e).unwrap() {
            assert!(b.is_zero());
        }
    }

    #[test]
    fn beta_degree_one_is_the_counterterm_residue() {
        // β₁(l1) = φ₋(l1) = -ε^{-1} for the ladder toys
        for phi in [ladder_exponential(3).unwrap(), ladder_pole(3).unwrap()] {
            let b = beta(&phi).unwrap();
            assert!(b[0].value(&l(1)).eq_window(&mono(-1, -1, 1)).unwrap());
        }
    }

    #[test]
    fn beta_degree_two_through_the_tilde_component() {
        // D₂ = 2 Z̃₂, so β₂ = 2 · φ₋∘α_H(Z̃₂)
        let phi = ladder_pole(2).unwrap();
        let pair = bogoliubov_decompose(&phi).unwrap();
        let zt = zassenhaus(2, Side::Right, FactorizationMode::Plain);
        let unscaled = compose_linmap(
            pair.phi_minus.as_linmap(),
            &alpha_h(&zt[1], TreeFamily::Ladders, 2),
        )
        .unwrap();
        let b = beta(&phi).unwrap();
        assert!(
            b[1].as_linmap()
                .agrees_with(&unscaled.scale(&rat(2, 1)))
                .unwrap()
        );
    }

    #[test]
    fn bridge_holds_on_random_characters() {
        for seed in [1u64, 2, 3] {
            let phi = random_polar_character(TreeFamily::RootedTrees, 4, seed).unwrap();
            zassenhaus_counterterm(&phi).unwrap();
            beta(&phi).unwrap();
        }
    }
}
