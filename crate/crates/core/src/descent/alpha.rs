//! The canonical action of the descent algebra on a graded connected
//! commutative Hopf algebra: B_C = p_{c1} ∗ ⋯ ∗ p_{ck} is sent to the
//! convolution of the graded projections of H, evaluated through iterated
//! coproducts.

use std::collections::BTreeMap;

use crate::characters::LinMap;
use crate::error::Result;
use crate::hopf::{Forest, HopfElement, TreeFamily, coproduct, forests_up_to};
use crate::rational::{Rational, inv_factorial};


use super::element::DescentElement;

/// A linear endomorphism of H, stored by values on the basis up the
/// truncation degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfEndo {
    family: TreeFamily,
    truncation: u32,
    values: BTreeMap<Forest, HopfElement>,
}

impl HopfEndo {
    pub fn zero(family: TreeFamily, truncation: u32) -> Self {
        HopfEndo {
            family,
            truncation,
            values: BTreeMap::new(),
        }
    }

    pub fn identity(family: TreeFamily, truncation: u32) -> Self {
        let mut endo = Self::zero(family, truncation);
        for f in forests_up_to(family, truncation) {
            endo.values
                .insert(f.clone(), HopfElement::from_forest(f));
        }
        endo
    }

    pub fn family(&self) -> TreeFamily {
        self.family
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn value(&self, f: &Forest) -> HopfElement {
        self.values.get(f).cloned().unwrap_or_else(HopfElement::zero)
    }

    pub fn set_value(&mut self, f: Forest, v: HopfElement) {
        if v.is_zero() {
            self.values.remove(&f);
        } else {
            self.values.insert(f, v);
        }
    }

    pub fn apply(&self, x: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero();
        for (f, c) in x.terms() {
            out = out.add(&self.value(f).scale(c));
        }
        out
    }

    /// Convolution in End(H): (F ∗ G)(x) = Σ F(x') · G(x'').
    pub fn convolve(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.family, self.truncation);
        for f in forests_up_to(self.family, self.truncation) {
            let mut acc = HopfElement::zero();
            for ((l, r), mult) in coproduct(&f).terms() {
                acc = acc.add(&self.value(l).product(&other.value(r)).scale(mult));
            }
            out.set_value(f, acc);
        }
        out
    }

    /// Composition of endomorphisms: (F ∘ G)(x) = F(G(x)).
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.family, self.truncation);
        for f in forests_up_to(self.family, self.truncation) {
            out.set_value(f.clone(), self.apply(&other.value(&f)));
        }
        out
    }

    /// Convolution exponential of an endomorphism vanishing on the unit.
    pub fn conv_exp(&self) -> Self {
        debug_assert!(self.value(&Forest::empty()).is_zero());
        let mut out = Self::identity_unit(self.family, self.truncation);
        let mut power = Self::identity_unit(self.family, self.truncation);
        for k in 1..=self.truncation {
            power = power.convolve(self);
            out = out.add_scaled(&power, &inv_factorial(k));
        }
        out
    }

    /// The convolution unit of End(H): u ∘ ε.
    pub fn identity_unit(family: TreeFamily, truncation: u32) -> Self {
        let mut endo = Self::zero(family, truncation);
        endo.set_value(Forest::empty(), HopfElement::one());
        endo
    }

    pub fn add_scaled(&self, other: &Self, r: &Rational) -> Self {
        let mut out = self.clone();
        for (f, v) in &other.values {
            let sum = out.value(f).add(&v.scale(r));
            out.set_value(f.clone(), sum);
        }
        out
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        forests_up_to(self.family, self.truncation)
            .iter()
            .all(|f| self.value(f) == other.value(f))
    }
}

/// Evaluates the multi-projection p_{parts[0]} ∗ p_{parts[1]} ∗ ⋯ on a basis
/// forest through the iterated coproduct, pruning by degree at each step.
fn multi_projection(parts: &[u32], x: &Forest) -> HopfElement {
    match parts {
        [] => {
            if x.degree() == 0 {
                HopfElement::one()
            } else {
                HopfElement::zero()
            }
        }
        [d] => {
            if x.degree() == *d {
                HopfElement::from_forest(x.clone())
            } else {
                HopfElement::zero()
            }
        }
        [first, rest @ ..] => {
            if x.degree() < *first {
                return HopfElement::zero();
            }
            let mut out = HopfElement::zero();
            for ((l, r), mult) in coproduct(x).terms() {
                if l.degree() != *first {
                    continue;
                }
                let tail = multi_projection(rest, r);
                out = out.add(
                    &HopfElement::from_forest(l.clone())
                        .product(&tail)
                        .scale(mult),
                );
            }
            out
        }
    }
}

/// The algebra map α_H: the composition basis word B_C goes to the
/// convolution of graded projections of H.
pub fn alpha_h(a: &DescentElement, family: TreeFamily, truncation: u32) -> HopfEndo {
    let mut endo = HopfEndo::zero(family, truncation);
    for f in forests_up_to(family, truncation) {
        let mut acc = HopfElement::zero();
        for (c, r) in a.terms() {
            acc = acc.add(&multi_projection(c.parts(), &f).scale(r));
        }
        endo.set_value(f, acc);
    }
    endo
}

/// Composes a linear map on H with an endomorphism: x ↦ φ(F(x)).
pub fn compose_linmap(phi: &LinMap, endo: &HopfEndo) -> Result<LinMap> {
    let mut out = LinMap::zero(phi.family(), phi.truncation());
    for f in forests_up_to(phi.family(), phi.truncation()) {
        out.set_value(f.clone(), phi.apply(&endo.value(&f))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::composition::Composition;
    use crate::descent::element::identity_series;
    use crate::descent::permutation::internal_product;
    use crate::hopf::RootedTree;
    use crate::rational::rat;

    fn b(parts: &[u32]) -> DescentElement {
        DescentElement::basis(Composition::new(parts.to_vec()))
    }

    #[test]
    fn identity_series_acts_as_identity() {
        let endo = alpha_h(&identity_series(4), TreeFamily::RootedTrees, 4);
        assert!(endo.agrees_with(&HopfEndo::identity(TreeFamily::RootedTrees, 4)));
    }

    #[test]
    fn single_projection() {
        let endo = alpha_h(&b(&[2]), TreeFamily::Ladders, 3);
        let l2 = Forest::single(RootedTree::ladder(2));
        let l3 = Forest::single(RootedTree::ladder(3));
        assert_eq!(endo.value(&l2), HopfElement::from_forest(l2.clone()));
        assert!(endo.value(&l3).is_zero());
        assert!(endo.value(&Forest::empty()).is_zero());
    }

    #[test]
    fn p1_convolved_with_p1_on_ladder() {
        // (p₁ ∗ p₁)(l2) = l1 · l1
        let endo = alpha_h(&b(&[1, 1]), TreeFamily::Ladders, 2);
        let l2 = Forest::single(RootedTree::ladder(2));
        let want = HopfElement::from_forest(Forest::parse("[],[]").unwrap());
        assert_eq!(endo.value(&l2), want);
    }

    #[test]
    fn alpha_is_a_convolution_morphism() {
        let family = TreeFamily::RootedTrees;
        let n = 4;
        let pairs = [
            (b(&[1]), b(&[2])),
            (b(&[1, 1]), b(&[2])),
            (b(&[2]).sub(&b(&[1, 1]).scale(&rat(1, 2))), b(&[1])),
        ];
        for (x, y) in pairs {
            let left = alpha_h(&x.convolve(&y), family, n);
            let right = alpha_h(&x, family, n).convolve(&alpha_h(&y, family, n));
            assert!(left.agrees_with(&right), "{x} ∗ {y}");
        }
    }

    #[test]
    fn alpha_is_a_composition_morphism() {
        let family = TreeFamily::RootedTrees;
        let n = 4;
        let z2 = b(&[2]).sub(&b(&[1, 1]).scale(&rat(1, 2)));
        let pairs = [
            (b(&[1, 1]), b(&[1, 1])),
            (z2.clone(), z2.clone()),
            (b(&[1, 2]), b(&[2, 1])),
            (b(&[3]), b(&[1, 1, 1])),
        ];
        for (x, y) in pairs {
            let left = alpha_h(&internal_product(&x, &y).unwrap(), family, n);
            let right = alpha_h(&x, family, n).compose(&alpha_h(&y, family, n));
            assert!(left.agrees_with(&right), "{x} ∘ {y}");
        }
    }

    #[test]
    fn alpha_respects_the_coproduct_on_products() {
        // α_H(f)(h h') = α_H(f_(1))(h) · α_H(f_(2))(h')
        let family = TreeFamily::RootedTrees;
        let n = 4;
        let f = b(&[2]);
        let endo = alpha_h(&f, family, n);
        let h = Forest::parse("[]").unwrap();
        let hp = Forest::parse("[[]]").unwrap();
        let got = endo.value(&h.merge(&hp));
        let mut want = HopfElement::zero();
        for ((c1, c2), r) in f.coproduct().terms() {
            let left = alpha_h(&DescentElement::basis(c1.clone()), family, n).value(&h);
            let right = alpha_h(&DescentElement::basis(c2.clone()), family, n).value(&hp);
            want = want.add(&left.product(&right).scale(r));
        }
        assert_eq!(got, want);
    }
}
