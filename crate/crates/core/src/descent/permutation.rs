//! Realization of the descent algebra inside the symmetric group algebras.
//!
//! A homogeneous weight-n descent element expands as a sum of permutations:
//! B_C is the sum of all σ in S_n whose descent set (positions i with
//! σ(i) > σ(i+1) in one-line notation) is contained in the partial-sum set of
//! C. The composition product of the descent algebra becomes the group
//! algebra product, which is how the internal product is computed here.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{LazyLock, Mutex};

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::rational::{Rational, rat_int};

use super::composition::Composition;
use super::element::DescentElement;

/// Largest symmetric group expanded explicitly (|S_8| = 40320).
pub const PERMUTATION_CAP: u32 = 8;

/// A permutation in one-line notation, 0-indexed: `perm[i]` is the image of
/// position `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: u32) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Self {
        Perm(images)
    }

    pub fn n(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// Composition of maps: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Perm(inv)
    }

    /// 1-based positions i with σ(i) > σ(i+1).
    pub fn descent_set(&self) -> Vec<u32> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.0 {
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

/// All of S_n in lexicographic one-line order.
pub fn all_perms(n: u32) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; n as usize];
    fn rec(n: u32, current: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if current.len() == n as usize {
            out.push(Perm(current.clone()));
            return;
        }
        for v in 0..n as usize {
            if !used[v] {
                used[v] = true;
                current.push(v as u8);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// A rational combination of permutations of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationElement {
    n: u32,
    coeffs: BTreeMap<Perm, Rational>,
}

impl PermutationElement {
    pub fn zero(n: u32) -> Self {
        PermutationElement {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeff(&self, p: &Perm) -> Rational {
        self.coeffs.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Rational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, p: Perm, r: Rational) {
        debug_assert_eq!(p.n(), self.n);
        if r.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(p.clone()).or_insert_with(Rational::zero);
        *entry += r;
        if entry.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, r) in &other.coeffs {
            out.add_term(p.clone(), r.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.n);
        }
        PermutationElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, v)| (p.clone(), v.clone() * r.clone()))
                .collect(),
        }
    }

    /// Group algebra product; permutations compose left-of-right.
    pub fn group_product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (pa, ra) in &self.coeffs {
            for (pb, rb) in &other.coeffs {
                out.add_term(pa.compose(pb), ra.clone() * rb.clone());
            }
        }
        out
    }
}

static BC_CACHE: LazyLock<Mutex<HashMap<Composition, Vec<Perm>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The permutations of B_C: descent set contained in the partial sums of C.
fn composition_perms(c: &Composition) -> Vec<Perm> {
    if let Some(cached) = BC_CACHE.lock().unwrap().get(c) {
        return cached.clone();
    }
    let sums = c.partial_sums();
    let out: Vec<Perm> = all_perms(c.weight())
        .into_iter()
        .filter(|p| p.descent_set().iter().all(|d| sums.contains(d)))
        .collect();
    BC_CACHE.lock().unwrap().insert(c.clone(), out.clone());
    out
}

fn check_cap(n: u32) -> Result<()> {
    if n > PERMUTATION_CAP {
        return Err(CoreError::DegreeTooLarge {
            degree: n,
            cap: PERMUTATION_CAP,
        });
    }
    Ok(())
}

/// Expands a homogeneous weight-n descent element in the group algebra of
/// S_n.
pub fn to_permutations(a: &DescentElement, n: u32) -> Result<PermutationElement> {
    check_cap(n)?;
    match a.homogeneous_weight() {
        None if a.is_zero() => return Ok(PermutationElement::zero(n)),
        Some(w) if w == n => {}
        _ => return Err(CoreError::NotHomogeneous),
    }
    let mut out = PermutationElement::zero(n);
    for (c, r) in a.terms() {
        for p in composition_perms(c) {
            out.add_term(p, r.clone());
        }
    }
    Ok(out)
}

/// Interprets a group-algebra element as a descent element. Fails with
/// `NotDescent` when the coefficients are not constant on descent classes.
pub fn from_permutations(x: &PermutationElement) -> Result<DescentElement> {
    let n = x.n();
    check_cap(n)?;
    // one representative coefficient per descent set
    let mut class_value: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for p in all_perms(n) {
        let v = x.coeff(&p);
        match class_value.entry(p.descent_set()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(e) => {
                if *e.get() != v {
                    return Err(CoreError::NotDescent);
                }
            }
        }
    }
    // x = Σ_D v_D E_D with E_D = Σ_{D' ⊆ D} (-1)^{|D \ D'|} B_{C(D')}
    let mut out = DescentElement::zero();
    for (d, v) in &class_value {
        if v.is_zero() {
            continue;
        }
        for mask in 0u32..(1 << d.len()) {
            let sub: Vec<u32> = d
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &s)| s)
                .collect();
            let sign = if (d.len() - sub.len()).is_multiple_of(2) {
                rat_int(1)
            } else {
                rat_int(-1)
            };
            out.add_term(Composition::from_partial_sums(&sub, n), sign * v.clone());
        }
    }
    Ok(out)
}

/// The composition product of two homogeneous weight-n descent elements,
/// computed in the group algebra and converted back. The round trip through
/// permutations is re-checked on the way out.
pub fn internal_product(a: &DescentElement, b: &DescentElement) -> Result<DescentElement> {
    let n = match (a.homogeneous_weight(), b.homogeneous_weight()) {
        (Some(wa), Some(wb)) if wa == wb => wa,
        (None, _) if a.is_zero() => return Ok(DescentElement::zero()),
        (_, None) if b.is_zero() => return Ok(DescentElement::zero()),
        _ => return Err(CoreError::NotHomogeneous),
    };
    let pa = to_permutations(a, n)?;
    let pb = to_permutations(b, n)?;
    let prod = pa.group_product(&pb);
    let out = from_permutations(&prod)?;
    debug_assert_eq!(to_permutations(&out, n)?, prod);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::element::antipode_series;
    use crate::descent::series::{Side, zassenhaus};
    use crate::factorization::FactorizationMode;
    use crate::rational::rat;

    fn b(parts: &[u32]) -> DescentElement {
        DescentElement::basis(Composition::new(parts.to_vec()))
    }

    fn perm(images_one_based: &[u8]) -> Perm {
        Perm::from_images(images_one_based.iter().map(|&i| i - 1).collect())
    }

    #[test]
    fn projection_expands_to_identity() {
        let p = to_permutations(&b(&[2]), 2).unwrap();
        let mut want = PermutationElement::zero(2);
        want.add_term(Perm::identity(2), rat_int(1));
        assert_eq!(p, want);
    }

    #[test]
    fn b11_expands_to_all_of_s2() {
        let p = to_permutations(&b(&[1, 1]), 2).unwrap();
        let mut want = PermutationElement::zero(2);
        want.add_term(perm(&[1, 2]), rat_int(1));
        want.add_term(perm(&[2, 1]), rat_int(1));
        assert_eq!(p, want);
    }

    #[test]
    fn b12_expansion_in_s3() {
        let p = to_permutations(&b(&[1, 2]), 3).unwrap();
        let mut want = PermutationElement::zero(3);
        want.add_term(perm(&[1, 2, 3]), rat_int(1));
        want.add_term(perm(&[2, 1, 3]), rat_int(1));
        want.add_term(perm(&[3, 1, 2]), rat_int(1));
        assert_eq!(p, want);
    }

    #[test]
    fn internal_product_examples() {
        // B_(1,1) ∘ B_(1,1) = 2 B_(1,1): (id + s)² = 2(id + s)
        let sq = internal_product(&b(&[1, 1]), &b(&[1, 1])).unwrap();
        assert_eq!(sq, b(&[1, 1]).scale(&rat(2, 1)));
        // B_(n) is the unit of the weight-n component
        let z2 = b(&[2]).sub(&b(&[1, 1]).scale(&rat(1, 2)));
        assert_eq!(internal_product(&b(&[2]), &z2).unwrap(), z2);
        assert_eq!(internal_product(&z2, &b(&[2])).unwrap(), z2);
        // Z₂ ∘ Z₂ = Z₂
        assert_eq!(internal_product(&z2, &z2).unwrap(), z2);
    }

    #[test]
    fn dynkin_squares_to_twice_itself() {
        // D₂ = id - swap in S₂, so D₂ ∘ D₂ = 2 D₂
        let d2 = b(&[2]).scale(&rat(2, 1)).sub(&b(&[1, 1]));
        assert_eq!(
            internal_product(&d2, &d2).unwrap(),
            d2.scale(&rat(2, 1))
        );
    }

    #[test]
    fn degree_cap_is_enforced() {
        assert!(matches!(
            to_permutations(&b(&[9]), 9),
            Err(CoreError::DegreeTooLarge { degree: 9, cap: 8 })
        ));
        assert!(matches!(
            internal_product(&b(&[1]), &b(&[2])),
            Err(CoreError::NotHomogeneous)
        ));
    }

    #[test]
    fn round_trip_through_permutations() {
        for n in 1..=5u32 {
            for c in Composition::all_of_weight(n) {
                let e = DescentElement::basis(c);
                let p = to_permutations(&e, n).unwrap();
                assert_eq!(from_permutations(&p).unwrap(), e);
            }
        }
    }

    #[test]
    fn antipode_duality_small_degrees() {
        // S_n ∘ (-Z̃_n) = Z_n
        let s = antipode_series(4);
        let left = zassenhaus(4, Side::Left, FactorizationMode::Plain);
        let right = zassenhaus(4, Side::Right, FactorizationMode::Plain);
        for n in 1..=4u32 {
            let got = internal_product(&s.weight_component(n), &right[n as usize - 1].neg())
                .unwrap();
            assert_eq!(got, left[n as usize - 1], "degree {n}");
        }
    }

    #[test]
    fn antipode_is_an_involution_componentwise() {
        let s = antipode_series(5);
        for n in 1..=5u32 {
            let sn = s.weight_component(n);
            assert_eq!(internal_product(&sn, &sn).unwrap(), b(&[n]));
        }
    }
}
