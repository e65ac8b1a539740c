//! The convolution algebra of linear maps from the Hopf algebra into Laurent
//! series, the character group, and its Lie algebra of infinitesimal
//! characters.
//!
//! Every map in a computation shares one truncation degree N and one tree
//! family; mixing them is an error. A map stores values on the basis forests
//! of degree ≤ N, missing entries reading as exact zero.

use std::collections::BTreeMap;

use crate::error::{CoreError, Result};
use crate::hopf::{Forest, HopfElement, RootedTree, TreeFamily, antipode, coproduct, forests_up_to};
use crate::laurent::LaurentSeries;
use crate::rational::{Rational, inv_factorial, rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    family: TreeFamily,
    truncation: u32,
    values: BTreeMap<Forest, LaurentSeries>,
}

impl LinMap {
    /// The zero map.
    pub fn zero(family: TreeFamily, truncation: u32) -> Self {
        LinMap {
            family,
            truncation,
            values: BTreeMap::new(),
        }
    }

    /// The convolution unit e = u ∘ ε: 1 on the empty forest, 0 elsewhere.
    pub fn convolution_unit(family: TreeFamily, truncation: u32) -> Self {
        let mut map = Self::zero(family, truncation);
        map.set_value(Forest::empty(), LaurentSeries::one());
        map
    }

    pub fn family(&self) -> TreeFamily {
        self.family
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn set_value(&mut self, f: Forest, v: LaurentSeries) {
        assert!(
            f.degree() <= self.truncation,
            "value on degree {} beyond truncation {}",
            f.degree(),
            self.truncation
        );
        if v.is_exact_zero() {
            self.values.remove(&f);
        } else {
            self.values.insert(f, v);
        }
    }

    pub fn value(&self, f: &Forest) -> LaurentSeries {
        assert!(
            f.degree() <= self.truncation,
            "value on degree {} beyond truncation {}",
            f.degree(),
            self.truncation
        );
        self.values
            .get(f)
            .cloned()
            .unwrap_or_else(LaurentSeries::zero)
    }

    /// Linear extension to arbitrary elements of H.
    pub fn apply(&self, x: &HopfElement) -> Result<LaurentSeries> {
        let mut acc = LaurentSeries::zero();
        for (f, c) in x.terms() {
            acc = acc.add(&self.value(f).scale(c));
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (f, v) in &other.values {
            let sum = out.value(f).add(v);
            out.set_value(f.clone(), sum);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LinMap {
            family: self.family,
            truncation: self.truncation,
            values: self
                .values
                .iter()
                .map(|(f, v)| (f.clone(), v.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        LinMap {
            family: self.family,
            truncation: self.truncation,
            values: self
                .values
                .iter()
                .map(|(f, v)| (f.clone(), v.scale(r)))
                .collect(),
        }
    }

    /// Restriction to a single degree.
    pub fn graded_component(&self, degree: u32) -> Self {
        LinMap {
            family: self.family,
            truncation: self.truncation,
            values: self
                .values
                .iter()
                .filter(|(f, _)| f.degree() == degree)
                .map(|(f, v)| (f.clone(), v.clone()))
                .collect(),
        }
    }

    /// Valuewise strict polar part.
    pub fn polar_part(&self) -> Self {
        LinMap {
            family: self.family,
            truncation: self.truncation,
            values: self
                .values
                .iter()
                .map(|(f, v)| (f.clone(), v.polar_part()))
                .filter(|(_, v)| !v.is_exact_zero())
                .collect(),
        }
    }

    /// Valuewise holomorphic part.
    pub fn holomorphic_part(&self) -> Self {
        LinMap {
            family: self.family,
            truncation: self.truncation,
            values: self
                .values
                .iter()
                .map(|(f, v)| (f.clone(), v.holomorphic_part()))
                .filter(|(_, v)| !v.is_exact_zero())
                .collect(),
        }
    }

    /// The full basis the map is defined on, in graded order.
    pub fn basis(&self) -> Vec<Forest> {
        forests_up_to(self.family, self.truncation)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.family != other.family {
            return Err(CoreError::FamilyMismatch);
        }
        if self.truncation != other.truncation {
            return Err(CoreError::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        Ok(())
    }

    /// Value equality on every basis forest, on common windows.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.first_mismatch(other)?.is_none())
    }

    /// The first basis forest (graded order) where the maps differ.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<Forest>> {
        self.check_compatible(other)?;
        for f in self.basis() {
            if !self.value(&f).eq_window(&other.value(&f))? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}

/// Convolution product: (f ∗ g)(x) = Σ f(x') g(x'') over the coproduct.
pub fn convolve(f: &LinMap, g: &LinMap) -> Result<LinMap> {
    f.check_compatible(g)?;
    let mut out = LinMap::zero(f.family, f.truncation);
    for x in f.basis() {
        let mut acc = LaurentSeries::zero();
        for ((l, r), mult) in coproduct(&x).terms() {
            let term = f.value(l).try_mul(&g.value(r))?;
            acc = acc.add(&term.scale(mult));
        }
        out.set_value(x, acc);
    }
    Ok(out)
}

/// Convolution logarithm of a map with φ(1) = 1. Finite per degree since
/// (φ - e)^{∗k} vanishes below degree k.
pub fn conv_log(f: &LinMap) -> Result<LinMap> {
    assert!(
        f.value(&Forest::empty())
            .eq_window(&LaurentSeries::one())
            .unwrap_or(false),
        "conv_log needs value 1 on the empty forest"
    );
    let e = LinMap::convolution_unit(f.family, f.truncation);
    let u = f.sub(&e)?;
    let mut out = LinMap::zero(f.family, f.truncation);
    let mut power = u.clone();
    for k in 1..=f.truncation.max(1) {
        let sign = if k % 2 == 1 { rat(1, k as i64) } else { rat(-1, k as i64) };
        out = out.add(&power.scale(&sign))?;
        if k < f.truncation {
            power = convolve(&power, &u)?;
        }
    }
    Ok(out)
}

/// Convolution exponential of a map vanishing on the empty forest.
pub fn conv_exp(rho: &LinMap) -> Result<LinMap> {
    assert!(
        rho.value(&Forest::empty()).is_zero_on_window(),
        "conv_exp needs a map vanishing on the empty forest"
    );
    let mut out = LinMap::convolution_unit(rho.family, rho.truncation);
    let mut power = LinMap::convolution_unit(rho.family, rho.truncation);
    for k in 1..=rho.truncation {
        power = convolve(&power, rho)?;
        out = out.add(&power.scale(&inv_factorial(k)))?;
    }
    Ok(out)
}

/// Group-flavored connectedness: φ = e + (terms of degree ≥ n).
pub fn is_n_connected_character(f: &LinMap, n: u32) -> bool {
    if !f
        .value(&Forest::empty())
        .eq_window(&LaurentSeries::one())
        .unwrap_or(false)
    {
        return false;
    }
    (1..n.min(f.truncation + 1)).all(|d| degree_vanishes(f, d))
}

/// Lie-flavored connectedness: ρ vanishes in degrees 0..n-1.
pub fn is_n_connected_infinitesimal(f: &LinMap, n: u32) -> bool {
    (0..n.min(f.truncation + 1)).all(|d| degree_vanishes(f, d))
}

fn degree_vanishes(f: &LinMap, d: u32) -> bool {
    crate::hopf::forests_of_degree(f.family(), d)
        .iter()
        .all(|x| f.value(x).is_zero_on_window())
}

/// Exhaustive multiplicativity check on basis products up to the truncation.
pub fn is_character(f: &LinMap) -> bool {
    if !f
        .value(&Forest::empty())
        .eq_window(&LaurentSeries::one())
        .unwrap_or(false)
    {
        return false;
    }
    let n = f.truncation;
    for da in 1..n {
        for a in crate::hopf::forests_of_degree(f.family, da) {
            for db in 1..=(n - da) {
                for b in crate::hopf::forests_of_degree(f.family, db) {
                    let prod = match f.value(&a).try_mul(&f.value(&b)) {
                        Ok(p) => p,
                        Err(_) => return false,
                    };
                    if !f.value(&a.merge(&b)).eq_window(&prod).unwrap_or(false) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// True when the map vanishes on the unit and on every forest with two or
/// more tree factors.
pub fn is_inf_char(f: &LinMap) -> bool {
    f.basis()
        .iter()
        .filter(|x| x.trees().len() != 1)
        .all(|x| f.value(x).is_zero_on_window())
}

/// A multiplicative unital map, determined by its values on trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    map: LinMap,
}

impl Character {
    /// The group unit.
    pub fn unit(family: TreeFamily, truncation: u32) -> Self {
        Character {
            map: LinMap::convolution_unit(family, truncation),
        }
    }

    /// Extends tree values multiplicatively to every basis forest. Trees of
    /// degree above the truncation are ignored.
    pub fn from_tree_values(
        family: TreeFamily,
        truncation: u32,
        tree_values: &BTreeMap<RootedTree, LaurentSeries>,
    ) -> Result<Self> {
        let mut map = LinMap::zero(family, truncation);
        for f in forests_up_to(family, truncation) {
            let mut v = LaurentSeries::one();
            for t in f.trees() {
                let tv = tree_values
                    .get(t)
                    .cloned()
                    .unwrap_or_else(LaurentSeries::zero);
                v = v.try_mul(&tv)?;
            }
            map.set_value(f, v);
        }
        Ok(Character { map })
    }

    /// Wraps a linear map after verifying multiplicativity.
    pub fn try_from_linmap(map: LinMap) -> Result<Self> {
        if !is_character(&map) {
            return Err(CoreError::NotCharacter);
        }
        Ok(Character { map })
    }

    pub fn as_linmap(&self) -> &LinMap {
        &self.map
    }

    pub fn family(&self) -> TreeFamily {
        self.map.family
    }

    pub fn truncation(&self) -> u32 {
        self.map.truncation
    }

    pub fn value(&self, f: &Forest) -> LaurentSeries {
        self.map.value(f)
    }

    /// Values on single trees, which determine the character.
    pub fn tree_values(&self) -> BTreeMap<RootedTree, LaurentSeries> {
        self.map
            .values
            .iter()
            .filter_map(|(f, v)| f.as_single_tree().map(|t| (t.clone(), v.clone())))
            .collect()
    }

    /// The convolution inverse φ ∘ S.
    pub fn conv_inverse(&self) -> Result<Character> {
        let mut tree_values = BTreeMap::new();
        for d in 1..=self.truncation() {
            for t in crate::hopf::trees_of_degree(self.family(), d) {
                let v = self.map.apply(&antipode(&Forest::single(t.clone())))?;
                tree_values.insert(t, v);
            }
        }
        Character::from_tree_values(self.family(), self.truncation(), &tree_values)
    }
}

/// A map vanishing on the unit and on products: a Lie-algebra element of the
/// character group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfChar {
    map: LinMap,
}

impl InfChar {
    pub fn zero(family: TreeFamily, truncation: u32) -> Self {
        InfChar {
            map: LinMap::zero(family, truncation),
        }
    }

    /// Builds from values on single trees; everything else is zero.
    pub fn from_tree_values(
        family: TreeFamily,
        truncation: u32,
        tree_values: &BTreeMap<RootedTree, LaurentSeries>,
    ) -> Self {
        let mut map = LinMap::zero(family, truncation);
        for (t, v) in tree_values {
            if t.degree() <= truncation {
                map.set_value(Forest::single(t.clone()), v.clone());
            }
        }
        InfChar { map }
    }

    /// Wraps a linear map after verifying it vanishes on unit and products.
    pub fn try_from_linmap(map: LinMap) -> Result<Self> {
        if !is_inf_char(&map) {
            return Err(CoreError::NotInfinitesimal);
        }
        Ok(InfChar { map })
    }

    pub fn as_linmap(&self) -> &LinMap {
        &self.map
    }

    pub fn family(&self) -> TreeFamily {
        self.map.family
    }

    pub fn truncation(&self) -> u32 {
        self.map.truncation
    }

    pub fn value(&self, f: &Forest) -> LaurentSeries {
        self.map.value(f)
    }

    pub fn is_zero(&self) -> bool {
        self.map.values.values().all(|v| v.is_zero_on_window())
    }

    pub fn neg(&self) -> Self {
        InfChar {
            map: self.map.neg(),
        }
    }

    /// Valuewise polar part; still infinitesimal.
    pub fn polar_part(&self) -> Self {
        InfChar {
            map: self.map.polar_part(),
        }
    }

    /// Valuewise holomorphic part; still infinitesimal.
    pub fn holomorphic_part(&self) -> Self {
        InfChar {
            map: self.map.holomorphic_part(),
        }
    }

    /// Convolution exponential, returned as a verified character.
    pub fn exp(&self) -> Result<Character> {
        Character::try_from_linmap(conv_exp(&self.map)?)
    }
}
